#pragma once

#include "evcoint/numerics.hpp"

#include <array>
#include <cstdint>

namespace evcoint {

/// Identifies a reproducible random stream: equal states give bit-identical draws.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// xoshiro256** seeded through SplitMix64. Stream `s` starts `s` jumps
/// (2^128 steps each) past the seed's base position, so streams never overlap.
class Rng {
public:
    explicit Rng(RngState state);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    /// Standard normal by the Marsaglia polar method.
    double normal();

    const RngState& state() const { return state_; }

private:
    void jump();

    RngState state_;
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

namespace samplers {

using numerics::SpdMatrix;

/// Shape a and scale b of the density b^a / Gamma(a) x^{-(a+1)} exp(-b/x).
struct InverseGammaParams {
    double shape;
    double scale;
    InverseGammaParams(double a, double b);
};

struct MatrixNormalParams {
    Matrix mean;         ///< p x q
    SpdMatrix row_cov;   ///< U, p x p
    SpdMatrix col_cov;   ///< V, q x q
    MatrixNormalParams(Matrix m, SpdMatrix u, SpdMatrix v);
};

struct InverseWishartParams {
    SpdMatrix scale;  ///< Lambda, p x p
    double dof;       ///< nu > p - 1
    InverseWishartParams(SpdMatrix lambda, double nu);
};

/// Gamma(shape, scale 1) by Marsaglia-Tsang, boosted for shape < 1.
double sample_gamma(Rng& rng, double shape);
double sample_chi2(Rng& rng, double dof);
double sample_inverse_gamma(Rng& rng, const InverseGammaParams& params);
/// M + A G B' with A, B the Cholesky factors of U, V.
Matrix sample_matrix_normal(Rng& rng, const MatrixNormalParams& params);
/// Same draw given a precomputed factor A (A A' = U) for repeated sampling.
Matrix sample_matrix_normal(Rng& rng, const Matrix& mean, const Matrix& row_factor, const SpdMatrix& col_cov);
/// Bartlett draw of the Wishart(Lambda^{-1}, nu), returned inverted.
SpdMatrix sample_inverse_wishart(Rng& rng, const InverseWishartParams& params);

/// log Gamma_p(a), the multivariate gamma function.
double log_multivariate_gamma(int p, double a);
double log_inverse_gamma_pdf(double x, const InverseGammaParams& params);
double log_matrix_normal_pdf(const Matrix& x, const MatrixNormalParams& params);
double log_inverse_wishart_pdf(const SpdMatrix& x, const InverseWishartParams& params);

}  // namespace samplers
}  // namespace evcoint
