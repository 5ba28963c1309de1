#include "evcoint/samplers.hpp"

#include "evcoint/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace evcoint {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(RngState state) : state_(state) {
    std::uint64_t sm = state.seed;
    for (auto& w : s_) w = splitmix64(sm);
    for (std::uint64_t i = 0; i < state.stream; ++i) jump();
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

void Rng::jump() {
    static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
                                              0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (int i = 0; i < 4; ++i) acc[i] ^= s_[i];
            }
            next_u64();
        }
    }
    s_ = acc;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

namespace samplers {

InverseGammaParams::InverseGammaParams(double a, double b) : shape(a), scale(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ConfigError("inverse-gamma parameters must be positive and finite");
    }
}

MatrixNormalParams::MatrixNormalParams(Matrix m, SpdMatrix u, SpdMatrix v)
    : mean(std::move(m)), row_cov(std::move(u)), col_cov(std::move(v)) {
    if (mean.rows() != row_cov.order() || mean.cols() != col_cov.order()) {
        throw DimensionMismatch("matrix-normal mean does not match covariance orders");
    }
}

InverseWishartParams::InverseWishartParams(SpdMatrix lambda, double nu) : scale(std::move(lambda)), dof(nu) {
    if (!(nu > static_cast<double>(scale.order()) - 1.0)) {
        throw ConfigError("inverse-Wishart dof must exceed p - 1");
    }
}

double sample_gamma(Rng& rng, double shape) {
    if (shape < 1.0) {
        const double g = sample_gamma(rng, shape + 1.0);
        return g * std::pow(rng.uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_chi2(Rng& rng, double dof) {
    return 2.0 * sample_gamma(rng, 0.5 * dof);
}

double sample_inverse_gamma(Rng& rng, const InverseGammaParams& params) {
    return params.scale / sample_gamma(rng, params.shape);
}

Matrix sample_matrix_normal(Rng& rng, const Matrix& mean, const Matrix& row_factor, const SpdMatrix& col_cov) {
    Matrix g(mean.rows(), mean.cols());
    // Column-major fill order is part of the reproducibility contract.
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.normal();
    }
    return mean + row_factor * g * col_cov.cholesky_l().transpose();
}

Matrix sample_matrix_normal(Rng& rng, const MatrixNormalParams& params) {
    return sample_matrix_normal(rng, params.mean, params.row_cov.cholesky_l(), params.col_cov);
}

SpdMatrix sample_inverse_wishart(Rng& rng, const InverseWishartParams& params) {
    const Eigen::Index p = params.scale.order();
    // Bartlett factor A of a Wishart(I, nu) draw.
    Matrix a = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        a(i, i) = std::sqrt(sample_chi2(rng, params.dof - static_cast<double>(i)));
        for (Eigen::Index j = 0; j < i; ++j) a(i, j) = rng.normal();
    }
    // With Lambda = C C', the inverse of the Wishart(Lambda^{-1}, nu) draw
    // C^{-T} A A' C^{-1} is B B' where A B' = C'.
    Matrix bt = a.triangularView<Eigen::Lower>().solve(params.scale.cholesky_l().transpose());
    Matrix x = bt.transpose() * bt;
    return SpdMatrix(0.5 * (x + x.transpose()));
}

double log_multivariate_gamma(int p, double a) {
    double out = 0.25 * p * (p - 1) * std::log(std::numbers::pi);
    for (int j = 1; j <= p; ++j) out += std::lgamma(a + 0.5 * (1 - j));
    return out;
}

double log_inverse_gamma_pdf(double x, const InverseGammaParams& params) {
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    const double a = params.shape;
    const double b = params.scale;
    return a * std::log(b) - std::lgamma(a) - (a + 1.0) * std::log(x) - b / x;
}

double log_matrix_normal_pdf(const Matrix& x, const MatrixNormalParams& params) {
    const double p = static_cast<double>(params.mean.rows());
    const double q = static_cast<double>(params.mean.cols());
    const Matrix d = x - params.mean;
    const double quad = (params.col_cov.solve(d.transpose()) * params.row_cov.solve(d)).trace();
    return -0.5 * quad - 0.5 * p * q * std::log(2.0 * std::numbers::pi) - 0.5 * p * params.col_cov.log_det() -
           0.5 * q * params.row_cov.log_det();
}

double log_inverse_wishart_pdf(const SpdMatrix& x, const InverseWishartParams& params) {
    const int p = static_cast<int>(x.order());
    const double nu = params.dof;
    const double tr = x.solve(params.scale.matrix()).trace();
    return 0.5 * nu * params.scale.log_det() - 0.5 * nu * p * std::log(2.0) - log_multivariate_gamma(p, 0.5 * nu) -
           0.5 * (nu + p + 1.0) * x.log_det() - 0.5 * tr;
}

}  // namespace samplers
}  // namespace evcoint
