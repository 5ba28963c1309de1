#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace evcoint {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace numerics {

/// Relative tolerance on the smallest |R_ii| of the QR factor.
inline constexpr double kRankTol = 1e-10;
/// Computed canonical eigenvalues above this are treated as upstream error.
inline constexpr double kEigenRejectAbove = 1.0 + 1e-8;
/// Accepted eigenvalues are clamped into [0, kEigenClampMax].
inline constexpr double kEigenClampMax = 1.0 - 1e-12;

/// Throws NonFiniteInput naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

/// Symmetric positive-definite matrix holding its own lower Cholesky factor.
class SpdMatrix {
public:
    /// Validates symmetry (1e-10 relative) and factorizes; throws NotPositiveDefinite.
    explicit SpdMatrix(Matrix a);

    Eigen::Index order() const { return a_.rows(); }
    const Matrix& matrix() const { return a_; }
    /// Lower-triangular L with L L' = A.
    const Matrix& cholesky_l() const { return l_; }

    /// A^{-1} B via the stored factor.
    Matrix solve(const Matrix& b) const;
    Matrix inverse() const;
    /// 2 * sum(log diag L).
    double log_det() const;

private:
    Matrix a_;
    Matrix l_;
};

/// Descending canonical eigenvalues, each in [0, 1).
struct EigenSpectrum {
    std::vector<double> values;
    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

struct OlsResult {
    Matrix coefficients;  ///< k x m
    Matrix residuals;     ///< T x m
    Matrix rss_matrix;    ///< m x m, residuals' residuals
    Matrix r_factor;      ///< k x k upper triangular R of design = QR
};

/// Least squares by Householder QR. Throws RankDeficient(column) when
/// |R_ii| <= kRankTol * max|R_jj| and DimensionMismatch on shape errors.
OlsResult ols_solve(const Matrix& design, const Matrix& response);

/// log|A| from the Cholesky factor.
double log_det_spd(const SpdMatrix& a);

/// Eigenvalues of Svv^{-1} Svu Suu^{-1} Suv in descending order, where
/// `suv` houses Sigma_UV (rows follow U, columns follow V). Computed on the
/// symmetrized form Lv^{-1} Suv' Suu^{-1} Suv Lv^{-T}.
EigenSpectrum canonical_eigenvalues(const SpdMatrix& svv, const Matrix& suv, const SpdMatrix& suu);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without cancellation.
double gamma_q(double a, double x);

double chi2_cdf(double x, int df);
/// Upper tail 1 - chi2_cdf(x, df).
double chi2_sf(double x, int df);
/// x such that chi2_cdf(x, df) = p, for p in [0, 1).
double chi2_quantile(double p, int df);
/// x such that chi2_sf(x, df) = q, for q in (0, 1]; accurate for tiny q.
double chi2_upper_quantile(double q, int df);

}  // namespace numerics
}  // namespace evcoint
