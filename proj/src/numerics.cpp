#include "evcoint/numerics.hpp"

#include "evcoint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace evcoint::numerics {

void require_finite(const Matrix& m, std::string_view what) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j))) {
                throw NonFiniteInput(std::string(what) + " at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

SpdMatrix::SpdMatrix(Matrix a) : a_(std::move(a)) {
    if (a_.rows() == 0 || a_.rows() != a_.cols()) {
        throw DimensionMismatch("SpdMatrix must be square and non-empty");
    }
    require_finite(a_, "SpdMatrix");
    const double scale = a_.cwiseAbs().maxCoeff();
    if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1e-300)) {
        throw NotPositiveDefinite("not symmetric");
    }
    // Symmetrize exactly so downstream factorizations see one triangle.
    a_ = 0.5 * (a_ + a_.transpose()).eval();
    Eigen::LLT<Matrix> llt(a_);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("Cholesky factorization failed");
    }
    l_ = llt.matrixL();
    for (Eigen::Index i = 0; i < l_.rows(); ++i) {
        if (!(l_(i, i) > 0.0) || !std::isfinite(l_(i, i))) {
            throw NotPositiveDefinite("non-positive Cholesky pivot " + std::to_string(i));
        }
    }
}

Matrix SpdMatrix::solve(const Matrix& b) const {
    Matrix y = l_.triangularView<Eigen::Lower>().solve(b);
    return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix SpdMatrix::inverse() const {
    return solve(Matrix::Identity(order(), order()));
}

double SpdMatrix::log_det() const {
    return 2.0 * l_.diagonal().array().log().sum();
}

OlsResult ols_solve(const Matrix& design, const Matrix& response) {
    const Eigen::Index t = design.rows();
    const Eigen::Index k = design.cols();
    if (response.rows() != t) {
        throw DimensionMismatch("design has " + std::to_string(t) + " rows, response has " + std::to_string(response.rows()));
    }
    if (t < k) {
        throw DimensionMismatch("fewer rows (" + std::to_string(t) + ") than regressors (" + std::to_string(k) + ")");
    }
    OlsResult out;
    if (k == 0) {
        out.coefficients = Matrix::Zero(0, response.cols());
        out.residuals = response;
        out.rss_matrix = response.transpose() * response;
        out.r_factor = Matrix::Zero(0, 0);
        return out;
    }

    Eigen::HouseholderQR<Matrix> qr(design);
    Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const double largest = r.diagonal().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(std::abs(r(i, i)) > kRankTol * largest)) {
            throw RankDeficient(static_cast<std::size_t>(i));
        }
    }
    Matrix qty = qr.householderQ().transpose() * response;
    out.coefficients = r.triangularView<Eigen::Upper>().solve(qty.topRows(k));
    out.residuals = response - design * out.coefficients;
    out.rss_matrix = out.residuals.transpose() * out.residuals;
    out.r_factor = std::move(r);
    return out;
}

double log_det_spd(const SpdMatrix& a) {
    return a.log_det();
}

EigenSpectrum canonical_eigenvalues(const SpdMatrix& svv, const Matrix& suv, const SpdMatrix& suu) {
    if (suv.rows() != suu.order() || suv.cols() != svv.order()) {
        throw DimensionMismatch("cross covariance must be " + std::to_string(suu.order()) + "x" + std::to_string(svv.order()));
    }
    // B = Lu^{-1} Suv Lv^{-T}; the spectrum of B'B is that of Svv^{-1} Svu Suu^{-1} Suv.
    Matrix left = suu.cholesky_l().triangularView<Eigen::Lower>().solve(suv);
    Matrix bt = svv.cholesky_l().triangularView<Eigen::Lower>().solve(left.transpose());
    Matrix m = bt * bt.transpose();
    m = 0.5 * (m + m.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw EigenFailure("symmetric eigensolver did not converge");
    }
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::stable_sort(vals.begin(), vals.end(), std::greater<>());
    for (double& v : vals) {
        if (!std::isfinite(v) || v > kEigenRejectAbove) {
            throw EigenFailure("canonical eigenvalue " + std::to_string(v) + " outside [0, 1]");
        }
        v = std::clamp(v, 0.0, kEigenClampMax);
    }
    return EigenSpectrum{std::move(vals)};
}

namespace {

constexpr int kMaxIter = 1000;
constexpr double kEps = 1e-16;

// log(x^a e^{-x} / Gamma(a))
double log_gamma_prefactor(double a, double x) {
    return a * std::log(x) - x - std::lgamma(a);
}

double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(log_gamma_prefactor(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(log_gamma_prefactor(a, x)) * h;
}

void check_df(int df) {
    if (df < 1) throw ConfigError("chi-square degrees of freedom must be >= 1");
}

double chi2_log_pdf(double x, int df) {
    const double k = 0.5 * df;
    return (k - 1.0) * std::log(x) - 0.5 * x - k * std::log(2.0) - std::lgamma(k);
}

// Solves log(tail(x)) = log(target) for a monotone tail function by a
// bracketed Newton iteration; `upper` selects the survival function.
double chi2_invert(double target, int df, bool upper) {
    auto tail = [&](double x) { return upper ? chi2_sf(x, df) : chi2_cdf(x, df); };
    // g(x) is increasing in x for the cdf and decreasing for the survival function.
    auto g = [&](double x) { return std::log(tail(x)) - std::log(target); };
    auto dg = [&](double x) {
        const double d = std::exp(chi2_log_pdf(x, df)) / tail(x);
        return upper ? -d : d;
    };
    auto before_root = [&](double x) { return upper ? g(x) > 0.0 : g(x) < 0.0; };

    // Wilson-Hilferty start.
    const double p_lower = upper ? 1.0 - target : target;
    double z = 0.0;
    if (p_lower > 0.0 && p_lower < 1.0) {
        // Acklam-free rough normal quantile; only a starting point.
        const double t = std::sqrt(-2.0 * std::log(std::min(p_lower, 1.0 - p_lower)));
        z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) / (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
        if (p_lower < 0.5) z = -z;
    }
    const double c = 2.0 / (9.0 * df);
    double x = df * std::pow(std::max(1.0 - c + z * std::sqrt(c), 0.05), 3.0);
    x = std::max(x, 1e-8);

    // x = 0 always lies before the root.
    double lo = 0.0;
    double hi = x;
    while (before_root(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e7) break;
    }
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

    for (int it = 0; it < 200; ++it) {
        const double gx = g(x);
        if (gx == 0.0) return x;
        if (before_root(x)) lo = x; else hi = x;
        double next = x - gx / dg(x);
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, x)) return next;
        x = next;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return x;
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw ConfigError("gamma_p domain error");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw ConfigError("gamma_q domain error");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_cdf(double x, int df) {
    check_df(df);
    if (x < 0.0 || std::isnan(x)) throw ConfigError("chi2_cdf requires x >= 0");
    return gamma_p(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, int df) {
    check_df(df);
    if (x < 0.0 || std::isnan(x)) throw ConfigError("chi2_sf requires x >= 0");
    return gamma_q(0.5 * df, 0.5 * x);
}

double chi2_quantile(double p, int df) {
    check_df(df);
    if (!(p >= 0.0 && p < 1.0)) throw ConfigError("chi2_quantile requires p in [0, 1)");
    if (p == 0.0) return 0.0;
    // The upper-tail solve is better conditioned near 1.
    if (p > 0.5) return chi2_invert(1.0 - p, df, true);
    return chi2_invert(p, df, false);
}

double chi2_upper_quantile(double q, int df) {
    check_df(df);
    if (!(q > 0.0 && q <= 1.0)) throw ConfigError("chi2_upper_quantile requires q in (0, 1]");
    if (q == 1.0) return 0.0;
    if (q < 0.5) return chi2_invert(q, df, true);
    return chi2_invert(1.0 - q, df, false);
}

}  // namespace evcoint::numerics
