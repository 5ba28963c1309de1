#include "evcoint/unitroot.hpp"

#include "evcoint/errors.hpp"

#include <cmath>

namespace evcoint::unitroot {

void UnitRootSpec::validate() const {
    if (p < 1) throw ConfigError("unit-root lag order p must be >= 1");
    if (include_trend && !include_intercept) throw ConfigError("a trend requires an intercept");
}

std::string to_string(VarianceShape s) {
    return s == VarianceShape::Exact ? "exact" : "literal";
}

VarianceShape parse_variance_shape(const std::string& s) {
    if (s == "exact") return VarianceShape::Exact;
    if (s == "literal") return VarianceShape::Literal;
    throw ConfigError("unknown variance shape '" + s + "' (expected exact or literal)");
}

UnitRootDesign build_design(std::span<const double> series, const UnitRootSpec& spec) {
    spec.validate();
    const std::size_t n = series.size();
    const std::size_t p = static_cast<std::size_t>(spec.p);
    if (n < p + kMinExtraObservations) throw SeriesTooShort(n, p + kMinExtraObservations);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(series[i])) throw NonFiniteInput("series value at index " + std::to_string(i));
    }

    const std::size_t t_eff = n - p;
    const Eigen::Index det = (spec.include_intercept ? 1 : 0) + (spec.include_trend ? 1 : 0);
    const Eigen::Index k = det + static_cast<Eigen::Index>(p);

    UnitRootDesign d;
    d.effective_t = t_eff;
    d.level_column = det;
    d.delta_y.resize(static_cast<Eigen::Index>(t_eff), 1);
    d.x_full.resize(static_cast<Eigen::Index>(t_eff), k);

    // Row r holds date t = p + 1 + r, i.e. series index i = p + r.
    for (std::size_t r = 0; r < t_eff; ++r) {
        const std::size_t i = p + r;
        const auto row = static_cast<Eigen::Index>(r);
        d.delta_y(row, 0) = series[i] - series[i - 1];
        Eigen::Index c = 0;
        if (spec.include_intercept) d.x_full(row, c++) = 1.0;
        if (spec.include_trend) d.x_full(row, c++) = static_cast<double>(i + 1);
        d.x_full(row, c++) = series[i - 1];
        for (std::size_t j = 1; j < p; ++j) d.x_full(row, c++) = series[i - j] - series[i - j - 1];
    }

    d.x_restricted.resize(d.x_full.rows(), k - 1);
    d.x_restricted.leftCols(det) = d.x_full.leftCols(det);
    d.x_restricted.rightCols(k - 1 - det) = d.x_full.rightCols(k - 1 - det);
    return d;
}

double log_posterior(const UnitRootDraw& draw, const UnitRootDesign& design) {
    const Matrix resid = design.delta_y - design.x_full * draw.psi;
    const double rss = resid.squaredNorm();
    const double t = static_cast<double>(design.effective_t);
    return -(t + 1.0) * std::log(draw.sigma) - rss / (2.0 * draw.sigma * draw.sigma);
}

UnitRootPosterior::UnitRootPosterior(const UnitRootDesign& design) : t_(design.effective_t) {
    numerics::OlsResult ols = numerics::ols_solve(design.x_full, design.delta_y);
    psi_hat_ = ols.coefficients.col(0);
    r_ = std::move(ols.r_factor);
    rss_ = ols.rss_matrix(0, 0);
}

double UnitRootPosterior::log_density(const Vector& psi, double sigma) const {
    const double quad = (r_.triangularView<Eigen::Upper>() * (psi - psi_hat_)).squaredNorm();
    const double t = static_cast<double>(t_);
    return -(t + 1.0) * std::log(sigma) - (rss_ + quad) / (2.0 * sigma * sigma);
}

double UnitRootPosterior::sigma_map() const {
    return std::sqrt(rss_ / (static_cast<double>(t_) + 1.0));
}

double UnitRootPosterior::log_max() const {
    return log_density(psi_hat_, sigma_map());
}

namespace {

Vector insert_level(const Vector& psi_r, Eigen::Index level_column) {
    Vector full(psi_r.size() + 1);
    full.head(level_column) = psi_r.head(level_column);
    full(level_column) = 0.0;
    full.tail(psi_r.size() - level_column) = psi_r.tail(psi_r.size() - level_column);
    return full;
}

}  // namespace

RestrictedMap restricted_map(const UnitRootDesign& design) {
    const numerics::OlsResult ols = numerics::ols_solve(design.x_restricted, design.delta_y);
    const double rss_r = ols.rss_matrix(0, 0);
    const double scale = design.delta_y.squaredNorm();
    if (!(rss_r >= kDegenerateRssRatio * scale) || rss_r <= 0.0) throw DegenerateRss(rss_r);

    const double t = static_cast<double>(design.effective_t);
    RestrictedMap out;
    out.psi_r = ols.coefficients.col(0);
    out.psi_full = insert_level(out.psi_r, design.level_column);
    out.sigma_r = std::sqrt(rss_r / (t + 1.0));
    // At the restricted MAP the exponent equals (T+1)/2.
    out.log_s_star = -(t + 1.0) * std::log(out.sigma_r) - 0.5 * (t + 1.0);
    return out;
}

std::vector<UnitRootDraw> gibbs_chain(const UnitRootDesign& design, Rng& rng, std::size_t n_draws, std::size_t burn_in,
                                      VarianceShape shape) {
    const UnitRootPosterior post(design);
    const Eigen::Index k = post.psi_hat().size();
    const double t = static_cast<double>(post.t());
    const double ig_shape = shape == VarianceShape::Exact ? 0.5 * t : 0.5 * (t + 1.0);
    const auto r = post.r_factor().triangularView<Eigen::Upper>();

    std::vector<UnitRootDraw> out;
    out.reserve(n_draws);
    double sigma = post.sigma_map();
    Vector z(k);
    for (std::size_t i = 0; i < n_draws; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) z(j) = rng.normal();
        UnitRootDraw d;
        d.psi = post.psi_hat() + sigma * r.solve(z);
        // (psi - psi_hat)' X'X (psi - psi_hat) = sigma^2 |z|^2
        const double h = 0.5 * (post.rss() + sigma * sigma * z.squaredNorm());
        sigma = std::sqrt(samplers::sample_inverse_gamma(rng, samplers::InverseGammaParams(ig_shape, h)));
        d.sigma = sigma;
        d.burn_in = i < burn_in;
        out.push_back(std::move(d));
    }
    return out;
}

double adf_statistic(const UnitRootDesign& design) {
    const numerics::OlsResult ols = numerics::ols_solve(design.x_full, design.delta_y);
    const Eigen::Index k = design.x_full.cols();
    const double t = static_cast<double>(design.effective_t);
    const double s2 = ols.rss_matrix(0, 0) / (t - static_cast<double>(k));
    // diag((X'X)^{-1}) = squared row norms of R^{-1}.
    const Matrix r_inv = ols.r_factor.triangularView<Eigen::Upper>().solve(Matrix::Identity(k, k));
    const double var = s2 * r_inv.row(design.level_column).squaredNorm();
    return ols.coefficients(design.level_column, 0) / std::sqrt(var);
}

UnitRootResult test_unit_root(std::span<const double> series, const UnitRootSpec& spec, RngState rng_state,
                              std::size_t n_draws, std::size_t burn_in, VarianceShape shape) {
    if (n_draws <= burn_in) throw ConfigError("n_draws must exceed burn_in");
    const UnitRootDesign design = build_design(series, spec);
    const RestrictedMap rmap = restricted_map(design);
    const UnitRootPosterior post(design);

    Rng rng(rng_state);
    const std::vector<UnitRootDraw> chain = gibbs_chain(design, rng, n_draws, burn_in, shape);

    std::vector<double> lp(chain.size());
    std::size_t nonstationary = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        lp[i] = post.log_density(chain[i].psi, chain[i].sigma);
        if (i >= burn_in && chain[i].psi(design.level_column) >= 0.0) ++nonstationary;
    }

    UnitRootResult res;
    res.evidence = fbst::estimate_evidence(rmap.log_s_star, lp, burn_in);
    res.p_nonstationary = static_cast<double>(nonstationary) / static_cast<double>(n_draws - burn_in);
    res.adf_stat = adf_statistic(design);
    res.gamma0_hat = post.psi_hat()(design.level_column);
    res.effective_t = design.effective_t;
    res.shape = shape;
    return res;
}

}  // namespace evcoint::unitroot
