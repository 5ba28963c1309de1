#pragma once

#include "evcoint/fbst.hpp"
#include "evcoint/numerics.hpp"
#include "evcoint/samplers.hpp"

#include <span>
#include <string>
#include <vector>

namespace evcoint::unitroot {

/// Augmented Dickey-Fuller regression with p - 1 lagged differences.
struct UnitRootSpec {
    int p = 1;
    bool include_trend = false;
    bool include_intercept = true;

    /// Throws ConfigError unless p >= 1 and trend implies intercept.
    void validate() const;
};

/// Stacked regression for dates p+1, ..., T+p. Columns of x_full are
/// (intercept, trend, y_{t-1}, dy_{t-1}, ..., dy_{t-p+1}) with the
/// deterministic columns present only when requested.
struct UnitRootDesign {
    Matrix delta_y;       ///< T x 1
    Matrix x_full;        ///< T x k
    Matrix x_restricted;  ///< x_full without the lagged level
    std::size_t effective_t = 0;
    Eigen::Index level_column = 0;  ///< index of y_{t-1} in x_full
};

struct UnitRootDraw {
    Vector psi;  ///< (mu, delta, Gamma0, Gamma1, ..., Gamma_{p-1}) restricted to present columns
    double sigma = 1.0;
    bool burn_in = false;
};

/// Shape of the inverse-gamma conditional for sigma^2 given psi.
enum class VarianceShape {
    /// T/2: the conditional of the posterior sigma^{-(T+1)} exp(...) taken as a density in (psi, sigma).
    Exact,
    /// (T+1)/2 with the same scale.
    Literal,
};

std::string to_string(VarianceShape s);
VarianceShape parse_variance_shape(const std::string& s);

/// Minimum usable sample: T_total >= p + 10.
inline constexpr int kMinExtraObservations = 10;
/// Restricted RSS below this fraction of dy'dy is treated as a perfect fit.
inline constexpr double kDegenerateRssRatio = 1e-12;

UnitRootDesign build_design(std::span<const double> series, const UnitRootSpec& spec);

/// -(T+1) ln sigma - RSS(psi) / (2 sigma^2), additive constant zero.
double log_posterior(const UnitRootDraw& draw, const UnitRootDesign& design);

/// Full-model OLS summary reused by the sampler and by log-density
/// evaluation through RSS(psi) = RSS_hat + |R (psi - psi_hat)|^2.
class UnitRootPosterior {
public:
    explicit UnitRootPosterior(const UnitRootDesign& design);

    double log_density(const Vector& psi, double sigma) const;
    const Vector& psi_hat() const { return psi_hat_; }
    double rss() const { return rss_; }
    const Matrix& r_factor() const { return r_; }
    std::size_t t() const { return t_; }
    /// Analytic unconstrained maximum: (psi_hat, sqrt(RSS / (T+1))).
    double sigma_map() const;
    double log_max() const;

private:
    Vector psi_hat_;
    Matrix r_;
    double rss_ = 0.0;
    std::size_t t_ = 0;
};

struct RestrictedMap {
    Vector psi_r;      ///< coefficients on x_restricted
    Vector psi_full;   ///< psi_r with 0 inserted in the level slot
    double sigma_r = 0.0;
    double log_s_star = 0.0;
};

/// Maximum of the posterior on Gamma0 = 0. Throws RankDeficient or DegenerateRss.
RestrictedMap restricted_map(const UnitRootDesign& design);

/// Gibbs sampler alternating psi | sigma ~ N(psi_hat, sigma^2 (X'X)^{-1}) and
/// sigma^2 | psi ~ IG(shape, H). Starts at (psi_hat, sigma_map). Returns all
/// n_draws draws with the first burn_in tagged.
std::vector<UnitRootDraw> gibbs_chain(const UnitRootDesign& design, Rng& rng, std::size_t n_draws, std::size_t burn_in,
                                      VarianceShape shape = VarianceShape::Exact);

/// t-ratio of the lagged-level coefficient with s^2 = RSS / (T - k).
double adf_statistic(const UnitRootDesign& design);

struct UnitRootResult {
    fbst::EvidenceResult evidence;
    double p_nonstationary = 0.0;  ///< fraction of counted draws with Gamma0 >= 0
    double adf_stat = 0.0;
    double gamma0_hat = 0.0;
    std::size_t effective_t = 0;
    VarianceShape shape = VarianceShape::Exact;
};

UnitRootResult test_unit_root(std::span<const double> series, const UnitRootSpec& spec, RngState rng_state,
                              std::size_t n_draws = fbst::kDefaultDraws, std::size_t burn_in = fbst::kDefaultBurnIn,
                              VarianceShape shape = VarianceShape::Exact);

}  // namespace evcoint::unitroot
