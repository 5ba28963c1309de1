#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace evcoint::fbst {

/// Default total chain length (burn-in included) and burn-in.
inline constexpr std::size_t kDefaultDraws = 51000;
inline constexpr std::size_t kDefaultBurnIn = 1000;
/// Batches used by the batch-means standard error.
inline constexpr std::size_t kBatchCount = 20;

/// Draws inside the tangent set out of the draws examined. Merging is a plain
/// sum, so partial counts from independent chains combine in any order.
struct TangentCount {
    std::size_t in_tangent = 0;
    std::size_t total = 0;

    TangentCount& operator+=(const TangentCount& o) {
        in_tangent += o.in_tangent;
        total += o.total;
        return *this;
    }
    friend TangentCount operator+(TangentCount a, const TangentCount& b) { return a += b; }
    friend bool operator==(const TangentCount&, const TangentCount&) = default;
};

struct EvidenceResult {
    double ev = 1.0;       ///< evidence supporting H
    double ev_bar = 0.0;   ///< posterior mass of the tangent set
    double log_s_star = 0.0;
    std::size_t n_draws = 0;  ///< post-burn-in draws counted
    std::size_t burn_in = 0;
    double mc_se = 0.0;       ///< binomial sqrt(ev ev_bar / n)
    /// Batch-means standard error over kBatchCount batches; absent when fewer
    /// than kBatchCount draws were counted or when built from merged counts.
    std::optional<double> mc_se_batch;
};

/// Builds a result from a count. ev_bar = in/total, ev = 1 - ev_bar.
EvidenceResult evidence_from_count(const TangentCount& count, double log_s_star, std::size_t burn_in);

/// Counts post-burn-in draws whose log-posterior strictly exceeds log_s_star.
/// Throws EmptyStream or NonFiniteLogPosterior(index).
TangentCount count_tangent(double log_s_star, std::span<const double> log_posterior, std::size_t burn_in);

/// Monte Carlo e-value: the fraction of post-burn-in draws in the tangent set,
/// complemented. Ties with log_s_star are outside the tangent set.
EvidenceResult estimate_evidence(double log_s_star, std::span<const double> log_posterior, std::size_t burn_in);

/// Dimensions of the full parameter space (m) and of the null manifold (h).
struct BridgeSpec {
    int m;
    int h;
    BridgeSpec(int full_dim, int null_dim);
};

/// ev = 1 - F_m[F^{-1}_{m-h}(1 - p)].
double ev_from_pvalue(double p, const BridgeSpec& spec);
/// Inverse of ev_from_pvalue: p = 1 - F_{m-h}[F^{-1}_m(1 - ev)].
double pvalue_from_ev(double ev, const BridgeSpec& spec);

/// Complement forms, accurate when ev is within rounding of 1:
/// ev_bar = F_m[F^{-1}_{m-h}(1 - p)] and its inverse.
double ev_bar_from_pvalue(double p, const BridgeSpec& spec);
double pvalue_from_ev_bar(double ev_bar, const BridgeSpec& spec);

/// How the null-manifold dimension of rank(Pi) = r is counted.
enum class DimensionConvention {
    /// h = m - n^2 + r: the count that reproduces every reported bridge value.
    PaperLiteral,
    /// h = m - (n - r)^2: dimension of the rank-r matrix manifold.
    Manifold,
};

std::string to_string(DimensionConvention c);
DimensionConvention parse_dimension_convention(const std::string& s);

/// Bridge spec for H: rank(Pi) = r in a VECM with n equations and k regressors
/// per equation; m counts eta (k n) and the free entries of Omega.
BridgeSpec rank_bridge_spec(int n, int k, int r, DimensionConvention convention);

}  // namespace evcoint::fbst
