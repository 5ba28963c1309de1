#include "evcoint/fbst.hpp"

#include "evcoint/errors.hpp"
#include "evcoint/numerics.hpp"

#include <cmath>
#include <vector>

namespace evcoint::fbst {

EvidenceResult evidence_from_count(const TangentCount& count, double log_s_star, std::size_t burn_in) {
    if (count.total == 0) throw EmptyStream();
    EvidenceResult r;
    r.ev_bar = static_cast<double>(count.in_tangent) / static_cast<double>(count.total);
    r.ev = 1.0 - r.ev_bar;
    r.log_s_star = log_s_star;
    r.n_draws = count.total;
    r.burn_in = burn_in;
    r.mc_se = std::sqrt(r.ev * r.ev_bar / static_cast<double>(count.total));
    return r;
}

TangentCount count_tangent(double log_s_star, std::span<const double> log_posterior, std::size_t burn_in) {
    if (log_posterior.size() <= burn_in) throw EmptyStream();
    TangentCount c;
    for (std::size_t i = burn_in; i < log_posterior.size(); ++i) {
        const double v = log_posterior[i];
        if (!std::isfinite(v)) throw NonFiniteLogPosterior(i);
        if (v > log_s_star) ++c.in_tangent;
    }
    c.total = log_posterior.size() - burn_in;
    return c;
}

EvidenceResult estimate_evidence(double log_s_star, std::span<const double> log_posterior, std::size_t burn_in) {
    const TangentCount c = count_tangent(log_s_star, log_posterior, burn_in);
    EvidenceResult r = evidence_from_count(c, log_s_star, burn_in);

    const std::size_t batch = c.total / kBatchCount;
    if (batch > 0) {
        std::vector<double> means(kBatchCount, 0.0);
        for (std::size_t b = 0; b < kBatchCount; ++b) {
            std::size_t in = 0;
            for (std::size_t i = 0; i < batch; ++i) {
                if (log_posterior[burn_in + b * batch + i] > log_s_star) ++in;
            }
            means[b] = static_cast<double>(in) / static_cast<double>(batch);
        }
        double mean = 0.0;
        for (double m : means) mean += m;
        mean /= static_cast<double>(kBatchCount);
        double ss = 0.0;
        for (double m : means) ss += (m - mean) * (m - mean);
        r.mc_se_batch = std::sqrt(ss / static_cast<double>(kBatchCount - 1) / static_cast<double>(kBatchCount));
    }
    return r;
}

BridgeSpec::BridgeSpec(int full_dim, int null_dim) : m(full_dim), h(null_dim) {
    if (!(h >= 1 && h < m)) throw ConfigError("bridge dimensions require 1 <= h < m");
}

double ev_from_pvalue(double p, const BridgeSpec& spec) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p-value must lie in [0, 1]");
    if (p == 0.0) return 0.0;
    const double x = numerics::chi2_upper_quantile(p, spec.m - spec.h);
    return numerics::chi2_sf(x, spec.m);
}

double pvalue_from_ev(double ev, const BridgeSpec& spec) {
    if (!(ev >= 0.0 && ev <= 1.0)) throw ConfigError("e-value must lie in [0, 1]");
    if (ev == 0.0) return 0.0;
    const double x = numerics::chi2_upper_quantile(ev, spec.m);
    return numerics::chi2_sf(x, spec.m - spec.h);
}

double ev_bar_from_pvalue(double p, const BridgeSpec& spec) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p-value must lie in [0, 1]");
    if (p == 0.0) return 1.0;
    const double x = numerics::chi2_upper_quantile(p, spec.m - spec.h);
    return numerics::chi2_cdf(x, spec.m);
}

double pvalue_from_ev_bar(double ev_bar, const BridgeSpec& spec) {
    if (!(ev_bar >= 0.0 && ev_bar <= 1.0)) throw ConfigError("ev_bar must lie in [0, 1]");
    if (ev_bar == 1.0) return 0.0;
    const double x = numerics::chi2_quantile(ev_bar, spec.m);
    return numerics::chi2_sf(x, spec.m - spec.h);
}

std::string to_string(DimensionConvention c) {
    return c == DimensionConvention::PaperLiteral ? "paper-literal" : "manifold";
}

DimensionConvention parse_dimension_convention(const std::string& s) {
    if (s == "paper-literal") return DimensionConvention::PaperLiteral;
    if (s == "manifold") return DimensionConvention::Manifold;
    throw ConfigError("unknown dimension convention '" + s + "' (expected paper-literal or manifold)");
}

BridgeSpec rank_bridge_spec(int n, int k, int r, DimensionConvention convention) {
    if (n < 1 || k < n || r < 0 || r >= n) throw ConfigError("rank bridge requires n >= 1, k >= n and 0 <= r < n");
    const int m = k * n + n * (n + 1) / 2;
    const int h = convention == DimensionConvention::PaperLiteral ? m - n * n + r : m - (n - r) * (n - r);
    return BridgeSpec(m, h);
}

}  // namespace evcoint::fbst
