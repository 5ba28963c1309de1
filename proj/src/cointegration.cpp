#include "evcoint/cointegration.hpp"

#include "evcoint/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace evcoint::coint {

std::string to_string(DummyCoding c) {
    return c == DummyCoding::Indicator ? "indicator" : "centered";
}

DummyCoding parse_dummy_coding(const std::string& s) {
    if (s == "indicator") return DummyCoding::Indicator;
    if (s == "centered") return DummyCoding::Centered;
    throw ConfigError("unknown dummy coding '" + s + "' (expected indicator or centered)");
}

void VecmSpec::validate() const {
    if (n < 2) throw ConfigError("cointegration requires at least 2 series");
    if (p < 1) throw ConfigError("VAR lag order p must be >= 1");
    if (n_seasonal_dummies < 0) throw ConfigError("number of seasonal dummies must be >= 0");
    if (n_seasonal_dummies > 0 && n_seasonal_dummies >= dummy_period) {
        throw ConfigError("seasonal dummies must be fewer than the dummy period");
    }
}

VecmDesign build_vecm_design(const Matrix& data, const VecmSpec& spec, int start_period_index) {
    spec.validate();
    if (data.cols() != spec.n) {
        throw DimensionMismatch("data has " + std::to_string(data.cols()) + " columns, spec expects " + std::to_string(spec.n));
    }
    const auto total = static_cast<std::size_t>(data.rows());
    const auto need = static_cast<std::size_t>(spec.p * spec.n + spec.n + 1 + kMinExtraObservations);
    if (total < need) throw SeriesTooShort(total, need);
    numerics::require_finite(data, "series matrix");
    if (spec.n_seasonal_dummies > 0 && start_period_index < 0) throw ConfigError("start_period_index must be >= 0");

    const int n = spec.n;
    const int p = spec.p;
    const auto t_eff = static_cast<Eigen::Index>(total) - p;
    const int k = spec.k();

    VecmDesign d;
    d.n = n;
    d.effective_t = static_cast<std::size_t>(t_eff);
    d.delta_y.resize(t_eff, n);
    d.z.resize(t_eff, k);
    d.y_minus1.resize(t_eff, n);

    const double centre = spec.dummy_coding == DummyCoding::Centered ? 1.0 / spec.dummy_period : 0.0;
    for (Eigen::Index r = 0; r < t_eff; ++r) {
        const Eigen::Index i = r + p;  // data row of date t = p + 1 + r
        d.delta_y.row(r) = data.row(i) - data.row(i - 1);
        Eigen::Index c = 0;
        if (spec.include_constant) d.z(r, c++) = 1.0;
        if (spec.n_seasonal_dummies > 0) {
            const int season = static_cast<int>((start_period_index + i) % spec.dummy_period);
            for (int j = 0; j < spec.n_seasonal_dummies; ++j) d.z(r, c++) = (season == j ? 1.0 : 0.0) - centre;
        }
        for (int lag = 1; lag < p; ++lag) {
            d.z.block(r, c, 1, n) = data.row(i - lag) - data.row(i - lag - 1);
            c += n;
        }
        d.z.block(r, c, 1, n) = data.row(i - 1);
        d.y_minus1.row(r) = data.row(i - 1);
    }
    d.z1 = d.z.leftCols(k - n);
    return d;
}

Concentration johansen_concentrate(const VecmDesign& design) {
    const double t = static_cast<double>(design.effective_t);
    Matrix u, v;
    if (design.z1.cols() == 0) {
        // Nothing to partial out.
        u = design.delta_y;
        v = design.y_minus1;
    } else {
        u = numerics::ols_solve(design.z1, design.delta_y).residuals;
        v = numerics::ols_solve(design.z1, design.y_minus1).residuals;
    }

    SpdMatrix suu(u.transpose() * u / t);
    SpdMatrix svv(v.transpose() * v / t);
    Matrix suv = u.transpose() * v / t;
    EigenSpectrum eig = numerics::canonical_eigenvalues(svv, suv, suu);

    // Frisch-Waugh: regressing U on V reproduces the Pi' block of the full regression.
    Matrix pi_t = numerics::ols_solve(v, u).coefficients;
    const Matrix full = numerics::ols_solve(design.z, design.delta_y).coefficients.bottomRows(design.n);
    const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
    if ((pi_t - full).cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw Error(ErrorClass::Numeric, "Frisch-Waugh identity violated: concentrated and full regressions disagree on Pi");
    }

    return Concentration{std::move(eig), std::move(suu), std::move(svv), std::move(suv), std::move(u), std::move(v),
                         std::move(pi_t)};
}

double log_s_star(int r, const EigenSpectrum& eigenvalues, const SpdMatrix& suu, std::size_t t, int n) {
    if (r < 0 || r > n || static_cast<std::size_t>(n) != eigenvalues.size()) {
        throw ConfigError("rank must lie in [0, n]");
    }
    const double tt = static_cast<double>(t);
    const double a = 0.5 * (tt + n + 1.0);
    // Concentrating Omega at (1/(T+n+1)) R'R leaves
    // -a [ln|R'R / T| + n ln(T / (T+n+1))] - n a, and
    // min over rank-r Pi of |R'R / T| = |Suu| prod_{i<=r} (1 - lambda_i).
    double sum = 0.0;
    for (int i = 0; i < r; ++i) sum += std::log1p(-eigenvalues[static_cast<std::size_t>(i)]);
    return -a * (suu.log_det() + sum) - a * n * std::log(tt / (tt + n + 1.0)) - a * n;
}

double max_eig_statistic(const EigenSpectrum& eigenvalues, std::size_t t, int r) {
    if (r < 0 || static_cast<std::size_t>(r) >= eigenvalues.size()) throw ConfigError("max-eig statistic needs 0 <= r < n");
    return -static_cast<double>(t) * std::log1p(-eigenvalues[static_cast<std::size_t>(r)]);
}

double log_posterior(const Matrix& eta, const SpdMatrix& omega, const VecmDesign& design) {
    const Matrix resid = design.delta_y - design.z * eta;
    const double a = 0.5 * (static_cast<double>(design.effective_t) + design.n + 1.0);
    return -a * omega.log_det() - 0.5 * omega.solve(resid.transpose() * resid).trace();
}

double log_posterior(const CointDraw& draw, const VecmDesign& design) {
    return log_posterior(draw.eta, draw.omega, design);
}

CointPosterior::CointPosterior(const VecmDesign& design)
    : CointPosterior(numerics::ols_solve(design.z, design.delta_y), design) {}

CointPosterior::CointPosterior(numerics::OlsResult ols, const VecmDesign& design)
    : eta_hat_(std::move(ols.coefficients)),
      r_(std::move(ols.r_factor)),
      s_(std::move(ols.rss_matrix)),
      t_(design.effective_t),
      n_(design.n) {}

double CointPosterior::log_density(const Matrix& eta, const SpdMatrix& omega) const {
    const Matrix rd = r_.triangularView<Eigen::Upper>() * (eta - eta_hat_);
    const double a = 0.5 * (static_cast<double>(t_) + n_ + 1.0);
    return -a * omega.log_det() - 0.5 * omega.solve(s_.matrix() + rd.transpose() * rd).trace();
}

double CointPosterior::log_max() const {
    const double c = static_cast<double>(t_) + n_ + 1.0;
    return log_density(eta_hat_, SpdMatrix(s_.matrix() / c));
}

void run_chain(const CointPosterior& posterior, Rng& rng, std::size_t n_draws, std::size_t burn_in, const DrawSink& sink) {
    const Eigen::Index k = posterior.eta_hat().rows();
    // (Z'Z)^{-1} = R^{-1} R^{-T}, so R^{-1} is a row factor for the matrix normal.
    const Matrix row_factor = posterior.r_factor().triangularView<Eigen::Upper>().solve(Matrix::Identity(k, k));
    const double dof = static_cast<double>(posterior.t());
    SpdMatrix omega(posterior.s().matrix() / dof);
    for (std::size_t i = 0; i < n_draws; ++i) {
        Matrix eta = samplers::sample_matrix_normal(rng, posterior.eta_hat(), row_factor, omega);
        const Matrix rd = posterior.r_factor().triangularView<Eigen::Upper>() * (eta - posterior.eta_hat());
        Matrix scale = posterior.s().matrix() + rd.transpose() * rd;
        scale = 0.5 * (scale + scale.transpose()).eval();
        omega = samplers::sample_inverse_wishart(rng, samplers::InverseWishartParams(SpdMatrix(std::move(scale)), dof));
        sink(i, CointDraw{std::move(eta), omega, i < burn_in});
    }
}

std::vector<CointDraw> gibbs_chain(const VecmDesign& design, Rng& rng, std::size_t n_draws, std::size_t burn_in) {
    const CointPosterior posterior(design);
    std::vector<CointDraw> out;
    out.reserve(n_draws);
    run_chain(posterior, rng, n_draws, burn_in, [&](std::size_t, const CointDraw& d) { out.push_back(d); });
    return out;
}

ThresholdPolicy ThresholdPolicy::parse(const std::string& s) {
    auto number = [&](std::string_view text) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0 && v < 1.0)) {
            throw ConfigError("invalid threshold policy '" + s + "'");
        }
        return v;
    };
    ThresholdPolicy out;
    if (s.rfind("fixed:", 0) == 0) {
        out.kind = Kind::Fixed;
        out.value = number(std::string_view(s).substr(6));
    } else if (s.rfind("bridge:p=", 0) == 0) {
        out.kind = Kind::Bridge;
        out.value = number(std::string_view(s).substr(9));
    } else {
        throw ConfigError("invalid threshold policy '" + s + "' (expected fixed:<ev> or bridge:p=<p>)");
    }
    return out;
}

std::string ThresholdPolicy::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << (kind == Kind::Fixed ? "fixed:" : "bridge:p=") << value;
    return os.str();
}

RankTestReport test_rank(const Matrix& data, const VecmSpec& spec, int start_period_index, RngState rng_state,
                         std::size_t n_draws, std::size_t burn_in, const ThresholdPolicy& policy,
                         fbst::DimensionConvention convention) {
    if (n_draws <= burn_in) throw ConfigError("n_draws must exceed burn_in");
    const VecmDesign design = build_vecm_design(data, spec, start_period_index);
    const Concentration conc = johansen_concentrate(design);
    const CointPosterior posterior(design);
    const int n = spec.n;

    std::vector<double> thresholds(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r <= n; ++r) {
        thresholds[static_cast<std::size_t>(r)] = log_s_star(r, conc.eigenvalues, conc.suu, design.effective_t, n);
    }
    const double l_full = thresholds.back();
    const double l_check = posterior.log_max();
    if (std::abs(l_full - l_check) > 1e-6 * std::max(1.0, std::abs(l_full))) {
        throw Error(ErrorClass::Numeric, "full-rank maximum from concentration (" + std::to_string(l_full) +
                                             ") disagrees with the posterior at its analytic mode (" +
                                             std::to_string(l_check) + ")");
    }
    // No draw can exceed the global maximum; absorb round-off.
    thresholds.back() += 1e-8 * std::max(1.0, std::abs(l_full));

    std::vector<double> lp(n_draws);
    Rng rng(rng_state);
    run_chain(posterior, rng, n_draws, burn_in,
              [&](std::size_t i, const CointDraw& d) { lp[i] = posterior.log_density(d.eta, d.omega); });

    RankTestReport rep;
    rep.eigenvalues = conc.eigenvalues;
    rep.threshold_policy = policy.describe();
    rep.convention = convention;
    rep.effective_t = design.effective_t;
    rep.k = spec.k();
    rep.selected_rank = n;
    bool deciding = true;
    for (int r = 0; r <= n; ++r) {
        RankRow row;
        row.rank = r;
        row.log_s_star = log_s_star(r, conc.eigenvalues, conc.suu, design.effective_t, n);
        row.evidence = fbst::estimate_evidence(thresholds[static_cast<std::size_t>(r)], lp, burn_in);
        row.evidence.log_s_star = row.log_s_star;
        if (r < n) {
            row.max_eig_stat = max_eig_statistic(conc.eigenvalues, design.effective_t, r);
            if (policy.kind == ThresholdPolicy::Kind::Fixed) {
                row.threshold = policy.value;
            } else {
                const fbst::BridgeSpec b = fbst::rank_bridge_spec(n, spec.k(), r, convention);
                row.bridge_m = b.m;
                row.bridge_h = b.h;
                row.threshold = fbst::ev_from_pvalue(policy.value, b);
            }
            row.rejected = row.evidence.ev < *row.threshold;
            if (deciding && !row.rejected) {
                rep.selected_rank = r;
                deciding = false;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    const double floor = 1.0 - 5.0 / static_cast<double>(n_draws);
    if (rep.rows.back().evidence.ev < floor) {
        throw Error(ErrorClass::Numeric, "full-rank e-value " + std::to_string(rep.rows.back().evidence.ev) +
                                             " is below 1 - 5/n_draws; draws exceed the global maximum");
    }
    return rep;
}

}  // namespace evcoint::coint
