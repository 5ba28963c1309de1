#pragma once

#include "evcoint/fbst.hpp"
#include "evcoint/numerics.hpp"
#include "evcoint/samplers.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace evcoint::coint {

using numerics::EigenSpectrum;
using numerics::SpdMatrix;

enum class DummyCoding {
    Indicator,  ///< plain 0/1 indicators
    Centered,   ///< indicator minus 1 / period
};

std::string to_string(DummyCoding c);
DummyCoding parse_dummy_coding(const std::string& s);

struct VecmSpec {
    int n = 2;  ///< number of series
    int p = 1;  ///< VAR lag order
    bool include_constant = true;
    int n_seasonal_dummies = 0;
    int dummy_period = 4;
    DummyCoding dummy_coding = DummyCoding::Indicator;

    void validate() const;
    /// Deterministic columns: constant plus dummies.
    int n_deterministic() const { return (include_constant ? 1 : 0) + n_seasonal_dummies; }
    /// Regressors per equation: deterministic + n (p - 1) + n.
    int k() const { return n_deterministic() + n * (p - 1) + n; }
};

/// Stacked VECM regression for dates p+1, ..., T+p. Z has columns
/// (constant, dummies, dY_{t-1}', ..., dY_{t-p+1}', Y_{t-1}'); Z1 is Z
/// without its last n columns.
struct VecmDesign {
    Matrix delta_y;   ///< T x n
    Matrix z;         ///< T x k
    Matrix z1;        ///< T x (k - n)
    Matrix y_minus1;  ///< T x n
    std::size_t effective_t = 0;
    int n = 0;
};

/// Minimum sample beyond p n + n + 1 observations.
inline constexpr int kMinExtraObservations = 10;

/// `data` is T_total x n. `start_period_index` is the 0-based season of the
/// first row; dummy column j marks rows whose season equals j.
VecmDesign build_vecm_design(const Matrix& data, const VecmSpec& spec, int start_period_index = 0);

struct Concentration {
    EigenSpectrum eigenvalues;
    SpdMatrix suu;
    SpdMatrix svv;
    Matrix suv;    ///< (1/T) U' V
    Matrix u_hat;  ///< residuals of dY on Z1
    Matrix v_hat;  ///< residuals of Y_{-1} on Z1
    Matrix pi_transpose;  ///< OLS of U on V, equal to the Pi' block of OLS of dY on Z
};

/// Two-stage partialling-out. Verifies the Frisch-Waugh identity at runtime.
Concentration johansen_concentrate(const VecmDesign& design);

/// Maximum log-posterior under rank(Pi) = r, sharing the zero-constant
/// convention of log_posterior.
double log_s_star(int r, const EigenSpectrum& eigenvalues, const SpdMatrix& suu, std::size_t t, int n);

/// -T ln(1 - lambda_{r+1}) for 0 <= r < n.
double max_eig_statistic(const EigenSpectrum& eigenvalues, std::size_t t, int r);

struct CointDraw {
    Matrix eta;  ///< k x n
    SpdMatrix omega;
    bool burn_in = false;
};

/// -((T+n+1)/2) ln|Omega| - (1/2) tr[Omega^{-1} (dY - Z eta)'(dY - Z eta)].
double log_posterior(const Matrix& eta, const SpdMatrix& omega, const VecmDesign& design);
double log_posterior(const CointDraw& draw, const VecmDesign& design);

/// Sufficient statistics of the full posterior: eta_hat, R of Z = QR and S.
class CointPosterior {
public:
    explicit CointPosterior(const VecmDesign& design);

    /// Same value as log_posterior, evaluated through S + (R D)'(R D).
    double log_density(const Matrix& eta, const SpdMatrix& omega) const;
    /// Value at the analytic full-rank maximum (eta_hat, S / (T+n+1)).
    double log_max() const;

    const Matrix& eta_hat() const { return eta_hat_; }
    const Matrix& r_factor() const { return r_; }
    const SpdMatrix& s() const { return s_; }
    std::size_t t() const { return t_; }
    int n() const { return n_; }

private:
    CointPosterior(numerics::OlsResult ols, const VecmDesign& design);

    Matrix eta_hat_;
    Matrix r_;
    SpdMatrix s_;
    std::size_t t_;
    int n_;
};

using DrawSink = std::function<void(std::size_t index, const CointDraw& draw)>;

/// Streams the Gibbs chain eta | Omega ~ MN(eta_hat, (Z'Z)^{-1}, Omega),
/// Omega | eta ~ IW(S + (eta - eta_hat)' Z'Z (eta - eta_hat), T) from (eta_hat, S / T).
void run_chain(const CointPosterior& posterior, Rng& rng, std::size_t n_draws, std::size_t burn_in, const DrawSink& sink);

std::vector<CointDraw> gibbs_chain(const VecmDesign& design, Rng& rng, std::size_t n_draws, std::size_t burn_in);

struct ThresholdPolicy {
    enum class Kind { Fixed, Bridge };
    Kind kind = Kind::Bridge;
    double value = 0.01;  ///< the cut itself, or the p-value mapped through the bridge

    static ThresholdPolicy parse(const std::string& s);
    std::string describe() const;
};

struct RankRow {
    int rank = 0;
    double log_s_star = 0.0;
    fbst::EvidenceResult evidence;
    std::optional<double> max_eig_stat;  ///< absent for r = n
    std::optional<double> threshold;     ///< absent for r = n
    std::optional<int> bridge_m;
    std::optional<int> bridge_h;
    bool rejected = false;
};

struct RankTestReport {
    std::vector<RankRow> rows;
    EigenSpectrum eigenvalues;
    int selected_rank = 0;
    std::string threshold_policy;
    fbst::DimensionConvention convention = fbst::DimensionConvention::PaperLiteral;
    std::size_t effective_t = 0;
    int k = 0;
};

/// Sequential FBST rank selection from one shared chain.
RankTestReport test_rank(const Matrix& data, const VecmSpec& spec, int start_period_index, RngState rng_state,
                         std::size_t n_draws = fbst::kDefaultDraws, std::size_t burn_in = fbst::kDefaultBurnIn,
                         const ThresholdPolicy& policy = ThresholdPolicy{},
                         fbst::DimensionConvention convention = fbst::DimensionConvention::PaperLiteral);

}  // namespace evcoint::coint
