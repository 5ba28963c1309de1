#pragma once

#include "evcoint/cointegration.hpp"
#include "evcoint/errors.hpp"
#include "evcoint/unitroot.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace evcoint::io {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kReportSchema = "evcoint/1";
/// Environment variable consulted when a config carries no seed.
inline constexpr const char* kSeedEnvVar = "EVCOINT_SEED";
inline constexpr std::uint64_t kFallbackSeed = 20240101;

struct ParseError : Error {
    ParseError(std::size_t row, std::size_t col, const std::string& detail)
        : Error(ErrorClass::Input, "parse error at row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + detail),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

struct MissingColumn : Error {
    explicit MissingColumn(const std::string& name) : Error(ErrorClass::Input, "missing column '" + name + "'"), name(name) {}
    std::string name;
};

struct NonPositiveForLog : Error {
    NonPositiveForLog(std::size_t row, std::size_t col)
        : Error(ErrorClass::Input, "log transform of non-positive value at row " + std::to_string(row) + ", column " + std::to_string(col)),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

enum class Transform { None, Log };
enum class Engine { UnitRoot, Coint };
enum class OutputFormat { Json, Csv, Markdown };

std::string to_string(Transform t);
std::string to_string(Engine e);
std::string to_string(OutputFormat f);
Transform parse_transform(const std::string& s);
Engine parse_engine(const std::string& s);
OutputFormat parse_output_format(const std::string& s);

/// A column picked by header name or by 0-based position (after any index column).
using ColumnRef = std::variant<std::string, std::size_t>;

struct CsvOptions {
    char delimiter = ',';
    /// Drop the first field of every line (a time index) before selection.
    bool index_column = false;
};

struct TimeSeriesMatrix {
    Matrix values;  ///< observations x series
    std::vector<std::string> names;
};

/// Rows and columns in errors are 1-based file coordinates; the header is row 1.
/// An empty selection keeps every column.
TimeSeriesMatrix parse_csv(std::istream& in, const std::vector<ColumnRef>& columns, Transform transform,
                           const CsvOptions& options = {});
TimeSeriesMatrix read_csv(const std::string& path, const std::vector<ColumnRef>& columns, Transform transform,
                          const CsvOptions& options = {});

struct RunConfig {
    std::string input_path;
    std::vector<ColumnRef> columns;
    Transform transform = Transform::None;
    CsvOptions csv;
    Engine engine = Engine::UnitRoot;

    int p = 1;
    bool trend = false;                 ///< unit root only
    bool constant = true;               ///< intercept (unit root) or constant (coint)
    int dummies = 0;                    ///< coint only
    int dummy_period = 4;
    coint::DummyCoding dummy_coding = coint::DummyCoding::Indicator;
    int start_period_index = 0;

    std::size_t n_draws = fbst::kDefaultDraws;
    std::size_t burn_in = fbst::kDefaultBurnIn;
    std::optional<std::uint64_t> seed;  ///< resolved by run() when absent
    std::uint64_t stream = 0;
    unitroot::VarianceShape variance_shape = unitroot::VarianceShape::Exact;
    std::string threshold_policy = "bridge:p=0.01";
    fbst::DimensionConvention dimension_convention = fbst::DimensionConvention::PaperLiteral;
    OutputFormat output_format = OutputFormat::Json;
    std::optional<std::string> output_path;
    bool timing = false;

    /// Throws ConfigError on any invalid field.
    void validate() const;
};

/// Seed from the config, else kSeedEnvVar, else kFallbackSeed.
std::uint64_t resolve_seed(const RunConfig& config);

void to_json(nlohmann::json& j, const RunConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, RunConfig& c);

struct HypothesisRow {
    std::string hypothesis;
    std::optional<std::string> statistic_name;
    std::optional<double> statistic;
    double log_s_star = 0.0;
    double ev = 0.0;
    double ev_bar = 0.0;
    double mc_se = 0.0;
    std::optional<double> mc_se_batch;
    std::optional<double> threshold;
    std::optional<int> bridge_m;
    std::optional<int> bridge_h;
    std::optional<bool> rejected;
    /// Engine-specific comparators, ordered by name.
    std::vector<std::pair<std::string, double>> extras;

    friend bool operator==(const HypothesisRow&, const HypothesisRow&) = default;
};

struct StreamUse {
    std::string purpose;
    std::uint64_t stream = 0;
    friend bool operator==(const StreamUse&, const StreamUse&) = default;
};

struct Report {
    std::string schema = kReportSchema;
    std::string library_version = kLibraryVersion;
    RunConfig config;  ///< with the seed resolved
    std::vector<StreamUse> streams;
    std::vector<std::string> series;
    std::size_t effective_t = 0;
    std::vector<HypothesisRow> rows;
    std::vector<double> eigenvalues;  ///< coint only
    std::optional<int> selected_rank;
    std::optional<double> wall_clock_seconds;
};

void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

/// Runs one analysis on an in-memory matrix; `config.input_path` is only echoed.
Report run_on(const TimeSeriesMatrix& data, const RunConfig& config);
/// Reads config.input_path and runs.
Report run(const RunConfig& config);

/// Renders in the requested format. JSON keeps full double precision;
/// csv and markdown print 6 significant digits.
std::string render(const Report& report, OutputFormat format);
std::string render_json(const nlohmann::json& j);

}  // namespace evcoint::io
