#include "evcoint/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace evcoint::io {

using nlohmann::json;

std::string to_string(Transform t) { return t == Transform::None ? "none" : "log"; }

std::string to_string(Engine e) { return e == Engine::UnitRoot ? "unitroot" : "coint"; }

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Markdown: return "markdown";
    }
    return "json";
}

Transform parse_transform(const std::string& s) {
    if (s == "none") return Transform::None;
    if (s == "log") return Transform::Log;
    throw ConfigError("unknown transform '" + s + "' (expected none or log)");
}

Engine parse_engine(const std::string& s) {
    if (s == "unitroot") return Engine::UnitRoot;
    if (s == "coint") return Engine::Coint;
    throw ConfigError("unknown engine '" + s + "' (expected unitroot or coint)");
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "markdown") return OutputFormat::Markdown;
    throw ConfigError("unknown output format '" + s + "' (expected json, csv or markdown)");
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    std::string out(s.substr(b, e - b + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
    return out;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

}  // namespace

TimeSeriesMatrix parse_csv(std::istream& in, const std::vector<ColumnRef>& columns, Transform transform,
                           const CsvOptions& options) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, 1, "missing header row");
    std::vector<std::string> header = split(line, options.delimiter);
    const std::size_t offset = options.index_column ? 1 : 0;
    if (header.size() <= offset) throw ParseError(1, 1, "header has no data columns");

    // Selected positions within the full line.
    std::vector<std::size_t> picks;
    TimeSeriesMatrix out;
    if (columns.empty()) {
        for (std::size_t c = offset; c < header.size(); ++c) picks.push_back(c);
    } else {
        for (const ColumnRef& ref : columns) {
            if (const auto* name = std::get_if<std::string>(&ref)) {
                const auto it = std::find(header.begin() + static_cast<std::ptrdiff_t>(offset), header.end(), *name);
                if (it == header.end()) throw MissingColumn(*name);
                picks.push_back(static_cast<std::size_t>(it - header.begin()));
            } else {
                const std::size_t idx = std::get<std::size_t>(ref) + offset;
                if (idx >= header.size()) throw MissingColumn("#" + std::to_string(std::get<std::size_t>(ref)));
                picks.push_back(idx);
            }
        }
    }
    for (std::size_t c : picks) out.names.push_back(header[c]);

    std::vector<std::vector<double>> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split(line, options.delimiter);
        if (fields.size() != header.size()) {
            throw ParseError(row, std::min(fields.size(), header.size()) + 1,
                             "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
        }
        std::vector<double> values;
        values.reserve(picks.size());
        for (std::size_t c : picks) {
            double v = 0.0;
            if (!parse_double(fields[c], v)) throw ParseError(row, c + 1, "'" + fields[c] + "' is not a number");
            if (transform == Transform::Log) {
                if (!(v > 0.0)) throw NonPositiveForLog(row, c + 1);
                v = std::log(v);
            }
            values.push_back(v);
        }
        rows.push_back(std::move(values));
    }

    out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(picks.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < picks.size(); ++c) {
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return out;
}

TimeSeriesMatrix read_csv(const std::string& path, const std::vector<ColumnRef>& columns, Transform transform,
                          const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorClass::Input, "cannot open input file '" + path + "'");
    return parse_csv(in, columns, transform, options);
}

void RunConfig::validate() const {
    if (!(n_draws > burn_in)) throw ConfigError("n_draws must exceed burn_in");
    if (p < 1) throw ConfigError("p must be >= 1");
    if (engine == Engine::UnitRoot) {
        if (dummies != 0) throw ConfigError("seasonal dummies are only available for the coint engine");
        unitroot::UnitRootSpec{p, trend, constant}.validate();
    } else {
        if (trend) throw ConfigError("trend is only available for the unitroot engine");
        if (dummy_period < 2) throw ConfigError("dummy_period must be >= 2");
        if (dummies < 0 || (dummies > 0 && dummies >= dummy_period)) {
            throw ConfigError("dummies must lie in [0, dummy_period - 1]");
        }
        if (start_period_index < 0) throw ConfigError("start_period_index must be >= 0");
        coint::ThresholdPolicy::parse(threshold_policy);
    }
    if (csv.delimiter != ',' && csv.delimiter != ';' && csv.delimiter != '\t') {
        throw ConfigError("delimiter must be ',', ';' or tab");
    }
}

std::uint64_t resolve_seed(const RunConfig& config) {
    if (config.seed) return *config.seed;
    if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ConfigError(std::string(kSeedEnvVar) + " must be an unsigned 64-bit integer");
        }
        return v;
    }
    return kFallbackSeed;
}

namespace {

std::string delimiter_name(char d) { return d == '\t' ? "tab" : std::string(1, d); }

char parse_delimiter(const std::string& s) {
    if (s == "," || s == ";") return s[0];
    if (s == "tab" || s == "\t") return '\t';
    throw ConfigError("delimiter must be ',', ';' or tab");
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace

void to_json(json& j, const RunConfig& c) {
    json cols = json::array();
    for (const ColumnRef& ref : c.columns) {
        if (const auto* name = std::get_if<std::string>(&ref)) cols.push_back(*name);
        else cols.push_back(std::get<std::size_t>(ref));
    }
    j = json{{"input_path", c.input_path},
             {"columns", cols},
             {"transform", to_string(c.transform)},
             {"delimiter", delimiter_name(c.csv.delimiter)},
             {"index_column", c.csv.index_column},
             {"engine", to_string(c.engine)},
             {"p", c.p},
             {"trend", c.trend},
             {"constant", c.constant},
             {"dummies", c.dummies},
             {"dummy_period", c.dummy_period},
             {"dummy_coding", coint::to_string(c.dummy_coding)},
             {"start_period_index", c.start_period_index},
             {"n_draws", c.n_draws},
             {"burn_in", c.burn_in},
             {"seed", c.seed ? json(*c.seed) : json(nullptr)},
             {"stream", c.stream},
             {"variance_shape", unitroot::to_string(c.variance_shape)},
             {"threshold_policy", c.threshold_policy},
             {"dimension_convention", fbst::to_string(c.dimension_convention)},
             {"output_format", to_string(c.output_format)},
             {"output_path", c.output_path ? json(*c.output_path) : json(nullptr)},
             {"timing", c.timing}};
}

void from_json(const json& j, RunConfig& c) {
    if (!j.is_object()) throw ConfigError("run config must be a JSON object");
    static const std::vector<std::string> known = {
        "input_path", "columns", "transform", "delimiter", "index_column", "engine", "p", "trend",
        "constant", "dummies", "dummy_period", "dummy_coding", "start_period_index", "n_draws", "burn_in",
        "seed", "stream", "variance_shape", "threshold_policy", "dimension_convention", "output_format",
        "output_path", "timing"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");
    }
    try {
        read_opt(j, "input_path", c.input_path);
        if (auto it = j.find("columns"); it != j.end()) {
            c.columns.clear();
            for (const json& v : *it) {
                if (v.is_string()) c.columns.emplace_back(v.get<std::string>());
                else c.columns.emplace_back(v.get<std::size_t>());
            }
        }
        if (auto it = j.find("transform"); it != j.end()) c.transform = parse_transform(it->get<std::string>());
        if (auto it = j.find("delimiter"); it != j.end()) c.csv.delimiter = parse_delimiter(it->get<std::string>());
        read_opt(j, "index_column", c.csv.index_column);
        if (auto it = j.find("engine"); it != j.end()) c.engine = parse_engine(it->get<std::string>());
        read_opt(j, "p", c.p);
        read_opt(j, "trend", c.trend);
        read_opt(j, "constant", c.constant);
        read_opt(j, "dummies", c.dummies);
        read_opt(j, "dummy_period", c.dummy_period);
        if (auto it = j.find("dummy_coding"); it != j.end()) c.dummy_coding = coint::parse_dummy_coding(it->get<std::string>());
        read_opt(j, "start_period_index", c.start_period_index);
        read_opt(j, "n_draws", c.n_draws);
        read_opt(j, "burn_in", c.burn_in);
        if (auto it = j.find("seed"); it != j.end()) {
            if (it->is_null()) c.seed.reset();
            else c.seed = it->get<std::uint64_t>();
        }
        read_opt(j, "stream", c.stream);
        if (auto it = j.find("variance_shape"); it != j.end()) {
            c.variance_shape = unitroot::parse_variance_shape(it->get<std::string>());
        }
        read_opt(j, "threshold_policy", c.threshold_policy);
        if (auto it = j.find("dimension_convention"); it != j.end()) {
            c.dimension_convention = fbst::parse_dimension_convention(it->get<std::string>());
        }
        if (auto it = j.find("output_format"); it != j.end()) c.output_format = parse_output_format(it->get<std::string>());
        if (auto it = j.find("output_path"); it != j.end()) {
            if (it->is_null()) c.output_path.reset();
            else c.output_path = it->get<std::string>();
        }
        read_opt(j, "timing", c.timing);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid run config: ") + e.what());
    }
}

namespace {

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_get(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

}  // namespace

void to_json(json& j, const Report& r) {
    json rows = json::array();
    for (const HypothesisRow& h : r.rows) {
        json extras = json::object();
        for (const auto& [k, v] : h.extras) extras[k] = v;
        rows.push_back(json{{"hypothesis", h.hypothesis},
                            {"statistic_name", opt_json(h.statistic_name)},
                            {"statistic", opt_json(h.statistic)},
                            {"log_s_star", h.log_s_star},
                            {"ev", h.ev},
                            {"ev_bar", h.ev_bar},
                            {"mc_se", h.mc_se},
                            {"mc_se_batch", opt_json(h.mc_se_batch)},
                            {"threshold", opt_json(h.threshold)},
                            {"bridge_m", opt_json(h.bridge_m)},
                            {"bridge_h", opt_json(h.bridge_h)},
                            {"rejected", opt_json(h.rejected)},
                            {"extras", extras}});
    }
    json streams = json::array();
    for (const StreamUse& s : r.streams) streams.push_back(json{{"purpose", s.purpose}, {"stream", s.stream}});
    j = json{{"schema", r.schema},
             {"library_version", r.library_version},
             {"config", r.config},
             {"streams", streams},
             {"series", r.series},
             {"effective_t", r.effective_t},
             {"rows", rows},
             {"eigenvalues", r.eigenvalues},
             {"selected_rank", opt_json(r.selected_rank)},
             {"wall_clock_seconds", opt_json(r.wall_clock_seconds)}};
}

void from_json(const json& j, Report& r) {
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) throw ConfigError("unsupported report schema '" + r.schema + "'");
    r.library_version = j.at("library_version").get<std::string>();
    r.config = RunConfig{};
    from_json(j.at("config"), r.config);
    r.streams.clear();
    for (const json& s : j.at("streams")) r.streams.push_back(StreamUse{s.at("purpose").get<std::string>(), s.at("stream").get<std::uint64_t>()});
    r.series = j.at("series").get<std::vector<std::string>>();
    r.effective_t = j.at("effective_t").get<std::size_t>();
    r.rows.clear();
    for (const json& h : j.at("rows")) {
        HypothesisRow row;
        row.hypothesis = h.at("hypothesis").get<std::string>();
        row.statistic_name = opt_get<std::string>(h, "statistic_name");
        row.statistic = opt_get<double>(h, "statistic");
        row.log_s_star = h.at("log_s_star").get<double>();
        row.ev = h.at("ev").get<double>();
        row.ev_bar = h.at("ev_bar").get<double>();
        row.mc_se = h.at("mc_se").get<double>();
        row.mc_se_batch = opt_get<double>(h, "mc_se_batch");
        row.threshold = opt_get<double>(h, "threshold");
        row.bridge_m = opt_get<int>(h, "bridge_m");
        row.bridge_h = opt_get<int>(h, "bridge_h");
        row.rejected = opt_get<bool>(h, "rejected");
        for (const auto& [k, v] : h.at("extras").items()) row.extras.emplace_back(k, v.get<double>());
        r.rows.push_back(std::move(row));
    }
    r.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    r.selected_rank = opt_get<int>(j, "selected_rank");
    r.wall_clock_seconds = opt_get<double>(j, "wall_clock_seconds");
}

namespace {

void sort_extras(HypothesisRow& row) {
    std::sort(row.extras.begin(), row.extras.end());
}

HypothesisRow evidence_row(std::string hypothesis, const fbst::EvidenceResult& ev) {
    HypothesisRow row;
    row.hypothesis = std::move(hypothesis);
    row.log_s_star = ev.log_s_star;
    row.ev = ev.ev;
    row.ev_bar = ev.ev_bar;
    row.mc_se = ev.mc_se;
    row.mc_se_batch = ev.mc_se_batch;
    return row;
}

void run_unitroot(const TimeSeriesMatrix& data, const RunConfig& config, std::uint64_t seed, Report& rep) {
    if (data.values.cols() != 1) {
        throw ConfigError("unitroot engine needs exactly one column, got " + std::to_string(data.values.cols()));
    }
    const Vector y = data.values.col(0);
    const std::span<const double> series(y.data(), static_cast<std::size_t>(y.size()));
    const unitroot::UnitRootSpec spec{config.p, config.trend, config.constant};
    const unitroot::VarianceShape alt = config.variance_shape == unitroot::VarianceShape::Exact
                                            ? unitroot::VarianceShape::Literal
                                            : unitroot::VarianceShape::Exact;

    const auto res = unitroot::test_unit_root(series, spec, RngState{seed, config.stream}, config.n_draws, config.burn_in,
                                              config.variance_shape);
    const auto res_alt = unitroot::test_unit_root(series, spec, RngState{seed, config.stream + 1}, config.n_draws,
                                                  config.burn_in, alt);
    rep.streams = {{"gibbs", config.stream}, {"gibbs_" + unitroot::to_string(alt) + "_shape", config.stream + 1}};
    rep.effective_t = res.effective_t;

    HypothesisRow row = evidence_row("gamma0 = 0", res.evidence);
    row.statistic_name = "adf";
    row.statistic = res.adf_stat;
    row.extras = {{"p_nonstationary", res.p_nonstationary},
                  {"gamma0_hat", res.gamma0_hat},
                  {"ev_" + unitroot::to_string(alt) + "_shape", res_alt.evidence.ev},
                  {"mc_se_" + unitroot::to_string(alt) + "_shape", res_alt.evidence.mc_se},
                  {"p_nonstationary_" + unitroot::to_string(alt) + "_shape", res_alt.p_nonstationary}};
    sort_extras(row);
    rep.rows.push_back(std::move(row));
}

void run_coint(const TimeSeriesMatrix& data, const RunConfig& config, std::uint64_t seed, Report& rep) {
    coint::VecmSpec spec;
    spec.n = static_cast<int>(data.values.cols());
    spec.p = config.p;
    spec.include_constant = config.constant;
    spec.n_seasonal_dummies = config.dummies;
    spec.dummy_period = config.dummy_period;
    spec.dummy_coding = config.dummy_coding;
    const coint::ThresholdPolicy policy = coint::ThresholdPolicy::parse(config.threshold_policy);

    const coint::RankTestReport res =
        coint::test_rank(data.values, spec, config.start_period_index, RngState{seed, config.stream}, config.n_draws,
                         config.burn_in, policy, config.dimension_convention);
    rep.streams = {{"gibbs", config.stream}};
    rep.effective_t = res.effective_t;
    rep.eigenvalues = res.eigenvalues.values;
    rep.selected_rank = res.selected_rank;

    for (const coint::RankRow& r : res.rows) {
        HypothesisRow row = evidence_row("rank <= " + std::to_string(r.rank), r.evidence);
        if (r.max_eig_stat) {
            row.statistic_name = "max_eig";
            row.statistic = r.max_eig_stat;
            row.threshold = r.threshold;
            row.bridge_m = r.bridge_m;
            row.bridge_h = r.bridge_h;
            row.rejected = r.rejected;
            if (policy.kind == coint::ThresholdPolicy::Kind::Bridge) {
                for (auto conv : {fbst::DimensionConvention::PaperLiteral, fbst::DimensionConvention::Manifold}) {
                    const fbst::BridgeSpec b = fbst::rank_bridge_spec(spec.n, res.k, r.rank, conv);
                    row.extras.emplace_back("bridge_threshold_" + fbst::to_string(conv), fbst::ev_from_pvalue(policy.value, b));
                    row.extras.emplace_back("bridge_pvalue_" + fbst::to_string(conv), fbst::pvalue_from_ev(r.evidence.ev, b));
                }
            }
        }
        sort_extras(row);
        rep.rows.push_back(std::move(row));
    }
}

}  // namespace

Report run_on(const TimeSeriesMatrix& data, const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.config = config;
    rep.config.seed = resolve_seed(config);
    rep.series = data.names;
    if (config.engine == Engine::UnitRoot) run_unitroot(data, config, *rep.config.seed, rep);
    else run_coint(data, config, *rep.config.seed, rep);
    if (config.timing) {
        rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return rep;
}

Report run(const RunConfig& config) {
    config.validate();
    if (config.input_path.empty()) throw ConfigError("input_path is required");
    const TimeSeriesMatrix data = read_csv(config.input_path, config.columns, config.transform, config.csv);
    return run_on(data, config);
}

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

template <class T>
std::string fmt_opt(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, double>) return fmt6(*v);
    else if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
    else if constexpr (std::is_same_v<T, std::string>) return *v;
    else return std::to_string(*v);
}

std::vector<std::string> extra_keys(const Report& r) {
    std::vector<std::string> keys;
    for (const auto& row : r.rows) {
        for (const auto& [k, _] : row.extras) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<std::vector<std::string>> table(const Report& r) {
    const std::vector<std::string> keys = extra_keys(r);
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> head = {"hypothesis", "statistic_name", "statistic", "log_s_star", "ev", "ev_bar",
                                     "mc_se", "mc_se_batch", "threshold", "bridge_m", "bridge_h", "rejected"};
    head.insert(head.end(), keys.begin(), keys.end());
    out.push_back(std::move(head));
    for (const HypothesisRow& h : r.rows) {
        std::vector<std::string> line = {h.hypothesis,          fmt_opt(h.statistic_name), fmt_opt(h.statistic),
                                         fmt6(h.log_s_star),    fmt6(h.ev),                fmt6(h.ev_bar),
                                         fmt6(h.mc_se),         fmt_opt(h.mc_se_batch),    fmt_opt(h.threshold),
                                         fmt_opt(h.bridge_m),   fmt_opt(h.bridge_h),       fmt_opt(h.rejected)};
        for (const std::string& k : keys) {
            const auto it = std::find_if(h.extras.begin(), h.extras.end(), [&](const auto& e) { return e.first == k; });
            line.push_back(it == h.extras.end() ? "" : fmt6(it->second));
        }
        out.push_back(std::move(line));
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

std::string render(const Report& report, OutputFormat format) {
    if (format == OutputFormat::Json) return render_json(json(report));
    const auto rows = table(report);
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        for (const auto& line : rows) {
            for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_field(line[i]);
            os << "\n";
        }
        return os.str();
    }
    os << "# " << to_string(report.config.engine) << " report (" << report.schema << ", v" << report.library_version << ")\n\n";
    os << "- series: ";
    for (std::size_t i = 0; i < report.series.size(); ++i) os << (i ? ", " : "") << report.series[i];
    os << "\n- effective T: " << report.effective_t << "\n- seed: " << report.config.seed.value_or(0)
       << ", stream: " << report.config.stream << "\n";
    if (report.config.engine == Engine::Coint) {
        os << "- dummy coding: " << coint::to_string(report.config.dummy_coding)
           << "\n- threshold policy: " << report.config.threshold_policy
           << "\n- dimension convention: " << fbst::to_string(report.config.dimension_convention) << "\n- eigenvalues:";
        for (double v : report.eigenvalues) os << " " << fmt6(v);
        os << "\n- selected rank: " << fmt_opt(report.selected_rank) << "\n";
    } else {
        os << "- variance shape: " << unitroot::to_string(report.config.variance_shape) << "\n";
    }
    if (report.wall_clock_seconds) os << "- wall clock: " << fmt6(*report.wall_clock_seconds) << " s\n";
    os << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        os << "|";
        for (const std::string& cell : rows[r]) os << " " << cell << " |";
        os << "\n";
        if (r == 0) {
            os << "|";
            for (std::size_t i = 0; i < rows[r].size(); ++i) os << "---|";
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace evcoint::io
