#include "evcoint/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using evcoint::io::RunConfig;
using nlohmann::json;

int exit_code(evcoint::ErrorClass cls) {
    switch (cls) {
        case evcoint::ErrorClass::Input: return 2;
        case evcoint::ErrorClass::Numeric: return 3;
        case evcoint::ErrorClass::Config: return 4;
    }
    return 1;
}

struct Flags {
    std::string input;
    std::vector<std::string> columns;
    std::vector<std::size_t> column_indices;
    std::string transform = "none";
    std::string delimiter = ",";
    bool index_column = false;
    int p = 1;
    bool trend = false;
    bool no_constant = false;
    int dummies = 0;
    int dummy_period = 4;
    std::string dummy_coding = "indicator";
    int start_period_index = 0;
    std::size_t n_draws = evcoint::fbst::kDefaultDraws;
    std::size_t burn_in = evcoint::fbst::kDefaultBurnIn;
    std::optional<std::uint64_t> seed;
    std::uint64_t stream = 0;
    std::string variance_shape = "exact";
    std::string threshold_policy = "bridge:p=0.01";
    std::string dimension_convention = "paper-literal";
    std::string format = "json";
    std::string output;
    bool timing = false;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("-i,--input", f.input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
    auto* names = app->add_option("--columns", f.columns, "Columns by header name")->delimiter(',');
    app->add_option("--column-indices", f.column_indices, "Columns by 0-based position")->delimiter(',')->excludes(names);
    app->add_option("--transform", f.transform, "none or log")->check(CLI::IsMember({"none", "log"}));
    app->add_option("--delimiter", f.delimiter, "',', ';' or tab")->check(CLI::IsMember({",", ";", "tab"}));
    app->add_flag("--index-column", f.index_column, "Ignore the first column of every line");
    app->add_option("-p,--p", f.p, "Lag order");
    app->add_flag("--no-constant", f.no_constant, "Drop the intercept / constant");
    app->add_option("--n-draws", f.n_draws, "Total Gibbs draws including burn-in");
    app->add_option("--burn-in", f.burn_in, "Discarded initial draws");
    app->add_option("--seed", f.seed, std::string("Master seed (default: $") + evcoint::io::kSeedEnvVar + ")");
    app->add_option("--stream", f.stream, "Base stream id");
    app->add_option("--format", f.format, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
    app->add_option("-o,--output", f.output, "Also write the report to this file");
    app->add_flag("--timing", f.timing, "Include wall-clock time in the report");
}

RunConfig to_config(const Flags& f, evcoint::io::Engine engine) {
    RunConfig c;
    c.input_path = f.input;
    for (const auto& n : f.columns) c.columns.emplace_back(n);
    for (auto i : f.column_indices) c.columns.emplace_back(i);
    c.transform = evcoint::io::parse_transform(f.transform);
    c.csv.delimiter = f.delimiter == "tab" ? '\t' : f.delimiter[0];
    c.csv.index_column = f.index_column;
    c.engine = engine;
    c.p = f.p;
    c.trend = f.trend;
    c.constant = !f.no_constant;
    c.dummies = f.dummies;
    c.dummy_period = f.dummy_period;
    c.dummy_coding = evcoint::coint::parse_dummy_coding(f.dummy_coding);
    c.start_period_index = f.start_period_index;
    c.n_draws = f.n_draws;
    c.burn_in = f.burn_in;
    c.seed = f.seed;
    c.stream = f.stream;
    c.variance_shape = evcoint::unitroot::parse_variance_shape(f.variance_shape);
    c.threshold_policy = f.threshold_policy;
    c.dimension_convention = evcoint::fbst::parse_dimension_convention(f.dimension_convention);
    c.output_format = evcoint::io::parse_output_format(f.format);
    if (!f.output.empty()) c.output_path = f.output;
    c.timing = f.timing;
    return c;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
    std::cout << text;
    if (path) {
        std::ofstream out(*path, std::ios::binary);
        if (!out) throw evcoint::Error(evcoint::ErrorClass::Input, "cannot write output file '" + *path + "'");
        out << text;
    }
}

void run_single(const RunConfig& c) {
    const evcoint::io::Report rep = evcoint::io::run(c);
    emit(evcoint::io::render(rep, c.output_format), c.output_path);
}

void run_config_file(const std::string& path, bool timing) {
    std::ifstream in(path);
    if (!in) throw evcoint::Error(evcoint::ErrorClass::Input, "cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw evcoint::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    auto load = [&](const json& j) {
        RunConfig c;
        from_json(j, c);
        c.timing = c.timing || timing;
        return c;
    };
    if (doc.is_object()) {
        run_single(load(doc));
        return;
    }
    if (!doc.is_array()) throw evcoint::ConfigError("config file must hold an object or an array of objects");
    // Batch: JSON output becomes one array; other formats are concatenated.
    std::vector<RunConfig> configs;
    for (const json& j : doc) configs.push_back(load(j));
    json all = json::array();
    std::string text;
    for (const RunConfig& c : configs) {
        const evcoint::io::Report rep = evcoint::io::run(c);
        if (c.output_path) {
            std::ofstream out(*c.output_path, std::ios::binary);
            out << evcoint::io::render(rep, c.output_format);
        }
        if (c.output_format == evcoint::io::OutputFormat::Json) all.push_back(json(rep));
        else text += evcoint::io::render(rep, c.output_format) + "\n";
    }
    if (!all.empty()) std::cout << evcoint::io::render_json(all);
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian e-value tests for unit roots and cointegration rank"};
    app.set_version_flag("--version", evcoint::io::kLibraryVersion);
    app.require_subcommand(1);

    Flags ur;
    auto* unitroot = app.add_subcommand("unitroot", "Test a unit root in one series (Gamma0 = 0)");
    add_common(unitroot, ur);
    unitroot->add_flag("--trend", ur.trend, "Include a linear trend");
    unitroot->add_option("--variance-shape", ur.variance_shape, "exact or literal")
        ->check(CLI::IsMember({"exact", "literal"}));

    Flags co;
    auto* coint = app.add_subcommand("coint", "Select the cointegration rank of a VECM");
    add_common(coint, co);
    coint->add_option("--dummies", co.dummies, "Number of seasonal dummies");
    coint->add_option("--dummy-period", co.dummy_period, "Seasonal period");
    coint->add_option("--dummy-coding", co.dummy_coding, "indicator or centered")
        ->check(CLI::IsMember({"indicator", "centered"}));
    coint->add_option("--start-period-index", co.start_period_index, "Season of the first observation (0-based)");
    coint->add_option("--threshold-policy", co.threshold_policy, "fixed:<ev> or bridge:p=<p>");
    coint->add_option("--dimension-convention", co.dimension_convention, "paper-literal or manifold")
        ->check(CLI::IsMember({"paper-literal", "manifold"}));

    std::string config_path;
    bool config_timing = false;
    auto* run = app.add_subcommand("run", "Run one config object or a batch array from a JSON file");
    run->add_option("-c,--config", config_path, "JSON config file")->required();
    run->add_flag("--timing", config_timing, "Include wall-clock time in every report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (unitroot->parsed()) run_single(to_config(ur, evcoint::io::Engine::UnitRoot));
        else if (coint->parsed()) run_single(to_config(co, evcoint::io::Engine::Coint));
        else run_config_file(config_path, config_timing);
    } catch (const evcoint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
