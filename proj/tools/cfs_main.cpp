// Command-line front end: coefficient tables, composition products,
// network simulation, order verification, and the self-test suite.
#include "cfs/composition.hpp"
#include "cfs/network.hpp"
#include "cfs/representation.hpp"
#include "cfs/selftest.hpp"
#include "cfs/simulate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "0.1.0";

struct JobConfig {
    std::string input_path;
    int degree = -1;  // -1: take the document's degree
    std::string format = "text";
    std::vector<int> outputs;
    double horizon = 0.5;
    std::vector<double> v;
    int steps = 1000;
    std::vector<int> degrees;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cfs::validation_error("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

nlohmann::json parse_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw cfs::validation_error(path + ": invalid JSON: " + e.what());
    }
}

std::optional<int> degree_override(const JobConfig& config) {
    return config.degree >= 0 ? std::optional<int>(config.degree) : std::nullopt;
}

void print_version_comment() { std::printf("# cfs %s\n", kVersion); }

std::string csv_quote(const std::string& text) { return '"' + text + '"'; }

/// Shared renderer for coefficient tables (coeffs and compose commands).
/// Text omits zero rows; csv and json enumerate every word up to the
/// degree so downstream tools see a complete grid.
void emit_coefficient_tables(const std::string& command,
                             const std::vector<cfs::Series<cfs::Rational>>& tables,
                             const std::vector<int>& labels, int degree,
                             const cfs::Alphabet& alphabet, const std::string& format) {
    if (format == "text") {
        print_version_comment();
        for (std::size_t i = 0; i < tables.size(); ++i) {
            std::printf("output %d (degree <= %d)\n", labels[i], degree);
            std::size_t width = 1;
            for (const auto& [w, coeff] : tables[i].terms())
                width = std::max(width, cfs::display_word(w).size());
            for (const auto& [w, coeff] : tables[i].terms())
                std::printf("  %-*s  %s\n", static_cast<int>(width),
                            cfs::display_word(w).c_str(), cfs::to_string(coeff).c_str());
            if (tables[i].is_zero()) std::printf("  (all coefficients zero)\n");
        }
        return;
    }
    const std::vector<cfs::Word> words = cfs::enumerate_words(alphabet, degree);
    if (format == "csv") {
        print_version_comment();
        std::printf("output,word,coeff\n");
        for (std::size_t i = 0; i < tables.size(); ++i)
            for (const cfs::Word& w : words)
                std::printf("%d,%s,%s\n", labels[i], csv_quote(cfs::format_word(w)).c_str(),
                            cfs::to_string(tables[i].coefficient(w)).c_str());
        return;
    }
    if (format == "json") {
        nlohmann::json doc;
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["degree"] = degree;
        doc["outputs"] = nlohmann::json::array();
        for (std::size_t i = 0; i < tables.size(); ++i) {
            nlohmann::json entry;
            entry["k"] = labels[i];
            nlohmann::json terms = nlohmann::json::array();
            for (const cfs::Word& w : words) {
                nlohmann::json term;
                term["word"] = cfs::format_word(w);
                term["coeff"] = cfs::to_string(tables[i].coefficient(w));
                terms.push_back(std::move(term));
            }
            entry["series"]["terms"] = std::move(terms);
            doc["outputs"].push_back(std::move(entry));
        }
        std::printf("%s\n", doc.dump(2).c_str());
        return;
    }
    throw cfs::validation_error("unknown output format '" + format + "'");
}

int run_coeffs(const JobConfig& config) {
    const cfs::NetworkSpec spec =
        cfs::parse_network_spec(parse_json_file(config.input_path), degree_override(config));
    const cfs::FormalRepresentation rep = cfs::build(spec);
    std::vector<int> selected = config.outputs;
    if (selected.empty())
        for (int k = 1; k <= cfs::output_count(spec); ++k) selected.push_back(k);
    std::vector<cfs::Series<cfs::Rational>> tables;
    for (int k : selected) {
        if (k < 1 || k > cfs::output_count(spec))
            throw cfs::validation_error("output index " + std::to_string(k) +
                                        " out of range (network has " +
                                        std::to_string(cfs::output_count(spec)) + ")");
        tables.push_back(cfs::generating_series(rep, k, spec.degree));
    }
    emit_coefficient_tables("coeffs", tables, selected, spec.degree, spec.alphabet(),
                            config.format);
    return 0;
}

/// Composition input document:
///   { "degree": int, "m": optional inner-alphabet size (default 1),
///     "outer": <series object>, "inner": [ <series object>, ... ] }
/// The outer series reads over its own alphabet with one input channel per
/// inner series.
int run_compose(const JobConfig& config) {
    const nlohmann::json doc = parse_json_file(config.input_path);
    const std::string root = "$";
    int degree = cfs::detail::int_member(doc, root, "degree");
    if (config.degree >= 0) degree = config.degree;
    if (degree < 0) throw cfs::validation_error("$.degree: must be nonnegative");
    int inner_m = 1;
    if (doc.contains("m")) {
        if (!doc["m"].is_number_integer())
            throw cfs::validation_error("$.m: expected an integer");
        inner_m = doc["m"].get<int>();
    }
    const nlohmann::json& inner_doc = cfs::detail::member(doc, root, "inner");
    if (!inner_doc.is_array() || inner_doc.empty())
        throw cfs::validation_error("$.inner: expected a nonempty array of series");
    const cfs::Alphabet inner_alphabet(inner_m);
    std::vector<cfs::Series<cfs::Rational>> inner;
    for (std::size_t i = 0; i < inner_doc.size(); ++i)
        inner.push_back(cfs::detail::parse_series(
            inner_doc[i], "$.inner[" + std::to_string(i) + "]", inner_alphabet, degree));
    const cfs::Alphabet outer_alphabet(static_cast<int>(inner.size()));
    const cfs::Series<cfs::Rational> outer = cfs::detail::parse_series(
        cfs::detail::member(doc, root, "outer"), "$.outer", outer_alphabet, degree);

    const cfs::Series<cfs::Rational> result = cfs::compose(outer, inner, degree);
    emit_coefficient_tables("compose", {result}, {1}, degree, inner_alphabet, config.format);
    return 0;
}

int run_simulate(const JobConfig& config) {
    const cfs::NetworkSpec spec =
        cfs::parse_network_spec(parse_json_file(config.input_path), degree_override(config));
    cfs::ConstantInput input{config.v, config.horizon, config.steps};
    const cfs::SimResult result =
        cfs::simulate_network(spec, input, std::max(spec.degree, 1), config.steps);
    print_version_comment();
    std::printf("t");
    for (std::size_t j = 0; j < result.outputs.size(); ++j)
        std::printf(",y%zu", j + 1);
    std::printf("\n");
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        std::printf("%.12e", result.times[i]);
        for (std::size_t j = 0; j < result.outputs.size(); ++j)
            std::printf(",%.12e", result.outputs[j][i]);
        std::printf("\n");
    }
    return 0;
}

int run_verify(const JobConfig& config) {
    const cfs::NetworkSpec spec =
        cfs::parse_network_spec(parse_json_file(config.input_path), degree_override(config));
    cfs::ConstantInput input{config.v, config.horizon, config.steps};
    const std::vector<cfs::OrderCheckRow> rows = cfs::verify_order(spec, input, config.degrees);
    print_version_comment();
    std::printf("N,error\n");
    for (const cfs::OrderCheckRow& row : rows)
        std::printf("%d,%.12e\n", row.degree, row.max_error);
    return 0;
}

int run_selftest() {
    const std::vector<cfs::selftest::CheckResult> results =
        cfs::selftest::run_acceptance_checks();
    bool all_passed = true;
    int index = 1;
    for (const cfs::selftest::CheckResult& r : results) {
        std::printf("[%s] criterion %d: %s%s%s\n", r.passed ? "PASS" : "FAIL", index,
                    r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
        all_passed = all_passed && r.passed;
        ++index;
    }
    if (!all_passed) {
        std::fprintf(stderr, "selftest: failures present\n");
        return 2;
    }
    std::printf("selftest: all checks passed\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact generating series for interconnected Chen-Fliess systems"};
    app.require_subcommand(1);
    JobConfig config;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", config.input_path, "network/composition document (JSON)")
            ->required();
        cmd->add_option("--degree", config.degree, "override the document's degree");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--output", config.format, "table format")
            ->check(CLI::IsMember({"text", "csv", "json"}));
    };
    auto add_sim_inputs = [&](CLI::App* cmd) {
        cmd->add_option("--T", config.horizon, "time horizon")->check(CLI::PositiveNumber);
        cmd->add_option("--v", config.v, "constant external inputs v1,v2,...")
            ->delimiter(',');
        cmd->add_option("--steps", config.steps, "integrator step count")
            ->check(CLI::Range(1, 100000000));
    };

    CLI::App* coeffs = app.add_subcommand("coeffs", "generating-series coefficient table");
    add_input(coeffs);
    add_format(coeffs);
    coeffs->add_option("--outputs", config.outputs, "output indices k1,k2,...")->delimiter(',');

    CLI::App* compose_cmd = app.add_subcommand("compose", "composition-product table");
    add_input(compose_cmd);
    add_format(compose_cmd);

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the truncated network (CSV)");
    add_input(simulate);
    add_sim_inputs(simulate);

    CLI::App* verify = app.add_subcommand("verify", "order-of-accuracy error table (CSV)");
    add_input(verify);
    add_sim_inputs(verify);
    verify->add_option("--Ns", config.degrees, "series degrees N1,N2,...")
        ->delimiter(',')
        ->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (coeffs->parsed()) return run_coeffs(config);
        if (compose_cmd->parsed()) return run_compose(config);
        if (simulate->parsed()) return run_simulate(config);
        if (verify->parsed()) return run_verify(config);
        if (selftest->parsed()) return run_selftest();
    } catch (const cfs::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 0;
}
