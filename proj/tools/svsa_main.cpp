#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "svsa/acceptance.hpp"
#include "svsa/experiments.hpp"

namespace {

int run_one(const std::string& config_path) {
    const svsa::ExperimentConfig config = svsa::ExperimentConfig::from_toml_file(config_path);
    const svsa::SummaryRecord summary = svsa::run_experiment(config);
    std::cout << summary.to_json().dump(2) << "\n";
    return summary.all_checks_pass() ? 0 : 1;
}

int run_verify() {
    const auto rows = svsa::run_acceptance();
    svsa::print_acceptance(rows, std::cout);
    return svsa::all_pass(rows) ? 0 : 1;
}

bool parse_seed_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
    const auto sep = text.find("..");
    try {
        if (sep == std::string::npos) {
            lo = hi = std::stoull(text);
            return true;
        }
        lo = std::stoull(text.substr(0, sep));
        hi = std::stoull(text.substr(sep + 2));
        return hi >= lo;
    } catch (const std::exception&) {
        return false;
    }
}

int run_sweep_cmd(const std::string& config_path, const std::string& seeds, unsigned jobs) {
    std::uint64_t lo = 0, hi = 0;
    if (!parse_seed_range(seeds, lo, hi))
        throw svsa::ConfigError("cannot parse seed range '" + seeds + "' (expected a..b)");
    svsa::ExperimentConfig config = svsa::ExperimentConfig::from_toml_file(config_path);
    const auto summaries = svsa::run_sweep(config, lo, hi, jobs);
    bool ok = true;
    for (const auto& s : summaries) {
        ok = ok && s.all_checks_pass();
        std::cout << "seed " << s.seed << ": " << (s.all_checks_pass() ? "pass" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

int run_list() {
    for (const auto& info : svsa::experiment_registry())
        std::printf("%-16s %s%s\n", info.id.c_str(), info.description.c_str(),
                    info.stochastic ? " (seed required)" : "");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"svsa: stochastic approximation with set-valued mean-fields"};
    app.require_subcommand(1);

    std::string config_path;
    std::string seeds;
    unsigned jobs = 1;

    auto* run = app.add_subcommand("run", "run one experiment from a TOML config");
    run->add_option("config", config_path, "path to config.toml")->required();

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria table");

    auto* sweep = app.add_subcommand("sweep", "run one config across a seed range");
    sweep->add_option("config", config_path, "path to config.toml")->required();
    sweep->add_option("--seeds", seeds, "seed range a..b")->required();
    sweep->add_option("--jobs", jobs, "parallel workers");

    auto* list = app.add_subcommand("list", "list experiment ids");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_one(config_path);
        if (verify->parsed()) return run_verify();
        if (sweep->parsed()) return run_sweep_cmd(config_path, seeds, jobs);
        if (list->parsed()) return run_list();
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const svsa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
