#include "irsact/experiment.hpp"
#include "irsact/types.hpp"
#include "irsact/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

// exit codes: 0 success, 1 config error, 2 verification failure, 3 solver error
constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_verify = 2;
constexpr int exit_solver = 3;

struct CommonOpts {
    std::string config_path;
    std::string mode = "c";
    int bits = 4;
    double tau = -1.0, nu = -1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t elements = 0;
};

void apply_common(irsact::experiment::ExperimentConfig& cfg, const CommonOpts& o) {
    if (!o.config_path.empty())
        irsact::experiment::load_config_file(o.config_path, cfg);
    if (o.mode == "d")
        cfg.mode = irsact::PhaseMode::discrete(o.bits);
    else if (o.mode == "c")
        cfg.mode = irsact::PhaseMode::continuous();
    else
        throw std::invalid_argument("mode must be c or d");
    if (o.tau >= 0.0)
        cfg.tau = o.tau;
    if (o.nu >= 0.0)
        cfg.nu = o.nu;
    if (o.seed_set)
        cfg.base_seed = o.seed;
    if (o.elements > 0)
        cfg.elements = o.elements;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust IRS-element activation for worst-case energy efficiency"};
    app.require_subcommand(1);

    irsact::experiment::ExperimentConfig cfg;
    CommonOpts common;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "config file (key = value sections)");
        sub->add_option("--mode", common.mode, "phase-shift mode: c or d");
        sub->add_option("--bits", common.bits, "quantization bits for discrete mode");
        sub->add_option("--tau", common.tau, "delta = tau * alpha_min, in [0,1]");
        sub->add_option("--nu", common.nu, "gamma_min control in [0,1]");
        sub->add_option("--seed", common.seed, "base seed")->each([&](const std::string&) {
            common.seed_set = true;
        });
        sub->add_option("--L", common.elements, "number of IRS elements");
    };

    // sweep
    auto* sweep = app.add_subcommand("sweep", "seeded Monte-Carlo sweep with CSV output");
    add_common(sweep);
    std::string axis_str = "L", values_str, algos_str;
    sweep->add_option("--axis", axis_str, "sweep axis: L|power|nu|b|tau");
    sweep->add_option("--values", values_str, "comma-separated axis values");
    sweep->add_option("--trials", cfg.trials, "independent realizations per point");
    sweep->add_option("--algos", algos_str, "algorithms: dp,crbm,exhaustive,all_on");
    sweep->add_option("--out", cfg.output_path, "CSV output path");
    sweep->add_option("--threads", cfg.threads, "parallel trial workers");
    bool no_timing = false;
    sweep->add_flag("--no-timing", no_timing, "write 0 for wall times (reproducible CSV)");

    // solve
    auto* solve = app.add_subcommand("solve", "solve one seeded instance and print a report");
    add_common(solve);
    std::string solve_algo = "dp";
    solve->add_option("--algo", solve_algo, "dp|crbm|exhaustive|all_on");

    // verify
    auto* verify = app.add_subcommand("verify", "run the oracle cross-check suites");
    add_common(verify);
    std::string suite = "all";
    std::size_t intensity = 200;
    verify->add_option("--suite", suite, "quantizer|worstcase|dp|crbm|all");
    verify->add_option("--intensity", intensity, "instance count per suite");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_common(cfg, common);

        if (sweep->parsed()) {
            cfg.axis = irsact::experiment::parse_axis(axis_str);
            if (!values_str.empty())
                cfg.values = irsact::experiment::parse_value_list(values_str);
            if (!algos_str.empty())
                cfg.algorithms = irsact::experiment::parse_algorithm_list(algos_str);
            if (no_timing)
                cfg.measure_time = false;
            const auto records = irsact::experiment::run_sweep(cfg);
            irsact::experiment::write_csv(std::cout, cfg, records);
            std::size_t errors = 0;
            for (const auto& r : records)
                errors += r.errors;
            if (errors > 0) {
                std::cerr << errors << " trial(s) failed\n";
                return exit_solver;
            }
            return exit_ok;
        }

        if (solve->parsed()) {
            const auto algo = irsact::experiment::parse_algorithm(solve_algo);
            const auto result = irsact::experiment::solve_single(cfg, cfg.base_seed, algo);
            std::cout << result.report;
            return exit_ok;
        }

        if (verify->parsed()) {
            std::vector<irsact::verify::SuiteReport> reports;
            if (suite == "all") {
                reports = irsact::verify::check_all(cfg.base_seed, intensity);
            } else if (suite == "quantizer") {
                reports.push_back(irsact::verify::check_quantizer(cfg.base_seed, intensity));
            } else if (suite == "worstcase") {
                reports.push_back(irsact::verify::check_worstcase(cfg.base_seed, intensity));
            } else if (suite == "dp") {
                reports.push_back(irsact::verify::check_dp(cfg.base_seed, intensity));
            } else if (suite == "crbm") {
                reports.push_back(irsact::verify::check_crbm(cfg.base_seed, intensity));
            } else {
                throw std::invalid_argument("unknown suite: " + suite);
            }
            bool ok = true;
            for (const auto& rep : reports) {
                std::cout << (rep.passed() ? "[PASS] " : "[FAIL] ") << rep.suite << ": "
                          << rep.checks << " checks, " << rep.failures << " failures\n";
                for (const auto& msg : rep.messages)
                    std::cout << "       " << msg << "\n";
                ok = ok && rep.passed();
            }
            return ok ? exit_ok : exit_verify;
        }
    } catch (const irsact::solver_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return exit_solver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_solver;
    }
    return exit_ok;
}
