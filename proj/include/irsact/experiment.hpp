#pragma once

#include "irsact/channel.hpp"
#include "irsact/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace irsact::experiment {

enum class Algorithm { dp, crbm, exhaustive, all_on };

std::string to_string(Algorithm a);

/// Link-budget and power constants shared by all experiments. Powers are
/// quoted in dBm/mW as in the usual link budgets and converted to watts
/// internally.
struct SystemParams {
    double power_dbm = 15.0;
    double noise_dbm = -95.0;
    double beta = 0.9;
    double eta = 0.8;
    double static_power_mw = 10.0;
    double off_power_mw = 0.3;
    double on_power_continuous_mw = 15.0;

    double gamma_bar() const;
    /// Per-element on-power: fixed in continuous mode, (1.8 b - 3) mW for
    /// b-bit discrete phase shifts.
    PowerModel power_model(PhaseMode mode) const;
};

enum class Axis { elements, power_dbm, nu, bits, tau };

std::string to_string(Axis a);

struct ExperimentConfig {
    Axis axis = Axis::elements;
    std::vector<double> values;
    std::size_t trials = 100;
    double tau = 0.0; // delta = tau * alpha_min
    double nu = 0.7;  // gamma_min = nu * gamma_worst(all-on; alpha_min)
    PhaseMode mode = PhaseMode::continuous();
    std::vector<Algorithm> algorithms{Algorithm::dp};
    std::uint64_t base_seed = 1;
    std::string output_path;
    unsigned threads = 1;
    bool measure_time = true; // false writes 0.0 so reruns are byte-identical
    std::size_t elements = 20;
    SystemParams system;
    ScenarioGeometry geometry = reference_geometry();

    void validate() const;
};

struct SweepRecord {
    double axis_value = 0.0;
    Algorithm algorithm = Algorithm::dp;
    double mean_ee = 0.0;
    double std_ee = 0.0;
    double mean_time_s = 0.0;
    double feasible_rate = 0.0;
    double mean_gap_bound = 0.0;
    std::size_t trials = 0;
    std::size_t errors = 0; // per-trial solver errors (not in the CSV)
};

/// Run the configured Monte-Carlo sweep. One record per (axis value,
/// algorithm); when output_path is set the records are also written as CSV.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg);

void write_csv(std::ostream& os, const ExperimentConfig& cfg,
               const std::vector<SweepRecord>& records);

struct SingleResult {
    Solution solution;
    std::string report;
};

/// Solve one seeded instance end to end and format a human-readable report.
SingleResult solve_single(const ExperimentConfig& cfg, std::uint64_t seed, Algorithm algo);

/// Parse a flat key-value config file ([section] headers, key = value lines,
/// '#' comments) into `cfg`. Unknown keys are errors.
void load_config_file(const std::string& path, ExperimentConfig& cfg);

Axis parse_axis(const std::string& s);
Algorithm parse_algorithm(const std::string& s);
std::vector<Algorithm> parse_algorithm_list(const std::string& csv);
std::vector<double> parse_value_list(const std::string& csv);

} // namespace irsact::experiment
