#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cam/common.hpp"
#include "cam/netsim.hpp"

namespace cam {

struct TrialStats {
    int n_trials = 0;
    int n_decided = 0;         // trials that produced a verdict
    int n_insufficient = 0;    // records with too few usable frames (reported, not errors)
    int n_correct_method = 0;  // right access method and right contention flag
    int n_correct_label = 0;   // exact class label (diagnostic)
    int n_flagged = 0;
    double p_correct = 0.0;  // method-level, over decided trials
    double ci_low = 0.0;
    double ci_high = 1.0;
};

// access method implied by a class label (M1..M15)
access_t label_method(const std::string& label);

TrialStats run_trials(const ScenarioConfig& cfg, int n_trials, std::uint64_t master_seed,
                      int workers = 1);

struct SweepGrid {
    std::vector<access_t> methods;
    std::vector<std::string> modulations;
    std::vector<double> snr_db;
    std::vector<double> loads;
    std::vector<int> frames;
};

// cartesian sweep; writes one CSV row per grid point
void sweep(const ScenarioConfig& base, const SweepGrid& grid, int n_trials,
           std::uint64_t master_seed, int workers, std::ostream& out);

struct HarnessConfig {
    ScenarioConfig scenario;
    SweepGrid grid;
    int trials = 100;
    std::uint64_t seed = 1;
    int workers = 1;
};

HarnessConfig parse_harness_config(const std::string& json_text);
HarnessConfig load_harness_config(const std::string& path);

// classifies a capture file and prints a JSON verdict; returns a process exit
// code (0 ok, 2 insufficient data, 1 i/o or config problems)
int classify_capture(const std::string& path, std::ostream& out);

}  // namespace cam
