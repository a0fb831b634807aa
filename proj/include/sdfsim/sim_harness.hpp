#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdfsim/fusion.hpp"

namespace sdfsim {

struct UavStepRecord {
    double t = 0.0;  // window start
    int uav_id = 0;
    Condition condition_true = Condition::Los;
    ClassifiedCondition condition_classified = ClassifiedCondition::Nlos;
    EstimationMode mode = EstimationMode::LosPeak;
    double power_dbm = 0.0;
    double f_d_true_hz = 0.0;                 // at the sample's centroid time
    std::optional<double> f_d_hat_hz;         // absent when the sample was dropped
    std::optional<double> error_m;            // absent until the first estimate
};

struct FusedStepRecord {
    double t = 0.0;
    FusionRule rule = FusionRule::Arithmetic;
    Vec3 position_world;
    double error_m = 0.0;
    int n_contributors = 0;
};

struct UavSummary {
    int uav_id = 0;
    double route_avg_error_m = 0.0;
    double rms_error_m = 0.0;
};

struct SimResult {
    std::uint64_t seed = 0;
    std::vector<double> time_axis;                      // window start times
    std::vector<std::vector<UavStepRecord>> per_uav;    // [uav][step]
    std::vector<FusedStepRecord> fused_arithmetic;
    std::vector<FusedStepRecord> fused_weighted;
    std::vector<UavSummary> uav_summaries;
    double route_avg_arithmetic_m = 0.0;
    double route_avg_weighted_m = 0.0;
    // Per timestep, the min/max per-UAV error among UAVs holding an estimate.
    std::vector<double> envelope_min_m;
    std::vector<double> envelope_max_m;
};

struct SeedSummary {
    std::uint64_t seed = 0;
    double arithmetic_avg_m = 0.0;
    double weighted_avg_m = 0.0;
    double improvement_ratio = 0.0;  // arithmetic / weighted
    std::vector<UavSummary> uav_summaries;
};

struct SweepResult {
    std::vector<SeedSummary> runs;
    double mean_arithmetic_m = 0.0, std_arithmetic_m = 0.0;
    double mean_weighted_m = 0.0, std_weighted_m = 0.0;
    double mean_ratio = 0.0, std_ratio = 0.0, median_ratio = 0.0;
};

// sqrt(mean of squared errors); rejects empty or non-finite input.
double rms_error(const std::vector<double>& errors_m);

// Runs the full time-stepped simulation with the given seed (overriding the
// scenario's). threads < 0 reads SDF_SIM_THREADS (0 or unset = auto); window
// synthesis is parallelized, estimation and fusion stay serial per timestep.
// Output is identical for any thread count.
SimResult run_simulation(const Scenario& scenario, std::uint64_t seed, int threads = -1);

SweepResult run_sweep(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                      int threads = -1);

}  // namespace sdfsim
