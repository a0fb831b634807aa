#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sdfsim/scenario.hpp"

namespace sdfsim {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Power value reported for an all-zero window.
constexpr double kSilentPowerDbm = -std::numeric_limits<double>::infinity();

struct ReceivedWindow {
    int uav_id = 0;
    double t_start = 0.0;
    double sample_rate = 0.0;
    std::vector<std::complex<double>> samples;
    Condition true_condition = Condition::Los;
    double received_power_dbm = 0.0;
};

// Instantaneous Doppler shift of the direct path for an emitter at
// `emitter_local` (coordinates in the pass-local frame, UAV at the origin at
// t = 0 moving along +x at v).
double true_dfs(const Vec3& emitter_local, double v, double f0_hz, double t);

// Mean-square sample power in dBm (0 dBm == unit mean-square amplitude).
double received_power_dbm(const std::vector<std::complex<double>>& samples);

// Synthesizes the complex baseband window received by `uav` starting at
// world time t_start, under the scripted propagation condition.
// Deterministic for fixed (scenario.seed, uav id, window index).
ReceivedWindow synthesize_window(const Scenario& scenario, const UavConfig& uav,
                                 std::uint64_t window_index);

}  // namespace sdfsim
