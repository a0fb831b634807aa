#pragma once

#include <optional>

#include "sdfsim/channel.hpp"

namespace sdfsim {

enum class EstimationMode { LosPeak, NlosCentroid };

const char* mode_name(EstimationMode m);

struct DopplerSample {
    double t = 0.0;            // centroid time of the windowed data
    double f_d_hat = 0.0;      // Hz
    double normalized_f = 0.0; // f_d_hat / f_dmax, clamped to (-1, 1)
    double power_dbm = 0.0;
    EstimationMode mode_used = EstimationMode::LosPeak;
};

// Fleet-relative condition detection: LOS-peak iff the node's power is
// within `los_threshold_db` of the strongest node.
EstimationMode select_mode(double power_dbm, double fleet_max_power_dbm,
                           double los_threshold_db);

// One DFS estimate per window. LosPeak: parabolically interpolated argmax of
// the Hann-windowed, 4x zero-padded PSD. NlosCentroid: power-weighted
// centroid of PSD bins above (median + 6 dB) within [-f_dmax, f_dmax].
// Returns nullopt when the centroid finds no bins above threshold (sample
// dropped). Throws on NaN input or windows shorter than 64 samples.
std::optional<DopplerSample> estimate_dfs(const ReceivedWindow& window, double f_dmax,
                                          EstimationMode mode);

// Second central moment (s^2) of the effective time weighting of the
// spectral estimate (Hann-squared over the sample grid). Consumed by the
// solver to compensate the finite-window curvature bias of sliding DFS
// measurements.
double window_time_second_moment(std::size_t n_samples, double sample_rate);

// Offset from the first sample to the centroid of the windowed data.
double window_time_offset(std::size_t n_samples, double sample_rate);

}  // namespace sdfsim
