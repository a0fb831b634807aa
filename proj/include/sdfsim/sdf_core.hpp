#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sdfsim/dfs_estimator.hpp"
#include "sdfsim/scenario.hpp"

namespace sdfsim {

struct LocalEstimate {
    int uav_id = 0;
    double t = 0.0;
    Vec3 position_world;
    Vec3 position_local;   // (x~, y~, z~) in the pass-local frame
    double residual_hz = 0.0;  // RMS of predicted vs measured DFS
    int n_pairs_used = 0;
};

struct EstimateOptions {
    double f_dmax = 1.0;            // Hz, for the residual scale
    double min_abs_f = 0.02;        // low-information filter threshold
    // Second central moment (s^2) of the DFS estimator's window weighting.
    // Non-zero values compensate the bias of windowed estimates of a curved
    // Doppler trajectory; keep 0 for instantaneous (ideal) samples.
    double curvature_m2 = 0.0;
    // Prior world position used to break the y-sign tie: a single rectilinear
    // pass observes only |y~|, so both signs fit the Doppler curve equally.
    std::optional<Vec3> world_hint;
};

// A(t) = sqrt(1 - F^2) / F. Throws on F = 0 or |F| >= 1.
double a_of_f(double f_normalized);

struct PairwiseResult {
    double x_tilde = 0.0;
    double y_tilde_abs = 0.0;
};

// Closed-form two-sample position solve; returns nullopt for a degenerate
// pair (A1 == A2 within 1e-6) or infeasible geometry (R^2 < z~^2 beyond
// tolerance). Symmetric in its two samples.
std::optional<PairwiseResult> pairwise_estimate(double t1, double a1, double t2, double a2,
                                                double v, double z_tilde);

// Median-of-pairs inversion of a DFS history from one rectilinear pass.
// Sample times are world times; they are rebased to the frame's origin_time.
std::optional<LocalEstimate> estimate_from_window(std::span<const DopplerSample> samples,
                                                  const LocalFrame& frame, double z_tilde,
                                                  const EstimateOptions& options);

}  // namespace sdfsim
