#include "sdfsim/sdf_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdfsim {

namespace {

constexpr double kDegeneratePairTolerance = 1e-6;  // in A-units
constexpr double kClamp = 1.0 - 1e-3;

double median(std::vector<double>& v) {
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

struct TimedF {
    double t;  // pass-local time
    double f;  // normalized DFS
};

double doppler_residual_rms(const std::vector<TimedF>& samples, double x, double y, double z,
                            double v, double f_dmax) {
    double acc = 0.0;
    for (const auto& s : samples) {
        double dx = x - v * s.t;
        double r = std::sqrt(dx * dx + y * y + z * z);
        double f_pred = r > 0.0 ? dx / r : 0.0;
        double d = (f_pred - s.f) * f_dmax;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

}  // namespace

double a_of_f(double f) {
    if (f == 0.0) throw std::domain_error("a_of_f: F = 0 (A diverges)");
    if (std::abs(f) >= 1.0) throw std::domain_error("a_of_f: |F| >= 1 outside the domain");
    return std::sqrt(1.0 - f * f) / f;
}

std::optional<PairwiseResult> pairwise_estimate(double t1, double a1, double t2, double a2,
                                                double v, double z_tilde) {
    double da = a1 - a2;
    if (std::abs(da) < kDegeneratePairTolerance) return std::nullopt;
    double x = v * (t1 * a1 - t2 * a2) / da;
    double r = v * (t1 - t2) * a1 * a2 / da;
    double y_sq = r * r - z_tilde * z_tilde;
    if (y_sq < -(0.01 * r) * (0.01 * r)) return std::nullopt;  // infeasible geometry
    PairwiseResult out;
    out.x_tilde = x;
    out.y_tilde_abs = std::sqrt(std::max(y_sq, 0.0));
    return out;
}

std::optional<LocalEstimate> estimate_from_window(std::span<const DopplerSample> samples,
                                                  const LocalFrame& frame, double z_tilde,
                                                  const EstimateOptions& options) {
    std::vector<TimedF> series;
    series.reserve(samples.size());
    for (const auto& s : samples)
        series.push_back({s.t - frame.origin_time, s.normalized_f});

    // Windowed spectral estimates of a curved Doppler trajectory measure the
    // weighted mean of f over the window, f(tc) + m2/2 * f''(tc). Remove the
    // bias with the second difference of the measured series itself.
    if (options.curvature_m2 > 0.0 && series.size() >= 3) {
        std::vector<double> d2(series.size(), 0.0);
        for (std::size_t i = 1; i + 1 < series.size(); ++i) {
            double dt1 = series[i].t - series[i - 1].t;
            double dt2 = series[i + 1].t - series[i].t;
            if (dt1 <= 0.0 || dt2 <= 0.0) continue;
            d2[i] = 2.0 *
                    ((series[i + 1].f - series[i].f) / dt2 - (series[i].f - series[i - 1].f) / dt1) /
                    (dt1 + dt2);
        }
        d2.front() = d2[1];
        d2.back() = d2[d2.size() - 2];
        for (std::size_t i = 0; i < series.size(); ++i) {
            series[i].f = std::clamp(series[i].f - 0.5 * options.curvature_m2 * d2[i], -kClamp,
                                     kClamp);
        }
    }

    std::vector<TimedF> usable;
    for (const auto& s : series)
        if (std::abs(s.f) >= options.min_abs_f) usable.push_back(s);
    if (usable.size() < 2) return std::nullopt;

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < usable.size(); ++i) {
        double ai = a_of_f(usable[i].f);
        for (std::size_t j = i + 1; j < usable.size(); ++j) {
            double aj = a_of_f(usable[j].f);
            auto pr = pairwise_estimate(usable[i].t, ai, usable[j].t, aj, frame.speed_v, z_tilde);
            if (!pr) continue;
            xs.push_back(pr->x_tilde);
            ys.push_back(pr->y_tilde_abs);
        }
    }
    if (xs.empty()) return std::nullopt;

    double x = median(xs);
    double y_abs = median(ys);

    // y-sign ambiguity: compare the Doppler residual of both candidates; on a
    // tie (the curve depends only on y^2, so a single pass always ties up to
    // rounding) fall back to the caller's prior, then to non-negative y.
    double res_pos = doppler_residual_rms(usable, x, +y_abs, z_tilde, frame.speed_v, options.f_dmax);
    double res_neg = doppler_residual_rms(usable, x, -y_abs, z_tilde, frame.speed_v, options.f_dmax);
    double y;
    double residual;
    double tie_tol = 1e-9 * std::max(1.0, std::max(res_pos, res_neg));
    if (std::abs(res_pos - res_neg) > tie_tol) {
        y = res_pos <= res_neg ? y_abs : -y_abs;
        residual = std::min(res_pos, res_neg);
    } else {
        residual = res_pos;
        y = y_abs;
        if (options.world_hint) {
            Vec3 cand_pos = frame.to_world({x, +y_abs, z_tilde});
            Vec3 cand_neg = frame.to_world({x, -y_abs, z_tilde});
            if ((cand_neg - *options.world_hint).norm() < (cand_pos - *options.world_hint).norm())
                y = -y_abs;
        }
    }

    LocalEstimate est;
    est.t = series.back().t + frame.origin_time;
    est.position_local = {x, y, z_tilde};
    est.position_world = frame.to_world(est.position_local);
    est.residual_hz = residual;
    est.n_pairs_used = static_cast<int>(xs.size());
    return est;
}

}  // namespace sdfsim
