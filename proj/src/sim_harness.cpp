#include "sdfsim/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <thread>

#include "sdfsim/channel.hpp"
#include "sdfsim/sdf_core.hpp"

namespace sdfsim {

namespace {

int resolve_thread_count(int threads) {
    if (threads < 0) {
        const char* env = std::getenv("SDF_SIM_THREADS");
        threads = env ? std::atoi(env) : 0;
    }
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(threads, 1);
}

double horizontal_error(const Vec3& estimate, const Vec3& truth) {
    return (estimate - truth).horizontal_norm();
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v, double m) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + mid));
}

}  // namespace

double rms_error(const std::vector<double>& errors_m) {
    if (errors_m.empty()) throw std::invalid_argument("rms_error: empty series");
    double acc = 0.0;
    for (double e : errors_m) {
        if (!std::isfinite(e)) throw std::invalid_argument("rms_error: non-finite value");
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(errors_m.size()));
}

SimResult run_simulation(const Scenario& scenario_in, std::uint64_t seed, int threads) {
    Scenario scenario = scenario_in;
    scenario.seed = seed;
    scenario.validate();

    const double tw = scenario.window_duration;
    const std::size_t n_uavs = scenario.uavs.size();

    double begin = 0.0, end = std::numeric_limits<double>::infinity();
    for (const auto& u : scenario.uavs) {
        begin = std::max(begin, u.span_begin());
        end = std::min(end, u.span_end());
    }
    const auto k_first = static_cast<std::int64_t>(std::ceil(begin / tw - 1e-9));
    const auto k_last = static_cast<std::int64_t>(std::floor(end / tw + 1e-9));  // exclusive
    if (k_last <= k_first) throw ScenarioError("trajectories cover no complete window");
    const std::size_t n_steps = static_cast<std::size_t>(k_last - k_first);

    // Phase 1: synthesize every (uav, window) pair; independent sub-streams
    // make the schedule irrelevant to the output.
    std::vector<std::vector<ReceivedWindow>> windows(n_uavs);
    for (auto& w : windows) w.resize(n_steps);
    {
        const int n_threads = std::min<int>(resolve_thread_count(threads),
                                            static_cast<int>(n_uavs * n_steps));
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int tid = 0; tid < n_threads; ++tid) {
            pool.emplace_back([&, tid] {
                const std::size_t total = n_uavs * n_steps;
                for (std::size_t idx = tid; idx < total; idx += n_threads) {
                    std::size_t ui = idx / n_steps;
                    std::size_t ki = idx % n_steps;
                    windows[ui][ki] = synthesize_window(
                        scenario, scenario.uavs[ui],
                        static_cast<std::uint64_t>(k_first + static_cast<std::int64_t>(ki)));
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    SimResult result;
    result.seed = seed;
    result.per_uav.resize(n_uavs);
    for (auto& v : result.per_uav) v.reserve(n_steps);

    std::vector<std::deque<DopplerSample>> history(n_uavs);
    std::vector<double> history_segment_start(n_uavs, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::optional<LocalEstimate>> held(n_uavs);
    std::optional<Vec3> fused_hint;

    const auto n_samples = static_cast<std::size_t>(std::llround(scenario.sample_rate * tw));
    const double m2 = window_time_second_moment(n_samples, scenario.sample_rate);
    const Vec3 emitter = scenario.emitter.position_world;

    for (std::size_t ki = 0; ki < n_steps; ++ki) {
        const double t0 = static_cast<double>(k_first + static_cast<std::int64_t>(ki)) * tw;
        result.time_axis.push_back(t0);

        double fleet_max = -std::numeric_limits<double>::infinity();
        for (std::size_t ui = 0; ui < n_uavs; ++ui)
            fleet_max = std::max(fleet_max, windows[ui][ki].received_power_dbm);

        std::vector<NodeReport> reports;
        reports.reserve(n_uavs);
        for (std::size_t ui = 0; ui < n_uavs; ++ui) {
            const auto& uav = scenario.uavs[ui];
            const auto& win = windows[ui][ki];
            const auto& seg = active_segment_at(uav, t0);
            LocalFrame frame = build_local_frame(seg);
            const Vec3 emitter_local = frame.to_local(emitter);
            const double f_dmax = scenario.emitter.carrier_frequency_f0 * seg.speed_v /
                                  kSpeedOfLight;

            // Eq-style inversion assumes one rectilinear pass; a heading
            // change starts a fresh history.
            if (history_segment_start[ui] != seg.start_time) {
                history[ui].clear();
                history_segment_start[ui] = seg.start_time;
            }

            EstimationMode mode =
                select_mode(win.received_power_dbm, fleet_max, scenario.los_threshold_db);
            auto sample = estimate_dfs(win, f_dmax, mode);
            if (sample) {
                history[ui].push_back(*sample);
                while (history[ui].size() > static_cast<std::size_t>(scenario.dfs_history_len))
                    history[ui].pop_front();
            }

            const double z_tilde = emitter_local.z;
            EstimateOptions opts;
            opts.f_dmax = f_dmax;
            opts.curvature_m2 = m2;
            opts.world_hint = fused_hint ? fused_hint
                                         : (held[ui] ? std::optional<Vec3>(held[ui]->position_world)
                                                     : std::nullopt);
            std::vector<DopplerSample> hist_vec(history[ui].begin(), history[ui].end());
            if (auto est = estimate_from_window(hist_vec, frame, z_tilde, opts)) {
                est->uav_id = uav.id;
                held[ui] = est;  // estimation failure keeps the previous estimate
            }

            UavStepRecord rec;
            rec.t = t0;
            rec.uav_id = uav.id;
            rec.condition_true = win.true_condition;
            rec.mode = mode;
            rec.power_dbm = win.received_power_dbm;
            const double tc = t0 + window_time_offset(n_samples, scenario.sample_rate);
            rec.f_d_true_hz = true_dfs(emitter_local, seg.speed_v,
                                       scenario.emitter.carrier_frequency_f0,
                                       tc - seg.start_time);
            if (sample) rec.f_d_hat_hz = sample->f_d_hat;
            if (held[ui]) rec.error_m = horizontal_error(held[ui]->position_world, emitter);
            result.per_uav[ui].push_back(rec);

            NodeReport report;
            report.uav_id = uav.id;
            report.t = t0;
            report.power_dbm = win.received_power_dbm;
            report.estimate = held[ui];
            reports.push_back(std::move(report));
        }

        classify_conditions(reports, scenario.los_threshold_db);
        for (std::size_t ui = 0; ui < n_uavs; ++ui)
            result.per_uav[ui][ki].condition_classified = reports[ui].classified_condition;

        bool any_estimate = false;
        for (const auto& r : reports) any_estimate = any_estimate || r.estimate.has_value();
        if (any_estimate) {
            FusedEstimate fa = fuse_arithmetic(reports);
            fa.error_m = horizontal_error(fa.position_world, emitter);
            result.fused_arithmetic.push_back({t0, fa.rule_used, fa.position_world, fa.error_m,
                                               static_cast<int>(fa.contributing_ids.size())});
            FusedEstimate fw = fuse_weighted(reports);
            fw.error_m = horizontal_error(fw.position_world, emitter);
            result.fused_weighted.push_back({t0, fw.rule_used, fw.position_world, fw.error_m,
                                             static_cast<int>(fw.contributing_ids.size())});
            fused_hint = fw.position_world;
        }

        double env_min = std::numeric_limits<double>::infinity();
        double env_max = -std::numeric_limits<double>::infinity();
        for (std::size_t ui = 0; ui < n_uavs; ++ui) {
            if (!result.per_uav[ui][ki].error_m) continue;
            env_min = std::min(env_min, *result.per_uav[ui][ki].error_m);
            env_max = std::max(env_max, *result.per_uav[ui][ki].error_m);
        }
        result.envelope_min_m.push_back(std::isfinite(env_min) ? env_min : 0.0);
        result.envelope_max_m.push_back(std::isfinite(env_max) ? env_max : 0.0);
    }

    for (std::size_t ui = 0; ui < n_uavs; ++ui) {
        std::vector<double> errs;
        for (const auto& rec : result.per_uav[ui])
            if (rec.error_m) errs.push_back(*rec.error_m);
        UavSummary s;
        s.uav_id = scenario.uavs[ui].id;
        if (!errs.empty()) {
            s.route_avg_error_m = mean(errs);
            s.rms_error_m = rms_error(errs);
        }
        result.uav_summaries.push_back(s);
    }
    {
        std::vector<double> ea, ew;
        for (const auto& r : result.fused_arithmetic) ea.push_back(r.error_m);
        for (const auto& r : result.fused_weighted) ew.push_back(r.error_m);
        if (!ea.empty()) result.route_avg_arithmetic_m = mean(ea);
        if (!ew.empty()) result.route_avg_weighted_m = mean(ew);
    }
    return result;
}

SweepResult run_sweep(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                      int threads) {
    if (seeds.empty()) throw std::invalid_argument("run_sweep: empty seed list");
    SweepResult sweep;
    std::vector<double> arith, weighted, ratios;
    for (std::uint64_t seed : seeds) {
        SimResult r = run_simulation(scenario, seed, threads);
        SeedSummary s;
        s.seed = seed;
        s.arithmetic_avg_m = r.route_avg_arithmetic_m;
        s.weighted_avg_m = r.route_avg_weighted_m;
        s.improvement_ratio =
            r.route_avg_weighted_m > 0.0 ? r.route_avg_arithmetic_m / r.route_avg_weighted_m : 0.0;
        s.uav_summaries = r.uav_summaries;
        arith.push_back(s.arithmetic_avg_m);
        weighted.push_back(s.weighted_avg_m);
        ratios.push_back(s.improvement_ratio);
        sweep.runs.push_back(std::move(s));
    }
    sweep.mean_arithmetic_m = mean(arith);
    sweep.std_arithmetic_m = stddev(arith, sweep.mean_arithmetic_m);
    sweep.mean_weighted_m = mean(weighted);
    sweep.std_weighted_m = stddev(weighted, sweep.mean_weighted_m);
    sweep.mean_ratio = mean(ratios);
    sweep.std_ratio = stddev(ratios, sweep.mean_ratio);
    sweep.median_ratio = median_of(ratios);
    return sweep;
}

}  // namespace sdfsim
