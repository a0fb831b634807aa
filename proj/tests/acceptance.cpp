// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sdfsim/channel.hpp"
#include "sdfsim/fft.hpp"
#include "sdfsim/fusion.hpp"
#include "sdfsim/rng.hpp"
#include "sdfsim/scenario_parser.hpp"
#include "sdfsim/sdf_core.hpp"
#include "sdfsim/sim_harness.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace sdfsim;

namespace {

int g_failures = 0;

void report(int index, const char* title, bool ok, const std::string& detail) {
    std::printf("criterion %d [%s]: %s (%s)\n", index, ok ? "PASS" : "FAIL", title,
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double spectral_spread_hz(const ReceivedWindow& w) {
    const std::size_t n = w.samples.size();
    std::vector<std::complex<double>> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        double win = 0.5 - 0.5 * std::cos(2.0 * M_PI * k / (n - 1));
        buf[k] = w.samples[k] * win;
    }
    auto spec = fft_forward(buf);
    double psum = 0.0, fsum = 0.0;
    std::vector<double> freq(n), psd(n);
    for (std::size_t k = 0; k < n; ++k) {
        double f = static_cast<double>(k) / n * w.sample_rate;
        if (f >= w.sample_rate / 2.0) f -= w.sample_rate;
        freq[k] = f;
        psd[k] = std::norm(spec[k]);
        psum += psd[k];
        fsum += psd[k] * f;
    }
    double mean = fsum / psum;
    double var = 0.0;
    for (std::size_t k = 0; k < n; ++k) var += psd[k] * (freq[k] - mean) * (freq[k] - mean);
    return std::sqrt(var / psum);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cmd(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void criterion_1() {
    Scenario s = test::canonical_scenario();
    auto t0 = std::chrono::steady_clock::now();
    SimResult r = run_simulation(s, 1, 1);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double err = r.per_uav.at(0).back().error_m.value_or(1e9);
    bool ok = err < 0.01 && elapsed < 1.0;
    report(1, "noise-free single-UAV inversion", ok,
           fmt("final error %.6f m (< 0.01), runtime %.3f s (< 1)", err, elapsed));
}

void criterion_2() {
    auto r = pairwise_estimate(0.0, 0.5, 5.0, 1.0, 10.0, 0.0);
    bool ok = r.has_value() && std::abs(r->x_tilde - 100.0) < 1e-9 &&
              std::abs(r->y_tilde_abs - 50.0) < 1e-9;
    report(2, "hand-checked two-sample solve", ok,
           r ? fmt("x~ = %.12f, |y~| = %.12f", r->x_tilde, r->y_tilde_abs)
             : std::string("no solution returned"));
}

void criterion_3() {
    Scenario s = parse_scenario_file(SDFSIM_SCENARIO_PATH);
    s.validate();
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 30; ++i) seeds.push_back(s.seed + i);
    auto t0 = std::chrono::steady_clock::now();
    SweepResult sw = run_sweep(s, seeds);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::vector<double> arith, weighted, ratios;
    for (const auto& run : sw.runs) {
        arith.push_back(run.arithmetic_avg_m);
        weighted.push_back(run.weighted_avg_m);
        ratios.push_back(run.improvement_ratio);
    }
    double med_a = median_of(arith), med_w = median_of(weighted), med_r = median_of(ratios);
    bool ok = med_w < med_a && med_r >= 2.0 && med_r <= 5.0 && elapsed < 60.0;
    report(3, "30-seed cooperative gain", ok,
           fmt("median arithmetic %.1f m, weighted %.1f m, ratio %.2f (in [2, 5]), %.1f s (< 60)",
               med_a, med_w, med_r, elapsed));
}

void criterion_4() {
    Scenario s = parse_scenario_file(SDFSIM_SCENARIO_PATH);
    s.validate();
    SimResult r = run_simulation(s, s.seed);
    double lo = 1e300, hi = 0.0;
    bool in_band = true;
    std::string listing;
    for (const auto& u : r.uav_summaries) {
        lo = std::min(lo, u.route_avg_error_m);
        hi = std::max(hi, u.route_avg_error_m);
        in_band = in_band && u.route_avg_error_m >= 10.0 && u.route_avg_error_m <= 500.0;
        listing += fmt("%s%.0f", listing.empty() ? "" : ", ", u.route_avg_error_m);
    }
    bool ok = in_band && hi / lo >= 2.0;
    report(4, "per-UAV error spread", ok,
           fmt("route averages [%s] m (each in [10, 500]), max/min %.2f (>= 2)", listing.c_str(),
               hi / lo));
}

void criterion_5() {
    const double fs = 200.0, f_dmax = 10.0;
    const std::size_t n = 200;
    WindowRng rng(123, 0, 0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double f = rng.uniform(-f_dmax * 0.999, f_dmax * 0.999);
        ReceivedWindow w;
        w.sample_rate = fs;
        w.samples.resize(n);
        double ph0 = rng.uniform(0.0, 2.0 * M_PI);
        for (std::size_t k = 0; k < n; ++k) {
            double ph = ph0 + 2.0 * M_PI * f * (static_cast<double>(k) / fs);
            w.samples[k] = {std::cos(ph), std::sin(ph)};
        }
        w.received_power_dbm = received_power_dbm(w.samples);
        auto est = estimate_dfs(w, f_dmax, EstimationMode::LosPeak);
        worst = std::max(worst, est ? std::abs(est->f_d_hat - f) : 1e9);
    }

    Scenario s_los = test::canonical_scenario();
    std::string text = test::canonical_scenario_text();
    text.replace(text.find("uav1 = 0 LOS"), 12, "uav1 = 0 NLOS");
    Scenario s_nlos = parse_scenario(text);
    s_nlos.validate();
    double spread_los = spectral_spread_hz(synthesize_window(s_los, s_los.uavs[0], 1));
    double spread_nlos = spectral_spread_hz(synthesize_window(s_nlos, s_nlos.uavs[0], 1));

    bool ok = worst < 0.05 && spread_nlos >= 10.0 * spread_los;
    report(5, "DFS estimator accuracy and NLOS spread", ok,
           fmt("max tone error %.4f Hz (< 0.05), spread NLOS/LOS %.1fx (>= 10)", worst,
               spread_nlos / spread_los));
}

void criterion_6() {
    bool ok = true;
    std::string detail = "all 32 patterns exact";
    for (unsigned mask = 0; mask < 32 && ok; ++mask) {
        std::vector<NodeReport> reports;
        Vec3 sum_all, sum_sel;
        int n_sel = 0;
        for (int i = 0; i < 5; ++i) {
            bool usable = (mask >> i) & 1u;
            NodeReport r;
            r.uav_id = i + 1;
            r.power_dbm = usable ? -70.0 : -90.0;
            LocalEstimate e;
            e.position_world = {double(i + 1), -2.0 * (i + 1), 0.0};
            r.estimate = e;
            reports.push_back(r);
            sum_all += e.position_world;
            if (usable) {
                sum_sel += e.position_world;
                ++n_sel;
            }
        }
        classify_conditions(reports, 6.0);

        // Permutation invariance on the reversed order.
        std::vector<NodeReport> rev(reports.rbegin(), reports.rend());

        FusedEstimate a = fuse_arithmetic(reports);
        FusedEstimate a2 = fuse_arithmetic(rev);
        Vec3 want_all = sum_all * (1.0 / 5.0);
        if (a.position_world.x != want_all.x || a.position_world.y != want_all.y ||
            a2.position_world.x != want_all.x) {
            ok = false;
            detail = fmt("arithmetic mismatch at pattern %u", mask);
            break;
        }

        FusedEstimate w = fuse_weighted(reports);
        FusedEstimate w2 = fuse_weighted(rev);
        Vec3 want_sel = n_sel ? sum_sel * (1.0 / n_sel) : want_all;  // all-tie -> all usable
        if (n_sel == 0) want_sel = want_all;
        if (w.position_world.x != want_sel.x || w.position_world.y != want_sel.y ||
            w2.position_world.x != want_sel.x) {
            ok = false;
            detail = fmt("weighted mismatch at pattern %u", mask);
        }
    }

    // All-NLOS fallback equality: usable nodes exist but carry no estimate.
    if (ok) {
        std::vector<NodeReport> reports;
        for (int i = 0; i < 5; ++i) {
            NodeReport r;
            r.uav_id = i + 1;
            r.power_dbm = i == 0 ? -70.0 : -90.0;
            if (i != 0) {
                LocalEstimate e;
                e.position_world = {double(10 * i), double(-5 * i), 0.0};
                r.estimate = e;
            }
            reports.push_back(r);
        }
        classify_conditions(reports, 6.0);
        FusedEstimate w = fuse_weighted(reports);
        FusedEstimate a = fuse_arithmetic(reports);
        if (w.rule_used != FusionRule::WeightedFallbackArithmetic ||
            w.position_world.x != a.position_world.x ||
            w.position_world.y != a.position_world.y) {
            ok = false;
            detail = "fallback did not equal the arithmetic mean";
        }
    }
    report(6, "fusion unit properties", ok, detail);
}

void criterion_7() {
    fs::path base = fs::path(SDFSIM_TEST_TMP) / "acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    std::string bin = SDFSIM_CLI_BIN;
    std::string scn = SDFSIM_SCENARIO_PATH;
    std::vector<std::pair<std::string, fs::path>> runs = {
        {"", base / "a"}, {"", base / "b"}, {"SDF_SIM_THREADS=1 ", base / "c"},
        {"SDF_SIM_THREADS=7 ", base / "d"}};
    bool ok = true;
    for (const auto& [env, dir] : runs) {
        int rc = run_cmd(env + bin + " run --scenario " + scn + " --seed 42 --out " +
                         dir.string() + " > /dev/null 2>&1");
        if (rc != 0) ok = false;
    }
    int files_checked = 0;
    if (ok) {
        for (const char* f : {"per_uav_errors.csv", "fused_errors.csv", "doppler_curves.csv",
                              "summary.csv"}) {
            std::string ref = slurp(runs[0].second / f);
            for (std::size_t i = 1; i < runs.size(); ++i)
                if (slurp(runs[i].second / f) != ref) ok = false;
            ++files_checked;
        }
    }
    report(7, "byte-identical reruns across thread counts", ok,
           ok ? fmt("%d CSV files identical over 4 invocations", files_checked)
              : std::string("output mismatch or nonzero exit"));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    if (g_failures == 0) {
        std::printf("acceptance: all 7 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
