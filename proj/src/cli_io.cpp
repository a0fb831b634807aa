#include "sdfsim/cli_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "sdfsim/channel.hpp"
#include "sdfsim/scenario_parser.hpp"

namespace sdfsim {

namespace {

namespace fs = std::filesystem;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string num(double v) { return fmt("%.6f", v); }
std::string tcol(double v) { return fmt("%.3f", v); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* classified_name(ClassifiedCondition c) {
    return c == ClassifiedCondition::LosUsable ? "LOS-usable" : "NLOS";
}

struct LoadedScenario {
    Scenario scenario;
    std::string digest;
};

// Parses and validates; on failure prints diagnostics and returns nullopt.
std::optional<LoadedScenario> load_scenario(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    LoadedScenario out;
    out.digest = scenario_digest(text);
    try {
        out.scenario = parse_scenario(text);
    } catch (const ParseError& e) {
        std::cerr << path << ": parse error\n" << e.what() << "\n";
        return std::nullopt;
    }
    auto errs = out.scenario.validation_errors();
    if (!errs.empty()) {
        std::cerr << path << ": invalid scenario\n";
        for (const auto& e : errs) std::cerr << "  - " << e << "\n";
        return std::nullopt;
    }
    return out;
}

void write_manifest(const fs::path& out_dir, const std::string& scenario_path,
                    const std::vector<std::uint64_t>& seeds, const std::string& digest,
                    const std::vector<std::string>& files) {
    nlohmann::json j;
    j["scenario_path"] = scenario_path;
    j["seeds"] = seeds;
    j["output_directory"] = out_dir.string();
    j["emitted_files"] = files;
    j["tool_version"] = kToolVersion;
    j["scenario_digest"] = digest;
    std::ofstream out(out_dir / "manifest.json");
    out << j.dump(2) << "\n";
}

}  // namespace

std::string scenario_digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
    auto loaded = load_scenario(scenario_path);
    if (!loaded) return kExitInputError;
    const Scenario& scenario = loaded->scenario;
    std::uint64_t run_seed = seed.value_or(scenario.seed);

    SimResult result;
    try {
        result = run_simulation(scenario, run_seed);
    } catch (const std::exception& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return kExitRuntimeError;
    }

    try {
        fs::create_directories(out_dir);
        std::vector<std::string> files;

        {
            std::ofstream out(fs::path(out_dir) / "per_uav_errors.csv");
            out << "t_s,uav_id,error_m,condition_true,condition_classified\n";
            for (std::size_t ki = 0; ki < result.time_axis.size(); ++ki) {
                for (const auto& series : result.per_uav) {
                    const auto& r = series[ki];
                    out << tcol(r.t) << ',' << r.uav_id << ','
                        << (r.error_m ? num(*r.error_m) : "nan") << ','
                        << condition_name(r.condition_true) << ','
                        << classified_name(r.condition_classified) << '\n';
                }
            }
            files.push_back("per_uav_errors.csv");
        }
        {
            std::ofstream out(fs::path(out_dir) / "fused_errors.csv");
            out << "t_s,rule,error_m,n_contributors\n";
            for (std::size_t i = 0; i < result.fused_arithmetic.size(); ++i) {
                const auto& a = result.fused_arithmetic[i];
                const auto& w = result.fused_weighted[i];
                out << tcol(a.t) << ',' << fusion_rule_name(a.rule) << ',' << num(a.error_m) << ','
                    << a.n_contributors << '\n';
                out << tcol(w.t) << ',' << fusion_rule_name(w.rule) << ',' << num(w.error_m) << ','
                    << w.n_contributors << '\n';
            }
            files.push_back("fused_errors.csv");
        }
        {
            std::ofstream out(fs::path(out_dir) / "doppler_curves.csv");
            out << "t_s,uav_id,f_d_hat_hz,f_d_true_hz,mode\n";
            for (std::size_t ki = 0; ki < result.time_axis.size(); ++ki) {
                for (const auto& series : result.per_uav) {
                    const auto& r = series[ki];
                    out << tcol(r.t) << ',' << r.uav_id << ','
                        << (r.f_d_hat_hz ? num(*r.f_d_hat_hz) : "nan") << ','
                        << num(r.f_d_true_hz) << ',' << mode_name(r.mode) << '\n';
                }
            }
            files.push_back("doppler_curves.csv");
        }
        {
            std::ofstream out(fs::path(out_dir) / "summary.csv");
            out << "scope,route_avg_error_m,rms_error_m\n";
            for (const auto& s : result.uav_summaries) {
                out << "uav" << s.uav_id << ',' << num(s.route_avg_error_m) << ','
                    << num(s.rms_error_m) << '\n';
            }
            std::vector<double> ea, ew;
            for (const auto& r : result.fused_arithmetic) ea.push_back(r.error_m);
            for (const auto& r : result.fused_weighted) ew.push_back(r.error_m);
            out << "arithmetic," << num(result.route_avg_arithmetic_m) << ','
                << (ea.empty() ? "nan" : num(rms_error(ea))) << '\n';
            out << "weighted," << num(result.route_avg_weighted_m) << ','
                << (ew.empty() ? "nan" : num(rms_error(ew))) << '\n';
            files.push_back("summary.csv");
        }
        files.push_back("manifest.json");
        write_manifest(out_dir, scenario_path, {run_seed}, loaded->digest, files);
    } catch (const std::exception& e) {
        std::cerr << "failed to write outputs: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& scenario_path, int n_seeds,
              std::optional<std::uint64_t> base_seed, const std::string& out_dir) {
    if (n_seeds < 1) {
        std::cerr << "error: --seeds must be >= 1\n";
        return kExitInputError;
    }
    auto loaded = load_scenario(scenario_path);
    if (!loaded) return kExitInputError;

    std::uint64_t base = base_seed.value_or(loaded->scenario.seed);
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < n_seeds; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));

    SweepResult sweep;
    try {
        sweep = run_sweep(loaded->scenario, seeds);
    } catch (const std::exception& e) {
        std::cerr << "sweep failed: " << e.what() << "\n";
        return kExitRuntimeError;
    }

    try {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "sweep_summary.csv");
        out << "seed,rule_or_uav,route_avg_error_m\n";
        for (const auto& run : sweep.runs) {
            out << run.seed << ",arithmetic," << num(run.arithmetic_avg_m) << '\n';
            out << run.seed << ",weighted," << num(run.weighted_avg_m) << '\n';
            for (const auto& u : run.uav_summaries)
                out << run.seed << ",uav" << u.uav_id << ',' << num(u.route_avg_error_m) << '\n';
        }
        out << "aggregate,arithmetic_mean," << num(sweep.mean_arithmetic_m) << '\n';
        out << "aggregate,arithmetic_std," << num(sweep.std_arithmetic_m) << '\n';
        out << "aggregate,weighted_mean," << num(sweep.mean_weighted_m) << '\n';
        out << "aggregate,weighted_std," << num(sweep.std_weighted_m) << '\n';
        out << "aggregate,improvement_ratio_mean," << num(sweep.mean_ratio) << '\n';
        out << "aggregate,improvement_ratio_std," << num(sweep.std_ratio) << '\n';
        out << "aggregate,improvement_ratio_median," << num(sweep.median_ratio) << '\n';
        write_manifest(out_dir, scenario_path, seeds, loaded->digest, {"sweep_summary.csv",
                                                                       "manifest.json"});
    } catch (const std::exception& e) {
        std::cerr << "failed to write outputs: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    auto loaded = load_scenario(scenario_path);
    if (!loaded) return kExitInputError;
    const Scenario& s = loaded->scenario;
    std::cout << "scenario OK (digest " << loaded->digest << ")\n";
    for (const auto& u : s.uavs) {
        double fdmax = s.max_doppler_hz(u);
        std::cout << "  uav" << u.id << ": f_Dmax = " << fmt("%.4f", fdmax)
                  << " Hz, Nyquist margin = " << fmt("%.2f", s.sample_rate / (2.0 * fdmax))
                  << "x, span = [" << fmt("%.1f", u.span_begin()) << ", "
                  << fmt("%.1f", u.span_end()) << "] s\n";
    }
    return kExitOk;
}

}  // namespace sdfsim
