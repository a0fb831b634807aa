#include "sdfsim/scenario_parser.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace sdfsim {

namespace {

struct Diag {
    int line;
    std::string message;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    Scenario run() {
        std::istringstream in(text_);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = raw;
            if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
            s = trim(s);
            if (s.empty()) continue;
            if (s.rfind("[[", 0) == 0)
                open_array_section(s, line);
            else if (s[0] == '[')
                open_section(s, line);
            else
                key_value(s, line);
        }
        if (!diags_.empty()) throw_diags();
        return scenario_;
    }

  private:
    void error(int line, const std::string& msg) { diags_.push_back({line, msg}); }

    [[noreturn]] void throw_diags() {
        std::ostringstream os;
        for (std::size_t i = 0; i < diags_.size(); ++i) {
            if (i) os << '\n';
            os << "line " << diags_[i].line << ": " << diags_[i].message;
        }
        throw ParseError(os.str());
    }

    void open_section(const std::string& s, int line) {
        if (s.back() != ']') {
            error(line, "malformed section header '" + s + "'");
            return;
        }
        std::string name = trim(s.substr(1, s.size() - 2));
        if (name == "emitter" || name == "channel" || name == "sim" || name == "timeline") {
            section_ = name;
        } else {
            error(line, "unknown section [" + name + "]");
            section_ = "?";
        }
    }

    void open_array_section(const std::string& s, int line) {
        if (s.size() < 5 || s.substr(s.size() - 2) != "]]") {
            error(line, "malformed section header '" + s + "'");
            return;
        }
        std::string name = trim(s.substr(2, s.size() - 4));
        if (name == "uav") {
            scenario_.uavs.emplace_back();
            section_ = "uav";
        } else if (name == "uav.segment") {
            if (scenario_.uavs.empty()) {
                error(line, "[[uav.segment]] before any [[uav]]");
                section_ = "?";
                return;
            }
            scenario_.uavs.back().trajectory.emplace_back();
            section_ = "uav.segment";
        } else {
            error(line, "unknown section [[" + name + "]]");
            section_ = "?";
        }
    }

    bool parse_number(const std::string& v, int line, const std::string& key, double& out) {
        std::string s = trim(v);
        if (s == "-inf") {
            out = -std::numeric_limits<double>::infinity();
            return true;
        }
        char* end = nullptr;
        out = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') {
            error(line, "key '" + key + "': expected a number, got '" + v + "'");
            return false;
        }
        return true;
    }

    bool parse_int(const std::string& v, int line, const std::string& key, long long& out) {
        char* end = nullptr;
        std::string s = trim(v);
        out = std::strtoll(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0') {
            error(line, "key '" + key + "': expected an integer, got '" + v + "'");
            return false;
        }
        return true;
    }

    bool parse_vec3(const std::string& v, int line, const std::string& key, Vec3& out) {
        auto parts = split(v, ',');
        if (parts.size() != 3) {
            error(line, "key '" + key + "': expected 'x, y, z'");
            return false;
        }
        return parse_number(parts[0], line, key, out.x) &&
               parse_number(parts[1], line, key, out.y) &&
               parse_number(parts[2], line, key, out.z);
    }

    bool parse_condition(const std::string& s, int line, Condition& out) {
        if (s == "LOS") out = Condition::Los;
        else if (s == "OLOS") out = Condition::Olos;
        else if (s == "NLOS") out = Condition::Nlos;
        else {
            error(line, "unknown condition '" + s + "' (expected LOS, OLOS or NLOS)");
            return false;
        }
        return true;
    }

    void key_value(const std::string& s, int line) {
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            error(line, "expected 'key = value', got '" + s + "'");
            return;
        }
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        double num;
        long long inum;

        if (section_ == "emitter") {
            if (key == "position_m") parse_vec3(val, line, key, scenario_.emitter.position_world);
            else if (key == "carrier_frequency_hz") {
                if (parse_number(val, line, key, num)) scenario_.emitter.carrier_frequency_f0 = num;
            } else if (key == "transmit_power_dbm") {
                if (parse_number(val, line, key, num)) scenario_.emitter.transmit_power_dbm = num;
            } else unknown_key(key, line);
        } else if (section_ == "channel") {
            auto& ch = scenario_.channel;
            if (key == "noise_floor_dbm") { if (parse_number(val, line, key, num)) ch.noise_floor_dbm = num; }
            else if (key == "path_loss_exponent") { if (parse_number(val, line, key, num)) ch.path_loss_exponent = num; }
            else if (key == "olos_excess_loss_db") { if (parse_number(val, line, key, num)) ch.olos_excess_loss_db = num; }
            else if (key == "nlos_excess_loss_db") { if (parse_number(val, line, key, num)) ch.nlos_excess_loss_db = num; }
            else if (key == "nlos_scatterer_count") { if (parse_int(val, line, key, inum)) ch.nlos_scatterer_count = static_cast<int>(inum); }
            else if (key == "nlos_angular_spread_rad") { if (parse_number(val, line, key, num)) ch.nlos_angular_spread = num; }
            else if (key == "reference_loss_at_1m_db") { if (parse_number(val, line, key, num)) ch.reference_loss_at_1m_db = num; }
            else unknown_key(key, line);
        } else if (section_ == "sim") {
            if (key == "sample_rate_hz") { if (parse_number(val, line, key, num)) scenario_.sample_rate = num; }
            else if (key == "window_duration_s") { if (parse_number(val, line, key, num)) scenario_.window_duration = num; }
            else if (key == "dfs_history_len") { if (parse_int(val, line, key, inum)) scenario_.dfs_history_len = static_cast<int>(inum); }
            else if (key == "seed") { if (parse_int(val, line, key, inum)) scenario_.seed = static_cast<std::uint64_t>(inum); }
            else if (key == "los_threshold_db") { if (parse_number(val, line, key, num)) scenario_.los_threshold_db = num; }
            else unknown_key(key, line);
        } else if (section_ == "timeline") {
            if (key.rfind("uav", 0) != 0) {
                unknown_key(key, line);
                return;
            }
            long long id;
            if (!parse_int(key.substr(3), line, key, id)) return;
            std::vector<ConditionInterval> intervals;
            for (const auto& item : split(val, ',')) {
                std::istringstream is(item);
                double t;
                std::string cond;
                if (!(is >> t >> cond)) {
                    error(line, "timeline entry '" + item + "': expected '<time_s> <LOS|OLOS|NLOS>'");
                    return;
                }
                ConditionInterval iv;
                iv.start_time = t;
                if (!parse_condition(cond, line, iv.condition)) return;
                intervals.push_back(iv);
            }
            scenario_.timeline.entries.emplace_back(static_cast<int>(id), std::move(intervals));
        } else if (section_ == "uav") {
            if (key == "id") {
                if (parse_int(val, line, key, inum)) scenario_.uavs.back().id = static_cast<int>(inum);
            } else unknown_key(key, line);
        } else if (section_ == "uav.segment") {
            auto& seg = scenario_.uavs.back().trajectory.back();
            if (key == "start_m") parse_vec3(val, line, key, seg.start_world);
            else if (key == "heading") {
                Vec3 h;
                if (parse_vec3(val, line, key, h)) {
                    double n = h.norm();
                    seg.heading_unit = n > 0 ? h * (1.0 / n) : h;
                }
            }
            else if (key == "speed_mps") { if (parse_number(val, line, key, num)) seg.speed_v = num; }
            else if (key == "start_time_s") { if (parse_number(val, line, key, num)) seg.start_time = num; }
            else if (key == "duration_s") { if (parse_number(val, line, key, num)) seg.duration = num; }
            else unknown_key(key, line);
        } else {
            error(line, "key '" + key + "' outside any section");
        }
    }

    void unknown_key(const std::string& key, int line) {
        error(line, "unknown key '" + key + "' in section [" + section_ + "]");
    }

    const std::string& text_;
    Scenario scenario_;
    std::string section_;
    std::vector<Diag> diags_;
};

}  // namespace

Scenario parse_scenario(const std::string& text) { return Parser(text).run(); }

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace sdfsim
