#include "sdfsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sdfsim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kUnitTol = 1e-9;
}  // namespace

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::Los: return "LOS";
        case Condition::Olos: return "OLOS";
        case Condition::Nlos: return "NLOS";
    }
    return "?";
}

const std::vector<ConditionInterval>* ConditionTimeline::find(int uav_id) const {
    for (const auto& [id, intervals] : entries) {
        if (id == uav_id) return &intervals;
    }
    return nullptr;
}

const UavConfig& Scenario::uav_by_id(int id) const {
    for (const auto& u : uavs) {
        if (u.id == id) return u;
    }
    throw ScenarioError("unknown UAV id " + std::to_string(id));
}

double Scenario::max_doppler_hz(const UavConfig& uav) const {
    double vmax = 0.0;
    for (const auto& seg : uav.trajectory) vmax = std::max(vmax, seg.speed_v);
    return emitter.carrier_frequency_f0 * vmax / kSpeedOfLight;
}

Vec3 uav_position_at(const UavConfig& uav, double t) {
    return active_segment_at(uav, t).position_at(t);
}

const TrajectorySegment& active_segment_at(const UavConfig& uav, double t) {
    if (uav.trajectory.empty())
        throw ScenarioError("UAV " + std::to_string(uav.id) + " has no trajectory");
    if (t < uav.span_begin() - 1e-12 || t > uav.span_end() + 1e-12) {
        std::ostringstream os;
        os << "t=" << t << " outside trajectory span [" << uav.span_begin()
           << ", " << uav.span_end() << "] of UAV " << uav.id;
        throw ScenarioError(os.str());
    }
    // Boundary instant belongs to the later segment.
    for (std::size_t i = uav.trajectory.size(); i-- > 0;) {
        if (t >= uav.trajectory[i].start_time - 1e-12) return uav.trajectory[i];
    }
    return uav.trajectory.front();
}

LocalFrame build_local_frame(const TrajectorySegment& segment) {
    const Vec3& h = segment.heading_unit;
    if (std::hypot(h.x, h.y) < 1e-9)
        throw ScenarioError("degenerate frame: heading parallel to the vertical axis");

    // Local x along the heading; local z keeps the world-vertical sense,
    // built by Gram-Schmidt from world up; local y completes the right-handed set.
    Vec3 ex = h * (1.0 / h.norm());
    Vec3 up{0.0, 0.0, 1.0};
    Vec3 ez = up - ex * up.dot(ex);
    ez = ez * (1.0 / ez.norm());
    Vec3 ey = ez.cross(ex);

    LocalFrame frame;
    frame.origin_world = segment.start_world;
    frame.rotation = Mat3{{ex, ey, ez}};
    frame.speed_v = segment.speed_v;
    frame.origin_time = segment.start_time;
    return frame;
}

Condition condition_at(const ConditionTimeline& timeline, int uav_id, double t) {
    const auto* intervals = timeline.find(uav_id);
    if (!intervals)
        throw ScenarioError("no condition timeline for UAV " + std::to_string(uav_id));
    if (intervals->empty() || t < intervals->front().start_time)
        throw ScenarioError("t outside condition timeline of UAV " + std::to_string(uav_id));
    Condition c = intervals->front().condition;
    for (const auto& iv : *intervals) {
        if (t >= iv.start_time) c = iv.condition;  // boundary -> later interval
    }
    return c;
}

std::vector<std::string> Scenario::validation_errors() const {
    std::vector<std::string> errs;
    auto fail = [&errs](const std::string& msg) { errs.push_back(msg); };

    if (!(emitter.carrier_frequency_f0 > 0)) fail("emitter carrier_frequency_hz must be > 0");
    if (!std::isfinite(emitter.transmit_power_dbm)) fail("emitter transmit_power_dbm must be finite");

    if (uavs.empty()) fail("scenario has no UAVs");
    std::set<int> ids;
    for (const auto& u : uavs) {
        std::string tag = "uav " + std::to_string(u.id) + ": ";
        if (!ids.insert(u.id).second) fail(tag + "duplicate id");
        if (u.trajectory.empty()) {
            fail(tag + "no trajectory segments");
            continue;
        }
        for (std::size_t i = 0; i < u.trajectory.size(); ++i) {
            const auto& s = u.trajectory[i];
            std::string seg = tag + "segment " + std::to_string(i) + ": ";
            if (!(s.speed_v > 0)) fail(seg + "speed_mps must be > 0");
            if (!(s.duration > 0)) fail(seg + "duration_s must be > 0");
            if (std::abs(s.heading_unit.norm() - 1.0) > kUnitTol)
                fail(seg + "heading must be a unit vector");
            if (std::hypot(s.heading_unit.x, s.heading_unit.y) < 1e-9)
                fail(seg + "vertical heading is not supported");
            if (i > 0) {
                const auto& p = u.trajectory[i - 1];
                if (std::abs(s.start_time - p.end_time()) > 1e-9)
                    fail(seg + "segments are not time-contiguous");
                if ((s.start_world - p.position_at(p.end_time())).norm() > 1e-6)
                    fail(seg + "position jumps across the segment boundary");
                // Window grid alignment keeps every window inside one segment.
                double r = std::remainder(s.start_time, window_duration);
                if (std::abs(r) > 1e-9)
                    fail(seg + "segment boundary does not fall on a window boundary");
            }
        }
        const auto* intervals = timeline.find(u.id);
        if (!intervals) {
            fail(tag + "missing condition timeline");
        } else {
            double prev = -std::numeric_limits<double>::infinity();
            for (const auto& iv : *intervals) {
                if (iv.start_time <= prev && prev != -std::numeric_limits<double>::infinity())
                    fail(tag + "timeline intervals not strictly increasing");
                prev = iv.start_time;
            }
            if (intervals->empty() || std::abs(intervals->front().start_time - u.span_begin()) > 1e-9)
                fail(tag + "timeline does not start at the trajectory span begin");
        }
        double fdmax = max_doppler_hz(u);
        if (sample_rate < 4.0 * fdmax - 1e-12) {
            std::ostringstream os;
            os << tag << "sample_rate_hz " << sample_rate << " below 4 x f_Dmax (" << 4.0 * fdmax
               << ")";
            fail(os.str());
        }
    }
    for (const auto& [id, intervals] : timeline.entries) {
        (void)intervals;
        bool known = false;
        for (const auto& u : uavs) known = known || u.id == id;
        if (!known) fail("timeline references unknown UAV id " + std::to_string(id));
    }

    if (!(sample_rate > 0)) fail("sample_rate_hz must be > 0");
    if (!(window_duration > 0)) fail("window_duration_s must be > 0");
    if (dfs_history_len < 2) fail("dfs_history_len must be >= 2");
    if (!(los_threshold_db >= 0)) fail("los_threshold_db must be >= 0");
    if (channel.nlos_scatterer_count < 1) fail("nlos_scatterer_count must be >= 1");
    if (channel.olos_excess_loss_db < 0) fail("olos_excess_loss_db must be >= 0");
    if (channel.nlos_excess_loss_db < 0) fail("nlos_excess_loss_db must be >= 0");
    return errs;
}

void Scenario::validate() const {
    auto errs = validation_errors();
    if (errs.empty()) return;
    std::string msg = "scenario validation failed:";
    for (const auto& e : errs) msg += "\n  - " + e;
    throw ScenarioError(msg);
}

}  // namespace sdfsim
