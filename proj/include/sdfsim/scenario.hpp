#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdfsim/geometry.hpp"

namespace sdfsim {

class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Condition { Los, Olos, Nlos };

const char* condition_name(Condition c);

struct EmitterConfig {
    Vec3 position_world;          // m
    double carrier_frequency_f0 = 0.0;  // Hz
    double transmit_power_dbm = 0.0;
};

struct TrajectorySegment {
    Vec3 start_world;   // m
    Vec3 heading_unit;  // unit vector
    double speed_v = 0.0;      // m/s
    double start_time = 0.0;   // s
    double duration = 0.0;     // s

    double end_time() const { return start_time + duration; }
    Vec3 position_at(double t) const {
        return start_world + heading_unit * (speed_v * (t - start_time));
    }
};

struct UavConfig {
    int id = 0;
    std::vector<TrajectorySegment> trajectory;

    double span_begin() const { return trajectory.front().start_time; }
    double span_end() const { return trajectory.back().end_time(); }
};

struct ConditionInterval {
    double start_time = 0.0;
    Condition condition = Condition::Nlos;
};

struct ConditionTimeline {
    // Per UAV id, intervals sorted by start_time; each runs until the next
    // interval (the last one until the end of the simulation span).
    std::vector<std::pair<int, std::vector<ConditionInterval>>> entries;

    const std::vector<ConditionInterval>* find(int uav_id) const;
};

struct ChannelParams {
    double noise_floor_dbm = -90.0;  // -inf disables noise
    double path_loss_exponent = 2.0;
    double olos_excess_loss_db = 10.0;
    double nlos_excess_loss_db = 20.0;
    int nlos_scatterer_count = 32;
    double nlos_angular_spread = 3.14159265358979323846;  // rad, half-width
    double reference_loss_at_1m_db = 30.0;

    bool noise_enabled() const { return std::isfinite(noise_floor_dbm); }
};

struct Scenario {
    EmitterConfig emitter;
    std::vector<UavConfig> uavs;
    ConditionTimeline timeline;
    ChannelParams channel;
    double sample_rate = 200.0;      // Hz
    double window_duration = 1.0;    // s
    int dfs_history_len = 20;
    std::uint64_t seed = 0;
    double los_threshold_db = 6.0;

    const UavConfig& uav_by_id(int id) const;
    double max_doppler_hz(const UavConfig& uav) const;

    // Throws ScenarioError listing every violated invariant.
    void validate() const;
    std::vector<std::string> validation_errors() const;
};

// In the local frame the UAV moves along +x at speed_v starting from the
// origin at time origin_time; local z is the world-vertical offset.
struct LocalFrame {
    Vec3 origin_world;
    Mat3 rotation;       // world -> local
    double speed_v = 0.0;
    double origin_time = 0.0;  // world time at which the UAV sits at the origin

    Vec3 to_local(const Vec3& p_world) const {
        return rotation * (p_world - origin_world);
    }
    Vec3 to_world(const Vec3& p_local) const {
        return rotation.transposed_mul(p_local) + origin_world;
    }
};

Vec3 uav_position_at(const UavConfig& uav, double t);
const TrajectorySegment& active_segment_at(const UavConfig& uav, double t);
LocalFrame build_local_frame(const TrajectorySegment& segment);
Condition condition_at(const ConditionTimeline& timeline, int uav_id, double t);

}  // namespace sdfsim
