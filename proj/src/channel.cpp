#include "sdfsim/channel.hpp"

#include <cmath>

#include "sdfsim/rng.hpp"

namespace sdfsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double true_dfs(const Vec3& emitter_local, double v, double f0_hz, double t) {
    double dx = emitter_local.x - v * t;
    double r = std::sqrt(dx * dx + emitter_local.y * emitter_local.y +
                         emitter_local.z * emitter_local.z);
    if (r == 0.0) throw ScenarioError("true_dfs: emitter coincides with the UAV position");
    double f_dmax = f0_hz * v / kSpeedOfLight;
    return f_dmax * dx / r;
}

double received_power_dbm(const std::vector<std::complex<double>>& samples) {
    if (samples.empty()) throw ScenarioError("received_power_dbm: empty window");
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    double mean_sq = acc / static_cast<double>(samples.size());
    if (mean_sq == 0.0) return kSilentPowerDbm;
    return 10.0 * std::log10(mean_sq);
}

ReceivedWindow synthesize_window(const Scenario& scenario, const UavConfig& uav,
                                 std::uint64_t window_index) {
    const double tw = scenario.window_duration;
    const double fs = scenario.sample_rate;
    const double t_start = static_cast<double>(window_index) * tw;
    const auto n = static_cast<std::size_t>(std::llround(fs * tw));

    const auto& seg = active_segment_at(uav, t_start);
    LocalFrame frame = build_local_frame(seg);
    Vec3 em = frame.to_local(scenario.emitter.position_world);
    const double v = seg.speed_v;
    const double f_dmax = scenario.emitter.carrier_frequency_f0 * v / kSpeedOfLight;
    const double tau0 = t_start - seg.start_time;  // window start in pass-local time

    Condition cond = condition_at(scenario.timeline, uav.id, t_start + tw / 2.0);

    const auto& ch = scenario.channel;
    double dx_c = em.x - v * (tau0 + tw / 2.0);
    double d_center = std::sqrt(dx_c * dx_c + em.y * em.y + em.z * em.z);
    double loss_db = ch.reference_loss_at_1m_db +
                     10.0 * ch.path_loss_exponent * std::log10(std::max(d_center, 1.0));
    if (cond == Condition::Olos) loss_db += ch.olos_excess_loss_db;
    if (cond == Condition::Nlos) loss_db += ch.nlos_excess_loss_db;
    double amp = std::pow(10.0, (scenario.emitter.transmit_power_dbm - loss_db) / 20.0);

    WindowRng rng(scenario.seed, uav.id, window_index);

    ReceivedWindow w;
    w.uav_id = uav.id;
    w.t_start = t_start;
    w.sample_rate = fs;
    w.true_condition = cond;
    w.samples.resize(n);

    if (cond == Condition::Nlos) {
        // Ring-of-scatterers surrogate: constant-frequency components whose
        // Doppler offsets are f_Dmax*cos(theta_k) around the direct-path angle.
        double cos_los = std::min(1.0, std::max(-1.0, dx_c / d_center));
        double theta_los = std::acos(cos_los);
        int k_count = ch.nlos_scatterer_count;
        double comp_amp = amp / std::sqrt(static_cast<double>(k_count));
        std::vector<double> freq(k_count), phase(k_count);
        for (int k = 0; k < k_count; ++k) {
            double theta = theta_los + rng.uniform(-ch.nlos_angular_spread, ch.nlos_angular_spread);
            freq[k] = f_dmax * std::cos(theta);
            phase[k] = rng.uniform(0.0, 2.0 * kPi);
        }
        for (std::size_t i = 0; i < n; ++i) {
            double t = static_cast<double>(i) / fs;
            std::complex<double> acc{0.0, 0.0};
            for (int k = 0; k < k_count; ++k) {
                double ph = 2.0 * kPi * freq[k] * t + phase[k];
                acc += std::complex<double>(std::cos(ph), std::sin(ph));
            }
            w.samples[i] = comp_amp * acc;
        }
    } else {
        // Direct path; the phase is the exact integral of the instantaneous
        // Doppler frequency, -2*pi*(f_Dmax/v)*range(t).
        for (std::size_t i = 0; i < n; ++i) {
            double tau = tau0 + static_cast<double>(i) / fs;
            double dx = em.x - v * tau;
            double range = std::sqrt(dx * dx + em.y * em.y + em.z * em.z);
            double ph = -2.0 * kPi * (f_dmax / v) * range;
            w.samples[i] = amp * std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }

    if (ch.noise_enabled()) {
        double sigma = std::sqrt(std::pow(10.0, ch.noise_floor_dbm / 10.0) / 2.0);
        for (std::size_t i = 0; i < n; ++i) {
            double re = rng.gaussian();
            double im = rng.gaussian();
            w.samples[i] += sigma * std::complex<double>(re, im);
        }
    }

    w.received_power_dbm = received_power_dbm(w.samples);
    return w;
}

}  // namespace sdfsim
