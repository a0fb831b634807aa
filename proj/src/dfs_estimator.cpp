#include "sdfsim/dfs_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdfsim/fft.hpp"

namespace sdfsim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClampEps = 1e-3;
constexpr int kZeroPadFactor = 4;

std::vector<double> hann(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    return w;
}

// PSD with bins reordered to ascending frequency; returns bin frequencies too.
void shifted_psd(const ReceivedWindow& win, std::vector<double>& psd, std::vector<double>& freq) {
    const std::size_t n = win.samples.size();
    const std::size_t nfft = n * kZeroPadFactor;
    auto w = hann(n);
    std::vector<std::complex<double>> buf(nfft, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) buf[i] = win.samples[i] * w[i];
    auto spec = fft_forward(buf);

    psd.resize(nfft);
    freq.resize(nfft);
    const double df = win.sample_rate / static_cast<double>(nfft);
    const std::size_t half = nfft / 2;
    for (std::size_t i = 0; i < nfft; ++i) {
        std::size_t src = (i + half) % nfft;  // negative frequencies first
        psd[i] = std::norm(spec[src]);
        freq[i] = (static_cast<double>(i) - static_cast<double>(half)) * df;
    }
}

}  // namespace

const char* mode_name(EstimationMode m) {
    return m == EstimationMode::LosPeak ? "LOS-peak" : "NLOS-centroid";
}

EstimationMode select_mode(double power_dbm, double fleet_max_power_dbm,
                           double los_threshold_db) {
    return power_dbm >= fleet_max_power_dbm - los_threshold_db ? EstimationMode::LosPeak
                                                               : EstimationMode::NlosCentroid;
}

double window_time_offset(std::size_t n_samples, double sample_rate) {
    return static_cast<double>(n_samples - 1) / (2.0 * sample_rate);
}

double window_time_second_moment(std::size_t n_samples, double sample_rate) {
    auto w = hann(n_samples);
    double tc = window_time_offset(n_samples, sample_rate);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        double dt = static_cast<double>(i) / sample_rate - tc;
        double w2 = w[i] * w[i];
        num += w2 * dt * dt;
        den += w2;
    }
    return num / den;
}

std::optional<DopplerSample> estimate_dfs(const ReceivedWindow& window, double f_dmax,
                                          EstimationMode mode) {
    if (window.samples.size() < 64)
        throw std::invalid_argument("estimate_dfs: window shorter than 64 samples");
    if (!(f_dmax > 0.0)) throw std::invalid_argument("estimate_dfs: f_dmax must be > 0");
    for (const auto& s : window.samples) {
        if (std::isnan(s.real()) || std::isnan(s.imag()))
            throw std::invalid_argument("estimate_dfs: NaN sample in window");
    }

    std::vector<double> psd, freq;
    shifted_psd(window, psd, freq);
    const std::size_t nfft = psd.size();
    const double df = window.sample_rate / static_cast<double>(nfft);

    double f_hat;
    if (mode == EstimationMode::LosPeak) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < nfft; ++i)
            if (psd[i] > psd[k]) k = i;
        f_hat = freq[k];
        if (k > 0 && k + 1 < nfft && psd[k] > 0.0) {
            double la = std::log10(psd[k - 1] + 1e-300);
            double lb = std::log10(psd[k] + 1e-300);
            double lc = std::log10(psd[k + 1] + 1e-300);
            double denom = la - 2.0 * lb + lc;
            if (std::abs(denom) > 1e-30) {
                double delta = 0.5 * (la - lc) / denom;
                f_hat += delta * df;
            }
        }
    } else {
        std::vector<double> sorted(psd);
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        double median = sorted[sorted.size() / 2];
        double threshold = median * std::pow(10.0, 6.0 / 10.0);
        double wsum = 0.0, fsum = 0.0;
        for (std::size_t i = 0; i < nfft; ++i) {
            if (std::abs(freq[i]) > f_dmax) continue;
            if (psd[i] <= threshold) continue;
            wsum += psd[i];
            fsum += psd[i] * freq[i];
        }
        if (wsum == 0.0) return std::nullopt;  // no signal above the noise median
        f_hat = fsum / wsum;
    }

    DopplerSample out;
    out.t = window.t_start + window_time_offset(window.samples.size(), window.sample_rate);
    out.f_d_hat = f_hat;
    out.normalized_f = std::clamp(f_hat / f_dmax, -(1.0 - kClampEps), 1.0 - kClampEps);
    out.power_dbm = window.received_power_dbm;
    out.mode_used = mode;
    return out;
}

}  // namespace sdfsim
