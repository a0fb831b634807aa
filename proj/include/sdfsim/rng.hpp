#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sdfsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic sub-stream keyed by (seed, uav_id, window index) so that
// windows can be synthesized in any order, serial or parallel, with
// identical output.
class WindowRng {
  public:
    WindowRng(std::uint64_t seed, int uav_id, std::uint64_t window_index)
        : engine_(splitmix64(splitmix64(seed ^ 0x5df1c4a3u) ^
                             splitmix64(static_cast<std::uint64_t>(uav_id) << 32 | window_index))) {}

    // Uniform in [0, 1). Transforms are hand-rolled so the byte stream does
    // not depend on the standard library's distribution implementations.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; one value per call, cached pair.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sdfsim
