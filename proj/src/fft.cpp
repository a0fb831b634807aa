#include "sdfsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace sdfsim {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for_size(std::size_t n, fftw_complex* in, fftw_complex* out) {
    // FFTW plan creation is not thread-safe; with FFTW_ESTIMATE the planner
    // does not touch the arrays, so a cached plan can be re-executed on new
    // buffers via fftw_execute_dft.
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plans.find(n);
    if (it == plans.end()) {
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        it = plans.emplace(n, p).first;
    }
    return it->second;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& in) {
    std::vector<std::complex<double>> inbuf(in);
    std::vector<std::complex<double>> out(in.size());
    auto* fin = reinterpret_cast<fftw_complex*>(inbuf.data());
    auto* fout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan p = plan_for_size(in.size(), fin, fout);
    fftw_execute_dft(p, fin, fout);
    return out;
}

}  // namespace sdfsim
