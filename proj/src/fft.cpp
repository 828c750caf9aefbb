#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace unruh::detail {

namespace {
std::mutex plan_mutex;  // FFTW planning is not re-entrant

void dft_inplace(std::vector<cplx>& d, int fftw_sign) {
    auto* p = reinterpret_cast<fftw_complex*>(d.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(d.size()), p, p, fftw_sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lk(plan_mutex);
    fftw_destroy_plan(plan);
}
}  // namespace

std::vector<cplx> half_analysis(const BoxGrid& g, const std::vector<cplx>& f, int s) {
    const std::size_t M = g.M;
    const double dk = g.dk();
    std::vector<cplx> w(M);
    for (std::size_t j = 0; j < M; ++j)
        w[j] = f[j] * std::polar(1.0, -s * M_PI * static_cast<double>(j) / static_cast<double>(M));
    dft_inplace(w, s > 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    for (std::size_t n = 0; n < M; ++n)
        w[n] *= g.h * std::polar(1.0, -s * signed_node(n, M, dk) * g.lo);
    return w;
}

std::vector<cplx> half_synthesis(const BoxGrid& g, const std::vector<cplx>& C, int s) {
    const std::size_t M = g.M;
    const double dk = g.dk();
    std::vector<cplx> w(M);
    for (std::size_t n = 0; n < M; ++n) w[n] = C[n] * std::polar(1.0, s * signed_node(n, M, dk) * g.lo);
    dft_inplace(w, s > 0 ? FFTW_BACKWARD : FFTW_FORWARD);
    for (std::size_t j = 0; j < M; ++j)
        w[j] *= std::polar(1.0, s * M_PI * static_cast<double>(j) / static_cast<double>(M));
    return w;
}

}  // namespace unruh::detail
