#pragma once

#include <complex>
#include <vector>

#include "unruhent/mode_builder.hpp"

namespace unruh::detail {

// h * sum_j f_j exp(-i*s*kappa_n*xi_j) for signed nodes kappa_n; result in FFT order
// (index n >= M/2 stands for n - M).
std::vector<cplx> half_analysis(const BoxGrid& g, const std::vector<cplx>& f, int s);

// sum_n C_n exp(i*s*kappa_n*xi_j); C in FFT order, length M.
std::vector<cplx> half_synthesis(const BoxGrid& g, const std::vector<cplx>& C, int s);

inline double signed_node(std::size_t n, std::size_t M, double dk) {
    double nn = n < M / 2 ? static_cast<double>(n) : static_cast<double>(n) - static_cast<double>(M);
    return (nn + 0.5) * dk;
}

// Neumaier summation.
struct KahanSum {
    double s = 0, comp = 0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) comp += (s - t) + x;
        else comp += (x - t) + s;
        s = t;
    }
    double value() const { return s + comp; }
};
struct KahanSumC {
    KahanSum re, im;
    void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
    cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace unruh::detail
