#include "unruhent/entanglement_core.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "fft.hpp"

namespace unruh {

double bose_einstein_occupation(double k, const PhysicalParams& p) {
    if (p.a == 0) return 0;
    if (k == 0) throw DomainError("Bose-Einstein occupation diverges at k = 0");
    double x = 2 * M_PI * std::abs(k) * p.c * p.c / p.a;
    if (x > 700) return 0;
    return 1 / std::expm1(x);
}

UnruhNoise unruh_noise(const SpectralCoefficients& sc, const PhysicalParams& p) {
    if (p.a == 0) return {};
    detail::KahanSum s;
    for (std::size_t n = 0; n < sc.k_grid.size(); ++n)
        s.add(std::norm(sc.rindI_pos[n]) * bose_einstein_occupation(sc.k_grid[n], p));
    return {s.value()};
}

UnruhNoise unruh_noise(const Spectrum& sp, const PhysicalParams& p) {
    if (p.a == 0) return {};
    detail::KahanSum s;
    for (std::size_t j = 0; j < sp.coef.size(); ++j) s.add(std::norm(sp.coef[j]) * bose_einstein_occupation(sp.k(j), p));
    return {s.value()};
}

namespace {

template <class T>
using Mat4 = Eigen::Matrix<T, 4, 4>;

template <class T>
Mat4<T> covariance(const OverlapSet& o, double n_mean, double s_) {
    using C = std::complex<T>;
    const T s = s_;
    Mat4<T> S = Mat4<T>::Identity();
    S(2, 2) += 2 * T(n_mean);
    S(3, 3) += 2 * T(n_mean);

    const C al(o.alpha), be(o.beta), bp(o.beta_prime);
    const T sh2 = 2 * std::sinh(s) * std::sinh(s);
    const C plus = be + std::conj(bp), minus = be - std::conj(bp);
    S(0, 0) += sh2 * std::norm(al);
    S(1, 1) += sh2 * std::norm(al);
    S(2, 2) += sh2 * std::norm(plus);
    S(3, 3) += sh2 * std::norm(minus);
    S(2, 3) += sh2 * 2 * std::imag(be * bp);
    S(3, 2) = S(2, 3);

    const T s2 = std::sinh(2 * s);
    const C P = al * plus, Q = al * minus;
    S(0, 2) = -s2 * P.real();
    S(0, 3) = -s2 * Q.imag();
    S(1, 2) = -s2 * P.imag();
    S(1, 3) = s2 * Q.real();
    S(2, 0) = S(0, 2);
    S(3, 0) = S(0, 3);
    S(2, 1) = S(1, 2);
    S(3, 1) = S(1, 3);
    return S;
}

template <class T>
T delta(const Mat4<T>& S) {
    return S(0, 0) * S(1, 1) - S(0, 1) * S(0, 1) + S(2, 2) * S(3, 3) - S(2, 3) * S(2, 3) -
           2 * S(0, 2) * S(1, 3) + 2 * S(0, 3) * S(1, 2);
}

template <class T>
T min_nu(T D, T det) {
    T disc = D * D - 4 * det;
    if (disc < T(-1e-9)) throw DomainError("log_negativity: negative discriminant, covariance is not physical");
    disc = std::max(disc, T(0));
    // (D - sqrt(disc))/2 rewritten to avoid cancellation at strong squeezing
    T inner = D > 0 ? 2 * det / (D + std::sqrt(disc)) : (D - std::sqrt(disc)) / 2;
    if (inner < T(-1e-9)) throw DomainError("log_negativity: negative symplectic eigenvalue squared");
    return std::sqrt(std::max(inner, T(0)));
}

double from_nu(double nu) {
    if (nu <= 0) return std::numeric_limits<double>::infinity();
    return std::max(0.0, -std::log(nu));
}

Mat4<double> to_eigen(const CovarianceMatrix4& s) {
    Mat4<double> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = s[i][j];
    return m;
}

}  // namespace

CovarianceMatrix4 build_covariance(const OverlapSet& o, const UnruhNoise& noise, double s) {
    Mat4<double> m = covariance<double>(o, noise.n_mean, s);
    CovarianceMatrix4 S{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) S[i][j] = m(i, j);
    return S;
}

CovarianceMatrix4 ideal_covariance(double s) {
    OverlapSet o;
    o.alpha = 1;
    o.beta = 1;
    o.beta_prime = 0;
    return build_covariance(o, {}, s);
}

double negativity_delta(const CovarianceMatrix4& S) { return delta(to_eigen(S)); }

// Long double LU: det is O(1) while the entries grow like cosh(2s).
double determinant(const CovarianceMatrix4& S) {
    return static_cast<double>(to_eigen(S).cast<long double>().partialPivLu().determinant());
}

double min_pt_symplectic_eigenvalue(const CovarianceMatrix4& S) {
    return min_nu<double>(negativity_delta(S), determinant(S));
}

double log_negativity(const CovarianceMatrix4& S) { return from_nu(min_pt_symplectic_eigenvalue(S)); }

// Entries rounded to double already cost ~eps*e^{4s} in nu; keep them in long double.
double log_negativity(const OverlapSet& o, const UnruhNoise& noise, double s) {
    Mat4<long double> m = covariance<long double>(o, noise.n_mean, s);
    return from_nu(static_cast<double>(min_nu<long double>(delta(m), m.partialPivLu().determinant())));
}

PhysicalityResult physicality_check(const CovarianceMatrix4& S, double tol) {
    Eigen::Matrix4cd H = to_eigen(S).cast<cplx>();
    const cplx I(0, 1);
    H(0, 1) += I;
    H(1, 0) -= I;
    H(2, 3) += I;
    H(3, 2) -= I;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(H, Eigen::EigenvaluesOnly);
    PhysicalityResult r;
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.pass = r.min_eigenvalue >= -tol;
    return r;
}

}  // namespace unruh
