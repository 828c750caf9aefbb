#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "unruhent/entanglement_core.hpp"
#include "unruhent/moment_oracle.hpp"

using namespace unruh;

namespace {
PhysicalParams accel(double a) {
    PhysicalParams p;
    p.a = a;
    return p;
}

CovarianceMatrix4 diag(double a, double b, double c, double d) {
    CovarianceMatrix4 S{};
    S[0][0] = a;
    S[1][1] = b;
    S[2][2] = c;
    S[3][3] = d;
    return S;
}

// Smallest symplectic eigenvalue of the partial transpose from the spectrum of i*Omega*sigma.
double symplectic_oracle(const CovarianceMatrix4& S) {
    Eigen::Matrix4d m, om = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = S[i][j];
    Eigen::Vector4d t(1, 1, 1, -1);
    m = t.asDiagonal() * m * t.asDiagonal();
    om(0, 1) = om(2, 3) = 1;
    om(1, 0) = om(3, 2) = -1;
    Eigen::EigenSolver<Eigen::Matrix4d> es(om * m);
    double lo = 1e300;
    for (int i = 0; i < 4; ++i) lo = std::min(lo, std::abs(es.eigenvalues()[i]));
    return lo;
}

OverlapSet random_overlaps(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    OverlapSet o;
    o.alpha = std::polar(0.5 + 0.5 * u(rng), 2 * M_PI * u(rng));
    o.beta = std::polar(u(rng), 2 * M_PI * u(rng));
    o.beta_prime = std::polar(0.3 * u(rng) * std::abs(o.beta), 2 * M_PI * u(rng));
    return o;
}
}  // namespace

TEST_CASE("Bose-Einstein occupation") {
    CHECK(bose_einstein_occupation(1.0, accel(0)) == 0.0);
    double a = 0.7;
    CHECK(bose_einstein_occupation(a * std::log(2.0) / (2 * M_PI), accel(a)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(bose_einstein_occupation(a / (2 * M_PI), accel(a)) == doctest::Approx(0.5819767068693265).epsilon(1e-13));
    CHECK(bose_einstein_occupation(1e4, accel(1)) == 0.0);
    CHECK_THROWS_AS(bose_einstein_occupation(0.0, accel(1)), DomainError);
}

TEST_CASE("Unruh noise of a single-node detector is its occupation") {
    auto p = accel(2.0);
    Spectrum sp;
    sp.dk = 0.1;
    sp.first = 4;
    sp.coef = {cplx(0.6, 0.8)};
    CHECK(unruh_noise(sp, p).n_mean == doctest::Approx(bose_einstein_occupation(0.45, p)).epsilon(1e-14));
    CHECK(unruh_noise(sp, accel(0)).n_mean == 0.0);
}

TEST_CASE("covariance examples") {
    OverlapSet o;
    o.beta = 0.4;
    auto S0 = build_covariance(o, {0.25}, 0.0);
    auto want = diag(1, 1, 1.5, 1.5);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(S0[i][j] == doctest::Approx(want[i][j]).epsilon(1e-15));

    double s = 0.8;
    auto I = ideal_covariance(s);
    CHECK(I[0][0] == doctest::Approx(std::cosh(2 * s)).epsilon(1e-14));
    CHECK(I[2][2] == doctest::Approx(std::cosh(2 * s)).epsilon(1e-14));
    CHECK(I[0][2] == doctest::Approx(-std::sinh(2 * s)).epsilon(1e-14));
    CHECK(I[1][3] == doctest::Approx(std::sinh(2 * s)).epsilon(1e-14));

    OverlapSet ph;
    ph.beta = cplx(0, 1);
    auto R = build_covariance(ph, {}, s);
    CHECK(R[1][2] == doctest::Approx(-std::sinh(2 * s)).epsilon(1e-14));
    CHECK(R[0][3] == doctest::Approx(-std::sinh(2 * s)).epsilon(1e-14));
    CHECK(std::abs(R[0][2]) < 1e-15);
}

TEST_CASE("log-negativity examples") {
    CHECK(log_negativity(diag(1, 1, 1, 1)) == 0.0);
    CHECK(log_negativity(diag(2, 2, 2, 2)) == 0.0);
    OverlapSet ideal;
    ideal.beta = 1;
    for (double s : {0.25, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        CHECK(std::abs(log_negativity(ideal, {}, s) - 2 * s) < 1e-12);
        // the double-valued matrix carries ~eps*e^{4s} from rounding its entries
        CHECK(std::abs(log_negativity(ideal_covariance(s)) - 2 * s) < 1e-15 * std::exp(4 * s) + 1e-13);
    }
}

TEST_CASE("symplectic eigenvalue agrees with a direct eigen-solve") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 100; ++t) {
        auto S = build_covariance(random_overlaps(rng), {0.3 * u(rng)}, 2 * u(rng));
        CHECK(std::abs(min_pt_symplectic_eigenvalue(S) - symplectic_oracle(S)) < 1e-9);
    }
    for (int t = 0; t < 100; ++t) {
        auto o = random_overlaps(rng);
        double n = 0.3 * u(rng), s = 2 * u(rng);
        CHECK(std::abs(log_negativity(o, {n}, s) - log_negativity(build_covariance(o, {n}, s))) < 1e-9);
    }
}

TEST_CASE("physicality") {
    CHECK(physicality_check(diag(1, 1, 1, 1)).pass);
    CHECK(physicality_check(ideal_covariance(3)).pass);
    auto bad = physicality_check(diag(0.5, 0.5, 1, 1));
    CHECK_FALSE(bad.pass);
    CHECK(bad.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));

    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) CHECK(physicality_check(build_covariance(random_overlaps(rng), {0.1}, 1.5)).pass);
}

TEST_CASE("covariance matches the ladder-operator oracle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    for (int t = 0; t < 300; ++t) {
        auto o = random_overlaps(rng);
        double n = u(rng), s = 2 * u(rng);
        auto A = build_covariance(o, {n}, s), B = second_moment_oracle(o, n, s);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(A[i][j] - B[i][j]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("entanglement grows with the overlap and ignores its phase") {
    double s = 1.0, last = -1;
    for (int i = 0; i < 100; ++i) {
        double b = i / 99.0;
        OverlapSet o;
        o.beta = b;
        double e = log_negativity(build_covariance(o, {}, s));
        CHECK(e >= last);
        last = e;
        for (double phase : {0.3, 1.7, -2.5}) {
            o.beta = std::polar(b, phase);
            o.beta_prime = std::polar(0.1 * b, phase);
            OverlapSet ref;
            ref.beta = b;
            ref.beta_prime = 0.1 * b;
            CHECK(std::abs(log_negativity(build_covariance(o, {}, s)) - log_negativity(build_covariance(ref, {}, s))) <
                  1e-12);
        }
    }
    OverlapSet o;
    o.beta = 0.8;
    CHECK(log_negativity(build_covariance(o, {0.2}, s)) < log_negativity(build_covariance(o, {}, s)));
}
