// Theta, Eisenstein and Weierstrass evaluators against brute-force oracles.
#include "wdvv/special_fn.hpp"

#include <doctest.h>

#include <cmath>

using namespace wdvv;

namespace {

double rel_err(cplx a, cplx b)
{
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

// theta_1 and its u-derivative summed over a fixed 200 terms.
std::pair<cplx, cplx> theta1_oracle(cplx u, cplx tau)
{
    cplx v{0.0, 0.0}, d{0.0, 0.0};
    for (int n = 0; n < 200; ++n) {
        const double h = n + 0.5;
        const cplx w = std::exp(kI * kPi * tau * h * h);
        const double sgn = n % 2 == 0 ? 1.0 : -1.0;
        const double k = (2 * n + 1) * kPi;
        v += 2.0 * sgn * w * std::sin(k * u);
        d += 2.0 * sgn * w * k * std::cos(k * u);
    }
    return {v, d};
}

// E4 = 1 + 240 sum sigma_3(n) q^n over 400 terms in long double.
std::complex<long double> e4_oracle(std::complex<long double> q)
{
    std::complex<long double> s{0.0L, 0.0L}, qn{1.0L, 0.0L};
    for (long n = 1; n <= 400; ++n) {
        qn *= q;
        long double sigma = 0.0L;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0)
                sigma += static_cast<long double>(d) * d * d;
        s += sigma * qn;
    }
    return 1.0L + 240.0L * s;
}

// wp by a symmetric lattice sum over |m|,|n| <= N.
cplx wp_lattice(cplx z, cplx w1, cplx w2, int N)
{
    cplx s = 1.0 / (z * z);
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b) {
            if (a == 0 && b == 0)
                continue;
            const cplx w = 2.0 * (static_cast<double>(a) * w1 + static_cast<double>(b) * w2);
            s += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
        }
    return s;
}

} // namespace

TEST_CASE("theta1 is odd and vanishes at the origin")
{
    const ModularPoint m({0.1, 0.9});
    CHECK(std::abs(theta1_jet(0.0, m, 0)[0]) == 0.0);
    for (cplx u : {cplx{0.3, 0.1}, cplx{-0.7, 0.2}, cplx{0.05, -0.3}}) {
        const auto p = theta1_jet(u, m, 0)[0];
        const auto q = theta1_jet(-u, m, 0)[0];
        CHECK(std::abs(p + q) <= 1e-15 * std::abs(p));
    }
}

TEST_CASE("theta1 jet matches the fixed 200-term sum")
{
    const auto jet = theta1_jet(0.3, ModularPoint(kI), 1);
    const auto [v, d] = theta1_oracle(0.3, kI);
    CHECK(rel_err(jet[0], v) <= 1e-12);
    CHECK(rel_err(jet[1], d) <= 1e-12);
    const cplx u{0.21, -0.13}, tau{-0.3, 0.7};
    const auto jet2 = theta1_jet(u, ModularPoint(tau), 1);
    const auto [v2, d2] = theta1_oracle(u, tau);
    CHECK(rel_err(jet2[0], v2) <= 1e-12);
    CHECK(rel_err(jet2[1], d2) <= 1e-12);
}

TEST_CASE("Eisenstein constant terms at the cusp")
{
    CHECK(eisenstein_nome(0.0, Eisen::E2) == cplx{1.0, 0.0});
    CHECK(eisenstein_nome(0.0, Eisen::E4) == cplx{1.0, 0.0});
    CHECK(eisenstein_nome(0.0, Eisen::E6) == cplx{1.0, 0.0});
    CHECK(eisenstein_nome(0.0, Eisen::E2, 1) == cplx{0.0, 0.0});
}

TEST_CASE("E4(2i) matches the long-double divisor sum")
{
    const cplx tau{0.0, 2.0};
    const cplx e4 = eisenstein(ModularPoint(tau), Eisen::E4);
    const std::complex<long double> q = std::exp(std::complex<long double>(0.0L, 2.0L) *
                                                 static_cast<long double>(kPi) * std::complex<long double>(tau));
    const std::complex<long double> ref = e4_oracle(q);
    CHECK(rel_err(e4, cplx(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) <= 1e-13);
}

TEST_CASE("E2 at tau = i equals 3/pi")
{
    CHECK(rel_err(eisenstein(ModularPoint(kI), Eisen::E2), 3.0 / kPi) <= 1e-14);
}

TEST_CASE("term-wise tau derivatives agree with a central difference")
{
    const cplx tau{0.2, 0.8};
    const double h = 1e-4;
    for (Eisen w : {Eisen::E2, Eisen::E4, Eisen::E6})
        for (int k = 0; k < 3; ++k) {
            const cplx fd = (eisenstein(ModularPoint(tau + h), w, k) - eisenstein(ModularPoint(tau - h), w, k)) / (2.0 * h);
            CHECK(rel_err(fd, eisenstein(ModularPoint(tau), w, k + 1)) <= 1e-6);
        }
}

TEST_CASE("q-deformed series at zero deformation")
{
    const cplx tq{0.15, 0.9};
    for (Eisen w : {Eisen::E2, Eisen::E4, Eisen::E6})
        for (int k = 0; k < 4; ++k)
            CHECK(eisenstein_q(tq, 0.0, w, k) == eisenstein(ModularPoint(tq), w, k));
}

TEST_CASE("q-deformed E2 matches the affine composition")
{
    const cplx q{0.1, 0.2}, tq{0.0, 0.3};
    const cplx d = 1.0 - q * tq;
    const cplx tau = tq / d;
    const cplx E2 = eisenstein(ModularPoint(tau), Eisen::E2);
    const cplx ref = E2 / (d * d) - 6.0 * kI * q / (kPi * d);
    CHECK(rel_err(eisenstein_q(tq, q, Eisen::E2), ref) <= 1e-12);
    const cplx E4 = eisenstein(ModularPoint(tau), Eisen::E4);
    CHECK(rel_err(eisenstein_q(tq, q, Eisen::E4), E4 / std::pow(d, 4)) <= 1e-12);
}

TEST_CASE("q-deformed derivatives agree with a central difference in tau_q")
{
    const cplx q{0.1, 0.2}, tq{0.1, 0.7};
    const double h = 1e-4;
    for (Eisen w : {Eisen::E2, Eisen::E4, Eisen::E6})
        for (int k = 0; k < 3; ++k) {
            const cplx fd = (eisenstein_q(tq + h, q, w, k) - eisenstein_q(tq - h, q, w, k)) / (2.0 * h);
            CHECK(rel_err(fd, eisenstein_q(tq, q, w, k + 1)) <= 1e-6);
        }
}

TEST_CASE("ModularPoint rejects the lower half-plane")
{
    CHECK_THROWS_AS(ModularPoint(cplx{0.3, 0.0}), DomainError);
    CHECK_THROWS_AS(ModularPoint(cplx{0.3, -1.0}), DomainError);
    CHECK(std::abs(ModularPoint(cplx{0.0, 0.5}).nome()) < 1.0);
}

TEST_CASE("g2 at omega1 = 1/2 equals 4 pi^4/3 E4")
{
    const cplx tau{0.1, 1.1};
    const LatticeFrame L = lattice_invariants(0.5, tau / 2.0);
    const cplx E4 = eisenstein(ModularPoint(tau), Eisen::E4);
    const cplx E6 = eisenstein(ModularPoint(tau), Eisen::E6);
    CHECK(rel_err(L.g2, 4.0 * std::pow(kPi, 4) / 3.0 * E4) <= 1e-13);
    CHECK(rel_err(L.g3, 8.0 * std::pow(kPi, 6) / 27.0 * E6) <= 1e-13);
}

TEST_CASE("lattice invariants scale with the half-periods")
{
    const cplx w1{0.7, 0.2}, w2{-0.1, 0.9}, a{1.3, -0.4};
    const LatticeFrame L = lattice_invariants(w1, w2);
    const LatticeFrame S = lattice_invariants(a * w1, a * w2);
    CHECK(rel_err(S.g2, L.g2 / std::pow(a, 4)) <= 1e-13);
    CHECK(rel_err(S.g3, L.g3 / std::pow(a, 6)) <= 1e-13);
    CHECK(std::abs(L.e1 + L.e2 + L.e3) <= 1e-13 * std::abs(L.e1));
    CHECK(rel_err(L.eta1, weierstrass(w1, L, WFun::Zeta)) <= 1e-13);
}

TEST_CASE("square lattice half-period values")
{
    const LatticeFrame L = lattice_invariants(0.5, cplx{0.0, 0.5});
    CHECK(std::abs(L.e2 + L.e1) <= 1e-13 * std::abs(L.e1));
    CHECK(std::abs(L.e3) <= 1e-13 * std::abs(L.e1));
    // Richardson on the lattice-sum truncation error, which decays like N^-2.
    const cplx s1 = wp_lattice(0.5, 0.5, cplx{0.0, 0.5}, 150);
    const cplx s2 = wp_lattice(0.5, 0.5, cplx{0.0, 0.5}, 300);
    const cplx ref = (4.0 * s2 - s1) / 3.0;
    CHECK(rel_err(L.e1, ref) <= 1e-7);
    CHECK(rel_err(weierstrass(0.5, L, WFun::P), L.e1) <= 1e-14);
}

TEST_CASE("wp agrees with the lattice sum on a skew lattice")
{
    const cplx w1{0.6, 0.1}, w2{0.2, 0.7}, z{0.23, 0.31};
    const LatticeFrame L = lattice_invariants(w1, w2);
    const cplx s1 = wp_lattice(z, w1, w2, 150);
    const cplx s2 = wp_lattice(z, w1, w2, 300);
    CHECK(rel_err(weierstrass(z, L, WFun::P), (4.0 * s2 - s1) / 3.0) <= 1e-7);
}

TEST_CASE("zeta is odd and wp' vanishes at a half-period")
{
    const LatticeFrame L = lattice_invariants(cplx{0.8, -0.1}, cplx{0.3, 0.9});
    for (cplx u : {cplx{0.31, 0.2}, cplx{-0.4, 0.55}}) {
        const cplx z = weierstrass(u, L, WFun::Zeta);
        CHECK(std::abs(z + weierstrass(-u, L, WFun::Zeta)) <= 1e-13 * std::abs(z));
    }
    CHECK(std::abs(weierstrass(L.omega1, L, WFun::Pprime)) <= 1e-10 * std::abs(L.g2));
}

TEST_CASE("wp ODE at twenty points")
{
    const LatticeFrame L = lattice_invariants(cplx{0.9, 0.3}, cplx{-0.2, 0.8});
    for (int k = 0; k < 20; ++k) {
        const cplx u = 2.0 * L.omega1 * (0.05 + 0.045 * k) + 2.0 * L.omega2 * (0.93 - 0.041 * k);
        const cplx p = weierstrass(u, L, WFun::P), d = weierstrass(u, L, WFun::Pprime);
        const cplx r = d * d - 4.0 * p * p * p + L.g2 * p + L.g3;
        const double scale = std::max({std::abs(d * d), std::abs(4.0 * p * p * p), std::abs(L.g2 * p), std::abs(L.g3)});
        CHECK(std::abs(r) / scale <= 1e-10);
    }
}

TEST_CASE("weierstrass raises at lattice points")
{
    const LatticeFrame L = lattice_invariants(0.5, cplx{0.1, 0.6});
    CHECK_THROWS_AS(weierstrass(0.0, L, WFun::P), PoleError);
    CHECK_THROWS_AS(weierstrass(2.0 * L.omega2, L, WFun::Zeta), PoleError);
}

TEST_CASE("SeriesControl validation")
{
    SeriesControl c;
    c.rel_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.rel_tol = 1e-16;
    c.max_terms = 4;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("integer deformation q = 1 is a modular transformation")
{
    for (cplx tq : {cplx{0.3, 1.1}, cplx{-0.2, 0.8}}) {
        CHECK(rel_err(eisenstein_q(tq, 1.0, Eisen::E2), eisenstein(ModularPoint(tq), Eisen::E2)) <= 1e-12);
        CHECK(rel_err(eisenstein_q(tq, 1.0, Eisen::E4), eisenstein(ModularPoint(tq), Eisen::E4)) <= 1e-12);
        CHECK(rel_err(eisenstein_q(tq, 1.0, Eisen::E6), eisenstein(ModularPoint(tq), Eisen::E6)) <= 1e-12);
    }
}
