// Series evaluation of theta_1, Eisenstein series and Weierstrass functions.
#include "wdvv/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace wdvv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kSafetyTail = 3;

// Divisor power sums sigma_p(n) for p in {1,3,5}, tabulated once.
const std::vector<double>& divisor_table(int p)
{
    static std::once_flag once;
    static std::array<std::vector<double>, 3> tables;
    constexpr int kSize = 4096;
    std::call_once(once, [] {
        for (auto& t : tables)
            t.assign(kSize + 1, 0.0);
        for (int d = 1; d <= kSize; ++d) {
            const double dd = d;
            const double pw[3] = {dd, dd * dd * dd, dd * dd * dd * dd * dd};
            for (int n = d; n <= kSize; n += d)
                for (int i = 0; i < 3; ++i)
                    tables[i][n] += pw[i];
        }
    });
    return tables[p / 2];
}

double divisor_sum(int p, int n)
{
    const auto& t = divisor_table(p);
    if (n < static_cast<int>(t.size()))
        return t[n];
    double s = 0.0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0)
            s += std::pow(static_cast<double>(d), p);
    return s;
}

struct EisenCoeffs {
    int power;  // divisor power k-1
    double c;   // coefficient of the q-sum
    int weight; // modular weight
};

EisenCoeffs coeffs(Eisen which)
{
    switch (which) {
    case Eisen::E2: return {1, -24.0, 2};
    case Eisen::E4: return {3, 240.0, 4};
    case Eisen::E6: return {5, -504.0, 6};
    }
    throw DomainError("unknown Eisenstein series");
}

// theta_1 and its u-derivatives up to order 4.
std::array<cplx, 5> theta_jet_impl(cplx u, cplx tau, int order, const SeriesControl& ctl)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("theta1: Im(tau) must be positive");
    std::array<cplx, 5> sum{};
    std::array<double, 5> env_max{};
    const double yabs = std::abs(u.imag());
    int quiet = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double half = n + 0.5;
        const double k = 2.0 * n + 1.0;
        const double kp = k * kPi;
        cplx w = 2.0 * std::exp(kI * kPi * tau * (half * half));
        if (n % 2 == 1)
            w = -w;
        const cplx s = std::sin(kp * u);
        const cplx c = std::cos(kp * u);
        const cplx terms[5] = {w * s, w * kp * c, -w * (kp * kp) * s, -w * (kp * kp * kp) * c,
                               w * (kp * kp * kp * kp) * s};
        const double env0 = std::abs(w) * std::cosh(kp * yabs);
        bool small = true;
        double p = 1.0;
        for (int j = 0; j <= order; ++j) {
            sum[j] += terms[j];
            const double env = env0 * p;
            env_max[j] = std::max(env_max[j], env);
            const double scale = std::max(std::abs(sum[j]), kEps * env_max[j]);
            if (!(env < ctl.rel_tol * scale))
                small = false;
            p *= kp;
        }
        quiet = small ? quiet + 1 : 0;
        if (quiet >= kSafetyTail)
            return sum;
    }
    throw NonConvergent("theta1: series did not converge within max_terms");
}

// Derivatives of log(theta_1) of orders 1..4 from a theta jet.
std::array<cplx, 5> log_derivs(const std::array<cplx, 5>& th)
{
    const cplx r1 = th[1] / th[0];
    const cplx r2 = th[2] / th[0];
    const cplx r3 = th[3] / th[0];
    const cplx r4 = th[4] / th[0];
    std::array<cplx, 5> L{};
    L[1] = r1;
    L[2] = r2 - r1 * r1;
    L[3] = r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
    L[4] = r4 - 4.0 * r1 * r3 - 3.0 * r2 * r2 + 12.0 * r1 * r1 * r2 - 6.0 * r1 * r1 * r1 * r1;
    return L;
}

} // namespace

void SeriesControl::validate() const
{
    if (!(rel_tol > 0.0))
        throw DomainError("SeriesControl: rel_tol must be positive");
    if (max_terms < 8)
        throw DomainError("SeriesControl: max_terms must be at least 8");
}

ModularPoint::ModularPoint(cplx tau) : tau_(tau)
{
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw DomainError("ModularPoint: Im(tau) must be positive and finite");
}

cplx ModularPoint::nome() const
{
    return std::exp(2.0 * kPi * kI * tau_);
}

std::array<cplx, 4> theta1_jet(cplx u, const ModularPoint& m, int order, const SeriesControl& ctl)
{
    ctl.validate();
    if (order < 0 || order > 3)
        throw DomainError("theta1_jet: order must be in 0..3");
    const auto full = theta_jet_impl(u, m.tau(), order, ctl);
    return {full[0], full[1], full[2], full[3]};
}

cplx eisenstein_nome(cplx q, Eisen which, int deriv_order, const SeriesControl& ctl)
{
    ctl.validate();
    if (deriv_order < 0 || deriv_order > 3)
        throw DomainError("eisenstein: deriv_order must be in 0..3");
    const double aq = std::abs(q);
    if (!(aq < 1.0))
        throw DomainError("eisenstein: |q| must be below 1");
    const EisenCoeffs ec = coeffs(which);
    cplx sum = deriv_order == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    if (q == cplx{0.0, 0.0})
        return sum;
    double env_max = 0.0;
    int quiet = 0;
    cplx qn = 1.0;
    double aqn = 1.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        qn *= q;
        aqn *= aq;
        const double sig = divisor_sum(ec.power, n);
        const double tn = 2.0 * kPi * n;
        cplx factor = ec.c * sig;
        double env = std::abs(ec.c) * sig * aqn;
        for (int d = 0; d < deriv_order; ++d) {
            factor *= kI * tn;
            env *= tn;
        }
        sum += factor * qn;
        env_max = std::max(env_max, env);
        const double scale = std::max(std::abs(sum), kEps * env_max);
        quiet = env < ctl.rel_tol * scale ? quiet + 1 : 0;
        if (quiet >= kSafetyTail)
            return sum;
    }
    throw NonConvergent("eisenstein: series did not converge within max_terms");
}

cplx eisenstein(const ModularPoint& m, Eisen which, int deriv_order, const SeriesControl& ctl)
{
    return eisenstein_nome(m.nome(), which, deriv_order, ctl);
}

std::array<cplx, 4> eisenstein_q_jet(cplx tau_q, cplx qparam, Eisen which, const SeriesControl& ctl)
{
    const bool undeformed = qparam == cplx{0.0, 0.0};
    const cplx D = undeformed ? cplx{1.0, 0.0} : 1.0 - qparam * tau_q;
    if (std::abs(D) == 0.0)
        throw DomainError("eisenstein_q: 1 - q*tau_q vanishes");
    const cplx invD = 1.0 / D;
    const cplx tau = undeformed ? tau_q : tau_q * invD;
    const ModularPoint mp(tau); // DomainError if the transformed modulus leaves H
    std::array<cplx, 4> e{};
    for (int k = 0; k < 4; ++k)
        e[k] = eisenstein(mp, which, k, ctl);

    // tau(tau_q) derivatives: 1/D^2, 2q/D^3, 6q^2/D^4.
    const cplx invD2 = invD * invD;
    const cplx t1 = invD2;
    const cplx t2 = 2.0 * qparam * invD2 * invD;
    const cplx t3 = 6.0 * qparam * qparam * invD2 * invD2;
    std::array<cplx, 4> g{};
    g[0] = e[0];
    g[1] = e[1] * t1;
    g[2] = e[2] * t1 * t1 + e[1] * t2;
    g[3] = e[3] * t1 * t1 * t1 + 3.0 * e[2] * t1 * t2 + e[1] * t3;

    // h = D^{-w}; h^(k) = w(w+1)...(w+k-1) q^k D^{-w-k}.
    const int w = coeffs(which).weight;
    std::array<cplx, 4> h{};
    cplx base = 1.0;
    for (int i = 0; i < w; ++i)
        base *= invD;
    h[0] = base;
    double rising = 1.0;
    cplx qk = 1.0;
    cplx dk = base;
    for (int k = 1; k < 4; ++k) {
        rising *= (w + k - 1);
        qk *= qparam;
        dk *= invD;
        h[k] = rising * qk * dk;
    }

    static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    std::array<cplx, 4> f{};
    for (int n = 0; n < 4; ++n) {
        cplx acc = g[n] * h[0];
        for (int k = 1; k <= n; ++k)
            acc += binom[n][k] * g[n - k] * h[k];
        f[n] = acc;
    }
    if (which == Eisen::E2 && !undeformed) {
        // -6iq/(pi D): k-th derivative is -6iq/pi * k! q^k D^{-1-k}.
        const cplx c0 = -6.0 * kI * qparam / kPi;
        cplx pw = invD;
        cplx qq = 1.0;
        double fact = 1.0;
        for (int k = 0; k < 4; ++k) {
            if (k > 0) {
                fact *= k;
                qq *= qparam;
                pw *= invD;
            }
            f[k] += c0 * fact * qq * pw;
        }
    }
    return f;
}

cplx eisenstein_q(cplx tau_q, cplx qparam, Eisen which, int deriv_order, const SeriesControl& ctl)
{
    if (deriv_order < 0 || deriv_order > 3)
        throw DomainError("eisenstein_q: deriv_order must be in 0..3");
    return eisenstein_q_jet(tau_q, qparam, which, ctl)[deriv_order];
}

LatticeFrame lattice_invariants(cplx omega1, cplx omega2, const SeriesControl& ctl)
{
    if (omega1 == cplx{0.0, 0.0})
        throw DomainError("lattice_invariants: omega1 must be nonzero");
    LatticeFrame L{};
    L.omega1 = omega1;
    L.omega2 = omega2;
    L.tau = omega2 / omega1;
    const ModularPoint mp(L.tau);
    const cplx E2 = eisenstein(mp, Eisen::E2, 0, ctl);
    const cplx E4 = eisenstein(mp, Eisen::E4, 0, ctl);
    const cplx E6 = eisenstein(mp, Eisen::E6, 0, ctl);
    const cplx w2 = omega1 * omega1;
    const double pi2 = kPi * kPi;
    L.eta1 = pi2 * E2 / (12.0 * omega1);
    L.g2 = pi2 * pi2 * E4 / (12.0 * w2 * w2);
    L.g3 = pi2 * pi2 * pi2 * E6 / (216.0 * w2 * w2 * w2);
    const cplx disc = L.g2 * L.g2 * L.g2 - 27.0 * L.g3 * L.g3;
    if (disc == cplx{0.0, 0.0} || !std::isfinite(std::abs(disc)))
        throw DomainError("lattice_invariants: degenerate discriminant");
    WeierstrassOptions opt;
    opt.ctl = ctl;
    L.e1 = weierstrass(omega1, L, WFun::P, opt);
    L.e2 = weierstrass(omega2, L, WFun::P, opt);
    L.e3 = weierstrass(omega1 + omega2, L, WFun::P, opt);
    return L;
}

cplx weierstrass(cplx u, const LatticeFrame& L, WFun which, const WeierstrassOptions& opt)
{
    opt.ctl.validate();
    if (!(L.tau.imag() > 0.0))
        throw DomainError("weierstrass: Im(omega2/omega1) must be positive");
    const cplx alpha = 2.0 * L.omega1;
    const cplx tau = L.tau;
    const cplx eta0 = alpha * L.eta1; // zeta(1/2) on Z + tau Z
    const cplx z = u / alpha;

    // Reduce to the period cell centred at the origin: z = zr + m + n tau.
    const double n = std::round(z.imag() / tau.imag());
    const cplx z1 = z - n * tau;
    const double m = std::round(z1.real());
    const cplx zr = z1 - m;

    const bool has_pole = which != WFun::Sigma;
    if (has_pole) {
        double dmin = std::abs(zr);
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                dmin = std::min(dmin, std::abs(zr - (static_cast<double>(a) + static_cast<double>(b) * tau)));
        if (dmin * std::abs(alpha) < opt.pole_guard * std::abs(alpha))
            throw PoleError("weierstrass: argument within pole_guard of a lattice point");
    }

    const int order = which == WFun::Pdoubleprime ? 4 : which == WFun::Pprime ? 3
                    : which == WFun::P                                        ? 2
                                                                              : 1;
    const auto th = theta_jet_impl(zr, tau, order, opt.ctl);

    switch (which) {
    case WFun::Sigma: {
        const auto th0 = theta_jet_impl(cplx{0.0, 0.0}, tau, 1, opt.ctl);
        const double sign = (static_cast<long long>(n + m) % 2 == 0) ? 1.0 : -1.0;
        const cplx theta_full = sign * std::exp(-kI * kPi * (n * n) * tau - 2.0 * kI * kPi * n * zr) * th[0];
        return alpha * std::exp(eta0 * z * z) * theta_full / th0[1];
    }
    case WFun::Zeta: {
        const cplx L1 = th[1] / th[0];
        return (2.0 * eta0 * z + L1 - 2.0 * kI * kPi * n) / alpha;
    }
    default: break;
    }
    std::array<cplx, 5> full{};
    for (int i = 0; i <= order; ++i)
        full[i] = th[i];
    const auto Ld = log_derivs(full);
    const cplx a2 = alpha * alpha;
    switch (which) {
    case WFun::P: return (-2.0 * eta0 - Ld[2]) / a2;
    case WFun::Pprime: return -Ld[3] / (a2 * alpha);
    case WFun::Pdoubleprime: return -Ld[4] / (a2 * a2);
    default: break;
    }
    throw DomainError("weierstrass: unknown function");
}

} // namespace wdvv
