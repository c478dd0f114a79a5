// Identity residuals; each is normalized by the largest term it combines.
#include "wdvv/identity_suite.hpp"

#include "wdvv/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace wdvv {

namespace {

double rel(cplx diff, std::initializer_list<cplx> terms)
{
    double scale = 0.0;
    for (const auto& t : terms)
        scale = std::max(scale, std::abs(t));
    if (scale == 0.0)
        return std::abs(diff);
    return std::abs(diff) / scale;
}

cplx eis(const ModularPoint& m, std::optional<cplx> q, Eisen which, int d, const SeriesControl& ctl)
{
    return q ? eisenstein_q(m.tau(), *q, which, d, ctl) : eisenstein(m, which, d, ctl);
}

const DerivSpec kTauStep{1e-3, 3, StepScale::Absolute};

} // namespace

double chazy_residual(const ModularPoint& m, std::optional<cplx> qparam, const SeriesControl& ctl)
{
    std::array<cplx, 4> E;
    if (qparam)
        E = eisenstein_q_jet(m.tau(), *qparam, Eisen::E2, ctl);
    else
        for (int d = 0; d < 4; ++d)
            E[d] = eisenstein(m, Eisen::E2, d, ctl);
    const cplx a = E[3];
    const cplx b = -2.0 * kI * kPi * E[0] * E[2];
    const cplx c = 3.0 * kI * kPi * E[1] * E[1];
    return rel(a + b + c, {a, b, c});
}

std::array<double, 3> ramanujan_residuals(const ModularPoint& m, std::optional<cplx> qparam,
                                          const SeriesControl& ctl)
{
    const cplx E2 = eis(m, qparam, Eisen::E2, 0, ctl);
    const cplx E4 = eis(m, qparam, Eisen::E4, 0, ctl);
    const cplx E6 = eis(m, qparam, Eisen::E6, 0, ctl);
    const cplx k = 1.0 / (2.0 * kI * kPi);
    const cplx d2 = k * eis(m, qparam, Eisen::E2, 1, ctl);
    const cplx d4 = k * eis(m, qparam, Eisen::E4, 1, ctl);
    const cplx d6 = k * eis(m, qparam, Eisen::E6, 1, ctl);
    return {rel(d2 - (E2 * E2 - E4) / 12.0, {d2, E2 * E2 / 12.0, E4 / 12.0}),
            rel(d4 - (E2 * E4 - E6) / 3.0, {d4, E2 * E4 / 3.0, E6 / 3.0}),
            rel(d6 - (E2 * E6 - E4 * E4) / 2.0, {d6, E2 * E6 / 2.0, E4 * E4 / 2.0})};
}

double e2_derivative_crosscheck(const ModularPoint& m, const SeriesControl& ctl)
{
    const ScalarFn f = [&](const CVec& v) { return eisenstein(ModularPoint(v[0]), Eisen::E2, 0, ctl); };
    const cplx fd = derivative_tensor(f, {m.tau()}, 1, kTauStep).value.at(0);
    const cplx exact = eisenstein(m, Eisen::E2, 1, ctl);
    return std::abs(fd - exact) / std::max(1.0, std::abs(exact));
}

std::map<std::string, double> weierstrass_suite(const LatticeFrame& L, cplx u, cplx v,
                                                const WeierstrassOptions& opt)
{
    auto W = [&](cplx z, WFun f) { return weierstrass(z, L, f, opt); };
    const cplx w1 = L.omega1, w2 = L.omega2;
    const cplx Pu = W(u, WFun::P), Pv = W(v, WFun::P), Puv = W(u + v, WFun::P);
    const cplx Du = W(u, WFun::Pprime), Dv = W(v, WFun::Pprime);
    const cplx DDu = W(u, WFun::Pdoubleprime);
    const cplx Zu = W(u, WFun::Zeta), Zv = W(v, WFun::Zeta), Zuv = W(u + v, WFun::Zeta);
    const cplx Z1 = W(w1, WFun::Zeta), Z2 = W(w2, WFun::Zeta);
    const cplx g2 = L.g2, g3 = L.g3;

    std::map<std::string, double> r;
    r["wp_ode"] = rel(Du * Du - (4.0 * Pu * Pu * Pu - g2 * Pu - g3), {Du * Du, 4.0 * Pu * Pu * Pu, g2 * Pu, g3});
    const cplx prod = 4.0 * (Pu - L.e1) * (Pu - L.e2) * (Pu - L.e3);
    r["wp_ode_roots"] = rel(Du * Du - prod, {Du * Du, prod, 4.0 * Pu * Pu * Pu});
    r["wp_second"] = rel(DDu - 6.0 * Pu * Pu + g2 / 2.0, {DDu, 6.0 * Pu * Pu, g2 / 2.0});
    r["legendre"] = rel(w2 * Z1 - w1 * Z2 - kI * kPi / 2.0, {w2 * Z1, w1 * Z2, kPi / 2.0});

    const cplx ratio = (Du - Dv) / (Pu - Pv);
    r["add_wp"] = rel(Puv + Pu + Pv - 0.25 * ratio * ratio, {Puv, Pu, Pv, 0.25 * ratio * ratio});
    r["add_zeta"] = rel(Zuv - Zu - Zv - 0.5 * ratio, {Zuv, Zu, Zv, 0.5 * ratio});

    const cplx Zp1 = W(u + 2.0 * w1, WFun::Zeta), Zp2 = W(u + 2.0 * w2, WFun::Zeta);
    r["zeta_period1"] = rel(Zp1 - Zu - 2.0 * Z1, {Zp1, Zu, 2.0 * Z1});
    r["zeta_period2"] = rel(Zp2 - Zu - 2.0 * Z2, {Zp2, Zu, 2.0 * Z2});
    const cplx Su = W(u, WFun::Sigma), Sp1 = W(u + 2.0 * w1, WFun::Sigma);
    const cplx Sq = -Su * std::exp(2.0 * Z1 * u + 2.0 * w1 * Z1);
    r["sigma_period1"] = rel(Sp1 - Sq, {Sp1, Sq});

    const LatticeFrame N = lattice_invariants(0.5, L.tau / 2.0, opt.ctl);
    const ModularPoint mp(L.tau);
    const cplx zhalf = weierstrass(0.5, N, WFun::Zeta, opt);
    const cplx e2 = kPi * kPi / 3.0 * eisenstein(mp, Eisen::E2, 0, opt.ctl);
    r["zeta_e2"] = rel(2.0 * zhalf - e2, {2.0 * zhalf, e2});

    // g2, g3 rebuilt from the half-period values against the Eisenstein route.
    const cplx e1 = W(w1, WFun::P), e2v = W(w2, WFun::P), e3 = W(w1 + w2, WFun::P);
    const cplx w1_4 = w1 * w1 * w1 * w1;
    const cplx g2e = std::pow(kPi, 4) / (12.0 * w1_4) * eisenstein(mp, Eisen::E4, 0, opt.ctl);
    const cplx g3e = std::pow(kPi, 6) / (216.0 * w1_4 * w1 * w1) * eisenstein(mp, Eisen::E6, 0, opt.ctl);
    const cplx g2r = 2.0 * (e1 * e1 + e2v * e2v + e3 * e3);
    const cplx g3r = 4.0 * e1 * e2v * e3;
    r["g2_e4"] = rel(g2r - g2e, {g2r, g2e, 2.0 * e1 * e1});
    r["g3_e6"] = rel(g3r - g3e, {g3r, g3e, 4.0 * e1 * e1 * e1});
    return r;
}

double weierstrass_tolerance(const std::string& key)
{
    if (key == "add_wp" || key == "add_zeta" || key == "sigma_period1")
        return 1e-9;
    return 1e-10;
}

cplx ej_value(const ModularPoint& m, int j, const SeriesControl& ctl)
{
    if (j < 1 || j > 3)
        throw DomainError("ej_value: j must be 1, 2 or 3");
    const LatticeFrame L = lattice_invariants(0.5, m.tau() / 2.0, ctl);
    return j == 1 ? L.e1 : j == 2 ? L.e2 : L.e3;
}

double ej_ode_residual(const ModularPoint& m, int j, const SeriesControl& ctl)
{
    const ScalarFn f = [&](const CVec& v) { return ej_value(ModularPoint(v[0]), j, ctl); };
    const cplx de = derivative_tensor(f, {m.tau()}, 1, kTauStep).value.at(0);
    const cplx e = ej_value(m, j, ctl);
    const cplx E2 = eisenstein(m, Eisen::E2, 0, ctl), E4 = eisenstein(m, Eisen::E4, 0, ctl);
    const cplx lhs = de / (2.0 * kI * kPi);
    const cplx a = -e * e / (2.0 * kPi * kPi), b = E2 * e / 6.0, c = kPi * kPi / 9.0 * E4;
    return rel(lhs - a - b - c, {lhs, a, b, c});
}

Genus1Coords genus1_flat_coords(cplx omega1, cplx tau, cplx c, const SeriesControl& ctl)
{
    if (omega1 == cplx{0.0, 0.0})
        throw DomainError("genus1_flat_coords: omega1 must be nonzero");
    if (!(tau.imag() > 0.0))
        throw DomainError("genus1_flat_coords: tau must lie in the upper half-plane");
    const LatticeFrame L = lattice_invariants(omega1, omega1 * tau, ctl);
    WeierstrassOptions wo;
    wo.ctl = ctl;
    const cplx w = omega1;
    const cplx z1 = weierstrass(w, L, WFun::Zeta, wo);
    const cplx e1 = weierstrass(w, L, WFun::P, wo);
    const cplx e2 = weierstrass(L.omega2, L, WFun::P, wo);
    const cplx e3 = weierstrass(w + L.omega2, L, WFun::P, wo);
    const cplx g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
    const cplx g3 = 4.0 * e1 * e2 * e3;
    const double r2 = std::sqrt(2.0);

    Genus1Coords g;
    const cplx t2 = 1.0 / (r2 * w);
    g.t = {tau / (2.0 * kI * kPi), t2, -z1 / w + c};
    const cplx x3 = r2 / 6.0 * g2 * w - 2.0 * r2 * z1 * z1 / w;
    g.x = {t2, 2.0 * z1 / w + c, x3};
    const cplx y2 = r2 / 6.0 * g2 * w - 2.0 * r2 * z1 * z1 / w;
    g.y = {c - z1 / w, y2, g3 * w * w - g2 * w * z1 + 4.0 * z1 * z1 * z1 / w};

    const ModularPoint mp(tau);
    const cplx E = eisenstein(mp, Eisen::E2, 0, ctl);
    const cplx E1 = eisenstein(mp, Eisen::E2, 1, ctl);
    const cplx E2d = eisenstein(mp, Eisen::E2, 2, ctl);
    const cplx kx2 = kPi * kPi / 2.0 * t2 * t2 * E;
    const cplx kx3 = kI * std::pow(kPi, 3) / 3.0 * t2 * t2 * t2 * E1;
    const cplx ky3 = -std::pow(kPi, 4) / 6.0 * t2 * t2 * t2 * t2 * E2d;
    g.residual_x2 = rel(g.x[1] - g.t[2] - kx2, {g.x[1], g.t[2], kx2});
    g.residual_x3 = rel(x3 - kx3, {x3, kx3, 2.0 * r2 * z1 * z1 / w});
    g.residual_y3 = rel(g.y[2] - ky3, {g.y[2], ky3, g2 * w * z1});
    g.residual_y2 = rel(g.y[1] - x3, {g.y[1], x3});
    return g;
}

} // namespace wdvv
