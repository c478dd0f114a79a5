// Residuals of the modular and elliptic identities: Chazy, Ramanujan
// (plain and q-deformed), Weierstrass relations, the e_j ODE and the
// genus-one flat charts.
#ifndef WDVV_IDENTITY_SUITE_HPP
#define WDVV_IDENTITY_SUITE_HPP

#include "wdvv/special_fn.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace wdvv {

// E''' - 2 i pi E E'' + 3 i pi E'^2 relative to its largest term. With a
// deformation parameter the modulus is read as tau_q and E = E_{q,2}.
double chazy_residual(const ModularPoint& m, std::optional<cplx> qparam = std::nullopt,
                      const SeriesControl& ctl = {});

// (E2, E4, E6) Ramanujan residuals, each relative to its largest term.
std::array<double, 3> ramanujan_residuals(const ModularPoint& m, std::optional<cplx> qparam = std::nullopt,
                                          const SeriesControl& ctl = {});

// Central-difference E2' (Richardson) against the term-wise derivative.
double e2_derivative_crosscheck(const ModularPoint& m, const SeriesControl& ctl = {});

// Keys: wp_ode, wp_ode_roots, wp_second, legendre, add_wp, add_zeta,
// zeta_period1, zeta_period2, sigma_period1, zeta_e2, g2_e4, g3_e6.
std::map<std::string, double> weierstrass_suite(const LatticeFrame& L, cplx u, cplx v,
                                                const WeierstrassOptions& opt = {});

// Declared tolerance of a weierstrass_suite key.
double weierstrass_tolerance(const std::string& key);

// e_j(tau) = wp(half-period j | Z + tau Z); e_j' by central differences.
cplx ej_value(const ModularPoint& m, int j, const SeriesControl& ctl = {});
double ej_ode_residual(const ModularPoint& m, int j, const SeriesControl& ctl = {});

struct Genus1Coords {
    CVec t, x, y;
    double residual_x2;   // x2 - t3 - pi^2/2 t2^2 E2
    double residual_x3;   // x3 - i pi^3/3 t2^3 E2'
    double residual_y3;   // y3 + pi^4/6 t2^4 E2''
    double residual_y2;   // y2 - x3
};

// Charts from zeta(omega1) and the invariants of the lattice 2 omega1 Z + 2 omega1 tau Z;
// y1 uses the base point normalization lambda(P0) = 0.
Genus1Coords genus1_flat_coords(cplx omega1, cplx tau, cplx c, const SeriesControl& ctl = {});

} // namespace wdvv

#endif
