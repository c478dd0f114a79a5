// Jacobi theta_1, Eisenstein series (plain and q-deformed) and Weierstrass
// functions on an arbitrary lattice 2*w1*Z + 2*w2*Z.
#ifndef WDVV_SPECIAL_FN_HPP
#define WDVV_SPECIAL_FN_HPP

#include "wdvv/types.hpp"

#include <array>

namespace wdvv {

struct SeriesControl {
    double rel_tol = 1e-17;
    int max_terms = 400;

    void validate() const;
};

// Modulus tau in the upper half-plane; nome q = exp(2*pi*i*tau).
class ModularPoint {
public:
    explicit ModularPoint(cplx tau);
    cplx tau() const { return tau_; }
    cplx nome() const;

private:
    cplx tau_;
};

enum class Eisen { E2, E4, E6 };

// theta_1(u|tau) = 2 sum_{n>=0} (-1)^n exp(i pi tau (n+1/2)^2) sin((2n+1) pi u)
// and its u-derivatives up to `order` (<= 3); unused slots are zero.
std::array<cplx, 4> theta1_jet(cplx u, const ModularPoint& m, int order,
                               const SeriesControl& ctl = {});

// Eisenstein series and term-wise tau-derivatives (deriv_order <= 3).
cplx eisenstein(const ModularPoint& m, Eisen which, int deriv_order = 0,
                const SeriesControl& ctl = {});

// Same series addressed by the nome q = exp(2 pi i tau) directly, |q| < 1.
// Allows the degenerate point q = 0 (tau -> i*infinity).
cplx eisenstein_nome(cplx q, Eisen which, int deriv_order = 0,
                     const SeriesControl& ctl = {});

// q-deformed series E_{q,k}(tau_q) with tau = tau_q/(1 - q tau_q):
//   E_{q,2} = E_2(tau)/(1-q tau_q)^2 - 6iq/(pi (1-q tau_q)),
//   E_{q,4} = E_4(tau)/(1-q tau_q)^4,  E_{q,6} = E_6(tau)/(1-q tau_q)^6.
// tau_q-derivatives up to order 3 by the chain rule.
cplx eisenstein_q(cplx tau_q, cplx qparam, Eisen which, int deriv_order = 0,
                  const SeriesControl& ctl = {});

// All derivatives 0..3 of E_{q,k} at once.
std::array<cplx, 4> eisenstein_q_jet(cplx tau_q, cplx qparam, Eisen which,
                                     const SeriesControl& ctl = {});

struct LatticeFrame {
    cplx omega1, omega2;
    cplx tau;  // omega2/omega1
    cplx eta1; // zeta(omega1)
    cplx g2, g3;
    cplx e1, e2, e3; // wp(omega1), wp(omega2), wp(omega1+omega2)
};

LatticeFrame lattice_invariants(cplx omega1, cplx omega2, const SeriesControl& ctl = {});

enum class WFun { P, Pprime, Pdoubleprime, Zeta, Sigma };

struct WeierstrassOptions {
    SeriesControl ctl;
    double pole_guard = 1e-8; // relative to |2 omega1|
};

cplx weierstrass(cplx u, const LatticeFrame& L, WFun which,
                 const WeierstrassOptions& opt = {});

} // namespace wdvv

#endif
