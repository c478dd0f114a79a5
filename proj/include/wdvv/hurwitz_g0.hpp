// Genus-0 rational coverings lambda(z) = b0/z + sum_k b_k/(z - a_k), their
// critical data, flat charts, residue pairings and the generic prepotential.
#ifndef WDVV_HURWITZ_G0_HPP
#define WDVV_HURWITZ_G0_HPP

#include "wdvv/types.hpp"

#include <string>

namespace wdvv {

struct RationalCovering {
    int m = 0;
    CVec a; // a_1..a_m (a_0 = 0 implicit)
    CVec b; // b_0..b_m, summing to 1

    // Builds the covering from a_1..a_m and b_1..b_m with b_0 = 1 - sum b_k.
    static RationalCovering from_params(const CVec& a, const CVec& b_rest);
    void validate() const; // DomainError on violated invariants
    cplx lambda(cplx z) const;
    cplx lambda_prime(cplx z) const;
    cplx lambda_second(cplx z) const;
};

struct BranchData {
    CVec alpha;     // 2m critical points
    CVec lambda;    // lambda(alpha_j)
    CVec lambda2nd; // lambda''(alpha_j)
};

// Monic coefficients of f_{2m}(z) = sum_k b_k prod_{j != k} (z - a_j)^2, lowest degree first.
CVec critical_polynomial(const RationalCovering& cov);

BranchData critical_data(const RationalCovering& cov, double root_tol = 1e-10);

// Newton continuation of the critical points from a nearby solution.
BranchData critical_data_from(const RationalCovering& cov, const CVec& alpha_seed,
                              double root_tol = 1e-10);

enum class ChartKind { Phi0, PhiJ, Phi2mJ };

struct ChartId {
    ChartKind kind = ChartKind::Phi0;
    int j = 0; // 1..m for PhiJ / Phi2mJ

    std::string name() const;
};

// coords[i] holds flat coordinate i+1 (1..2m).
struct FlatChart {
    ChartId id;
    CVec coords;
};

FlatChart flat_chart(const RationalCovering& cov, ChartId id);

// Phi0 coordinates t_1..t_2m of a covering.
CVec phi0_coords(const RationalCovering& cov);

// x_{j,.} (PhiJ) or y_{j,.} (Phi2mJ) as functions of the Phi0 chart alone.
CVec chart_from_phi0(const CVec& t, int m, ChartId id);

// Inverse of chart_from_phi0; logs are branch-matched to t_ref.
CVec phi0_from_chart(const CVec& c, int m, ChartId id, const CVec& t_ref);

// Covering with Phi0 coordinates t: b0 = 1/(1 - sum t_{2m+1-r} e^{-t_r}).
RationalCovering covering_from_phi0(const CVec& t, int m);

// Differentials: Phi0 -> -dz/z; index k in 1..m -> dz/(z-a_k) - dz/z;
// index 2m+1-k -> b_k dz/(z-a_k)^2.
struct DiffId {
    int index = 0; // 0 for phi_0, else 1..2m
};

cplx diff_coeff(const RationalCovering& cov, DiffId d, cplx z);

// sum_j (beta1 lambda_j + beta2) f_A(alpha_j) f_B(alpha_j) / lambda''(alpha_j)
cplx gram_pairing(const RationalCovering& cov, const BranchData& bd, DiffId A, DiffId B,
                  cplx beta1, cplx beta2);

// Differential inducing a chart.
DiffId chart_differential(int m, ChartId id);

struct JacobianCheck {
    double residual;  // max |FD - closed form| / max(1, max |closed form|)
    double condition; // condition number of the chart Jacobian
};

// FD chain d lambda_j / d t^A versus f_{A'}(alpha_j)/f_omega(alpha_j).
JacobianCheck lambda_jacobian_residual(const RationalCovering& cov, ChartId id,
                                       double fd_step = 1e-6);

// FD matrix d lambda_j / d t^A (rows j, columns A) through the parameter chain.
std::vector<CVec> lambda_jacobian_fd(const RationalCovering& cov, ChartId id, double fd_step = 1e-6);

// Max deviation between J_{x<-p} J_{t<-p}^{-1} and the direct FD Jacobian of x(t).
double chart_chain_residual(const RationalCovering& cov, ChartId id, double fd_step = 1e-6);

// Sum rules: returns max residual of both identities over k.
double sum_rule_residual(const CVec& t, int m);

// Generic assembler for the prepotential of the chart's differential, evaluated at Phi0 point t.
// With t_ref, the log-type chart components follow the branch nearest to their values at t_ref.
cplx assembled_prepotential(const CVec& t, int m, ChartId id, const CVec* t_ref = nullptr);

// Matrix t^A(phi_B) symmetrized into the chart-independent Hessian (up to constants), at Phi0 point t;
// t_ref selects log branches as in assembled_prepotential.
std::vector<CVec> chart_hessian(const CVec& t, int m, const CVec* t_ref = nullptr);

} // namespace wdvv

#endif
