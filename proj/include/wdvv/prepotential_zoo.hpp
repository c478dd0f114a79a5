// Closed-form prepotentials with their metric, unit, Euler data and
// quadratic correction.
#ifndef WDVV_PREPOTENTIAL_ZOO_HPP
#define WDVV_PREPOTENTIAL_ZOO_HPP

#include "wdvv/special_fn.hpp"

#include <functional>
#include <optional>
#include <string>

namespace wdvv {

enum class FamilyKind {
    G0_Phi0,
    G0_PhiJ,
    G0_Phi2mJ,
    G0_M2_Remark,
    G1_Holo,
    G1_Holo_M1,
    G1_3D_Phi1,
    G1_3D_Phi2,
    G1_3D_Phi3,
    G1_3D_QPhi1,
    G1_Holo_Q
};

enum class RemarkVariant { F1, F2, F3 };

struct Family {
    FamilyKind kind = FamilyKind::G1_3D_Phi1;
    int m = 2;
    int j = 1;
    cplx q{0.0, 0.0};
    RemarkVariant variant = RemarkVariant::F1;

    int dim() const;
    std::string id() const;         // canonical CLI name with parameters
    static Family parse(const std::string& s); // DomainError on malformed names
    void validate() const;
};

struct EvalOptions {
    SeriesControl ctl;
    std::optional<cplx> tau_seed; // Newton seed for G1_3D_Phi2 / G1_3D_Phi3
};

cplx eval_prepotential(const Family& fam, const CVec& t, const EvalOptions& opt = {});

struct EulerTerm {
    double d; // E.t_a = d t_a + r
    double r;
};

struct FamilyMetadata {
    int N = 0;
    std::vector<CVec> eta;
    int unit_index = -1; // constant unit direction, or -1 when unit_coeffs applies
    std::function<CVec(const CVec&)> unit_coeffs;
    std::vector<EulerTerm> euler;
    double degree = 2.0;
    std::function<cplx(const CVec&)> quadratic;
};

FamilyMetadata family_metadata(const Family& fam);

// Arguments whose principal logarithm (or theta-ratio logarithm) the evaluator takes.
CVec log_arguments(const Family& fam, const CVec& t, const SeriesControl& ctl = {});

// Three flat charts of the 3D genus-one family (optionally q-deformed),
// tied by x2 = t3 + pi^2/2 t2^2 E(tau), x3 = y2 = i pi^3/3 t2^3 E'(tau), y3 = -pi^4/6 t2^4 E''(tau)
// with E = E_{q,2} and tau = 2 i pi t1 (tau_q for q != 0).
struct Genus1Triple {
    CVec t, x, y;
    cplx tau;
};

Genus1Triple triple_from_phi1(const CVec& t, cplx q = 0.0, const SeriesControl& ctl = {});
Genus1Triple triple_from_phi2(const CVec& x, cplx q, std::optional<cplx> tau_seed,
                              const SeriesControl& ctl = {});
Genus1Triple triple_from_phi3(const CVec& y, cplx q, std::optional<cplx> tau_seed,
                              const SeriesControl& ctl = {});

// tau with E'(tau) = w, resp. chi(tau) = E''^3/E'^4 = w (E = E_{q,2}); InversionError on failure.
cplx invert_e2_prime(cplx w, cplx q, std::optional<cplx> seed, const SeriesControl& ctl = {});
cplx invert_chi(cplx w, cplx q, std::optional<cplx> seed, const SeriesControl& ctl = {});

// Closed-form Hessian of the 3D families in their own coordinates.
std::vector<CVec> hessian_3d(const Family& fam, const Genus1Triple& tr);

} // namespace wdvv

#endif
