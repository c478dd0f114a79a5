// Associativity, unit (eta-recovery), Euler quasi-homogeneity and Hessian
// checks for prepotentials, plus seeded samplers of admissible points.
#ifndef WDVV_WDVV_VERIFIER_HPP
#define WDVV_WDVV_VERIFIER_HPP

#include "wdvv/hurwitz_g0.hpp"
#include "wdvv/numdiff.hpp"
#include "wdvv/prepotential_zoo.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wdvv {

enum class Check { Associativity, EtaRecovery, Quasihomogeneity, HessianConsistency };

std::string check_name(Check c); // "wdvv.assoc", "wdvv.eta", "wdvv.homog", "wdvv.hessian"

struct Sample {
    CVec t;                       // point in the family's own coordinates
    std::optional<cplx> tau_seed; // true modulus for inverse-function families
    CVec phi0;                    // Phi0 coordinates of the same covering (genus-0 charts)
};

// Step sizes per derivative order; third derivatives need a wider step
// to keep roundoff below the unit-slice tolerance.
struct VerifierOptions {
    DerivSpec third{1e-2, 3, StepScale::Relative};
    DerivSpec unit{2e-2, 2, StepScale::Relative}; // constant unit slices are roundoff-limited
    DerivSpec second{1e-2, 3, StepScale::Relative};
    DerivSpec first{1e-2, 3, StepScale::Relative};
    SeriesControl ctl;
};

// Generic checks on an arbitrary function with metadata.
double associativity_residual(const ScalarFn& f, const CVec& t, const std::vector<CVec>& eta,
                              const DerivSpec& spec);
double eta_residual(const ScalarFn& f, const CVec& t, const FamilyMetadata& md, const DerivSpec& spec);
double homogeneity_residual(const ScalarFn& f, const CVec& t, const FamilyMetadata& md,
                            const DerivSpec& spec);

// Family-level checks.
double check_associativity(const Family& fam, const Sample& s, const VerifierOptions& opt = {});
double check_eta_recovery(const Family& fam, const Sample& s, const VerifierOptions& opt = {});
double check_quasihomogeneity(const Family& fam, const Sample& s, const VerifierOptions& opt = {});
double check_hessian_consistency(const Family& fam, const Sample& s, const VerifierOptions& opt = {});

// Third-tensor agreement of the generic genus-0 assembler with the closed form
// of a G0_Phi0 / G0_PhiJ / G0_Phi2mJ family, relative to max(1, max entry).
double assembler_residual(const Family& fam, const Sample& s, const VerifierOptions& opt = {});

bool has_hessian_reference(const Family& fam);
std::vector<Check> applicable_checks(const Family& fam);
double default_tolerance(const Family& fam, Check c);

struct WdvvCheckResult {
    Check check;
    double residual;
    double tolerance;
    bool pass;
};

std::vector<WdvvCheckResult> verify_point(const Family& fam, const Sample& s,
                                          const VerifierOptions& opt = {});

// Admissible sample number `index` of the family for a campaign seed;
// reproducible and independent of evaluation order.
Sample sample_point(const Family& fam, std::uint64_t seed, int index, const SeriesControl& ctl = {});

// Admissible rational covering of degree m + 1: |a_k| in [0.5, 1.5] pairwise 0.3 apart,
// b_k = (1 + 0.3 w)/(m + 1) with |w| <= 1.
RationalCovering sample_covering(std::uint64_t seed, std::uint64_t stream, int index, int m);

// Deterministic 64-bit FNV-1a of a string, used to split RNG streams.
std::uint64_t stream_id(const std::string& s);

} // namespace wdvv

#endif
