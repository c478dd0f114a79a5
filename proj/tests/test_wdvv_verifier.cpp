// Associativity, unit, Euler and Hessian checks.
#include "wdvv/campaign.hpp"
#include "wdvv/wdvv_verifier.hpp"

#include <doctest.h>

#include <cmath>

using namespace wdvv;

namespace {

std::vector<CVec> anti_diag(int n)
{
    std::vector<CVec> e(n, CVec(n));
    for (int a = 0; a < n; ++a)
        e[a][n - 1 - a] = 1.0;
    return e;
}

} // namespace

TEST_CASE("the free cubic is associative")
{
    const ScalarFn f = [](const CVec& t) { return 0.5 * t[0] * t[0] * t[2] + 0.5 * t[0] * t[1] * t[1]; };
    CHECK(associativity_residual(f, {0.3, cplx{0.1, 0.2}, -0.7}, anti_diag(3), {1e-2, 3, StepScale::Relative}) <=
          1e-9);
}

TEST_CASE("a non-associative function is detected")
{
    const ScalarFn f = [](const CVec& t) { return 0.5 * t[0] * t[0] * t[2] + 0.5 * t[0] * t[1] * t[1] + std::pow(t[2], 4); };
    CHECK(associativity_residual(f, {0.3, 0.1, -0.7}, anti_diag(3), {1e-2, 3, StepScale::Relative}) > 1e-3);
}

TEST_CASE("Euler operator on t1 t2 t3")
{
    FamilyMetadata md;
    md.N = 3;
    md.euler = {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    md.degree = 3.0;
    const ScalarFn f = [](const CVec& t) { return t[0] * t[1] * t[2]; };
    CHECK(homogeneity_residual(f, {0.4, cplx{-0.2, 0.5}, 1.1}, md, {1e-2, 3, StepScale::Relative}) <= 1e-14);
}

TEST_CASE("associativity at sampled points")
{
    for (const char* id : {"G0_Phi0(2)", "G1_Holo(1)", "G1_3D_Phi1"}) {
        const Family f = Family::parse(id);
        for (int i = 0; i < 3; ++i) {
            INFO(id << " sample " << i);
            CHECK(check_associativity(f, sample_point(f, 2, i)) <= 1e-5);
        }
    }
}

TEST_CASE("unit slices recover the metric")
{
    const Family p1 = Family::parse("G1_3D_Phi1"), h2 = Family::parse("G1_Holo(2)"), g0 = Family::parse("G0_Phi0(2)");
    for (int i = 0; i < 3; ++i) {
        CHECK(check_eta_recovery(p1, sample_point(p1, 4, i)) <= 1e-7);
        CHECK(check_eta_recovery(h2, sample_point(h2, 4, i)) <= 1e-7);
        CHECK(check_eta_recovery(g0, sample_point(g0, 4, i)) <= 1e-5);
    }
}

TEST_CASE("quasi-homogeneity")
{
    const Family p1 = Family::parse("G1_3D_Phi1"), y = Family::parse("G0_Phi2mJ(2,1)");
    for (int i = 0; i < 3; ++i) {
        CHECK(check_quasihomogeneity(p1, sample_point(p1, 6, i)) <= 1e-7);
        CHECK(check_quasihomogeneity(y, sample_point(y, 6, i)) <= 1e-6);
    }
}

TEST_CASE("3D Hessian entries against the Eisenstein closed forms")
{
    const Family p1 = Family::parse("G1_3D_Phi1");
    for (int i = 0; i < 3; ++i) {
        const Sample s = sample_point(p1, 9, i);
        const cplx tau = 2.0 * kI * kPi * s.t[0];
        const ModularPoint mp(tau);
        const cplx t2 = s.t[1];
        const cplx y3 = -std::pow(kPi, 4) / 6.0 * std::pow(t2, 4) * eisenstein(mp, Eisen::E2, 2);
        const cplx x3 = kI * std::pow(kPi, 3) / 3.0 * std::pow(t2, 3) * eisenstein(mp, Eisen::E2, 1);
        const ScalarFn f = [&](const CVec& t) { return eval_prepotential(p1, t); };
        const Tensor H = derivative_tensor(f, s.t, 2, {1e-2, 3, StepScale::Relative}).value;
        CHECK(std::abs(H.at(0, 0) - y3) <= 1e-6 * std::max(1.0, std::abs(y3)));
        CHECK(std::abs(H.at(0, 1) - x3) <= 1e-6 * std::max(1.0, std::abs(x3)));
        CHECK(check_hessian_consistency(p1, s) <= 1e-6);
    }
}

TEST_CASE("genus-0 Hessians against the chart matrix")
{
    for (const char* id : {"G0_Phi0(2)", "G0_Phi0(3)", "G0_PhiJ(2,1)", "G0_Phi2mJ(2,2)"}) {
        const Family f = Family::parse(id);
        for (int i = 0; i < 3; ++i) {
            INFO(id << " sample " << i);
            CHECK(check_hessian_consistency(f, sample_point(f, 10, i)) <= 1e-6);
        }
    }
    CHECK_THROWS_AS(check_hessian_consistency(Family::parse("G1_Holo(1)"), sample_point(Family::parse("G1_Holo(1)"), 1, 0)),
                    DomainError);
}

TEST_CASE("residuals are stable under step halving")
{
    for (const char* id : {"G0_Phi0(2)", "G1_Holo(1)", "G1_3D_Phi1", "G0_PhiJ(2,2)"}) {
        const Family f = Family::parse(id);
        const Sample s = sample_point(f, 13, 0);
        VerifierOptions half;
        half.third.base_step /= 2.0;
        half.unit.base_step /= 2.0;
        half.second.base_step /= 2.0;
        half.first.base_step /= 2.0;
        for (const auto& r : verify_point(f, s)) {
            INFO(id << " " << check_name(r.check));
            CHECK(r.pass);
        }
        for (const auto& r : verify_point(f, s, half)) {
            INFO(id << " halved " << check_name(r.check));
            CHECK(r.pass);
        }
    }
}

TEST_CASE("quadratic perturbations leave associativity unchanged")
{
    const Family f = Family::parse("G1_3D_Phi1");
    const Sample s = sample_point(f, 14, 1);
    const ScalarFn F = [&](const CVec& t) { return eval_prepotential(f, t); };
    const ScalarFn G = [&](const CVec& t) {
        return eval_prepotential(f, t) + cplx{0.3, -0.2} * t[0] * t[1] - 2.0 * t[2] * t[2] + cplx{0.0, 5.0} * t[1] + 7.0;
    };
    const DerivSpec spec{1e-2, 3, StepScale::Relative};
    const double a = associativity_residual(F, s.t, anti_diag(3), spec);
    const double b = associativity_residual(G, s.t, anti_diag(3), spec);
    // Equal up to finite-difference roundoff, which is far below the check tolerance.
    CHECK(std::abs(a - b) <= 1e-6);
    CHECK(b <= 1e-6);
}

TEST_CASE("the metric in checks is the family metadata")
{
    const Family f = Family::parse("G1_Holo(1)");
    const FamilyMetadata md = family_metadata(f);
    const Sample s = sample_point(f, 15, 0);
    const ScalarFn F = [&](const CVec& t) { return eval_prepotential(f, t); };
    CHECK(associativity_residual(F, s.t, md.eta, VerifierOptions{}.third) == check_associativity(f, s));
}

TEST_CASE("samplers are reproducible and index-addressed")
{
    const Family f = Family::parse("G0_PhiJ(2,1)");
    const Sample a = sample_point(f, 99, 4), b = sample_point(f, 99, 4), c = sample_point(f, 99, 5);
    CHECK(a.t == b.t);
    CHECK(a.t != c.t);
    CHECK(stream_id("abc") == stream_id("abc"));
    CHECK(stream_id("abc") != stream_id("abd"));
    const RationalCovering cov = sample_covering(1, 2, 3, 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(cov.a[k]) >= 0.5);
        CHECK(std::abs(cov.a[k]) <= 1.5);
    }
}

TEST_CASE("applicable checks and tolerances")
{
    CHECK(applicable_checks(Family::parse("G1_3D_Phi1")).size() == 4);
    CHECK(applicable_checks(Family::parse("G1_Holo(2)")).size() == 3);
    CHECK(default_tolerance(Family::parse("G1_3D_Phi1"), Check::Associativity) == 1e-6);
    CHECK(default_tolerance(Family::parse("G0_PhiJ(2,1)"), Check::EtaRecovery) == 1e-7);
    CHECK(check_name(Check::HessianConsistency) == "wdvv.hessian");
}
