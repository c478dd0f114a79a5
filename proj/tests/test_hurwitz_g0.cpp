// Genus-0 coverings: critical data, charts, Gram pairings and Jacobians.
#include "wdvv/hurwitz_g0.hpp"
#include "wdvv/prepotential_zoo.hpp"
#include "wdvv/wdvv_verifier.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace wdvv;

namespace {

RationalCovering symmetric_covering()
{
    return RationalCovering::from_params({1.0, -1.0}, {1.0 / 3.0, 1.0 / 3.0});
}

// Roots of a monic polynomial (lowest degree first) as companion eigenvalues.
CVec companion_roots(const CVec& c)
{
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        M(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        M(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    CVec r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return r;
}

double set_distance(const CVec& a, const CVec& b)
{
    double worst = 0.0;
    for (const auto& x : a) {
        double best = INFINITY;
        for (const auto& y : b)
            best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("critical points match the companion eigenvalues")
{
    const RationalCovering cov = symmetric_covering();
    const BranchData bd = critical_data(cov);
    REQUIRE(bd.alpha.size() == 4);
    const CVec ref = companion_roots(critical_polynomial(cov));
    CHECK(set_distance(bd.alpha, ref) <= 1e-10);
    CHECK(set_distance(ref, bd.alpha) <= 1e-10);
}

TEST_CASE("real coverings have conjugation-closed critical sets")
{
    const RationalCovering cov = RationalCovering::from_params({1.3, -0.6, 0.8}, {0.2, 0.3, 0.25});
    const BranchData bd = critical_data(cov);
    CHECK(bd.alpha.size() == 6);
    CVec conj;
    for (auto z : bd.alpha)
        conj.push_back(std::conj(z));
    CHECK(set_distance(conj, bd.alpha) <= 1e-10);
}

TEST_CASE("degree and residuals on sampled coverings")
{
    for (int m : {2, 3, 4})
        for (int i = 0; i < 5; ++i) {
            const RationalCovering cov = sample_covering(11, 3, i, m);
            const BranchData bd = critical_data(cov);
            CHECK(static_cast<int>(bd.alpha.size()) == 2 * m);
            for (std::size_t j = 0; j < bd.alpha.size(); ++j) {
                CHECK(std::abs(cov.lambda_prime(bd.alpha[j])) <= 1e-9 * std::max(1.0, std::abs(bd.lambda[j])));
                CHECK(std::abs(bd.lambda2nd[j]) > 0.0);
            }
        }
}

TEST_CASE("covering invariants are enforced")
{
    CHECK_THROWS_AS(RationalCovering::from_params({1.0, 1.0}, {0.3, 0.3}), DomainError);
    CHECK_THROWS_AS(RationalCovering::from_params({0.0, 1.0}, {0.3, 0.3}), DomainError);
    CHECK_THROWS_AS(RationalCovering::from_params({1.0, -1.0}, {0.0, 0.3}), DomainError);
    CHECK_THROWS_AS(RationalCovering::from_params({1.0, -1.0}, {0.5, 0.5}), DomainError);
}

TEST_CASE("Phi0 chart of the symmetric covering")
{
    const CVec t = phi0_coords(symmetric_covering());
    const cplx l3 = std::log(1.0 / 3.0);
    CHECK(std::abs(t[0] - l3) <= 1e-15);
    CHECK(std::abs(t[1] - (l3 - kI * kPi)) <= 1e-15);
    CHECK(std::abs(t[2] - 1.0 / 3.0) <= 1e-15);
    CHECK(std::abs(t[3] + 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("chart sum rules")
{
    for (int m : {2, 3, 4})
        for (int i = 0; i < 4; ++i) {
            const CVec t = phi0_coords(sample_covering(5, 1, i, m));
            CHECK(sum_rule_residual(t, m) <= 1e-10);
            const int N = 2 * m + 1;
            for (int k = 1; k <= m; ++k) {
                const CVec x = chart_from_phi0(t, m, {ChartKind::PhiJ, k});
                const CVec y = chart_from_phi0(t, m, {ChartKind::Phi2mJ, k});
                cplx sx{0.0, 0.0}, sy{0.0, 0.0}, st{0.0, 0.0};
                for (int s = 1; s <= m; ++s) {
                    sx += x[N - s - 1];
                    sy += y[N - s - 1];
                    st += t[N - s - 1];
                }
                CHECK(std::abs(sx - std::exp(t[k - 1]) - st) <= 1e-12 * std::max(1.0, std::abs(sx)));
                CHECK(std::abs(sy - t[N - k - 1] * std::exp(t[k - 1])) <= 1e-12 * std::max(1.0, std::abs(sy)));
                CHECK(std::abs(sy - std::exp(x[k - 1])) <= 1e-12 * std::max(1.0, std::abs(sy)));
            }
        }
}

TEST_CASE("chart inversion and covering reconstruction round-trip")
{
    const RationalCovering cov = sample_covering(9, 2, 0, 3);
    const CVec t = phi0_coords(cov);
    for (int j = 1; j <= 3; ++j)
        for (ChartKind kind : {ChartKind::PhiJ, ChartKind::Phi2mJ}) {
            const CVec c = chart_from_phi0(t, 3, {kind, j});
            const CVec back = phi0_from_chart(c, 3, {kind, j}, t);
            for (int a = 0; a < 6; ++a)
                CHECK(std::abs(back[a] - t[a]) <= 1e-11 * std::max(1.0, std::abs(t[a])));
        }
    const RationalCovering rec = covering_from_phi0(t, 3);
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(rec.a[k] - cov.a[k]) <= 1e-12);
    for (int k = 0; k <= 3; ++k)
        CHECK(std::abs(rec.b[k] - cov.b[k]) <= 1e-12);
}

TEST_CASE("Gram pairing reproduces the anti-identity and intersection form")
{
    for (int m : {2, 3, 4})
        for (int i = 0; i < 3; ++i) {
            const RationalCovering cov = sample_covering(21, 7, i, m);
            const BranchData bd = critical_data(cov);
            const int n = 2 * m;
            for (int A = 1; A <= n; ++A)
                for (int B = 1; B <= n; ++B) {
                    const double want = A + B == n + 1 ? 1.0 : 0.0;
                    CHECK(std::abs(gram_pairing(cov, bd, {A}, {B}, 0.0, 1.0) - want) <= 1e-9);
                }
            for (int a = 1; a <= m; ++a)
                for (int b = 1; b <= m; ++b) {
                    const double want = a == b ? 2.0 : 1.0;
                    CHECK(std::abs(gram_pairing(cov, bd, {a}, {b}, 1.0, 0.0) - want) <= 1e-9);
                }
        }
}

TEST_CASE("branch-point Jacobians against the residue formula")
{
    for (int m : {2, 3})
        for (int i = 0; i < 3; ++i) {
            const RationalCovering cov = sample_covering(4, 8, i, m);
            CHECK(lambda_jacobian_residual(cov, {ChartKind::Phi0, 0}).residual <= 1e-5);
            for (int j = 1; j <= m; ++j) {
                CHECK(lambda_jacobian_residual(cov, {ChartKind::PhiJ, j}).residual <= 1e-5);
                CHECK(lambda_jacobian_residual(cov, {ChartKind::Phi2mJ, j}).residual <= 1e-5);
                CHECK(chart_chain_residual(cov, {ChartKind::PhiJ, j}) <= 1e-6);
                CHECK(chart_chain_residual(cov, {ChartKind::Phi2mJ, j}) <= 1e-6);
            }
        }
}

TEST_CASE("the unit field moves every branch point at unit speed")
{
    const int m = 2;
    const RationalCovering cov = sample_covering(3, 5, 1, m);
    const CVec t = phi0_coords(cov);
    Family f;
    f.kind = FamilyKind::G0_Phi0;
    f.m = m;
    const CVec e = family_metadata(f).unit_coeffs(t);
    const auto J = lambda_jacobian_fd(cov, {ChartKind::Phi0, 0});
    for (const auto& row : J) {
        cplx s{0.0, 0.0};
        for (int A = 0; A < 2 * m; ++A)
            s += row[A] * e[A];
        CHECK(std::abs(s - 1.0) <= 1e-6);
    }
}

TEST_CASE("chart Hessian is symmetric")
{
    const CVec t = phi0_coords(sample_covering(2, 2, 0, 3));
    const auto H = chart_hessian(t, 3);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(std::abs(H[a][b] - H[b][a]) == 0.0);
}

TEST_CASE("generic assembler agrees with the closed forms")
{
    for (const char* id : {"G0_Phi0(2)", "G0_PhiJ(2,1)", "G0_PhiJ(2,2)", "G0_Phi2mJ(2,1)", "G0_Phi2mJ(2,2)",
                           "G0_Phi0(3)", "G0_PhiJ(3,2)", "G0_Phi2mJ(3,3)"}) {
        const Family f = Family::parse(id);
        for (int i = 0; i < 3; ++i) {
            INFO(id << " sample " << i);
            CHECK(assembler_residual(f, sample_point(f, 17, i)) <= 1e-5);
        }
    }
}

TEST_CASE("degenerate charts raise")
{
    CHECK_THROWS_AS(chart_from_phi0({0.1, 0.1, 0.3, 0.2}, 2, {ChartKind::Phi2mJ, 1}), DomainError);
    CHECK_THROWS_AS(chart_from_phi0({0.1, 0.2, 0.3}, 2, {ChartKind::PhiJ, 1}), DomainError);
    CHECK_THROWS_AS(chart_from_phi0({0.1, 0.2, 0.3, 0.2}, 2, {ChartKind::PhiJ, 3}), DomainError);
}
