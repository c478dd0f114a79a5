// Finite-difference tensors on polynomials and exponentials.
#include "wdvv/numdiff.hpp"

#include <doctest.h>

#include <cmath>

using namespace wdvv;

TEST_CASE("third derivative of t1^2 t2 is exact")
{
    const ScalarFn f = [](const CVec& t) { return t[0] * t[0] * t[1]; };
    for (const CVec& p : {CVec{0.3, -0.7}, CVec{cplx{1.2, 0.4}, cplx{-2.0, 1.0}}}) {
        // Central differences have no truncation error on cubics; a wide step keeps roundoff small.
        const Tensor T = derivative_tensor(f, p, 3, {5e-2, 1, StepScale::Absolute}).value;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    const int ones = (i == 0) + (j == 0) + (k == 0);
                    const double want = ones == 2 ? 2.0 : 0.0;
                    CHECK(std::abs(T.at(i, j, k) - want) <= 1e-9);
                }
    }
}

TEST_CASE("constant functions have zero derivative tensors")
{
    const ScalarFn f = [](const CVec&) { return cplx{3.5, -1.0}; };
    for (int order = 1; order <= 3; ++order) {
        const Tensor T = derivative_tensor(f, {0.1, 0.2, 0.3}, order).value;
        CHECK(T.max_abs() == 0.0);
    }
}

TEST_CASE("Hessian of exp(t1 + 2 t2)")
{
    const ScalarFn f = [](const CVec& t) { return std::exp(t[0] + 2.0 * t[1]); };
    const CVec p{0.1, -0.2};
    const Tensor H = derivative_tensor(f, p, 2).value;
    const cplx e = std::exp(p[0] + 2.0 * p[1]);
    const double w[2][2] = {{1, 2}, {2, 4}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(H.at(i, j) - w[i][j] * e) / std::abs(w[i][j] * e) <= 1e-8);
}

TEST_CASE("gradient and third tensor of a holomorphic function")
{
    const ScalarFn f = [](const CVec& t) { return std::sin(t[0]) * std::exp(t[1]); };
    const CVec p{cplx{0.4, 0.1}, cplx{-0.3, 0.2}};
    const Tensor g = derivative_tensor(f, p, 1).value;
    CHECK(std::abs(g.at(0) - std::cos(p[0]) * std::exp(p[1])) <= 1e-9);
    CHECK(std::abs(g.at(1) - std::sin(p[0]) * std::exp(p[1])) <= 1e-9);
    const Tensor T = derivative_tensor(f, p, 3, {1e-2, 3, StepScale::Relative}).value;
    CHECK(std::abs(T.at(0, 0, 1) + std::sin(p[0]) * std::exp(p[1])) <= 1e-7);
    CHECK(std::abs(T.at(0, 1, 0) - T.at(1, 0, 0)) == 0.0);
}

TEST_CASE("halving the step leaves the result stable")
{
    const ScalarFn f = [](const CVec& t) { return std::log(t[0]) * t[1] * t[1] + t[0] * t[0] * t[0] * t[1]; };
    const CVec p{cplx{1.1, 0.3}, cplx{0.6, -0.4}};
    const Tensor a = derivative_tensor(f, p, 3, {1e-2, 3, StepScale::Relative}).value;
    const Tensor b = derivative_tensor(f, p, 3, {5e-3, 3, StepScale::Relative}).value;
    double d = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        d = std::max(d, std::abs(a.data[i] - b.data[i]));
    CHECK(d <= 1e-6);
}

TEST_CASE("Richardson error estimate and evaluation count")
{
    const ScalarFn f = [](const CVec& t) { return std::exp(t[0]); };
    const DerivResult r1 = derivative_tensor(f, {0.0}, 1, {1e-2, 1, StepScale::Absolute});
    CHECK(r1.error_estimate == 0.0);
    const DerivResult r3 = derivative_tensor(f, {0.0}, 1, {1e-2, 3, StepScale::Absolute});
    CHECK(r3.error_estimate > 0.0);
    CHECK(std::abs(r3.value.at(0) - 1.0) <= 1e-12);
    CHECK(r3.evaluations > r1.evaluations);
}

TEST_CASE("DerivSpec validation")
{
    CHECK_THROWS_AS((DerivSpec{0.0, 2, StepScale::Relative}.validate()), DomainError);
    CHECK_THROWS_AS((DerivSpec{0.2, 2, StepScale::Relative}.validate()), DomainError);
    CHECK_THROWS_AS((DerivSpec{1e-3, 4, StepScale::Relative}.validate()), DomainError);
    const ScalarFn f = [](const CVec& t) { return t[0]; };
    CHECK_THROWS_AS(derivative_tensor(f, {0.0}, 4), DomainError);
}

TEST_CASE("stencil failures are reported")
{
    const ScalarFn bad = [](const CVec& t) -> cplx {
        if (t[0].real() > 0.0)
            throw DomainError("outside");
        return t[0];
    };
    CHECK_THROWS_AS(derivative_tensor(bad, {0.0}, 1), StencilError);
    const ScalarFn inf = [](const CVec& t) { return 1.0 / (t[0] - t[0]); };
    CHECK_THROWS_AS(derivative_tensor(inf, {0.0}, 1), StencilError);
}
