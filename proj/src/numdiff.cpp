// Composed central-difference stencils with Richardson extrapolation.
#include "wdvv/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wdvv {

namespace {

struct Node {
    std::vector<int> offset; // per variable, in units of the current step
    double weight;
};

// 1-D central stencil for a derivative of order r, step 1.
std::vector<std::pair<int, double>> stencil_1d(int r)
{
    switch (r) {
    case 1: return {{-1, -0.5}, {1, 0.5}};
    case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
    case 3: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
    default: throw DomainError("numdiff: unsupported stencil order");
    }
}

// Stencil of an ordered index tuple; consecutive repeats use the higher-order 1-D rule.
std::vector<Node> compose(const std::vector<int>& tuple, int n)
{
    std::vector<Node> nodes{{std::vector<int>(n, 0), 1.0}};
    std::size_t i = 0;
    while (i < tuple.size()) {
        std::size_t j = i;
        while (j < tuple.size() && tuple[j] == tuple[i])
            ++j;
        const int var = tuple[i];
        const auto st = stencil_1d(static_cast<int>(j - i));
        std::vector<Node> next;
        next.reserve(nodes.size() * st.size());
        for (const auto& nd : nodes)
            for (const auto& [off, w] : st) {
                Node m = nd;
                m.offset[var] += off;
                m.weight *= w;
                next.push_back(std::move(m));
            }
        nodes = std::move(next);
        i = j;
    }
    return nodes;
}

void all_tuples(int n, int order, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur(order, 0);
    for (;;) {
        out.push_back(cur);
        int p = order - 1;
        while (p >= 0 && ++cur[p] == n) {
            cur[p] = 0;
            --p;
        }
        if (p < 0)
            return;
    }
}

int flat_index(const std::vector<int>& tuple, int n)
{
    int idx = 0;
    for (int v : tuple)
        idx = idx * n + v;
    return idx;
}

} // namespace

void DerivSpec::validate() const
{
    if (!(base_step > 0.0 && base_step < 0.1))
        throw DomainError("DerivSpec: base_step must lie in (0, 0.1)");
    if (richardson_levels < 1 || richardson_levels > 3)
        throw DomainError("DerivSpec: richardson_levels must be 1, 2 or 3");
}

Tensor::Tensor(int n_, int rank_) : n(n_), rank(rank_)
{
    std::size_t size = 1;
    for (int r = 0; r < rank; ++r)
        size *= static_cast<std::size_t>(n);
    data.assign(size, cplx{0.0, 0.0});
}

double Tensor::max_abs() const
{
    double m = 0.0;
    for (const auto& v : data)
        m = std::max(m, std::abs(v));
    return m;
}

DerivResult derivative_tensor(const ScalarFn& f, const CVec& point, int order,
                              const DerivSpec& spec, double tol)
{
    spec.validate();
    if (order < 1 || order > 3)
        throw DomainError("derivative_tensor: order must be 1, 2 or 3");
    const int n = static_cast<int>(point.size());
    if (n == 0)
        throw DomainError("derivative_tensor: empty point");
    const int L = spec.richardson_levels;

    std::vector<double> h(n);
    for (int a = 0; a < n; ++a)
        h[a] = spec.base_step *
               (spec.per_variable_scale == StepScale::Relative ? std::max(1.0, std::abs(point[a])) : 1.0);

    // Node cache keyed by offsets in units of the finest step.
    std::map<std::vector<int>, cplx> cache;
    const int finest = 1 << (L - 1);
    auto eval = [&](const std::vector<int>& units) -> cplx {
        auto it = cache.find(units);
        if (it != cache.end())
            return it->second;
        CVec x = point;
        for (int a = 0; a < n; ++a)
            if (units[a] != 0)
                x[a] += h[a] * static_cast<double>(units[a]) / finest;
        cplx v;
        try {
            v = f(x);
        } catch (const Error& e) {
            throw StencilError(std::string("stencil node raised: ") + e.what());
        }
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw StencilError("stencil node returned a non-finite value");
        cache.emplace(units, v);
        return v;
    };

    std::vector<std::vector<int>> tuples;
    all_tuples(n, order, tuples);

    Tensor ordered(n, order);
    Tensor errs(n, order);
    std::vector<int> units(n);
    for (const auto& tup : tuples) {
        const auto nodes = compose(tup, n);
        double hprod = 1.0;
        for (int v : tup)
            hprod *= h[v];
        std::vector<cplx> R(L);
        for (int lvl = 0; lvl < L; ++lvl) {
            const int scale = 1 << (L - 1 - lvl);
            cplx acc{0.0, 0.0};
            for (const auto& nd : nodes) {
                for (int a = 0; a < n; ++a)
                    units[a] = nd.offset[a] * scale;
                acc += nd.weight * eval(units);
            }
            double hl = hprod;
            for (int r = 0; r < order; ++r)
                hl /= static_cast<double>(1 << lvl);
            R[lvl] = acc / hl;
        }
        // Richardson table over halvings; error terms are even powers of h.
        std::vector<std::vector<cplx>> T(L);
        T[0] = R;
        for (int k = 1; k < L; ++k) {
            const double p = std::pow(4.0, k);
            T[k].resize(L - k);
            for (int l = 0; l + k < L; ++l)
                T[k][l] = (p * T[k - 1][l + 1] - T[k - 1][l]) / (p - 1.0);
        }
        const int idx = flat_index(tup, n);
        ordered.data[idx] = T[L - 1][0];
        errs.data[idx] = L >= 2 ? cplx{std::abs(T[L - 1][0] - T[L - 2][1]), 0.0} : cplx{0.0, 0.0};
    }

    // Symmetrize by averaging each orbit of index orderings.
    DerivResult res{Tensor(n, order), 0.0, 0.0, 0};
    const double scale = std::max(1.0, ordered.max_abs());
    for (const auto& tup : tuples) {
        if (!std::is_sorted(tup.begin(), tup.end()))
            continue;
        std::vector<int> perm = tup;
        cplx sum{0.0, 0.0};
        double err = 0.0;
        int count = 0;
        const cplx ref = ordered.data[flat_index(tup, n)];
        do {
            const int idx = flat_index(perm, n);
            sum += ordered.data[idx];
            err = std::max(err, errs.data[idx].real());
            res.asymmetry = std::max(res.asymmetry, std::abs(ordered.data[idx] - ref) / scale);
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        const cplx avg = sum / static_cast<double>(count);
        perm = tup;
        do {
            res.value.data[flat_index(perm, n)] = avg;
        } while (std::next_permutation(perm.begin(), perm.end()));
        res.error_estimate = std::max(res.error_estimate, err);
    }
    res.evaluations = static_cast<int>(cache.size());
    if (tol > 0.0 && res.error_estimate > 10.0 * tol)
        throw UnstableError("derivative_tensor: Richardson levels disagree beyond 10x tolerance");
    return res;
}

} // namespace wdvv
