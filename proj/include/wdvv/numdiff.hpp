// Finite-difference derivative tensors of holomorphic functions C^N -> C
// with Richardson extrapolation over step halvings.
#ifndef WDVV_NUMDIFF_HPP
#define WDVV_NUMDIFF_HPP

#include "wdvv/types.hpp"

#include <functional>

namespace wdvv {

enum class StepScale {
    Relative, // h_a = base_step * max(1, |t_a|)
    Absolute  // h_a = base_step
};

struct DerivSpec {
    double base_step = 1e-3;
    int richardson_levels = 2;
    StepScale per_variable_scale = StepScale::Relative;

    void validate() const;
};

using ScalarFn = std::function<cplx(const CVec&)>;

// Dense symmetric tensor of rank 1..3 over n variables, row-major.
struct Tensor {
    int n = 0;
    int rank = 0;
    CVec data;

    Tensor() = default;
    Tensor(int n_, int rank_);
    cplx& at(int i) { return data[i]; }
    cplx& at(int i, int j) { return data[i * n + j]; }
    cplx& at(int i, int j, int k) { return data[(i * n + j) * n + k]; }
    cplx at(int i) const { return data[i]; }
    cplx at(int i, int j) const { return data[i * n + j]; }
    cplx at(int i, int j, int k) const { return data[(i * n + j) * n + k]; }
    double max_abs() const;
};

struct DerivResult {
    Tensor value;          // fully symmetrized
    double error_estimate; // |R[L-1][0] - R[L-2][1]|, max over entries; 0 when L = 1
    double asymmetry;      // max entry disagreement across index orderings before symmetrizing
    int evaluations;       // distinct stencil nodes evaluated
};

// Central-difference tensor of rank `order` at `point`.
// tol > 0 enables the Richardson agreement test (UnstableError if error > 10 tol).
DerivResult derivative_tensor(const ScalarFn& f, const CVec& point, int order,
                              const DerivSpec& spec = {}, double tol = 0.0);

} // namespace wdvv

#endif
