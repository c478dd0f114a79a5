// Genus-0 covering kernel.
#include "wdvv/hurwitz_g0.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace wdvv {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

using Poly = CVec; // ascending coefficients

Poly poly_mul(const Poly& p, const Poly& q)
{
    Poly r(p.size() + q.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            r[i + j] += p[i] * q[j];
    return r;
}

cplx poly_eval(const Poly& p, cplx z, cplx* deriv = nullptr)
{
    cplx v{0.0, 0.0};
    cplx d{0.0, 0.0};
    for (std::size_t i = p.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + p[i];
    }
    if (deriv)
        *deriv = d;
    return v;
}

// Shift each log-type component by a multiple of 2 pi i towards ref.
void branch_match(CVec& v, const CVec& ref)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double k = std::round((ref[i].imag() - v[i].imag()) / kTwoPi);
        v[i] += cplx{0.0, kTwoPi * k};
    }
}

cplx branch_log(cplx z, cplx ref, const char* what)
{
    cplx l = log_checked(z, what);
    const double k = std::round((ref.imag() - l.imag()) / kTwoPi);
    return l + cplx{0.0, kTwoPi * k};
}

double max_abs(const CVec& v)
{
    double m = 0.0;
    for (const auto& x : v)
        m = std::max(m, std::abs(x));
    return m;
}

void check_degeneracy(const BranchData& bd, double root_tol)
{
    const std::size_t n = bd.alpha.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(bd.alpha[i]) < 10.0 * root_tol)
            throw DegenerateCovering("critical point at the origin");
        if (std::abs(bd.lambda2nd[i]) < 10.0 * root_tol)
            throw DegenerateCovering("critical point is not simple");
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sa = std::max(1.0, std::max(std::abs(bd.alpha[i]), std::abs(bd.alpha[j])));
            if (std::abs(bd.alpha[i] - bd.alpha[j]) < 10.0 * root_tol * sa)
                throw DegenerateCovering("colliding critical points");
            const double sl = std::max(1.0, std::max(std::abs(bd.lambda[i]), std::abs(bd.lambda[j])));
            if (std::abs(bd.lambda[i] - bd.lambda[j]) < 10.0 * root_tol * sl)
                throw DegenerateCovering("colliding branch points");
        }
    }
}

// Newton on lambda'(z) = 0, which shares its roots with f_{2m}.
cplx polish_root(const RationalCovering& cov, cplx z, int iters)
{
    for (int it = 0; it < iters; ++it) {
        const cplx d2 = cov.lambda_second(z);
        if (d2 == cplx{0.0, 0.0})
            break;
        const cplx step = cov.lambda_prime(z) / d2;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z)))
            break;
    }
    return z;
}

BranchData finish(const RationalCovering& cov, CVec alpha, double root_tol)
{
    const Poly f = critical_polynomial(cov);
    const double fnorm = max_abs(f);
    BranchData bd;
    for (auto& z : alpha) {
        if (std::abs(z) < 10.0 * root_tol)
            throw DegenerateCovering("critical point at the origin");
        if (std::abs(poly_eval(f, z)) > root_tol * fnorm * std::max(1.0, std::pow(std::abs(z), f.size() - 1)))
            throw DegenerateCovering("critical point residual above root_tol");
        bd.alpha.push_back(z);
        bd.lambda.push_back(cov.lambda(z));
        bd.lambda2nd.push_back(cov.lambda_second(z));
    }
    check_degeneracy(bd, root_tol);
    return bd;
}

// Components of the chart j as a 2m vector, 1-based accessors.
struct Charts {
    int m;
    std::vector<CVec> X, Y; // X[k-1][i-1] = x_{k,i}
    cplx x(int k, int i) const { return X[k - 1][i - 1]; }
    cplx y(int k, int i) const { return Y[k - 1][i - 1]; }
};

// With t_ref, the log components x_{k,1..m} are moved to the branch nearest their values at t_ref.
Charts all_charts(const CVec& t, int m, const CVec* t_ref = nullptr)
{
    Charts c{m, {}, {}};
    for (int k = 1; k <= m; ++k) {
        c.X.push_back(chart_from_phi0(t, m, {ChartKind::PhiJ, k}));
        c.Y.push_back(chart_from_phi0(t, m, {ChartKind::Phi2mJ, k}));
        if (t_ref) {
            const CVec r = chart_from_phi0(*t_ref, m, {ChartKind::PhiJ, k});
            CVec head(c.X.back().begin(), c.X.back().begin() + m);
            branch_match(head, CVec(r.begin(), r.begin() + m));
            std::copy(head.begin(), head.end(), c.X.back().begin());
        }
    }
    return c;
}

Eigen::MatrixXcd to_matrix(const std::vector<CVec>& cols, int rows)
{
    Eigen::MatrixXcd M(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        for (int r = 0; r < rows; ++r)
            M(r, c) = cols[c][r];
    return M;
}

struct ParamJacobians {
    Eigen::MatrixXcd lambda; // d lambda_j / d p_i
    Eigen::MatrixXcd chart;  // d c_A / d p_i
    BranchData bd;
};

ParamJacobians param_jacobians(const RationalCovering& cov, ChartId id, double fd_step)
{
    const int m = cov.m;
    const int n = 2 * m;
    CVec p(n);
    for (int k = 0; k < m; ++k) {
        p[k] = cov.a[k];
        p[m + k] = cov.b[k + 1];
    }
    ParamJacobians J;
    J.bd = critical_data(cov);
    const CVec c0 = flat_chart(cov, id).coords;
    std::vector<CVec> dl, dc;
    for (int i = 0; i < n; ++i) {
        const double h = fd_step * std::max(1.0, std::abs(p[i]));
        CVec pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        auto side = [&](const CVec& q, CVec& lam, CVec& ch) {
            const auto cv = RationalCovering::from_params(CVec(q.begin(), q.begin() + m), CVec(q.begin() + m, q.end()));
            lam = critical_data_from(cv, J.bd.alpha).lambda;
            ch = flat_chart(cv, id).coords;
            branch_match(ch, c0);
        };
        CVec lp, lm, cp, cm;
        side(pp, lp, cp);
        side(pm, lm, cm);
        CVec gl(n), gc(n);
        for (int r = 0; r < n; ++r) {
            gl[r] = (lp[r] - lm[r]) / (2.0 * h);
            gc[r] = (cp[r] - cm[r]) / (2.0 * h);
        }
        dl.push_back(gl);
        dc.push_back(gc);
    }
    J.lambda = to_matrix(dl, n);
    J.chart = to_matrix(dc, n);
    return J;
}

double condition_number(const Eigen::MatrixXcd& M)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

} // namespace

RationalCovering RationalCovering::from_params(const CVec& a, const CVec& b_rest)
{
    if (a.size() != b_rest.size())
        throw DomainError("covering: a and b must have the same length");
    RationalCovering c;
    c.m = static_cast<int>(a.size());
    c.a = a;
    cplx s{0.0, 0.0};
    for (const auto& v : b_rest)
        s += v;
    c.b.push_back(1.0 - s);
    c.b.insert(c.b.end(), b_rest.begin(), b_rest.end());
    c.validate();
    return c;
}

void RationalCovering::validate() const
{
    if (m < 2)
        throw DomainError("covering: m must be at least 2");
    if (static_cast<int>(a.size()) != m || static_cast<int>(b.size()) != m + 1)
        throw DomainError("covering: expected m poles and m+1 residues");
    cplx s{0.0, 0.0};
    for (const auto& v : b) {
        if (v == cplx{0.0, 0.0})
            throw DomainError("covering: residues must be nonzero");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw DomainError("covering: residues must sum to 1");
    for (int i = 0; i < m; ++i) {
        if (a[i] == cplx{0.0, 0.0})
            throw DomainError("covering: poles must be nonzero");
        for (int j = i + 1; j < m; ++j)
            if (a[i] == a[j])
                throw DomainError("covering: poles must be distinct");
    }
}

cplx RationalCovering::lambda(cplx z) const
{
    cplx v = b[0] / z;
    for (int k = 0; k < m; ++k)
        v += b[k + 1] / (z - a[k]);
    return v;
}

cplx RationalCovering::lambda_prime(cplx z) const
{
    cplx v = -b[0] / (z * z);
    for (int k = 0; k < m; ++k) {
        const cplx d = z - a[k];
        v -= b[k + 1] / (d * d);
    }
    return v;
}

cplx RationalCovering::lambda_second(cplx z) const
{
    cplx v = 2.0 * b[0] / (z * z * z);
    for (int k = 0; k < m; ++k) {
        const cplx d = z - a[k];
        v += 2.0 * b[k + 1] / (d * d * d);
    }
    return v;
}

CVec critical_polynomial(const RationalCovering& cov)
{
    cov.validate();
    const int m = cov.m;
    CVec poles{cplx{0.0, 0.0}};
    poles.insert(poles.end(), cov.a.begin(), cov.a.end());
    Poly total(2 * m + 1, cplx{0.0, 0.0});
    for (int k = 0; k <= m; ++k) {
        Poly p{cov.b[k]};
        for (int j = 0; j <= m; ++j)
            if (j != k)
                p = poly_mul(p, Poly{-poles[j], 1.0});
        for (int j = 0; j <= m; ++j)
            if (j != k)
                p = poly_mul(p, Poly{-poles[j], 1.0});
        for (std::size_t i = 0; i < p.size(); ++i)
            total[i] += p[i];
    }
    const cplx lead = total.back();
    for (auto& c : total)
        c /= lead;
    return total;
}

BranchData critical_data(const RationalCovering& cov, double root_tol)
{
    const Poly f = critical_polynomial(cov);
    const int n = static_cast<int>(f.size()) - 1;
    // Aberth iteration from a rotated circle inside the Fujiwara bound.
    double R = 0.0;
    for (int k = 1; k <= n; ++k)
        R = std::max(R, std::pow(std::abs(f[n - k]), 1.0 / k));
    R = std::max(R, 1e-3);
    CVec z(n);
    for (int k = 0; k < n; ++k)
        z[k] = R * std::exp(kI * (kTwoPi * k / n + 0.4));
    bool converged = false;
    for (int it = 0; it < 1000 && !converged; ++it) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx dp;
            const cplx p = poly_eval(f, z[k], &dp);
            if (p == cplx{0.0, 0.0})
                continue;
            const cplx w = p / dp;
            cplx s{0.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != k)
                    s += 1.0 / (z[k] - z[j]);
            const cplx delta = w / (1.0 - w * s);
            z[k] -= delta;
            worst = std::max(worst, std::abs(delta) / std::max(1.0, std::abs(z[k])));
        }
        converged = worst < 1e-12;
    }
    if (!converged)
        throw NonConvergent("critical_data: simultaneous iteration did not converge");
    for (auto& r : z)
        r = polish_root(cov, r, 4);
    return finish(cov, z, root_tol);
}

BranchData critical_data_from(const RationalCovering& cov, const CVec& alpha_seed, double root_tol)
{
    CVec z = alpha_seed;
    for (auto& r : z)
        r = polish_root(cov, r, 50);
    return finish(cov, z, root_tol);
}

std::string ChartId::name() const
{
    switch (kind) {
    case ChartKind::Phi0: return "Phi0";
    case ChartKind::PhiJ: return "PhiJ(" + std::to_string(j) + ")";
    case ChartKind::Phi2mJ: return "Phi2mJ(" + std::to_string(j) + ")";
    }
    return "?";
}

CVec phi0_coords(const RationalCovering& cov)
{
    cov.validate();
    const int m = cov.m;
    CVec t(2 * m);
    const cplx lb0 = log_checked(cov.b[0], "t_s (b0)");
    for (int s = 1; s <= m; ++s) {
        t[s - 1] = lb0 - log_checked(cov.a[s - 1], "t_s (a_s)");
        t[2 * m - s] = -cov.b[s] / cov.a[s - 1];
    }
    return t;
}

CVec chart_from_phi0(const CVec& t, int m, ChartId id)
{
    if (static_cast<int>(t.size()) != 2 * m)
        throw DomainError("chart: expected 2m coordinates");
    const int N = 2 * m + 1;
    auto T = [&](int i) { return t[i - 1]; };
    if (id.kind == ChartKind::Phi0)
        return t;
    const int k = id.j;
    if (k < 1 || k > m)
        throw DomainError("chart: j must lie in 1..m");
    CVec e(m + 1);
    for (int s = 1; s <= m; ++s)
        e[s] = std::exp(T(s));
    CVec c(2 * m);
    if (id.kind == ChartKind::PhiJ) {
        cplx rest{0.0, 0.0};
        for (int s = 1; s <= m; ++s) {
            if (s == k)
                continue;
            const cplx d = e[s] - e[k];
            c[s - 1] = log_checked(d, "x_{k,s}");
            c[N - s - 1] = T(N - s) * e[s] / d;
            rest += c[N - s - 1];
        }
        c[k - 1] = T(k) + log_checked(T(N - k), "x_{k,k}");
        cplx sum_v{0.0, 0.0};
        for (int s = 1; s <= m; ++s)
            sum_v += T(N - s);
        c[N - k - 1] = e[k] + sum_v - rest;
        return c;
    }
    // Phi2mJ
    cplx rest{0.0, 0.0};
    for (int s = 1; s <= m; ++s) {
        if (s == k)
            continue;
        const cplx d = e[k] - e[s];
        if (d == cplx{0.0, 0.0})
            throw DomainError("chart: coinciding e^{t_s}");
        c[s - 1] = T(N - k) * e[k] / d;
        c[N - s - 1] = T(N - k) * T(N - s) * e[k] * e[s] / (d * d);
        rest += c[N - s - 1];
    }
    c[k - 1] = chart_from_phi0(t, m, {ChartKind::PhiJ, k})[N - k - 1];
    c[N - k - 1] = T(N - k) * e[k] - rest;
    return c;
}

CVec phi0_from_chart(const CVec& c, int m, ChartId id, const CVec& t_ref)
{
    if (id.kind == ChartKind::Phi0)
        return c;
    const int N = 2 * m + 1;
    const int j = id.j;
    if (j < 1 || j > m || static_cast<int>(c.size()) != 2 * m)
        throw DomainError("phi0_from_chart: bad chart");
    auto C = [&](int i) { return c[i - 1]; };
    const cplx P = id.kind == ChartKind::PhiJ ? std::exp(C(j)) : [&] {
        cplx s{0.0, 0.0};
        for (int k = 1; k <= m; ++k)
            s += C(N - k);
        return s;
    }();

    // e^{t_s} for s != j as a function of E = e^{t_j}, and t_{2m+1-s}.
    auto Es = [&](cplx E, int s) {
        return id.kind == ChartKind::PhiJ ? E + std::exp(C(s)) : E - P / C(s);
    };
    auto tdual = [&](cplx E, int s) {
        if (s == j)
            return P / E;
        if (id.kind == ChartKind::PhiJ)
            return C(N - s) * std::exp(C(s)) / Es(E, s);
        return C(N - s) * P / (C(s) * C(s) * Es(E, s));
    };
    auto g = [&](cplx E, cplx* dg) {
        cplx v = E + P / E;
        cplx d = 1.0 - P / (E * E);
        for (int s = 1; s <= m; ++s) {
            if (s == j)
                continue;
            const cplx es = Es(E, s);
            if (id.kind == ChartKind::PhiJ) {
                const cplx num = C(N - s) * std::exp(C(s));
                v += num / es - C(N - s);
                d -= num / (es * es);
            } else {
                const cplx num = C(N - s) * P / (C(s) * C(s));
                v += num / es + C(N - s) / C(s);
                d -= num / (es * es);
            }
        }
        v -= id.kind == ChartKind::PhiJ ? C(N - j) : C(j);
        *dg = d;
        return v;
    };

    cplx E = std::exp(t_ref[j - 1]);
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
        cplx d;
        const cplx v = g(E, &d);
        if (d == cplx{0.0, 0.0} || !std::isfinite(std::abs(v)))
            break;
        const cplx step = v / d;
        E -= step;
        if (std::abs(step) <= 1e-15 * std::abs(E)) {
            ok = true;
            break;
        }
    }
    if (!ok || E == cplx{0.0, 0.0})
        throw InversionError("phi0_from_chart: Newton solve for e^{t_j} failed");
    CVec t(2 * m);
    for (int s = 1; s <= m; ++s) {
        const cplx es = s == j ? E : Es(E, s);
        t[s - 1] = branch_log(es, t_ref[s - 1], "e^{t_s}");
        t[N - s - 1] = tdual(E, s);
    }
    return t;
}

RationalCovering covering_from_phi0(const CVec& t, int m)
{
    const int N = 2 * m + 1;
    cplx D = 1.0;
    for (int r = 1; r <= m; ++r)
        D -= t[N - r - 1] * std::exp(-t[r - 1]);
    if (D == cplx{0.0, 0.0})
        throw DomainError("covering_from_phi0: 1 - sum t e^{-t} vanishes");
    const cplx b0 = 1.0 / D;
    CVec a(m), b(m);
    for (int k = 1; k <= m; ++k) {
        a[k - 1] = b0 * std::exp(-t[k - 1]);
        b[k - 1] = -b0 * t[N - k - 1] * std::exp(-t[k - 1]);
    }
    return RationalCovering::from_params(a, b);
}

FlatChart flat_chart(const RationalCovering& cov, ChartId id)
{
    return {id, chart_from_phi0(phi0_coords(cov), cov.m, id)};
}

cplx diff_coeff(const RationalCovering& cov, DiffId d, cplx z)
{
    const int m = cov.m;
    if (d.index == 0)
        return -1.0 / z;
    if (d.index >= 1 && d.index <= m)
        return 1.0 / (z - cov.a[d.index - 1]) - 1.0 / z;
    if (d.index > m && d.index <= 2 * m) {
        const int k = 2 * m + 1 - d.index;
        const cplx w = z - cov.a[k - 1];
        return cov.b[k] / (w * w);
    }
    throw DomainError("diff_coeff: index out of range");
}

DiffId chart_differential(int m, ChartId id)
{
    switch (id.kind) {
    case ChartKind::Phi0: return {0};
    case ChartKind::PhiJ: return {id.j};
    case ChartKind::Phi2mJ: return {2 * m + 1 - id.j};
    }
    return {0};
}

cplx gram_pairing(const RationalCovering& cov, const BranchData& bd, DiffId A, DiffId B,
                  cplx beta1, cplx beta2)
{
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < bd.alpha.size(); ++j) {
        if (beta2 == cplx{0.0, 0.0} && bd.lambda[j] == cplx{0.0, 0.0})
            throw DomainError("gram_pairing: vanishing branch point with beta = (1, 0)");
        const cplx z = bd.alpha[j];
        s += (beta1 * bd.lambda[j] + beta2) * diff_coeff(cov, A, z) * diff_coeff(cov, B, z) / bd.lambda2nd[j];
    }
    return s;
}

std::vector<CVec> lambda_jacobian_fd(const RationalCovering& cov, ChartId id, double fd_step)
{
    const auto J = param_jacobians(cov, id, fd_step);
    const int n = 2 * cov.m;
    const double cond = condition_number(J.chart);
    if (cond > 1e10)
        throw SingularJacobian("chart Jacobian is numerically rank-deficient");
    const Eigen::MatrixXcd D = J.lambda * J.chart.inverse();
    std::vector<CVec> out(n, CVec(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            out[r][c] = D(r, c);
    return out;
}

JacobianCheck lambda_jacobian_residual(const RationalCovering& cov, ChartId id, double fd_step)
{
    const auto J = param_jacobians(cov, id, fd_step);
    const int n = 2 * cov.m;
    const int N = n + 1;
    JacobianCheck res{0.0, condition_number(J.chart)};
    if (res.condition > 1e10)
        throw SingularJacobian("chart Jacobian is numerically rank-deficient");
    const Eigen::MatrixXcd D = J.lambda * J.chart.inverse();
    const DiffId omega = chart_differential(cov.m, id);
    double diff = 0.0, scale = 1.0;
    for (int r = 0; r < n; ++r) {
        const cplx z = J.bd.alpha[r];
        const cplx fw = diff_coeff(cov, omega, z);
        for (int A = 1; A <= n; ++A) {
            const cplx closed = diff_coeff(cov, {N - A}, z) / fw;
            diff = std::max(diff, std::abs(D(r, A - 1) - closed));
            scale = std::max(scale, std::abs(closed));
        }
    }
    res.residual = diff / scale;
    return res;
}

double chart_chain_residual(const RationalCovering& cov, ChartId id, double fd_step)
{
    const int m = cov.m;
    const int n = 2 * m;
    const auto Jx = param_jacobians(cov, id, fd_step);
    const auto Jt = param_jacobians(cov, {ChartKind::Phi0, 0}, fd_step);
    if (condition_number(Jt.chart) > 1e10)
        throw SingularJacobian("Phi0 chart Jacobian is numerically rank-deficient");
    const Eigen::MatrixXcd chained = Jx.chart * Jt.chart.inverse();
    const CVec t = phi0_coords(cov);
    const CVec x0 = chart_from_phi0(t, m, id);
    double diff = 0.0, scale = 1.0;
    for (int A = 0; A < n; ++A) {
        const double h = fd_step * std::max(1.0, std::abs(t[A]));
        CVec tp = t, tm = t;
        tp[A] += h;
        tm[A] -= h;
        CVec xp = chart_from_phi0(tp, m, id), xm = chart_from_phi0(tm, m, id);
        branch_match(xp, x0);
        branch_match(xm, x0);
        for (int r = 0; r < n; ++r) {
            const cplx direct = (xp[r] - xm[r]) / (2.0 * h);
            diff = std::max(diff, std::abs(chained(r, A) - direct));
            scale = std::max(scale, std::abs(direct));
        }
    }
    return diff / scale;
}

double sum_rule_residual(const CVec& t, int m)
{
    const int N = 2 * m + 1;
    const Charts c = all_charts(t, m);
    cplx sum_v{0.0, 0.0};
    for (int s = 1; s <= m; ++s)
        sum_v += t[N - s - 1];
    double worst = 0.0;
    auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };
    for (int k = 1; k <= m; ++k) {
        cplx sx{0.0, 0.0}, sy_col{0.0, 0.0}, sy{0.0, 0.0};
        for (int s = 1; s <= m; ++s) {
            sx += c.x(k, N - s);
            sy_col += c.y(s, k);
            sy += c.y(k, N - s);
        }
        const cplx ek = std::exp(t[k - 1]);
        worst = std::max(worst, rel(sx, ek + sum_v));
        worst = std::max(worst, rel(sx, sy_col));
        worst = std::max(worst, rel(sy, t[N - k - 1] * ek));
        worst = std::max(worst, rel(sy, std::exp(c.x(k, k))));
    }
    return worst;
}

cplx assembled_prepotential(const CVec& t, int m, ChartId id, const CVec* t_ref)
{
    const int N = 2 * m + 1;
    const Charts c = all_charts(t, m, t_ref);
    double d = 0.0;
    CVec own;
    switch (id.kind) {
    case ChartKind::Phi0: own = t; break;
    case ChartKind::PhiJ: own = c.X[id.j - 1]; break;
    case ChartKind::Phi2mJ: own = c.Y[id.j - 1]; d = 1.0; break;
    }
    // E.t^a for the chart's own flat coordinates.
    auto Et = [&](int a) -> cplx {
        switch (id.kind) {
        case ChartKind::Phi0: return a <= m ? cplx{1.0, 0.0} : own[a - 1];
        case ChartKind::PhiJ: return a <= m ? cplx{a == id.j ? 2.0 : 1.0, 0.0} : own[a - 1];
        case ChartKind::Phi2mJ: return a <= m ? own[a - 1] : 2.0 * own[a - 1];
        }
        return 0.0;
    };
    cplx s1{0.0, 0.0}, s2{0.0, 0.0}, s3{0.0, 0.0};
    for (int k = 1; k <= m; ++k)
        for (int s = 1; s <= m; ++s) {
            s1 += Et(k) * Et(s) * c.y(k, N - s);
            s2 += Et(s) * Et(N - k) * c.x(k, N - s);
            s3 += Et(N - k) * Et(N - s) * c.x(k, s);
        }
    return s1 / (2.0 * (1.0 + d) * (2.0 + d)) +
           (2.0 * d + 3.0) / (2.0 * (1.0 + d) * (1.0 + d) * (2.0 + d)) * s2 +
           s3 / (2.0 * (1.0 + d) * (1.0 + d));
}

std::vector<CVec> chart_hessian(const CVec& t, int m, const CVec* t_ref)
{
    const int n = 2 * m;
    const int N = n + 1;
    const Charts c = all_charts(t, m, t_ref);
    // T(A, B) = t^A(phi_B)
    auto T = [&](int A, int B) {
        return B <= m ? c.x(B, A) : c.y(N - B, A);
    };
    std::vector<CVec> H(n, CVec(n));
    for (int A = 1; A <= n; ++A)
        for (int B = 1; B <= n; ++B)
            H[A - 1][B - 1] = 0.5 * (T(N - A, N - B) + T(N - B, N - A));
    return H;
}

} // namespace wdvv
