// Prepotential evaluators and their verification metadata.
#include "wdvv/prepotential_zoo.hpp"

#include "wdvv/complex_io.hpp"
#include "wdvv/hurwitz_g0.hpp"

#include <algorithm>
#include <cmath>

namespace wdvv {

namespace {

constexpr double kPi2 = kPi * kPi;
constexpr double kPi3 = kPi2 * kPi;
constexpr double kPi4 = kPi2 * kPi2;

cplx theta(cplx u, const ModularPoint& mp, const SeriesControl& ctl)
{
    return theta1_jet(u, mp, 0, ctl)[0];
}

// E_{q,2} and its tau_q-derivatives; q = 0 reproduces the plain series.
std::array<cplx, 4> e2_jet(cplx tau, cplx q, const SeriesControl& ctl)
{
    return eisenstein_q_jet(tau, q, Eisen::E2, ctl);
}

// sum_k v_k^2 + 1/2 sum_{k != s} v_k v_s
cplx g0_quadratic(const CVec& v)
{
    cplx sq{0.0, 0.0}, s{0.0, 0.0};
    for (const auto& x : v) {
        sq += x * x;
        s += x;
    }
    return sq + 0.5 * (s * s - sq);
}

std::vector<CVec> antidiag(int n)
{
    std::vector<CVec> e(n, CVec(n, cplx{0.0, 0.0}));
    for (int i = 0; i < n; ++i)
        e[i][n - 1 - i] = 1.0;
    return e;
}

CVec phi0_unit(const CVec& t, int m)
{
    const int N = 2 * m + 1;
    cplx D = 1.0;
    for (int r = 1; r <= m; ++r)
        D -= t[N - r - 1] * std::exp(-t[r - 1]);
    CVec f(2 * m);
    for (int s = 1; s <= m; ++s) {
        const cplx e = std::exp(-t[s - 1]) / D;
        f[s - 1] = e;
        f[N - s - 1] = -t[N - s - 1] * e;
    }
    return f;
}

cplx g0_phi0(const CVec& t, int m)
{
    const int N = 2 * m + 1;
    auto T = [&](int i) { return t[i - 1]; };
    cplx f{0.0, 0.0};
    for (int k = 1; k <= m; ++k) {
        const cplx v = T(N - k);
        f += v * std::exp(T(k)) + 0.5 * v * v * (T(k) + log_checked(v, "t_{2m+1-k}"));
        for (int s = 1; s <= m; ++s)
            if (s != k)
                f += 0.5 * v * T(N - s) * log_checked(std::exp(T(s)) - std::exp(T(k)), "e^{t_s}-e^{t_k}");
    }
    return f;
}

cplx g0_phij(const CVec& x, int m, int j)
{
    const int N = 2 * m + 1;
    auto X = [&](int i) { return x[i - 1]; };
    cplx f = 0.5 * X(j) * X(N - j) * X(N - j) + std::exp(X(j));
    for (int k = 1; k <= m; ++k) {
        if (k == j)
            continue;
        const cplx v = X(N - k);
        f += X(N - j) * v * X(k);
        f += v * (std::exp(X(k)) - std::exp(X(j) - X(k)));
        f += 0.5 * v * v * (X(k) + log_checked(v, "x_{j,2m+1-k}"));
        for (int s = 1; s <= m; ++s)
            if (s != j && s != k)
                f += 0.5 * v * X(N - s) * log_checked(std::exp(X(s)) - std::exp(X(k)), "e^{x_s}-e^{x_k}");
    }
    return f;
}

cplx g0_phi2mj(const CVec& y, int m, int j)
{
    const int N = 2 * m + 1;
    auto Y = [&](int i) { return y[i - 1]; };
    cplx S{0.0, 0.0};
    for (int k = 1; k <= m; ++k)
        S += Y(N - k);
    cplx f = 0.5 * Y(j) * Y(j) * Y(N - j) + 0.5 * S * S * log_checked(S, "sum y_{j,2m+1-k}");
    for (int k = 1; k <= m; ++k) {
        for (int s = 1; s <= m; ++s)
            if (s != j)
                f -= Y(N - k) * Y(N - s) * log_checked(Y(s), "y_{j,s}");
        if (k == j)
            continue;
        f += Y(j) * Y(k) * Y(N - k) - 0.5 * Y(k) * Y(k) * Y(N - k);
        f += 0.5 * Y(N - k) * Y(N - k) * log_checked(Y(N - k), "y_{j,2m+1-k}");
        for (int s = 1; s <= m; ++s) {
            if (s == j || s == k)
                continue;
            f += 0.5 * Y(N - k) * Y(N - s) * log_checked(Y(s) - Y(k), "y_{j,s}-y_{j,k}");
            f -= Y(k) * Y(N - k) * Y(N - s) / (12.0 * (Y(k) - Y(s)));
        }
    }
    return f;
}

cplx remark(const CVec& c, RemarkVariant v)
{
    switch (v) {
    case RemarkVariant::F1: {
        const cplx t1 = c[0], t2 = c[1], t3 = c[2], t4 = c[3];
        return t4 * std::exp(t1) + t3 * std::exp(t2) +
               0.5 * (t4 * t4 * t1 + t4 * t4 * log_checked(t4, "t_4") + t3 * t3 * t2 + t3 * t3 * log_checked(t3, "t_3")) +
               t3 * t4 * log_checked(std::exp(t1) - std::exp(t2), "e^{t_1}-e^{t_2}") + 0.5 * kI * kPi * t3 * t4;
    }
    case RemarkVariant::F2: {
        const cplx x1 = c[0], x2 = c[1], x3 = c[2], x4 = c[3];
        return 0.5 * x1 * x4 * x4 + x2 * x3 * x4 + std::exp(x1) + x3 * std::exp(x2) - x3 * std::exp(x1 - x2) +
               0.5 * x3 * x3 * x2 + 0.5 * x3 * x3 * log_checked(x3, "x_3");
    }
    case RemarkVariant::F3: {
        const cplx y1 = c[0], y2 = c[1], y3 = c[2], y4 = c[3];
        const cplx s = y3 + y4;
        return 0.5 * y1 * y1 * y4 + y1 * y2 * y3 - 0.5 * y2 * y2 * y3 + 0.5 * s * s * log_checked(s, "y_3+y_4") +
               0.5 * y3 * y3 * log_checked(y3, "y_3") - s * y3 * log_checked(y2, "y_2");
    }
    }
    throw DomainError("unknown remark variant");
}

struct HoloParts {
    cplx D, tau, tp;
    CVec v, s, th;
};

HoloParts holo_parts(const CVec& t, int m, cplx q, const SeriesControl& ctl)
{
    const int N = 2 * m + 1;
    HoloParts p;
    p.D = q == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : 1.0 - 2.0 * kI * kPi * q * t[0];
    if (p.D == cplx{0.0, 0.0})
        throw DomainError("G1_Holo_Q: 1 - 2 i pi q t_0 vanishes");
    p.tau = 2.0 * kI * kPi * t[0] / p.D;
    const ModularPoint mp(p.tau);
    p.tp = theta1_jet(0.0, mp, 1, ctl)[1];
    for (int k = 1; k <= m; ++k) {
        p.v.push_back(t[N - k]);
        p.s.push_back(t[k] / p.D);
        p.th.push_back(theta(p.s.back(), mp, ctl));
    }
    return p;
}

cplx holo(const CVec& t, int m, cplx q, const SeriesControl& ctl)
{
    const int N = 2 * m + 1;
    const HoloParts p = holo_parts(t, m, q, ctl);
    const ModularPoint mp(p.tau);
    const cplx tN = t[N];
    cplx f = 0.5 * tN * tN * t[0];
    cplx pair{0.0, 0.0};
    for (int k = 1; k <= m; ++k)
        pair += t[k] * t[N - k];
    f += tN * pair;
    cplx S{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
        const cplx v = p.v[k];
        S += v;
        f += 0.5 * v * v * log_checked(v / p.D, "t_{2m+1-k}");
        f -= v * v * log_checked(p.th[k] / p.tp, "theta ratio");
    }
    f += 0.5 * S * S * log_checked(S / p.D, "sum t_{2m+1-k}");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const cplx vv = p.v[a] * p.v[b];
            if (a != b) {
                const cplx ratio = p.tp * theta(p.s[a] - p.s[b], mp, ctl) / (p.th[a] * p.th[b]);
                f += 0.5 * vv * log_checked(ratio, "theta cross ratio");
                f += 0.25 * kI * kPi * vv;
                f -= 0.75 * vv;
            } else {
                f -= 1.5 * vv;
            }
        }
    if (q != cplx{0.0, 0.0})
        f -= kI * kPi * q / p.D * pair * pair;
    return f;
}

cplx holo_m1(const CVec& t, const SeriesControl& ctl)
{
    const ModularPoint mp(2.0 * kI * kPi * t[0]);
    const cplx tp = theta1_jet(0.0, mp, 1, ctl)[1];
    const cplx t1 = t[1], t2 = t[2], t3 = t[3];
    return 0.5 * t3 * t3 * t[0] + t1 * t2 * t3 + t2 * t2 * log_checked(t2, "t_2") -
           t2 * t2 * log_checked(theta(t1, mp, ctl) / tp, "theta ratio") - 1.5 * t2 * t2;
}

cplx phi1_3d(const CVec& t, cplx q, const SeriesControl& ctl)
{
    const cplx tau = 2.0 * kI * kPi * t[0];
    const cplx E = eisenstein_q(tau, q, Eisen::E2, 0, ctl);
    const cplx t2 = t[1], t3 = t[2];
    const cplx t22 = t2 * t2;
    return 0.5 * t3 * t3 * t[0] + 0.5 * t3 * t22 + kPi2 / 24.0 * t22 * t22 * E;
}

cplx phi2_3d(const CVec& x, cplx q, const EvalOptions& opt)
{
    const Genus1Triple tr = triple_from_phi2(x, q, opt.tau_seed, opt.ctl);
    const auto E = e2_jet(tr.tau, q, opt.ctl);
    const cplx x1 = x[0], x2 = x[1], x3 = x[2];
    const cplx x13 = x1 * x1 * x1;
    return x2 * x2 * x2 / 6.0 + x1 * x2 * x3 + x3 * x3 * tr.tau / (4.0 * kI * kPi) -
           2.0 * kPi2 / 15.0 * x13 * x3 * E[0] - kPi4 / 180.0 * x13 * x13 * E[2];
}

cplx phi3_3d(const CVec& y, cplx q, const EvalOptions& opt)
{
    const Genus1Triple tr = triple_from_phi3(y, q, opt.tau_seed, opt.ctl);
    const auto E = e2_jet(tr.tau, q, opt.ctl);
    const cplx y1 = y[0], y2 = y[1], y3 = y[2];
    const cplx t2 = tr.t[1];
    return 0.5 * y1 * y2 * y2 + 0.5 * y1 * y1 * y3 + y3 * y3 * tr.tau / (4.0 * kI * kPi) +
           27.0 / 40.0 * y2 * y3 * t2 + 9.0 * kPi2 / 80.0 * y2 * y2 * t2 * t2 * E[0];
}

using Residual = std::pair<cplx, cplx>; // value, derivative

cplx newton_tau(const std::function<Residual(cplx)>& h, cplx w, std::optional<cplx> seed, const char* what)
{
    std::vector<cplx> seeds;
    if (seed)
        seeds.push_back(*seed);
    for (double re : {0.0, 0.25, -0.25})
        for (double im : {1.0, 0.8, 1.2, 0.6, 1.6, 2.0})
            seeds.push_back({re, im});
    const double wscale = std::max(1.0, std::abs(w));
    for (const cplx s : seeds) {
        try {
            cplx tau = s;
            auto [val, der] = h(tau);
            cplx r = val - w;
            for (int it = 0; it < 50; ++it) {
                if (der == cplx{0.0, 0.0})
                    break;
                const cplx step = r / der;
                double lam = 1.0;
                cplx trial = tau, rt = r, dt = der;
                bool accepted = false;
                while (lam >= 1.0 / 1024.0) {
                    trial = tau - lam * step;
                    if (trial.imag() > 0.02) {
                        const auto [v2, d2] = h(trial);
                        rt = v2 - w;
                        dt = d2;
                        if (std::abs(rt) <= std::abs(r) || std::abs(rt) < 1e-14 * wscale) {
                            accepted = true;
                            break;
                        }
                    }
                    lam *= 0.5;
                }
                if (!accepted)
                    break;
                tau = trial;
                r = rt;
                der = dt;
                if (std::abs(lam * step) <= 1e-14 * std::max(1.0, std::abs(tau))) {
                    if (std::abs(r) <= 1e-10 * wscale)
                        return tau;
                    break;
                }
            }
        } catch (const Error&) {
            // try the next seed
        }
    }
    throw InversionError(std::string(what) + ": Newton inversion did not converge");
}

FamilyMetadata g0_meta(int m, std::function<std::vector<EulerTerm>()> euler, double nu, int unit)
{
    FamilyMetadata md;
    md.N = 2 * m;
    md.eta = antidiag(md.N);
    md.euler = euler();
    md.degree = nu;
    md.unit_index = unit;
    md.quadratic = [m](const CVec& c) {
        CVec v;
        for (int k = 1; k <= m; ++k)
            v.push_back(c[2 * m - k]);
        return g0_quadratic(v);
    };
    return md;
}

std::vector<std::string> split_args(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t c = s.find(',', start);
        out.push_back(s.substr(start, c - start));
        if (c == std::string::npos)
            return out;
        start = c + 1;
    }
}

int parse_int(const std::string& s, const std::string& whole)
{
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("malformed family parameter in '" + whole + "'");
    }
    if (pos != s.size())
        throw DomainError("malformed family parameter in '" + whole + "'");
    return v;
}

} // namespace

int Family::dim() const
{
    switch (kind) {
    case FamilyKind::G0_Phi0:
    case FamilyKind::G0_PhiJ:
    case FamilyKind::G0_Phi2mJ: return 2 * m;
    case FamilyKind::G0_M2_Remark:
    case FamilyKind::G1_Holo_M1: return 4;
    case FamilyKind::G1_Holo:
    case FamilyKind::G1_Holo_Q: return 2 * m + 2;
    case FamilyKind::G1_3D_Phi1:
    case FamilyKind::G1_3D_Phi2:
    case FamilyKind::G1_3D_Phi3:
    case FamilyKind::G1_3D_QPhi1: return 3;
    }
    return 0;
}

std::string Family::id() const
{
    const std::string ms = std::to_string(m), js = std::to_string(j);
    switch (kind) {
    case FamilyKind::G0_Phi0: return "G0_Phi0(" + ms + ")";
    case FamilyKind::G0_PhiJ: return "G0_PhiJ(" + ms + "," + js + ")";
    case FamilyKind::G0_Phi2mJ: return "G0_Phi2mJ(" + ms + "," + js + ")";
    case FamilyKind::G0_M2_Remark: {
        const char* v = variant == RemarkVariant::F1 ? "F1" : variant == RemarkVariant::F2 ? "F2" : "F3";
        return std::string("G0_M2_Remark(") + v + "," + js + ")";
    }
    case FamilyKind::G1_Holo: return "G1_Holo(" + ms + ")";
    case FamilyKind::G1_Holo_M1: return "G1_Holo_M1";
    case FamilyKind::G1_3D_Phi1: return "G1_3D_Phi1";
    case FamilyKind::G1_3D_Phi2:
        return q == cplx{0.0, 0.0} ? "G1_3D_Phi2" : "G1_3D_Phi2(" + format_complex(q) + ")";
    case FamilyKind::G1_3D_Phi3:
        return q == cplx{0.0, 0.0} ? "G1_3D_Phi3" : "G1_3D_Phi3(" + format_complex(q) + ")";
    case FamilyKind::G1_3D_QPhi1: return "G1_3D_QPhi1(" + format_complex(q) + ")";
    case FamilyKind::G1_Holo_Q: return "G1_Holo_Q(" + ms + "," + format_complex(q) + ")";
    }
    return "?";
}

Family Family::parse(const std::string& s)
{
    const std::size_t open = s.find('(');
    const std::string name = s.substr(0, open);
    std::vector<std::string> args;
    if (open != std::string::npos) {
        if (s.back() != ')')
            throw DomainError("malformed family name '" + s + "'");
        args = split_args(s.substr(open + 1, s.size() - open - 2));
    }
    Family f;
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw DomainError("wrong number of parameters in '" + s + "'");
    };
    if (name == "G0_Phi0") {
        f.kind = FamilyKind::G0_Phi0;
        need(0, 1);
        if (!args.empty())
            f.m = parse_int(args[0], s);
    } else if (name == "G0_PhiJ" || name == "G0_Phi2mJ") {
        f.kind = name == "G0_PhiJ" ? FamilyKind::G0_PhiJ : FamilyKind::G0_Phi2mJ;
        need(0, 2);
        if (args.size() >= 1)
            f.m = parse_int(args[0], s);
        if (args.size() >= 2)
            f.j = parse_int(args[1], s);
    } else if (name == "G0_M2_Remark") {
        f.kind = FamilyKind::G0_M2_Remark;
        f.m = 2;
        need(0, 2);
        if (!args.empty()) {
            if (args[0] == "F1")
                f.variant = RemarkVariant::F1;
            else if (args[0] == "F2")
                f.variant = RemarkVariant::F2;
            else if (args[0] == "F3")
                f.variant = RemarkVariant::F3;
            else
                throw DomainError("unknown remark variant in '" + s + "'");
        }
        if (args.size() == 2)
            f.j = parse_int(args[1], s);
    } else if (name == "G1_Holo") {
        f.kind = FamilyKind::G1_Holo;
        need(0, 1);
        if (!args.empty())
            f.m = parse_int(args[0], s);
    } else if (name == "G1_Holo_M1") {
        f.kind = FamilyKind::G1_Holo_M1;
        f.m = 1;
        need(0, 0);
    } else if (name == "G1_3D_Phi1") {
        f.kind = FamilyKind::G1_3D_Phi1;
        need(0, 0);
    } else if (name == "G1_3D_Phi2" || name == "G1_3D_Phi3" || name == "G1_3D_QPhi1") {
        f.kind = name == "G1_3D_Phi2" ? FamilyKind::G1_3D_Phi2
               : name == "G1_3D_Phi3" ? FamilyKind::G1_3D_Phi3
                                      : FamilyKind::G1_3D_QPhi1;
        need(0, 1);
        if (!args.empty())
            f.q = parse_complex(args[0]);
    } else if (name == "G1_Holo_Q") {
        f.kind = FamilyKind::G1_Holo_Q;
        need(0, 2);
        if (args.size() >= 1)
            f.m = parse_int(args[0], s);
        if (args.size() >= 2)
            f.q = parse_complex(args[1]);
    } else {
        throw DomainError("unknown family '" + s + "'");
    }
    f.validate();
    return f;
}

void Family::validate() const
{
    switch (kind) {
    case FamilyKind::G0_Phi0:
        if (m < 2)
            throw DomainError("G0 families need m >= 2");
        break;
    case FamilyKind::G0_PhiJ:
    case FamilyKind::G0_Phi2mJ:
        if (m < 2 || j < 1 || j > m)
            throw DomainError("G0 families need m >= 2 and 1 <= j <= m");
        break;
    case FamilyKind::G0_M2_Remark:
        if (m != 2 || j < 1 || j > 2)
            throw DomainError("G0_M2_Remark needs j in {1, 2}");
        break;
    case FamilyKind::G1_Holo:
    case FamilyKind::G1_Holo_Q:
        if (m < 1)
            throw DomainError("G1_Holo needs m >= 1");
        break;
    default: break;
    }
}

cplx eval_prepotential(const Family& fam, const CVec& t, const EvalOptions& opt)
{
    fam.validate();
    if (static_cast<int>(t.size()) != fam.dim())
        throw DomainError(fam.id() + ": expected " + std::to_string(fam.dim()) + " coordinates");
    cplx v;
    switch (fam.kind) {
    case FamilyKind::G0_Phi0: v = g0_phi0(t, fam.m); break;
    case FamilyKind::G0_PhiJ: v = g0_phij(t, fam.m, fam.j); break;
    case FamilyKind::G0_Phi2mJ: v = g0_phi2mj(t, fam.m, fam.j); break;
    case FamilyKind::G0_M2_Remark: v = remark(t, fam.variant); break;
    case FamilyKind::G1_Holo: v = holo(t, fam.m, 0.0, opt.ctl); break;
    case FamilyKind::G1_Holo_Q: v = holo(t, fam.m, fam.q, opt.ctl); break;
    case FamilyKind::G1_Holo_M1: v = holo_m1(t, opt.ctl); break;
    case FamilyKind::G1_3D_Phi1: v = phi1_3d(t, 0.0, opt.ctl); break;
    case FamilyKind::G1_3D_QPhi1: v = phi1_3d(t, fam.q, opt.ctl); break;
    case FamilyKind::G1_3D_Phi2: v = phi2_3d(t, fam.q, opt); break;
    case FamilyKind::G1_3D_Phi3: v = phi3_3d(t, fam.q, opt); break;
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError(fam.id() + ": non-finite value");
    return v;
}

FamilyMetadata family_metadata(const Family& fam)
{
    fam.validate();
    const int m = fam.m;
    FamilyMetadata md;
    switch (fam.kind) {
    case FamilyKind::G0_Phi0:
        md = g0_meta(m, [m] {
            std::vector<EulerTerm> e(2 * m);
            for (int s = 0; s < m; ++s) {
                e[s] = {0.0, 1.0};
                e[2 * m - 1 - s] = {1.0, 0.0};
            }
            return e;
        }, 2.0, -1);
        md.unit_coeffs = [m](const CVec& t) { return phi0_unit(t, m); };
        return md;
    case FamilyKind::G0_PhiJ: {
        const int j = fam.j;
        return g0_meta(m, [m, j] {
            std::vector<EulerTerm> e(2 * m);
            for (int s = 1; s <= m; ++s) {
                e[s - 1] = {0.0, s == j ? 2.0 : 1.0};
                e[2 * m - s] = {1.0, 0.0};
            }
            return e;
        }, 2.0, 2 * m - j);
    }
    case FamilyKind::G0_Phi2mJ:
        return g0_meta(m, [m] {
            std::vector<EulerTerm> e(2 * m);
            for (int s = 0; s < m; ++s) {
                e[s] = {1.0, 0.0};
                e[2 * m - 1 - s] = {2.0, 0.0};
            }
            return e;
        }, 4.0, fam.j - 1);
    case FamilyKind::G0_M2_Remark:
        switch (fam.variant) {
        case RemarkVariant::F1:
            md = g0_meta(2, [] { return std::vector<EulerTerm>{{0, 1}, {0, 1}, {1, 0}, {1, 0}}; }, 2.0, -1);
            md.unit_coeffs = [](const CVec& t) { return phi0_unit(t, 2); };
            return md;
        case RemarkVariant::F2:
            return g0_meta(2, [] { return std::vector<EulerTerm>{{0, 2}, {0, 1}, {1, 0}, {1, 0}}; }, 2.0, 3);
        case RemarkVariant::F3:
            return g0_meta(2, [] { return std::vector<EulerTerm>{{1, 0}, {1, 0}, {2, 0}, {2, 0}}; }, 4.0, 0);
        }
        break;
    case FamilyKind::G1_Holo:
    case FamilyKind::G1_Holo_Q:
    case FamilyKind::G1_Holo_M1: {
        const int mm = fam.kind == FamilyKind::G1_Holo_M1 ? 1 : m;
        md.N = 2 * mm + 2;
        md.eta = antidiag(md.N);
        md.unit_index = 2 * mm + 1;
        md.degree = 2.0;
        for (int a = 0; a < md.N; ++a)
            md.euler.push_back({a > mm ? 1.0 : 0.0, 0.0});
        md.quadratic = [mm](const CVec& t) {
            cplx sq{0.0, 0.0}, s{0.0, 0.0};
            for (int k = 1; k <= mm; ++k) {
                const cplx v = t[2 * mm + 1 - k];
                sq += v * v;
                s += v;
            }
            return 0.5 * sq + 0.5 * s * s;
        };
        return md;
    }
    case FamilyKind::G1_3D_Phi1:
    case FamilyKind::G1_3D_QPhi1:
    case FamilyKind::G1_3D_Phi2:
    case FamilyKind::G1_3D_Phi3:
        md.N = 3;
        md.eta = antidiag(3);
        md.quadratic = [](const CVec&) { return cplx{0.0, 0.0}; };
        if (fam.kind == FamilyKind::G1_3D_Phi2) {
            md.euler = {{0.5, 0}, {1.0, 0}, {1.5, 0}};
            md.degree = 3.0;
            md.unit_index = 1;
        } else if (fam.kind == FamilyKind::G1_3D_Phi3) {
            md.euler = {{1.0, 0}, {1.5, 0}, {2.0, 0}};
            md.degree = 4.0;
            md.unit_index = 0;
        } else {
            md.euler = {{0.0, 0}, {0.5, 0}, {1.0, 0}};
            md.degree = 2.0;
            md.unit_index = 2;
        }
        return md;
    }
    throw DomainError("family_metadata: unknown family");
}

CVec log_arguments(const Family& fam, const CVec& t, const SeriesControl& ctl)
{
    const int m = fam.m;
    const int N = 2 * m + 1;
    auto c = [&](int i) { return t[i - 1]; };
    CVec out;
    switch (fam.kind) {
    case FamilyKind::G0_Phi0:
        for (int k = 1; k <= m; ++k) {
            out.push_back(c(N - k));
            for (int s = 1; s <= m; ++s)
                if (s != k)
                    out.push_back(std::exp(c(s)) - std::exp(c(k)));
        }
        break;
    case FamilyKind::G0_PhiJ:
        for (int k = 1; k <= m; ++k) {
            if (k == fam.j)
                continue;
            out.push_back(c(N - k));
            for (int s = 1; s <= m; ++s)
                if (s != fam.j && s != k)
                    out.push_back(std::exp(c(s)) - std::exp(c(k)));
        }
        break;
    case FamilyKind::G0_Phi2mJ: {
        cplx S{0.0, 0.0};
        for (int k = 1; k <= m; ++k)
            S += c(N - k);
        out.push_back(S);
        for (int k = 1; k <= m; ++k) {
            if (k == fam.j)
                continue;
            out.push_back(c(N - k));
            out.push_back(c(k));
            for (int s = 1; s <= m; ++s)
                if (s != fam.j && s != k)
                    out.push_back(c(s) - c(k));
        }
        break;
    }
    case FamilyKind::G0_M2_Remark:
        if (fam.variant == RemarkVariant::F1)
            out = {t[3], t[2], std::exp(t[0]) - std::exp(t[1])};
        else if (fam.variant == RemarkVariant::F2)
            out = {t[2]};
        else
            out = {t[2] + t[3], t[2], t[1]};
        break;
    case FamilyKind::G1_Holo:
    case FamilyKind::G1_Holo_Q: {
        const HoloParts p = holo_parts(t, m, fam.kind == FamilyKind::G1_Holo ? cplx{0.0, 0.0} : fam.q, ctl);
        const ModularPoint mp(p.tau);
        cplx S{0.0, 0.0};
        for (int k = 0; k < m; ++k) {
            out.push_back(p.v[k] / p.D);
            out.push_back(p.th[k] / p.tp);
            S += p.v[k];
            for (int b = 0; b < m; ++b)
                if (b != k)
                    out.push_back(p.tp * theta(p.s[k] - p.s[b], mp, ctl) / (p.th[k] * p.th[b]));
        }
        out.push_back(S / p.D);
        break;
    }
    case FamilyKind::G1_Holo_M1: {
        const ModularPoint mp(2.0 * kI * kPi * t[0]);
        out = {t[2], theta(t[1], mp, ctl) / theta1_jet(0.0, mp, 1, ctl)[1]};
        break;
    }
    default: break;
    }
    return out;
}

cplx invert_e2_prime(cplx w, cplx q, std::optional<cplx> seed, const SeriesControl& ctl)
{
    return newton_tau([&](cplx tau) {
        const auto E = e2_jet(tau, q, ctl);
        return Residual{E[1], E[2]};
    }, w, seed, "(E_2')^{-1}");
}

cplx invert_chi(cplx w, cplx q, std::optional<cplx> seed, const SeriesControl& ctl)
{
    return newton_tau([&](cplx tau) {
        const auto E = e2_jet(tau, q, ctl);
        if (E[1] == cplx{0.0, 0.0})
            throw DomainError("chi: E_2' vanishes");
        const cplx e1_4 = E[1] * E[1] * E[1] * E[1];
        const cplx chi = E[2] * E[2] * E[2] / e1_4;
        const cplx dchi = 3.0 * E[2] * E[2] * E[3] / e1_4 - 4.0 * E[2] * E[2] * E[2] * E[2] / (e1_4 * E[1]);
        return Residual{chi, dchi};
    }, w, seed, "chi^{-1}");
}

Genus1Triple triple_from_phi1(const CVec& t, cplx q, const SeriesControl& ctl)
{
    Genus1Triple tr;
    tr.t = t;
    tr.tau = 2.0 * kI * kPi * t[0];
    const auto E = e2_jet(tr.tau, q, ctl);
    const cplx t2 = t[1], t3 = t[2];
    const cplx x3 = kI * kPi3 / 3.0 * t2 * t2 * t2 * E[1];
    tr.x = {t2, t3 + 0.5 * kPi2 * t2 * t2 * E[0], x3};
    tr.y = {t3, x3, -kPi4 / 6.0 * t2 * t2 * t2 * t2 * E[2]};
    return tr;
}

Genus1Triple triple_from_phi2(const CVec& x, cplx q, std::optional<cplx> tau_seed, const SeriesControl& ctl)
{
    const cplx x1 = x[0], x2 = x[1], x3 = x[2];
    if (x1 == cplx{0.0, 0.0})
        throw DomainError("G1_3D_Phi2: x_1 must be nonzero");
    Genus1Triple tr;
    tr.tau = invert_e2_prime(3.0 * x3 / (kI * kPi3 * x1 * x1 * x1), q, tau_seed, ctl);
    const auto E = e2_jet(tr.tau, q, ctl);
    const cplx t1 = tr.tau / (2.0 * kI * kPi);
    tr.t = {t1, x1, x2 - 0.5 * kPi2 * x1 * x1 * E[0]};
    tr.x = x;
    tr.y = {tr.t[2], x3, -kPi4 / 6.0 * x1 * x1 * x1 * x1 * E[2]};
    return tr;
}

Genus1Triple triple_from_phi3(const CVec& y, cplx q, std::optional<cplx> tau_seed, const SeriesControl& ctl)
{
    const cplx y1 = y[0], y2 = y[1], y3 = y[2];
    if (y2 == cplx{0.0, 0.0})
        throw DomainError("G1_3D_Phi3: y_2 must be nonzero");
    Genus1Triple tr;
    tr.tau = invert_chi(-8.0 / 3.0 * y3 * y3 * y3 / (y2 * y2 * y2 * y2), q, tau_seed, ctl);
    const auto E = e2_jet(tr.tau, q, ctl);
    if (E[2] == cplx{0.0, 0.0})
        throw DomainError("G1_3D_Phi3: E_2'' vanishes");
    const cplx t2 = std::pow(-6.0 * y3 / (kPi4 * E[2]), 0.25);
    tr.t = {tr.tau / (2.0 * kI * kPi), t2, y1};
    tr.x = {t2, y1 + 0.5 * kPi2 * t2 * t2 * E[0], y2};
    tr.y = y;
    return tr;
}

std::vector<CVec> hessian_3d(const Family& fam, const Genus1Triple& tr)
{
    const auto& t = tr.t;
    const auto& x = tr.x;
    const auto& y = tr.y;
    switch (fam.kind) {
    case FamilyKind::G1_3D_Phi1:
    case FamilyKind::G1_3D_QPhi1:
        return {{y[2], x[2], t[2]}, {x[2], x[1], t[1]}, {t[2], t[1], t[0]}};
    case FamilyKind::G1_3D_Phi2:
        return {{y[2], x[2], t[2]}, {x[2], x[1], x[0]}, {t[2], x[0], t[0]}};
    case FamilyKind::G1_3D_Phi3:
        return {{y[2], y[1], y[0]}, {y[1], x[1], t[1]}, {y[0], t[1], t[0]}};
    default: throw DomainError("hessian_3d: not a 3D genus-one family");
    }
}

} // namespace wdvv
