// wdvv-lab: verification campaigns and prepotential evaluation.
#include "wdvv/campaign.hpp"
#include "wdvv/complex_io.hpp"
#include "wdvv/numdiff.hpp"
#include "wdvv/prepotential_zoo.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace wdvv;

// Splits "--tol.<check>=<v>" and "--tol.<check> <v>" out of argv before CLI11 sees it.
std::vector<std::string> take_tolerances(int argc, char** argv, std::map<std::string, double>& tol)
{
    std::vector<std::string> rest;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a.rfind("--tol.", 0) != 0) {
            rest.push_back(a);
            continue;
        }
        std::string key = a.substr(6), val;
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            val = key.substr(eq + 1);
            key.resize(eq);
        } else if (i + 1 < argc) {
            val = argv[++i];
        } else {
            throw DomainError("missing value for " + a);
        }
        if (key.empty())
            throw DomainError("empty check id in " + a);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != val.size() || val.empty())
            throw DomainError("invalid tolerance value '" + val + "' for " + key);
        tol[key] = v;
    }
    return rest;
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw Error("cannot open output file " + out);
    f << text;
    if (!f)
        throw Error("failed writing " + out);
}

void print_summary(const Report& r)
{
    std::fprintf(stderr, "%s: %zu checks, %d passed, %d failed\n", r.command.c_str(), r.records.size(), r.passed(),
                 r.failed());
    if (r.command == "selftest") {
        std::map<std::string, std::pair<int, int>> by;
        for (const auto& x : r.records) {
            auto& p = by[x.check.substr(0, 3)];
            ++p.first;
            p.second += x.pass ? 1 : 0;
        }
        for (const auto& [k, v] : by)
            std::fprintf(stderr, "  %s %s (%d/%d)\n", k.c_str(), v.first == v.second ? "PASS" : "FAIL", v.second,
                         v.first);
    }
}

int run_eval(const std::string& family, const std::string& point, const std::string& tau_seed, bool gradient,
             bool hessian)
{
    const Family fam = Family::parse(family);
    const CVec t = parse_complex_list(point);
    if (static_cast<int>(t.size()) != fam.dim())
        throw DomainError(fmt::format("{} expects {} coordinates, got {}", fam.id(), fam.dim(), t.size()));
    EvalOptions opt;
    if (!tau_seed.empty())
        opt.tau_seed = parse_complex(tau_seed);
    std::cout << format_complex(eval_prepotential(fam, t, opt)) << '\n';
    const ScalarFn f = [&](const CVec& x) { return eval_prepotential(fam, x, opt); };
    const DerivSpec spec{1e-2, 3, StepScale::Relative};
    const int n = fam.dim();
    if (gradient) {
        const Tensor g = derivative_tensor(f, t, 1, spec).value;
        std::vector<std::string> parts;
        for (int i = 0; i < n; ++i)
            parts.push_back(format_complex(g.at(i)));
        std::cout << "gradient " << fmt::format("{}", fmt::join(parts, ",")) << '\n';
    }
    if (hessian) {
        const Tensor h = derivative_tensor(f, t, 2, spec).value;
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> parts;
            for (int j = 0; j < n; ++j)
                parts.push_back(format_complex(h.at(i, j)));
            std::cout << "hessian " << fmt::format("{}", fmt::join(parts, ",")) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CampaignConfig cfg;
    std::vector<std::string> args;
    try {
        args = take_tolerances(argc, argv, cfg.tolerances);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    CLI::App app{"Numerical verification of WDVV prepotentials on Hurwitz spaces", "wdvv-lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    app.footer("Tolerance overrides: --tol.<check>=<value>, where <check> is a record id or a dotted prefix.\n"
               "WDVV_LAB_THREADS caps the worker count (0 = auto).");

    std::string family, point, tau_seed;
    bool gradient = false, hessian = false;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--seed", cfg.seed, "Campaign seed")->capture_default_str();
        s->add_option("--samples", cfg.samples, "Samples per target")->capture_default_str();
        s->add_option("--out", cfg.out, "Report file (stdout when omitted)");
        s->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        s->add_option("--threads", cfg.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);
    };
    auto* identities = app.add_subcommand("identities", "Chazy, Ramanujan, Weierstrass and flat-coordinate identities");
    add_common(identities);
    auto* wdvv_cmd = app.add_subcommand("wdvv", "Associativity, unit, Euler and Hessian checks of prepotential families");
    add_common(wdvv_cmd);
    wdvv_cmd->add_option("--family", cfg.families, "Family id (repeatable); all families when omitted");
    auto* hurwitz = app.add_subcommand("hurwitz", "Gram pairings, Jacobians and the genus-0 assembler");
    add_common(hurwitz);
    auto* selftest = app.add_subcommand("selftest", "Full acceptance suite");
    add_common(selftest);
    auto* eval = app.add_subcommand("eval", "Evaluate a prepotential at a point");
    eval->add_option("--family", family, "Family id")->required();
    eval->add_option("--point", point, "Comma-separated complex coordinates a+bi")->required();
    eval->add_option("--tau-seed", tau_seed, "Newton seed for the modulus (G1_3D_Phi2/Phi3)");
    eval->add_flag("--gradient", gradient, "Also print a finite-difference gradient");
    eval->add_flag("--hessian", hessian, "Also print a finite-difference Hessian");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed())
            return run_eval(family, point, tau_seed, gradient, hessian);
        Report r;
        if (identities->parsed())
            r = run_identities(cfg);
        else if (wdvv_cmd->parsed())
            r = run_wdvv(cfg);
        else if (hurwitz->parsed())
            r = run_hurwitz(cfg);
        else
            r = run_selftest(cfg);
        emit(render(r, cfg.format), cfg.out);
        print_summary(r);
        return r.all_pass() ? 0 : 1;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "DomainError: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
