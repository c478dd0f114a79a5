// Complex literals, campaign reports and the wdvv-lab executable.
#include "wdvv/campaign.hpp"
#include "wdvv/complex_io.hpp"
#include "wdvv/prepotential_zoo.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace wdvv;
using nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(WDVV_LAB_EXE) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

json read_json(const std::string& path)
{
    std::ifstream f(path);
    return json::parse(f);
}

} // namespace

TEST_CASE("complex literal parsing")
{
    CHECK(parse_complex("1.5") == cplx{1.5, 0.0});
    CHECK(parse_complex("2i") == cplx{0.0, 2.0});
    CHECK(parse_complex("-i") == cplx{0.0, -1.0});
    CHECK(parse_complex("0+0.5i") == cplx{0.0, 0.5});
    CHECK(parse_complex("1e-3-2.5e-1i") == cplx{1e-3, -0.25});
    CHECK(parse_complex(" 3-4i ") == cplx{3.0, -4.0});
    for (const char* bad : {"", "abc", "1+", "1+2", "i2", "1+2k", "--1", "1..2"})
        CHECK_THROWS_AS(parse_complex(bad), DomainError);
    const CVec v = parse_complex_list("0+0.5i,0.3+0i,0.2");
    REQUIRE(v.size() == 3);
    CHECK(v[2] == cplx{0.2, 0.0});
}

TEST_CASE("complex literals round-trip exactly")
{
    for (cplx z : {cplx{0.1, -0.2}, cplx{1.0 / 3.0, 2.0 / 7.0}, cplx{-1e-300, 5e300}, cplx{0.0, -0.0}, cplx{-2.5, 0.0}})
        CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("campaign configuration validation")
{
    CampaignConfig c;
    c.samples = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.samples = 1;
    c.format = "xml";
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.format = "csv";
    c.families = {"G9_Bogus"};
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.families.clear();
    c.tolerances["wdvv"] = -1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("report counts, schema and tolerance overrides")
{
    CampaignConfig c;
    c.samples = 3;
    c.families = {"G1_3D_Phi1", "G1_Holo(1)"};
    c.tolerances["wdvv.assoc"] = 1e-30;
    c.tolerances["wdvv"] = 0.5;
    const Report r = run_wdvv(c);
    const json j = report_json(r);
    CHECK(j["schema"] == "wdvv-lab/1");
    CHECK(j["records"].size() == 3 * 4 + 3 * 3);
    int pass = 0;
    for (const auto& x : j["records"]) {
        pass += x["pass"].get<bool>() ? 1 : 0;
        if (x["check"] == "wdvv.assoc")
            CHECK(x["tolerance"] == 1e-30);
        else
            CHECK(x["tolerance"] == 0.5);
    }
    CHECK(j["summary"]["passed"] == pass);
    CHECK(j["summary"]["failed"] == static_cast<int>(j["records"].size()) - pass);
    CHECK(j["summary"]["total"] == j["records"].size());
    CHECK(!r.all_pass());
    const std::string csv = report_csv(r);
    CHECK(csv.rfind("check,target,sample,residual,tolerance,pass,wall_ms,error,inputs\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.records.size()) + 1);
}

TEST_CASE("reports do not depend on the worker count")
{
    CampaignConfig a;
    a.samples = 4;
    a.threads = 1;
    CampaignConfig b = a;
    b.threads = 3;
    CHECK(strip_timing(report_json(run_hurwitz(a))) == strip_timing(report_json(run_hurwitz(b))));
    CHECK(strip_timing(report_json(run_identities(a))) == strip_timing(report_json(run_identities(b))));
}

TEST_CASE("thread count resolution")
{
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("eval prints the library value")
{
    const Run r = run("eval --family G1_3D_Phi1 --point 0.15+0.2i,0.3,0.2");
    REQUIRE(r.status == 0);
    const cplx lib = eval_prepotential(Family::parse("G1_3D_Phi1"), {cplx{0.15, 0.2}, 0.3, 0.2});
    CHECK(r.out == format_complex(lib) + "\n");
    CHECK(parse_complex(r.out.substr(0, r.out.size() - 1)) == lib);
}

TEST_CASE("eval outside the upper half-plane fails cleanly")
{
    // t1 = 0.5i gives tau = 2 pi i t1 = -pi, on the real axis.
    const Run r = run("eval --family G1_3D_Phi1 --point \"0+0.5i,0.3+0i,0.2+0i\"");
    CHECK(r.status != 0);
    CHECK(r.out.empty());
}

TEST_CASE("eval derivatives and usage errors")
{
    const Run g = run("eval --family G1_3D_Phi1 --point 0.15+0.2i,0.3,0.2 --gradient --hessian");
    CHECK(g.status == 0);
    CHECK(g.out.find("gradient ") != std::string::npos);
    CHECK(std::count(g.out.begin(), g.out.end(), '\n') == 5);
    CHECK(run("eval --family G1_3D_Phi1 --point 0.15+0.2i,0.3").status != 0);
    CHECK(run("eval --family Bogus --point 1").status != 0);
    CHECK(run("nosuch").status != 0);
    CHECK(run("wdvv --samples 0").status != 0);
    CHECK(run("wdvv --tol.wdvv=abc").status != 0);
}

TEST_CASE("wdvv campaign through the executable")
{
    const std::string out = "cli_wdvv_report.json";
    const Run r = run("wdvv --family G1_3D_Phi1 --samples 20 --seed 7 --out " + out);
    CHECK(r.status == 0);
    const json j = read_json(out);
    CHECK(j["records"].size() == 80);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["config"]["seed"] == 7);
    std::remove(out.c_str());
}

TEST_CASE("failing checks give a nonzero exit and still write the report")
{
    const std::string out = "cli_fail_report.csv";
    const Run r = run("wdvv --family G1_3D_Phi1 --samples 2 --tol.wdvv.assoc=0 --format csv --out " + out);
    CHECK(r.status == 1);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("wdvv.assoc") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("identities campaign has no failures")
{
    const Run r = run("identities --samples 100 --seed 1");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["total"].get<int>() > 0);
}

TEST_CASE("hurwitz campaign through the executable")
{
    const Run r = run("hurwitz --samples 3 --seed 5");
    CHECK(r.status == 0);
    CHECK(json::parse(r.out)["summary"]["failed"] == 0);
}

TEST_CASE("selftest reports are reproducible")
{
    const Run a = run("selftest --seed 3 --threads 2");
    const Run b = run("selftest --seed 3 --threads 1");
    CHECK(a.status == 0);
    CHECK(b.status == 0);
    CHECK(strip_timing(json::parse(a.out)) == strip_timing(json::parse(b.out)));
}
