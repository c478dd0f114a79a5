// Seeded verification campaigns and the report they produce.
#ifndef WDVV_CAMPAIGN_HPP
#define WDVV_CAMPAIGN_HPP

#include "wdvv/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wdvv {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "wdvv-lab/1";

struct CampaignConfig {
    std::uint64_t seed = 1;
    int samples = 10;
    std::map<std::string, double> tolerances; // overrides keyed by check id or a dotted prefix of it
    std::vector<std::string> families;        // wdvv campaign; empty selects every family
    std::string out;
    std::string format = "json";
    int threads = 0; // 0 = WDVV_LAB_THREADS or hardware concurrency

    void validate() const; // DomainError on invalid settings
};

struct Record {
    std::string check;  // e.g. "wdvv.assoc", "identity.chazy", "c05.hessian"
    std::string target; // family id, modulus label, covering degree
    int sample = 0;
    nlohmann::json inputs = nlohmann::json::object();
    std::optional<double> residual; // empty when the check raised
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
    std::string error;
};

struct Report {
    std::string command;
    CampaignConfig config;
    std::vector<Record> records;

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0 && !records.empty(); }
};

Report run_identities(const CampaignConfig& cfg);
Report run_wdvv(const CampaignConfig& cfg);
Report run_hurwitz(const CampaignConfig& cfg);

// Acceptance criteria 1-11 with fixed sample counts, followed by the
// determinism criterion 12 (the suite is run twice and compared).
Report run_selftest(const CampaignConfig& cfg);

// Family ids covered by the wdvv campaign when none are selected.
std::vector<std::string> default_families();

nlohmann::json report_json(const Report& r);
nlohmann::json strip_timing(nlohmann::json j); // removes every "wall_ms" field
std::string report_csv(const Report& r);
std::string render(const Report& r, const std::string& format);

// Effective worker count: explicit value, else WDVV_LAB_THREADS, else hardware concurrency.
int resolve_threads(int requested);

} // namespace wdvv

#endif
