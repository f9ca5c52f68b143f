#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace g2cubic {

struct CheckRecord {
    std::string check_id;       // "<suite>.<name>[.<parameter>]"
    std::string anchor;         // formula label from anchor_registry()
    std::string inputs_digest;  // FNV-1a 64 of the input description, hex
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
};

// pass is residual <= tolerance; a NaN residual fails
CheckRecord make_check(const std::string& check_id, const std::string& inputs, double residual, double tolerance);

std::string fnv1a_hex(const std::string& text);

// Keyed by "<suite>.<name>"; every check id must resolve here.
const std::map<std::string, std::string>& anchor_registry();
// throws std::out_of_range for unregistered ids
std::string anchor_for(const std::string& check_id);

struct ReportSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

struct VerificationReport {
    std::string version;
    std::string toolchain;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<CheckRecord> checks;

    ReportSummary summary() const;
    bool all_pass() const { return summary().failed == 0; }
    // stable key order, no timestamps
    std::string to_json() const;
};

std::string toolchain_stamp();

}  // namespace g2cubic
