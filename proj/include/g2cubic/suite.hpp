#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g2cubic/cubic_forms.hpp"
#include "g2cubic/report.hpp"
#include "g2cubic/zeta_assembly.hpp"

namespace g2cubic {

struct SuiteConfig {
    std::vector<std::string> suites{"all"};  // g2 forms finite classes zeta all
    std::vector<int> moduli{5, 7, 11};
    int exact_modulus = 5;  // exhaustive exact check; 0 disables
    int random_functions = 100;
    int random_instances = 1000;
    std::int64_t max_disc = 300;
    int twists = 20;
    std::vector<std::int64_t> primes{2, 5, 7};
    int max_level = 4;
    double tolerance = 1e-9;       // floating identity checks
    double quad_tolerance = 1e-8;  // cross-quadrature checks
    double limit_tolerance = 1e-6;
    std::uint64_t seed = 20240601;
    HeightNorm height_norm = HeightNorm::Euclidean;
    ClassGroup group = ClassGroup::GL2;
    std::string report_path;  // empty: none written by run_suite
    std::string classes_dir;  // class-table cache; empty disables
    std::string bundle_path;  // optional exact bundle checked alongside the random ones
    unsigned threads = 0;
};

// flat key=value text; unknown keys and malformed values throw std::invalid_argument
SuiteConfig parse_suite_config(const std::string& text);
void validate(const SuiteConfig& cfg);
std::vector<std::pair<std::string, std::string>> describe(const SuiteConfig& cfg);
bool suite_selected(const SuiteConfig& cfg, const std::string& name);

std::vector<CheckRecord> run_g2_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> run_forms_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> run_finite_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> run_classes_suite(const SuiteConfig& cfg);
std::vector<CheckRecord> run_zeta_suite(const SuiteConfig& cfg);

// Runs the selected suites concurrently and merges them in the order g2, forms, finite, classes, zeta.
VerificationReport run_suite(const SuiteConfig& cfg);

}  // namespace g2cubic
