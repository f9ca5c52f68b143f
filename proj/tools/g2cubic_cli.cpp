#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "g2cubic/enumeration.hpp"
#include "g2cubic/g2_core.hpp"
#include "g2cubic/suite.hpp"
#include "g2cubic/zeta_assembly.hpp"

using namespace g2cubic;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file_atomic(out, text);
}

int verify(const std::string& suite, const std::string& config_path, const std::vector<int>& moduli, std::int64_t max_disc,
           std::optional<std::uint64_t> seed, std::optional<double> tolerance, const std::string& classes_dir, const std::string& bundle,
           unsigned threads, const std::string& out, bool quiet) {
    SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : parse_suite_config(read_file(config_path));
    if (!suite.empty()) cfg.suites = {suite};
    if (!moduli.empty()) cfg.moduli = moduli;
    if (max_disc > 0) cfg.max_disc = max_disc;
    if (seed) cfg.seed = *seed;
    if (tolerance) cfg.tolerance = *tolerance;
    if (!classes_dir.empty()) cfg.classes_dir = classes_dir;
    if (!bundle.empty()) cfg.bundle_path = bundle;
    if (threads) cfg.threads = threads;
    if (!out.empty()) cfg.report_path = out;
    validate(cfg);

    const auto report = run_suite(cfg);
    const auto sum = report.summary();
    if (cfg.report_path == "-") {
        std::cout << report.to_json();
        return sum.failed == 0 ? 0 : kExitFail;
    }
    if (!cfg.report_path.empty()) write_file_atomic(cfg.report_path, report.to_json());

    if (!quiet)
        for (const auto& c : report.checks) {
            char line[256];
            std::snprintf(line, sizeof line, "%s  %-48s residual=%.3e tol=%.1e\n", c.pass ? "PASS" : "FAIL", c.check_id.c_str(), c.residual, c.tolerance);
            std::cout << line;
        }
    std::cout << sum.passed << "/" << sum.total << " checks passed";
    if (!cfg.report_path.empty()) std::cout << ", report: " << cfg.report_path;
    std::cout << "\n";
    return sum.failed == 0 ? 0 : kExitFail;
}

ordered_json residues_json(const std::string& path) {
    const std::string text = read_file(path);
    ordered_json j;
    j["bundle"] = path;
    try {
        const auto b = parse_exact_bundle(text);
        const auto r = principal_residues(b);
        j["arithmetic"] = "exact";
        j["residues"] = {{"0", to_string(r.at_0)}, {"1/3", to_string(r.at_1_3)}, {"5/3", to_string(r.at_5_3)}, {"2", to_string(r.at_2)}};
        j["laurent_constant_at_2"] = to_string(laurent_constant_at_two(b));
        return j;
    } catch (const std::invalid_argument&) {
        // decimals in the file: fall through to floating point
    }
    const auto b = parse_bundle(text);
    const auto r = principal_residues(b);
    j["arithmetic"] = "double";
    j["residues"] = {{"0", r.at_0}, {"1/3", r.at_1_3}, {"5/3", r.at_5_3}, {"2", r.at_2}};
    j["laurent_constant_at_2"] = laurent_constant_at_two(b);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"G2 cubic-form toolkit: verification suites, class tables, zeta components"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(code_version()));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites and write a JSON report");
    std::string suite, config_path, classes_dir, bundle, out;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::vector<int> moduli;
    std::int64_t max_disc = 0;
    unsigned threads = 0;
    bool quiet = false;
    verify_cmd->add_option("suite", suite, "g2 | forms | finite | classes | zeta | all (default: config, else all)")
        ->check(CLI::IsMember({"g2", "forms", "finite", "classes", "zeta", "all"}));
    verify_cmd->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
    verify_cmd->add_option("--modulus", moduli, "finite-model modulus (repeatable)");
    verify_cmd->add_option("--max-disc", max_disc, "class-table discriminant bound");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--tolerance", tolerance, "tolerance of floating identity checks");
    verify_cmd->add_option("--classes-dir", classes_dir, "class-table cache directory");
    verify_cmd->add_option("--bundle", bundle, "exact bundle file to check in the zeta suite")->check(CLI::ExistingFile);
    verify_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
    verify_cmd->add_option("--out", out, "report path; - prints the JSON report to stdout");
    verify_cmd->add_flag("--quiet", quiet, "print only the summary");

    // classes
    auto* classes_cmd = app.add_subcommand("classes", "export the class table for 0 < |disc| <= X");
    std::int64_t classes_x = 0;
    std::string strategy = "reduction", format = "csv", group = "GL2", classes_out;
    classes_cmd->add_option("--max-disc", classes_x, "discriminant bound X")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
    classes_cmd->add_option("--strategy", strategy, "box-oracle | reduction")->check(CLI::IsMember({"box-oracle", "reduction"}));
    classes_cmd->add_option("--out", classes_out, "output path (stdout if omitted)");
    classes_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    classes_cmd->add_option("--group", group, "GL2 | SL2")->check(CLI::IsMember({"GL2", "SL2"}));
    classes_cmd->add_option("--threads", threads, "worker threads (0: all cores)");

    // zeta
    auto* zeta_cmd = app.add_subcommand("zeta", "zeta-function components");
    zeta_cmd->require_subcommand(1);
    auto* residues_cmd = zeta_cmd->add_subcommand("residues", "residues of the principal part for a bundle file");
    std::string bundle_path;
    residues_cmd->add_option("--bundle", bundle_path, "key=value bundle file")->required()->check(CLI::ExistingFile);

    auto* densities_cmd = zeta_cmd->add_subcommand("densities", "p-adic discriminant valuation densities as CSV");
    std::int64_t p = 0;
    int k = 0;
    std::string method, densities_out;
    std::uint64_t density_seed = 20240601;
    densities_cmd->add_option("--p", p, "prime")->required();
    densities_cmd->add_option("--k", k, "level")->required()->check(CLI::Range(1, 40));
    densities_cmd->add_option("--method", method, "exhaustive | stratified | sampling (default: automatic)")
        ->check(CLI::IsMember({"exhaustive", "stratified", "sampling"}));
    densities_cmd->add_option("--seed", density_seed, "sampling seed");
    densities_cmd->add_option("--out", densities_out, "output path (stdout if omitted)");

    auto* sigma1_cmd = zeta_cmd->add_subcommand("sigma1", "archimedean and local sigma1 factors at s");
    double s = 2.0;
    std::vector<std::int64_t> primes{2, 3, 5, 7};
    int K = 30;
    sigma1_cmd->add_option("--s", s, "real s > 0")->required();
    sigma1_cmd->add_option("--p", primes, "primes for the local factors");
    sigma1_cmd->add_option("--terms", K, "partial-sum length K")->check(CLI::Range(1, 10000));

    auto* g2_cmd = app.add_subcommand("g2", "G2 structure constants");
    auto* table_cmd = g2_cmd->add_subcommand("table", "print the nonzero brackets of the Chevalley basis");
    g2_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*verify_cmd)
            return verify(suite, config_path, moduli, max_disc, seed, tolerance, classes_dir, bundle, threads, out, quiet);

        if (*classes_cmd) {
            EnumerationOptions opt;
            opt.group = parse_group(group);
            opt.threads = threads;
            const auto t = class_table(classes_x, parse_strategy(strategy), opt);
            emit(format == "csv" ? to_csv(t) : to_json(t), classes_out);
            if (!classes_out.empty()) std::cerr << t.records.size() << " classes written to " << classes_out << "\n";
            return 0;
        }

        if (*residues_cmd) {
            std::cout << residues_json(bundle_path).dump(2) << "\n";
            return 0;
        }

        if (*densities_cmd) {
            DensityOptions opt;
            opt.seed = density_seed;
            if (method == "exhaustive") opt.method = DensityMethod::Exhaustive;
            if (method == "stratified") opt.method = DensityMethod::Stratified;
            if (method == "sampling") opt.method = DensityMethod::Sampling;
            const auto t = local_disc_densities(p, k, opt);
            emit(densities_csv({t}), densities_out);
            if (!t.exact) std::cerr << "sampled with " << t.total.get_str() << " draws, std error " << t.std_error << "\n";
            return 0;
        }

        if (*sigma1_cmd) {
            ordered_json j;
            j["s"] = s;
            j["arch_exp_sinh"] = sigma1_arch_exp_sinh(s);
            j["arch_log_substitution"] = sigma1_arch_log_substitution(s);
            j["arch_closed"] = std::pow(3.14159265358979323846, -s / 2) * std::tgamma(s / 2);
            ordered_json local = ordered_json::array();
            for (auto q : primes)
                local.push_back({{"p", q}, {"closed", sigma1_closed(q, s)}, {"partial", sigma1_factor(q, s, K)}, {"terms", K},
                                 {"tail_bound", sigma1_tail_bound(q, s, K)}});
            j["local"] = local;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*table_cmd) {
            std::cout << dump_table(chevalley_table());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
