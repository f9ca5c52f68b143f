#include "g2cubic/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace g2cubic {

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::map<std::string, std::string>& anchor_registry() {
    static const std::map<std::string, std::string> registry{
        {"g2.jacobi", "G2 Chevalley basis: Jacobi identity"},
        {"g2.grading", "G2 Chevalley basis: [g_a, g_b] in g_{a+b}"},
        {"g2.antisymmetry", "G2 Chevalley basis: antisymmetry"},
        {"g2.levi_action", "Levi action on V = derivative of x.l = det(l) f((u,v) l^-1)"},
        {"g2.weight_spectrum", "weights of ad(alpha1 coroot) on V"},
        {"forms.disc_covariance", "P(x.l) = det(l)^-2 P(x)"},
        {"forms.pairing", "[x.l, y.l^iota] = [x, y]"},
        {"forms.hessian_relation", "disc(H_f) = -3 P(f)"},
        {"forms.classification", "orbit classification of V(F) by rational factorization"},
        {"forms.witness", "orbit classification witnesses"},
        {"finite.involution", "finite Fourier transform: inversion"},
        {"finite.plancherel", "finite Fourier transform: Plancherel"},
        {"finite.partial_inversion", "partial transform in x3, x4 applied twice"},
        {"finite.poisson_rearrangement", "finite Poisson summation regrouped by orbit type"},
        {"finite.remarkable", "partial transforms of phi and its transform agree at 0"},
        {"finite.pre_e12", "partial transform of the transform summed over (0,0,c,0), c != 0"},
        {"finite.covariance", "Fourier transform of l.phi = l^iota applied to the transform"},
        {"finite.mean_value", "mean value formula over SL2 on the plane"},
        {"finite.exact_indicators", "all finite identities on point indicators, exact arithmetic"},
        {"classes.strategy_agreement", "GL2(Z) class table: box oracle = reduction"},
        {"classes.witness", "class table contains the discriminant witnesses"},
        {"classes.twist_invariance", "class records invariant under unimodular twists"},
        {"classes.partition", "splitting-index partition by discriminant sign"},
        {"classes.dirichlet_monotone", "truncated Dirichlet series nondecreasing in X"},
        {"zeta.truncation_residual", "b-integral of tau_Q - tau_P1 = c_F (T1 - log|a|)"},
        {"zeta.residues", "principal part: residues at 0, 1/3, 5/3, 2"},
        {"zeta.limit_at_two", "principal part: (s-2) PP(s) -> residue at 2"},
        {"zeta.tilde_t2_term", "truncated formula at s = 2: T2 term"},
        {"zeta.tilde_t1_affine", "truncated formula at s = 2: affine in T1"},
        {"zeta.identity_rhs", "main identity: right-hand side after bookkeeping"},
        {"zeta.sigma1_tail", "local Tate factor: partial sums within geometric tail"},
        {"zeta.sigma1_arch", "archimedean Tate factor: two quadratures"},
        {"zeta.density_partition", "p-adic discriminant densities sum to 1"},
        {"zeta.density_stability", "p-adic discriminant densities stable across levels"},
        {"zeta.log_height", "log-height integral: polar vs cartesian"},
    };
    return registry;
}

std::string anchor_for(const std::string& check_id) {
    const auto first = check_id.find('.');
    const auto second = first == std::string::npos ? std::string::npos : check_id.find('.', first + 1);
    const auto key = check_id.substr(0, second);
    const auto& reg = anchor_registry();
    const auto it = reg.find(key);
    if (it == reg.end()) throw std::out_of_range("no anchor registered for check '" + check_id + "'");
    return it->second;
}

CheckRecord make_check(const std::string& check_id, const std::string& inputs, double residual, double tolerance) {
    CheckRecord r;
    r.check_id = check_id;
    r.anchor = anchor_for(check_id);
    r.inputs_digest = fnv1a_hex(check_id + "|" + inputs);
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = !std::isnan(residual) && residual <= tolerance;
    return r;
}

ReportSummary VerificationReport::summary() const {
    ReportSummary s;
    s.total = checks.size();
    for (const auto& c : checks) (c.pass ? s.passed : s.failed) += 1;
    return s;
}

std::string toolchain_stamp() {
    std::string s;
#if defined(__clang__)
    s = "clang " __clang_version__;
#elif defined(__GNUC__)
    s = "gcc " __VERSION__;
#else
    s = "unknown compiler";
#endif
    return s + ", C++" + std::to_string(__cplusplus / 100);
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "g2cubic";
    j["version"] = version;
    j["toolchain"] = toolchain;
    j["seed"] = seed;
    auto& cfg = j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["check_id"] = c.check_id;
        e["anchor"] = c.anchor;
        e["inputs_digest"] = c.inputs_digest;
        // NaN is not valid JSON
        if (std::isfinite(c.residual))
            e["residual"] = c.residual;
        else
            e["residual"] = std::isnan(c.residual) ? "nan" : "inf";
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        arr.push_back(std::move(e));
    }
    const auto s = summary();
    j["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}};
    return j.dump(2) + "\n";
}

}  // namespace g2cubic
