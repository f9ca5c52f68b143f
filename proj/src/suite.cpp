#include "g2cubic/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "g2cubic/enumeration.hpp"
#include "g2cubic/finite_model.hpp"
#include "g2cubic/form_algebra.hpp"
#include "g2cubic/g2_core.hpp"
#include "g2cubic/polynomial.hpp"

namespace g2cubic {

namespace {

const std::vector<std::string> kSuites = {"g2", "forms", "finite", "classes", "zeta"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

long long parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + v + "'");
    return x;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
    return x;
}

std::string fmt(double x) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_same_v<T, std::string>)
            out += v[i];
        else
            out += std::to_string(v[i]);
    }
    return out;
}

// rational with a zero infinitesimal part squared away: a + b*eps, eps^2 = 0
struct Dual {
    Rational a, b;
    Dual() = default;
    Dual(long x) : a(x), b(0) {}  // NOLINT
    Dual(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}
    friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
    Dual operator-() const { return {-a, -b}; }
};

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

GL2Elt random_matrix(std::mt19937_64& rng) {
    for (;;) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng), d = random_rational(rng);
        if (a * d - b * c != 0) return {a, b, c, d};
    }
}

IntMatrix random_unimodular(std::mt19937_64& rng, int steps) {
    std::uniform_int_distribution<int> pick(0, 3), k(-3, 3);
    IntMatrix m;
    for (int i = 0; i < steps; ++i) {
        switch (pick(rng)) {
            case 0: m = m * IntMatrix{1, 0, k(rng), 1}; break;
            case 1: m = m * IntMatrix{1, k(rng), 0, 1}; break;
            case 2: m = m * IntMatrix{0, 1, -1, 0}; break;
            default: m = m * IntMatrix{-1, 0, 0, 1}; break;
        }
    }
    return m;
}

// Classifies an integral form with small coefficients by testing every candidate root (u:v).
OrbitClass classify_by_root_search(const IntForm& x) {
    if (x == IntForm{0, 0, 0, 0}) return {OrbitClass::Kind::S0, 0};
    std::int64_t span = 1;
    for (auto c : x) span = std::max(span, std::abs(c));
    int roots = 0;
    bool triple = false;
    for (std::int64_t v = 0; v <= span; ++v)
        for (std::int64_t u = -span; u <= span; ++u) {
            if (std::gcd(u, v) != 1 || (v == 0 && u != 1)) continue;
            const std::int64_t val = x[0] * u * u * u + x[1] * u * u * v + x[2] * u * v * v + x[3] * v * v * v;
            if (val != 0) continue;
            ++roots;
            const std::int64_t fuu = 6 * x[0] * u + 2 * x[1] * v, fuv = 2 * x[1] * u + 2 * x[2] * v, fvv = 2 * x[2] * u + 6 * x[3] * v;
            if (fuu == 0 && fuv == 0 && fvv == 0) triple = true;
        }
    if (algebra::discriminant(x) == 0) return {triple ? OrbitClass::Kind::S1 : OrbitClass::Kind::S2, 0};
    return OrbitClass::regular(roots == 3 ? 1 : roots == 1 ? 2 : 3);
}

std::string form_tag(const IntForm& f) {
    return std::to_string(f[0]) + "," + std::to_string(f[1]) + "," + std::to_string(f[2]) + "," + std::to_string(f[3]);
}

Rational random_q(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, 12);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

struct PolyBundle {
    ExactBundle exact;
    std::array<Rational, 3> zp{}, zh{};  // coefficients in s
};

PolyBundle random_bundle(std::mt19937_64& rng) {
    PolyBundle pb;
    auto& c = pb.exact.c;
    for (Rational* v : {&c.vol_L, &c.vol_M0, &c.vol_M1, &c.vol_M2, &c.c_F}) *v = random_q(rng, 1, 30);
    for (Rational* v : {&c.phi0, &c.phihat0, &c.sigma1_phi, &c.sigma1_phihat, &c.dbl_phi, &c.dbl_phihat, &c.dbl_log_phi}) {
        do {
            *v = random_q(rng, -20, 20);
        } while (*v == 0);
    }
    for (auto& q : pb.zp) q = random_q(rng, -5, 5);
    for (auto& q : pb.zh) q = random_q(rng, -5, 5);
    auto zp = pb.zp, zh = pb.zh;
    pb.exact.zplus_phi = [zp](const Rational& s) { return Rational(zp[0] + zp[1] * s + zp[2] * s * s); };
    pb.exact.zplus_phihat = [zh](const Rational& s) { return Rational(zh[0] + zh[1] * s + zh[2] * s * s); };
    return pb;
}

FunctionalBundle to_functional(const PolyBundle& pb) {
    FunctionalBundle b;
    const auto& c = pb.exact.c;
    b.c = {c.vol_L.get_d(), c.vol_M0.get_d(), c.vol_M1.get_d(), c.vol_M2.get_d(), c.c_F.get_d(), c.phi0.get_d(), c.phihat0.get_d(),
           c.sigma1_phi.get_d(), c.sigma1_phihat.get_d(), c.dbl_phi.get_d(), c.dbl_phihat.get_d(), c.dbl_log_phi.get_d(),
           c.lim_term.get_d(), c.log_height_int.get_d(), c.n1.get_d(), c.n2.get_d()};
    const std::array<double, 3> zp{pb.zp[0].get_d(), pb.zp[1].get_d(), pb.zp[2].get_d()};
    const std::array<double, 3> zh{pb.zh[0].get_d(), pb.zh[1].get_d(), pb.zh[2].get_d()};
    b.zplus_phi = [zp](double s) { return zp[0] + zp[1] * s + zp[2] * s * s; };
    b.zplus_phihat = [zh](double s) { return zh[0] + zh[1] * s + zh[2] * s * s; };
    return b;
}

// Residues read off the template summands: (s - pole) times the summands with that pole, at any s.
Residues<Rational> residues_from_terms(const ExactBundle& b) {
    const Rational s(7, 11);
    const auto t = principal_terms(b, s);
    Residues<Rational> r;
    r.at_0 = s * (t[2] + t[6]);
    r.at_1_3 = (s - Rational(1, 3)) * t[4];
    r.at_5_3 = (s - Rational(5, 3)) * t[5];
    r.at_2 = (s - 2) * (t[3] + t[7]);
    return r;
}

int residue_mismatches(const ExactBundle& b, const Rational& eps, const Rational& slack) {
    const auto r = principal_residues(b);
    const auto expect = residues_from_terms(b);
    int bad = 0;
    for (const auto& pole : principal_poles()) {
        if (r.at(pole) != expect.at(pole)) ++bad;
        const Rational s = pole + eps;
        Rational gap = (s - pole) * principal_part(b, s) - r.at(pole);
        if (gap < 0) gap = -gap;
        if (gap > slack) ++bad;
    }
    return bad;
}

}  // namespace

// ---------------------------------------------------------------- config

SuiteConfig parse_suite_config(const std::string& text) {
    SuiteConfig cfg;
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw std::invalid_argument("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        if (key == "suites") {
            cfg.suites = split_list(v);
        } else if (key == "moduli") {
            cfg.moduli.clear();
            for (const auto& s : split_list(v)) cfg.moduli.push_back(static_cast<int>(parse_int(key, s)));
        } else if (key == "exact_modulus") {
            cfg.exact_modulus = static_cast<int>(parse_int(key, v));
        } else if (key == "random_functions") {
            cfg.random_functions = static_cast<int>(parse_int(key, v));
        } else if (key == "random_instances") {
            cfg.random_instances = static_cast<int>(parse_int(key, v));
        } else if (key == "max_disc") {
            cfg.max_disc = parse_int(key, v);
        } else if (key == "twists") {
            cfg.twists = static_cast<int>(parse_int(key, v));
        } else if (key == "primes") {
            cfg.primes.clear();
            for (const auto& s : split_list(v)) cfg.primes.push_back(parse_int(key, s));
        } else if (key == "max_level") {
            cfg.max_level = static_cast<int>(parse_int(key, v));
        } else if (key == "tolerance") {
            cfg.tolerance = parse_double(key, v);
        } else if (key == "quad_tolerance") {
            cfg.quad_tolerance = parse_double(key, v);
        } else if (key == "limit_tolerance") {
            cfg.limit_tolerance = parse_double(key, v);
        } else if (key == "seed") {
            const long long s = parse_int(key, v);
            if (s < 0) throw std::invalid_argument("config: seed must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "height_norm") {
            cfg.height_norm = parse_height_norm(v);
        } else if (key == "group") {
            cfg.group = parse_group(v);
        } else if (key == "report") {
            cfg.report_path = v;
        } else if (key == "classes_dir") {
            cfg.classes_dir = v;
        } else if (key == "bundle") {
            cfg.bundle_path = v;
        } else if (key == "threads") {
            const long long t = parse_int(key, v);
            if (t < 0) throw std::invalid_argument("config: threads must be nonnegative");
            cfg.threads = static_cast<unsigned>(t);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    validate(cfg);
    return cfg;
}

void validate(const SuiteConfig& cfg) {
    auto fail = [](const std::string& m) { throw std::invalid_argument("config: " + m); };
    if (cfg.suites.empty()) fail("no suites selected");
    for (const auto& s : cfg.suites)
        if (s != "all" && std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) fail("unknown suite '" + s + "'");
    for (int N : cfg.moduli) {
        validate_modulus(N);
        if (N > 23) fail("modulus " + std::to_string(N) + " exceeds the resource guard 23");
    }
    if (cfg.exact_modulus != 0) {
        validate_modulus(cfg.exact_modulus);
        if (!is_prime(cfg.exact_modulus) || cfg.exact_modulus > 7) fail("exact_modulus must be 0 or a prime 5 or 7");
    }
    if (cfg.random_functions < 1 || cfg.random_functions > 10000) fail("random_functions must lie in [1, 10000]");
    if (cfg.random_instances < 1 || cfg.random_instances > 1000000) fail("random_instances must lie in [1, 1000000]");
    if (cfg.max_disc < 27 || cfg.max_disc > 3000) fail("max_disc must lie in [27, 3000]");
    if (cfg.twists < 1 || cfg.twists > 1000) fail("twists must lie in [1, 1000]");
    if (cfg.primes.empty()) fail("no primes given");
    for (auto p : cfg.primes)
        if (p < 2 || p > 97 || !is_prime(static_cast<int>(p))) fail("primes must be primes up to 97");
    if (cfg.max_level < 2 || cfg.max_level > 8) fail("max_level must lie in [2, 8]");
    for (auto [name, t] : {std::pair<const char*, double>{"tolerance", cfg.tolerance}, {"quad_tolerance", cfg.quad_tolerance},
                           {"limit_tolerance", cfg.limit_tolerance}})
        if (!(t >= 0) || !std::isfinite(t)) fail(std::string(name) + " must be finite and nonnegative");
}

std::vector<std::pair<std::string, std::string>> describe(const SuiteConfig& cfg) {
    // output locations and thread counts do not affect results and are left out
    return {{"suites", join(cfg.suites)},
            {"moduli", join(cfg.moduli)},
            {"exact_modulus", std::to_string(cfg.exact_modulus)},
            {"random_functions", std::to_string(cfg.random_functions)},
            {"random_instances", std::to_string(cfg.random_instances)},
            {"max_disc", std::to_string(cfg.max_disc)},
            {"twists", std::to_string(cfg.twists)},
            {"primes", join(cfg.primes)},
            {"max_level", std::to_string(cfg.max_level)},
            {"tolerance", fmt(cfg.tolerance)},
            {"quad_tolerance", fmt(cfg.quad_tolerance)},
            {"limit_tolerance", fmt(cfg.limit_tolerance)},
            {"seed", std::to_string(cfg.seed)},
            {"rng", "mt19937_64"},
            {"height_norm", height_norm_name(cfg.height_norm)},
            {"group", group_name(cfg.group)},
            {"bundle", cfg.bundle_path}};
}

bool suite_selected(const SuiteConfig& cfg, const std::string& name) {
    for (const auto& s : cfg.suites)
        if (s == "all" || s == name) return true;
    return false;
}

// ---------------------------------------------------------------- g2

std::vector<CheckRecord> run_g2_suite(const SuiteConfig& cfg) {
    (void)cfg;
    std::vector<CheckRecord> out;
    const auto& t = chevalley_table();
    std::array<LieElement, kLieDim> e;
    for (int i = 0; i < kLieDim; ++i) e[static_cast<std::size_t>(i)] = LieElement::basis(i);

    int jacobi = 0, anti = 0, grading = 0;
    for (int i = 0; i < kLieDim; ++i)
        for (int j = 0; j < kLieDim; ++j) {
            const auto& x = e[static_cast<std::size_t>(i)];
            const auto& y = e[static_cast<std::size_t>(j)];
            if (!(bracket(x, y, t) + bracket(y, x, t)).is_zero()) ++anti;
            for (const auto& z : e)
                if (!(bracket(x, bracket(y, z, t), t) + bracket(y, bracket(z, x, t), t) + bracket(z, bracket(x, y, t), t)).is_zero()) ++jacobi;
            // weight of a basis vector: the root, or 0 for the Cartan part
            const RootVector wx = root_of(i).value_or(RootVector{}), wy = root_of(j).value_or(RootVector{});
            const RootVector w = wx + wy;
            const LieElement p = bracket(x, y, t);
            for (int k = 0; k < kLieDim; ++k) {
                if (p[k] == 0) continue;
                const RootVector wk = root_of(k).value_or(RootVector{});
                if (wk != w) ++grading;
            }
        }
    out.push_back(make_check("g2.jacobi", "basis triples=2744", jacobi, 0));
    out.push_back(make_check("g2.antisymmetry", "basis pairs=196", anti, 0));
    out.push_back(make_check("g2.grading", "basis pairs=196", grading, 0));

    // derivative of the twisted action along 1 + eps*A, with det^-2 = 1 - 2 tr(A) eps
    auto derivative = [](const std::array<Rational, 4>& A) {
        std::array<std::array<Rational, 4>, 4> m{};
        const Dual a(1, A[0]), b(0, A[1]), c(0, A[2]), d(1, A[3]);
        const Rational tr = A[0] + A[3];
        for (int j = 0; j < 4; ++j) {
            algebra::Quad<Dual> x{Dual(0), Dual(0), Dual(0), Dual(0)};
            x[static_cast<std::size_t>(j)] = Dual(1);
            const auto g = algebra::twisted_substitution(x, a, b, c, d);
            for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(i)].b - 2 * tr * g[static_cast<std::size_t>(i)].a;
        }
        return m;
    };
    // V in form coordinates: x2 and x3 carry a factor 1/3 against the root vectors
    const Rational scale[4] = {1, Rational(1, 3), Rational(1, 3), 1};
    auto ad_in_form_coordinates = [&](const LieElement& y) {
        auto m = levi_action_matrix(y, t);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *= scale[j] / scale[i];
        return m;
    };
    const std::pair<std::string, LieElement> levi[4] = {{"h1", LieElement::basis(0)},
                                                        {"h2", LieElement::basis(1)},
                                                        {"x_a1", LieElement::basis(basis_index({1, 0}))},
                                                        {"x_minus_a1", LieElement::basis(basis_index({-1, 0}))}};
    for (const auto& [name, y] : levi) {
        const auto lhs = ad_in_form_coordinates(y), rhs = derivative(levi_to_gl2(y));
        int bad = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) bad += lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        out.push_back(make_check("g2.levi_action." + name, "levi basis element " + name, bad, 0));
    }

    // ad of the alpha1 coroot is diagonal on V with entries -3, -1, 1, 3
    const auto h = ad_in_form_coordinates(LieElement::basis(0));
    const int expect[4] = {-3, -1, 1, 3};
    int bad = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bad += h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != (i == j ? expect[i] : 0);
    out.push_back(make_check("g2.weight_spectrum", "expected -3,-1,1,3", bad, 0));
    return out;
}

// ---------------------------------------------------------------- forms

std::vector<CheckRecord> run_forms_suite(const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    using P = Polynomial;
    algebra::Quad<P> x = {P::variable(0), P::variable(1), P::variable(2), P::variable(3)};
    P a = P::variable(4), b = P::variable(5), c = P::variable(6), d = P::variable(7);
    P det = a * d - b * c;
    const auto g = algebra::twisted_substitution(x, a, b, c, d);
    // the action is det^-2 times g, so the covariance reads P(g) = det^6 P(x)
    out.push_back(make_check("forms.disc_covariance.symbolic", "indeterminates x1..x4,a,b,c,d",
                             algebra::discriminant(g) == det.pow(6) * algebra::discriminant(x) ? 0 : 1, 0));

    auto pair = [](const algebra::Quad<P>& u, const algebra::Quad<P>& v) {
        const Rational third(1, 3);
        return u[0] * v[3] - P(third) * u[1] * v[2] + P(third) * u[2] * v[1] - u[3] * v[0];
    };
    // [det^-2 g_y, det^-1 g_z] = [y, z] reads [g_y, g_z] = det^3 [y, z]; bilinear, so basis pairs suffice
    int pair_bad = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            algebra::Quad<P> ei{}, ej{};
            ei[static_cast<std::size_t>(i)] = P(1L);
            ej[static_cast<std::size_t>(j)] = P(1L);
            const auto gi = algebra::twisted_substitution(ei, a, b, c, d);
            const auto gj = algebra::twisted_substitution(ej, a, b, c, d);
            if (pair(gi, gj) != det.pow(3) * pair(ei, ej)) ++pair_bad;
        }
    out.push_back(make_check("forms.pairing.symbolic", "basis pairs with indeterminate l", pair_bad, 0));

    const auto h = algebra::hessian(x);
    out.push_back(make_check("forms.hessian_relation.symbolic", "indeterminates x1..x4",
                             algebra::quadratic_discriminant(h) == P(-3L) * algebra::discriminant(x) ? 0 : 1, 0));

    std::mt19937_64 rng(cfg.seed);
    int disc_bad = 0, pairing_bad = 0, hess_bad = 0;
    for (int i = 0; i < cfg.random_instances; ++i) {
        BinaryCubicForm f(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
        BinaryCubicForm k(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng));
        const GL2Elt l = random_matrix(rng);
        const Rational D = l.det();
        if (discriminant(act(f, l)) != discriminant(f) / (D * D)) ++disc_bad;
        if (pairing(act(f, l), act(k, iota(l))) != pairing(f, k)) ++pairing_bad;
        if (hessian(f).discriminant() != -3 * discriminant(f)) ++hess_bad;
    }
    const std::string inputs = "seed=" + std::to_string(cfg.seed) + ";instances=" + std::to_string(cfg.random_instances);
    out.push_back(make_check("forms.disc_covariance.random", inputs, disc_bad, 0));
    out.push_back(make_check("forms.pairing.random", inputs, pairing_bad, 0));
    out.push_back(make_check("forms.hessian_relation.random", inputs, hess_bad, 0));

    int cls_bad = 0;
    for (std::int64_t p = -3; p <= 3; ++p)
        for (std::int64_t q = -3; q <= 3; ++q)
            for (std::int64_t r = -3; r <= 3; ++r)
                for (std::int64_t s = -3; s <= 3; ++s)
                    if (classify_orbit(BinaryCubicForm::from_integers({p, q, r, s})) != classify_by_root_search({p, q, r, s})) ++cls_bad;
    out.push_back(make_check("forms.classification.box", "coefficients in [-3,3], 2401 forms", cls_bad, 0));

    const std::pair<IntForm, OrbitClass> witnesses[] = {{{0, 0, 0, 5}, {OrbitClass::Kind::S1, 0}},
                                                        {{0, 0, 1, 2}, {OrbitClass::Kind::S2, 0}},
                                                        {{1, 0, -1, -1}, OrbitClass::regular(3)},
                                                        {{1, 0, 0, 1}, OrbitClass::regular(2)},
                                                        {{0, 1, 1, 0}, OrbitClass::regular(1)}};
    for (const auto& [f, expect] : witnesses)
        out.push_back(make_check("forms.witness." + form_tag(f), "expected " + expect.to_string(),
                                 classify_orbit(BinaryCubicForm::from_integers(f)) == expect ? 0 : 1, 0));
    return out;
}

// ---------------------------------------------------------------- finite model

std::vector<CheckRecord> run_finite_suite(const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    const double tol = cfg.tolerance;
    for (int N : cfg.moduli) {
        const bool prime = is_prime(N);
        const auto fibers = prime ? orbit_fibers(N) : std::vector<FiberLabel>{};
        double inv = 0, plan = 0, part = 0, pois = 0, rem = 0, pre = 0, cov = 0;
        const std::array<int, 4> l1{2, 1, 1, 1}, l2{2, 5, 1, 4};
        for (int i = 0; i < cfg.random_functions; ++i) {
            const auto phi = random_function(N, cfg.seed + 1000003ull * static_cast<std::uint64_t>(N) + static_cast<std::uint64_t>(i));
            inv = std::max(inv, involution_residual(phi));
            plan = std::max(plan, plancherel_residual(phi));
            part = std::max({part, partial_inversion_residual(phi, {4}), partial_inversion_residual(phi, {3, 4}), partial_consistency_residual(phi)});
            if (prime) pois = std::max({pois, poisson_residual(phi), rearrangement_residual(phi, fibers)});
            rem = std::max(rem, remarkable_residual(phi));
            pre = std::max(pre, pre_e12_residual(phi));
            cov = std::max(cov, covariance_residual(phi, l1));
            if (mod(2LL * 4 - 5LL * 1, N) != 0) cov = std::max(cov, covariance_residual(phi, l2));
        }
        const std::string tag = ".N" + std::to_string(N);
        const std::string inputs = "N=" + std::to_string(N) + ";seed=" + std::to_string(cfg.seed) + ";functions=" + std::to_string(cfg.random_functions);
        out.push_back(make_check("finite.involution" + tag, inputs, inv, tol));
        out.push_back(make_check("finite.plancherel" + tag, inputs, plan, tol));
        out.push_back(make_check("finite.partial_inversion" + tag, inputs, part, tol));
        if (prime) out.push_back(make_check("finite.poisson_rearrangement" + tag, inputs, pois, tol));
        out.push_back(make_check("finite.remarkable" + tag, inputs, rem, tol));
        out.push_back(make_check("finite.pre_e12" + tag, inputs, pre, tol));
        out.push_back(make_check("finite.covariance" + tag, inputs + ";l=2,1,1,1;2,5,1,4", cov, tol));

        if (prime) {
            std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(N)));
            double mv = 0;
            for (int i = 0; i < cfg.random_functions; ++i) {
                PlaneFunction f(N);
                for (auto& v : f.values) v = Complex(unit_double(rng()) - 0.5, unit_double(rng()) - 0.5);
                mv = std::max(mv, verify_mean_value(f, tol).max_residual);
            }
            out.push_back(make_check("finite.mean_value" + tag, inputs, mv, tol));
        }
    }
    if (cfg.exact_modulus != 0) {
        const int N = cfg.exact_modulus;
        const auto fibers = orbit_fibers(N);
        double worst = 0;
        ExactModelFunction grid(N);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto phi = exact_indicator(N, grid.point(i));
            worst = std::max({worst, involution_residual(phi), plancherel_residual(phi), poisson_residual(phi), rearrangement_residual(phi, fibers),
                              remarkable_residual(phi), pre_e12_residual(phi), partial_consistency_residual(phi),
                              partial_inversion_residual(phi, {4}), partial_inversion_residual(phi, {3, 4}), covariance_residual(phi, {2, 1, 1, 1})});
        }
        out.push_back(make_check("finite.exact_indicators.N" + std::to_string(N), "all point indicators, cyclotomic arithmetic", worst, 0));
    }
    return out;
}

// ---------------------------------------------------------------- class tables

std::vector<CheckRecord> run_classes_suite(const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    EnumerationOptions opt;
    opt.group = cfg.group;
    opt.threads = cfg.threads;
    auto table = [&](Strategy s) {
        if (cfg.classes_dir.empty()) return class_table(cfg.max_disc, s, opt);
        return ClassTableCache(cfg.classes_dir).get(cfg.max_disc, s, opt);
    };
    const ClassTable box = table(Strategy::BoxOracle), red = table(Strategy::Reduction);
    const std::string inputs = "X=" + std::to_string(cfg.max_disc) + ";group=" + group_name(cfg.group);

    auto key = [](const ClassRecord& r) { return std::tuple(r.disc, r.representative, r.stab_order, r.splitting_index); };
    std::set<decltype(key(ClassRecord{}))> a, b;
    for (const auto& r : box.records) a.insert(key(r));
    for (const auto& r : red.records) b.insert(key(r));
    std::size_t diff = 0;
    for (const auto& k : a) diff += !b.count(k);
    for (const auto& k : b) diff += !a.count(k);
    diff += box.records.size() != a.size();  // duplicate classes
    out.push_back(make_check("classes.strategy_agreement", inputs + ";classes=" + std::to_string(red.records.size()), static_cast<double>(diff), 0));

    const std::pair<std::int64_t, IntForm> witnesses[] = {{1, {0, 1, 1, 0}}, {-23, {1, 0, -1, -1}}, {-27, {1, 0, 0, 1}}};
    for (const auto& [D, f] : witnesses) {
        const ClassRecord w = make_record(f, cfg.group);
        int bad = w.disc != D;
        for (const auto* t : {&box, &red}) bad += std::find(t->records.begin(), t->records.end(), w) == t->records.end();
        out.push_back(make_check("classes.witness.D" + std::to_string(D), inputs + ";form=" + form_tag(f), bad, 0));
    }

    std::mt19937_64 rng(cfg.seed);
    int twist_bad = 0;
    for (const auto& r : red.records) {
        for (int k = 0; k < cfg.twists; ++k) {
            IntForm g{};
            for (;;) {
                const IntMatrix m = random_unimodular(rng, 6);
                if (cfg.group == ClassGroup::SL2 && m.det() != 1) continue;
                try {
                    g = act_unimodular(r.representative, m);
                } catch (const std::overflow_error&) {
                    continue;
                }
                if (std::all_of(g.begin(), g.end(), [](std::int64_t c) { return std::abs(c) <= kReductionBound; })) break;
            }
            if (!(make_record(g, cfg.group) == r)) ++twist_bad;
        }
    }
    out.push_back(make_check("classes.twist_invariance", inputs + ";twists=" + std::to_string(cfg.twists) + ";seed=" + std::to_string(cfg.seed),
                             twist_bad, 0));

    const auto pa = splitting_partition(box), pb = splitting_partition(red);
    const double part_bad = std::abs(static_cast<double>(pb.total()) - static_cast<double>(red.records.size())) +
                            (pa.positive != pb.positive) + (pa.negative != pb.negative);
    out.push_back(make_check("classes.partition", inputs, part_bad, 0));

    double mono = 0;
    for (int sign : {1, -1})
        for (std::int64_t X = 1; X < cfg.max_disc; X = X * 2 + 1) {
            const double small = dirichlet_partial(truncate(red, X), 2.0, sign), large = dirichlet_partial(truncate(red, std::min(2 * X + 1, cfg.max_disc)), 2.0, sign);
            mono = std::max(mono, small - large);
        }
    out.push_back(make_check("classes.dirichlet_monotone", inputs + ";s=2", mono, 0));
    return out;
}

// ---------------------------------------------------------------- zeta

std::vector<CheckRecord> run_zeta_suite(const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;

    double grid = 0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double a = std::pow(10.0, -3.0 + 6.0 * i / 19.0), T1 = -5.0 + 10.0 * j / 19.0;
            const double expect = T1 - std::log(a);
            grid = std::max({grid, std::abs(truncation_residual_quadrature(a, T1) - expect), std::abs(truncation_residual_closed(a, T1) - expect)});
        }
    out.push_back(make_check("zeta.truncation_residual", "a in 10^[-3,3], T1 in [-5,5], 20x20", grid, cfg.tolerance));

    std::mt19937_64 rng(cfg.seed);
    Rational eps(1), slack(1);
    for (int i = 0; i < 40; ++i) eps /= 10;
    for (int i = 0; i < 27; ++i) slack /= 10;
    int res_bad = 0, t2_bad = 0, t1_bad = 0, rhs_bad = 0;
    double limit = 0;
    const int bundles = 30;
    for (int trial = 0; trial < bundles; ++trial) {
        const auto pb = random_bundle(rng);
        const auto& b = pb.exact;
        res_bad += residue_mismatches(b, eps, slack);

        // 2-point Richardson on s = 2 + 10^-5, 2 + 10^-6
        const auto fb = to_functional(pb);
        const double res = principal_residues(fb).at_2;
        const double h1 = 1e-5, h2 = 1e-6;
        const double v1 = h1 * principal_part(fb, 2.0 + h1), v2 = h2 * principal_part(fb, 2.0 + h2);
        const double extrapolated = (h1 * v2 - h2 * v1) / (h1 - h2);
        limit = std::max(limit, std::abs(extrapolated - res));

        const Rational T1 = random_q(rng, -9, 9), T2 = random_q(rng, -9, 9);
        const auto terms = tilde_terms_at_two(b, T1, T2);
        t2_bad += terms[3] != T2 * b.c.vol_L * b.c.phihat0;
        t2_bad += tilde_terms_at_two(b, T1, Rational(0))[3] != 0;
        const Rational slope = b.c.vol_M0 / b.c.c_F * b.c.dbl_phi;
        const Rational base = tilde_Z_at_two(b, Rational(0), T2);
        for (const Rational& t : {T1, Rational(1), Rational(-7, 3)}) t1_bad += tilde_Z_at_two(b, t, T2) - base != slope * t;

        const auto kept = apply_bookkeeping(b);
        rhs_bad += identity_rhs(kept, T1, T2) != tilde_Z_at_two(kept, T1, T2);
        rhs_bad += identity_rhs(kept, T1 + 1, T2) - identity_rhs(kept, T1, T2) != kept.c.vol_M1 * kept.c.n1;
        rhs_bad += identity_rhs(kept, T1, T2 + 1) - identity_rhs(kept, T1, T2) != kept.c.vol_M2 * kept.c.n2;
    }
    const std::string inputs = "seed=" + std::to_string(cfg.seed) + ";bundles=" + std::to_string(bundles);
    out.push_back(make_check("zeta.residues", inputs + ";eps=1e-40", res_bad, 0));
    out.push_back(make_check("zeta.limit_at_two", inputs + ";h=1e-5,1e-6", limit, cfg.limit_tolerance));
    out.push_back(make_check("zeta.tilde_t2_term", inputs, t2_bad, 0));
    out.push_back(make_check("zeta.tilde_t1_affine", inputs, t1_bad, 0));
    out.push_back(make_check("zeta.identity_rhs", inputs, rhs_bad, 0));

    if (!cfg.bundle_path.empty()) {
        const auto b = parse_exact_bundle(read_file(cfg.bundle_path));
        out.push_back(make_check("zeta.residues.bundle", "bundle=" + fnv1a_hex(read_file(cfg.bundle_path)), residue_mismatches(b, eps, slack), 0));
    }

    for (auto p : cfg.primes) {
        double worst = 0;
        for (double s : {2.0 / 3.0, 2.0})
            for (int K = 1; K <= 40; ++K) {
                const double gap = sigma1_closed(p, s) - sigma1_factor(p, s, K);
                const double bound = sigma1_tail_bound(p, s, K);
                worst = std::max({worst, -gap, gap - bound});
            }
        out.push_back(make_check("zeta.sigma1_tail.p" + std::to_string(p), "s=2/3,2;K=1..40", worst, cfg.tolerance));
    }
    for (auto [name, s] : {std::pair<const char*, double>{"2/3", 2.0 / 3.0}, {"2", 2.0}, {"3", 3.0}})
        out.push_back(make_check(std::string("zeta.sigma1_arch.s") + name, std::string("s=") + name,
                                 std::abs(sigma1_arch_exp_sinh(s) - sigma1_arch_log_substitution(s)), cfg.quad_tolerance));

    DensityOptions dopt;
    dopt.seed = cfg.seed;
    dopt.threads = cfg.threads;
    for (auto p : cfg.primes) {
        std::vector<LocalDensityTable> tables;
        for (int k = 1; k <= cfg.max_level; ++k) {
            tables.push_back(local_disc_densities(p, k, dopt));
            const auto& t = tables.back();
            Rational sum = 0;
            for (const auto& d : t.densities) sum += d;
            Rational gap = sum - 1;
            if (gap < 0) gap = -gap;
            // sampled tables still partition the sample exactly
            out.push_back(make_check("zeta.density_partition.p" + std::to_string(p) + ".k" + std::to_string(k),
                                     "method=" + density_method_name(t.method), gap.get_d(), 0));
        }
        int unstable = 0;
        for (int k = 2; k <= cfg.max_level; ++k) {
            const auto& lo = tables[static_cast<std::size_t>(k - 2)];
            const auto& hi = tables[static_cast<std::size_t>(k - 1)];
            if (!lo.exact || !hi.exact) continue;
            for (int j = 0; j <= k - 2; ++j) unstable += lo.densities[static_cast<std::size_t>(j)] != hi.densities[static_cast<std::size_t>(j)];
        }
        out.push_back(make_check("zeta.density_stability.p" + std::to_string(p), "k=1.." + std::to_string(cfg.max_level), unstable, 0));
    }

    const double pi = 3.14159265358979323846;
    auto radial = [pi](double r) { return std::exp(-pi * r * r); };
    auto gauss = [pi](double y1, double y2) { return std::exp(-pi * (y1 * y1 + y2 * y2)); };
    auto skew = [pi](double y1, double y2) { return std::exp(-pi * (2 * y1 * y1 + y2 * y2 / 2)) * (1 + y1 * y1); };
    const auto polar = log_height_polar(radial, cfg.height_norm);
    const auto cart = log_height_cartesian(gauss, cfg.height_norm);
    const std::string norm = height_norm_name(cfg.height_norm);
    out.push_back(make_check("zeta.log_height.gaussian", "norm=" + norm, std::abs(polar.value - cart.value), cfg.quad_tolerance));
    // scaling phi(y/c) multiplies by c^2 and adds log c times the mass
    const double c = 1.7;
    const auto sk = log_height_cartesian(skew, cfg.height_norm);
    const auto sk_scaled = log_height_cartesian([&](double y1, double y2) { return skew(y1 / c, y2 / c); }, cfg.height_norm);
    const double mass = plane_integral(skew).value;
    out.push_back(make_check("zeta.log_height.scaling", "norm=" + norm + ";c=1.7",
                             std::abs(sk_scaled.value - c * c * (sk.value + std::log(c) * mass)), cfg.quad_tolerance));
    return out;
}

// ---------------------------------------------------------------- driver

VerificationReport run_suite(const SuiteConfig& cfg) {
    validate(cfg);
    using Runner = std::vector<CheckRecord> (*)(const SuiteConfig&);
    const std::pair<std::string, Runner> runners[] = {{"g2", run_g2_suite},
                                                      {"forms", run_forms_suite},
                                                      {"finite", run_finite_suite},
                                                      {"classes", run_classes_suite},
                                                      {"zeta", run_zeta_suite}};
    std::vector<std::pair<std::string, std::future<std::vector<CheckRecord>>>> jobs;
    for (const auto& [name, fn] : runners)
        if (suite_selected(cfg, name)) jobs.emplace_back(name, std::async(std::launch::async, fn, std::cref(cfg)));

    VerificationReport report;
    report.version = code_version();
    report.toolchain = toolchain_stamp();
    report.seed = cfg.seed;
    report.config = describe(cfg);
    std::string errors;
    for (auto& [name, job] : jobs) {
        try {
            auto checks = job.get();
            report.checks.insert(report.checks.end(), checks.begin(), checks.end());
        } catch (const std::exception& e) {
            errors += (errors.empty() ? "" : "; ") + name + ": " + e.what();
        }
    }
    if (!errors.empty()) throw std::runtime_error("suite failed: " + errors);
    return report;
}

}  // namespace g2cubic
