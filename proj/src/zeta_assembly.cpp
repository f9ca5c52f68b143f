#include "g2cubic/zeta_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "g2cubic/cubic_forms.hpp"
#include "g2cubic/finite_model.hpp"

namespace g2cubic {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

template <class S>
void validate_impl(const BundleConstants<S>& c, auto positive) {
    const std::pair<const char*, const S*> fields[] = {
        {"vol_L", &c.vol_L}, {"vol_M0", &c.vol_M0}, {"vol_M1", &c.vol_M1}, {"vol_M2", &c.vol_M2}, {"c_F", &c.c_F}};
    for (const auto& [name, v] : fields)
        if (!positive(*v)) throw std::invalid_argument(std::string("bundle: ") + name + " must be strictly positive");
}

}  // namespace

void validate(const BundleConstants<double>& c) {
    validate_impl(c, [](double v) { return std::isfinite(v) && v > 0; });
}
void validate(const BundleConstants<Rational>& c) {
    validate_impl(c, [](const Rational& v) { return v > 0; });
}
void validate(const BundleConstants<std::complex<double>>& c) {
    validate_impl(c, [](const std::complex<double>& v) { return v.imag() == 0 && v.real() > 0; });
}

const std::array<Rational, 4>& principal_poles() {
    static const std::array<Rational, 4> poles{Rational(0), Rational(1, 3), Rational(5, 3), Rational(2)};
    return poles;
}

double t_integral(double s, double T2) {
    if (s == 2.0) return T2;
    const double x = s - 2.0;
    return -std::expm1(-x * T2) / x;
}

double truncation_residual_s(double a, double T1, double s) {
    if (!(a > 0)) throw std::invalid_argument("truncation residual requires a > 0");
    if (s == 2.0) return truncation_residual(a, T1);
    const double x = 2.0 - s;
    // e^{x T1} - a^x = e^{x T1} (1 - e^{x (log a - T1)})
    return -std::exp(x * T1) * std::expm1(x * (std::log(a) - T1)) / x;
}

double tilde_Z_principal(const FunctionalBundle& b, double s, const TruncationParam& T) {
    validate(b.c);
    if (!(s > 5.0 / 3.0)) throw std::invalid_argument("tilde_Z_principal requires s > 5/3");
    if (s == 2.0) return tilde_Z_at_two<double>(b, T.T1, T.T2);
    if (!b.a_profile) throw std::invalid_argument("tilde_Z_principal: s != 2 requires an a-profile");
    const auto& c = b.c;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double weighted = integrator.integrate(
        [&](double a) {
            if (!(a > 0) || !std::isfinite(a)) return 0.0;
            const double v = b.a_profile(a);
            if (v == 0.0) return 0.0;
            return v * std::pow(a, s - 1.0) * truncation_residual_s(a, T.T1, s);
        },
        1e-12);
    const double terms[] = {detail::sample(b.zplus_phi, s),
                            detail::sample(b.zplus_phihat, 2.0 - s),
                            -c.vol_L * c.phi0 / s,
                            t_integral(s, T.T2) * c.vol_L * c.phihat0,
                            -c.vol_M0 * c.sigma1_phi / (c.c_F * (3 * s - 1)),
                            c.vol_M0 * c.sigma1_phihat / (c.c_F * (3 * s - 5)),
                            -c.vol_M0 * c.dbl_phihat / (c.c_F * s),
                            c.vol_M0 / c.c_F * weighted};
    double total = 0;
    for (double t : terms) total += t;
    return total;
}

ProfileMoments profile_moments(const std::function<double(double)>& profile) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto safe = [&](double a, bool with_log) {
        if (!(a > 0) || !std::isfinite(a)) return 0.0;
        const double v = profile(a);
        if (v == 0.0) return 0.0;
        return with_log ? v * a * std::log(a) : v * a;
    };
    ProfileMoments m;
    m.dbl_phi = integrator.integrate([&](double a) { return safe(a, false); }, 1e-12);
    m.dbl_log_phi = integrator.integrate([&](double a) { return safe(a, true); }, 1e-12);
    return m;
}

// ---------------------------------------------------------------- bundle text

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(where + ": bad number '" + s + "'");
    return v;
}

template <class S>
S parse_scalar(const std::string& s, const std::string& where) {
    if constexpr (std::is_same_v<S, Rational>) {
        try {
            return parse_rational(s);
        } catch (const std::exception&) {
            throw std::invalid_argument(where + ": bad rational '" + s + "'");
        }
    } else {
        return parse_double(s, where);
    }
}

template <class S>
std::function<S(const S&)> polynomial_sampler(const std::string& value, const std::string& where) {
    std::vector<S> coeffs;
    std::stringstream ss(value);
    std::string cell;
    while (std::getline(ss, cell, ',')) coeffs.push_back(parse_scalar<S>(trim(cell), where));
    if (coeffs.empty()) throw std::invalid_argument(where + ": empty coefficient list");
    return [coeffs](const S& s) {
        S acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
        return acc;
    };
}

template <class S>
Bundle<S> parse_bundle_impl(const std::string& text) {
    Bundle<S> b;
    auto& c = b.c;
    std::map<std::string, S*> scalars{{"vol_L", &c.vol_L},
                                      {"vol_M0", &c.vol_M0},
                                      {"vol_M1", &c.vol_M1},
                                      {"vol_M2", &c.vol_M2},
                                      {"c_F", &c.c_F},
                                      {"phi0", &c.phi0},
                                      {"phihat0", &c.phihat0},
                                      {"sigma1_phi", &c.sigma1_phi},
                                      {"sigma1_phihat", &c.sigma1_phihat},
                                      {"dbl_phi", &c.dbl_phi},
                                      {"dbl_phihat", &c.dbl_phihat},
                                      {"dbl_log_phi", &c.dbl_log_phi},
                                      {"lim_term", &c.lim_term},
                                      {"log_height_int", &c.log_height_int},
                                      {"n1", &c.n1},
                                      {"n2", &c.n2}};
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "bundle line " + std::to_string(lineno);
        if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (auto it = scalars.find(key); it != scalars.end()) {
            *it->second = parse_scalar<S>(value, where);
        } else if (key == "zplus_phi") {
            b.zplus_phi = polynomial_sampler<S>(value, where);
        } else if (key == "zplus_phihat") {
            b.zplus_phihat = polynomial_sampler<S>(value, where);
        } else {
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        }
    }
    validate(b.c);
    return b;
}

}  // namespace

FunctionalBundle parse_bundle(const std::string& text) { return parse_bundle_impl<double>(text); }
ExactBundle parse_exact_bundle(const std::string& text) { return parse_bundle_impl<Rational>(text); }

std::vector<std::string> bundle_keys() {
    return {"vol_L", "vol_M0", "vol_M1", "vol_M2", "c_F", "phi0", "phihat0", "sigma1_phi", "sigma1_phihat",
            "dbl_phi", "dbl_phihat", "dbl_log_phi", "lim_term", "log_height_int", "n1", "n2", "zplus_phi",
            "zplus_phihat"};
}

// ---------------------------------------------------------------- local factors

namespace {
void check_prime(std::int64_t p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}
}  // namespace

double sigma1_factor(std::int64_t p, double s, int K) {
    check_prime(p);
    if (!(s > 0)) throw std::invalid_argument("sigma1_factor requires s > 0");
    if (K < 1) throw std::invalid_argument("sigma1_factor requires K >= 1");
    const double q = std::pow(static_cast<double>(p), -s);
    double sum = 0, term = 1;
    for (int n = 0; n <= K; ++n) {
        sum += term;
        term *= q;
    }
    return sum;
}

double sigma1_closed(std::int64_t p, double s) {
    check_prime(p);
    if (!(s > 0)) throw std::invalid_argument("sigma1_closed requires s > 0");
    return 1.0 / (1.0 - std::pow(static_cast<double>(p), -s));
}

double sigma1_tail_bound(std::int64_t p, double s, int K) {
    return std::pow(static_cast<double>(p), -(K + 1) * s) * sigma1_closed(p, s);
}

double sigma1_arch_exp_sinh(double s) {
    if (!(s > 0)) throw std::invalid_argument("sigma1_arch requires s > 0");
    boost::math::quadrature::tanh_sinh<double> near;
    boost::math::quadrature::exp_sinh<double> far;
    auto f = [s](double a) {
        const double g = std::exp(-kPi * a * a);
        return a > 0 && g > 0 ? std::pow(a, s - 1.0) * g : 0.0;
    };
    return 2.0 * (near.integrate(f, 0.0, 1.0, 1e-14) + far.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-14));
}

double sigma1_arch_log_substitution(double s) {
    if (!(s > 0)) throw std::invalid_argument("sigma1_arch requires s > 0");
    // a = e^t; below t_lo the Gaussian factor is 1 to double precision and the tail is e^{s t_lo}/s
    const double t_lo = -45.0 / s, t_hi = 3.0;
    auto f = [s](double t) { return std::exp(s * t - kPi * std::exp(2.0 * t)); };
    const int pieces = static_cast<int>(std::ceil(t_hi - t_lo));
    const double width = (t_hi - t_lo) / pieces;
    double total = std::exp(s * t_lo) / s;
    for (int i = 0; i < pieces; ++i) {
        const double l = t_lo + i * width;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, l, l + width, 8, 1e-14);
    }
    return 2.0 * total;
}

// ---------------------------------------------------------------- densities

std::string density_method_name(DensityMethod m) {
    switch (m) {
        case DensityMethod::Exhaustive: return "exhaustive";
        case DensityMethod::Stratified: return "stratified";
        default: return "sampling";
    }
}

namespace {

using i128 = __int128;

std::int64_t ipow(std::int64_t p, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

std::int64_t disc_mod(const std::array<std::int64_t, 4>& x, std::int64_t M) {
    const i128 a = x[0], b = x[1], c = x[2], d = x[3];
    i128 v = b * b % M * (c * c % M) % M + 18 * (a * b % M) % M * (c * d % M) % M - 4 * (b * b % M * b % M) * d % M -
             4 * a * (c * c % M * c % M) % M - 27 * (a * a % M) % M * (d * d % M) % M;
    v %= M;
    if (v < 0) v += M;
    return static_cast<std::int64_t>(v);
}

// valuation of v mod p^k, k when v = 0
int valuation_capped(std::int64_t v, std::int64_t p, int k) {
    if (v == 0) return k;
    int j = 0;
    while (v % p == 0) {
        v /= p;
        ++j;
    }
    return j;
}

unsigned thread_count(unsigned requested, std::size_t work) {
    unsigned t = requested ? requested : std::thread::hardware_concurrency();
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(std::max(1u, t), work)));
}

std::vector<Integer> exhaustive_counts(std::int64_t p, int k, unsigned threads) {
    const std::int64_t M = ipow(p, k);
    const unsigned T = thread_count(threads, static_cast<std::size_t>(M));
    std::vector<std::vector<std::uint64_t>> partial(T, std::vector<std::uint64_t>(static_cast<std::size_t>(k + 1), 0));
    auto work = [&](unsigned t) {
        auto& out = partial[t];
        std::array<std::int64_t, 4> x{};
        for (x[0] = t; x[0] < M; x[0] += T)
            for (x[1] = 0; x[1] < M; ++x[1])
                for (x[2] = 0; x[2] < M; ++x[2])
                    for (x[3] = 0; x[3] < M; ++x[3]) ++out[static_cast<std::size_t>(valuation_capped(disc_mod(x, M), p, k))];
    };
    if (T == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < T; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::vector<Integer> counts(static_cast<std::size_t>(k + 1), 0);
    for (const auto& part : partial)
        for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += Integer(std::to_string(part[j]));
    return counts;
}

// #{d mod p^r : d = d0 mod p, 27 d^2 + 4 c^3 = 0 mod p^r}
std::int64_t curve_fiber_count(std::int64_t c, std::int64_t d0, std::int64_t p, int r) {
    std::vector<std::int64_t> nodes;
    std::int64_t mod = p;
    const i128 cc = c;
    auto ok = [&](std::int64_t d, std::int64_t m) {
        const i128 v = (27 * (i128(d) * d % m) + 4 * (cc * cc % m * cc % m)) % m;
        return v == 0;
    };
    if (ok(d0, mod)) nodes.push_back(d0);
    for (int level = 1; level < r && !nodes.empty(); ++level) {
        const std::int64_t next = mod * p;
        std::vector<std::int64_t> lifted;
        for (auto d : nodes)
            for (std::int64_t e = 0; e < p; ++e) {
                const std::int64_t dd = d + mod * e;
                if (ok(dd, next)) lifted.push_back(dd);
            }
        nodes.swap(lifted);
        mod = next;
    }
    return static_cast<std::int64_t>(nodes.size());
}

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

// number of x = xbar mod p with disc(x) = 0 mod p^r
Integer class_zero_count(const IntForm& xbar, std::int64_t p, int r) {
    if (r == 1) return 1;
    if (std::all_of(xbar.begin(), xbar.end(), [](std::int64_t v) { return v == 0; })) {
        // x = p y and disc(x) = p^4 disc(y)
        if (r <= 4) return Integer(std::to_string(ipow(p, 4 * (r - 1))));
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p), 12);
        return scale * disc_zero_count(p, r - 4);
    }
    // move a non-root of xbar mod p to (1:0)
    std::optional<IntForm> moved;
    for (const auto& g : small_unimodular_matrices()) {
        auto y = act_unimodular(xbar, g);
        for (auto& v : y) v = mod_p(v, p);
        if (y[0] != 0) {
            moved = y;
            break;
        }
    }
    if (moved) {
        // u -> u + t v kills x2, then divide by x1: (1, 0, c, d) with disc = -4c^3 - 27d^2
        const auto& y = *moved;
        const std::int64_t inv1 = inverse_mod(y[0], p);
        const std::int64_t t = mod_p(-y[1] * inverse_mod(mod_p(3 * y[0], p), p), p);
        const std::int64_t c = mod_p((y[2] + 2 * t * y[1] + 3 * t * t % p * y[0]) % p * inv1, p);
        const std::int64_t d = mod_p((y[3] + t * y[2] % p + t * t % p * y[1] % p + t * t % p * t % p * y[0]) % p * inv1, p);
        const std::int64_t M = ipow(p, r);
        std::int64_t fiber = 0;
        for (std::int64_t cc = c; cc < M; cc += p) fiber += curve_fiber_count(cc, d, p, r);
        return Integer(std::to_string(ipow(p, 2 * (r - 1)))) * Integer(std::to_string(fiber));
    }
    // xbar vanishes on all of P^1(F_p): enumerate its lifts
    const std::int64_t L = ipow(p, r - 1);
    if (static_cast<double>(L) * L * L * L > 1.0e8)
        throw std::runtime_error("stratified count: lift enumeration exceeds the resource guard");
    const std::int64_t M = L * p;
    std::int64_t count = 0;
    std::array<std::int64_t, 4> x{};
    for (std::int64_t a = 0; a < L; ++a)
        for (std::int64_t b = 0; b < L; ++b)
            for (std::int64_t c = 0; c < L; ++c)
                for (std::int64_t d = 0; d < L; ++d) {
                    x = {xbar[0] + p * a, xbar[1] + p * b, xbar[2] + p * c, xbar[3] + p * d};
                    if (disc_mod(x, M) == 0) ++count;
                }
    return Integer(std::to_string(count));
}

std::vector<Integer> sampled_counts(std::int64_t p, int k, std::uint64_t seed, std::uint64_t samples) {
    const std::int64_t M = ipow(p, k);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coord(0, M - 1);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(k + 1), 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::array<std::int64_t, 4> x{coord(rng), coord(rng), coord(rng), coord(rng)};
        ++hits[static_cast<std::size_t>(valuation_capped(disc_mod(x, M), p, k))];
    }
    std::vector<Integer> out;
    for (auto h : hits) out.push_back(Integer(std::to_string(h)));
    return out;
}

}  // namespace

Integer disc_zero_count(std::int64_t p, int r) {
    check_prime(p);
    if (p == 3) throw std::invalid_argument("stratified count needs p != 3");
    if (r < 0) throw std::invalid_argument("level must be >= 0");
    if (r == 0) return 1;
    if (static_cast<double>(r) * std::log(static_cast<double>(p)) > 40.0)
        throw std::invalid_argument("stratified count: p^r too large");
    Integer total = 0;
    IntForm x{};
    for (x[0] = 0; x[0] < p; ++x[0])
        for (x[1] = 0; x[1] < p; ++x[1])
            for (x[2] = 0; x[2] < p; ++x[2])
                for (x[3] = 0; x[3] < p; ++x[3])
                    if (disc_mod(x, p) == 0) total += class_zero_count(x, p, r);
    return total;
}

LocalDensityTable local_disc_densities(std::int64_t p, int k, const DensityOptions& opt) {
    check_prime(p);
    if (k < 1) throw std::invalid_argument("local_disc_densities requires k >= 1");
    const double points = std::pow(static_cast<double>(p), 4.0 * k);
    DensityMethod method;
    if (opt.method) {
        method = *opt.method;
        if (method == DensityMethod::Exhaustive && points > 1e10)
            throw std::invalid_argument("exhaustive density count exceeds the resource guard");
        if (method == DensityMethod::Stratified && p == 3)
            throw std::invalid_argument("stratified density count needs p != 3");
    } else if (points <= 1e6) {
        method = DensityMethod::Exhaustive;
    } else if (p != 3 && k <= 12) {
        method = DensityMethod::Stratified;
    } else if (points <= 1e8) {
        method = DensityMethod::Exhaustive;
    } else {
        method = DensityMethod::Sampling;
    }

    LocalDensityTable t;
    t.p = p;
    t.k = k;
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(4 * k));
    t.total = pk;

    if (method == DensityMethod::Stratified) {
        try {
            std::vector<Integer> zeros;  // zeros[r] = #{x mod p^r : disc = 0 mod p^r}
            for (int r = 0; r <= k; ++r) zeros.push_back(disc_zero_count(p, r));
            auto p4 = [&](int e) {
                Integer v;
                mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(4 * e));
                return v;
            };
            for (int j = 0; j < k; ++j)
                t.counts.push_back(Integer(zeros[j] * p4(k - j) - zeros[j + 1] * p4(k - j - 1)));
            t.counts.push_back(zeros[k]);
        } catch (const std::runtime_error&) {
            if (opt.method) throw;
            method = DensityMethod::Sampling;
        }
    }
    if (method == DensityMethod::Exhaustive) t.counts = exhaustive_counts(p, k, opt.threads);
    if (method == DensityMethod::Sampling) {
        t.counts = sampled_counts(p, k, opt.seed, opt.samples);
        t.total = Integer(std::to_string(opt.samples));
        t.exact = false;
    }
    t.method = method;
    for (const auto& c : t.counts) {
        Rational d(c, t.total);
        d.canonicalize();
        t.densities.push_back(d);
    }
    if (!t.exact) {
        for (const auto& d : t.densities) {
            const double v = d.get_d();
            t.std_error = std::max(t.std_error, std::sqrt(v * (1 - v) / static_cast<double>(opt.samples)));
        }
    }
    return t;
}

std::string densities_csv(const std::vector<LocalDensityTable>& tables) {
    std::ostringstream os;
    os << "p,k,j,count,density_num,density_den\n";
    for (const auto& t : tables)
        for (std::size_t j = 0; j < t.counts.size(); ++j)
            os << t.p << ',' << t.k << ',' << j << ',' << t.counts[j].get_str() << ','
               << t.densities[j].get_num().get_str() << ',' << t.densities[j].get_den().get_str() << '\n';
    return os.str();
}

// ---------------------------------------------------------------- log height

std::string height_norm_name(HeightNorm n) { return n == HeightNorm::Euclidean ? "euclidean" : "sup"; }

HeightNorm parse_height_norm(const std::string& s) {
    if (s == "euclidean") return HeightNorm::Euclidean;
    if (s == "sup") return HeightNorm::Sup;
    throw std::invalid_argument("unknown height norm '" + s + "' (expected euclidean or sup)");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// integral over (0, inf), split at 1
QuadratureResult half_line(const std::function<double(double)>& f) {
    boost::math::quadrature::tanh_sinh<double> near;
    boost::math::quadrature::exp_sinh<double> far;
    QuadratureResult r;
    double e1 = 0, e2 = 0;
    r.value = near.integrate(f, 0.0, 1.0, 1e-12, &e1) + far.integrate(f, 1.0, kInf, 1e-12, &e2);
    r.error = e1 + e2;
    return r;
}

void require_decay(const std::function<double(double, double)>& phi) {
    for (double R : {1e3, 1e4}) {
        for (int i = 0; i < 8; ++i) {
            const double th = kPi * i / 4.0;
            const double v = phi(R * std::cos(th), R * std::sin(th));
            if (!std::isfinite(v) || std::abs(v) * R * R * R > 1e-3)
                throw std::invalid_argument("log-height term: test function is not rapidly decreasing");
        }
    }
}

double norm_of(double y1, double y2, HeightNorm n) {
    return n == HeightNorm::Euclidean ? std::hypot(y1, y2) : std::max(std::abs(y1), std::abs(y2));
}

QuadratureResult quadrants(const std::function<double(double, double)>& g) {
    QuadratureResult total;
    for (int sx : {1, -1})
        for (int sy : {1, -1}) {
            double inner_err = 0;
            auto outer = [&](double y1) {
                auto r = half_line([&](double y2) { return g(sx * y1, sy * y2); });
                inner_err = std::max(inner_err, r.error);
                return r.value;
            };
            const auto r = half_line(outer);
            total.value += r.value;
            total.error += r.error + inner_err;
        }
    return total;
}

}  // namespace

double sup_norm_angular_constant() {
    // 8 times the integral of log cos over [0, pi/4]
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double t) { return std::log(std::cos(t)); }, 0.0, kPi / 4, 10, 1e-15);
    return 8.0 * v;
}

QuadratureResult log_height_polar(const std::function<double(double)>& radial, HeightNorm norm) {
    require_decay([&](double y1, double y2) { return radial(std::hypot(y1, y2)); });
    auto base = half_line([&](double r) { return r > 0 ? radial(r) * r * std::log(r) : 0.0; });
    QuadratureResult out{2 * kPi * base.value, 2 * kPi * base.error};
    if (norm == HeightNorm::Sup) {
        auto mass = half_line([&](double r) { return radial(r) * r; });
        out.value += mass.value * sup_norm_angular_constant();
        out.error += mass.error * 2 * kPi;
    }
    return out;
}

QuadratureResult log_height_cartesian(const std::function<double(double, double)>& phi, HeightNorm norm) {
    require_decay(phi);
    return quadrants([&](double y1, double y2) {
        const double n = norm_of(y1, y2, norm);
        if (n == 0) return 0.0;
        const double v = phi(y1, y2);
        return v == 0 ? 0.0 : v * std::log(n);
    });
}

QuadratureResult plane_integral(const std::function<double(double, double)>& phi) {
    require_decay(phi);
    return quadrants(phi);
}

}  // namespace g2cubic
