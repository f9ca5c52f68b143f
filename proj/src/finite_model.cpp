#include "g2cubic/finite_model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "g2cubic/form_algebra.hpp"

namespace g2cubic {

// ---------------------------------------------------------------- arithmetic mod N

int mod(long long a, int N) {
    long long r = a % N;
    return static_cast<int>(r < 0 ? r + N : r);
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int inverse_mod(int a, int N) {
    long long t = 0, nt = 1, r = N, nr = mod(a, N);
    while (nr != 0) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::domain_error("element not invertible modulo " + std::to_string(N));
    return mod(t, N);
}

void validate_modulus(int N) {
    if (N < 2) throw std::invalid_argument("modulus must be at least 2");
    if (N % 3 == 0) throw std::invalid_argument("modulus divisible by 3 is not supported (pairing has coefficients 1/3)");
}

int pairing_mod(const Point4& x, const Point4& y, int N) {
    const long long inv3 = inverse_mod(3, N);
    long long v = static_cast<long long>(x[0]) * y[3] - inv3 * mod(static_cast<long long>(x[1]) * y[2], N) +
                  inv3 * mod(static_cast<long long>(x[2]) * y[1], N) - static_cast<long long>(x[3]) * y[0];
    return mod(v, N);
}

Point4 act_mod(const Point4& x, const std::array<int, 4>& l, int N) {
    const long long a = mod(l[0], N), b = mod(l[1], N), c = mod(l[2], N), d = mod(l[3], N);
    const long long det = mod(a * d - b * c, N);
    const long long inv = inverse_mod(static_cast<int>(det), N);
    const long long scale = mod(inv * inv, N);
    algebra::Quad<long long> f = {mod(x[0], N), mod(x[1], N), mod(x[2], N), mod(x[3], N)};
    auto g = algebra::twisted_substitution<long long>(f, a, b, c, d);
    return {mod(mod(g[0], N) * scale, N), mod(mod(g[1], N) * scale, N), mod(mod(g[2], N) * scale, N), mod(mod(g[3], N) * scale, N)};
}

std::array<int, 4> iota_mod(const std::array<int, 4>& l, int N) {
    const long long det = mod(static_cast<long long>(l[0]) * l[3] - static_cast<long long>(l[1]) * l[2], N);
    const long long inv = inverse_mod(static_cast<int>(det), N);
    return {mod(inv * l[0], N), mod(inv * l[1], N), mod(inv * l[2], N), mod(inv * l[3], N)};
}

// ---------------------------------------------------------------- cyclotomic numbers

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

void require_same_modulus(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.N != b.N) throw std::invalid_argument("cyclotomic numbers over different moduli");
}

}  // namespace

bool CyclotomicNumber::is_zero() const {
    for (int k = 1; k < N; ++k)
        if (c[static_cast<std::size_t>(k)] != c[0]) return false;
    return true;
}

Complex CyclotomicNumber::to_complex() const {
    // subtract the constant c_0 (sum of all powers is zero) to keep cancellation exact
    Complex z;
    for (int k = 1; k < N; ++k) {
        double ang = 2.0 * std::numbers::pi * k / N;
        z += static_cast<double>(c[static_cast<std::size_t>(k)] - c[0]) * Complex(std::cos(ang), std::sin(ang));
    }
    return z / std::pow(static_cast<double>(N), exp);
}

CyclotomicNumber CyclotomicNumber::conj() const {
    CyclotomicNumber r = *this;
    for (int k = 0; k < N; ++k) r.c[static_cast<std::size_t>((N - k) % N)] = c[static_cast<std::size_t>(k)];
    return r;
}

CyclotomicNumber CyclotomicNumber::scaled_to(int e) const {
    if (e < exp) throw std::invalid_argument("cannot lower a cyclotomic denominator");
    CyclotomicNumber r = *this;
    std::int64_t f = 1;
    for (int i = exp; i < e; ++i) f = checked_mul(f, N);
    for (int k = 0; k < N; ++k) r.c[static_cast<std::size_t>(k)] = checked_mul(c[static_cast<std::size_t>(k)], f);
    r.exp = e;
    return r;
}

CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    require_same_modulus(a, b);
    int e = std::max(a.exp, b.exp);
    CyclotomicNumber x = a.scaled_to(e), y = b.scaled_to(e);
    for (int k = 0; k < a.N; ++k) x.c[static_cast<std::size_t>(k)] = checked_add(x.c[static_cast<std::size_t>(k)], y.c[static_cast<std::size_t>(k)]);
    return x;
}

CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a + (-1) * b; }

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    require_same_modulus(a, b);
    CyclotomicNumber r;
    r.N = a.N;
    r.exp = a.exp + b.exp;
    for (int i = 0; i < a.N; ++i)
        for (int j = 0; j < a.N; ++j) {
            auto& slot = r.c[static_cast<std::size_t>((i + j) % a.N)];
            slot = checked_add(slot, checked_mul(a.c[static_cast<std::size_t>(i)], b.c[static_cast<std::size_t>(j)]));
        }
    return r;
}

CyclotomicNumber operator*(std::int64_t k, const CyclotomicNumber& a) {
    CyclotomicNumber r = a;
    for (int i = 0; i < a.N; ++i) r.c[static_cast<std::size_t>(i)] = checked_mul(k, a.c[static_cast<std::size_t>(i)]);
    return r;
}

// ---------------------------------------------------------------- rings

ComplexField::ComplexField(int modulus) : N(modulus) {
    validate_modulus(modulus);
    roots.resize(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        double ang = 2.0 * std::numbers::pi * k / N;
        roots[static_cast<std::size_t>(k)] = Complex(std::cos(ang), std::sin(ang));
    }
}

void ComplexField::rescale(std::vector<value_type>& v, int& exponent, int e) const {
    (void)exponent;
    const double f = std::pow(static_cast<double>(N), -e);
    for (auto& z : v) z *= f;
}

ComplexField::scalar_type ComplexField::scalar(const value_type& v, int) const { return v; }

CyclotomicRing::CyclotomicRing(int modulus) : N(modulus) {
    validate_modulus(modulus);
    if (!is_prime(modulus) || modulus > CyclotomicNumber::kMaxModulus)
        throw std::invalid_argument("exact cyclotomic path needs a prime modulus <= 13");
}

CyclotomicRing::scalar_type CyclotomicRing::scalar(const value_type& v, int exponent) const {
    CyclotomicNumber z;
    z.N = N;
    z.c = v;
    z.exp = exponent;
    return z;
}

CyclotomicRing::scalar_type CyclotomicRing::scalar_zero() const {
    CyclotomicNumber z;
    z.N = N;
    return z;
}

// ---------------------------------------------------------------- orbit fibers

std::vector<FiberLabel> orbit_fibers(int p) {
    if (!is_prime(p)) throw std::invalid_argument("orbit fibers need a prime modulus");
    const std::size_t n = static_cast<std::size_t>(p);
    auto index = [&](long long a, long long b, long long c, long long d) {
        return ((static_cast<std::size_t>(mod(a, p)) * n + static_cast<std::size_t>(mod(b, p))) * n + static_cast<std::size_t>(mod(c, p))) * n +
               static_cast<std::size_t>(mod(d, p));
    };
    std::vector<bool> cube(n * n * n * n, false);
    // nonzero multiples of cubes of linear forms: c (a u + b v)^3
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b) {
            if (a == 0 && b == 0) continue;
            for (long long c = 1; c < p; ++c) cube[index(c * a * a * a, 3 * c * a * a * b, 3 * c * a * b * b, c * b * b * b)] = true;
        }
    std::vector<FiberLabel> out(n * n * n * n);
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b)
            for (long long c = 0; c < p; ++c)
                for (long long d = 0; d < p; ++d) {
                    std::size_t i = index(a, b, c, d);
                    if (a == 0 && b == 0 && c == 0 && d == 0) {
                        out[i] = FiberLabel::S0;
                        continue;
                    }
                    algebra::Quad<long long> x = {a, b, c, d};
                    if (mod(algebra::discriminant(x), p) != 0) out[i] = FiberLabel::V0;
                    else out[i] = cube[i] ? FiberLabel::S1 : FiberLabel::S2;
                }
    return out;
}

// ---------------------------------------------------------------- random functions

double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

FiniteModelFunction random_function(int N, std::uint64_t seed) {
    FiniteModelFunction phi(N);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        double re = 2.0 * unit_double(rng()) - 1.0;
        double im = 2.0 * unit_double(rng()) - 1.0;
        phi.raw(i) = Complex(re, im);
    }
    return phi;
}

ExactModelFunction random_integer_function(int N, std::uint64_t seed, int max_abs) {
    ExactModelFunction phi(N);
    std::mt19937_64 rng(seed);
    const std::uint64_t span = static_cast<std::uint64_t>(2 * max_abs + 1);
    for (std::size_t i = 0; i < phi.size(); ++i) phi.raw(i)[0] = static_cast<std::int64_t>(rng() % span) - max_abs;
    return phi;
}

ExactModelFunction exact_indicator(int N, const Point4& x) {
    ExactModelFunction phi(N);
    phi.raw(phi.index(x))[0] = 1;
    return phi;
}

FiniteModelFunction to_complex(const ExactModelFunction& phi) {
    FiniteModelFunction out(phi.modulus());
    for (std::size_t i = 0; i < phi.size(); ++i) out.raw(i) = phi.value(i).to_complex();
    return out;
}

// ---------------------------------------------------------------- reports

std::string IdentityReport::to_json() const {
    nlohmann::ordered_json j;
    j["identity_name"] = identity_name;
    j["modulus"] = modulus;
    j["max_residual"] = max_residual;
    j["pass"] = pass;
    return j.dump();
}

namespace {
IdentityReport make_report(std::string name, int N, double residual, double tolerance) {
    return {std::move(name), N, residual, tolerance, residual <= tolerance};
}
}  // namespace

IdentityReport verify_poisson_rearrangement(const FiniteModelFunction& phi, double tolerance) {
    const int N = phi.modulus();
    if (!is_prime(N)) throw std::invalid_argument("orbit rearrangement needs a prime modulus");
    double r = std::max(poisson_residual(phi), rearrangement_residual(phi, orbit_fibers(N)));
    return make_report("poisson_rearrangement", N, r, tolerance);
}

IdentityReport verify_remarkable_and_e9(const FiniteModelFunction& phi, double tolerance) {
    const int N = phi.modulus();
    if (!is_prime(N)) throw std::invalid_argument("remarkable equality check needs a prime modulus");
    double r = std::max(remarkable_residual(phi), pre_e12_residual(phi));
    return make_report("remarkable_equality_and_slice_sum", N, r, tolerance);
}

IdentityReport fourier_covariance_check(const FiniteModelFunction& phi, const std::array<int, 4>& l, double tolerance) {
    const int N = phi.modulus();
    if (!is_prime(N)) throw std::invalid_argument("covariance check needs a prime modulus");
    long long det = mod(static_cast<long long>(l[0]) * l[3] - static_cast<long long>(l[1]) * l[2], N);
    if (det == 0) throw std::invalid_argument("singular matrix modulo N");
    return make_report("fourier_covariance", N, covariance_residual(phi, l), tolerance);
}

IdentityReport verify_mean_value(const PlaneFunction& phi, double tolerance) {
    const int q = phi.q;
    if (!is_prime(q)) throw std::invalid_argument("mean value check needs a prime field size");
    if (phi.values.size() != static_cast<std::size_t>(q) * static_cast<std::size_t>(q)) throw std::invalid_argument("plane function has the wrong size");
    auto at = [&](long long y1, long long y2) { return phi.values[static_cast<std::size_t>(mod(y1, q)) * static_cast<std::size_t>(q) + static_cast<std::size_t>(mod(y2, q))]; };
    Complex total;
    long long group_order = 0;
    for (long long a = 0; a < q; ++a)
        for (long long b = 0; b < q; ++b)
            for (long long c = 0; c < q; ++c)
                for (long long d = 0; d < q; ++d) {
                    if (mod(a * d - b * c, q) != 1) continue;
                    ++group_order;
                    for (long long y1 = 0; y1 < q; ++y1)
                        for (long long y2 = 0; y2 < q; ++y2)
                            if (y1 || y2) total += at(y1 * a + y2 * c, y1 * b + y2 * d);
                }
    Complex lhs = total / static_cast<double>(group_order);
    Complex rhs;
    for (long long x1 = 0; x1 < q; ++x1)
        for (long long x2 = 0; x2 < q; ++x2)
            if (x1 || x2) rhs += at(x1, x2);
    return make_report("mean_value", q, std::abs(lhs - rhs), tolerance);
}

}  // namespace g2cubic
