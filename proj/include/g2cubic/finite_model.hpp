#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace g2cubic {

using Complex = std::complex<double>;
using Point4 = std::array<int, 4>;

// Sum of c_k zeta_N^k for prime N <= 13, divided by N^exp.
struct CyclotomicNumber {
    static constexpr int kMaxModulus = 13;
    int N = 5;
    std::array<std::int64_t, 16> c{};
    int exp = 0;

    bool is_zero() const;  // exact
    Complex to_complex() const;
    CyclotomicNumber conj() const;
    CyclotomicNumber scaled_to(int e) const;  // same value with denominator N^e, e >= exp
    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(std::int64_t k, const CyclotomicNumber& a);
};

// Coefficient rings for values of functions on (Z/N)^4.
struct ComplexField {
    using value_type = Complex;
    using scalar_type = Complex;
    int N;
    std::vector<Complex> roots;  // zeta^k

    explicit ComplexField(int modulus);
    value_type zero() const { return {}; }
    void accumulate(value_type& acc, const value_type& v, int k) const { acc += v * roots[static_cast<std::size_t>(k)]; }
    // values are stored already scaled, so the exponent is applied eagerly
    void rescale(std::vector<value_type>& v, int& exponent, int e) const;
    scalar_type scalar(const value_type& v, int exponent) const;
    static double distance(const scalar_type& a, const scalar_type& b) { return std::abs(a - b); }
    static scalar_type conj(const scalar_type& a) { return std::conj(a); }
    static scalar_type times(std::int64_t k, const scalar_type& a) { return static_cast<double>(k) * a; }
    scalar_type scalar_zero() const { return {}; }
};

struct CyclotomicRing {
    using value_type = std::array<std::int64_t, 16>;
    using scalar_type = CyclotomicNumber;
    int N;

    explicit CyclotomicRing(int modulus);
    value_type zero() const { return {}; }
    void accumulate(value_type& acc, const value_type& v, int k) const {
        for (int j = 0; j < N; ++j) acc[static_cast<std::size_t>((j + k) % N)] += v[static_cast<std::size_t>(j)];
    }
    void rescale(std::vector<value_type>&, int& exponent, int e) const { exponent += e; }
    scalar_type scalar(const value_type& v, int exponent) const;
    static double distance(const scalar_type& a, const scalar_type& b) { return std::abs((a - b).to_complex()); }
    static scalar_type conj(const scalar_type& a) { return a.conj(); }
    static scalar_type times(std::int64_t k, const scalar_type& a) { return k * a; }
    scalar_type scalar_zero() const;
};

// Function on (Z/N)^4 with values stored / N^exponent.
template <class Ring>
class ModelFunction {
public:
    using value_type = typename Ring::value_type;
    using scalar_type = typename Ring::scalar_type;

    explicit ModelFunction(int modulus);

    int modulus() const { return ring_.N; }
    const Ring& ring() const { return ring_; }
    std::size_t size() const { return values_.size(); }
    std::size_t index(const Point4& x) const;
    Point4 point(std::size_t i) const;

    value_type& raw(std::size_t i) { return values_[i]; }
    const value_type& raw(std::size_t i) const { return values_[i]; }
    std::vector<value_type>& raw_values() { return values_; }
    const std::vector<value_type>& raw_values() const { return values_; }
    int exponent() const { return exponent_; }
    void set_exponent(int e) { exponent_ = e; }
    void rescale(int e) { ring_.rescale(values_, exponent_, e); }

    scalar_type value(std::size_t i) const { return ring_.scalar(values_[i], exponent_); }
    scalar_type value(const Point4& x) const { return value(index(x)); }

private:
    Ring ring_;
    std::vector<value_type> values_;
    int exponent_ = 0;
};

using FiniteModelFunction = ModelFunction<ComplexField>;
using ExactModelFunction = ModelFunction<CyclotomicRing>;

// Rejects moduli below 2 or divisible by 3.
void validate_modulus(int N);
bool is_prime(int n);
int inverse_mod(int a, int N);  // throws std::domain_error when not invertible
int mod(long long a, int N);

// Sum over x of phi(x) zeta^{<x,k>} for every k, then read back at the pairing-adapted index.
// fourier(phi)(y) = N^-2 sum_x phi(x) psi([x,y])
template <class Ring>
ModelFunction<Ring> fourier(const ModelFunction<Ring>& phi);
// O(N^8) reference evaluation straight from the definition.
template <class Ring>
ModelFunction<Ring> fourier_direct(const ModelFunction<Ring>& phi);
// Axes are 1-based coordinates in {3,4}; N^-1 per transformed axis.
template <class Ring>
ModelFunction<Ring> partial_fourier(const ModelFunction<Ring>& phi, const std::vector<int>& axes);
// (l.phi)(x) = phi(x.l) with the twisted action reduced mod N; l = (a,b,c,d)
template <class Ring>
ModelFunction<Ring> act_on_function(const ModelFunction<Ring>& phi, const std::array<int, 4>& l);

// x.l = det(l) f((u,v) l^{-1}) mod N
Point4 act_mod(const Point4& x, const std::array<int, 4>& l, int N);
// det(l)^{-1} l mod N
std::array<int, 4> iota_mod(const std::array<int, 4>& l, int N);
// [x,y] mod N with 1/3 read as the inverse of 3
int pairing_mod(const Point4& x, const Point4& y, int N);

enum class FiberLabel : std::uint8_t { S0, S1, S2, V0 };
// Orbit label of every point of (Z/p)^4, p prime; indexing as ModelFunction::index.
std::vector<FiberLabel> orbit_fibers(int p);

FiniteModelFunction random_function(int N, std::uint64_t seed);
ExactModelFunction random_integer_function(int N, std::uint64_t seed, int max_abs);
ExactModelFunction exact_indicator(int N, const Point4& x);
FiniteModelFunction to_complex(const ExactModelFunction& phi);

// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
double unit_double(std::uint64_t bits);

struct IdentityReport {
    std::string identity_name;
    int modulus = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string to_json() const;
};

// Each check returns the residual for a single function; *_report helpers fold many.
template <class Ring>
double involution_residual(const ModelFunction<Ring>& phi);
template <class Ring>
double plancherel_residual(const ModelFunction<Ring>& phi);
// applying the (3,4) or (4) transform twice gives N^-|axes| phi with those axes negated
template <class Ring>
double partial_inversion_residual(const ModelFunction<Ring>& phi, const std::vector<int>& axes);
template <class Ring>
double partial_consistency_residual(const ModelFunction<Ring>& phi);
template <class Ring>
double poisson_residual(const ModelFunction<Ring>& phi);
template <class Ring>
double rearrangement_residual(const ModelFunction<Ring>& phi, const std::vector<FiberLabel>& fibers);
template <class Ring>
double remarkable_residual(const ModelFunction<Ring>& phi);
template <class Ring>
double pre_e12_residual(const ModelFunction<Ring>& phi);
template <class Ring>
double covariance_residual(const ModelFunction<Ring>& phi, const std::array<int, 4>& l);

// Reports over a single function, prime modulus where required.
IdentityReport verify_poisson_rearrangement(const FiniteModelFunction& phi, double tolerance = 1e-9);
IdentityReport verify_remarkable_and_e9(const FiniteModelFunction& phi, double tolerance = 1e-9);
IdentityReport fourier_covariance_check(const FiniteModelFunction& phi, const std::array<int, 4>& l, double tolerance = 1e-9);

struct PlaneFunction {
    int q = 2;
    std::vector<Complex> values;  // index y1*q + y2
    explicit PlaneFunction(int modulus) : q(modulus), values(static_cast<std::size_t>(modulus) * static_cast<std::size_t>(modulus)) {}
};

// |SL2(F_q)|^-1 sum_h sum_{y != 0} phi(y h) against sum_{x != 0} phi(x)
IdentityReport verify_mean_value(const PlaneFunction& phi, double tolerance = 1e-9);

}  // namespace g2cubic

#include "g2cubic/finite_model_impl.hpp"
