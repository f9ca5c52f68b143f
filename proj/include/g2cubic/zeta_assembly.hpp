#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "g2cubic/g2_core.hpp"
#include "g2cubic/rational.hpp"

namespace g2cubic {

// Scalar inputs of the principal-part and truncated formulas. Defaults: volumes and c_F = 1, the rest 0.
template <class S>
struct BundleConstants {
    S vol_L{1}, vol_M0{1}, vol_M1{1}, vol_M2{1}, c_F{1};
    S phi0{0}, phihat0{0};
    S sigma1_phi{0}, sigma1_phihat{0};
    S dbl_phi{0}, dbl_phihat{0};
    S dbl_log_phi{0};  // integral of |a|^2 log|a| against the same fiber integral as dbl_phi
    S lim_term{0}, log_height_int{0};
    S n1{0}, n2{0};
};

template <class S>
struct Bundle {
    BundleConstants<S> c;
    std::function<S(const S&)> zplus_phi;     // empty: identically zero
    std::function<S(const S&)> zplus_phihat;  // empty: identically zero
    // fiber integral as a function of a > 0; needed by the truncated formula away from s = 2
    std::function<double(double)> a_profile;
};

using FunctionalBundle = Bundle<double>;
using ExactBundle = Bundle<Rational>;
using ComplexBundle = Bundle<std::complex<double>>;

// Throws std::invalid_argument unless volumes and c_F are strictly positive.
void validate(const BundleConstants<double>& c);
void validate(const BundleConstants<Rational>& c);
void validate(const BundleConstants<std::complex<double>>& c);

// Poles of the principal part, in increasing order.
const std::array<Rational, 4>& principal_poles();

template <class S>
struct Residues {
    S at_0{}, at_1_3{}, at_5_3{}, at_2{};
    // residue at an arbitrary point: zero off the pole set
    S at(const Rational& s) const;
};

// The eight summands in template order:
// zplus(phi,s), zplus(phihat,2-s), -vol_L phi0/s, vol_L phihat0/(s-2),
// -vol_M0 sigma1_phi/(c_F(3s-1)), vol_M0 sigma1_phihat/(c_F(3s-5)),
// -vol_M0 dbl_phihat/(c_F s), vol_M0 dbl_phi/(c_F(s-2)).
template <class S>
std::array<S, 8> principal_terms(const Bundle<S>& b, const std::type_identity_t<S>& s);
template <class S>
S principal_part(const Bundle<S>& b, const std::type_identity_t<S>& s);  // throws std::domain_error at a pole
template <class S>
Residues<S> principal_residues(const Bundle<S>& b);
// constant term of the Laurent expansion at s = 2, i.e. lim d/ds (s-2) PP(s)
template <class S>
S laurent_constant_at_two(const Bundle<S>& b);

// integral over [1, e^{T2}] of t^{-(s-2)} dt/t
double t_integral(double s, double T2);
// (e^{(2-s)T1} - a^{2-s})/(2-s); equals truncation_residual(a, T1) at s = 2
double truncation_residual_s(double a, double T1, double s);

// Summands of the truncated formula at s = 2 in template order; the fourth is T2 vol_L phihat0 and the
// last is (vol_M0/c_F)(T1 dbl_phi - dbl_log_phi).
template <class S>
std::array<S, 8> tilde_terms_at_two(const Bundle<S>& b, const std::type_identity_t<S>& T1, const std::type_identity_t<S>& T2);
template <class S>
S tilde_Z_at_two(const Bundle<S>& b, const std::type_identity_t<S>& T1, const std::type_identity_t<S>& T2);
// s > 5/3. Away from s = 2 the last summand integrates the a-profile.
double tilde_Z_principal(const FunctionalBundle& b, double s, const TruncationParam& T);

template <class S>
S identity_rhs(const Bundle<S>& b, const std::type_identity_t<S>& T1, const std::type_identity_t<S>& T2);
// Fills lim_term, n1, n2, log_height_int so that identity_rhs equals tilde_Z_at_two.
template <class S>
Bundle<S> apply_bookkeeping(Bundle<S> b);

struct ProfileMoments {
    double dbl_phi = 0;      // integral of a^2 profile(a) da/a over a > 0
    double dbl_log_phi = 0;  // same with an extra log a
};
ProfileMoments profile_moments(const std::function<double(double)>& profile);

// flat key=value text; zplus_phi and zplus_phihat are comma-separated polynomial coefficients in s
FunctionalBundle parse_bundle(const std::string& text);
ExactBundle parse_exact_bundle(const std::string& text);
std::vector<std::string> bundle_keys();

// ---- local factors

// sum_{n=0}^{K} p^{-ns}
double sigma1_factor(std::int64_t p, double s, int K);
double sigma1_closed(std::int64_t p, double s);  // (1 - p^{-s})^{-1}
double sigma1_tail_bound(std::int64_t p, double s, int K);  // p^{-(K+1)s}/(1 - p^{-s})
// 2 * integral over a > 0 of a^s e^{-pi a^2} da/a
double sigma1_arch_exp_sinh(double s);
double sigma1_arch_log_substitution(double s);
inline double sigma1_arch(double s) { return sigma1_arch_exp_sinh(s); }

// ---- p-adic discriminant densities

enum class DensityMethod { Exhaustive, Stratified, Sampling };
std::string density_method_name(DensityMethod m);

struct LocalDensityTable {
    std::int64_t p = 0;
    int k = 0;
    DensityMethod method = DensityMethod::Exhaustive;
    bool exact = true;
    Integer total;                    // p^{4k}, or the sample size in sampling mode
    std::vector<Integer> counts;      // counts[j] for j < k, counts[k] for v >= k
    std::vector<Rational> densities;  // counts / total, same layout
    double std_error = 0;             // sampling mode only
    Rational tail() const { return densities.back(); }
};

struct DensityOptions {
    std::optional<DensityMethod> method;  // empty: automatic
    std::uint64_t seed = 20240601;
    std::uint64_t samples = 2000000;
    unsigned threads = 0;
};

LocalDensityTable local_disc_densities(std::int64_t p, int k, const DensityOptions& opt = {});
// #{x mod p^r : disc(x) = 0 mod p^r}, by the stratified method (p != 3)
Integer disc_zero_count(std::int64_t p, int r);
std::string densities_csv(const std::vector<LocalDensityTable>& tables);

// ---- log-height term

enum class HeightNorm { Euclidean, Sup };
std::string height_norm_name(HeightNorm n);
HeightNorm parse_height_norm(const std::string& s);

struct QuadratureResult {
    double value = 0;
    double error = 0;
};

// integral over the plane of phi(|y|) log||y|| dy for a radial profile
QuadratureResult log_height_polar(const std::function<double(double)>& radial, HeightNorm norm = HeightNorm::Euclidean);
// same integral for a general phi(y1, y2), by nested quadrature over the four quadrants
QuadratureResult log_height_cartesian(const std::function<double(double, double)>& phi,
                                      HeightNorm norm = HeightNorm::Euclidean);
// integral over the plane of phi; used by the scaling relation
QuadratureResult plane_integral(const std::function<double(double, double)>& phi);
// angular average of log max(|cos t|, |sin t|) times 2 pi
double sup_norm_angular_constant();

// ---------------------------------------------------------------- templates

namespace detail {

inline bool is_zero_scalar(double x) { return x == 0.0; }
inline bool is_zero_scalar(const Rational& x) { return x == 0; }
inline bool is_zero_scalar(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }

template <class S>
S from_rational(const Rational& q) {
    if constexpr (std::is_same_v<S, Rational>)
        return q;
    else
        return S(q.get_d());
}

template <class S>
S sample(const std::function<S(const S&)>& f, const std::type_identity_t<S>& s) {
    return f ? f(s) : S(0);
}

}  // namespace detail

template <class S>
S Residues<S>::at(const Rational& s) const {
    if (s == 0) return at_0;
    if (s == Rational(1, 3)) return at_1_3;
    if (s == Rational(5, 3)) return at_5_3;
    if (s == 2) return at_2;
    return S(0);
}

template <class S>
std::array<S, 8> principal_terms(const Bundle<S>& b, const std::type_identity_t<S>& s) {
    const auto& c = b.c;
    const S three(3), one(1), two(2), five(5);
    const S d0 = s, d13 = S(three * s - one), d53 = S(three * s - five), d2 = S(s - two);
    if (detail::is_zero_scalar(d0) || detail::is_zero_scalar(d13) || detail::is_zero_scalar(d53) ||
        detail::is_zero_scalar(d2))
        throw std::domain_error("principal part evaluated at a pole");
    return {detail::sample(b.zplus_phi, s),
            detail::sample(b.zplus_phihat, S(two - s)),
            S(-(c.vol_L * c.phi0) / d0),
            S((c.vol_L * c.phihat0) / d2),
            S(-(c.vol_M0 * c.sigma1_phi) / (c.c_F * d13)),
            S((c.vol_M0 * c.sigma1_phihat) / (c.c_F * d53)),
            S(-(c.vol_M0 * c.dbl_phihat) / (c.c_F * d0)),
            S((c.vol_M0 * c.dbl_phi) / (c.c_F * d2))};
}

template <class S>
S principal_part(const Bundle<S>& b, const std::type_identity_t<S>& s) {
    validate(b.c);
    S total(0);
    for (const auto& t : principal_terms(b, s)) total = total + t;
    return total;
}

template <class S>
Residues<S> principal_residues(const Bundle<S>& b) {
    validate(b.c);
    const auto& c = b.c;
    const S three(3);
    Residues<S> r;
    r.at_0 = S(-(c.vol_L * c.phi0) - c.vol_M0 * c.dbl_phihat / c.c_F);
    r.at_1_3 = S(-(c.vol_M0 * c.sigma1_phi) / (three * c.c_F));
    r.at_5_3 = S((c.vol_M0 * c.sigma1_phihat) / (three * c.c_F));
    r.at_2 = S(c.vol_L * c.phihat0 + c.vol_M0 * c.dbl_phi / c.c_F);
    return r;
}

template <class S>
S laurent_constant_at_two(const Bundle<S>& b) {
    validate(b.c);
    const auto& c = b.c;
    const S two(2), three(3), one(1), five(5);
    S v = detail::sample(b.zplus_phi, two) + detail::sample(b.zplus_phihat, S(0));
    v = v - S(c.vol_L * c.phi0 / two);
    v = v - S(c.vol_M0 * c.sigma1_phi / (c.c_F * (three * two - one)));
    v = v + S(c.vol_M0 * c.sigma1_phihat / (c.c_F * (three * two - five)));
    return S(v - S(c.vol_M0 * c.dbl_phihat / (c.c_F * two)));
}

template <class S>
std::array<S, 8> tilde_terms_at_two(const Bundle<S>& b, const std::type_identity_t<S>& T1, const std::type_identity_t<S>& T2) {
    validate(b.c);
    const auto& c = b.c;
    const S two(2), three(3), one(1), five(5);
    return {detail::sample(b.zplus_phi, two),
            detail::sample(b.zplus_phihat, S(0)),
            S(-(c.vol_L * c.phi0) / two),
            S(T2 * c.vol_L * c.phihat0),
            S(-(c.vol_M0 * c.sigma1_phi) / (c.c_F * (three * two - one))),
            S((c.vol_M0 * c.sigma1_phihat) / (c.c_F * (three * two - five))),
            S(-(c.vol_M0 * c.dbl_phihat) / (c.c_F * two)),
            S(c.vol_M0 / c.c_F * (T1 * c.dbl_phi - c.dbl_log_phi))};
}

template <class S>
S tilde_Z_at_two(const Bundle<S>& b, const std::type_identity_t<S>& T1, const std::type_identity_t<S>& T2) {
    S total(0);
    for (const auto& t : tilde_terms_at_two(b, T1, T2)) total = total + t;
    return total;
}

template <class S>
S identity_rhs(const Bundle<S>& b, const std::type_identity_t<S>& T1, const std::type_identity_t<S>& T2) {
    const auto& c = b.c;
    return S(c.lim_term - c.vol_M1 * c.log_height_int) + S(T1 * c.vol_M1 * c.n1) + S(T2 * c.vol_M2 * c.n2);
}

template <class S>
Bundle<S> apply_bookkeeping(Bundle<S> b) {
    validate(b.c);
    auto& c = b.c;
    c.lim_term = laurent_constant_at_two(b);
    c.n2 = S(c.vol_L * c.phihat0 / c.vol_M2);
    c.n1 = S(c.vol_M0 * c.dbl_phi / (c.c_F * c.vol_M1));
    c.log_height_int = S(c.vol_M0 * c.dbl_log_phi / (c.c_F * c.vol_M1));
    return b;
}

}  // namespace g2cubic
