#include <algorithm>
#include <stdexcept>

#include "g2cubic/cubic_forms.hpp"
#include "g2cubic/form_algebra.hpp"

namespace g2cubic {

namespace {

using i128 = __int128;

int sign_of(i128 v) { return (v > 0) - (v < 0); }
int sign_of(const Integer& v) { return sgn(v); }

i128 abs128(i128 v) { return v < 0 ? -v : v; }

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("cubic form coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

void check_bound(const IntForm& f) {
    for (auto x : f)
        if (x > kReductionBound || x < -kReductionBound) throw std::overflow_error("reduction: coefficient exceeds 2^24");
}

Integer to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    Integer r = (hi << 64) + lo;
    return neg ? Integer(-r) : r;
}

// sign of m^3 f(n/m) = x1 n^3 + x2 n^2 m + x3 n m^2 + x4 m^3
int sign_homogeneous(const IntForm& f, i128 n, i128 m) {
    constexpr i128 small = i128{1} << 28;
    bool fits = abs128(n) <= small && abs128(m) <= small;
    for (auto x : f) fits = fits && x <= kReductionBound && x >= -kReductionBound;
    if (fits) return sign_of(((f[0] * n + f[1] * m) * n + f[2] * m * m) * n + f[3] * m * m * m);
    Integer N = to_mpz(n), M = to_mpz(m);
    Integer v = ((Integer(static_cast<long>(f[0])) * N + Integer(static_cast<long>(f[1])) * M) * N + Integer(static_cast<long>(f[2])) * M * M) * N +
                Integer(static_cast<long>(f[3])) * M * M * M;
    return sign_of(v);
}

// For D < 0 let z be the non-real root (either one). Sign of Re z - hn/hd, hd > 0.
int compare_real_part(const IntForm& f, i128 hn, i128 hd) {
    const i128 x1 = f[0], x2 = f[1], x3 = f[2];
    if (x1 == 0) {
        // Re z = -x3 / (2 x2)
        return sign_of(-x3 * hd - 2 * x2 * hn) * sign_of(x2);
    }
    // Re z - h = -(theta - t)/2 with t = -x2/x1 - 2h
    int s1 = sign_of(x1);
    i128 tn = (-x2 * hd - 2 * hn * x1) * s1;
    i128 td = abs128(x1) * hd;
    return s1 * sign_homogeneous(f, tn, td);
}

// For D < 0: sign of |z|^2 - 1.
int compare_norm_to_one(const IntForm& f) {
    const i128 x1 = f[0], x2 = f[1], x3 = f[2], x4 = f[3];
    if (x1 == 0) return sign_of(x4 - x2) * sign_of(x2);
    if (x4 == 0) return sign_of(x3 - x1) * sign_of(x1);
    int s1 = sign_of(x1);
    int theta_sign = -s1 * sign_of(x4);
    // |z|^2 = -x4 / (x1 theta); compare theta with r0 = -x4/x1
    int theta_vs_r0 = -s1 * sign_homogeneous(f, -x4 * s1, abs128(x1));
    return -theta_vs_r0 * theta_sign;
}

struct Hess {
    i128 P, Q, R;
};

Hess hessian128(const IntForm& f) {
    const i128 a = f[0], b = f[1], c = f[2], d = f[3];
    return {b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d};
}

i128 floor_div128(i128 n, i128 d) {
    i128 q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

IntMatrix shift(std::int64_t k) { return {1, 0, k, 1}; }
constexpr IntMatrix kInvert{0, 1, -1, 0};
constexpr IntMatrix kReflect{-1, 0, 0, 1};

// Bring a positive-discriminant form to 0 <= Q <= P <= R on its Hessian.
IntMatrix hessian_reduction(const IntForm& f) {
    Hess h = hessian128(f);
    if (h.P <= 0 || h.R <= 0) throw std::logic_error("Hessian of a positive-discriminant form must be positive definite");
    IntMatrix total;
    for (int guard = 0; guard < 100000; ++guard) {
        i128 k = floor_div128(h.Q + h.P, 2 * h.P);
        if (k != 0) {
            // (P, Q, R) -> (P, Q - 2kP, P k^2 - Q k + R)
            i128 R = h.P * k * k - h.Q * k + h.R;
            h.Q -= 2 * k * h.P;
            h.R = R;
            total = total * shift(narrow(k));
        }
        if (h.P > h.R) {
            std::swap(h.P, h.R);
            h.Q = -h.Q;
            total = total * kInvert;
            continue;
        }
        if (h.Q < 0) {
            h.Q = -h.Q;
            total = total * kReflect;
        }
        return total;
    }
    throw std::logic_error("Hessian reduction did not terminate");
}

// m = floor(Re z + 1/2), found by exponential then binary search.
std::int64_t nearest_translation(const IntForm& f) {
    auto at_least = [&](i128 j) { return compare_real_part(f, 2 * j - 1, 2) >= 0; };
    i128 lo, hi;  // at_least(lo) true, at_least(hi) false
    if (at_least(0)) {
        lo = 0;
        hi = 1;
        while (at_least(hi)) {
            lo = hi;
            hi *= 2;
        }
    } else {
        hi = 0;
        lo = -1;
        while (!at_least(lo)) {
            hi = lo;
            lo *= 2;
        }
    }
    while (hi - lo > 1) {
        i128 mid = lo + (hi - lo) / 2;
        if (at_least(mid)) lo = mid; else hi = mid;
    }
    return narrow(lo);
}

// Bring a negative-discriminant form to 0 <= Re z <= 1/2, |z| >= 1.
IntMatrix root_reduction(IntForm f) {
    IntMatrix total;
    for (int guard = 0; guard < 100000; ++guard) {
        std::int64_t m = nearest_translation(f);
        if (m != 0) {
            IntMatrix s = shift(-m);
            f = act_unimodular(f, s);
            total = total * s;
        }
        if (compare_norm_to_one(f) < 0) {
            f = act_unimodular(f, kInvert);
            total = total * kInvert;
            continue;
        }
        if (compare_real_part(f, 0, 1) < 0) total = total * kReflect;
        return total;
    }
    throw std::logic_error("root reduction did not terminate");
}

IntForm lex_min_candidate(const IntForm& g0, IntMatrix* best_w) {
    bool found = false;
    IntForm best{};
    for (const auto& w : small_unimodular_matrices()) {
        IntForm g = act_unimodular(g0, w);
        if (!in_reduced_domain(g)) continue;
        if (!found || g < best) {
            best = g;
            *best_w = w;
            found = true;
        }
    }
    if (!found) throw std::logic_error("reduced form has no candidate in the fundamental domain");
    return best;
}

std::vector<IntMatrix> stabilizer_of_canonical(const IntForm& c) {
    std::vector<IntMatrix> out;
    for (const auto& w : small_unimodular_matrices())
        if (act_unimodular(c, w) == c) out.push_back(w);
    return out;
}

}  // namespace

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    i128 a = i128{x.a} * y.a + i128{x.b} * y.c, b = i128{x.a} * y.b + i128{x.b} * y.d;
    i128 c = i128{x.c} * y.a + i128{x.d} * y.c, d = i128{x.c} * y.b + i128{x.d} * y.d;
    return {narrow(a), narrow(b), narrow(c), narrow(d)};
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    std::int64_t D = m.det();
    if (D != 1 && D != -1) throw std::invalid_argument("matrix is not unimodular");
    return {m.d * D, -m.b * D, -m.c * D, m.a * D};
}

IntForm act_unimodular(const IntForm& f, const IntMatrix& m) {
    std::int64_t D = m.det();
    if (D != 1 && D != -1) throw std::invalid_argument("matrix is not unimodular");
    // |entries| and |coefficients| are small in practice; the i128 path reports overflow rather than wrapping
    algebra::Quad<i128> x = {f[0], f[1], f[2], f[3]};
    for (auto v : {m.a, m.b, m.c, m.d})
        if (v > (std::int64_t{1} << 20) || v < -(std::int64_t{1} << 20)) {
            // fall back to exact arithmetic for large matrices
            BinaryCubicForm g = act(BinaryCubicForm::from_integers(f), to_gl2(m));
            return g.to_integers();
        }
    for (auto v : f)
        if (v > (std::int64_t{1} << 40) || v < -(std::int64_t{1} << 40)) {
            BinaryCubicForm g = act(BinaryCubicForm::from_integers(f), to_gl2(m));
            return g.to_integers();
        }
    auto g = algebra::twisted_substitution<i128>(x, m.a, m.b, m.c, m.d);
    return {narrow(g[0]), narrow(g[1]), narrow(g[2]), narrow(g[3])};
}

std::int64_t discriminant_int(const IntForm& f) {
    check_bound(f);
    algebra::Quad<i128> x = {f[0], f[1], f[2], f[3]};
    return narrow(algebra::discriminant(x));
}

GL2Elt to_gl2(const IntMatrix& m) {
    return {Rational(Integer(static_cast<long>(m.a))), Rational(Integer(static_cast<long>(m.b))), Rational(Integer(static_cast<long>(m.c))),
            Rational(Integer(static_cast<long>(m.d)))};
}

IntMatrix to_int_matrix(const GL2Elt& m) {
    if (!m.is_integral()) throw std::invalid_argument("matrix is not integral");
    auto get = [](const Rational& q) {
        if (!q.get_num().fits_slong_p()) throw std::overflow_error("matrix entry exceeds 64 bits");
        return static_cast<std::int64_t>(q.get_num().get_si());
    };
    return {get(m.a()), get(m.b()), get(m.c()), get(m.d())};
}

bool in_reduced_domain(const IntForm& f) {
    check_bound(f);
    algebra::Quad<i128> x = {f[0], f[1], f[2], f[3]};
    i128 D = algebra::discriminant(x);
    if (D == 0) throw std::invalid_argument("reduction requires a nonzero discriminant");
    if (D > 0) {
        Hess h = hessian128(f);
        return 0 <= h.Q && h.Q <= h.P && h.P <= h.R;
    }
    return compare_real_part(f, 0, 1) >= 0 && compare_real_part(f, 1, 2) <= 0 && compare_norm_to_one(f) >= 0;
}

const std::vector<IntMatrix>& small_unimodular_matrices() {
    static const std::vector<IntMatrix> w = [] {
        std::vector<IntMatrix> out;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (int d = -1; d <= 1; ++d) {
                        int det = a * d - b * c;
                        if (det == 1 || det == -1) out.push_back({a, b, c, d});
                    }
        return out;
    }();
    return w;
}

IntReduction reduce_int(const IntForm& f, ClassGroup group) {
    check_bound(f);
    std::int64_t D = discriminant_int(f);
    if (D == 0) throw std::invalid_argument("reduction requires a nonzero discriminant");
    IntMatrix g0 = D > 0 ? hessian_reduction(f) : root_reduction(f);
    IntForm h = act_unimodular(f, g0);
    check_bound(h);
    IntMatrix w;
    IntForm c = lex_min_candidate(h, &w);
    IntMatrix witness = g0 * w;
    if (group == ClassGroup::SL2 && witness.det() == -1) {
        auto stab = stabilizer_of_canonical(c);
        auto it = std::find_if(stab.begin(), stab.end(), [](const IntMatrix& s) { return s.det() == -1; });
        if (it != stab.end()) {
            witness = witness * *it;
        } else {
            witness = witness * IntMatrix{1, 0, 0, -1};
            c = act_unimodular(c, IntMatrix{1, 0, 0, -1});
        }
    }
    return {c, witness};
}

bool is_canonical(const IntForm& f, ClassGroup group) {
    if (group == ClassGroup::SL2) return reduce_int(f, group).canonical == f;
    if (!in_reduced_domain(f)) return false;
    for (const auto& w : small_unimodular_matrices()) {
        IntForm g = act_unimodular(f, w);
        if (g < f && in_reduced_domain(g)) return false;
    }
    return true;
}

std::vector<IntMatrix> stabilizer_int(const IntForm& f, ClassGroup group) {
    IntReduction r = reduce_int(f, ClassGroup::GL2);
    IntMatrix winv = unimodular_inverse(r.witness);
    std::vector<IntMatrix> out;
    for (const auto& s : stabilizer_of_canonical(r.canonical)) {
        IntMatrix t = r.witness * s * winv;
        if (group == ClassGroup::SL2 && t.det() != 1) continue;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- rational wrappers

namespace {
IntForm integral_input(const BinaryCubicForm& f) {
    if (!f.is_integral()) throw std::invalid_argument("reduction requires an integral form");
    if (discriminant(f) == 0) throw std::invalid_argument("reduction requires a nonzero discriminant");
    return f.to_integers();
}
}  // namespace

Reduction reduce(const BinaryCubicForm& f, ClassGroup group) {
    IntReduction r = reduce_int(integral_input(f), group);
    return {BinaryCubicForm::from_integers(r.canonical), to_gl2(r.witness)};
}

std::optional<GL2Elt> equivalent(const BinaryCubicForm& f, const BinaryCubicForm& g, ClassGroup group) {
    IntForm a = integral_input(f), b = integral_input(g);
    if (discriminant_int(a) != discriminant_int(b)) return std::nullopt;
    IntReduction ra = reduce_int(a, group), rb = reduce_int(b, group);
    if (ra.canonical != rb.canonical) return std::nullopt;
    return to_gl2(ra.witness * unimodular_inverse(rb.witness));
}

std::vector<GL2Elt> stabilizer(const BinaryCubicForm& f, ClassGroup group) {
    std::vector<GL2Elt> out;
    for (const auto& m : stabilizer_int(integral_input(f), group)) out.push_back(to_gl2(m));
    return out;
}

}  // namespace g2cubic
