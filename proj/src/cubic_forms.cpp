#include "g2cubic/cubic_forms.hpp"

#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "g2cubic/form_algebra.hpp"

namespace g2cubic {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- BinaryCubicForm

BinaryCubicForm BinaryCubicForm::from_integers(const std::array<std::int64_t, 4>& x) {
    return {Rational(Integer(static_cast<long>(x[0]))), Rational(Integer(static_cast<long>(x[1]))),
            Rational(Integer(static_cast<long>(x[2]))), Rational(Integer(static_cast<long>(x[3])))};
}

BinaryCubicForm BinaryCubicForm::parse(std::string_view text) {
    auto parts = split(text, ',');
    if (parts.size() != 4) throw std::invalid_argument("form literal needs four comma-separated entries: '" + std::string(text) + "'");
    return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3])};
}

bool BinaryCubicForm::is_integral() const {
    for (const auto& q : x_)
        if (!is_integer(q)) return false;
    return true;
}

bool BinaryCubicForm::is_zero() const {
    for (const auto& q : x_)
        if (q != 0) return false;
    return true;
}

std::array<std::int64_t, 4> BinaryCubicForm::to_integers() const {
    std::array<std::int64_t, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!is_integer(x_[i])) throw std::invalid_argument("form is not integral: " + to_string());
        if (!x_[i].get_num().fits_slong_p()) throw std::overflow_error("form coefficient exceeds 64 bits: " + to_string());
        out[i] = x_[i].get_num().get_si();
    }
    return out;
}

std::string BinaryCubicForm::to_string() const {
    return x_[0].get_str() + "," + x_[1].get_str() + "," + x_[2].get_str() + "," + x_[3].get_str();
}

// ---------------------------------------------------------------- GL2Elt

GL2Elt::GL2Elt(Rational a, Rational b, Rational c, Rational d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if (det() == 0) throw std::invalid_argument("singular matrix");
}

GL2Elt GL2Elt::parse(std::string_view text) {
    auto rows = split(text, ';');
    if (rows.size() != 2) throw std::invalid_argument("matrix literal must be 'a,b;c,d': '" + std::string(text) + "'");
    auto r0 = split(rows[0], ','), r1 = split(rows[1], ',');
    if (r0.size() != 2 || r1.size() != 2) throw std::invalid_argument("matrix literal must be 'a,b;c,d': '" + std::string(text) + "'");
    return {parse_rational(r0[0]), parse_rational(r0[1]), parse_rational(r1[0]), parse_rational(r1[1])};
}

GL2Elt GL2Elt::inverse() const {
    Rational D = det();
    return {m_[3] / D, -m_[1] / D, -m_[2] / D, m_[0] / D};
}

bool GL2Elt::is_integral() const {
    for (const auto& q : m_)
        if (!is_integer(q)) return false;
    return true;
}

std::string GL2Elt::to_string() const {
    return m_[0].get_str() + "," + m_[1].get_str() + ";" + m_[2].get_str() + "," + m_[3].get_str();
}

GL2Elt operator*(const GL2Elt& x, const GL2Elt& y) {
    return {x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(), x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d()};
}

// ---------------------------------------------------------------- OrbitClass

std::string OrbitClass::to_string() const {
    switch (kind) {
        case Kind::S0: return "S0";
        case Kind::S1: return "S1";
        case Kind::S2: return "S2";
        case Kind::Regular: return "Regular(" + std::to_string(index) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- invariants and action

Rational discriminant(const BinaryCubicForm& f) { return algebra::discriminant(f.coefficients()); }

Rational pairing(const BinaryCubicForm& x, const BinaryCubicForm& y) {
    return x[0] * y[3] - x[1] * y[2] / 3 + x[2] * y[1] / 3 - x[3] * y[0];
}

BinaryCubicForm act(const BinaryCubicForm& f, const GL2Elt& l) {
    Rational D = l.det();
    auto g = algebra::twisted_substitution(f.coefficients(), l.a(), l.b(), l.c(), l.d());
    Rational scale = 1 / (D * D);
    for (auto& q : g) q *= scale;
    return BinaryCubicForm(g);
}

GL2Elt iota(const GL2Elt& l) {
    Rational D = l.det();
    return {l.a() / D, l.b() / D, l.c() / D, l.d() / D};
}

QuadraticCovariant hessian(const BinaryCubicForm& f) {
    auto h = algebra::hessian(f.coefficients());
    return {h[0], h[1], h[2]};
}

// ---------------------------------------------------------------- classification

namespace {

// Primitive integer multiple of f.
std::array<Integer, 4> integral_multiple(const BinaryCubicForm& f) {
    Integer l = 1;
    for (std::size_t i = 0; i < 4; ++i) l = lcm(l, f[i].get_den());
    std::array<Integer, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        Rational t = f[i] * l;
        out[i] = t.get_num();
    }
    return out;
}

Integer eval_monic(const Integer& b, const Integer& c, const Integer& d, const Integer& y) {
    return ((y + b) * y + c) * y + d;
}

Integer floor_div(const Integer& n, long d) {
    Integer q;
    mpz_fdiv_q_ui(q.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
    return q;
}

Integer ceil_div(const Integer& n, long d) {
    Integer q;
    mpz_cdiv_q_ui(q.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
    return q;
}

// Distinct integer roots of Y^3 + bY^2 + cY + d: bisection on the monotone pieces.
std::set<Integer> integer_roots_monic(const Integer& b, const Integer& c, const Integer& d) {
    std::set<Integer> roots;
    Integer B = abs(b);
    if (abs(c) > B) B = abs(c);
    if (abs(d) > B) B = abs(d);
    B += 1;
    auto search = [&](Integer lo, Integer hi) {
        if (lo > hi) return;
        Integer flo = eval_monic(b, c, d, lo), fhi = eval_monic(b, c, d, hi);
        if (flo == 0) roots.insert(lo);
        if (fhi == 0) roots.insert(hi);
        if (sgn(flo) * sgn(fhi) >= 0) return;
        while (hi - lo > 1) {
            Integer mid = (lo + hi) / 2;
            Integer fm = eval_monic(b, c, d, mid);
            if (fm == 0) {
                roots.insert(mid);
                return;
            }
            if (sgn(fm) == sgn(flo)) lo = mid; else hi = mid;
        }
    };
    auto probe = [&](const Integer& lo, const Integer& hi) {
        for (Integer y = lo; y <= hi; ++y)
            if (eval_monic(b, c, d, y) == 0) roots.insert(y);
    };
    Integer delta = b * b - 3 * c;  // critical points (-b +- sqrt(delta)) / 3
    if (delta <= 0) {
        search(-B, B);
        return roots;
    }
    Integer s = sqrt(delta);
    Integer A = floor_div(-b - s - 1, 3), A2 = ceil_div(-b - s, 3);
    Integer C = floor_div(-b + s, 3), C2 = ceil_div(-b + s + 1, 3);
    probe(A, A2);
    probe(C, C2);
    search(-B, A);
    search(A2, C);
    search(C2, B);
    return roots;
}

}  // namespace

int rational_root_count(const BinaryCubicForm& f) {
    if (discriminant(f) == 0) throw std::domain_error("rational_root_count requires a nonzero discriminant");
    auto x = integral_multiple(f);
    if (x[0] == 0) {
        Integer qd = x[2] * x[2] - 4 * x[1] * x[3];
        return 1 + (mpz_perfect_square_p(qd.get_mpz_t()) ? 2 : 0);
    }
    // x1^2 f(Y/x1, 1) is monic in Y
    return static_cast<int>(integer_roots_monic(x[1], x[0] * x[2], x[0] * x[0] * x[3]).size());
}

OrbitClass classify_orbit(const BinaryCubicForm& f) {
    if (f.is_zero()) return {OrbitClass::Kind::S0, 0};
    if (discriminant(f) == 0) {
        QuadraticCovariant h = hessian(f);
        bool cube = h.h1 == 0 && h.h2 == 0 && h.h3 == 0;
        return {cube ? OrbitClass::Kind::S1 : OrbitClass::Kind::S2, 0};
    }
    switch (rational_root_count(f)) {
        case 3: return OrbitClass::regular(1);
        case 1: return OrbitClass::regular(2);
        case 0: return OrbitClass::regular(3);
        default: throw std::logic_error("a separable cubic cannot have exactly two rational roots");
    }
}

}  // namespace g2cubic
