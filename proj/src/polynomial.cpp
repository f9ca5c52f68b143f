#include "g2cubic/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace g2cubic {

namespace {

int exponent_of(Polynomial::Monomial m, int var) { return static_cast<int>((m >> (8 * var)) & 0xff); }

Polynomial::Monomial multiply_monomials(Polynomial::Monomial a, Polynomial::Monomial b) {
    Polynomial::Monomial r = 0;
    for (int v = 0; v < Polynomial::kMaxVariables; ++v) {
        int e = exponent_of(a, v) + exponent_of(b, v);
        if (e > 0xff) throw std::overflow_error("polynomial exponent overflow");
        r |= static_cast<Polynomial::Monomial>(e) << (8 * v);
    }
    return r;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(0, c);
}

Polynomial Polynomial::variable(int index) {
    if (index < 0 || index >= kMaxVariables) throw std::out_of_range("polynomial variable index");
    Polynomial p;
    p.terms_.emplace(Monomial{1} << (8 * index), Rational(1));
    return p;
}

void Polynomial::add_term(Monomial m, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
        terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    Rational t;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            t = ca * cb;
            r.add_term(multiply_monomials(ma, mb), t);
        }
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial operator-(Polynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1L), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (int v = 0; v < kMaxVariables; ++v) t += exponent_of(m, v);
        d = std::max(d, t);
    }
    return d;
}

Rational Polynomial::coefficient(std::initializer_list<int> exponents) const {
    Monomial m = 0;
    int v = 0;
    for (int e : exponents) m |= static_cast<Monomial>(e) << (8 * v++);
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int v = 0; v < kMaxVariables; ++v) {
            int e = exponent_of(m, v);
            if (e) os << "*t" << v << (e > 1 ? "^" + std::to_string(e) : "");
        }
    }
    return os.str();
}

}  // namespace g2cubic
