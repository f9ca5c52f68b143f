#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "g2cubic/rational.hpp"

namespace g2cubic {

// Sparse multivariate polynomial over Q in at most 8 indeterminates.
// A monomial is packed into 64 bits, 8 bits of exponent per variable.
class Polynomial {
public:
    using Monomial = std::uint64_t;
    static constexpr int kMaxVariables = 8;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

    static Polynomial variable(int index);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(Polynomial a);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int degree() const;

    // Coefficient of the monomial with the given exponents (missing trailing entries are 0).
    Rational coefficient(std::initializer_list<int> exponents) const;

    std::string to_string() const;

private:
    void add_term(Monomial m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

}  // namespace g2cubic
