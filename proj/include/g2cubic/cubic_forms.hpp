#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g2cubic/rational.hpp"

namespace g2cubic {

// x1 u^3 + x2 u^2 v + x3 u v^2 + x4 v^3
class BinaryCubicForm {
public:
    BinaryCubicForm() = default;
    BinaryCubicForm(Rational x1, Rational x2, Rational x3, Rational x4) : x_{std::move(x1), std::move(x2), std::move(x3), std::move(x4)} {}
    explicit BinaryCubicForm(const std::array<Rational, 4>& x) : x_(x) {}
    static BinaryCubicForm from_integers(const std::array<std::int64_t, 4>& x);
    // "x1,x2,x3,x4" with rational entries
    static BinaryCubicForm parse(std::string_view text);

    const Rational& operator[](std::size_t i) const { return x_[i]; }
    const std::array<Rational, 4>& coefficients() const { return x_; }
    bool is_integral() const;
    bool is_zero() const;
    // throws std::invalid_argument if not integral, std::overflow_error if not representable
    std::array<std::int64_t, 4> to_integers() const;
    std::string to_string() const;

    friend bool operator==(const BinaryCubicForm& a, const BinaryCubicForm& b) { return a.x_ == b.x_; }
    friend bool operator!=(const BinaryCubicForm& a, const BinaryCubicForm& b) { return !(a == b); }
    friend bool operator<(const BinaryCubicForm& a, const BinaryCubicForm& b) { return a.x_ < b.x_; }

private:
    std::array<Rational, 4> x_{};
};

// [[a,b],[c,d]], nonsingular
class GL2Elt {
public:
    GL2Elt() : GL2Elt(1, 0, 0, 1) {}
    GL2Elt(Rational a, Rational b, Rational c, Rational d);
    static GL2Elt identity() { return {}; }
    // "a,b;c,d"
    static GL2Elt parse(std::string_view text);

    const Rational& a() const { return m_[0]; }
    const Rational& b() const { return m_[1]; }
    const Rational& c() const { return m_[2]; }
    const Rational& d() const { return m_[3]; }
    Rational det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    GL2Elt inverse() const;
    bool is_integral() const;
    std::string to_string() const;

    friend GL2Elt operator*(const GL2Elt& x, const GL2Elt& y);
    friend bool operator==(const GL2Elt& x, const GL2Elt& y) { return x.m_ == y.m_; }
    friend bool operator!=(const GL2Elt& x, const GL2Elt& y) { return !(x == y); }
    friend bool operator<(const GL2Elt& x, const GL2Elt& y) { return x.m_ < y.m_; }

private:
    std::array<Rational, 4> m_;
};

struct QuadraticCovariant {
    Rational h1, h2, h3;
    Rational discriminant() const { return h2 * h2 - 4 * h1 * h3; }
    friend bool operator==(const QuadraticCovariant&, const QuadraticCovariant&) = default;
};

struct OrbitClass {
    enum class Kind { S0, S1, S2, Regular };
    Kind kind = Kind::S0;
    int index = 0;  // splitting index i in {1,2,3} for Regular, 0 otherwise

    static OrbitClass regular(int i) { return {Kind::Regular, i}; }
    std::string to_string() const;
    friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

Rational discriminant(const BinaryCubicForm& f);
Rational pairing(const BinaryCubicForm& x, const BinaryCubicForm& y);
// det(l) f((u,v) l^{-1}); right action
BinaryCubicForm act(const BinaryCubicForm& f, const GL2Elt& l);
GL2Elt iota(const GL2Elt& l);
QuadraticCovariant hessian(const BinaryCubicForm& f);
OrbitClass classify_orbit(const BinaryCubicForm& f);

// Number of distinct roots in P^1(Q) of a nonzero form.
int rational_root_count(const BinaryCubicForm& f);

enum class ClassGroup { GL2, SL2 };

struct Reduction {
    BinaryCubicForm canonical;
    GL2Elt witness;  // canonical = act(f, witness)
};

Reduction reduce(const BinaryCubicForm& f, ClassGroup group = ClassGroup::GL2);
std::optional<GL2Elt> equivalent(const BinaryCubicForm& f, const BinaryCubicForm& g, ClassGroup group = ClassGroup::GL2);
std::vector<GL2Elt> stabilizer(const BinaryCubicForm& f, ClassGroup group = ClassGroup::GL2);

// ---- integral fast path (coefficients bounded by kReductionBound in absolute value)

using IntForm = std::array<std::int64_t, 4>;
struct IntMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    std::int64_t det() const { return a * d - b * c; }
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;
};

constexpr std::int64_t kReductionBound = std::int64_t{1} << 24;

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
// inverse of a determinant +-1 matrix
IntMatrix unimodular_inverse(const IntMatrix& m);
// act for det +-1 matrices; throws std::overflow_error when a coefficient leaves the int64 range
IntForm act_unimodular(const IntForm& f, const IntMatrix& m);
std::int64_t discriminant_int(const IntForm& f);  // requires |coef| <= 2^24
GL2Elt to_gl2(const IntMatrix& m);
IntMatrix to_int_matrix(const GL2Elt& m);

// Fundamental-domain predicate used by the canonical choice.
bool in_reduced_domain(const IntForm& f);
// Candidate set: all matrices with entries in {-1,0,1} and determinant +-1.
const std::vector<IntMatrix>& small_unimodular_matrices();

struct IntReduction {
    IntForm canonical;
    IntMatrix witness;
};
IntReduction reduce_int(const IntForm& f, ClassGroup group = ClassGroup::GL2);
// True when f equals its own canonical form; cheaper than reduce_int for domain members.
bool is_canonical(const IntForm& f, ClassGroup group = ClassGroup::GL2);
std::vector<IntMatrix> stabilizer_int(const IntForm& f, ClassGroup group = ClassGroup::GL2);

}  // namespace g2cubic
