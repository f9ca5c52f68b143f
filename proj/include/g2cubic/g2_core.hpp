#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "g2cubic/rational.hpp"

namespace g2cubic {

// c1*alpha1 + c2*alpha2; (0,0) labels the Cartan part.
struct RootVector {
    int c1 = 0;
    int c2 = 0;
    friend auto operator<=>(const RootVector&, const RootVector&) = default;
    RootVector operator+(RootVector o) const { return {c1 + o.c1, c2 + o.c2}; }
    RootVector operator-(RootVector o) const { return {c1 - o.c1, c2 - o.c2}; }
    RootVector operator-() const { return {-c1, -c2}; }
};

constexpr int kLieDim = 14;

// Basis order: H_{alpha1}, H_{alpha2}, X_alpha for the six positive roots
// (in the order returned by positive_roots()), then X_{-alpha} in the same order.
class LieElement {
public:
    LieElement() = default;
    static LieElement basis(int index);

    const Rational& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    LieElement& operator+=(const LieElement& o);
    LieElement& operator-=(const LieElement& o);
    LieElement& operator*=(const Rational& s);
    friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
    friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
    friend LieElement operator*(const Rational& s, LieElement a) { return a *= s; }
    friend bool operator==(const LieElement& a, const LieElement& b) { return a.c_ == b.c_; }

    bool is_zero() const;
    std::string to_string() const;

private:
    std::array<Rational, kLieDim> c_{};
};

struct G2Table {
    // products[i][j] = [basis i, basis j]
    std::array<std::array<LieElement, kLieDim>, kLieDim> products;
    // structure constant N_{alpha,beta} for root vectors, 0 when alpha+beta is not a root
    int structure_constant(RootVector alpha, RootVector beta) const;
};

struct RootDatum {
    std::vector<RootVector> positive;
    // coroots in the (H1,H2) basis: alpha1^vee = H2 - H1, alpha2^vee = H1
    std::array<std::array<int, 2>, 2> coroots_h12;
    RootVector varpi1;
    RootVector varpi2;
    // alpha(t1*H1 + t2*H2)
    double evaluate(RootVector alpha, double t1, double t2) const;
    Rational evaluate(RootVector alpha, const Rational& t1, const Rational& t2) const;
    // <beta^vee, lambda> with beta^vee given in the (H1,H2) basis
    Rational pair_coroot(std::array<int, 2> coroot_h12, RootVector lambda) const;
};

struct TorusPoint {
    double a = 1.0;
    double b = 1.0;
};

struct TruncationParam {
    double T1 = 0.0;
    double T2 = 0.0;
};

const std::vector<RootVector>& positive_roots();
const std::vector<RootVector>& all_roots();
bool is_root(RootVector r);
int basis_index(RootVector r);           // index of X_r; throws for non-roots
std::optional<RootVector> root_of(int index);  // empty for the two Cartan elements

// Inner product normalized with (alpha1,alpha1) = 2.
int inner_product(RootVector a, RootVector b);
// <beta, alpha^vee> = 2(beta,alpha)/(alpha,alpha)
int cartan_pairing(RootVector beta, RootVector alpha);
// alpha^vee expanded in H_{alpha1}, H_{alpha2}
std::array<int, 2> coroot_in_chevalley_basis(RootVector alpha);
// p+1 where p is maximal with beta - p*alpha a root
int chain_length_bound(RootVector alpha, RootVector beta);

G2Table build_chevalley_table();
const G2Table& chevalley_table();  // built once, shared

LieElement bracket(const LieElement& x, const LieElement& y, const G2Table& t);

RootDatum root_datum();

// Levi part of the parabolic containing X_{+-alpha1}.
bool in_levi(const LieElement& y);
const std::array<RootVector, 4>& cubic_space_roots();  // alpha2, a1+a2, 2a1+a2, 3a1+a2
using Matrix4 = std::array<std::array<Rational, 4>, 4>;
// ad(Y) on V; column j is the image of the j-th cubic_space_roots() vector.
Matrix4 levi_action_matrix(const LieElement& y, const G2Table& t);
// Image of a Levi element in gl(2) as (a,b,c,d) for [[a,b],[c,d]]; ad(Y) on V is the
// derivative of the twisted cubic action along this matrix.
std::array<Rational, 4> levi_to_gl2(const LieElement& y);

bool tau_hat(int j, const TorusPoint& m, const TruncationParam& T);
// varpi_j(H_0(m) - T) with H_0(m) = log(a) H1 + log(b) H2
double truncation_weight(int j, const TorusPoint& m, const TruncationParam& T);

double truncation_residual_closed(double a, double T1);
double truncation_residual_quadrature(double a, double T1);
inline double truncation_residual(double a, double T1) { return truncation_residual_closed(a, T1); }

// "X[a1,a2] X[b1,b2] -> c * X[s1,s2]" per nonzero constant; Cartan elements print as H[1,0], H[0,1].
std::string dump_table(const G2Table& t);

}  // namespace g2cubic
