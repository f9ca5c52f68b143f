#pragma once

#include <array>

// Coefficient formulas shared by every ring the forms live over
// (exact rationals, machine integers, residues mod N, symbolic polynomials).
namespace g2cubic::algebra {

template <class T>
using Quad = std::array<T, 4>;

template <class T>
T discriminant(const Quad<T>& x) {
    const T& a = x[0];
    const T& b = x[1];
    const T& c = x[2];
    const T& d = x[3];
    return b * b * c * c + T(18) * a * b * c * d - T(4) * b * b * b * d - T(4) * a * c * c * c - T(27) * a * a * d * d;
}

// Coefficients of f(p u + q v, r u + s v).
template <class T>
Quad<T> substitute(const Quad<T>& x, const T& p, const T& q, const T& r, const T& s) {
    // (pu+qv)^i (ru+sv)^(3-i) expanded for i = 3..0
    const T pp = p * p, qq = q * q, rr = r * r, ss = s * s;
    Quad<T> out;
    out[0] = x[0] * pp * p + x[1] * pp * r + x[2] * p * rr + x[3] * rr * r;
    out[1] = x[0] * T(3) * pp * q + x[1] * (pp * s + T(2) * p * q * r) + x[2] * (T(2) * p * r * s + q * rr) + x[3] * T(3) * rr * s;
    out[2] = x[0] * T(3) * p * qq + x[1] * (T(2) * p * q * s + qq * r) + x[2] * (p * ss + T(2) * q * r * s) + x[3] * T(3) * r * ss;
    out[3] = x[0] * qq * q + x[1] * qq * s + x[2] * q * ss + x[3] * ss * s;
    return out;
}

// f(d u - c v, a v - b u): the action of [[a,b],[c,d]] up to the factor det^{-2}.
template <class T>
Quad<T> twisted_substitution(const Quad<T>& x, const T& a, const T& b, const T& c, const T& d) {
    return substitute<T>(x, d, T(-c), T(-b), a);
}

template <class T>
std::array<T, 3> hessian(const Quad<T>& x) {
    return {x[1] * x[1] - T(3) * x[0] * x[2], x[1] * x[2] - T(9) * x[0] * x[3], x[2] * x[2] - T(3) * x[1] * x[3]};
}

template <class T>
T quadratic_discriminant(const std::array<T, 3>& h) {
    return h[1] * h[1] - T(4) * h[0] * h[2];
}

}  // namespace g2cubic::algebra
