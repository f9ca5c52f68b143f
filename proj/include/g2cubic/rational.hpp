#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace g2cubic {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p" or "p/q" with optional sign; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace g2cubic
