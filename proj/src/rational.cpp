#include "g2cubic/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace g2cubic {

namespace {

bool valid_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+')
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    Rational q;
    q.get_num() = Integer(n, 10);
    q.get_den() = Integer(std::string(den), 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace g2cubic
