#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

#include "zkit/errors.hpp"

namespace zkit {

// Exact arithmetic only. Every quantity the engine reports is an Integer or a
// Rational kept in canonical form (reduced, denominator > 0) by GMP; there is
// no floating-point fallback anywhere.
using Integer  = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                               boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer rat_num(const Rational& q) { return numerator(q); }
inline Integer rat_den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return rat_den(q) == 1; }

// floor(a/b) for b > 0; Integer division truncates toward zero, so adjust.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

inline Integer rat_floor(const Rational& q) { return floor_div(rat_num(q), rat_den(q)); }
inline Integer rat_ceil(const Rational& q) { return ceil_div(rat_num(q), rat_den(q)); }

// Serialized form: "p/q" in lowest terms, or the bare integer when q == 1.
inline std::string format_rational(const Rational& q) { return q.str(); }

namespace detail {
inline bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}
} // namespace detail

// Accepts "p", "-p" or "p/q" with q > 0. Reduces to canonical form.
inline std::optional<Rational> try_parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!detail::is_integer_literal(text)) return std::nullopt;
        return Rational(Integer(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den)) return std::nullopt;
    Integer d(den);
    if (d <= 0) return std::nullopt;
    return Rational(Integer(num)) / Rational(d);
}

inline Rational parse_rational(const std::string& text) {
    auto q = try_parse_rational(text);
    if (!q) fail(errc::input_error, "cannot parse rational '" + text + "'");
    return *q;
}

} // namespace zkit
