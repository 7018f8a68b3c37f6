#ifndef SUBDUAL_RATIONAL_HPP
#define SUBDUAL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subdual/errors.hpp"

namespace subdual {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long p, long long q = 1) { return Rational(p, q); }

inline Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Largest integer <= r (cpp_int division truncates toward zero, so fix up
/// negative non-integers by hand).
inline Int floor_rat(const Rational& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && !is_integer(r)) --q;
    return q;
}

inline Int ceil_rat(const Rational& r) {
    Int q = numerator(r) / denominator(r);
    if (r > 0 && !is_integer(r)) ++q;
    return q;
}

/// Distance from r to the nearest integer.
inline Rational frac_distance(const Rational& r) {
    Rational below = r - Rational(floor_rat(r));
    Rational above = Rational(1) - below;
    return below < above ? below : above;
}

/// Serialize as "p/q", or just "p" for integers.
inline std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parse "p", "-p", "p/q" or "-p/q". Anything else (notably floating-point
/// literals such as "1.5" or "1e3") is rejected.
inline Rational parse_rational(const std::string& text) {
    const std::string& s = text;
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = (s[i] == '-');
        ++i;
    }
    std::size_t num_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == num_begin) throw ParseError("not a rational literal: '" + text + "'");
    Int num(s.substr(num_begin, i - num_begin));
    Int den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == den_begin) throw ParseError("missing denominator: '" + text + "'");
        den = Int(s.substr(den_begin, i - den_begin));
        if (den == 0) throw ParseError("zero denominator: '" + text + "'");
    }
    if (i != s.size()) throw ParseError("not a rational literal: '" + text + "'");
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

namespace detail {

inline Int pow10_int(unsigned e) {
    Int p = 1;
    for (unsigned i = 0; i < e; ++i) p *= 10;
    return p;
}

inline int digits10_of(const Int& v) {
    if (v == 0) return 1;
    const Int a = v < 0 ? Int(-v) : v;
    return static_cast<int>(a.str().size());
}

// floor(a/b) rounded half away from zero, a,b > 0
inline Int div_round_half_up(const Int& a, const Int& b) { return (2 * a + b) / (2 * b); }

} // namespace detail

/// Decimal rendering with `sig` significant digits (default 12), computed with
/// integer arithmetic only so the output is platform independent. Intended for
/// human-facing/plotting columns next to the exact "p/q" values.
inline std::string decimal_approx(const Rational& r, int sig = 12) {
    if (r == 0) return "0";
    const bool negative = r < 0;
    Int p = abs(numerator(r));
    Int q = denominator(r);

    // exponent e with 10^e <= p/q < 10^{e+1}
    int e = detail::digits10_of(p) - detail::digits10_of(q);
    if (e >= 0) {
        if (p < q * detail::pow10_int(static_cast<unsigned>(e))) --e;
    } else {
        if (p * detail::pow10_int(static_cast<unsigned>(-e)) < q) --e;
    }

    // mantissa with `sig` digits, rounded
    int shift = (sig - 1) - e;
    Int m;
    if (shift >= 0)
        m = detail::div_round_half_up(p * detail::pow10_int(static_cast<unsigned>(shift)), q);
    else
        m = detail::div_round_half_up(p, q * detail::pow10_int(static_cast<unsigned>(-shift)));
    if (m >= detail::pow10_int(static_cast<unsigned>(sig))) {
        m /= 10; // rounding carried into a new leading digit
        ++e;
    }

    std::string digits = m.str();
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out;
    if (e >= 0 && e <= 17) {
        std::size_t int_len = static_cast<std::size_t>(e) + 1;
        if (digits.size() <= int_len) {
            out = digits + std::string(int_len - digits.size(), '0');
        } else {
            out = digits.substr(0, int_len) + "." + digits.substr(int_len);
        }
    } else if (e < 0 && e >= -6) {
        out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::string(e >= 0 ? "+" : "-") + std::to_string(e >= 0 ? e : -e);
    }
    return negative ? "-" + out : out;
}

} // namespace subdual

#endif // SUBDUAL_RATIONAL_HPP
