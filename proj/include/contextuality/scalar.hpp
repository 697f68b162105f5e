#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "contextuality/errors.hpp"

namespace contextuality {

/// Exact rational. gmpxx keeps results of arithmetic in canonical form
/// (positive denominator, reduced).
using Scalar = mpq_class;

inline Scalar make_scalar(long num, long den = 1) {
    if (den == 0) throw ParseError("zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline Scalar abs_of(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

inline const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
inline const Scalar& min_of(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

namespace detail {

inline bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace detail

/// Parses "3", "-0.25", "+7/12", ".5", "1e-3". Decimals become exact rationals.
inline Scalar parse_scalar(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    const auto fail = [&]() -> ParseError { return ParseError("not a rational number: \"" + std::string(text) + "\""); };
    if (s.empty()) throw fail();

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Scalar value;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
        const mpz_class n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
        value = Scalar(n, d);
        value.canonicalize();
    } else {
        long exponent = 0;
        if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
                exp_negative = exp.front() == '-';
                exp.remove_prefix(1);
            }
            if (!detail::all_digits(exp) || exp.size() > 3) throw fail();
            exponent = std::stol(std::string(exp)) * (exp_negative ? -1 : 1);
            s = s.substr(0, e);
        }
        const auto dot = s.find('.');
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw fail();
        if (!whole.empty() && !detail::all_digits(whole)) throw fail();
        if (!frac.empty() && !detail::all_digits(frac)) throw fail();
        const mpz_class digits(std::string(whole) + std::string(frac), 10);
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Scalar(digits, scale);
        value.canonicalize();
        mpz_class power = 1;
        for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) power *= 10;
        if (exponent > 0) value *= power;
        if (exponent < 0) value /= power;
    }
    return negative ? Scalar(-value) : value;
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Scalar& x) { return x.get_str(); }

/// Fixed-point rendering with `places` digits, rounding half away from zero.
inline std::string to_decimal(const Scalar& x, int places) {
    mpz_class scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const Scalar scaled = abs_of(x) * scale;
    mpz_class q = scaled.get_num() / scaled.get_den();
    const mpz_class r = scaled.get_num() % scaled.get_den();
    if (2 * r >= scaled.get_den()) q += 1;

    std::string digits = q.get_str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places))
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    const bool negative = x < 0 && q != 0;
    return negative ? "-" + digits : digits;
}

}  // namespace contextuality
