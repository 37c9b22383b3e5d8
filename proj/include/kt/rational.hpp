#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace kt {

using Int = boost::multiprecision::cpp_int;

// Exact rational scalar. The backing type keeps values in lowest terms with a
// positive denominator; no operation ever rounds.
using Rational = boost::multiprecision::cpp_rational;

// Canonical text form: "p" when the denominator is 1, else "p/q" with q > 0.
inline std::string to_string(const Rational& r)
{
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    std::string s = num.str();
    if (den != 1) {
        s += '/';
        s += den.str();
    }
    return s;
}

// Parses "p" or "p/q" (optional sign on p, q > 0). Throws std::invalid_argument
// on anything else; never accepts floating-point notation.
inline Rational parse_rational(std::string_view text)
{
    const auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational literal: \"" + std::string(text) + "\"");
    };

    const auto digits = [](std::string_view s) {
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };

    std::string_view num = text;
    std::string_view den;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }

    bool negative = false;
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '+' || num_digits.front() == '-')) {
        negative = num_digits.front() == '-';
        num_digits.remove_prefix(1);
    }
    if (!digits(num_digits))
        return fail();

    Int p{std::string(num_digits)};
    if (negative)
        p = -p;
    if (den.data() == nullptr)
        return Rational(p);

    if (!digits(den))
        return fail();
    const Int q{std::string(den)};
    if (q == 0)
        return fail();
    return Rational(p, q);
}

} // namespace kt
