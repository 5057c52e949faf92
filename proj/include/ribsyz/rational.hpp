#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ribsyz {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Builds num/den in canonical (lowest-terms, positive denominator) form.
inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "p/q" in lowest terms, or "p" for integers.
inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline std::string to_string(const Integer& z)
{
    return z.get_str();
}

inline Rational parse_rational(std::string_view text)
{
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0) {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    }
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q)
{
    return sgn(q) == 0;
}

} // namespace ribsyz
