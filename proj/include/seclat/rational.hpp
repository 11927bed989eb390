#ifndef SECLAT_RATIONAL_HPP
#define SECLAT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace seclat {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Always "p/q", including "n/1" for integers.
std::string fraction_string(const Rational& r);

bool is_integer(const Rational& r);

/// Converts to int64, throwing InvalidArgument if the value is not an integer
/// or does not fit.
std::int64_t to_int64(const Rational& r);
std::int64_t to_int64(const BigInt& z);

/// Exact square root of a non-negative rational when it is a perfect square.
bool rational_sqrt(const Rational& r, Rational& root);

}  // namespace seclat

#endif
