#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace projglue {

using BigInt = mpz_class;
// mpq_class is kept canonical after every arithmetic operation; values built
// from a numerator/denominator pair must go through make_rational.
using Rational = mpq_class;

Rational make_rational(const BigInt& num, const BigInt& den);

// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

bool is_perfect_square(const BigInt& n);

// sqrt(q) when q is the square of a rational, else nullopt.
std::optional<Rational> rational_sqrt(const Rational& q);

std::string to_string(const BigInt& n);
std::string to_string(const Rational& q);

long long to_int64(const BigInt& n);

}  // namespace projglue
