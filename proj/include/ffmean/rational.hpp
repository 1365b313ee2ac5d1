#pragma once

#include <gmpxx.h>

#include <string>

namespace ffmean {

using Rational = mpq_class;
using BigInt = mpz_class;

// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);

}  // namespace ffmean
