// rational.hpp -- exact rational and big-integer helpers on top of GMP.
#pragma once

#include <gmpxx.h>

#include <string>

namespace anisolat {

using Int = mpz_class;
using Rat = mpq_class;

// num/den in lowest terms; throws std::invalid_argument on zero denominator.
Rat make_rat(const Int& num, const Int& den);

// Parses "p", "-p", "p/q" with optional surrounding whitespace.
Rat parse_rat(const std::string& text);

// Canonical text form: "p" or "p/q" with q > 1.
std::string rat_to_string(const Rat& x);

Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);

// Smallest integer s with s*s >= v.  Requires v >= 0.
Int ceil_isqrt(const Int& v);

// A rational u >= 0 with u*u >= v and u - sqrt(v) <= 2^-16.  Requires v >= 0.
Rat ceil_sqrt(const Rat& v);

double rat_to_double(const Rat& x);

// x^e for integer e (e < 0 requires x != 0).
Rat rat_pow(const Rat& x, long e);

}  // namespace anisolat
