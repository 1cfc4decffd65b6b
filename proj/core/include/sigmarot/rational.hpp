#pragma once

// Exact rational arithmetic used throughout the library.  All geometry and
// all dynamical computations are done over Q; no floating point is involved
// in any result that is reported as exact.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace sigmarot {

using Rat = mpq_class;
using Int = long;

// Construct num/den in canonical (lowest-terms) form.
Rat rat(long num, long den = 1);

// Exact floor of a rational, as a machine integer.  Throws std::overflow_error
// if the result does not fit in Int.
Int floor_int(const Rat& x);

// Fractional part x - floor(x), in [0, 1).
Rat frac(const Rat& x);

Rat rat_min(const Rat& a, const Rat& b);
Rat rat_max(const Rat& a, const Rat& b);
Rat rat_abs(const Rat& a);
int rat_sign(const Rat& a);

// Machine form: always "num/den" with positive denominator, lowest terms,
// sign on the numerator (e.g. "-3/4", "0/1", "5/1").
std::string rat_str(const Rat& x);

// Human form: "num" when den == 1, otherwise "num/den".
std::string rat_pretty(const Rat& x);

// Accepts "p" or "p/q" with optional leading sign; returns nullopt on any
// malformed input (including q == 0).
std::optional<Rat> parse_rat(const std::string& s);

}  // namespace sigmarot
