#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace symseek {

// Exact rational scalar. gmp keeps the invariants we need:
// gcd(num, den) = 1, den > 0, zero is 0/1.
using Rat = mpq_class;
using Int = mpz_class;

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool rat_is_one(const Rat& r) { return r == 1; }

// Parses "3", "-7", "2/5", "-12/35". Throws std::invalid_argument on junk.
Rat rat_from_string(const std::string& s);

// "n" for integers, "n/d" otherwise.
std::string rat_to_string(const Rat& r);

// Exact square root of a non-negative perfect square, nullopt otherwise.
std::optional<Rat> rat_sqrt(const Rat& r);

}  // namespace symseek
