#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "genericlab/errors.hpp"

namespace genericlab {

// All distance and weight arithmetic is exact; decimals appear only at the
// output boundary.
using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(long num, long den = 1);

// 2^k for any integer k (negative allowed).
Rat pow2(long k);

// Accepts "p/q" or "p" with optional sign; result is canonical.
Rat parse_rat(const std::string& text);

// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rat& q);

// Decimal rendering with `sig` significant digits (round half up).
// Zero renders as "0.0"; the rational form stays authoritative.
std::string rat_decimal(const Rat& q, int sig = 12);

// Smallest integer >= q.
Int rat_ceil(const Rat& q);

std::uint64_t rat_ceil_u64(const Rat& q);

} // namespace genericlab
