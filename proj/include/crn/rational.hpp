#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace crn {

/// Exact rational scalar. GMP keeps values canonical (reduced, positive
/// denominator) under arithmetic.
using Rat = mpq_class;

using RatVec = std::vector<Rat>;
using IntVec = std::vector<long>;

/// Parses "p", "p/q" or a decimal like "0.25" into an exact rational.
/// Returns nullopt on malformed input or q == 0.
std::optional<Rat> rat_parse(const std::string& text);

/// Renders as "p" or "p/q" with q > 1.
std::string rat_str(const Rat& q);

std::string ratvec_str(const RatVec& v);

RatVec to_ratvec(const IntVec& v);
std::vector<double> to_doubles(const RatVec& v);

/// Scales v by a positive rational so its largest absolute entry is 1.
/// The zero vector is returned unchanged.
RatVec normalize_max_abs(RatVec v);

}  // namespace crn
