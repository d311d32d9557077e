#pragma once
// Abstract operation counter, in d^2-sized units: one unit per matrix-vector
// product, rank-1 factor update, or inner-solver iteration; data passes of n
// rows count ceil(n/d). Thread-local so concurrent episodes do not mix.

#include <cstdint>

namespace logb::ops {

std::uint64_t counter();
void add(std::uint64_t n);
void reset();

}  // namespace logb::ops
