#include "logbandit/ops.hpp"

namespace logb::ops {

namespace {
thread_local std::uint64_t g_counter = 0;
}

std::uint64_t counter() { return g_counter; }
void add(std::uint64_t n) { g_counter += n; }
void reset() { g_counter = 0; }

}  // namespace logb::ops
