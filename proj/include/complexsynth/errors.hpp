#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace complexsynth {

// Malformed arguments: symbols outside the alphabet, w > q, length mismatches.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or table would exceed the caller's budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree did not (oracle vs formula, encode/decode, ...).
class VerificationFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Caps for exhaustive enumerations and DP tables.
///
/// `max_enum` bounds the number of strands/sequences an oracle may generate,
/// `max_states` bounds the cell count of a DP table or BFS frontier.
/// Defaults can be overridden with COMPLEXSYNTH_MAX_ENUM and
/// COMPLEXSYNTH_MAX_STATES.
struct Budget {
  std::uint64_t max_enum = 10'000'000;
  std::uint64_t max_states = 50'000'000;

  static Budget from_env() {
    Budget b;
    if (const char *e = std::getenv("COMPLEXSYNTH_MAX_ENUM"))
      b.max_enum = std::strtoull(e, nullptr, 10);
    if (const char *e = std::getenv("COMPLEXSYNTH_MAX_STATES"))
      b.max_states = std::strtoull(e, nullptr, 10);
    return b;
  }
};

namespace detail {

inline void require(bool cond, const std::string &msg) {
  if (!cond)
    throw InvalidInput(msg);
}

inline void check_budget(long double needed, std::uint64_t cap,
                         const std::string &what) {
  if (needed > static_cast<long double>(cap))
    throw BudgetExceeded(what + " needs " + std::to_string(static_cast<double>(needed)) +
                         " > budget " + std::to_string(cap));
}

} // namespace detail
} // namespace complexsynth
