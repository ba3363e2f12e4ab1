#pragma once

#include <stdexcept>

namespace isoflat {

// Arguments outside an operation's contract (bad rank, mismatched sizes,
// malformed input text).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The request is valid but beyond what the exhaustive routines handle
// (automorphism scans for k > 5, enumeration budgets).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace isoflat
