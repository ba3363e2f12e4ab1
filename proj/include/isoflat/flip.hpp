#pragma once
//
// The flip of a diagonal representation with respect to a pair of distinct
// nonzero group elements (g1, g2). Characters split into four sign classes
// (chi(g1), chi(g2)); the flip moves u copies from the (+,-) class to the
// (-,+) class (u may be negative), which swaps n_{g1} and n_{g2} and leaves
// every other fixed dimension unchanged.

#include <optional>

#include <boost/rational.hpp>

#include "isoflat/diagrep.hpp"

namespace isoflat {

using Rational = boost::rational<std::int64_t>;

struct FlipSpec {
  CharMask first;
  CharMask second;

  // (f_1, f_2) for rank k >= 2.
  static FlipSpec standard(int k);
};

// Throws UsageError unless both elements are nonzero, distinct and of rank k.
void validate(const FlipSpec& spec, int k);

// delta_I in {-1, 0, +1}: +1 when chi_I(g1) = -1 and chi_I(g2) = +1,
// -1 when chi_I(g1) = +1 and chi_I(g2) = -1.
int flip_sign(std::uint32_t chi, const FlipSpec& spec);

// u = 2^{-(k-2)} (sum_{delta=-1} q - sum_{delta=+1} q).
Rational flip_shift(const DiagonalRep& rep, const FlipSpec& spec);

enum class FlipFailure { non_integer_shift, negative_multiplicity };
std::string to_string(FlipFailure f);

struct FlipOutcome {
  Rational shift;
  std::optional<DiagonalRep> flipped;
  std::optional<FlipFailure> failure;

  bool applicable() const { return flipped.has_value(); }
};

// q'_I = q_I + u delta_I when u is integral and no multiplicity goes negative.
FlipOutcome apply_flip(const DiagonalRep& rep, const FlipSpec& spec);

// Equal patterns. Throws UsageError on rank or dimension mismatch.
bool verify_almost_conjugate(const DiagonalRep& a, const DiagonalRep& b);

}  // namespace isoflat
