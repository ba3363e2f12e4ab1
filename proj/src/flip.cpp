#include "isoflat/flip.hpp"

#include "isoflat/errors.hpp"

namespace isoflat {

FlipSpec FlipSpec::standard(int k) {
  if (k < 2) throw UsageError("a flip needs rank k >= 2");
  return {CharMask(1, k), CharMask(2, k)};
}

void validate(const FlipSpec& spec, int k) {
  if (spec.first.rank() != k || spec.second.rank() != k)
    throw UsageError("flip pair rank does not match representation");
  if (spec.first.is_trivial() || spec.second.is_trivial())
    throw UsageError("flip pair elements must be nonzero");
  if (spec.first == spec.second) throw UsageError("flip pair elements must be distinct");
}

int flip_sign(std::uint32_t chi, const FlipSpec& spec) {
  const bool neg1 = std::popcount(chi & spec.first.bits()) & 1;
  const bool neg2 = std::popcount(chi & spec.second.bits()) & 1;
  if (neg1 == neg2) return 0;
  return neg1 ? 1 : -1;
}

Rational flip_shift(const DiagonalRep& rep, const FlipSpec& spec) {
  validate(spec, rep.rank());
  std::int64_t diff = 0;
  for (std::uint32_t m = 0; m < rep.size(); ++m) diff -= flip_sign(m, spec) * std::int64_t{rep[m]};
  return Rational(diff, std::int64_t{1} << (rep.rank() - 2));
}

std::string to_string(FlipFailure f) {
  return f == FlipFailure::non_integer_shift ? "non-integer shift" : "negative multiplicity";
}

FlipOutcome apply_flip(const DiagonalRep& rep, const FlipSpec& spec) {
  FlipOutcome out{flip_shift(rep, spec), std::nullopt, std::nullopt};
  if (out.shift.denominator() != 1) {
    out.failure = FlipFailure::non_integer_shift;
    return out;
  }
  const std::int64_t u = out.shift.numerator();
  std::vector<Multiplicity> q(rep.size());
  for (std::uint32_t m = 0; m < rep.size(); ++m) {
    const std::int64_t v = std::int64_t{rep[m]} + u * flip_sign(m, spec);
    if (v < 0) {
      out.failure = FlipFailure::negative_multiplicity;
      return out;
    }
    q[m] = static_cast<Multiplicity>(v);
  }
  out.flipped = DiagonalRep(rep.rank(), std::move(q));
  return out;
}

bool verify_almost_conjugate(const DiagonalRep& a, const DiagonalRep& b) {
  if (a.rank() != b.rank()) throw UsageError("representations have different rank");
  if (a.dimension() != b.dimension())
    throw UsageError("representations have different dimension (" + std::to_string(a.dimension()) +
                     " vs " + std::to_string(b.dimension()) + ")");
  return pattern(a) == pattern(b);
}

}  // namespace isoflat
