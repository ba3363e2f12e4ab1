#pragma once
//
// Integral diagonal representations rho = sum_I q_I chi_I of Z_2^k.
//
// Multiplicities are stored in internal numeric order (index = mask bits,
// q_0 first). The bracket [q_1, q_2, q_3, q_12, ...] is the
// "display order": singletons, then pairs, then larger sets, each
// lexicographic. Text input and output always use display order.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isoflat/chargroup.hpp"

namespace isoflat {

using Multiplicity = std::uint32_t;

class DiagonalRep {
 public:
  DiagonalRep() = default;
  // `q` has 2^k entries in numeric mask order. Requires n = sum q >= 1.
  DiagonalRep(int k, std::vector<Multiplicity> q);

  // Multiplicities of the nonzero characters in display order.
  static DiagonalRep from_display(int k, std::span<const Multiplicity> display, Multiplicity q0 = 0);

  int rank() const { return k_; }
  int dimension() const { return n_; }
  std::size_t size() const { return q_.size(); }

  Multiplicity operator[](std::uint32_t mask) const { return q_[mask]; }
  Multiplicity multiplicity(CharMask chi) const;
  std::span<const Multiplicity> multiplicities() const { return q_; }

  // Nonzero characters in display order (q_0 excluded).
  std::vector<Multiplicity> display() const;
  // Characters with q_I > 0, numeric order.
  std::vector<CharMask> support() const;

  friend auto operator<=>(const DiagonalRep&, const DiagonalRep&) = default;

 private:
  int k_ = 0;
  int n_ = 0;
  std::vector<Multiplicity> q_;
};

// Nonzero characters in display order.
const std::vector<CharMask>& display_order(int k);
// All characters (chi_0 first) ordered by their index strings: 0, 1, 12, 123, 13, 2, 23, 3.
std::vector<CharMask> lexicographic_order(int k);

enum class CharacterOrder { display, lexicographic };

// All characters with chi_0 first, in the requested order.
std::vector<CharMask> character_order(int k, CharacterOrder order);

// Histogram (c_0, ..., c_n) of fixed-space dimensions over the group.
struct Pattern {
  std::vector<std::uint32_t> counts;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

// n_B for the element f: sum of q_J over J with chi_J(f) = +1.
int fixed_dim(const DiagonalRep& rep, CharMask f);
// n_B for every element, indexed by mask.
std::vector<int> fixed_dims(const DiagonalRep& rep);

Pattern pattern(const DiagonalRep& rep);

bool is_faithful(const DiagonalRep& rep);
bool contains_minus_identity(const DiagonalRep& rep);
bool is_orientable(const DiagonalRep& rep);

enum class KahlerClass { none, kahler, hyperkahler };
KahlerClass kahler_class(const DiagonalRep& rep);
std::string to_string(KahlerClass c);

// The representation with multiplicities relabelled by `a`: q'[a(I)] = q[I].
DiagonalRep image(const DiagonalRep& rep, const DualAutomorphism& a);

// True iff some automorphism of the character group carries one
// multiplicity vector onto the other. Works for any k (backtracking search).
bool are_equivalent(const DiagonalRep& a, const DiagonalRep& b);

// Lexicographically smallest multiplicity vector (numeric order) in the
// orbit. k <= 5.
DiagonalRep canonical_form(const DiagonalRep& rep);
// Equivalent to rep == canonical_form(rep) but exits on the first smaller image.
bool is_canonical(const DiagonalRep& rep);
// Orbit member whose display-order vector is lexicographically largest; this
// is the conventional table representative. k <= 5.
DiagonalRep display_representative(const DiagonalRep& rep);

namespace detail {
// is_canonical on a raw numeric-order vector of 2^k multiplicities.
bool is_orbit_minimal(int k, std::span<const Multiplicity> q);
}  // namespace detail

// "3,1,1,1,0,1,0" in display order; with_q0 expects q_0 as the first entry.
DiagonalRep parse_rep(std::string_view text, int k, bool with_q0 = false);
std::string format_rep(const DiagonalRep& rep, bool with_q0 = false);
// Bracket form, e.g. "[3,1,1,1,0,1,0]".
std::string format_bracket(const DiagonalRep& rep);

}  // namespace isoflat
