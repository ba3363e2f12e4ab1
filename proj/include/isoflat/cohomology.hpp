#pragma once
//
// The invariant exterior algebra Lambda*_F(Q^n) of a diagonal representation.
//
// Coordinate j carries a character psi_j; a monomial e_S is invariant iff the
// product of psi_j over j in S is trivial. Every subspace handled here is
// spanned by monomials, so spans are represented as monomial sets.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "isoflat/diagrep.hpp"

namespace isoflat {

// Largest dimension handled by the cohomology routines (counts stay in uint64).
inline constexpr int kMaxCohomologyDim = 62;
inline constexpr std::uint64_t kDefaultBasisBudget = 10'000'000;

// A subset S of {1..n}; bit j-1 is set iff j is in S.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  static Monomial from_indices(std::initializer_list<int> indices);

  constexpr std::uint64_t bits() const { return bits_; }
  int degree() const { return std::popcount(bits_); }
  std::vector<int> indices() const;

  // Concatenated indices for n <= 9 ("346"), comma-separated above ("3,4,6").
  // The empty monomial renders as "1".
  std::string to_string(int n) const;

  friend constexpr bool operator==(Monomial, Monomial) = default;
  // Lexicographic order of the ascending index lists.
  friend bool operator<(Monomial a, Monomial b);

 private:
  std::uint64_t bits_ = 0;
};

// psi_j for j = 1..n (stored 0-based).
using CoordinateLayout = std::vector<CharMask>;

// Blocks of q_I equal characters, blocks ordered by `order`.
CoordinateLayout coordinate_layout(const DiagonalRep& rep,
                                   CharacterOrder order = CharacterOrder::display);

struct GradedSpan {
  std::map<int, std::set<Monomial>> by_degree;

  std::size_t dimension(int p) const;
  std::size_t total_dimension() const;
  friend bool operator==(const GradedSpan&, const GradedSpan&) = default;
};

// (beta_0, ..., beta_n) by a dynamic program over character blocks.
std::vector<std::uint64_t> betti_numbers(const DiagonalRep& rep);

// (P_0, ..., P_n): 1, q_0, sum C(q_I, 2), then circuit sums for 3 <= p <= k+1.
std::vector<std::uint64_t> primitive_counts(const DiagonalRep& rep);

// The seven-term closed form of P_4 for k = 3.
std::uint64_t primitive_count_p4_k3(const DiagonalRep& rep);

// Invariant monomials of degree p, ascending. Throws CapabilityError when
// C(n, p) exceeds `budget`.
std::set<Monomial> invariant_basis(const CoordinateLayout& layout, int p,
                                   std::uint64_t budget = kDefaultBasisBudget);
std::set<Monomial> invariant_basis(const DiagonalRep& rep, int p,
                                   std::uint64_t budget = kDefaultBasisBudget);

// Invariant monomials of degree p with no proper nonempty invariant factor.
std::set<Monomial> primitive_basis(const CoordinateLayout& layout, int p,
                                   std::uint64_t budget = kDefaultBasisBudget);
std::set<Monomial> primitive_basis(const DiagonalRep& rep, int p,
                                   std::uint64_t budget = kDefaultBasisBudget);

// Single-degree span {degree p -> basis}.
GradedSpan invariant_span(const CoordinateLayout& layout, int p,
                          std::uint64_t budget = kDefaultBasisBudget);

// Products e_{S1} ^ e_{S2} over disjoint S1 in a, S2 in b.
GradedSpan wedge_span(const GradedSpan& a, const GradedSpan& b);

// True iff the coordinates cannot be paired into equal-character pairs, i.e.
// some multiplicity is odd. Requires even n.
bool kahler_obstruction(const DiagonalRep& rep);

// Size of a minimal generating set of the invariant ring: sum_p P_p.
std::uint64_t minimal_generator_count(const DiagonalRep& rep);

// dim of sum_{0<r<p} Lambda^r ^ Lambda^{p-r} inside Lambda^p, from monomial spans.
std::uint64_t decomposition_check(const DiagonalRep& rep, int p,
                                  std::uint64_t budget = kDefaultBasisBudget);

struct LefschetzDecomposition {
  // Irreducible sl2 dimension d -> multiplicity; zero entries omitted.
  std::map<int, std::int64_t> multiplicities;
  // Some beta_p - beta_{p-2} was negative.
  bool violation = false;
};

// m_{n/2-p+1} = beta_p - beta_{p-2} for 0 <= p <= n/2. Requires even n and a
// palindromic Betti vector.
LefschetzDecomposition lefschetz_multiplicities(const std::vector<std::uint64_t>& betti, int n);

// Multiplicities from exact ranks of L = Omega ^ - : Lambda^{p-2}_F -> Lambda^p_F,
// where Omega pairs consecutive coordinates within each block. Requires all
// q_I even and n <= 10.
LefschetzDecomposition lefschetz_by_rank(const DiagonalRep& rep);

}  // namespace isoflat
