#pragma once
//
// Bieberbach groups of diagonal type: Gamma = < B_i L_{b_i}, L_{Z^n} > with
// diagonal +-1 matrices B_i and translations b_i in {0, 1/2}^n.
//
// A group is stored by its coordinate layout (the character psi_j acting on
// e_j, so B_I e_j = chi_{psi_j}(f_I) e_j) and the k generator translations.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoflat/cohomology.hpp"
#include "isoflat/diagrep.hpp"

namespace isoflat {

// b with b_j = numerators[j] / 2, numerators in {0, 1}.
struct HalfVector {
  std::vector<std::uint8_t> numerators;

  HalfVector() = default;
  explicit HalfVector(std::size_t n) : numerators(n, 0) {}
  explicit HalfVector(std::vector<std::uint8_t> v);

  std::size_t size() const { return numerators.size(); }
  bool is_half(std::size_t j) const { return numerators[j] != 0; }
  void set_half(std::size_t j, bool half = true) { numerators[j] = half ? 1 : 0; }

  friend bool operator==(const HalfVector&, const HalfVector&) = default;
};

// b_I for every I (indexed by mask): the coordinatewise sum of b_i, i in I, mod 1.
std::vector<HalfVector> derive_element_translations(int k, const std::vector<HalfVector>& gens);

class BieberbachGroup {
 public:
  // `gens` holds b_1..b_k, each of length layout.size().
  BieberbachGroup(int k, CoordinateLayout layout, std::vector<HalfVector> gens);

  int rank() const { return k_; }
  int dimension() const { return static_cast<int>(layout_.size()); }
  const CoordinateLayout& layout() const { return layout_; }
  const DiagonalRep& rep() const { return rep_; }
  const std::vector<HalfVector>& generators() const { return gens_; }
  const HalfVector& translation(std::uint32_t element) const { return element_translations_[element]; }

  // Diagonal entry of B_I at coordinate j (0-based): +1 or -1.
  int sign(std::uint32_t element, std::size_t j) const;

 private:
  int k_;
  CoordinateLayout layout_;
  std::vector<HalfVector> gens_;
  std::vector<HalfVector> element_translations_;
  DiagonalRep rep_;
};

// n_{B_I, 1/2}: coordinates fixed by B_I on which b_I is 1/2.
int half_fixed_count(const BieberbachGroup& g, std::uint32_t element);

struct TorsionCheck {
  bool torsion_free = false;
  // First element I != 0 with no fixed coordinate carrying 1/2.
  std::optional<std::uint32_t> witness;
};

TorsionCheck is_torsion_free(const BieberbachGroup& g);

struct SunadaTable {
  // (n_B, n_{B,1/2}) -> number of elements, identity included as (n, 0).
  std::map<std::pair<int, int>, std::uint32_t> entries;

  // Sum over t, as a Pattern of length n+1.
  Pattern marginal(int n) const;
  friend bool operator==(const SunadaTable&, const SunadaTable&) = default;
};

SunadaTable sunada_table(const BieberbachGroup& g);

// Equal Sunada tables. Throws UsageError when the dimensions differ.
bool is_sunada_isospectral(const BieberbachGroup& a, const BieberbachGroup& b);

struct MainPair {
  BieberbachGroup gamma;
  BieberbachGroup gamma_prime;
};

// rho = 2^{k-2} chi_1 + sum_{2 in I, 1 notin I} 2 chi_I + q chi_3 with
// q = n - 3 * 2^{k-2}, and its (f_1, f_2) flip. Coordinates are laid out in
// lexicographic character order. Requires k >= 3 and q >= 1.
MainPair construct_main_pair(int k, int n);

// The eight 24-dimensional groups Gamma_1..Gamma_8 with point group Z_2^3.
DiagonalRep family24_rep(int j);

// `columns` puts halves only on the first coordinate of the blocks chi_1,
// chi_2, chi_3, chi_12; every group then has n_{B,1/2} = 1 except at n_B = 18.
// `sunada` adds one or two halves per group; then n_{B,1/2} = 2 at
// n_B in {10, 12, 18} and 1 elsewhere. Both are torsion-free.
enum class Family24Placement { sunada, columns };

BieberbachGroup construct_family24(int j, Family24Placement placement = Family24Placement::sunada);

// Deterministic backtracking over per-block half-entry placements. In the
// default mode each generator puts at most two halves in a block; `wide`
// lifts that limit. Returns nullopt when no torsion-free choice exists.
// Throws UsageError for non-faithful reps.
std::optional<BieberbachGroup> find_translations(const DiagonalRep& rep, bool wide = false);

// Column notation: one row per coordinate with the character label and the
// entry of each B_i, suffixed with "½" where b_i is 1/2.
std::string render_columns(const BieberbachGroup& g);

}  // namespace isoflat
