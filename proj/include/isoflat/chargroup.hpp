#pragma once
//
// Characters of Z_2^k encoded as k-bit masks.
//
// Bit i-1 of a mask is set iff i belongs to the index set I of the character
// chi_I. The same encoding doubles as the group element f_I = prod_{i in I} f_i,
// so evaluate(chi, f) = (-1)^{|chi AND f|}.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace isoflat {

inline constexpr int kMaxRank = 16;
// Largest rank for which the full automorphism group is iterated.
inline constexpr int kMaxExhaustiveRank = 5;

class CharMask {
 public:
  constexpr CharMask() = default;
  CharMask(std::uint32_t bits, int k);

  static CharMask trivial(int k) { return CharMask(0, k); }
  // 1-based indices, e.g. from_indices({1, 3}, 3) is chi_13.
  static CharMask from_indices(std::initializer_list<int> indices, int k);

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int rank() const { return k_; }
  constexpr bool is_trivial() const { return bits_ == 0; }
  constexpr bool contains(int index) const { return (bits_ >> (index - 1)) & 1u; }
  int weight() const { return std::popcount(bits_); }

  // "0" for the trivial character, otherwise the concatenated indices ("123").
  std::string label() const;

  friend constexpr auto operator<=>(const CharMask&, const CharMask&) = default;

 private:
  std::uint32_t bits_ = 0;
  int k_ = 0;
};

// (-1)^{#(chi AND f)}; throws UsageError when the ranks differ.
int evaluate(CharMask chi, CharMask f);

// Product of characters, i.e. XOR of masks. The empty product is chi_0.
CharMask product(int k, std::span<const CharMask> chis);
CharMask operator*(CharMask a, CharMask b);

// A minimal dependent set of nonzero characters (an element of A_p).
// Degree-2 circuits {I, I} are stored once with `doubled` set.
struct Circuit {
  std::vector<CharMask> members;
  bool doubled = false;

  int degree() const { return doubled ? 2 : static_cast<int>(members.size()); }
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// All degree-p circuits among the nonzero characters of Z_2^k, in
// lexicographic order of their ascending member lists. 2 <= p <= k+1.
std::vector<Circuit> circuits(int k, int p);

// Visits every degree-p (p >= 3) circuit whose members all lie in `support`
// (raw masks, ascending). The visitor receives the members in ascending order.
template <class Visitor>
void for_each_circuit(std::span<const std::uint32_t> support, int p, Visitor&& visit);

// ---------------------------------------------------------------------------
// Automorphisms of the character group, i.e. invertible k x k matrices over
// GF(2), given by the images of the singleton characters.

class DualAutomorphism {
 public:
  DualAutomorphism() = default;
  explicit DualAutomorphism(std::vector<std::uint32_t> columns);

  int rank() const { return static_cast<int>(columns_.size()); }
  const std::vector<std::uint32_t>& columns() const { return columns_; }

  std::uint32_t apply(std::uint32_t mask) const {
    std::uint32_t image = 0;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
      if (mask & 1u) image ^= columns_[i];
    return image;
  }
  CharMask operator()(CharMask chi) const { return CharMask(apply(chi.bits()), rank()); }

 private:
  std::vector<std::uint32_t> columns_;
};

// |GL_k(F_2)| = prod_{i<k} (2^k - 2^i).
std::uint64_t automorphism_count(int k);

// Forward range over all automorphisms for k <= kMaxExhaustiveRank, in
// lexicographic order of the column tuple.
class AutomorphismRange {
 public:
  explicit AutomorphismRange(int k);

  class iterator {
   public:
    using value_type = DualAutomorphism;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    const DualAutomorphism& operator*() const { return current_; }
    const DualAutomorphism* operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    friend class AutomorphismRange;
    explicit iterator(int k);
    bool advance(int level);

    int k_ = 0;
    bool done_ = true;
    std::vector<std::uint32_t> columns_;
    std::vector<std::uint32_t> spans_;  // bitmap of span(columns_[0..i)) per level
    DualAutomorphism current_;
  };

  iterator begin() const { return iterator(k_); }
  iterator end() const { return iterator(); }

 private:
  int k_;
};

inline AutomorphismRange automorphisms(int k) { return AutomorphismRange(k); }

// Flat table of every automorphism as a permutation of the 2^k masks:
// entry [a * 2^k + m] is the image of m under automorphism a. Cached per k,
// available for k <= 4. The order is a fixed pseudo-random shuffle.
std::span<const std::uint8_t> permutation_table(int k);

// ---------------------------------------------------------------------------

namespace detail {

// Incremental GF(2) basis keyed by leading bit.
struct Gf2Basis {
  std::uint32_t rows[32] = {};

  std::uint32_t reduce(std::uint32_t v) const {
    while (v != 0) {
      int top = 31 - std::countl_zero(v);
      if (rows[top] == 0) return v;
      v ^= rows[top];
    }
    return 0;
  }
  // Returns the leading bit used, or -1 if v was dependent.
  int insert(std::uint32_t v) {
    v = reduce(v);
    if (v == 0) return -1;
    int top = 31 - std::countl_zero(v);
    rows[top] = v;
    return top;
  }
};

template <class Visitor>
void circuit_dfs(std::span<const std::uint32_t> support, int remaining, std::size_t start,
                 Gf2Basis& basis, std::uint32_t acc, std::vector<std::uint32_t>& chosen,
                 Visitor& visit) {
  if (remaining == 0) {
    // Close the circuit with the product of the chosen members; it must be a
    // supported character larger than everything chosen so far.
    const std::uint32_t last = acc;
    if (last <= chosen.back()) return;
    auto it = std::lower_bound(support.begin() + start, support.end(), last);
    if (it == support.end() || *it != last) return;
    chosen.push_back(last);
    visit(std::span<const std::uint32_t>(chosen));
    chosen.pop_back();
    return;
  }
  for (std::size_t i = start; i < support.size(); ++i) {
    const std::uint32_t v = support[i];
    int slot = basis.insert(v);
    if (slot < 0) continue;
    chosen.push_back(v);
    circuit_dfs(support, remaining - 1, i + 1, basis, acc ^ v, chosen, visit);
    chosen.pop_back();
    basis.rows[slot] = 0;
  }
}

}  // namespace detail

template <class Visitor>
void for_each_circuit(std::span<const std::uint32_t> support, int p, Visitor&& visit) {
  if (p < 3 || support.empty()) return;
  detail::Gf2Basis basis;
  std::vector<std::uint32_t> chosen;
  chosen.reserve(static_cast<std::size_t>(p));
  detail::circuit_dfs(support, p - 1, 0, basis, 0u, chosen, visit);
}

}  // namespace isoflat
