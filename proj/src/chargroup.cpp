#include "isoflat/chargroup.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include "isoflat/errors.hpp"

namespace isoflat {

CharMask::CharMask(std::uint32_t bits, int k) : bits_(bits), k_(k) {
  if (k < 1 || k > kMaxRank)
    throw UsageError("rank k=" + std::to_string(k) + " outside 1.." + std::to_string(kMaxRank));
  if (bits >= (1u << k))
    throw UsageError("mask " + std::to_string(bits) + " does not fit in k=" + std::to_string(k));
}

CharMask CharMask::from_indices(std::initializer_list<int> indices, int k) {
  std::uint32_t bits = 0;
  for (int i : indices) {
    if (i < 1 || i > k) throw UsageError("character index " + std::to_string(i) + " outside 1..k");
    bits |= 1u << (i - 1);
  }
  return CharMask(bits, k);
}

std::string CharMask::label() const {
  if (bits_ == 0) return "0";
  std::string s;
  for (int i = 1; i <= k_; ++i)
    if (contains(i)) s += std::to_string(i);
  return s;
}

int evaluate(CharMask chi, CharMask f) {
  if (chi.rank() != f.rank()) throw UsageError("evaluate: characters of different rank");
  return (std::popcount(chi.bits() & f.bits()) & 1) ? -1 : 1;
}

CharMask product(int k, std::span<const CharMask> chis) {
  std::uint32_t acc = 0;
  for (CharMask c : chis) {
    if (c.rank() != k) throw UsageError("product: characters of different rank");
    acc ^= c.bits();
  }
  return CharMask(acc, k);
}

CharMask operator*(CharMask a, CharMask b) {
  if (a.rank() != b.rank()) throw UsageError("product: characters of different rank");
  return CharMask(a.bits() ^ b.bits(), a.rank());
}

std::vector<Circuit> circuits(int k, int p) {
  if (k < 1 || k > kMaxRank) throw UsageError("circuits: rank out of range");
  if (p < 2 || p > k + 1)
    throw UsageError("circuits: degree p=" + std::to_string(p) + " outside 2..k+1");
  std::vector<Circuit> out;
  const std::uint32_t top = 1u << k;
  if (p == 2) {
    for (std::uint32_t m = 1; m < top; ++m) out.push_back({{CharMask(m, k)}, true});
    return out;
  }
  std::vector<std::uint32_t> support;
  for (std::uint32_t m = 1; m < top; ++m) support.push_back(m);
  for_each_circuit(support, p, [&](std::span<const std::uint32_t> members) {
    Circuit c;
    for (std::uint32_t m : members) c.members.emplace_back(m, k);
    out.push_back(std::move(c));
  });
  return out;
}

// ---------------------------------------------------------------------------

DualAutomorphism::DualAutomorphism(std::vector<std::uint32_t> columns) : columns_(std::move(columns)) {
  detail::Gf2Basis basis;
  const int k = rank();
  for (std::uint32_t c : columns_) {
    if (k > kMaxRank || c >= (1u << k) || basis.insert(c) < 0)
      throw UsageError("automorphism columns are not an invertible matrix");
  }
}

std::uint64_t automorphism_count(int k) {
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= (std::uint64_t{1} << k) - (std::uint64_t{1} << i);
  return count;
}

namespace {

void check_exhaustive(int k) {
  if (k < 1) throw UsageError("automorphisms: rank must be at least 1");
  if (k > kMaxExhaustiveRank)
    throw CapabilityError("automorphism iteration is limited to k <= " +
                          std::to_string(kMaxExhaustiveRank) +
                          "; use the pairwise equivalence test (are_equivalent) instead");
}

// Bitmap of the span of `span_bits` extended by v (masks are < 32 for k <= 5).
std::uint32_t extend_span(std::uint32_t span_bits, std::uint32_t v) {
  std::uint32_t out = span_bits;
  for (std::uint32_t s = 0; s < 32; ++s)
    if ((span_bits >> s) & 1u) out |= 1u << (s ^ v);
  return out;
}

}  // namespace

AutomorphismRange::AutomorphismRange(int k) : k_(k) { check_exhaustive(k); }

AutomorphismRange::iterator::iterator(int k)
    : k_(k), done_(false), columns_(static_cast<std::size_t>(k), 0), spans_(static_cast<std::size_t>(k) + 1, 0) {
  spans_[0] = 1u;  // span of nothing = {0}
  for (int level = 0; level < k_; ++level) {
    columns_[level] = 0;
    if (!advance(level)) {
      done_ = true;
      return;
    }
  }
  current_ = DualAutomorphism(columns_);
}

// Moves columns_[level] to the next value outside the span of the previous
// columns. Returns false when exhausted.
bool AutomorphismRange::iterator::advance(int level) {
  const std::uint32_t top = 1u << k_;
  for (std::uint32_t v = columns_[level] + 1; v < top; ++v) {
    if ((spans_[level] >> v) & 1u) continue;
    columns_[level] = v;
    spans_[level + 1] = extend_span(spans_[level], v);
    return true;
  }
  return false;
}

AutomorphismRange::iterator& AutomorphismRange::iterator::operator++() {
  int level = k_ - 1;
  while (level >= 0 && !advance(level)) --level;
  if (level < 0) {
    done_ = true;
    return *this;
  }
  for (int l = level + 1; l < k_; ++l) {
    columns_[l] = 0;
    advance(l);
  }
  current_ = DualAutomorphism(columns_);
  return *this;
}

std::span<const std::uint8_t> permutation_table(int k) {
  if (k < 1 || k > 4) throw CapabilityError("permutation tables are cached for k <= 4 only");
  static std::array<std::vector<std::uint8_t>, 5> tables;
  static std::array<std::once_flag, 5> flags;
  std::call_once(flags[k], [k] {
    const std::uint32_t size = 1u << k;
    std::vector<std::vector<std::uint8_t>> perms;
    for (const DualAutomorphism& a : AutomorphismRange(k)) {
      std::vector<std::uint8_t> perm(size);
      for (std::uint32_t m = 0; m < size; ++m) perm[m] = static_cast<std::uint8_t>(a.apply(m));
      perms.push_back(std::move(perm));
    }
    // Fixed-seed shuffle; callers must not depend on the order.
    std::mt19937 rng(20240617u);
    std::shuffle(perms.begin(), perms.end(), rng);
    auto& flat = tables[k];
    flat.reserve(perms.size() * size);
    for (const auto& p : perms) flat.insert(flat.end(), p.begin(), p.end());
  });
  return tables[k];
}

}  // namespace isoflat
