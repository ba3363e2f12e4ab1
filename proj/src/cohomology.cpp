#include "isoflat/cohomology.hpp"

#include <numeric>

#include "isoflat/errors.hpp"

namespace isoflat {

namespace {

void check_dimension(int n) {
  if (n > kMaxCohomologyDim)
    throw CapabilityError("cohomology is limited to n <= " + std::to_string(kMaxCohomologyDim));
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

void check_budget(int n, int p, std::uint64_t budget) {
  // C(n, p) can exceed 64 bits only far beyond any budget; compare in long double.
  long double c = 1;
  for (int i = 1; i <= std::min(p, n - p); ++i) c = c * (n - std::min(p, n - p) + i) / i;
  if (c > static_cast<long double>(budget))
    throw CapabilityError("basis enumeration for degree " + std::to_string(p) + " of n=" + std::to_string(n) +
                          " exceeds the budget of " + std::to_string(budget) +
                          " candidates; use the count-only functions");
}

template <class Accept>
std::set<Monomial> enumerate_monomials(const CoordinateLayout& layout, int p, std::uint64_t budget,
                                       Accept&& accept) {
  const int n = static_cast<int>(layout.size());
  check_dimension(n);
  std::set<Monomial> out;
  if (p < 0 || p > n) return out;
  check_budget(n, p, budget);
  std::vector<int> idx(static_cast<std::size_t>(p));
  // Depth-first over increasing index tuples yields lexicographic order.
  auto rec = [&](auto&& self, int depth, int start, std::uint32_t acc, std::uint64_t bits) -> void {
    if (depth == p) {
      if (acc == 0 && accept(idx)) out.insert(out.end(), Monomial(bits));
      return;
    }
    for (int j = start; j <= n - (p - depth); ++j) {
      idx[static_cast<std::size_t>(depth)] = j;
      self(self, depth + 1, j + 1, acc ^ layout[static_cast<std::size_t>(j)].bits(), bits | (std::uint64_t{1} << j));
    }
  };
  rec(rec, 0, 0, 0u, 0);
  return out;
}

}  // namespace

Monomial Monomial::from_indices(std::initializer_list<int> indices) {
  std::uint64_t bits = 0;
  for (int i : indices) {
    if (i < 1 || i > 64) throw UsageError("monomial index out of range");
    bits |= std::uint64_t{1} << (i - 1);
  }
  return Monomial(bits);
}

std::vector<int> Monomial::indices() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string Monomial::to_string(int n) const {
  if (bits_ == 0) return "1";
  std::string s;
  for (int i : indices()) {
    if (n > 9 && !s.empty()) s += ',';
    s += std::to_string(i);
  }
  return s;
}

bool operator<(Monomial a, Monomial b) {
  const std::uint64_t diff = a.bits_ ^ b.bits_;
  if (diff == 0) return false;
  const int d = std::countr_zero(diff);
  // Index lists agree below d. The list holding d is smaller unless the other
  // list has already ended.
  if ((a.bits_ >> d) & 1u) return (b.bits_ >> d) != 0;
  return (a.bits_ >> d) == 0;
}

CoordinateLayout coordinate_layout(const DiagonalRep& rep, CharacterOrder order) {
  CoordinateLayout layout;
  for (CharMask c : character_order(rep.rank(), order))
    layout.insert(layout.end(), rep[c.bits()], c);
  return layout;
}

std::size_t GradedSpan::dimension(int p) const {
  auto it = by_degree.find(p);
  return it == by_degree.end() ? 0 : it->second.size();
}

std::size_t GradedSpan::total_dimension() const {
  std::size_t total = 0;
  for (const auto& [p, basis] : by_degree) total += basis.size();
  return total;
}

std::vector<std::uint64_t> betti_numbers(const DiagonalRep& rep) {
  const int n = rep.dimension();
  check_dimension(n);
  const std::size_t chars = rep.size();
  // dp[d * chars + c]: number of degree-d subsets of the blocks seen so far
  // whose character product is c.
  std::vector<std::uint64_t> dp((static_cast<std::size_t>(n) + 1) * chars, 0), next;
  dp[0] = 1;
  int seen = 0;
  for (std::uint32_t chi = 0; chi < chars; ++chi) {
    const int q = static_cast<int>(rep[chi]);
    if (q == 0) continue;
    next.assign(dp.size(), 0);
    for (int d = 0; d <= seen; ++d)
      for (std::uint32_t c = 0; c < chars; ++c) {
        const std::uint64_t ways = dp[static_cast<std::size_t>(d) * chars + c];
        if (ways == 0) continue;
        for (int t = 0; t <= q; ++t)
          next[static_cast<std::size_t>(d + t) * chars + (t % 2 ? c ^ chi : c)] += ways * binomial(q, t);
      }
    dp.swap(next);
    seen += q;
  }
  std::vector<std::uint64_t> betti(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) betti[static_cast<std::size_t>(d)] = dp[static_cast<std::size_t>(d) * chars];
  return betti;
}

std::vector<std::uint64_t> primitive_counts(const DiagonalRep& rep) {
  const int n = rep.dimension();
  check_dimension(n);
  std::vector<std::uint64_t> prim(static_cast<std::size_t>(n) + 1, 0);
  prim[0] = 1;
  if (n >= 1) prim[1] = rep[0];
  std::vector<std::uint32_t> support;
  for (std::uint32_t m = 1; m < rep.size(); ++m) {
    if (rep[m] == 0) continue;
    support.push_back(m);
    if (n >= 2) prim[2] += binomial(static_cast<int>(rep[m]), 2);
  }
  for (int p = 3; p <= std::min(n, rep.rank() + 1); ++p)
    for_each_circuit(support, p, [&](std::span<const std::uint32_t> members) {
      std::uint64_t term = 1;
      for (std::uint32_t m : members) term *= rep[m];
      prim[static_cast<std::size_t>(p)] += term;
    });
  return prim;
}

std::uint64_t primitive_count_p4_k3(const DiagonalRep& rep) {
  if (rep.rank() != 3) throw UsageError("the closed form for P_4 applies to k = 3 only");
  const std::uint64_t q1 = rep[0b001], q2 = rep[0b010], q3 = rep[0b100], q12 = rep[0b011],
                      q13 = rep[0b101], q23 = rep[0b110], q123 = rep[0b111];
  return q1 * q2 * q3 * q123 + q1 * q2 * q13 * q23 + q1 * q3 * q12 * q23 + q2 * q3 * q12 * q13 +
         q1 * q12 * q13 * q123 + q2 * q12 * q23 * q123 + q3 * q13 * q23 * q123;
}

std::set<Monomial> invariant_basis(const CoordinateLayout& layout, int p, std::uint64_t budget) {
  return enumerate_monomials(layout, p, budget, [](const std::vector<int>&) { return true; });
}

std::set<Monomial> invariant_basis(const DiagonalRep& rep, int p, std::uint64_t budget) {
  return invariant_basis(coordinate_layout(rep), p, budget);
}

std::set<Monomial> primitive_basis(const CoordinateLayout& layout, int p, std::uint64_t budget) {
  if (p == 0) return {Monomial()};
  // A trivial-product tuple is minimal iff its first p-1 characters are
  // linearly independent (then the full tuple is the only dependency).
  return enumerate_monomials(layout, p, budget, [&layout](const std::vector<int>& idx) {
    detail::Gf2Basis basis;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (basis.insert(layout[static_cast<std::size_t>(idx[i])].bits()) < 0) return false;
    return true;
  });
}

std::set<Monomial> primitive_basis(const DiagonalRep& rep, int p, std::uint64_t budget) {
  return primitive_basis(coordinate_layout(rep), p, budget);
}

GradedSpan invariant_span(const CoordinateLayout& layout, int p, std::uint64_t budget) {
  GradedSpan span;
  span.by_degree[p] = invariant_basis(layout, p, budget);
  return span;
}

GradedSpan wedge_span(const GradedSpan& a, const GradedSpan& b) {
  GradedSpan out;
  for (const auto& [pa, sa] : a.by_degree)
    for (const auto& [pb, sb] : b.by_degree) {
      auto& target = out.by_degree[pa + pb];
      for (Monomial x : sa)
        for (Monomial y : sb)
          if ((x.bits() & y.bits()) == 0) target.insert(Monomial(x.bits() | y.bits()));
    }
  for (auto it = out.by_degree.begin(); it != out.by_degree.end();)
    it = it->second.empty() ? out.by_degree.erase(it) : std::next(it);
  return out;
}

bool kahler_obstruction(const DiagonalRep& rep) {
  if (rep.dimension() % 2 != 0)
    throw UsageError("Kahler obstruction needs even dimension, got n=" + std::to_string(rep.dimension()));
  const auto q = rep.multiplicities();
  return std::any_of(q.begin(), q.end(), [](Multiplicity v) { return v % 2 != 0; });
}

std::uint64_t minimal_generator_count(const DiagonalRep& rep) {
  const auto prim = primitive_counts(rep);
  return std::accumulate(prim.begin(), prim.end(), std::uint64_t{0});
}

std::uint64_t decomposition_check(const DiagonalRep& rep, int p, std::uint64_t budget) {
  const auto layout = coordinate_layout(rep);
  std::set<Monomial> decomposable;
  for (int r = 1; r < p; ++r) {
    const GradedSpan w = wedge_span(invariant_span(layout, r, budget), invariant_span(layout, p - r, budget));
    auto it = w.by_degree.find(p);
    if (it != w.by_degree.end()) decomposable.insert(it->second.begin(), it->second.end());
  }
  return decomposable.size();
}

LefschetzDecomposition lefschetz_multiplicities(const std::vector<std::uint64_t>& betti, int n) {
  if (n < 0 || n % 2 != 0) throw UsageError("Lefschetz multiplicities need even n");
  if (betti.size() != static_cast<std::size_t>(n) + 1)
    throw UsageError("Betti vector must have n+1 entries");
  for (int p = 0; p <= n; ++p)
    if (betti[static_cast<std::size_t>(p)] != betti[static_cast<std::size_t>(n - p)])
      throw UsageError("Betti vector is not palindromic");
  LefschetzDecomposition out;
  for (int p = 0; p <= n / 2; ++p) {
    const auto b = [&](int i) -> std::int64_t { return i < 0 ? 0 : static_cast<std::int64_t>(betti[static_cast<std::size_t>(i)]); };
    const std::int64_t m = b(p) - b(p - 2);
    if (m < 0) out.violation = true;
    if (m != 0) out.multiplicities[n / 2 - p + 1] = m;
  }
  return out;
}

}  // namespace isoflat
