#include <boost/multiprecision/cpp_int.hpp>

#include "isoflat/cohomology.hpp"
#include "isoflat/errors.hpp"

namespace isoflat {

namespace {

using Exact = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<Exact>>;

std::size_t exact_rank(Matrix m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Exact f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Sign of e_a ^ e_b ^ e_S relative to the sorted monomial, for a < b not in S.
int wedge_sign(int a, int b, std::uint64_t s) {
  const std::uint64_t below_a = s & ((std::uint64_t{1} << a) - 1);
  const std::uint64_t below_b = s & ((std::uint64_t{1} << b) - 1);
  return (std::popcount(below_a) + std::popcount(below_b)) % 2 ? -1 : 1;
}

}  // namespace

LefschetzDecomposition lefschetz_by_rank(const DiagonalRep& rep) {
  const int n = rep.dimension();
  if (n > 10) throw CapabilityError("explicit Lefschetz rank check is limited to n <= 10");
  if (kahler_class(rep) == KahlerClass::none)
    throw UsageError("explicit Lefschetz check needs all multiplicities even");
  const CoordinateLayout layout = coordinate_layout(rep);
  // Blocks have even length, so consecutive coordinates (0,1), (2,3), ... share a character.
  std::vector<std::pair<int, int>> omega;
  for (int j = 0; j + 1 < n; j += 2) omega.emplace_back(j, j + 1);

  std::vector<std::vector<Monomial>> basis(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    const auto b = invariant_basis(layout, p);
    basis[static_cast<std::size_t>(p)].assign(b.begin(), b.end());
  }

  LefschetzDecomposition out;
  for (int p = 0; p <= n / 2; ++p) {
    const auto& target = basis[static_cast<std::size_t>(p)];
    std::size_t rank = 0;
    if (p >= 2) {
      const auto& source = basis[static_cast<std::size_t>(p - 2)];
      Matrix m(source.size(), std::vector<Exact>(target.size()));
      for (std::size_t r = 0; r < source.size(); ++r)
        for (auto [a, b] : omega) {
          const std::uint64_t s = source[r].bits();
          const std::uint64_t pair = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
          if (s & pair) continue;
          const Monomial image(s | pair);
          const auto it = std::lower_bound(target.begin(), target.end(), image);
          m[r][static_cast<std::size_t>(it - target.begin())] += wedge_sign(a, b, s);
        }
      rank = exact_rank(std::move(m));
    }
    const std::int64_t mult = static_cast<std::int64_t>(target.size()) - static_cast<std::int64_t>(rank);
    if (p >= 2 && rank < basis[static_cast<std::size_t>(p - 2)].size()) out.violation = true;
    if (mult != 0) out.multiplicities[n / 2 - p + 1] = mult;
  }
  return out;
}

}  // namespace isoflat
