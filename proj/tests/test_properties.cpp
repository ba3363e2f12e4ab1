#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isoflat/cohomology.hpp"
#include "isoflat/flip.hpp"
#include "isoflat/search.hpp"
#include "oracles.hpp"

using namespace isoflat;

namespace {

// Random invertible matrix as a column list, rejection-sampled.
std::vector<std::uint32_t> random_invertible(std::mt19937_64& rng, int k) {
  for (;;) {
    std::vector<std::uint32_t> cols(static_cast<std::size_t>(k));
    for (auto& c : cols) c = static_cast<std::uint32_t>(rng() % (1u << k));
    bool injective = true;
    for (std::uint32_t v = 1; v < (1u << k) && injective; ++v) injective = oracle::apply(cols, v) != 0;
    if (injective) return cols;
  }
}

DiagonalRep transformed(const DiagonalRep& rep, const std::vector<std::uint32_t>& cols) {
  std::vector<Multiplicity> q(rep.size(), 0);
  for (std::uint32_t m = 0; m < rep.size(); ++m) q[oracle::apply(cols, m)] = rep[m];
  return DiagonalRep(rep.rank(), std::move(q));
}

}  // namespace

TEST_CASE("Betti numbers equal brute-force monomial counts") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 500; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    const int n = k + static_cast<int>(rng() % static_cast<unsigned>(15 - k));
    const DiagonalRep r = oracle::random_rep(rng, k, n, true);
    REQUIRE(r.dimension() <= 14);
    CHECK(betti_numbers(r) == oracle::betti(r));
  }
}

TEST_CASE("flips swap two fixed dimensions and preserve the pattern") {
  std::mt19937_64 rng(103);
  int applicable = 0;
  while (applicable < 10000) {
    const int k = 2 + static_cast<int>(rng() % 4);
    const DiagonalRep rep = oracle::random_rep(rng, k, k + static_cast<int>(rng() % 24), true);
    const std::uint32_t g1 = 1 + static_cast<std::uint32_t>(rng() % ((1u << k) - 1));
    const std::uint32_t g2 = 1 + static_cast<std::uint32_t>(rng() % ((1u << k) - 1));
    if (g1 == g2) continue;
    const FlipOutcome out = apply_flip(rep, {CharMask(g1, k), CharMask(g2, k)});
    if (!out.applicable()) continue;
    ++applicable;
    bool ok = pattern(*out.flipped) == pattern(rep);
    for (std::uint32_t g = 0; g < (1u << k); ++g) {
      const std::uint32_t source = g == g1 ? g2 : g == g2 ? g1 : g;
      ok = ok && oracle::fixed_dim(*out.flipped, g) == oracle::fixed_dim(rep, source);
    }
    REQUIRE(ok);
  }
}

TEST_CASE("Betti sum, Euler characteristic and Poincare duality") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 10000; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    const int n = k + static_cast<int>(rng() % static_cast<unsigned>(40 - k));
    const DiagonalRep r = oracle::random_rep(rng, k, n, true);
    const auto b = betti_numbers(r);
    std::uint64_t sum = 0;
    std::int64_t euler = 0;
    for (std::size_t p = 0; p < b.size(); ++p) {
      sum += b[p];
      euler += (p % 2 ? -1 : 1) * static_cast<std::int64_t>(b[p]);
    }
    bool ok = sum == std::uint64_t{1} << (n - k);
    bool every_element_fixes = true;
    for (std::uint32_t f = 0; f < r.size(); ++f) every_element_fixes = every_element_fixes && oracle::fixed_dim(r, f) >= 1;
    if (every_element_fixes) ok = ok && euler == 0;
    if (is_orientable(r))
      for (int p = 0; p <= n; ++p) ok = ok && b[static_cast<std::size_t>(p)] == b[static_cast<std::size_t>(n - p)];
    REQUIRE(ok);
  }
}

TEST_CASE("Kahler obstruction equals failure of exhaustive pairing") {
  std::mt19937_64 rng(109);
  int tested = 0;
  for (int t = 0; t < 1000; ++t) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const int n = k + static_cast<int>(rng() % 13);
    if (n > 12 || n % 2) continue;
    const DiagonalRep r = oracle::random_rep(rng, k, n, true);
    ++tested;
    CHECK(kahler_obstruction(r) == !oracle::pairable(oracle::coordinates(r)));
  }
  CHECK(tested > 200);
}

TEST_CASE("equivalent representations share every invariant") {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 2000; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    const DiagonalRep r = oracle::random_rep(rng, k, k + static_cast<int>(rng() % 20), true);
    const DiagonalRep s = transformed(r, random_invertible(rng, k));
    bool ok = are_equivalent(r, s);
    if (k <= 4) ok = ok && canonical_form(r) == canonical_form(s);
    ok = ok && pattern(r) == pattern(s) && betti_numbers(r) == betti_numbers(s);
    ok = ok && primitive_counts(r) == primitive_counts(s);
    REQUIRE(ok);
  }
}

TEST_CASE("enumeration is deterministic across worker counts") {
  for (const auto& [k, n_min, n_max] : {std::tuple{3, 7, 12}, std::tuple{4, 7, 9}}) {
    SearchConfig cfg;
    cfg.k = k;
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    std::string reference;
    for (int w : {1, 4, 16}) {
      cfg.workers = w;
      const std::string text = to_json(cfg, enumerate_families(cfg));
      if (reference.empty()) reference = text;
      CHECK(text == reference);
    }
  }
}
