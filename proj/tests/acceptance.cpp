// Acceptance run: one PASS/FAIL line per criterion with its wall time.
//
// Exit status is 0 iff every FAIL is marked known: its only failure is a
// printed value that the brute-force oracle contradicts.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "isoflat/cohomology.hpp"
#include "isoflat/flip.hpp"
#include "isoflat/search.hpp"
#include "oracles.hpp"
#include "table_check.hpp"

using namespace isoflat;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  // Set when every failure is the known discrepancy and nothing else.
  bool known_only = false;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> body;
};

std::set<Monomial> monomials(std::initializer_list<const char*> digits) {
  std::set<Monomial> out;
  for (const char* d : digits) {
    std::uint64_t bits = 0;
    for (const char* c = d; *c; ++c) bits |= std::uint64_t{1} << (*c - '1');
    out.insert(Monomial(bits));
  }
  return out;
}

std::vector<std::uint64_t> prefix(const std::vector<std::uint64_t>& v, std::size_t len) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(len, v.size()))};
}

using Entries = std::map<std::pair<int, int>, std::uint32_t>;

Entries non_identity(const SunadaTable& t, int n) {
  Entries e = t.entries;
  if (--e[{n, 0}] == 0) e.erase({n, 0});
  return e;
}

// (n_B, n_{B,1/2}) histogram from the column data, independent of the library.
Entries sunada_oracle(const BieberbachGroup& g) {
  Entries out;
  for (std::uint32_t I = 1; I < (1u << g.rank()); ++I) {
    int s = 0, t = 0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(g.dimension()); ++j) {
      if (oracle::parity(g.layout()[j].bits() & I)) continue;
      ++s;
      int half = 0;
      for (int i = 0; i < g.rank(); ++i)
        if ((I >> i) & 1u) half ^= g.generators()[static_cast<std::size_t>(i)].numerators[j];
      t += half;
    }
    ++out[{s, t}];
  }
  return out;
}

Outcome table_counts(int id, const std::vector<std::size_t>& counts, int n_min, int n_max,
                     const std::vector<reference::PrintedFamily>& printed, int k, std::vector<Family>* keep = nullptr) {
  Outcome o;
  const TableResult t = reproduce_table(id);
  const auto got = table_check::counts_by_n(t.families, n_min, n_max);
  o.expect(got == counts, "family counts per n differ");
  const std::string diff = table_check::diff(t.families, printed, k);
  if (!diff.empty()) o.failures.push_back(diff.substr(0, diff.size() - 1));
  if (keep) *keep = t.families;
  return o;
}

Outcome criterion1() {
  std::vector<Family> families;
  Outcome o = table_counts(1, {1, 2, 5, 8, 16}, 7, 11, reference::kTable1, 3, &families);
  for (const auto& f : families) o.expect(f.members.size() == 2, "family of size other than 2");
  return o;
}

Outcome criterion2() {
  std::vector<Family> families;
  Outcome o = table_counts(2, {3, 3, 7, 11}, 12, 15, reference::kTable2, 3, &families);
  std::vector<std::size_t> sizes13;
  for (const auto& f : families)
    if (f.n == 13) sizes13.push_back(f.members.size());
  o.expect(sizes13 == std::vector<std::size_t>{4, 3, 3}, "n=13 family sizes are not 4,3,3");
  return o;
}

Outcome criterion3() {
  Outcome o = table_counts(3, {1, 3, 14}, 7, 9, reference::kTable3, 4);
  SearchConfig cfg;
  cfg.k = 4;
  cfg.n_min = cfg.n_max = 10;
  const auto ten = enumerate_families(cfg);
  o.expect(ten.size() == 32, "k=4 n=10: " + std::to_string(ten.size()) + " families, expected 32");
  const auto six = std::count_if(ten.begin(), ten.end(), [](const Family& f) { return f.members.size() == 6; });
  o.expect(six == 1, "k=4 n=10: expected exactly one family of size 6");

  // The printed P_5 column of F(4,9)_7 reads (4, 4). Both members have P_5 = 0
  // by brute force; that cell cannot match.
  if (o.failures.size() == 1) {
    auto corrected = reference::kTable3;
    bool misprint_confirmed = false;
    for (auto& f : corrected)
      if (f.n == 9 && f.index == 7) {
        misprint_confirmed = true;
        for (auto& [display, prims] : f.members) {
          misprint_confirmed = misprint_confirmed && prims[1] == 4 &&
                               oracle::primitive(DiagonalRep::from_display(4, display))[5] == 0;
          prims[1] = 0;
        }
      }
    const auto t = reproduce_table(3);
    if (misprint_confirmed && table_check::diff(t.families, corrected, 4).empty()) {
      o.failures = {"printed P_5 of F(4,9)_7 is (4,4); computed and brute-force value is (0,0); all other cells match"};
      o.known_only = true;
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  SearchConfig cfg;
  cfg.k = 3;
  cfg.n_min = cfg.n_max = 12;
  const auto families = enumerate_families(cfg);
  const auto pairs = std::count_if(families.begin(), families.end(), [](const Family& f) { return f.members.size() == 2; });
  o.expect(families.size() == 19, std::to_string(families.size()) + " families, expected 19");
  o.expect(pairs == 16, std::to_string(pairs) + " pairs, expected 16");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const MainPair pair = construct_main_pair(3, 8);
  const DiagonalRep& a = pair.gamma.rep();
  const DiagonalRep& b = pair.gamma_prime.rep();
  const std::vector<std::uint64_t> beta{1, 0, 4, 8, 6, 8, 4, 0, 1};
  o.expect(betti_numbers(a) == beta && betti_numbers(b) == beta, "Betti numbers");
  o.expect(betti_numbers(a) == oracle::betti(a) && betti_numbers(b) == oracle::betti(b), "Betti vs brute force");
  o.expect(prefix(primitive_counts(a), 5) == std::vector<std::uint64_t>{1, 0, 4, 8, 0}, "P-vector of Gamma");
  o.expect(prefix(primitive_counts(b), 5) == std::vector<std::uint64_t>{1, 0, 4, 8, 3}, "P-vector of Gamma'");
  for (std::size_t p = 5; p <= 8; ++p)
    o.expect(primitive_counts(a)[p] == 0 && primitive_counts(b)[p] == 0, "P_p nonzero above degree 4");

  const auto la = pair.gamma.layout(), lb = pair.gamma_prime.layout();
  const GradedSpan a2 = invariant_span(la, 2), b2 = invariant_span(lb, 2);
  o.expect(wedge_span(a2, a2).by_degree[4] == invariant_basis(la, 4), "Lambda^2 ^ Lambda^2 != Lambda^4 for Gamma");
  const GradedSpan bb = wedge_span(b2, b2);
  o.expect(bb.by_degree.count(4) && bb.by_degree.at(4) == monomials({"1278", "1378", "2378"}),
           "Lambda^2 ^ Lambda^2 for Gamma'");
  o.expect(wedge_span(bb, b2).total_dimension() == 0, "triple wedge of Lambda^2 for Gamma' is nonzero");

  const std::map<int, std::int64_t> lefschetz{{5, 1}, {3, 3}, {2, 8}, {1, 2}};
  o.expect(lefschetz_multiplicities(betti_numbers(a), 8).multiplicities == lefschetz, "Lefschetz multiplicities");
  o.expect(lefschetz_by_rank(a).multiplicities == lefschetz, "Lefschetz multiplicities by exact rank");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto f = fixtures::dim7_gamma(), fp = fixtures::dim7_gamma_prime();
  const std::vector<std::vector<const char*>> lf{{""}, {}, {"12"}, {"346", "357"}, {"4567"}, {"12346", "12357"}, {"124567"}, {}};
  const std::vector<std::vector<const char*>> lfp{{""}, {}, {"12"}, {"136", "236"}, {"3457"}, {"14567", "24567"}, {"123457"}, {}};
  const std::vector<std::vector<const char*>> pf{{""}, {}, {"12"}, {"346", "357"}, {"4567"}, {}, {}, {}};
  const std::vector<std::vector<const char*>> pfp{{""}, {}, {"12"}, {"136", "236"}, {"3457"}, {"14567", "24567"}, {}, {}};
  auto as_set = [](const std::vector<const char*>& v) {
    std::set<Monomial> out;
    for (const char* d : v) {
      std::uint64_t bits = 0;
      for (const char* c = d; *c; ++c) bits |= std::uint64_t{1} << (*c - '1');
      out.insert(Monomial(bits));
    }
    return out;
  };
  const std::vector<std::uint64_t> beta{1, 0, 1, 2, 1, 2, 1, 0};
  o.expect(betti_numbers(f.rep()) == beta && betti_numbers(fp.rep()) == beta, "Betti numbers");
  for (int p = 0; p <= 7; ++p) {
    const auto up = static_cast<std::size_t>(p);
    o.expect(invariant_basis(f.layout(), p) == as_set(lf[up]), "Lambda^" + std::to_string(p) + " of F");
    o.expect(invariant_basis(fp.layout(), p) == as_set(lfp[up]), "Lambda^" + std::to_string(p) + " of F'");
    o.expect(primitive_basis(f.layout(), p) == as_set(pf[up]), "primitive degree " + std::to_string(p) + " of F");
    o.expect(primitive_basis(fp.layout(), p) == as_set(pfp[up]), "primitive degree " + std::to_string(p) + " of F'");
  }
  o.expect(minimal_generator_count(f.rep()) == 5 && minimal_generator_count(fp.rep()) == 7, "generator counts");
  o.expect(is_torsion_free(f).torsion_free && is_torsion_free(fp).torsion_free, "torsion-free");
  o.expect(is_sunada_isospectral(f, fp), "Sunada tables differ");

  // Printed list, with its repeated c_{3,1} left out; the s = 3 entries are
  // checked against the oracle instead.
  const Entries printed_unambiguous{{{5, 1}, 1}, {{1, 1}, 1}, {{5, 2}, 2}, {{4, 2}, 2}, {{4, 1}, 2}, {{2, 1}, 4}};
  for (const auto& g : {f, fp}) {
    const Entries got = non_identity(sunada_table(g), 7);
    const Entries want = sunada_oracle(g);
    o.expect(got == want, "Sunada table vs oracle");
    for (const auto& [key, count] : printed_unambiguous)
      o.expect(got.count(key) && got.at(key) == count, "printed Sunada entry");
    std::uint32_t rest = 0;
    for (const auto& [key, count] : got)
      if (!printed_unambiguous.count(key)) {
        o.expect(key.first == 3, "unexpected Sunada entry outside s = 3");
        rest += count;
      }
    o.expect(rest == 3, "s = 3 entries do not total 3");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Entries printed{{{4, 1}, 1}, {{6, 1}, 1}, {{8, 1}, 1}, {{10, 2}, 1}, {{12, 2}, 1}, {{14, 1}, 1}, {{18, 2}, 1}};
  const std::vector<std::uint64_t> p4{371, 368, 335, 320, 191, 135, 128, 0};
  std::vector<std::uint32_t> pattern_counts(25, 0);
  for (int n : {4, 6, 8, 10, 12, 14, 18, 24}) pattern_counts[static_cast<std::size_t>(n)] = 1;
  for (int j = 1; j <= 8; ++j) {
    const std::string tag = "j=" + std::to_string(j) + ": ";
    const BieberbachGroup g = construct_family24(j);
    const DiagonalRep& rep = g.rep();
    o.expect(is_torsion_free(g).torsion_free && oracle::torsion_free(g), tag + "not torsion-free");
    o.expect(pattern(rep).counts == pattern_counts, tag + "pattern");
    o.expect(non_identity(sunada_table(g), 24) == printed, tag + "Sunada entries");
    o.expect(sunada_oracle(g) == printed, tag + "Sunada entries (oracle)");
    const auto prim = primitive_counts(rep);
    o.expect(prim[2] == 64 && prim[3] == 192, tag + "P_2, P_3");
    o.expect(prim[4] == p4[static_cast<std::size_t>(j - 1)], tag + "P_4");
    const bool all_even = std::all_of(rep.multiplicities().begin(), rep.multiplicities().end(),
                                      [](Multiplicity q) { return q % 2 == 0; });
    o.expect(all_even == (j == 2 || j == 4 || j == 7 || j == 8), tag + "parity");
    o.expect((kahler_class(rep) != KahlerClass::none) == all_even, tag + "Kahler class");
    o.expect(kahler_obstruction(rep) == !all_even, tag + "Kahler obstruction");
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (int k = 3; k <= 5; ++k) {
    const std::uint64_t m = std::uint64_t{1} << (k - 2);
    const std::uint64_t closed = 16 * m * (m - 1) * (m - 2) / 24;
    const int n0 = 3 * static_cast<int>(m) + 1;
    for (int n = n0; n < n0 + 5; ++n) {
      const std::string tag = "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": ";
      const MainPair pair = construct_main_pair(k, n);
      const auto pa = primitive_counts(pair.gamma.rep()), pb = primitive_counts(pair.gamma_prime.rep());
      const auto top = static_cast<std::size_t>(k + 1);
      o.expect(is_torsion_free(pair.gamma).torsion_free && is_torsion_free(pair.gamma_prime).torsion_free,
               tag + "torsion");
      o.expect(oracle::torsion_free(pair.gamma) && oracle::torsion_free(pair.gamma_prime), tag + "torsion (oracle)");
      o.expect(sunada_table(pair.gamma) == sunada_table(pair.gamma_prime), tag + "Sunada tables");
      o.expect(sunada_oracle(pair.gamma) == sunada_oracle(pair.gamma_prime), tag + "Sunada tables (oracle)");
      o.expect(pa[4] == closed, tag + "P_4 closed form");
      o.expect(pb[4] > pa[4], tag + "P_4' > P_4");
      if (k > 3) o.expect(pb[5] > pa[5], tag + "P_5' > P_5");
      o.expect(pa[top] == 0 && pb[top] > 0, tag + "P_{k+1}");
      if (n % 2 == 0) {
        o.expect(kahler_class(pair.gamma.rep()) != KahlerClass::none, tag + "Gamma Kahler");
        o.expect(kahler_obstruction(pair.gamma_prime.rep()), tag + "Gamma' obstruction");
      }
    }
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(20240901);

  // (a) Betti numbers vs brute force.
  for (int t = 0; t < 500; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    const DiagonalRep r = oracle::random_rep(rng, k, k + static_cast<int>(rng() % static_cast<unsigned>(15 - k)), true);
    if (betti_numbers(r) != oracle::betti(r)) {
      o.failures.push_back("(a) Betti mismatch for " + format_rep(r));
      break;
    }
  }

  // (b) Flip swap identity and pattern preservation.
  for (int applicable = 0; applicable < 10000;) {
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
    if (!ok) {
      o.failures.push_back("(b) flip identity fails for " + format_rep(rep));
      break;
    }
  }

  // (c) Sum, Euler characteristic, Poincare duality.
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
    bool fixes = true;
    for (std::uint32_t f = 0; f < r.size(); ++f) fixes = fixes && oracle::fixed_dim(r, f) >= 1;
    if (fixes) ok = ok && euler == 0;
    if (is_orientable(r))
      for (int p = 0; p <= n; ++p) ok = ok && b[static_cast<std::size_t>(p)] == b[static_cast<std::size_t>(n - p)];
    if (!ok) {
      o.failures.push_back("(c) Betti identities fail for " + format_rep(r));
      break;
    }
  }

  // (d) Kahler parity rule vs exhaustive pairing, n <= 12 within 10^3 samples.
  for (int t = 0; t < 1000; ++t) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const int n = k + static_cast<int>(rng() % 13);
    if (n > 12 || n % 2) continue;
    const DiagonalRep r = oracle::random_rep(rng, k, n, true);
    if (kahler_obstruction(r) != !oracle::pairable(oracle::coordinates(r))) {
      o.failures.push_back("(d) Kahler rule fails for " + format_rep(r));
      break;
    }
  }

  // (e) Random automorphism images share every invariant.
  for (int t = 0; t < 2000; ++t) {
    const int k = 1 + static_cast<int>(rng() % 5);
    const DiagonalRep r = oracle::random_rep(rng, k, k + static_cast<int>(rng() % 20), true);
    std::vector<std::uint32_t> cols;
    for (bool injective = false; !injective;) {
      cols.assign(static_cast<std::size_t>(k), 0);
      for (auto& c : cols) c = static_cast<std::uint32_t>(rng() % (1u << k));
      injective = true;
      for (std::uint32_t v = 1; v < (1u << k) && injective; ++v) injective = oracle::apply(cols, v) != 0;
    }
    std::vector<Multiplicity> q(r.size(), 0);
    for (std::uint32_t mask = 0; mask < r.size(); ++mask) q[oracle::apply(cols, mask)] = r[mask];
    const DiagonalRep s(k, std::move(q));
    const bool ok = are_equivalent(r, s) && pattern(r) == pattern(s) && betti_numbers(r) == betti_numbers(s) &&
                    primitive_counts(r) == primitive_counts(s);
    if (!ok) {
      o.failures.push_back("(e) invariants differ under an automorphism for " + format_rep(r));
      break;
    }
  }

  // (f) Determinism across worker counts.
  for (const auto& [k, n_min, n_max] : {std::tuple{3, 7, 13}, std::tuple{4, 7, 9}}) {
    SearchConfig cfg;
    cfg.k = k;
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    std::string first;
    for (int w : {1, 4, 16}) {
      cfg.workers = w;
      const auto families = enumerate_families(cfg);
      const std::string text = render_table(cfg, families) + to_csv(cfg, families) + to_json(cfg, families);
      if (first.empty()) first = text;
      if (text != first) o.failures.push_back("(f) output differs with " + std::to_string(w) + " workers");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "table id 1: k=3, n=7..11, pairs and P_4", 5, criterion1},
      {2, "table id 2: k=3, n=12..15, families of size >= 3", 30, criterion2},
      {3, "table id 3: k=4, n=7..9 with P_4, P_5; k=4, n=10 counts", 300, criterion3},
      {4, "k=3, n=12: 19 families, 16 pairs", 0, criterion4},
      {5, "dimension 8 pair: Betti, P-vectors, wedges, Lefschetz", 1, criterion5},
      {6, "dimension 7 pair: invariants, generators, Sunada tables", 1, criterion6},
      {7, "24-dimensional family: torsion, pattern, Sunada, P-counts, Kahler", 1, criterion7},
      {8, "main pair sweep, k=3..5", 10, criterion8},
      {9, "property suites (a)-(f)", 0, criterion9},
  };

  int passed = 0, known = 0, unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.failures = {std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s");
      o.known_only = false;
    }
    const bool pass = o.failures.empty();
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title << "  (" << std::fixed << std::setprecision(3)
         << secs << " s)";
    std::cout << line.str() << '\n';
    for (const std::string& f : o.failures) std::cout << "      " << (o.known_only ? "known: " : "") << f << '\n';
    if (pass)
      ++passed;
    else if (o.known_only)
      ++known;
    else
      ++unexpected;
  }
  std::cout << "summary: " << passed << " PASS, " << known + unexpected << " FAIL (" << known
            << " known unattainable, " << unexpected << " unexpected)\n";
  return unexpected == 0 ? 0 : 1;
}
