#include "isoflat/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "isoflat/cohomology.hpp"
#include "isoflat/errors.hpp"

namespace isoflat {

namespace {

constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t r) {
  r = std::min(r, n - r);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (n - r + i) / i;
    if (c > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(c);
}

std::vector<std::uint32_t> allowed_characters(const SearchConfig& cfg) {
  std::vector<std::uint32_t> chars;
  for (std::uint32_t m = cfg.require_q0_zero ? 1 : 0; m < (1u << cfg.k); ++m) chars.push_back(m);
  return chars;
}

void validate(const SearchConfig& cfg) {
  if (cfg.k < 1 || cfg.k > kMaxExhaustiveRank)
    throw CapabilityError("enumeration supports 1 <= k <= 5, got k=" + std::to_string(cfg.k));
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw UsageError("invalid dimension range");
  if (cfg.n_max > kMaxCohomologyDim) throw CapabilityError("enumeration supports n <= 62");
  if (cfg.min_family_size < 1) throw UsageError("minimum family size must be positive");
  if (cfg.workers < 0) throw UsageError("worker count must be non-negative");
}

using Bucket = std::map<std::pair<int, Pattern>, std::vector<DiagonalRep>>;

struct Worker {
  const SearchConfig& cfg;
  std::span<const std::uint32_t> chars;
  Bucket found;
  std::array<Multiplicity, 32> q{};
  int n = 0;

  void run_task(int dim, Multiplicity first) {
    n = dim;
    q.fill(0);
    q[chars[0]] = first;
    fill(1, static_cast<Multiplicity>(dim) - first);
  }

  void fill(std::size_t idx, Multiplicity remaining) {
    if (idx + 1 == chars.size()) {
      q[chars[idx]] = remaining;
      visit();
      q[chars[idx]] = 0;
      return;
    }
    for (Multiplicity v = 0; v <= remaining; ++v) {
      q[chars[idx]] = v;
      fill(idx + 1, remaining - v);
    }
    q[chars[idx]] = 0;
  }

  void visit() {
    const std::size_t size = std::size_t{1} << cfg.k;
    if (cfg.require_faithful) {
      detail::Gf2Basis basis;
      int rank = 0;
      for (std::uint32_t m = 1; m < size; ++m)
        if (q[m] > 0 && basis.insert(m) >= 0) ++rank;
      if (rank < cfg.k) return;
    }
    // Walsh-Hadamard transform gives n_B = (n + sum_J q_J chi_J(f)) / 2.
    std::array<std::int32_t, 32> a{};
    for (std::size_t m = 0; m < size; ++m) a[m] = static_cast<std::int32_t>(q[m]);
    for (std::size_t h = 1; h < size; h <<= 1)
      for (std::size_t i = 0; i < size; i += h << 1)
        for (std::size_t j = i; j < i + h; ++j) {
          const std::int32_t x = a[j], y = a[j + h];
          a[j] = x + y;
          a[j + h] = x - y;
        }
    Pattern p;
    p.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t f = 0; f < size; ++f) {
      const int dim = (n + a[f]) / 2;
      if (cfg.forbid_minus_id && f != 0 && dim == 0) return;
      ++p.counts[static_cast<std::size_t>(dim)];
    }
    const std::span<const Multiplicity> view(q.data(), size);
    if (!detail::is_orbit_minimal(cfg.k, view)) return;
    found[{n, std::move(p)}].emplace_back(cfg.k, std::vector<Multiplicity>(view.begin(), view.end()));
  }
};

bool display_greater(const FamilyMember& a, const FamilyMember& b) {
  return a.display.display() > b.display.display();
}

}  // namespace

std::uint64_t composition_count(const SearchConfig& cfg) {
  const std::uint64_t r = allowed_characters(cfg).size();
  std::uint64_t total = 0;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const std::uint64_t c = binomial_saturating(static_cast<std::uint64_t>(n) + r - 1, r - 1);
    total = (c == kSaturated || total > kSaturated - c) ? kSaturated : total + c;
  }
  return total;
}

FamilyMember make_member(const DiagonalRep& rep) {
  return {canonical_form(rep), display_representative(rep), primitive_counts(rep), betti_numbers(rep)};
}

std::vector<Family> enumerate_families(const SearchConfig& cfg) {
  validate(cfg);
  const std::uint64_t count = composition_count(cfg);
  if (count > cfg.budget)
    throw CapabilityError("search needs " + (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                          " compositions, above the budget of " + std::to_string(cfg.budget));
  const auto chars = allowed_characters(cfg);

  std::vector<std::pair<int, Multiplicity>> tasks;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n)
    for (int first = n; first >= 0; --first) tasks.emplace_back(n, static_cast<Multiplicity>(first));

  unsigned workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers) : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  Bucket merged;
  std::exception_ptr failure;
  auto body = [&] {
    try {
      Worker w{cfg, chars, {}, {}, 0};
      for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) w.run_task(tasks[t].first, tasks[t].second);
      std::lock_guard lock(merge_mutex);
      for (auto& [key, reps] : w.found) {
        auto& dst = merged[key];
        dst.insert(dst.end(), std::make_move_iterator(reps.begin()), std::make_move_iterator(reps.end()));
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Family> families;
  for (auto& [key, reps] : merged) {
    if (reps.size() < static_cast<std::size_t>(cfg.min_family_size)) continue;
    Family fam{key.first, key.second, {}};
    for (const DiagonalRep& r : reps) fam.members.push_back(make_member(r));
    std::sort(fam.members.begin(), fam.members.end(), display_greater);
    families.push_back(std::move(fam));
  }
  std::sort(families.begin(), families.end(), [](const Family& a, const Family& b) {
    if (a.n != b.n) return a.n < b.n;
    return display_greater(a.members.front(), b.members.front());
  });
  return families;
}

SearchConfig table_config(int id) {
  SearchConfig cfg;
  switch (id) {
    case 1: cfg.k = 3, cfg.n_min = 7, cfg.n_max = 11, cfg.min_family_size = 2; break;
    case 2: cfg.k = 3, cfg.n_min = 12, cfg.n_max = 15, cfg.min_family_size = 3; break;
    case 3: cfg.k = 4, cfg.n_min = 7, cfg.n_max = 9, cfg.min_family_size = 2; break;
    default: throw UsageError("table id must be 1, 2 or 3");
  }
  return cfg;
}

TableResult reproduce_table(int id, int workers) {
  TableResult result;
  result.id = id;
  result.config = table_config(id);
  result.config.workers = workers;
  result.families = enumerate_families(result.config);
  result.rendered = render_table(result.config, result.families);
  return result;
}

bool FamilyFlipCoverage::fully_connected() const {
  return std::all_of(links.begin(), links.end(), [](const FlipLink& l) { return l.via.has_value(); });
}

std::vector<FamilyFlipCoverage> flip_coverage_report(const std::vector<Family>& families) {
  std::vector<FamilyFlipCoverage> report;
  std::map<int, std::size_t> index_in_n;
  for (const Family& fam : families) {
    FamilyFlipCoverage cov{fam.n, ++index_in_n[fam.n], {}};
    const int k = fam.members.front().canonical.rank();
    for (std::size_t i = 0; i < fam.members.size(); ++i)
      for (std::size_t j = 0; j < fam.members.size(); ++j) {
        if (i == j) continue;
        FlipLink link{i, j, std::nullopt};
        for (std::uint32_t g1 = 1; g1 < (1u << k) && !link.via; ++g1)
          for (std::uint32_t g2 = 1; g2 < (1u << k) && !link.via; ++g2) {
            if (g1 == g2) continue;
            const FlipSpec spec{CharMask(g1, k), CharMask(g2, k)};
            const FlipOutcome out = apply_flip(fam.members[i].canonical, spec);
            if (out.applicable() && are_equivalent(*out.flipped, fam.members[j].canonical)) link.via = spec;
          }
        cov.links.push_back(link);
      }
    report.push_back(std::move(cov));
  }
  return report;
}

}  // namespace isoflat
