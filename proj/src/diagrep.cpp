#include "isoflat/diagrep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <mutex>
#include <numeric>

#include "isoflat/errors.hpp"

namespace isoflat {

namespace {

void check_rank(int k) {
  if (k < 1 || k > kMaxRank) throw UsageError("rank k=" + std::to_string(k) + " outside 1..16");
}

// Walsh-Hadamard transform of the multiplicity vector:
// out[f] = sum_J q_J (-1)^{|J and f|}.
std::vector<std::int64_t> character_sums(std::span<const Multiplicity> q) {
  std::vector<std::int64_t> a(q.begin(), q.end());
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
  return a;
}

// Compares q∘perm against q in numeric order. Returns -1 if the image is smaller, 0 if equal, +1 if larger.
template <class Perm>
int compare_image(std::span<const Multiplicity> q, Perm&& perm) {
  for (std::uint32_t j = 1; j < q.size(); ++j) {
    const Multiplicity a = q[perm(j)], b = q[j];
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

std::vector<int> index_list(CharMask c) {
  std::vector<int> v;
  for (int i = 1; i <= c.rank(); ++i)
    if (c.contains(i)) v.push_back(i);
  return v;
}

template <class Visit>
void for_each_orbit_permutation(int k, Visit&& visit) {
  if (k > kMaxExhaustiveRank)
    throw CapabilityError("orbit scans are limited to k <= 5; use are_equivalent for larger ranks");
  const std::uint32_t size = 1u << k;
  if (k <= 4) {
    auto table = permutation_table(k);
    for (std::size_t off = 0; off < table.size(); off += size) {
      const std::uint8_t* perm = table.data() + off;
      if (!visit([perm](std::uint32_t m) { return static_cast<std::uint32_t>(perm[m]); })) return;
    }
    return;
  }
  std::vector<std::uint32_t> perm(size);
  for (const DualAutomorphism& a : AutomorphismRange(k)) {
    for (std::uint32_t m = 0; m < size; ++m) perm[m] = a.apply(m);
    if (!visit([&perm](std::uint32_t m) { return perm[m]; })) return;
  }
}

}  // namespace

DiagonalRep::DiagonalRep(int k, std::vector<Multiplicity> q) : k_(k), q_(std::move(q)) {
  check_rank(k);
  if (q_.size() != (std::size_t{1} << k))
    throw UsageError("expected " + std::to_string(1u << k) + " multiplicities, got " +
                     std::to_string(q_.size()));
  const std::uint64_t n = std::accumulate(q_.begin(), q_.end(), std::uint64_t{0});
  if (n < 1) throw UsageError("representation has dimension 0");
  if (n > 4096) throw UsageError("dimension too large");
  n_ = static_cast<int>(n);
}

DiagonalRep DiagonalRep::from_display(int k, std::span<const Multiplicity> display, Multiplicity q0) {
  check_rank(k);
  const auto& order = display_order(k);
  if (display.size() != order.size())
    throw UsageError("expected " + std::to_string(order.size()) + " multiplicities for k=" +
                     std::to_string(k) + ", got " + std::to_string(display.size()));
  std::vector<Multiplicity> q(std::size_t{1} << k, 0);
  q[0] = q0;
  for (std::size_t i = 0; i < order.size(); ++i) q[order[i].bits()] = display[i];
  return DiagonalRep(k, std::move(q));
}

Multiplicity DiagonalRep::multiplicity(CharMask chi) const {
  if (chi.rank() != k_) throw UsageError("character rank does not match representation");
  return q_[chi.bits()];
}

std::vector<Multiplicity> DiagonalRep::display() const {
  std::vector<Multiplicity> out;
  for (CharMask c : display_order(k_)) out.push_back(q_[c.bits()]);
  return out;
}

std::vector<CharMask> DiagonalRep::support() const {
  std::vector<CharMask> out;
  for (std::uint32_t m = 0; m < q_.size(); ++m)
    if (q_[m] > 0) out.emplace_back(m, k_);
  return out;
}

const std::vector<CharMask>& display_order(int k) {
  check_rank(k);
  static std::array<std::vector<CharMask>, kMaxRank + 1> cache;
  static std::array<std::once_flag, kMaxRank + 1> flags;
  std::call_once(flags[k], [k] {
    std::vector<CharMask> order;
    for (std::uint32_t m = 1; m < (1u << k); ++m) order.emplace_back(m, k);
    std::sort(order.begin(), order.end(), [](CharMask a, CharMask b) {
      if (a.weight() != b.weight()) return a.weight() < b.weight();
      return index_list(a) < index_list(b);
    });
    cache[k] = std::move(order);
  });
  return cache[k];
}

std::vector<CharMask> lexicographic_order(int k) {
  check_rank(k);
  std::vector<CharMask> order;
  for (std::uint32_t m = 0; m < (1u << k); ++m) order.emplace_back(m, k);
  std::sort(order.begin(), order.end(),
            [](CharMask a, CharMask b) { return index_list(a) < index_list(b); });
  return order;
}

std::vector<CharMask> character_order(int k, CharacterOrder order) {
  if (order == CharacterOrder::lexicographic) return lexicographic_order(k);
  std::vector<CharMask> out{CharMask::trivial(k)};
  const auto& rest = display_order(k);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

int fixed_dim(const DiagonalRep& rep, CharMask f) {
  if (f.rank() != rep.rank()) throw UsageError("group element rank does not match representation");
  int sum = 0;
  for (std::uint32_t j = 0; j < rep.size(); ++j)
    if ((std::popcount(j & f.bits()) & 1) == 0) sum += static_cast<int>(rep[j]);
  return sum;
}

std::vector<int> fixed_dims(const DiagonalRep& rep) {
  const auto sums = character_sums(rep.multiplicities());
  std::vector<int> out(sums.size());
  for (std::size_t f = 0; f < sums.size(); ++f)
    out[f] = static_cast<int>((rep.dimension() + sums[f]) / 2);
  return out;
}

Pattern pattern(const DiagonalRep& rep) {
  Pattern p;
  p.counts.assign(static_cast<std::size_t>(rep.dimension()) + 1, 0);
  for (int d : fixed_dims(rep)) ++p.counts[static_cast<std::size_t>(d)];
  return p;
}

bool is_faithful(const DiagonalRep& rep) {
  detail::Gf2Basis basis;
  int rank = 0;
  for (std::uint32_t m = 1; m < rep.size(); ++m)
    if (rep[m] > 0 && basis.insert(m) >= 0) ++rank;
  return rank == rep.rank();
}

bool contains_minus_identity(const DiagonalRep& rep) {
  const auto dims = fixed_dims(rep);
  return std::any_of(dims.begin() + 1, dims.end(), [](int d) { return d == 0; });
}

bool is_orientable(const DiagonalRep& rep) {
  for (int j = 1; j <= rep.rank(); ++j) {
    std::uint64_t sum = 0;
    for (std::uint32_t m = 0; m < rep.size(); ++m)
      if ((m >> (j - 1)) & 1u) sum += rep[m];
    if (sum % 2 != 0) return false;
  }
  return true;
}

KahlerClass kahler_class(const DiagonalRep& rep) {
  const auto q = rep.multiplicities();
  if (std::all_of(q.begin(), q.end(), [](Multiplicity v) { return v % 4 == 0; }))
    return KahlerClass::hyperkahler;
  if (std::all_of(q.begin(), q.end(), [](Multiplicity v) { return v % 2 == 0; }))
    return KahlerClass::kahler;
  return KahlerClass::none;
}

std::string to_string(KahlerClass c) {
  switch (c) {
    case KahlerClass::kahler: return "kahler";
    case KahlerClass::hyperkahler: return "hyperkahler";
    case KahlerClass::none: break;
  }
  return "none";
}

DiagonalRep image(const DiagonalRep& rep, const DualAutomorphism& a) {
  if (a.rank() != rep.rank()) throw UsageError("automorphism rank does not match representation");
  std::vector<Multiplicity> q(rep.size());
  for (std::uint32_t m = 0; m < rep.size(); ++m) q[a.apply(m)] = rep[m];
  return DiagonalRep(rep.rank(), std::move(q));
}

namespace {

struct EquivalenceSearch {
  std::span<const Multiplicity> a, b;
  int k;
  std::vector<std::uint32_t> img;
  std::vector<char> used;

  bool extend(int level) {
    if (level == k) return true;
    const std::uint32_t lo = 1u << level, size = 1u << k;
    for (std::uint32_t v = 1; v < size; ++v) {
      if (used[v]) continue;
      bool ok = true;
      std::uint32_t i = lo;
      for (; i < (lo << 1); ++i) {
        img[i] = img[i ^ lo] ^ v;
        if (b[img[i]] != a[i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (i = lo; i < (lo << 1); ++i) used[img[i]] = 1;
      if (extend(level + 1)) return true;
      for (i = lo; i < (lo << 1); ++i) used[img[i]] = 0;
    }
    return false;
  }
};

}  // namespace

bool are_equivalent(const DiagonalRep& a, const DiagonalRep& b) {
  if (a.rank() != b.rank()) throw UsageError("are_equivalent: representations of different rank");
  if (a.dimension() != b.dimension() || a[0] != b[0]) return false;
  if (a == b) return true;
  std::vector<Multiplicity> sa(a.multiplicities().begin(), a.multiplicities().end());
  std::vector<Multiplicity> sb(b.multiplicities().begin(), b.multiplicities().end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb || pattern(a) != pattern(b)) return false;

  EquivalenceSearch s{a.multiplicities(), b.multiplicities(), a.rank(),
                      std::vector<std::uint32_t>(a.size(), 0), std::vector<char>(a.size(), 0)};
  s.used[0] = 1;
  return s.extend(0);
}

DiagonalRep canonical_form(const DiagonalRep& rep) {
  const auto q = rep.multiplicities();
  std::vector<Multiplicity> best(q.begin(), q.end());
  std::vector<Multiplicity> cand(q.size());
  for_each_orbit_permutation(rep.rank(), [&](auto perm) {
    for (std::uint32_t j = 0; j < q.size(); ++j) cand[j] = q[perm(j)];
    if (cand < best) best = cand;
    return true;
  });
  return DiagonalRep(rep.rank(), std::move(best));
}

bool detail::is_orbit_minimal(int k, std::span<const Multiplicity> q) {
  bool minimal = true;
  for_each_orbit_permutation(k, [&](auto perm) {
    if (compare_image(q, perm) < 0) minimal = false;
    return minimal;
  });
  return minimal;
}

bool is_canonical(const DiagonalRep& rep) { return detail::is_orbit_minimal(rep.rank(), rep.multiplicities()); }

DiagonalRep display_representative(const DiagonalRep& rep) {
  const auto q = rep.multiplicities();
  const auto& order = display_order(rep.rank());
  std::vector<Multiplicity> best = rep.display(), cand(order.size());
  std::vector<Multiplicity> best_full(q.begin(), q.end());
  for_each_orbit_permutation(rep.rank(), [&](auto perm) {
    for (std::size_t i = 0; i < order.size(); ++i) cand[i] = q[perm(order[i].bits())];
    if (cand > best) {
      best = cand;
      for (std::uint32_t j = 0; j < q.size(); ++j) best_full[j] = q[perm(j)];
    }
    return true;
  });
  return DiagonalRep(rep.rank(), std::move(best_full));
}

DiagonalRep parse_rep(std::string_view text, int k, bool with_q0) {
  check_rank(k);
  std::vector<Multiplicity> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    Multiplicity v = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size())
      throw UsageError("malformed multiplicity '" + std::string(field) + "' in representation");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  const std::size_t expected = (std::size_t{1} << k) - (with_q0 ? 0 : 1);
  if (values.size() != expected)
    throw UsageError("representation for k=" + std::to_string(k) + " needs " + std::to_string(expected) +
                     " multiplicities, got " + std::to_string(values.size()));
  Multiplicity q0 = 0;
  std::span<const Multiplicity> display(values);
  if (with_q0) {
    q0 = values.front();
    display = display.subspan(1);
  }
  return DiagonalRep::from_display(k, display, q0);
}

std::string format_rep(const DiagonalRep& rep, bool with_q0) {
  std::string s;
  if (with_q0) s = std::to_string(rep[0]);
  for (Multiplicity v : rep.display()) {
    if (!s.empty()) s += ',';
    s += std::to_string(v);
  }
  return s;
}

std::string format_bracket(const DiagonalRep& rep) { return "[" + format_rep(rep) + "]"; }

}  // namespace isoflat
