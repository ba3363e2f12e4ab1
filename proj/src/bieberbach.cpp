#include "isoflat/bieberbach.hpp"

#include <array>
#include <sstream>

#include "isoflat/errors.hpp"
#include "isoflat/flip.hpp"

namespace isoflat {

namespace {

bool odd_pairing(std::uint32_t a, std::uint32_t b) { return std::popcount(a & b) & 1; }

std::size_t block_start(const CoordinateLayout& layout, std::uint32_t chi) {
  for (std::size_t j = 0; j < layout.size(); ++j)
    if (layout[j].bits() == chi) return j;
  throw std::logic_error("character block missing from layout");
}

DiagonalRep rep_of(int k, const CoordinateLayout& layout) {
  std::vector<Multiplicity> q(std::size_t{1} << k, 0);
  for (CharMask c : layout) ++q[c.bits()];
  return DiagonalRep(k, std::move(q));
}

}  // namespace

HalfVector::HalfVector(std::vector<std::uint8_t> v) : numerators(std::move(v)) {
  for (std::uint8_t x : numerators)
    if (x > 1) throw UsageError("translation numerators must be 0 or 1");
}

std::vector<HalfVector> derive_element_translations(int k, const std::vector<HalfVector>& gens) {
  if (static_cast<int>(gens.size()) != k)
    throw UsageError("expected " + std::to_string(k) + " generator translations");
  const std::size_t n = gens.empty() ? 0 : gens.front().size();
  std::vector<HalfVector> out(std::size_t{1} << k, HalfVector(n));
  for (std::uint32_t m = 1; m < out.size(); ++m) {
    const int low = std::countr_zero(m);
    const HalfVector& rest = out[m & (m - 1)];
    const HalfVector& gen = gens[static_cast<std::size_t>(low)];
    for (std::size_t j = 0; j < n; ++j) out[m].numerators[j] = rest.numerators[j] ^ gen.numerators[j];
  }
  return out;
}

BieberbachGroup::BieberbachGroup(int k, CoordinateLayout layout, std::vector<HalfVector> gens)
    : k_(k), layout_(std::move(layout)), gens_(std::move(gens)) {
  if (k < 1 || k > kMaxRank) throw UsageError("rank k outside 1..16");
  if (layout_.empty()) throw UsageError("group dimension must be positive");
  for (CharMask c : layout_)
    if (c.rank() != k) throw UsageError("coordinate character rank does not match k");
  if (static_cast<int>(gens_.size()) != k)
    throw UsageError("expected " + std::to_string(k) + " generator translations, got " + std::to_string(gens_.size()));
  for (const HalfVector& b : gens_)
    if (b.size() != layout_.size()) throw UsageError("translation length does not match dimension");
  element_translations_ = derive_element_translations(k, gens_);
  rep_ = rep_of(k, layout_);
}

int BieberbachGroup::sign(std::uint32_t element, std::size_t j) const {
  return odd_pairing(layout_[j].bits(), element) ? -1 : 1;
}

int half_fixed_count(const BieberbachGroup& g, std::uint32_t element) {
  const HalfVector& b = g.translation(element);
  int count = 0;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (g.sign(element, j) == 1 && b.is_half(j)) ++count;
  return count;
}

TorsionCheck is_torsion_free(const BieberbachGroup& g) {
  for (std::uint32_t m = 1; m < (1u << g.rank()); ++m)
    if (half_fixed_count(g, m) == 0) return {false, m};
  return {true, std::nullopt};
}

Pattern SunadaTable::marginal(int n) const {
  Pattern p;
  p.counts.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [st, count] : entries) p.counts[static_cast<std::size_t>(st.first)] += count;
  return p;
}

SunadaTable sunada_table(const BieberbachGroup& g) {
  SunadaTable t;
  const auto dims = fixed_dims(g.rep());
  for (std::uint32_t m = 0; m < (1u << g.rank()); ++m) ++t.entries[{dims[m], half_fixed_count(g, m)}];
  return t;
}

bool is_sunada_isospectral(const BieberbachGroup& a, const BieberbachGroup& b) {
  if (a.dimension() != b.dimension())
    throw UsageError("groups have different dimension (" + std::to_string(a.dimension()) + " vs " +
                     std::to_string(b.dimension()) + ")");
  return sunada_table(a) == sunada_table(b);
}

namespace {

// b_1 = e_{l1}/2, b_2 = (e_{l2} + e_{l2~})/2, b_m = e_{l_m}/2 with l1, l2, l2~
// the first coordinates of the chi_2, chi_23, chi_3 blocks and l_m the
// (m-2)-th coordinate of the chi_1 block.
BieberbachGroup main_group(const DiagonalRep& rep) {
  const int k = rep.rank();
  CoordinateLayout layout = coordinate_layout(rep, CharacterOrder::lexicographic);
  const std::size_t n = layout.size();
  std::vector<HalfVector> gens(static_cast<std::size_t>(k), HalfVector(n));
  gens[0].set_half(block_start(layout, 0b010));
  gens[1].set_half(block_start(layout, 0b110));
  gens[1].set_half(block_start(layout, 0b100));
  const std::size_t chi1 = block_start(layout, 0b001);
  for (int m = 3; m <= k; ++m) gens[static_cast<std::size_t>(m - 1)].set_half(chi1 + static_cast<std::size_t>(m - 3));
  return BieberbachGroup(k, std::move(layout), std::move(gens));
}

}  // namespace

MainPair construct_main_pair(int k, int n) {
  if (k < 3 || k > kMaxRank) throw UsageError("main construction needs 3 <= k <= 16");
  const std::int64_t quarter = std::int64_t{1} << (k - 2);
  if (n < 3 * quarter + 1)
    throw UsageError("main construction needs n >= " + std::to_string(3 * quarter + 1) + " for k=" + std::to_string(k));
  if (n > kMaxCohomologyDim) throw CapabilityError("main construction is limited to n <= 62");
  std::vector<Multiplicity> q(std::size_t{1} << k, 0);
  q[0b001] = static_cast<Multiplicity>(quarter);
  for (std::uint32_t m = 0; m < q.size(); ++m)
    if ((m & 0b011) == 0b010) q[m] = 2;
  q[0b100] = static_cast<Multiplicity>(n - 3 * quarter);
  const DiagonalRep rho(k, std::move(q));
  const FlipOutcome flipped = apply_flip(rho, FlipSpec::standard(k));
  if (!flipped.applicable()) throw std::logic_error("main construction flip is not applicable");
  return {main_group(rho), main_group(*flipped.flipped)};
}

DiagonalRep family24_rep(int j) {
  static constexpr std::array<std::array<Multiplicity, 7>, 8> kReps{{
      {10, 6, 3, 2, 1, 1, 1},
      {10, 6, 2, 2, 2, 2, 0},
      {10, 5, 4, 3, 0, 1, 1},
      {10, 4, 4, 4, 0, 2, 0},
      {9, 7, 4, 2, 1, 1, 0},
      {9, 6, 5, 3, 0, 1, 0},
      {8, 8, 4, 2, 2, 0, 0},
      {8, 6, 6, 4, 0, 0, 0},
  }};
  if (j < 1 || j > 8) throw UsageError("family index j must be in 1..8");
  return DiagonalRep::from_display(3, kReps[static_cast<std::size_t>(j - 1)]);
}

BieberbachGroup construct_family24(int j, Family24Placement placement) {
  const DiagonalRep rep = family24_rep(j);
  CoordinateLayout layout = coordinate_layout(rep, CharacterOrder::display);
  std::vector<HalfVector> gens(3, HalfVector(layout.size()));
  // Column placement: halves only on the first coordinate of a block.
  gens[0].set_half(block_start(layout, 0b100));
  gens[0].set_half(block_start(layout, 0b011));
  gens[1].set_half(block_start(layout, 0b100));
  gens[2].set_half(block_start(layout, 0b001));
  gens[2].set_half(block_start(layout, 0b010));
  if (placement == Family24Placement::sunada) {
    // Extra halves raising n_{B,1/2} to 2 on the elements with n_B in {10, 12}.
    // Entry: block character, row inside the block, generator bits.
    struct Extra {
      std::uint32_t block;
      std::size_t row;
      std::uint32_t generators;
    };
    static const std::array<std::vector<Extra>, 8> kExtras{{
        {{0b010, 0, 0b001}, {0b111, 0, 0b100}},
        {{0b110, 0, 0b011}},
        {{0b010, 0, 0b001}, {0b111, 0, 0b100}},
        {{0b110, 0, 0b011}},
        {{0b110, 0, 0b011}},
        {{0b110, 0, 0b011}},
        {{0b010, 1, 0b001}},
        {{0b100, 1, 0b001}},
    }};
    for (const Extra& e : kExtras[static_cast<std::size_t>(j - 1)])
      for (int i = 0; i < 3; ++i)
        if ((e.generators >> i) & 1u) gens[static_cast<std::size_t>(i)].set_half(block_start(layout, e.block) + e.row);
  }
  return BieberbachGroup(3, std::move(layout), std::move(gens));
}

namespace {

// Coordinate j with character psi and translation column v (v_i = 2 b_i[j])
// makes element I torsion-free iff <psi, I> is even and <v, I> is odd.
struct TranslationSearch {
  int k;
  bool wide;
  std::vector<std::uint32_t> blocks;       // supported characters, display order
  std::vector<Multiplicity> capacity;      // q per block
  std::vector<std::vector<std::uint32_t>> chosen;
  std::vector<std::array<int, kMaxRank>> per_generator;
  std::vector<int> cover;                  // cover count per element
  std::uint64_t nodes = 0;

  static constexpr std::uint64_t kNodeBudget = 50'000'000;

  bool solve() {
    if (++nodes > kNodeBudget) throw CapabilityError("translation search exceeded its node budget");
    std::uint32_t target = 0;
    for (std::uint32_t m = 1; m < cover.size(); ++m)
      if (cover[m] == 0) {
        target = m;
        break;
      }
    if (target == 0) return true;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (odd_pairing(blocks[b], target) || chosen[b].size() >= capacity[b]) continue;
      for (std::uint32_t v = 1; v < cover.size(); ++v) {
        if (!odd_pairing(v, target) || !admissible(b, v)) continue;
        place(b, v, +1);
        if (solve()) return true;
        place(b, v, -1);
      }
    }
    return false;
  }

  bool admissible(std::size_t b, std::uint32_t v) const {
    if (std::find(chosen[b].begin(), chosen[b].end(), v) != chosen[b].end()) return false;
    if (wide) return true;
    for (int i = 0; i < k; ++i)
      if (((v >> i) & 1u) && per_generator[b][static_cast<std::size_t>(i)] >= 2) return false;
    return true;
  }

  void place(std::size_t b, std::uint32_t v, int delta) {
    if (delta > 0)
      chosen[b].push_back(v);
    else
      chosen[b].pop_back();
    for (int i = 0; i < k; ++i)
      if ((v >> i) & 1u) per_generator[b][static_cast<std::size_t>(i)] += delta;
    for (std::uint32_t m = 1; m < cover.size(); ++m)
      if (!odd_pairing(blocks[b], m) && odd_pairing(v, m)) cover[m] += delta;
  }
};

}  // namespace

std::optional<BieberbachGroup> find_translations(const DiagonalRep& rep, bool wide) {
  if (!is_faithful(rep)) throw UsageError("find_translations needs a faithful representation");
  const int k = rep.rank();
  TranslationSearch s{k, wide, {}, {}, {}, {}, std::vector<int>(rep.size(), 0)};
  for (CharMask c : character_order(k, CharacterOrder::display))
    if (rep[c.bits()] > 0) {
      s.blocks.push_back(c.bits());
      s.capacity.push_back(rep[c.bits()]);
    }
  s.chosen.resize(s.blocks.size());
  s.per_generator.assign(s.blocks.size(), {});
  if (!s.solve()) return std::nullopt;

  CoordinateLayout layout = coordinate_layout(rep, CharacterOrder::display);
  std::vector<HalfVector> gens(static_cast<std::size_t>(k), HalfVector(layout.size()));
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    std::vector<std::uint32_t> vs = s.chosen[b];
    std::sort(vs.begin(), vs.end());
    std::size_t j = block_start(layout, s.blocks[b]);
    for (std::uint32_t v : vs) {
      for (int i = 0; i < k; ++i)
        if ((v >> i) & 1u) gens[static_cast<std::size_t>(i)].set_half(j);
      ++j;
    }
  }
  BieberbachGroup g(k, std::move(layout), std::move(gens));
  if (!is_torsion_free(g).torsion_free) throw std::logic_error("translation search produced torsion");
  return g;
}

std::string render_columns(const BieberbachGroup& g) {
  const int n = g.dimension();
  std::size_t label_width = 0;
  for (CharMask c : g.layout()) label_width = std::max(label_width, c.label().size() + 5);
  const int coord_width = static_cast<int>(std::to_string(n).size());
  std::ostringstream out;
  out << std::string(label_width, ' ') << std::string(static_cast<std::size_t>(coord_width), ' ');
  for (int i = 1; i <= g.rank(); ++i) {
    const std::string head = "B" + std::to_string(i);
    out << "  " << head << std::string(head.size() < 5 ? 5 - head.size() : 0, ' ');
  }
  out << '\n';
  for (std::size_t j = 0; j < g.layout().size(); ++j) {
    std::string label = "chi_" + g.layout()[j].label();
    label.resize(label_width, ' ');
    std::string coord = std::to_string(j + 1);
    out << label << std::string(static_cast<std::size_t>(coord_width) - coord.size(), ' ') << coord;
    for (int i = 0; i < g.rank(); ++i) {
      const bool neg = g.sign(1u << i, j) < 0;
      const bool half = g.generators()[static_cast<std::size_t>(i)].is_half(j);
      out << "  " << (neg ? "-1" : " 1") << (half ? "½  " : "   ");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace isoflat
