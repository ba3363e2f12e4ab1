#pragma once
//
// Exhaustive search for families of almost-conjugate, pairwise inequivalent
// diagonal representations of Z_2^k.
//
// Every composition of n over the allowed characters is filtered, reduced to
// its orbit-minimal form under GL_k(F_2), and grouped by Pattern. Output is
// sorted independently of the worker schedule.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoflat/diagrep.hpp"
#include "isoflat/flip.hpp"

namespace isoflat {

struct SearchConfig {
  int k = 3;
  int n_min = 7;
  int n_max = 7;
  bool require_faithful = true;
  bool forbid_minus_id = true;
  bool require_q0_zero = true;
  int min_family_size = 2;
  // 0 selects std::thread::hardware_concurrency().
  int workers = 0;
  // Largest total number of compositions examined.
  std::uint64_t budget = 100'000'000;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct FamilyMember {
  DiagonalRep canonical;  // orbit-minimal form, numeric order
  DiagonalRep display;    // orbit member with the largest display-order vector
  std::vector<std::uint64_t> prim;
  std::vector<std::uint64_t> betti;

  friend bool operator==(const FamilyMember&, const FamilyMember&) = default;
};

struct Family {
  int n = 0;
  Pattern pattern;
  std::vector<FamilyMember> members;

  friend bool operator==(const Family&, const Family&) = default;
};

struct SearchReport {
  SearchConfig config;
  std::vector<Family> families;
};

// Number of compositions the search would examine for `cfg`.
std::uint64_t composition_count(const SearchConfig& cfg);

// Families sorted by n, then by descending display vector of the first
// member; members sorted by descending display vector. Throws
// CapabilityError when composition_count exceeds cfg.budget or k > 5.
std::vector<Family> enumerate_families(const SearchConfig& cfg);

FamilyMember make_member(const DiagonalRep& rep);

// Configurations behind the three published tables.
SearchConfig table_config(int id);

struct TableResult {
  int id = 0;
  SearchConfig config;
  std::vector<Family> families;
  std::string rendered;
};

TableResult reproduce_table(int id, int workers = 0);

struct FlipLink {
  std::size_t from = 0;
  std::size_t to = 0;
  // First pair (g1, g2) whose flip of `from` is equivalent to `to`.
  std::optional<FlipSpec> via;
};

struct FamilyFlipCoverage {
  int n = 0;
  std::size_t family_index = 0;
  std::vector<FlipLink> links;  // every ordered member pair

  bool fully_connected() const;
};

std::vector<FamilyFlipCoverage> flip_coverage_report(const std::vector<Family>& families);

// Renderers. Representations are printed in display order.
std::string render_table(const SearchConfig& cfg, const std::vector<Family>& families);
std::string to_csv(const SearchConfig& cfg, const std::vector<Family>& families);
std::string to_json(const SearchConfig& cfg, const std::vector<Family>& families);
// Inverse of to_json; annotations are recomputed and must match the file.
SearchReport families_from_json(std::string_view text);

}  // namespace isoflat
