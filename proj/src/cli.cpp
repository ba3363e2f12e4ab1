#include "isoflat/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "isoflat/bgf.hpp"
#include "isoflat/bieberbach.hpp"
#include "isoflat/cohomology.hpp"
#include "isoflat/errors.hpp"
#include "isoflat/flip.hpp"
#include "isoflat/search.hpp"

namespace isoflat {

namespace {

int default_workers() {
  const char* env = std::getenv("ISOFLAT_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int w = std::stoi(env);
    if (w < 0) throw std::invalid_argument("negative");
    return w;
  } catch (const std::exception&) {
    throw UsageError(std::string("ISOFLAT_WORKERS must be a non-negative integer, got '") + env + "'");
  }
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep = " ") {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

// "13" -> chi_13 as a group element f_13.
CharMask parse_element(const std::string& text, int k) {
  if (text.empty()) throw UsageError("empty group element");
  std::uint32_t bits = 0;
  for (char c : text) {
    if (c < '1' || c > '9' || c - '0' > k) throw UsageError("bad group element '" + text + "' for k=" + std::to_string(k));
    const std::uint32_t bit = 1u << (c - '1');
    if (bits & bit) throw UsageError("repeated index in group element '" + text + "'");
    bits |= bit;
  }
  return CharMask(bits, k);
}

std::string pattern_line(const Pattern& p) {
  std::string s;
  for (std::size_t i = 0; i < p.counts.size(); ++i)
    if (p.counts[i] != 0) s += (s.empty() ? "" : " ") + std::string("c_") + std::to_string(i) + "=" + std::to_string(p.counts[i]);
  return s;
}

std::string sunada_line(const SunadaTable& t, int n) {
  std::string s;
  for (auto it = t.entries.rbegin(); it != t.entries.rend(); ++it) {
    const auto& [st, count] = *it;
    if (st == std::pair{n, 0} && count == 1) continue;
    s += (s.empty() ? "" : " ") + std::string("c_{") + std::to_string(st.first) + "," + std::to_string(st.second) +
         "}=" + std::to_string(count);
  }
  return s.empty() ? "(identity only)" : s;
}

std::string rational_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct Options {
  int k = 0;
  int n = 0;
  int n_max = 0;
  int min_family_size = 2;
  int workers = -1;
  int id = 0;
  int j = 0;
  std::uint64_t budget = 100'000'000;
  std::string format = "table";
  std::string placement = "sunada";
  std::string rep, rep_a, rep_b, pair, out, file_a, file_b;
  bool with_q0 = false;
  bool wide = false;
  bool coverage = false;
};

void describe_group(std::ostream& out, const std::string& name, const BieberbachGroup& g) {
  const TorsionCheck tc = is_torsion_free(g);
  out << name << ": k=" << g.rank() << " n=" << g.dimension() << " rep " << format_bracket(g.rep());
  if (g.rep()[0] != 0) out << " q0=" << g.rep()[0];
  out << '\n' << "  torsion-free: ";
  if (tc.torsion_free)
    out << "yes\n";
  else
    out << "no (element B_" << CharMask(*tc.witness, g.rank()).label() << " fixes no half-translated coordinate)\n";
  out << "  Sunada numbers: " << sunada_line(sunada_table(g), g.dimension()) << '\n';
}

void cmd_enumerate(const Options& o, std::ostream& out) {
  SearchConfig cfg;
  cfg.k = o.k;
  cfg.n_min = o.n;
  cfg.n_max = o.n_max > 0 ? o.n_max : o.n;
  cfg.min_family_size = o.min_family_size;
  cfg.workers = o.workers >= 0 ? o.workers : default_workers();
  cfg.budget = o.budget;
  const auto families = enumerate_families(cfg);
  if (o.format == "csv")
    out << to_csv(cfg, families);
  else if (o.format == "json")
    out << to_json(cfg, families);
  else
    out << render_table(cfg, families);
  if (o.coverage) {
    out << "\nflip coverage:\n";
    for (const FamilyFlipCoverage& c : flip_coverage_report(families)) {
      out << "  F(" << cfg.k << "," << c.n << ")_" << c.family_index << ": "
          << (c.fully_connected() ? "every ordered pair linked by one flip" : "not all pairs linked by one flip");
      std::size_t linked = 0;
      for (const FlipLink& l : c.links) linked += l.via.has_value();
      out << " (" << linked << "/" << c.links.size() << ")\n";
    }
  }
}

void cmd_analyze(const Options& o, std::ostream& out) {
  const DiagonalRep rep = parse_rep(o.rep, o.k, o.with_q0);
  const int n = rep.dimension();
  out << "rep " << format_bracket(rep) << "  k=" << rep.rank() << " n=" << n;
  if (rep[0] != 0) out << " q0=" << rep[0];
  out << '\n';
  const auto dims = fixed_dims(rep);
  out << "n_B:";
  for (CharMask c : display_order(rep.rank())) out << " B_" << c.label() << "=" << dims[c.bits()];
  out << '\n';
  out << "pattern: " << pattern_line(pattern(rep)) << '\n';
  out << "faithful: " << (is_faithful(rep) ? "yes" : "no") << '\n';
  out << "contains -Id: " << (contains_minus_identity(rep) ? "yes" : "no") << '\n';
  out << "betti: " << join(betti_numbers(rep)) << '\n';
  out << "primitive counts: " << join(primitive_counts(rep)) << '\n';
  out << "minimal generators: " << minimal_generator_count(rep) << '\n';
  out << "orientable: " << (is_orientable(rep) ? "yes" : "no") << '\n';
  out << "kahler class: " << to_string(kahler_class(rep)) << '\n';
  if (n % 2 == 0) out << "kahler obstruction: " << (kahler_obstruction(rep) ? "yes" : "no") << '\n';
}

void cmd_flip(const Options& o, std::ostream& out) {
  const DiagonalRep rep = parse_rep(o.rep, o.k, o.with_q0);
  FlipSpec spec = FlipSpec::standard(rep.rank());
  if (!o.pair.empty()) {
    const auto comma = o.pair.find(',');
    if (comma == std::string::npos) throw UsageError("--pair expects G1,G2, e.g. 1,2");
    spec = {parse_element(o.pair.substr(0, comma), rep.rank()), parse_element(o.pair.substr(comma + 1), rep.rank())};
  }
  validate(spec, rep.rank());
  const FlipOutcome res = apply_flip(rep, spec);
  out << "pair: f_" << spec.first.label() << ", f_" << spec.second.label() << '\n';
  if (!res.applicable()) {
    if (*res.failure == FlipFailure::non_integer_shift)
      out << "inapplicable: u = " << rational_string(res.shift) << '\n';
    else
      out << "inapplicable: negative multiplicity (u = " << rational_string(res.shift) << ")\n";
    return;
  }
  const DiagonalRep& flipped = *res.flipped;
  out << "u = " << rational_string(res.shift) << '\n';
  out << "flipped: " << format_bracket(flipped) << '\n';
  out << "almost-conjugate: " << (verify_almost_conjugate(rep, flipped) ? "yes" : "no") << '\n';
  out << "equivalent to input: " << (are_equivalent(rep, flipped) ? "yes" : "no") << '\n';
}

void cmd_build_main(const Options& o, std::ostream& out) {
  const MainPair pair = construct_main_pair(o.k, o.n);
  const std::string a = o.out + "-gamma.bgf", b = o.out + "-gammaprime.bgf";
  describe_group(out, "Gamma", pair.gamma);
  describe_group(out, "Gamma'", pair.gamma_prime);
  out << "Sunada isospectral: " << (is_sunada_isospectral(pair.gamma, pair.gamma_prime) ? "yes" : "no") << '\n';
  write_bgf_file(a, pair.gamma);
  write_bgf_file(b, pair.gamma_prime);
  out << "wrote " << a << '\n' << "wrote " << b << '\n';
}

void cmd_build_24(const Options& o, std::ostream& out) {
  const BieberbachGroup g = construct_family24(
      o.j, o.placement == "columns" ? Family24Placement::columns : Family24Placement::sunada);
  describe_group(out, "Gamma_" + std::to_string(o.j), g);
  write_bgf_file(o.out, g);
  out << "wrote " << o.out << '\n';
}

void cmd_find_translations(const Options& o, std::ostream& out) {
  const DiagonalRep rep = parse_rep(o.rep, o.k, o.with_q0);
  const auto g = find_translations(rep, o.wide);
  if (!g) {
    out << "no torsion-free choice of translations" << (o.wide ? "" : " (try --wide-search)") << '\n';
    return;
  }
  out << render_columns(*g);
  describe_group(out, "group", *g);
  write_bgf_file(o.out, *g);
  out << "wrote " << o.out << '\n';
}

void ring_comparison(std::ostream& out, const DiagonalRep& a, const DiagonalRep& b) {
  const auto pa = primitive_counts(a), pb = primitive_counts(b);
  const auto ba = betti_numbers(a), bb = betti_numbers(b);
  const std::size_t top = std::max(pa.size(), pb.size());
  out << std::setw(4) << "p" << std::setw(10) << "P(a)" << std::setw(10) << "P(b)" << std::setw(12) << "beta(a)"
      << std::setw(12) << "beta(b)" << '\n';
  auto at = [](const std::vector<std::uint64_t>& v, std::size_t p) { return p < v.size() ? v[p] : 0; };
  for (std::size_t p = 0; p < top; ++p)
    out << std::setw(4) << p << std::setw(10) << at(pa, p) << std::setw(10) << at(pb, p) << std::setw(12) << at(ba, p)
        << std::setw(12) << at(bb, p) << '\n';
  const std::uint64_t sa = std::accumulate(pa.begin(), pa.end(), std::uint64_t{0});
  const std::uint64_t sb = std::accumulate(pb.begin(), pb.end(), std::uint64_t{0});
  out << "verdict: ";
  if (ba != bb)
    out << "not isomorphic (Betti numbers differ)\n";
  else if (sa != sb)
    out << "not isomorphic (ΣP differs: " << sa << " vs " << sb << ")\n";
  else
    out << "indistinguishable by P-counts (ΣP = " << sa << ")\n";
}

void cmd_verify(const Options& o, std::ostream& out) {
  const BieberbachGroup a = read_bgf_file(o.file_a);
  const BieberbachGroup b = read_bgf_file(o.file_b);
  describe_group(out, "a", a);
  describe_group(out, "b", b);
  if (a.dimension() != b.dimension()) {
    out << "Sunada isospectral: no (dimensions differ)\n";
    return;
  }
  out << "Sunada isospectral: " << (is_sunada_isospectral(a, b) ? "yes" : "no") << '\n';
  if (a.rank() != b.rank()) {
    out << "ring comparison skipped (holonomy ranks differ)\n";
    return;
  }
  ring_comparison(out, a.rep(), b.rep());
}

void cmd_tables(const Options& o, std::ostream& out) {
  SearchConfig cfg = table_config(o.id);
  cfg.workers = o.workers >= 0 ? o.workers : default_workers();
  const auto families = enumerate_families(cfg);
  if (o.format == "csv")
    out << to_csv(cfg, families);
  else if (o.format == "json")
    out << to_json(cfg, families);
  else
    out << render_table(cfg, families);
}

void cmd_compare_rings(const Options& o, std::ostream& out) {
  const DiagonalRep a = parse_rep(o.rep_a, o.k, o.with_q0);
  const DiagonalRep b = parse_rep(o.rep_b, o.k, o.with_q0);
  out << "a " << format_bracket(a) << "  b " << format_bracket(b) << '\n';
  ring_comparison(out, a, b);
}

std::string first_line(std::string s) {
  const auto nl = s.find('\n');
  if (nl != std::string::npos) s.resize(nl);
  return s;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Isospectral flat manifolds of diagonal type", "isoflat"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"table", "csv", "json"});

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate families of almost-conjugate representations");
  enumerate->add_option("--k", o.k, "Rank of the holonomy group")->required()->check(CLI::Range(1, 5));
  enumerate->add_option("--n", o.n, "Dimension (lower bound when --n-max is given)")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--n-max", o.n_max, "Upper dimension bound")->check(CLI::PositiveNumber);
  enumerate->add_option("--min-family-size", o.min_family_size, "Smallest family reported")->check(CLI::PositiveNumber);
  enumerate->add_option("--format", o.format, "Output format")->check(formats);
  enumerate->add_option("--workers", o.workers, "Worker threads (0 = all cores; default from ISOFLAT_WORKERS)")
      ->check(CLI::NonNegativeNumber);
  enumerate->add_option("--budget", o.budget, "Maximum number of compositions examined");
  enumerate->add_flag("--flip-coverage", o.coverage, "Report which members are linked by a single flip");

  auto* analyze = app.add_subcommand("analyze", "Invariants of one representation");
  analyze->add_option("--k", o.k, "Rank")->required()->check(CLI::Range(1, kMaxRank));
  analyze->add_option("--rep", o.rep, "Multiplicities in display order")->required();
  analyze->add_flag("--with-q0", o.with_q0, "The first multiplicity is q_0");

  auto* flip = app.add_subcommand("flip", "Flip a representation");
  flip->add_option("--k", o.k, "Rank")->required()->check(CLI::Range(2, kMaxRank));
  flip->add_option("--rep", o.rep, "Multiplicities in display order")->required();
  flip->add_option("--pair", o.pair, "Group elements G1,G2 as index strings, e.g. 1,23 (default 1,2)");
  flip->add_flag("--with-q0", o.with_q0, "The first multiplicity is q_0");

  auto* build_main = app.add_subcommand("build-main", "Build the isospectral pair Gamma, Gamma'");
  build_main->add_option("--k", o.k, "Rank (>= 3)")->required();
  build_main->add_option("--n", o.n, "Dimension (>= 3*2^(k-2)+1)")->required();
  build_main->add_option("--out", o.out, "Output prefix")->required();

  auto* build_24 = app.add_subcommand("build-24", "Build one of the eight 24-dimensional groups");
  build_24->add_option("--j", o.j, "Index 1..8")->required()->check(CLI::Range(1, 8));
  build_24->add_option("--out", o.out, "Output BGF file")->required();
  build_24->add_option("--placement", o.placement, "Translation placement: sunada or columns")
      ->check(CLI::IsMember({"sunada", "columns"}));

  auto* find = app.add_subcommand("find-translations", "Search translations making a torsion-free group");
  find->add_option("--k", o.k, "Rank")->required()->check(CLI::Range(1, kMaxRank));
  find->add_option("--rep", o.rep, "Multiplicities in display order")->required();
  find->add_flag("--wide-search", o.wide, "Allow more than two halves per generator and block");
  find->add_flag("--with-q0", o.with_q0, "The first multiplicity is q_0");
  find->add_option("--out", o.out, "Output BGF file")->required();

  auto* verify = app.add_subcommand("verify", "Check two BGF groups for torsion, isospectrality and ring obstructions");
  verify->add_option("--a", o.file_a, "First BGF file")->required();
  verify->add_option("--b", o.file_b, "Second BGF file")->required();

  auto* tables = app.add_subcommand("tables", "Reproduce one of the published family tables");
  tables->add_option("--id", o.id, "Table id: 1, 2 or 3")->required()->check(CLI::Range(1, 3));
  tables->add_option("--format", o.format, "Output format")->check(formats);
  tables->add_option("--workers", o.workers, "Worker threads")->check(CLI::NonNegativeNumber);

  auto* compare = app.add_subcommand("compare-rings", "Compare primitive counts and Betti numbers");
  compare->add_option("--k", o.k, "Rank")->required()->check(CLI::Range(1, kMaxRank));
  compare->add_option("--rep-a", o.rep_a, "First representation")->required();
  compare->add_option("--rep-b", o.rep_b, "Second representation")->required();
  compare->add_flag("--with-q0", o.with_q0, "The first multiplicity is q_0");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "isoflat: " << first_line(e.what()) << '\n';
    return 2;
  }

  std::ostringstream buffer;
  try {
    if (enumerate->parsed()) cmd_enumerate(o, buffer);
    else if (analyze->parsed()) cmd_analyze(o, buffer);
    else if (flip->parsed()) cmd_flip(o, buffer);
    else if (build_main->parsed()) cmd_build_main(o, buffer);
    else if (build_24->parsed()) cmd_build_24(o, buffer);
    else if (find->parsed()) cmd_find_translations(o, buffer);
    else if (verify->parsed()) cmd_verify(o, buffer);
    else if (tables->parsed()) cmd_tables(o, buffer);
    else if (compare->parsed()) cmd_compare_rings(o, buffer);
  } catch (const UsageError& e) {
    err << "isoflat: " << first_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "isoflat: " << first_line(e.what()) << '\n';
    return 1;
  }
  out << buffer.str();
  return 0;
}

}  // namespace isoflat
