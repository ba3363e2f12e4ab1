#include <map>
#include <sstream>

#include <json.hpp>

#include "isoflat/cohomology.hpp"
#include "isoflat/errors.hpp"
#include "isoflat/search.hpp"

namespace isoflat {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::uint64_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::uint64_t prim_at(const FamilyMember& m, int p) {
  return p < static_cast<int>(m.prim.size()) ? m.prim[static_cast<std::size_t>(p)] : 0;
}

}  // namespace

std::string render_table(const SearchConfig& cfg, const std::vector<Family>& families) {
  std::ostringstream out;
  out << "k=" << cfg.k << "  n=" << cfg.n_min;
  if (cfg.n_max != cfg.n_min) out << ".." << cfg.n_max;
  out << "  families with at least " << cfg.min_family_size << " members\n";
  out << "characters:";
  for (CharMask c : display_order(cfg.k)) out << ' ' << c.label();
  out << '\n';

  std::map<int, int> index_in_n;
  int current_n = -1;
  for (const Family& fam : families) {
    if (fam.n != current_n) {
      current_n = fam.n;
      out << "\nn=" << fam.n << '\n';
    }
    const std::string name = "F(" + std::to_string(cfg.k) + "," + std::to_string(fam.n) + ")_" +
                             std::to_string(++index_in_n[fam.n]);
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      const FamilyMember& m = fam.members[i];
      std::string head = i == 0 ? name : "";
      head.resize(std::max<std::size_t>(name.size(), 12), ' ');
      std::string bracket = format_bracket(m.display);
      bracket.resize(std::max<std::size_t>(bracket.size(), 2 * display_order(cfg.k).size() + 3), ' ');
      out << head << "  " << bracket;
      for (int p = 4; p <= cfg.k + 1; ++p) out << "  P" << p << '=' << prim_at(m, p);
      out << '\n';
    }
  }
  if (families.empty()) out << "\n(no families)\n";
  return out.str();
}

std::string to_csv(const SearchConfig& cfg, const std::vector<Family>& families) {
  std::ostringstream out;
  out << "k,n,family";
  for (CharMask c : display_order(cfg.k)) out << ",q" << c.label();
  for (int p = 2; p <= cfg.k + 1; ++p) out << ",P" << p;
  out << ",betti\n";
  std::map<int, int> index_in_n;
  for (const Family& fam : families) {
    const int id = ++index_in_n[fam.n];
    for (const FamilyMember& m : fam.members) {
      out << cfg.k << ',' << fam.n << ',' << id;
      for (Multiplicity v : m.display.display()) out << ',' << v;
      for (int p = 2; p <= cfg.k + 1; ++p) out << ',' << prim_at(m, p);
      out << ',' << join(m.betti, ' ') << '\n';
    }
  }
  return out.str();
}

std::string to_json(const SearchConfig& cfg, const std::vector<Family>& families) {
  json doc;
  doc["k"] = cfg.k;
  doc["n"] = cfg.n_min;
  doc["n_max"] = cfg.n_max;
  doc["filters"] = {{"require_faithful", cfg.require_faithful},
                    {"forbid_minus_id", cfg.forbid_minus_id},
                    {"require_q0_zero", cfg.require_q0_zero},
                    {"min_family_size", cfg.min_family_size}};
  json fams = json::array();
  for (const Family& fam : families) {
    json members = json::array();
    for (const FamilyMember& m : fam.members) {
      std::vector<Multiplicity> q{m.display[0]};
      for (Multiplicity v : m.display.display()) q.push_back(v);
      members.push_back({{"q", q}, {"prim", m.prim}, {"betti", m.betti}});
    }
    fams.push_back({{"n", fam.n}, {"pattern", fam.pattern.counts}, {"members", members}});
  }
  doc["families"] = fams;
  return doc.dump(1) + "\n";
}

SearchReport families_from_json(std::string_view text) {
  SearchReport report;
  try {
    const json doc = json::parse(text);
    SearchConfig& cfg = report.config;
    cfg.k = doc.at("k").get<int>();
    cfg.n_min = doc.at("n").get<int>();
    cfg.n_max = doc.at("n_max").get<int>();
    const json& f = doc.at("filters");
    cfg.require_faithful = f.at("require_faithful").get<bool>();
    cfg.forbid_minus_id = f.at("forbid_minus_id").get<bool>();
    cfg.require_q0_zero = f.at("require_q0_zero").get<bool>();
    cfg.min_family_size = f.at("min_family_size").get<int>();
    for (const json& jf : doc.at("families")) {
      Family fam;
      fam.n = jf.at("n").get<int>();
      fam.pattern.counts = jf.at("pattern").get<std::vector<std::uint32_t>>();
      for (const json& jm : jf.at("members")) {
        const auto q = jm.at("q").get<std::vector<Multiplicity>>();
        if (q.empty()) throw UsageError("member with empty q");
        const std::span<const Multiplicity> display(q.data() + 1, q.size() - 1);
        FamilyMember m = make_member(DiagonalRep::from_display(cfg.k, display, q.front()));
        if (m.prim != jm.at("prim").get<std::vector<std::uint64_t>>() ||
            m.betti != jm.at("betti").get<std::vector<std::uint64_t>>())
          throw UsageError("stored annotations disagree with the representation " + format_bracket(m.display));
        if (pattern(m.canonical) != fam.pattern)
          throw UsageError("stored pattern disagrees with member " + format_bracket(m.display));
        fam.members.push_back(std::move(m));
      }
      report.families.push_back(std::move(fam));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed search JSON: ") + e.what());
  }
  return report;
}

}  // namespace isoflat
