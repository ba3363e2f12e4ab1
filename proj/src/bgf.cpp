#include "isoflat/bgf.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "isoflat/errors.hpp"

namespace isoflat {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw UsageError("BGF line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

int parse_int(std::string_view s, std::size_t line, const char* what) {
  int v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || v < 1) fail(line, std::string("bad ") + what);
  return v;
}

// "<tag> e e e ..." with exactly n single-character entries from `alphabet`.
std::string parse_row(std::string_view row, const std::string& tag, int n, std::string_view alphabet,
                      std::size_t line) {
  if (row.substr(0, tag.size()) != tag) fail(line, "expected '" + tag + "'");
  row.remove_prefix(tag.size());
  if (row.size() != static_cast<std::size_t>(2 * n)) fail(line, "expected " + std::to_string(n) + " entries");
  std::string entries;
  for (int j = 0; j < n; ++j) {
    const char sep = row[static_cast<std::size_t>(2 * j)], e = row[static_cast<std::size_t>(2 * j + 1)];
    if (sep != ' ' || alphabet.find(e) == std::string_view::npos) fail(line, "malformed entry " + std::to_string(j + 1));
    entries += e;
  }
  return entries;
}

}  // namespace

std::string write_bgf(const BieberbachGroup& g) {
  std::ostringstream out;
  out << "BGF1\n"
      << "k=" << g.rank() << " n=" << g.dimension() << '\n';
  for (int i = 0; i < g.rank(); ++i) {
    out << 'B' << i + 1;
    for (std::size_t j = 0; j < g.layout().size(); ++j) out << ' ' << (g.sign(1u << i, j) < 0 ? '-' : '+');
    out << "\nb" << i + 1;
    for (std::uint8_t x : g.generators()[static_cast<std::size_t>(i)].numerators) out << ' ' << int{x};
    out << '\n';
  }
  return out.str();
}

BieberbachGroup parse_bgf(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "BGF1") fail(1, "expected 'BGF1'");
  if (lines.size() < 2) fail(2, "missing header");
  const std::string_view header = lines[1];
  const std::size_t space = header.find(' ');
  if (header.substr(0, 2) != "k=" || space == std::string_view::npos || header.substr(space + 1, 2) != "n=")
    fail(2, "expected 'k=<int> n=<int>'");
  const int k = parse_int(header.substr(2, space - 2), 2, "k");
  const int n = parse_int(header.substr(space + 3), 2, "n");
  if (k > kMaxRank) fail(2, "k exceeds 16");
  if (n > 4096) fail(2, "n too large");

  const std::size_t body_end = 2 + 2 * static_cast<std::size_t>(k);
  if (lines.size() < body_end) fail(lines.size() + 1, "missing generator lines");
  std::vector<std::uint32_t> psi(static_cast<std::size_t>(n), 0);
  std::vector<HalfVector> gens;
  for (int i = 0; i < k; ++i) {
    const std::size_t at = 2 + 2 * static_cast<std::size_t>(i);
    const std::string signs = parse_row(lines[at], "B" + std::to_string(i + 1), n, "+-", at + 1);
    const std::string halves = parse_row(lines[at + 1], "b" + std::to_string(i + 1), n, "01", at + 2);
    HalfVector b(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      if (signs[static_cast<std::size_t>(j)] == '-') psi[static_cast<std::size_t>(j)] |= 1u << i;
      b.set_half(static_cast<std::size_t>(j), halves[static_cast<std::size_t>(j)] == '1');
    }
    gens.push_back(std::move(b));
  }
  for (std::size_t at = body_end; at < lines.size(); ++at)
    if (lines[at].empty() || lines[at].front() != '#') fail(at + 1, "unexpected content after generators");

  CoordinateLayout layout;
  for (std::uint32_t m : psi) layout.emplace_back(m, k);
  return BieberbachGroup(k, std::move(layout), std::move(gens));
}

BieberbachGroup read_bgf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_bgf(buf.str());
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_bgf_file(const std::string& path, const BieberbachGroup& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << write_bgf(g);
  if (!out.flush()) throw UsageError("failed writing '" + path + "'");
}

}  // namespace isoflat
