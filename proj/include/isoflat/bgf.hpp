#pragma once
//
// BGF1 text format for diagonal Bieberbach groups:
//
//   BGF1
//   k=<int> n=<int>
//   B<i> <n entries '+' or '-'>      (i = 1..k, each followed by)
//   b<i> <n entries '0' or '1'>      (numerators of halves)
//   # optional trailing comment lines
//
// Entries are separated by single spaces. Nothing else is accepted.

#include <string>
#include <string_view>

#include "isoflat/bieberbach.hpp"

namespace isoflat {

std::string write_bgf(const BieberbachGroup& g);
// Throws UsageError with the offending line number on malformed input.
BieberbachGroup parse_bgf(std::string_view text);

BieberbachGroup read_bgf_file(const std::string& path);
void write_bgf_file(const std::string& path, const BieberbachGroup& g);

}  // namespace isoflat
