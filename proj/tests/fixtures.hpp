#pragma once
//
// Groups transcribed from column notation. Each row is one coordinate and
// holds one token per generator: '+' or '-' for the diagonal entry of B_i,
// suffixed with 'h' when b_i carries 1/2 on that coordinate.

#include <sstream>
#include <string>
#include <vector>

#include "isoflat/bieberbach.hpp"

namespace fixtures {

inline isoflat::BieberbachGroup from_columns(int k, const std::vector<std::string>& rows) {
  isoflat::CoordinateLayout layout;
  std::vector<isoflat::HalfVector> gens(static_cast<std::size_t>(k), isoflat::HalfVector(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    std::istringstream in(rows[j]);
    std::uint32_t psi = 0;
    for (int i = 0; i < k; ++i) {
      std::string tok;
      in >> tok;
      if (tok[0] == '-') psi |= 1u << i;
      if (tok.size() > 1 && tok[1] == 'h') gens[static_cast<std::size_t>(i)].set_half(j);
    }
    layout.emplace_back(psi, k);
  }
  return isoflat::BieberbachGroup(k, std::move(layout), std::move(gens));
}

// Z_2^4 pair in dimension 7: rho = 2chi_1 + chi_2 + chi_3 + chi_4 + chi_23 + chi_24
// and rho' = 2chi_1 + chi_2 + chi_3 + chi_4 + chi_12 + chi_234.
inline isoflat::BieberbachGroup dim7_gamma() {
  return from_columns(4, {"- + +h +", "- + + +", "+h - + +", "+ +h - +", "+h +h +h -", "+ - - +h", "+ - + -"});
}
inline isoflat::BieberbachGroup dim7_gamma_prime() {
  return from_columns(4, {"- + +h +", "- + + +", "+h - + +", "+ +h - +", "+h +h +h -", "- - + +h", "+ - - -"});
}

// Z_2^3 pair in dimension 8 (the k = 3, n = 8 main construction).
inline isoflat::BieberbachGroup dim8_gamma() {
  return from_columns(3, {"- + +h", "- + +", "+h - +", "+ - +", "+ -h -", "+ - -", "+ +h -", "+ + -"});
}
inline isoflat::BieberbachGroup dim8_gamma_prime() {
  return from_columns(3, {"- + +h", "- + +", "- + +", "- + -", "+h - +", "+ -h -", "+ +h -", "+ + -"});
}

}  // namespace fixtures
