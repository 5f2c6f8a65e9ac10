#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "mshaz/curves.hpp"

namespace mshaz {

/// Shortest representation with 17 significant digits (round-trip exact).
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Header `t,f,F,S,h,H`, one row per grid point, LF line endings.
inline void write_curves_csv(std::ostream& os, const CurveSet& cs) {
  os << "t,f,F,S,h,H\n";
  for (int i = 0; i < cs.grid.size(); ++i) {
    const size_t j = static_cast<size_t>(i);
    os << format_g17(cs.grid[i]) << ',' << format_g17(cs.f[j]) << ',' << format_g17(cs.F[j])
       << ',' << format_g17(cs.S[j]) << ',' << format_g17(cs.h[j]) << ',' << format_g17(cs.H[j])
       << '\n';
  }
}

/// Header `index,t`, one row per sample.
inline void write_samples_csv(std::ostream& os, const std::vector<double>& times) {
  os << "index,t\n";
  for (size_t i = 0; i < times.size(); ++i) {
    os << i << ',' << format_g17(times[i]) << '\n';
  }
}

}  // namespace mshaz
