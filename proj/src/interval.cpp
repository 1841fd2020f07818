#include "quintic/interval.hpp"

#include <cstdio>

namespace quintic {

std::string to_string_outward(const Interval& v) {
  // 17 significant digits round-trip exactly, so printing the one-ulp
  // widened endpoints preserves the enclosure through parse.
  char buf[128];
  std::snprintf(buf, sizeof(buf), "[%.17g, %.17g]", rnd::down(v.lo),
                rnd::up(v.hi));
  return buf;
}

}  // namespace quintic
