#include "quintic/polysys.hpp"

#include <cmath>

namespace quintic {

Chart make_chart(std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "chart");
  Chart ch;
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : ch.c) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 < 1e-8);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : ch.c) v *= inv;
  return ch;
}

}  // namespace quintic
