#include "quintic/linalg.hpp"

namespace quintic {

std::array<double, 5> sym_eigenvalues(const SymMat5& m) {
  std::array<std::array<double, 5>, 5> full;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) full[i][j] = m(i, j);
  return jacobi_eigenvalues<5>(full);
}

}  // namespace quintic
