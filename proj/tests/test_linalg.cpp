#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "quintic/linalg.hpp"
#include "quintic/rng.hpp"
#include "support/oracles.hpp"

using namespace quintic;

namespace {

SymMat5 random_sym(Rng& rng, double scale = 1.0) {
  SymMat5 m;
  for (auto& v : m.a) v = scale * rng.normal();
  return m;
}

Sym5<long long> random_int_sym(Rng& rng) {
  Sym5<long long> m;
  for (auto& v : m.a) v = static_cast<long long>(rng.uniform(-9.0, 10.0));
  return m;
}

// Full product adj * m, returned row-major.
std::array<double, 25> mul_full(const SymMat5& a, const SymMat5& b) {
  std::array<double, 25> r{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) r[5 * i + j] += a(i, k) * b(k, j);
  return r;
}

}  // namespace

TEST_CASE("adjugate of diagonal and identity matrices") {
  auto id = SymMat5::identity();
  CHECK(adjugate(id) == id);

  SymMat5 d = SymMat5::diagonal({1, 2, 3, 4, 5});
  SymMat5 ad = adjugate(d);
  const double expect[5] = {120, 60, 40, 30, 24};
  for (int i = 0; i < 5; ++i) {
    CHECK(ad(i, i) == doctest::Approx(expect[i]));
    for (int j = i + 1; j < 5; ++j) CHECK(ad(i, j) == 0.0);
  }
  CHECK(det5(d) == doctest::Approx(120.0));
}

TEST_CASE("adjugate of a rank-3 matrix vanishes") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    SymMat5 m;
    for (int r = 0; r < 3; ++r) {
      std::array<double, 5> v;
      for (auto& x : v) x = rng.normal();
      for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) m.at(i, j) += v[i] * v[j];
    }
    const double scale = std::pow(1.0 + frobenius_norm(m), 3);
    for (double e : adjugate(m).a) CHECK(std::abs(e) < 1e-12 * scale);
  }
}

TEST_CASE("adjugate satisfies adj(M) * M = det(M) * I") {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    SymMat5 m = random_sym(rng);
    SymMat5 adj = adjugate(m);
    const double det = det5(m);
    auto prod = mul_full(adj, m);
    const double tol = 1e-10 * (1.0 + frobenius_norm(m));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double want = (i == j) ? det : 0.0;
        CHECK(std::abs(prod[5 * i + j] - want) < tol);
      }
  }
}

TEST_CASE("adjugate matches brute-force signed cofactors") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    SymMat5 m = random_sym(rng);
    SymMat5 want = oracle::cofactor_adjugate5(m);
    SymMat5 got = adjugate(m);
    for (int k = 0; k < 15; ++k)
      CHECK(got.a[k] == doctest::Approx(want.a[k]).epsilon(1e-11));
  }
}

TEST_CASE("determinant matches the Leibniz sum exactly on integer matrices") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    Sym5<long long> m = random_int_sym(rng);
    CHECK(det5(m) == oracle::leibniz_det5(m));
    Sym5<long long> adj = oracle::cofactor_adjugate5(m);
    Sym5<long long> got = adjugate(m);
    for (int k = 0; k < 15; ++k) CHECK(got.a[k] == adj.a[k]);
  }
}

TEST_CASE("principal minors: canonical order and exact Leibniz agreement") {
  // Order contract: sizes ascending, subsets lexicographic.
  CHECK(kMinorSubsets[0].size == 1);
  CHECK(kMinorSubsets[0].idx[0] == 0);
  CHECK(kMinorSubsets[5].size == 2);
  CHECK(kMinorSubsets[5].idx[0] == 0);
  CHECK(kMinorSubsets[5].idx[1] == 1);
  CHECK(kMinorSubsets[15].size == 3);
  CHECK(kMinorSubsets[24].idx[0] == 2);
  for (int k = 1; k < 25; ++k) {
    const auto& a = kMinorSubsets[k - 1];
    const auto& b = kMinorSubsets[k];
    CHECK(a.size <= b.size);
    if (a.size == b.size) CHECK(a.idx < b.idx);
  }

  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    Sym5<long long> m = random_int_sym(rng);
    auto minors = principal_minors(m);
    for (int k = 0; k < 25; ++k) {
      const auto& ms = kMinorSubsets[k];
      std::vector<std::vector<long long>> sub(ms.size,
                                              std::vector<long long>(ms.size));
      for (int r = 0; r < ms.size; ++r)
        for (int c = 0; c < ms.size; ++c) sub[r][c] = m(ms.idx[r], ms.idx[c]);
      CHECK(minors[k] == oracle::leibniz_det_n(sub));
    }
  }
}

TEST_CASE("principal minors are exact for rational entries") {
  using R = oracle::Rational;
  Sym5<R> m;
  Rng rng(16);
  for (auto& v : m.a)
    v = R(static_cast<long long>(rng.uniform(-20.0, 21.0)),
          static_cast<long long>(rng.uniform(1.0, 12.0)));
  auto minors = principal_minors(m);
  for (int k = 0; k < 25; ++k) {
    const auto& ms = kMinorSubsets[k];
    std::vector<std::vector<R>> sub(ms.size, std::vector<R>(ms.size));
    for (int r = 0; r < ms.size; ++r)
      for (int c = 0; c < ms.size; ++c) sub[r][c] = m(ms.idx[r], ms.idx[c]);
    CHECK(minors[k] == oracle::leibniz_det_n(sub));
  }
  CHECK(det5(m) == oracle::leibniz_det5(m));
}

TEST_CASE("eigenvalues of diagonal matrices, with multiplicity") {
  auto ev = sym_eigenvalues(SymMat5::diagonal({3, 1, 1, 1, 0}));
  CHECK(ev[0] == doctest::Approx(3.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(1.0));
  CHECK(ev[4] == doctest::Approx(0.0));

  auto ev2 = sym_eigenvalues(SymMat5::diagonal({-2, 7, 0, 3, -5}));
  const double want[5] = {7, 3, 0, -2, -5};
  for (int i = 0; i < 5; ++i) CHECK(ev2[i] == doctest::Approx(want[i]));
}

TEST_CASE("eigenvalue sums and products match trace and determinant") {
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    SymMat5 m = random_sym(rng);
    auto ev = sym_eigenvalues(m);
    double sum = 0.0, prod = 1.0;
    for (double v : ev) {
      sum += v;
      prod *= v;
    }
    const double scale = std::max(1.0, frobenius_norm(m));
    CHECK(std::abs(sum - trace(m)) < 1e-9 * scale);
    CHECK(std::abs(prod - det5(m)) < 1e-9 * std::pow(scale, 5));
  }
}

TEST_CASE("eigenvalues agree with characteristic polynomial roots") {
  Rng rng(18);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    SymMat5 m = random_sym(rng);
    auto ev = sym_eigenvalues(m);
    auto coeffs = oracle::charpoly5(m);
    double radius = 0.0;
    for (int i = 0; i < 5; ++i) {
      double row = 0.0;
      for (int j = 0; j < 5; ++j) row += std::abs(m(i, j));
      radius = std::max(radius, row);
    }
    auto roots = oracle::real_roots_deg5(coeffs, radius + 1.0);
    // The sign-scan oracle can miss a root only when two eigenvalues nearly
    // coincide; every root it does find must match.
    for (double r : roots) {
      double best = 1e300;
      for (double v : ev) best = std::min(best, std::abs(v - r));
      CHECK(best < 1e-10 * (1.0 + radius));
    }
    if (roots.size() == 5) {
      for (int i = 0; i < 5; ++i) CHECK(std::abs(roots[i] - ev[i]) < 1e-10 * (1.0 + radius));
      ++checked;
    }
  }
  CHECK(checked > 950);
}

TEST_CASE("six-dimensional Jacobi handles the bordered case") {
  std::array<std::array<double, 6>, 6> m{};
  const double d[6] = {4, -1, 0.5, 9, -3, 2};
  for (int i = 0; i < 6; ++i) m[i][i] = d[i];
  m[0][5] = m[5][0] = 0.25;
  auto ev = jacobi_eigenvalues<6>(m);
  double sum = 0.0;
  for (double v : ev) sum += v;
  CHECK(sum == doctest::Approx(11.5));
  CHECK(std::is_sorted(ev.begin(), ev.end(), std::less<double>()) == false);
}

TEST_CASE("complex determinant agrees with Leibniz") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    CSymMat5 m;
    for (auto& v : m.a) v = cdouble(rng.normal(), rng.normal());
    const cdouble a = det5(m);
    const cdouble b = oracle::leibniz_det5(m);
    CHECK(std::abs(a - b) < 1e-11 * (1.0 + std::abs(b)));
  }
}
