#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "quintic/classify.hpp"
#include "quintic/rng.hpp"

using namespace quintic;

namespace {

struct Solved {
  Pencil pencil;
  SolveOutcome outcome;
  Classification cls;
};

// One full solve per seed, shared across test cases.
const Solved& solved_fixture(std::uint64_t seed) {
  static std::map<std::uint64_t, Solved> cache;
  auto it = cache.find(seed);
  if (it != cache.end()) return it->second;
  Solved v;
  Rng rng = Rng::stream(seed, "pencil");
  v.pencil = random_normalized_pencil(rng);
  const Chart chart = make_chart(seed);
  v.outcome = solve_nodes(v.pencil, chart, TrackOptions{}, seed);
  v.cls = classify_endpoints(v.pencil, endpoints(v.outcome));
  return cache.emplace(seed, std::move(v)).first->second;
}

CSymMat5 diag_matrix(const std::array<double, 5>& d) {
  std::array<std::complex<double>, 5> cd;
  for (int i = 0; i < 5; ++i) cd[i] = d[i];
  return CSymMat5::diagonal(cd);
}

bool contains(const std::vector<CombType>& v, CombType t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

}  // namespace

TEST_CASE("Radon-Hurwitz numbers match the closed form") {
  const std::pair<int, int> table[] = {
      {1, 1},  {2, 2},  {3, 1},  {4, 4},   {5, 1},   {6, 2},
      {8, 8},  {12, 4}, {16, 9}, {24, 8},  {32, 10}, {48, 9},
      {64, 12}, {96, 10}, {128, 16}, {256, 17},
  };
  for (const auto& [m, expect] : table) CHECK(radon_hurwitz(m) == expect);
  // Only the 2-adic part matters.
  for (int v = 0; v <= 8; ++v)
    for (int odd : {1, 3, 5, 7, 9})
      CHECK(radon_hurwitz(odd << v) == radon_hurwitz(1 << v));
}

TEST_CASE("the quintic admissible table has sixty-five types") {
  const auto types = admissible_types(5);
  CHECK(types.size() == 65);
  CHECK(std::is_sorted(types.begin(), types.end()));
  CHECK(types.front() == CombType{2, 0});
  CHECK(types.back() == CombType{20, 20});
  CHECK(contains(types, CombType{14, 8}));
  CHECK(contains(types, CombType{20, 8}));
  CHECK(!contains(types, CombType{0, 0}));
  for (const auto& t : types) {
    CHECK(t.rho % 2 == 0);
    CHECK(t.sigma % 2 == 0);
    CHECK(t.sigma >= 0);
    CHECK(t.sigma <= t.rho);
    CHECK(t.rho >= 2);
    CHECK(t.rho <= 20);
  }
}

TEST_CASE("admissibility tracks parity and the rho-zero rule across sizes") {
  CHECK(admissible_types(4).size() == 20);

  // binom(7,3) = 35 is odd, so every rho is odd and zero cannot appear.
  for (const auto& t : admissible_types(6)) {
    CHECK(t.rho % 2 == 1);
    CHECK(t.rho >= 1);
  }

  // Sizes next to a multiple of 8 admit nodeless real symmetroids.
  CHECK(contains(admissible_types(7), CombType{0, 0}));
  CHECK(contains(admissible_types(8), CombType{0, 0}));
  CHECK(contains(admissible_types(9), CombType{0, 0}));
  CHECK(!contains(admissible_types(10), CombType{0, 0}));

  CHECK_THROWS_AS(admissible_types(2), std::invalid_argument);
}

TEST_CASE("eta reads the strict sign of the three leading eigenvalues") {
  CHECK(eta(diag_matrix({3, 2, 1, -1, -2})) == 1);
  CHECK(eta(diag_matrix({3, 2, -1, -2, -3})) == 0);
  // Sign symmetry: the three algebraically largest entries of the negated
  // ladder are all strictly negative.
  CHECK(eta(diag_matrix({-3, -2, -1, -0.5, -0.1})) == 1);
  // A third eigenvalue at roundoff scale breaks strictness.
  CHECK(eta(diag_matrix({3, 2, 1e-12, -1, -2})) == 0);

  // Only the real part enters.
  CSymMat5 b = diag_matrix({3, 2, 1, -1, -2});
  b.a[1] += std::complex<double>(0.0, 5.0);
  CHECK(eta(b) == 1);
}

TEST_CASE("a random pencil splits into twenty nodes and forty-four rest") {
  const Solved& s = solved_fixture(101);
  REQUIRE(s.outcome.failures == 0);
  REQUIRE(s.cls.status == ClassifyStatus::ok);
  REQUIRE(s.cls.nodes.size() == 20);
  REQUIRE(s.cls.rest.size() == 44);

  const CombType t = comb_type(s.cls.nodes);
  CHECK(t == CombType{10, 6});
  CHECK(contains(admissible_types(5), t));

  // The node determinants sit many orders below the spurious ones.
  double dn = 0.0, dr = 1e300;
  for (const auto& n : s.cls.nodes) dn = std::max(dn, std::abs(n.d));
  for (const auto& r : s.cls.rest) dr = std::min(dr, std::abs(r.d));
  CHECK(dn < 1e-10 * dr);

  for (const auto& n : s.cls.nodes) {
    const bool real_tag = n.tag == NodeTag::real_semidefinite ||
                          n.tag == NodeTag::real_indefinite;
    CHECK(real_tag == (n.imag_norm < 1e-7));
    // Unit normalization happened.
    CHECK(frobenius_norm(n.matrix) == doctest::Approx(1.0));
    // The anchor coordinate is real and positive.
    int m = 0;
    for (int k = 1; k < 4; ++k)
      if (std::abs(n.point[k]) > std::abs(n.point[m])) m = k;
    CHECK(std::abs(n.point[m].imag()) <= 1e-13 * std::abs(n.point[m]));
    CHECK(n.point[m].real() > 0.0);
  }
}

TEST_CASE("nonreal nodes come in conjugate pairs") {
  const Solved& s = solved_fixture(101);
  REQUIRE(s.cls.nodes.size() == 20);
  std::vector<CVec4> nonreal;
  for (const auto& n : s.cls.nodes)
    if (n.tag == NodeTag::nonreal_eta0 || n.tag == NodeTag::nonreal_eta1)
      nonreal.push_back(n.point);
  CHECK(nonreal.size() % 2 == 0);
  CHECK(nonreal.size() == 20 - comb_type(s.cls.nodes).rho);

  // Conjugating the multiset maps it to itself.
  std::vector<CVec4> pool = nonreal;
  for (const auto& p : nonreal) {
    double best = 1e300;
    std::size_t pick = 0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      double d = 0.0;
      for (int k = 0; k < 4; ++k)
        d = std::max(d, std::abs(std::conj(p[k]) - pool[j][k]));
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    REQUIRE(!pool.empty());
    CHECK(best < 1e-8);
    pool.erase(pool.begin() + static_cast<long>(pick));
  }
  CHECK(pool.empty());
}

TEST_CASE("the type survives congruence and basis recombination") {
  const Solved& s = solved_fixture(103);
  REQUIRE(s.cls.nodes.size() == 20);
  const CombType t0 = comb_type(s.cls.nodes);
  CHECK(t0 == CombType{6, 2});

  Rng rng = Rng::stream(77, "transforms");
  std::array<std::array<double, 5>, 5> c{};
  for (auto& row : c)
    for (double& v : row) v = rng.normal();
  for (int i = 0; i < 5; ++i) c[i][i] += 3.0;  // keep it invertible
  const Pencil pc = congruent_pencil(s.pencil, c);
  const SolveOutcome oc = solve_nodes(pc, make_chart(202), TrackOptions{}, 202);
  REQUIRE(oc.failures == 0);
  const Classification cc = classify_endpoints(pc, endpoints(oc));
  REQUIRE(cc.nodes.size() == 20);
  CHECK(comb_type(cc.nodes) == t0);

  std::array<std::array<double, 4>, 4> g{};
  g[0] = {1.0, 0.0, 0.0, 0.0};
  g[1] = {0.0, 0.7, -0.4, 0.1};
  g[2] = {0.0, 0.2, 1.1, -0.3};
  g[3] = {0.0, -0.5, 0.3, 0.9};
  const Pencil pr = recombine(s.pencil, g);
  const SolveOutcome orr = solve_nodes(pr, make_chart(203), TrackOptions{}, 203);
  REQUIRE(orr.failures == 0);
  const Classification cr = classify_endpoints(pr, endpoints(orr));
  REQUIRE(cr.nodes.size() == 20);
  CHECK(comb_type(cr.nodes) == t0);
}

TEST_CASE("comb_type rejects a wrong node count") {
  std::vector<NodeSolution> nodes(19);
  CHECK_THROWS_AS(comb_type(nodes), std::invalid_argument);
  nodes.resize(21);
  CHECK_THROWS_AS(comb_type(nodes), std::invalid_argument);
}

TEST_CASE("classification ignores endpoint phases") {
  const Solved& s = solved_fixture(101);
  std::vector<CVec4> pts = endpoints(s.outcome);
  Rng rng = Rng::stream(5, "phases");
  for (auto& p : pts) {
    const std::complex<double> ph = rng.unit_complex();
    for (auto& c : p) c *= ph;
  }
  const Classification c = classify_endpoints(s.pencil, pts);
  REQUIRE(c.status == ClassifyStatus::ok);
  REQUIRE(c.nodes.size() == 20);
  CHECK(comb_type(c.nodes) == comb_type(s.cls.nodes));
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    CHECK(c.nodes[i].tag == s.cls.nodes[i].tag);
}

TEST_CASE("determinants near the cut flag the split as ambiguous") {
  const Solved& s = solved_fixture(101);
  double dmax = 0.0, dr = 1e300;
  for (const auto& r : s.cls.rest) {
    dmax = std::max(dmax, std::abs(r.d));
    dr = std::min(dr, std::abs(r.d));
  }
  // Park the cut a factor three under the smallest spurious value: that
  // value lands inside the widened gray band.
  ClassifyTols tols;
  tols.d_tol = dr / (3.0 * dmax);
  const Classification c = classify_endpoints(s.pencil, endpoints(s.outcome), tols);
  CHECK(c.status == ClassifyStatus::ambiguous);
  CHECK(!c.message.empty());
}

TEST_CASE("duplicate endpoints mark the pencil nongeneric") {
  const Solved& s = solved_fixture(101);
  std::vector<CVec4> pts = endpoints(s.outcome);
  pts[5] = pts[17];
  const Classification c = classify_endpoints(s.pencil, pts);
  CHECK(c.status == ClassifyStatus::nongeneric);
}

TEST_CASE("the witness search finds obvious definite directions") {
  const Solved& s = solved_fixture(101);
  const auto w = pd_witness_search(s.pencil, 9);
  REQUIRE(w.has_value());
  CHECK(w->point == Vec4{1.0, 0.0, 0.0, 0.0});
  CHECK(w->lambda_min == doctest::Approx(1.0));

  // An indefinite direction that small generators cannot repair.
  Pencil bad;
  bad.mat[0] = SymMat5::diagonal({1.0, 1.0, 1.0, 1.0, -1.0});
  Rng rng = Rng::stream(6, "bad");
  for (int k = 1; k < 4; ++k)
    for (auto& v : bad.mat[k].a) v = 0.01 * rng.normal();
  CHECK(!pd_witness_search(bad, 9).has_value());
}
