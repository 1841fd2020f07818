#include "quintic/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quintic/linalg.hpp"
#include "quintic/rng.hpp"

namespace quintic {

std::vector<CVec4> endpoints(const SolveOutcome& out) {
  std::vector<CVec4> pts;
  pts.reserve(out.paths.size());
  for (const auto& r : out.paths) pts.push_back(r.endpoint);
  return pts;
}

const char* to_string(NodeTag t) {
  switch (t) {
    case NodeTag::nonreal_eta1:
      return "nonreal_eta1";
    case NodeTag::nonreal_eta0:
      return "nonreal_eta0";
    case NodeTag::real_semidefinite:
      return "real_semidefinite";
    case NodeTag::real_indefinite:
      return "real_indefinite";
  }
  return "?";
}

std::string to_string(const CombType& t) {
  return "(" + std::to_string(t.rho) + "," + std::to_string(t.sigma) + ")";
}

int eta(const CSymMat5& b, double zero_tol) {
  const SymMat5 re = real_part(b);
  const std::array<double, 5> ev = sym_eigenvalues(re);  // descending
  const double z = zero_tol * frobenius_norm(re);
  if (ev[2] > z) return 1;   // three leading eigenvalues strictly positive
  if (ev[0] < -z) return 1;  // even the largest is strictly negative
  return 0;
}

Classification classify_endpoints(const Pencil& p,
                                  const std::vector<CVec4>& endpoints,
                                  const ClassifyTols& tols) {
  Classification out;
  const int n = static_cast<int>(endpoints.size());

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dist = 0.0, scale = 1.0;
      for (int k = 0; k < 4; ++k) {
        dist = std::max(dist, std::abs(endpoints[i][k] - endpoints[j][k]));
        scale = std::max({scale, std::abs(endpoints[i][k]),
                          std::abs(endpoints[j][k])});
      }
      if (dist < tols.dedupe_tol * scale) {
        out.status = ClassifyStatus::nongeneric;
        out.message = "duplicate endpoints; the pencil looks nongeneric";
        return out;
      }
    }

  // The determinant is homogeneous of degree 5, so comparing its size across
  // endpoints only makes sense on unit representatives.
  std::vector<std::complex<double>> dv(n);
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    double mod = 0.0;
    for (const auto& c : endpoints[i]) mod = std::max(mod, std::abs(c));
    if (!(mod > 0.0)) {
      out.status = ClassifyStatus::nongeneric;
      out.message = "zero endpoint; the pencil looks nongeneric";
      return out;
    }
    CVec4 u;
    for (int k = 0; k < 4; ++k) u[k] = endpoints[i][k] / mod;
    dv[i] = det5(eval_pencil(p, u));
    dmax = std::max(dmax, std::abs(dv[i]));
  }
  if (!(dmax > 0.0) || !std::isfinite(dmax)) {
    out.status = ClassifyStatus::nongeneric;
    out.message = "determinant vanishes at every endpoint";
    return out;
  }

  // Two-sided gray band: a value marginally below the cut is exactly as
  // undecidable as one marginally above it.
  const double cut = tols.d_tol * dmax;
  int band = 0;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(dv[i]);
    if (a >= 0.1 * cut && a < 10.0 * cut) ++band;
  }
  if (band > 0) {
    out.status = ClassifyStatus::ambiguous;
    out.message = std::to_string(band) +
                  " endpoint(s) in the determinant gray band; certify to "
                  "decide the node split";
  }

  for (int i = 0; i < n; ++i) {
    NodeSolution s;
    const CVec4& y = endpoints[i];
    int m = 0;
    for (int k = 1; k < 4; ++k)
      if (std::abs(y[k]) > std::abs(y[m])) m = k;
    const double mod = std::abs(y[m]);
    if (!(mod > 0.0)) {
      out.status = ClassifyStatus::nongeneric;
      out.message = "zero endpoint; the pencil looks nongeneric";
      return out;
    }
    const std::complex<double> phase = std::conj(y[m]) / mod;
    for (int k = 0; k < 4; ++k) s.point[k] = y[k] * phase;

    CSymMat5 b = eval_pencil(p, s.point);
    const double fb = frobenius_norm(b);
    if (!(fb > 0.0) || !std::isfinite(fb)) {
      out.status = ClassifyStatus::nongeneric;
      out.message = "pencil vanishes at an endpoint";
      return out;
    }
    s.matrix = (1.0 / fb) * b;
    s.d = dv[i];
    s.minors = principal_minors(s.matrix);
    s.imag_norm = frobenius_norm(imag_part(s.matrix));
    if (s.imag_norm < tols.reality_tol) {
      s.tag = is_semidefinite(real_part(s.matrix))
                  ? NodeTag::real_semidefinite
                  : NodeTag::real_indefinite;
    } else {
      s.tag = eta(s.matrix, tols.zero_tol) ? NodeTag::nonreal_eta1
                                           : NodeTag::nonreal_eta0;
    }
    (std::abs(dv[i]) < cut ? out.nodes : out.rest).push_back(std::move(s));
  }
  return out;
}

CombType comb_type(const std::vector<NodeSolution>& nodes) {
  if (nodes.size() != 20)
    throw std::invalid_argument("combinatorial type needs exactly 20 nodes, "
                                "got " + std::to_string(nodes.size()));
  CombType t;
  for (const auto& s : nodes) {
    if (s.tag == NodeTag::real_semidefinite || s.tag == NodeTag::real_indefinite)
      ++t.rho;
    if (s.tag == NodeTag::real_semidefinite) ++t.sigma;
  }
  return t;
}

int radon_hurwitz(int m) {
  int v = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++v;
  }
  return (1 << (v % 4)) + 8 * (v / 4);
}

std::vector<CombType> admissible_types(int n) {
  if (n < 3) throw std::invalid_argument("admissible_types needs n >= 3");
  const int cap = (n + 1) * n * (n - 1) / 6;
  // rho = 0 asks for a whole plane of real matrices with simple eigenvalues,
  // which exists exactly when the Radon-Hurwitz count of the lemma exceeds 2.
  int sig = 2;
  switch (n % 8) {
    case 0:
      sig = radon_hurwitz(n / 2);
      break;
    case 1:
      sig = radon_hurwitz((n - 1) / 2);
      break;
    case 7:
      sig = radon_hurwitz((n + 1) / 2);
      break;
    default:
      break;
  }
  const bool rho_zero = sig > 2 && cap % 2 == 0;
  std::vector<CombType> out;
  for (int rho = cap % 2 == 0 ? (rho_zero ? 0 : 2) : 1; rho <= cap; rho += 2)
    for (int s = 0; s <= rho; s += 2) out.push_back({rho, s});
  return out;
}

namespace {

struct SpherePoint {
  double lmin = 0.0;
  double norm = 0.0;  // Frobenius norm of the pencil there
};

SpherePoint eval_sphere(const Pencil& p, Vec4& y) {
  double n2 = 0.0;
  for (double v : y) n2 += v * v;
  SpherePoint out{-std::numeric_limits<double>::infinity(), 0.0};
  if (!(n2 > 0.0)) return out;
  const double inv = 1.0 / std::sqrt(n2);
  for (double& v : y) v *= inv;
  const SymMat5 m = eval_pencil(p, y);
  out.norm = frobenius_norm(m);
  out.lmin = sym_eigenvalues(m)[4];
  return out;
}

bool strictly_pd(const SpherePoint& s) {
  return s.lmin > 1e-9 * std::max(1.0, s.norm);
}

}  // namespace

std::optional<PdWitness> pd_witness_search(const Pencil& p, std::uint64_t seed,
                                           int budget) {
  Vec4 best_y{};
  SpherePoint best{-std::numeric_limits<double>::infinity(), 0.0};
  const auto consider = [&](Vec4 y) {
    SpherePoint s = eval_sphere(p, y);
    if (s.lmin > best.lmin) {
      best = s;
      best_y = y;
    }
    return s;
  };

  for (int k = 0; k < 4; ++k)
    for (double sgn : {1.0, -1.0}) {
      Vec4 y{};
      y[k] = sgn;
      if (strictly_pd(consider(y)))
        return PdWitness{best_y, best.lmin};
    }

  Rng rng = Rng::stream(seed, "pd-witness");
  while (budget > 0) {
    Vec4 y;
    for (double& v : y) v = rng.normal();
    SpherePoint cur = eval_sphere(p, y);
    if (strictly_pd(cur)) return PdWitness{y, cur.lmin};
    double delta = 0.5;
    while (budget > 0 && delta > 1e-4) {
      --budget;
      bool improved = false;
      for (int k = 0; k < 4 && !strictly_pd(cur); ++k)
        for (double sgn : {1.0, -1.0}) {
          Vec4 c = y;
          c[k] += sgn * delta;
          SpherePoint s = eval_sphere(p, c);
          if (s.lmin > cur.lmin + 1e-15) {
            cur = s;
            y = c;
            improved = true;
          }
        }
      if (strictly_pd(cur)) return PdWitness{y, cur.lmin};
      if (!improved) delta *= 0.5;
    }
    if (cur.lmin > best.lmin) {
      best = cur;
      best_y = y;
    }
  }
  if (strictly_pd(best)) return PdWitness{best_y, best.lmin};
  return std::nullopt;
}

}  // namespace quintic
