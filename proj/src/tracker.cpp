#include "quintic/tracker.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace quintic {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

double max_abs4(const CVec4& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Runs body(0..n-1) with results landing in caller-owned slots, so the
// outcome does not depend on the thread count.
template <class F>
void run_indexed(int n, int threads, F&& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

CGens scaled_complex_gens(const Pencil& p, double scale) {
  CGens g;
  const double inv = 1.0 / scale;
  for (int k = 0; k < 4; ++k) g[k] = sym_cast<std::complex<double>>(inv * p.mat[k]);
  return g;
}

}  // namespace

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::success:
      return "success";
    case PathStatus::diverged:
      return "diverged";
    case PathStatus::step_limit:
      return "step_limit";
    case PathStatus::singular:
      return "singular";
  }
  return "unknown";
}

StartSystem total_degree_start(const Chart& chart, std::uint64_t seed) {
  StartSystem s;
  s.chart = chart;
  s.pivot = 0;
  for (int k = 1; k < 4; ++k)
    if (std::abs(chart.c[k]) > std::abs(chart.c[s.pivot])) s.pivot = k;
  if (std::abs(chart.c[s.pivot]) == 0.0)
    throw std::invalid_argument("chart has no usable linear coefficient");
  int v = 0;
  for (int k = 0; k < 4; ++k)
    if (k != s.pivot) s.vars[v++] = k;

  Rng rng = Rng::stream(seed, "start-roots");
  std::array<std::array<std::complex<double>, 4>, 3> roots;
  for (int i = 0; i < 3; ++i) {
    s.rhs[i] = rng.unit_complex();
    const std::complex<double> base = std::exp(std::log(s.rhs[i]) * 0.25);
    roots[i] = {base, base * kImag, -base, -base * kImag};
  }
  s.points.reserve(64);
  for (int m0 = 0; m0 < 4; ++m0)
    for (int m1 = 0; m1 < 4; ++m1)
      for (int m2 = 0; m2 < 4; ++m2) {
        CVec4 y{};
        y[s.vars[0]] = roots[0][m0];
        y[s.vars[1]] = roots[1][m1];
        y[s.vars[2]] = roots[2][m2];
        std::complex<double> acc{chart.c[4], 0.0};
        for (int i = 0; i < 3; ++i) acc += chart.c[s.vars[i]] * y[s.vars[i]];
        y[s.pivot] = -acc / chart.c[s.pivot];
        s.points.push_back(y);
      }
  return s;
}

StartHomotopy::StartHomotopy(const StartSystem& start, const CGens& target,
                             std::complex<double> gamma)
    : start_(start), target_(target), gamma_(gamma) {
  double m = 1.0;
  for (const auto& g : target_) m = std::max(m, frobenius_norm(g));
  coeff_norm_ = m;
}

void StartHomotopy::eval(const CVec4& y, double tau, CVec4& h, CMat4& jac,
                         CVec4* h_tau) const {
  CofactorTables<std::complex<double>> ct;
  CVec4 ft;
  CMat4 jt;
  residual_and_jacobian(target_, start_.chart, y, ct, ft, jt);
  const std::complex<double> t1(tau, 0.0);
  const std::complex<double> t0(1.0 - tau, 0.0);
  for (int i = 0; i < 3; ++i) {
    const std::complex<double> u = y[start_.vars[i]];
    const std::complex<double> u2 = u * u;
    const std::complex<double> si = gamma_ * (u2 * u2 - start_.rhs[i]);
    h[i] = t1 * si + t0 * ft[i];
    for (int k = 0; k < 4; ++k) jac[i][k] = t0 * jt[i][k];
    jac[i][start_.vars[i]] += t1 * gamma_ * 4.0 * u2 * u;
    if (h_tau) (*h_tau)[i] = si - ft[i];
  }
  h[3] = ft[3];
  for (int k = 0; k < 4; ++k) jac[3][k] = jt[3][k];
  if (h_tau) (*h_tau)[3] = 0.0;
}

SegmentHomotopy::SegmentHomotopy(const CGens& at_one, const CGens& at_zero,
                                 const Chart& chart)
    : one_(at_one), zero_(at_zero), chart_(chart) {
  double m = 1e-12;
  for (int k = 0; k < 4; ++k)
    m = std::max(m, std::max(frobenius_norm(one_[k]), frobenius_norm(zero_[k])));
  coeff_norm_ = m;
}

void SegmentHomotopy::set_bump(const CGens& bump) {
  bump_ = bump;
  has_bump_ = true;
}

void SegmentHomotopy::eval(const CVec4& y, double tau, CVec4& h, CMat4& jac,
                           CVec4* h_tau) const {
  const std::complex<double> t1(tau, 0.0);
  const std::complex<double> t0(1.0 - tau, 0.0);
  const std::complex<double> tb(tau * (1.0 - tau), 0.0);
  CGens g;
  for (int k = 0; k < 4; ++k) {
    g[k] = t1 * one_[k] + t0 * zero_[k];
    if (has_bump_) g[k] = g[k] + tb * bump_[k];
  }
  CofactorTables<std::complex<double>> ct;
  residual_and_jacobian(g, chart_, y, ct, h, jac);
  if (!h_tau) return;
  CGens dg;
  const std::complex<double> db(1.0 - 2.0 * tau, 0.0);
  for (int k = 0; k < 4; ++k) {
    dg[k] = one_[k] - zero_[k];
    if (has_bump_) dg[k] = dg[k] + db * bump_[k];
  }
  const CSymMat5 da = ct.dadj(eval_generators(dg, y));
  for (int i = 0; i < 3; ++i)
    (*h_tau)[i] = trace_product(da, g[i + 1]) + trace_product(ct.adjugate, dg[i + 1]);
  (*h_tau)[3] = 0.0;
}

PathResult track_path(const Homotopy& hom, const CVec4& start,
                      const TrackOptions& opts) {
  PathResult out;
  out.endpoint = start;
  CVec4 y = start;
  double tau = 1.0;
  double step = std::clamp(opts.initial_step, opts.min_step, opts.max_step);
  int easy = 0;
  const double cn = hom.coeff_norm();

  CVec4 h;
  CMat4 jac;
  CVec4 htau;

  const auto rel_residual = [&](const CVec4& p, const CVec4& f) {
    return max_abs4(f) / residual_scale(p, cn);
  };
  const auto out_of_range = [&](const CVec4& p) {
    const double m = max_abs4(p);
    return !(m < opts.divergence_norm);  // catches NaN as well
  };

  while (tau > 0.0) {
    if (out.steps_taken >= opts.max_steps) {
      out.endpoint = y;
      out.status = PathStatus::step_limit;
      out.tau_reached = tau;
      hom.eval(y, tau, h, jac, nullptr);
      out.final_residual = rel_residual(y, h);
      return out;
    }
    const double ds = std::min(step, tau);
    double tnew = tau - ds;
    if (tnew < 1e-14) tnew = 0.0;

    // Euler predictor along the Davidenko tangent J y' = -dH/dtau.
    hom.eval(y, tau, h, jac, &htau);
    CVec4 v;
    bool accepted = false;
    if (solve4(jac, htau, v)) {
      CVec4 ytry;
      for (int i = 0; i < 4; ++i) ytry[i] = y[i] + ds * v[i];
      // Acceptance goes by the size of the Newton update, not the residual:
      // residual scales inflate with |y| and would wave through unconverged
      // points. The first correction is also held inside a tube around the
      // predicted point; a correction comparable to the whole displacement
      // means the step strayed toward another path, so reject instead of
      // letting Newton converge on the wrong one.
      const double tube =
          0.5 * ds * max_abs4(v) + 1e-10 * (1.0 + max_abs4(ytry));
      int used = 0;
      for (int it = 0; it < opts.max_newton_iters; ++it) {
        // The corrector only bails far beyond the divergence limit, so a
        // path that genuinely runs off can still take the step that crosses
        // the limit and be reported as diverged afterwards.
        if (!(max_abs4(ytry) < 100.0 * opts.divergence_norm)) break;
        hom.eval(ytry, tnew, h, jac, nullptr);
        CVec4 d;
        if (!solve4(jac, h, d)) break;
        const double dn = max_abs4(d);
        if (it == 0 && dn > tube) break;
        for (int i = 0; i < 4; ++i) ytry[i] -= d[i];
        used = it + 1;
        if (dn <= opts.newton_tol * (1.0 + max_abs4(ytry))) {
          accepted = true;
          break;
        }
      }
      if (accepted) {
        y = ytry;
        tau = tnew;
        ++out.steps_taken;
        if (out_of_range(y)) {
          out.endpoint = y;
          out.status = PathStatus::diverged;
          out.tau_reached = tau;
          out.final_residual = rel_residual(y, h);
          return out;
        }
        if (used <= 2) {
          if (++easy >= 4) {
            step = std::min(step * 2.0, opts.max_step);
            easy = 0;
          }
        } else {
          easy = 0;
        }
      }
    }
    if (!accepted) {
      step = ds * 0.5;
      easy = 0;
      if (step < opts.min_step) {
        out.endpoint = y;
        out.status = PathStatus::singular;
        out.tau_reached = tau;
        hom.eval(y, tau, h, jac, nullptr);
        out.final_residual = rel_residual(y, h);
        return out;
      }
    }
  }

  // Endpoint polish: a few extra Newton iterations at tau = 0, keeping the
  // best iterate seen.
  CVec4 best = y;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 6; ++it) {
    if (out_of_range(y)) break;
    hom.eval(y, 0.0, h, jac, nullptr);
    const double r = rel_residual(y, h);
    if (r < best_res) {
      best_res = r;
      best = y;
    }
    if (r < 1e-14) break;
    CVec4 d;
    if (!solve4(jac, h, d)) break;
    for (int i = 0; i < 4; ++i) y[i] -= d[i];
  }
  out.endpoint = best;
  out.final_residual = best_res;
  out.status = best_res < opts.corrector_tol ? PathStatus::success
                                             : PathStatus::singular;
  return out;
}

namespace {

struct BaseKey {
  std::uint64_t seed;
  std::uint64_t chart_hash;
  bool operator<(const BaseKey& o) const {
    return seed != o.seed ? seed < o.seed : chart_hash < o.chart_hash;
  }
};

std::uint64_t hash_chart(const Chart& c) {
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(c.c.data()),
                                  sizeof(double) * c.c.size()));
}

std::map<BaseKey, std::unique_ptr<BaseSolve>> g_base_cache;
std::mutex g_base_mutex;

// Slower schedule for paths the default one loses: shorter steps give the
// tube test room before the floor cuts in.
TrackOptions careful_options(const TrackOptions& opts) {
  TrackOptions c = opts;
  c.initial_step = std::min(opts.initial_step, 0.02);
  c.max_step = std::min(opts.max_step, 0.05);
  return c;
}

double max_abs4c(const CVec4& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

// Endgame for a path the stepper cannot finish. A stall with a collapsed
// step sits right next to tau = 0 and plain Newton on the end system
// converges from there whenever the endpoint is regular. The result only
// counts when the polished residual clears the success bar; whether the
// point belongs to the path it started on is for the caller's distinctness
// checks to decide.
PathResult polish_at_zero(const Homotopy& hom, PathResult r,
                          const TrackOptions& opts) {
  CVec4 y = r.endpoint;
  CVec4 h;
  CMat4 jac;
  for (int it = 0; it < 40; ++it) {
    hom.eval(y, 0.0, h, jac, nullptr);
    CVec4 d;
    if (!solve4(jac, h, d)) break;
    for (int k = 0; k < 4; ++k) y[k] -= d[k];
    ++r.steps_taken;
    if (max_abs4c(d) <= 1e-13 * (1.0 + max_abs4c(y))) break;
  }
  hom.eval(y, 0.0, h, jac, nullptr);
  const double res = max_abs4c(h) / residual_scale(y, hom.coeff_norm());
  if (res < opts.corrector_tol) {
    r.endpoint = y;
    r.status = PathStatus::success;
    r.final_residual = res;
    r.tau_reached = 0.0;
  }
  return r;
}

PathResult track_with_rescue(const Homotopy& hom, const CVec4& start,
                             const TrackOptions& opts,
                             const TrackOptions& careful) {
  PathResult r = track_path(hom, start, opts);
  if (r.status == PathStatus::success) return r;
  PathResult r2 = track_path(hom, start, careful);
  if (r2.status == PathStatus::success) return r2;
  if (r2.tau_reached <= r.tau_reached) r = r2;
  return polish_at_zero(hom, r, opts);
}

}  // namespace

const BaseSolve& base_solve(const Chart& chart, const TrackOptions& opts,
                            std::uint64_t seed) {
  const BaseKey key{seed, hash_chart(chart)};
  std::lock_guard<std::mutex> lock(g_base_mutex);
  auto it = g_base_cache.find(key);
  if (it != g_base_cache.end()) return *it->second;

  const TrackOptions careful = careful_options(opts);
  for (std::uint64_t salt = 0; salt < 6; ++salt) {
    auto base = std::make_unique<BaseSolve>();
    Rng grand = Rng::stream(seed, "base-pencil", salt);
    for (auto& g : base->gens) {
      for (auto& v : g.a) v = grand.normal_complex();
      g = (1.0 / frobenius_norm(g)) * g;
    }
    const std::uint64_t start_seed =
        salt == 0 ? seed : mix64(seed ^ (0x9e3779b97f4a7c15ull * salt));
    base->start = total_degree_start(chart, start_seed);
    const std::complex<double> gamma =
        Rng::stream(seed, "start-gamma", salt).unit_complex() * opts.gamma;
    StartHomotopy hom(base->start, base->gens, gamma);
    base->points.resize(64);
    std::array<bool, 64> slow{};
    bool ok = true;
    for (int i = 0; i < 64 && ok; ++i) {
      const PathResult r =
          track_with_rescue(hom, base->start.points[i], opts, careful);
      ok = r.status == PathStatus::success;
      base->points[i] = r.endpoint;
    }
    // A duplicate endpoint means one of the pair jumped paths; re-track the
    // later one on the cautious schedule before writing the salt off.
    for (int i = 0; i < 64 && ok; ++i)
      for (int j = i + 1; j < 64 && ok; ++j) {
        double d = 0.0;
        for (int k = 0; k < 4; ++k)
          d = std::max(d, std::abs(base->points[i][k] - base->points[j][k]));
        if (d > 1e-8) continue;
        ok = false;
        if (!slow[j]) {
          const PathResult r = track_path(hom, base->start.points[j], careful);
          slow[j] = true;
          if (r.status == PathStatus::success) {
            base->points[j] = r.endpoint;
            d = 0.0;
            for (int k = 0; k < 4; ++k)
              d = std::max(d, std::abs(base->points[i][k] - base->points[j][k]));
            ok = d > 1e-8;
          }
        }
      }
    if (ok) {
      auto [pos, inserted] = g_base_cache.emplace(key, std::move(base));
      (void)inserted;
      return *pos->second;
    }
  }
  throw std::runtime_error("start-stage solve failed; seed unusable");
}

SolveOutcome solve_nodes(const Pencil& p, const Chart& chart,
                         const TrackOptions& opts, std::uint64_t seed,
                         int threads) {
  const BaseSolve& base = base_solve(chart, opts, seed);
  const CGens target = scaled_complex_gens(p, pencil_scale(p));
  const std::complex<double> g2 = Rng::stream(seed, "segment-gamma").unit_complex();
  CGens one;
  for (int k = 0; k < 4; ++k) one[k] = g2 * base.gens[k];
  SegmentHomotopy hom(one, target, chart);

  SolveOutcome out;
  out.paths.resize(64);
  const TrackOptions careful = careful_options(opts);
  run_indexed(64, threads, [&](int i) {
    out.paths[i] = track_with_rescue(hom, base.points[i], opts, careful);
  });
  for (const auto& r : out.paths)
    if (r.status != PathStatus::success) ++out.failures;
  return out;
}

std::vector<PathResult> track_between(const Pencil& from,
                                      const std::vector<CVec4>& sols,
                                      const Pencil& to, const Chart& chart,
                                      const TrackOptions& opts,
                                      std::uint64_t seed, int threads) {
  const double scale = std::max(pencil_scale(from), pencil_scale(to));
  const CGens one = scaled_complex_gens(from, scale);
  const CGens zero = scaled_complex_gens(to, scale);
  SegmentHomotopy hom(one, zero, chart);

  double seg = 0.0;
  for (int k = 0; k < 4; ++k)
    seg = std::max(seg, frobenius_norm(one[k] - zero[k]));
  if (seg > 0.0) {
    Rng rng = Rng::stream(seed, "segment-bump");
    CGens bump;
    const double c = 0.05 * seg;
    for (auto& g : bump)
      for (auto& v : g.a) v = c * rng.normal_complex();
    hom.set_bump(bump);
  }

  std::vector<PathResult> out(sols.size());
  const TrackOptions careful = careful_options(opts);
  run_indexed(static_cast<int>(sols.size()), threads, [&](int i) {
    out[i] = track_with_rescue(hom, sols[i], opts, careful);
  });
  return out;
}

}  // namespace quintic
