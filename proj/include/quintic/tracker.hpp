// Homotopy continuation for the node equations. A solve runs in two stages:
// the total-degree start system u_i^4 = r_i, whose 64 roots are explicit, is
// deformed into the node system of one fixed random complex pencil, and that
// solved pencil is then connected to each requested target by a straight
// segment in pencil space. The first stage is cached per seed, so repeated
// solves against the same seed pay only for the short second segment. All
// paths run from tau = 1 down to tau = 0 with an Euler tangent predictor and
// a Newton corrector.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "quintic/polysys.hpp"

namespace quintic {

using CMat4 = Mat4<std::complex<double>>;
using CGens = std::array<CSymMat5, 4>;

struct TrackOptions {
  double initial_step = 0.1;
  // Paths out of a total-degree start cover most of their ground in a thin
  // layer near tau = 0 when the target equations are much smaller than the
  // start rows, and near-pinches between paths sit at complex tau offsets
  // down to 1e-8. The floor has to undercut those, so it is deliberately far
  // below what a smooth path ever uses.
  double min_step = 1e-10;
  double max_step = 0.25;
  double corrector_tol = 1e-10;  // relative to residual_scale
  double newton_tol = 1e-8;      // corrector update size, relative to 1+|y|
  int max_newton_iters = 4;
  int max_steps = 20000;
  double divergence_norm = 1e8;
  std::complex<double> gamma{1.0, 0.0};  // extra twist on the start stage
};

enum class PathStatus { success, diverged, step_limit, singular };

const char* to_string(PathStatus s);

struct PathResult {
  CVec4 endpoint{};
  PathStatus status = PathStatus::singular;
  int steps_taken = 0;
  double final_residual = 0.0;  // relative, like corrector_tol
  double tau_reached = 0.0;     // where tracking stopped; 0 when it arrived
};

// One-parameter family H(y, tau) of square systems, tracked from tau = 1 to
// tau = 0. eval fills the residual and the y-Jacobian, plus dH/dtau when a
// slot for it is passed.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual void eval(const CVec4& y, double tau, CVec4& h, CMat4& jac,
                    CVec4* h_tau) const = 0;
  // Magnitude of the coefficient data, feeding the relative residual scale.
  virtual double coeff_norm() const = 0;
};

// The start system after eliminating the chart coordinate with the largest
// chart coefficient: u_i^4 = rhs_i on the three remaining coordinates, with
// all 64 roots lifted back onto the chart.
struct StartSystem {
  Chart chart;
  int pivot = 0;              // coordinate eliminated through the chart row
  std::array<int, 3> vars{};  // the three free coordinates
  std::array<std::complex<double>, 3> rhs{};
  std::vector<CVec4> points;  // 64 roots, on the chart
};

StartSystem total_degree_start(const Chart& chart, std::uint64_t seed);

// Gamma-twisted blend from the start system to the node equations of a
// complex generator set. The chart row is shared by both ends and stays
// fixed along the path.
class StartHomotopy final : public Homotopy {
 public:
  StartHomotopy(const StartSystem& start, const CGens& target,
                std::complex<double> gamma);
  void eval(const CVec4& y, double tau, CVec4& h, CMat4& jac,
            CVec4* h_tau) const override;
  double coeff_norm() const override { return coeff_norm_; }

 private:
  StartSystem start_;
  CGens target_;
  std::complex<double> gamma_;
  double coeff_norm_;
};

// Straight segment between two generator sets, optionally detoured by a
// tau(1-tau) bump so that segments between real pencils leave the real
// locus where the discriminant has full-dimensional trace.
class SegmentHomotopy final : public Homotopy {
 public:
  SegmentHomotopy(const CGens& at_one, const CGens& at_zero,
                  const Chart& chart);
  void set_bump(const CGens& bump);
  void eval(const CVec4& y, double tau, CVec4& h, CMat4& jac,
            CVec4* h_tau) const override;
  double coeff_norm() const override { return coeff_norm_; }

 private:
  CGens one_;
  CGens zero_;
  CGens bump_{};
  Chart chart_;
  bool has_bump_ = false;
  double coeff_norm_;
};

PathResult track_path(const Homotopy& hom, const CVec4& start,
                      const TrackOptions& opts);

// First-stage result: a random complex pencil together with the 64 solutions
// of its node system. Computed once per (seed, chart) and shared; throws
// std::runtime_error if the start paths fail repeatedly (which a correct
// build should never see).
struct BaseSolve {
  StartSystem start;
  CGens gens;
  std::vector<CVec4> points;
};

const BaseSolve& base_solve(const Chart& chart, const TrackOptions& opts,
                            std::uint64_t seed);

struct SolveOutcome {
  std::vector<PathResult> paths;  // ordered by start-point index
  int failures = 0;
  bool ok() const { return failures == 0; }
};

SolveOutcome solve_nodes(const Pencil& p, const Chart& chart,
                         const TrackOptions& opts, std::uint64_t seed,
                         int threads = 1);

// Short parameter homotopy carrying known solutions of one pencil to a
// nearby pencil; the workhorse of the hill climbs, where targets differ by a
// small perturbation and paths take only a handful of steps.
std::vector<PathResult> track_between(const Pencil& from,
                                      const std::vector<CVec4>& sols,
                                      const Pencil& to, const Chart& chart,
                                      const TrackOptions& opts,
                                      std::uint64_t seed, int threads = 1);

}  // namespace quintic
