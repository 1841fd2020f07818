#include "quintic/certify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quintic {

namespace {

using BVec4 = std::array<CInterval, 4>;

CInterval degenerate(cdouble z) { return CInterval(z); }

BVec4 degenerate(const CVec4& y) {
  return {CInterval(y[0]), CInterval(y[1]), CInterval(y[2]), CInterval(y[3])};
}

// Interval residual and Jacobian of the node system over a box.
void box_system(const NodeSystem& sys, const BVec4& x, BVec4& f,
                Mat4<CInterval>& jac) {
  std::array<Sym5<CInterval>, 4> gen;
  for (int k = 0; k < 4; ++k) gen[k] = sym_cast<CInterval>(sys.pencil.mat[k]);
  CofactorTables<CInterval> ct;
  residual_and_jacobian(gen, sys.chart, x, ct, f, jac);
}

}  // namespace

Box box_around(const CVec4& center, double inflate) {
  Box b;
  for (int k = 0; k < 4; ++k) {
    const double r = inflate * (1.0 + std::abs(center[k]));
    b.y[k].re = Interval::unchecked(rnd::down(center[k].real() - r),
                                    rnd::up(center[k].real() + r));
    b.y[k].im = Interval::unchecked(rnd::down(center[k].imag() - r),
                                    rnd::up(center[k].imag() + r));
  }
  return b;
}

KrawczykResult krawczyk_once(const NodeSystem& sys, const Box& x) {
  KrawczykResult out;
  const CVec4 y = x.mid();

  Mat4<cdouble> inv;
  if (!invert4(jacobian(sys, y), inv)) return out;

  const BVec4 fmid = residual(sys, degenerate(y));
  BVec4 fbox;
  Mat4<CInterval> jbox;
  box_system(sys, x.y, fbox, jbox);

  // R = Id - Y * J(X)
  Mat4<CInterval> r;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) {
      CInterval s = degenerate(i == j ? cdouble(1.0) : cdouble(0.0));
      for (int m = 0; m < 4; ++m) s = s - inv[i][m] * jbox[m][j];
      r[i][j] = s;
      row += s.mag();
    }
    out.contraction = std::max(out.contraction, row);
  }

  Box k;
  for (int i = 0; i < 4; ++i) {
    CInterval acc = degenerate(y[i]);
    for (int j = 0; j < 4; ++j) acc = acc - inv[i][j] * fmid[j];
    for (int j = 0; j < 4; ++j) acc = acc + r[i][j] * (x.y[j] - y[j]);
    k.y[i] = acc;
  }
  if (!k.finite()) return out;

  if (k.strictly_inside(x)) {
    out.status = KrawczykStatus::certified;
    out.box = k;
  } else if (!k.intersects(x)) {
    out.status = KrawczykStatus::excluded;
  }
  return out;
}

KrawczykResult krawczyk_test(const NodeSystem& sys, const CVec4& approx,
                             double inflate) {
  bool all_excluded = true;
  auto attempt = [&](double f, KrawczykResult& r) {
    r = krawczyk_once(sys, box_around(approx, inflate * f));
    if (r.status != KrawczykStatus::excluded) all_excluded = false;
    return r.status == KrawczykStatus::certified;
  };

  KrawczykResult r;
  if (attempt(1.0, r)) return r;

  // The contraction norm scales linearly with the radius, so a failed
  // attempt says which radius would bring it down to about a quarter.
  if (r.contraction > 0.0) {
    double f = 0.25 / r.contraction;
    for (int t = 0; t < 2; ++t, f *= 0.2) {
      if (inflate * f < 1e-12) break;  // rounding noise floor
      if (attempt(f, r)) return r;
    }
  }
  for (double f : {0.1, 10.0, 0.01, 100.0})
    if (attempt(f, r)) return r;

  KrawczykResult out;
  out.status = all_excluded ? KrawczykStatus::excluded
                            : KrawczykStatus::inconclusive;
  return out;
}

Box tighten(const NodeSystem& sys, Box box, int rounds) {
  for (int t = 0; t < rounds; ++t) {
    const KrawczykResult r = krawczyk_once(sys, box);
    if (r.status != KrawczykStatus::certified) break;
    box = r.box;
  }
  return box;
}

bool certify_reality(const NodeSystem& sys, const Box& box) {
  const KrawczykResult r = krawczyk_once(sys, box);
  if (r.status != KrawczykStatus::certified) return false;
  return r.box.conj().strictly_inside(box);
}

std::string to_string(CertifyStep step) {
  switch (step) {
    case CertifyStep::none: return "none";
    case CertifyStep::input: return "input";
    case CertifyStep::paths: return "paths";
    case CertifyStep::krawczyk: return "krawczyk";
    case CertifyStep::disjointness: return "disjointness";
    case CertifyStep::node_count: return "node_count";
    case CertifyStep::reality: return "reality";
    case CertifyStep::minor_signs: return "minor_signs";
  }
  return "?";
}

namespace {

void fill_values(const Pencil& p, Certificate& c) {
  const ExtendedValues<CInterval> ev = extended_values(p, c.box.y);
  c.d = ev.det;
  c.minors = ev.minors;
  c.node = c.d.contains_zero();
}

MinorSign sign_of(const Interval& v) {
  if (v.lo > 0.0) return MinorSign::pos;
  if (v.hi < 0.0) return MinorSign::neg;
  return MinorSign::contains_zero;
}

// Signs of the 25 small principal minors on the real restriction of the
// box. The zero in a real-certified box is real, so its coordinates lie in
// the real parts and the real-arithmetic enclosures are sharper than the
// real parts of the complex ones.
void fill_signs(const Pencil& p, Certificate& c) {
  std::array<Interval, 4> yr;
  for (int k = 0; k < 4; ++k) yr[k] = c.box.y[k].re;
  const std::array<Interval, 25> m = principal_minors(eval_pencil(p, yr));
  for (int k = 0; k < 25; ++k) c.signs[k] = sign_of(m[k]);
}

enum class Pattern { semidefinite, indefinite, blocked };

Pattern minor_pattern(const std::array<MinorSign, 25>& signs) {
  bool all_pos = true, all_alt = true;
  bool breaks_psd = false, breaks_nsd = false;
  for (int k = 0; k < 25; ++k) {
    const MinorSign nsd_want =
        (kMinorSubsets[k].size % 2 == 1) ? MinorSign::neg : MinorSign::pos;
    if (signs[k] != MinorSign::pos) all_pos = false;
    if (signs[k] != nsd_want) all_alt = false;
    if (signs[k] == MinorSign::neg) breaks_psd = true;
    if (signs[k] != MinorSign::contains_zero && signs[k] != nsd_want)
      breaks_nsd = true;
  }
  if (all_pos || all_alt) return Pattern::semidefinite;
  if (breaks_psd && breaks_nsd) return Pattern::indefinite;
  return Pattern::blocked;
}

std::string indexed(const char* what, int i) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s %d", what, i);
  return buf;
}

}  // namespace

TypeCertificate certified_type(const NodeSystem& sys,
                               const std::vector<CVec4>& endpoints,
                               const CertifyOptions& opts) {
  if (endpoints.size() != 64)
    throw std::invalid_argument("certified_type: expected 64 endpoints");

  TypeCertificate tc;
  const int n = 64;
  tc.boxes.resize(n);

  auto fail = [&tc](CertifyStep step, std::string msg) -> TypeCertificate& {
    tc.failed_step = step;
    tc.message = std::move(msg);
    return tc;
  };

  // Certified boxes are kept twice: the first contraction image, roomy
  // enough for the conjugation test later, and a tightened copy whose
  // interval evaluations are sharp.
  std::vector<Box> roomy(n);
  for (int i = 0; i < n; ++i) {
    const KrawczykResult r = krawczyk_test(sys, endpoints[i], opts.inflate);
    if (r.status != KrawczykStatus::certified)
      return fail(CertifyStep::krawczyk,
                  indexed("no certified contraction around endpoint", i));
    roomy[i] = r.box;
    tc.boxes[i].box = tighten(sys, r.box, opts.tighten_rounds);
    tc.boxes[i].unique = true;
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (tc.boxes[i].box.intersects(tc.boxes[j].box))
        return fail(CertifyStep::disjointness,
                    indexed("certified boxes overlap, first pair at", i));

  // The 64 disjoint boxes carry 64 distinct zeros, which is all of them.
  // Determinant accounting: provably nonzero on 44, hence zero on the 20
  // boxes that remain, which must hold the singular points.
  int nonzero = 0;
  for (int i = 0; i < n; ++i) {
    fill_values(sys.pencil, tc.boxes[i]);
    if (tc.boxes[i].node)
      tc.nodes.push_back(i);
    else
      ++nonzero;
  }
  if (nonzero != 44)
    return fail(CertifyStep::node_count,
                indexed("boxes with nonzero determinant:", nonzero));

  // Reality by conjugation, cross-checked by pairing: the conjugate box of
  // every node box must meet exactly one box, itself for a real zero and
  // its partner, also a node box, for a conjugate pair. The conjugation
  // test runs on the roomy first-stage box; the tightened ones are a few
  // ulps wide and even a real zero cannot pass there. Pairing runs on the
  // tightened boxes: two enclosures of the same zero always intersect, so
  // no tolerance enters.
  int rho = 0;
  std::array<int, 64> partner;
  partner.fill(-1);
  for (int i : tc.nodes) {
    tc.boxes[i].real = certify_reality(sys, roomy[i]);
    const Box cj = tc.boxes[i].box.conj();
    int hits = 0;
    for (int j = 0; j < n; ++j)
      if (cj.intersects(tc.boxes[j].box)) {
        ++hits;
        partner[i] = j;
      }
    if (hits != 1)
      return fail(CertifyStep::reality,
                  indexed("conjugate of node box meets several boxes, box", i));
    if ((partner[i] == i) != tc.boxes[i].real)
      return fail(CertifyStep::reality,
                  indexed("conjugation test and pairing disagree at box", i));
    if (tc.boxes[i].real) ++rho;
  }
  for (int i : tc.nodes) {
    if (partner[i] == i) continue;
    if (!tc.boxes[partner[i]].node || partner[partner[i]] != i)
      return fail(CertifyStep::reality,
                  indexed("conjugate pairing is not an involution at box", i));
  }

  int sigma = 0;
  for (int i : tc.nodes) {
    if (!tc.boxes[i].real) continue;
    fill_signs(sys.pencil, tc.boxes[i]);
    Pattern pat = minor_pattern(tc.boxes[i].signs);
    for (int t = 0; t < opts.minor_retries && pat == Pattern::blocked; ++t) {
      tc.boxes[i].box = tighten(sys, tc.boxes[i].box, 1);
      fill_values(sys.pencil, tc.boxes[i]);
      fill_signs(sys.pencil, tc.boxes[i]);
      pat = minor_pattern(tc.boxes[i].signs);
    }
    if (pat == Pattern::blocked)
      return fail(CertifyStep::minor_signs,
                  indexed("minor signs stay undecided at box", i));
    if (pat == Pattern::semidefinite) ++sigma;
  }

  tc.success = true;
  tc.type = CombType{rho, sigma};
  return tc;
}

TypeCertificate certify_pencil(const Pencil& p, const Chart& chart,
                               const TrackOptions& topts,
                               const CertifyOptions& copts, std::uint64_t seed,
                               int threads) {
  TypeCertificate tc;
  SolveOutcome sol;
  try {
    sol = solve_nodes(p, chart, topts, seed, threads);
  } catch (const std::exception& e) {
    tc.failed_step = CertifyStep::paths;
    tc.message = e.what();
    return tc;
  }
  if (!sol.ok()) {
    tc.failed_step = CertifyStep::paths;
    tc.message = indexed("paths failed to converge:", sol.failures);
    return tc;
  }
  return certified_type(NodeSystem{p, chart}, endpoints(sol), copts);
}

namespace {

char sign_char(MinorSign s) {
  switch (s) {
    case MinorSign::pos: return '+';
    case MinorSign::neg: return '-';
    case MinorSign::contains_zero: return '0';
  }
  return '?';
}

void print_cinterval(std::ostream& os, const char* label, const CInterval& v) {
  os << "  " << label << " re " << to_string_outward(v.re) << " im "
     << to_string_outward(v.im) << "\n";
}

}  // namespace

std::string format_certificate(const TypeCertificate& tc) {
  std::ostringstream os;
  os << "quintic type certificate v1\n";
  if (!tc.success) {
    os << "status unsuccessful\n";
    os << "step " << to_string(tc.failed_step) << "\n";
    os << "message " << tc.message << "\n";
    return os.str();
  }
  os << "status certified\n";
  os << "boxes " << tc.boxes.size() << "\n";
  os << "nodes " << tc.nodes.size() << "\n";
  os << "rho " << tc.type.rho << "\n";
  os << "sigma " << tc.type.sigma << "\n";
  os << "type " << to_string(tc.type) << "\n";
  for (std::size_t i = 0; i < tc.boxes.size(); ++i) {
    const Certificate& c = tc.boxes[i];
    os << "box " << i;
    if (c.unique) os << " unique";
    if (c.node) os << " node";
    if (c.real) os << " real";
    os << "\n";
    const char* names[4] = {"y0", "y1", "y2", "y3"};
    for (int k = 0; k < 4; ++k) print_cinterval(os, names[k], c.box.y[k]);
    print_cinterval(os, "d", c.d);
    if (c.real) {
      os << "  minors ";
      for (int k = 0; k < 25; ++k) os << sign_char(c.signs[k]);
      os << "\n";
    }
  }
  return os.str();
}

void save_certificate(const TypeCertificate& tc, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write certificate file: " + path);
  f << format_certificate(tc);
}

}  // namespace quintic
