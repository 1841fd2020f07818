// A posteriori certification of solver output. A Krawczyk contraction
// around each endpoint proves existence and uniqueness of a zero in an
// explicit box; interval evaluation of the determinant over the certified
// boxes splits them into exactly 44 with provably nonzero determinant and
// 20 whose determinant must vanish, which pins the singular points of the
// surface. Reality is decided per box by conjugation (the system has real
// coefficients, so the conjugate of the unique zero must be the zero
// itself) together with a global pairing check, and semidefiniteness of
// the real singular points by certified signs of the principal minors of
// sizes one to three. The end product is a combinatorial type (rho, sigma)
// every step of which is backed by an interval enclosure.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "quintic/classify.hpp"
#include "quintic/interval.hpp"
#include "quintic/pencil.hpp"
#include "quintic/polysys.hpp"
#include "quintic/tracker.hpp"

namespace quintic {

// Rectangular box in the four chart coordinates.
struct Box {
  std::array<CInterval, 4> y{};

  CVec4 mid() const {
    return {y[0].mid(), y[1].mid(), y[2].mid(), y[3].mid()};
  }
  bool contains(const CVec4& p) const {
    for (int k = 0; k < 4; ++k)
      if (!y[k].contains(p[k])) return false;
    return true;
  }
  bool strictly_inside(const Box& o) const {
    for (int k = 0; k < 4; ++k)
      if (!y[k].strictly_inside(o.y[k])) return false;
    return true;
  }
  bool intersects(const Box& o) const {
    for (int k = 0; k < 4; ++k)
      if (!y[k].intersects(o.y[k])) return false;
    return true;
  }
  Box conj() const { return {{y[0].conj(), y[1].conj(), y[2].conj(), y[3].conj()}}; }
  bool finite() const {
    return y[0].finite() && y[1].finite() && y[2].finite() && y[3].finite();
  }
};

// Box around a point with per-coordinate radius inflate * (1 + |coord|) in
// both the real and the imaginary direction.
Box box_around(const CVec4& center, double inflate);

enum class KrawczykStatus { certified, excluded, inconclusive };

struct KrawczykResult {
  KrawczykStatus status = KrawczykStatus::inconclusive;
  Box box{};  // contracted image; meaningful only when certified
  // Infinity norm of Id - Y*J(X). Grows linearly with the box radius, so
  // one failed attempt tells the retry logic which radius would work.
  double contraction = 0.0;
};

// One contraction attempt on a fixed box X. With y = mid(X) and Y a
// floating inverse of the Jacobian at y, the operator
//
//   K(X) = y - Y*F(y) + (Id - Y*J(X)) * (X - y)
//
// encloses every zero of F in X. K(X) strictly inside X proves there is
// exactly one and returns it in the contracted box; K(X) disjoint from X
// proves there is none. F(y) is evaluated in interval arithmetic at the
// degenerate box [y, y], so the enclosure property survives rounding.
KrawczykResult krawczyk_once(const NodeSystem& sys, const Box& x);

// Inflation schedule around an approximate zero with residual below about
// 1e-8: base radius inflate * (1 + |coord|), retried at 0.1x, 10x, 0.01x
// and 100x. Interval evaluation of the Jacobian overestimates by a factor
// proportional to the radius, so after a failed attempt one extra try is
// made at the radius the measured contraction norm asks for; badly
// conditioned endpoints certify there when the whole fixed schedule is too
// coarse. Returns the first certified contraction; excluded only when
// every attempt proved its box empty.
KrawczykResult krawczyk_test(const NodeSystem& sys, const CVec4& approx,
                             double inflate = 1e-4);

// Repeated contraction of an already certified box. Each round is
// quadratically sharper, so three rounds take the radius close to the
// floating point floor; rounds that fail to certify leave the box as it
// was, which is still a valid enclosure.
Box tighten(const NodeSystem& sys, Box box, int rounds);

// Proves the unique zero in a certified box is real. The conjugate of the
// contraction image must land strictly inside the box: the conjugate of
// the zero is again a zero of the real-coefficient system, sits in that
// conjugated image, and uniqueness then forces it to equal the zero.
bool certify_reality(const NodeSystem& sys, const Box& box);

enum class MinorSign { pos, neg, contains_zero };

// Everything certified about one endpoint: the enclosing box, uniqueness
// and reality flags, interval values of the determinant and the 25 small
// principal minors over the box, and their certified signs. Signs are
// computed on the real restriction of the box and are meaningful only for
// real-certified boxes.
struct Certificate {
  Box box{};
  bool unique = false;
  bool real = false;
  bool node = false;  // determinant enclosure does not exclude zero
  CInterval d{};
  std::array<CInterval, 25> minors{};
  std::array<MinorSign, 25> signs{};
};

enum class CertifyStep {
  none,
  input,        // endpoint list malformed
  paths,        // tracking failed before certification started
  krawczyk,     // some box would not certify
  disjointness, // two certified boxes overlap
  node_count,   // determinant accounting did not come out 44 against 20
  reality,      // conjugation pairing inconsistent
  minor_signs,  // a semidefiniteness decision stayed blocked
};

std::string to_string(CertifyStep step);

struct CertifyOptions {
  double inflate = 1e-4;  // initial box radius scale for krawczyk_test
  int tighten_rounds = 3; // extra contractions before interval evaluation
  int minor_retries = 3;  // refinement rounds for blocked sign patterns
};

// Result of the full pipeline. On success, boxes holds one certificate per
// endpoint in input order, nodes the indices of the 20 certified singular
// points, and type the certified (rho, sigma). On failure, failed_step and
// message say which rung of the ladder gave out; boxes holds whatever had
// been certified up to that point.
struct TypeCertificate {
  bool success = false;
  CombType type{};
  std::vector<Certificate> boxes;
  std::vector<int> nodes;
  CertifyStep failed_step = CertifyStep::none;
  std::string message;
};

// Certified combinatorial type from 64 tracked endpoints:
//   1. Krawczyk-certify one box per endpoint, pairwise disjoint, so the
//      boxes carry all 64 zeros of the node system.
//   2. Interval-evaluate the determinant over every box; exactly 44 must
//      exclude zero. The surface has at least 20 singular points and they
//      solve the node system, so they must sit in the remaining 20 boxes,
//      whose determinant is thereby exactly zero.
//   3. rho counts the node boxes certified real. Every node box must
//      either pass the conjugation test or pair up with the box of its
//      conjugate; a box that does neither aborts the run.
//   4. sigma counts the real node boxes whose minor signs certify a
//      semidefinite matrix: all 25 positive, or signs (-1)^size. A pattern
//      certified to violate both is indefinite; anything blocked by a
//      zero-straddling minor is refined and, if still blocked, aborts.
// Throws std::invalid_argument unless exactly 64 endpoints are supplied.
TypeCertificate certified_type(const NodeSystem& sys,
                               const std::vector<CVec4>& endpoints,
                               const CertifyOptions& opts = {});

// Solve-then-certify convenience used by the command line tools. Tracking
// failures surface as an unsuccessful certificate with step paths.
TypeCertificate certify_pencil(const Pencil& p, const Chart& chart,
                               const TrackOptions& topts,
                               const CertifyOptions& copts, std::uint64_t seed,
                               int threads = 1);

// Human-readable certificate rendering: a versioned header, the (rho,
// sigma) summary, then one block per box with outward-rounded decimal
// interval endpoints, flags and the minor sign pattern. Every printed
// enclosure parses back to an interval containing the stored one.
std::string format_certificate(const TypeCertificate& tc);
void save_certificate(const TypeCertificate& tc, const std::string& path);

}  // namespace quintic
