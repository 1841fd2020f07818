// Classification of solved endpoints. The 64 solutions of the node system
// split by the determinant value into 20 nodes and 44 spurious points; each
// node is tagged real or nonreal on phase-normalized projective coordinates
// and the tags aggregate into the combinatorial type (rho, sigma). The
// admissible types for a given matrix size follow from the parity and
// Radon-Hurwitz constraints.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quintic/pencil.hpp"
#include "quintic/polysys.hpp"
#include "quintic/tracker.hpp"

namespace quintic {

// Convenience for feeding a solve straight into classification.
std::vector<CVec4> endpoints(const SolveOutcome& out);

enum class NodeTag {
  nonreal_eta1,
  nonreal_eta0,
  real_semidefinite,
  real_indefinite,
};

const char* to_string(NodeTag t);

struct NodeSolution {
  CVec4 point{};     // phase-normalized: largest-modulus coordinate real > 0
  CSymMat5 matrix{}; // pencil at point, scaled to unit Frobenius norm
  std::complex<double> d{};  // determinant at the unit-norm representative
  std::array<std::complex<double>, 25> minors{};  // of the normalized matrix
  NodeTag tag = NodeTag::nonreal_eta0;
  double imag_norm = 0.0;  // Frobenius norm of Im(matrix); matrix has norm 1
};

struct ClassifyTols {
  double d_tol = 1e-6;       // node cut, relative to max |d| over endpoints
  double reality_tol = 1e-7; // imag_norm below this counts as real
  double dedupe_tol = 1e-8;  // endpoint distance, relative to 1 + point size
  double zero_tol = 1e-9;    // eigenvalue treated as zero inside eta
};

enum class ClassifyStatus {
  ok,
  ambiguous,   // some |d| in the gray band; only certification can decide
  nongeneric,  // duplicate endpoints or an identically singular pencil
};

struct Classification {
  ClassifyStatus status = ClassifyStatus::ok;
  std::string message;
  std::vector<NodeSolution> nodes;  // |d| below the cut
  std::vector<NodeSolution> rest;
};

Classification classify_endpoints(const Pencil& p,
                                  const std::vector<CVec4>& endpoints,
                                  const ClassifyTols& tols = {});

// 1 iff the three largest eigenvalues of Re(b) share a strict sign. An
// eigenvalue within zero_tol * |Re(b)|_F of zero breaks strictness.
int eta(const CSymMat5& b, double zero_tol = 1e-9);

struct CombType {
  int rho = 0;
  int sigma = 0;
  friend bool operator==(const CombType&, const CombType&) = default;
  friend auto operator<=>(const CombType&, const CombType&) = default;
};

std::string to_string(const CombType& t);

// Requires exactly 20 nodes; throws std::invalid_argument otherwise.
CombType comb_type(const std::vector<NodeSolution>& nodes);

// 2^c + 8d for m = (2a+1) 2^(c+4d) with c in {0,1,2,3}.
int radon_hurwitz(int m);

// All (rho, sigma) a transversal pencil of symmetric m x m matrices with
// m = n can attain: sigma even, 0 <= sigma <= rho <= binom(n+1,3), rho of
// the same parity as binom(n+1,3), and rho = 0 only when a spectrahedral
// plane of simple-eigenvalue matrices exists for that n. Sorted ascending.
std::vector<CombType> admissible_types(int n);

struct PdWitness {
  Vec4 point{};
  double lambda_min = 0.0;  // of the pencil at the unit-norm witness
};

// Seeded search for a point where the pencil is positive definite: the
// coordinate directions first, then random restarts refined by coordinate
// ascent on the smallest eigenvalue. budget bounds the total number of
// ascent sweeps across restarts. Absence of a witness is NOT a proof that
// no positive definite point exists.
std::optional<PdWitness> pd_witness_search(const Pencil& p, std::uint64_t seed,
                                           int budget = 200);

}  // namespace quintic
