// A pencil of five-by-five real symmetric matrices
//
//   A(y) = y0*A0 + y1*A1 + y2*A2 + y3*A3,
//
// the quintic surface det A(y) = 0 it cuts out, and the basic evaluations on
// it: the determinant, its gradient in the four pencil coordinates, and the
// inertia of A at a real point. The y0 coordinate plays the role of t in the
// spectrahedron A(t, x) >= 0.
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quintic/linalg.hpp"

namespace quintic {

using Vec4 = std::array<double, 4>;
using CVec4 = std::array<cdouble, 4>;

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg), line(l), column(c) {}
};

struct Pencil {
  std::array<SymMat5, 4> mat;

  const SymMat5& operator[](int k) const { return mat[k]; }
  SymMat5& operator[](int k) { return mat[k]; }

  // True iff A0 is exactly the identity.
  bool normalized() const { return mat[0] == SymMat5::identity(); }

  // Smallest eigenvalue of the Gram matrix of the four generators relative
  // to the largest; near zero means the span has dimension < 4.
  double independence_measure() const;
  bool independent(double tol = 1e-10) const {
    return independence_measure() > tol;
  }
};

// Inertia of a real symmetric matrix: eigenvalue signs with |lambda| below
// zero_tol * ||M||_F counted into the corank.
struct Signature {
  int n_plus = 0;
  int n_minus = 0;
  int corank = 0;
};

Signature signature(const SymMat5& m, double zero_tol = 1e-8);
bool is_semidefinite(const SymMat5& m, double zero_tol = 1e-8);

template <class T>
Sym5<T> eval_pencil(const Pencil& p, const std::array<T, 4>& y) {
  Sym5<T> s;
  for (int e = 0; e < 15; ++e)
    s.a[e] = y[0] * p.mat[0].a[e] + y[1] * p.mat[1].a[e] +
             y[2] * p.mat[2].a[e] + y[3] * p.mat[3].a[e];
  return s;
}

template <class T>
struct DetGrad {
  T det{};
  std::array<T, 4> grad{};  // d det / d y_k via tr(adj(A) * A_k)
};

template <class T>
DetGrad<T> det_and_grad(const Pencil& p, const std::array<T, 4>& y) {
  const Sym5<T> s = eval_pencil(p, y);
  CofactorTables<T> ct;
  ct.build(s);
  DetGrad<T> r;
  r.det = ct.det;
  for (int k = 0; k < 4; ++k)
    r.grad[k] = trace_product(ct.adjugate, sym_cast<T>(p.mat[k]));
  return r;
}

// Congruence image C^T A_k C of every generator.
Pencil congruent_pencil(const Pencil& p, const std::array<std::array<double, 5>, 5>& c);

// Basis change of the coordinate space: B_i = sum_j g[i][j] A_j.
Pencil recombine(const Pencil& p, const std::array<std::array<double, 4>, 4>& g);

class Rng;
// A0 = identity, other generators with independent standard normal entries
// on the packed upper triangle.
Pencil random_normalized_pencil(Rng& rng);

// Largest generator Frobenius norm rounded to the nearest power of two.
// Dividing a pencil by this keeps every entry an exact double, leaves the
// solution set of the node equations untouched, and brings the coefficients
// to unit scale for the tracker and the certifier.
double pencil_scale(const Pencil& p);

// Text format: 60 whitespace-separated numbers, the packed upper triangles
// of A0..A3 in order. Each number is a decimal literal or an exact rational
// written p/q. '#' starts a comment running to the end of the line.
Pencil parse_pencil_text(const std::string& text);
Pencil load_pencil(const std::string& path);
std::string format_pencil(const Pencil& p);  // 17 significant digits
void save_pencil(const Pencil& p, const std::string& path);

// One token of the text format.
double parse_pencil_number(const std::string& token, int line, int column);

}  // namespace quintic
