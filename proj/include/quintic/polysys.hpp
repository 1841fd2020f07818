// The square polynomial system whose solutions carry the singular points of
// the surface det A(y) = 0. The three partial derivatives of the quintic in
// the non-t coordinates are intersected with a generic affine chart
//
//   F(y) = ( dD/dy1, dD/dy2, dD/dy3, c0 y0 + c1 y1 + c2 y2 + c3 y3 + c4 )
//
// so the system stays four dimensional with Bezout number 4*4*4 = 64. By the
// Euler relation, a solution with y0 != 0 also has dD/dy0 = 0 exactly when
// the determinant vanishes there, so the singular points are the solutions
// on which D itself is zero. The determinant and the 25 small principal
// minors are evaluated as functions on top of a solution rather than carried
// as extra equations.
#pragma once

#include <array>

#include "quintic/pencil.hpp"
#include "quintic/rng.hpp"

namespace quintic {

struct Chart {
  std::array<double, 5> c{};  // c0..c3 linear part, c4 affine offset

  template <class T>
  T eval(const std::array<T, 4>& y) const {
    return c[0] * y[0] + c[1] * y[1] + c[2] * y[2] + c[3] * y[3] + T(c[4]);
  }
};

// Gaussian chart normalized to unit Euclidean norm over all five
// coefficients; a pure function of the seed.
Chart make_chart(std::uint64_t seed);

struct NodeSystem {
  Pencil pencil;
  Chart chart;
};

// Linear combination of an explicit generator set. Same role as eval_pencil
// but for generators that are already complex or otherwise transformed.
template <class T>
Sym5<T> eval_generators(const std::array<Sym5<T>, 4>& gen,
                        const std::array<T, 4>& y) {
  Sym5<T> s = y[0] * gen[0];
  for (int k = 1; k < 4; ++k) s = s + y[k] * gen[k];
  return s;
}

template <class T>
std::array<T, 4> residual(const NodeSystem& sys, const std::array<T, 4>& y) {
  const Sym5<T> s = eval_pencil(sys.pencil, y);
  CofactorTables<T> ct;
  ct.build(s);
  std::array<T, 4> f;
  for (int i = 0; i < 3; ++i)
    f[i] = trace_product(ct.adjugate, sym_cast<T>(sys.pencil.mat[i + 1]));
  f[3] = sys.chart.eval(y);
  return f;
}

// Residual and its 4x4 Jacobian in one pass. Rows 0..2 are second partials
// of the determinant, obtained by differentiating the adjugate through the
// cofactor tables; row 3 is the constant chart row. The generator-level
// overload exposes the cofactor tables so homotopies can reuse them for
// their tau derivative.
template <class T>
void residual_and_jacobian(const std::array<Sym5<T>, 4>& gen,
                           const Chart& chart, const std::array<T, 4>& y,
                           CofactorTables<T>& ct, std::array<T, 4>& f,
                           Mat4<T>& jac) {
  ct.build(eval_generators(gen, y));
  for (int i = 0; i < 3; ++i) f[i] = trace_product(ct.adjugate, gen[i + 1]);
  f[3] = chart.eval(y);
  for (int k = 0; k < 4; ++k) {
    const Sym5<T> da = ct.dadj(gen[k]);
    for (int i = 0; i < 3; ++i) jac[i][k] = trace_product(da, gen[i + 1]);
    jac[3][k] = T(chart.c[k]);
  }
}

template <class T>
void residual_and_jacobian(const NodeSystem& sys, const std::array<T, 4>& y,
                           std::array<T, 4>& f, Mat4<T>& jac) {
  std::array<Sym5<T>, 4> gen;
  for (int k = 0; k < 4; ++k) gen[k] = sym_cast<T>(sys.pencil.mat[k]);
  CofactorTables<T> ct;
  residual_and_jacobian(gen, sys.chart, y, ct, f, jac);
}

template <class T>
Mat4<T> jacobian(const NodeSystem& sys, const std::array<T, 4>& y) {
  std::array<T, 4> f;
  Mat4<T> j;
  residual_and_jacobian(sys, y, f, j);
  return j;
}

// Values layered on a solution: the determinant and the principal minors of
// sizes 1..3 in canonical order.
template <class T>
struct ExtendedValues {
  T det{};
  std::array<T, 25> minors{};
};

template <class T>
ExtendedValues<T> extended_values(const Pencil& p, const std::array<T, 4>& y) {
  const Sym5<T> s = eval_pencil(p, y);
  ExtendedValues<T> out;
  out.det = det5(s);
  out.minors = principal_minors(s);
  return out;
}

// Scale of the residual components at y: the partials are homogeneous of
// degree 4, so tolerances are taken relative to (1 + |y|_inf)^4 times the
// fourth power of the generator scale.
template <class T>
double residual_scale(const std::array<T, 4>& y, double gen_norm) {
  double m = 0.0;
  for (const auto& v : y) m = std::max(m, std::abs(v));
  const double b = (1.0 + m) * std::max(gen_norm, 1e-12);
  return b * b * b * b;
}

}  // namespace quintic
