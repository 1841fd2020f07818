// Fixed-size symmetric linear algebra for 5x5 matrix pencils.
//
// Sym5<T> stores the packed upper triangle of a symmetric 5x5 matrix and is
// instantiated with double, std::complex<double>, exact rationals in tests,
// and the interval scalars used by the certification layer. Everything here
// is division free so every instantiation is a polynomial evaluation.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace quintic {

using cdouble = std::complex<double>;

template <class T>
struct Sym5 {
  // Packed upper triangle, row-major: (0,0) (0,1) ... (0,4) (1,1) ... (4,4).
  std::array<T, 15> a{};

  static constexpr int index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * 5 - i * (i - 1) / 2 + (j - i);
  }

  T operator()(int i, int j) const { return a[index(i, j)]; }
  T& at(int i, int j) { return a[index(i, j)]; }

  static Sym5 zero() { return Sym5{}; }

  static Sym5 identity() {
    Sym5 m;
    for (int i = 0; i < 5; ++i) m.at(i, i) = T(1);
    return m;
  }

  static Sym5 diagonal(const std::array<T, 5>& d) {
    Sym5 m;
    for (int i = 0; i < 5; ++i) m.at(i, i) = d[i];
    return m;
  }

  Sym5 operator+(const Sym5& o) const {
    Sym5 r;
    for (int k = 0; k < 15; ++k) r.a[k] = a[k] + o.a[k];
    return r;
  }

  Sym5 operator-(const Sym5& o) const {
    Sym5 r;
    for (int k = 0; k < 15; ++k) r.a[k] = a[k] - o.a[k];
    return r;
  }

  template <class S>
  friend Sym5 operator*(const S& s, const Sym5& m) {
    Sym5 r;
    for (int k = 0; k < 15; ++k) r.a[k] = s * m.a[k];
    return r;
  }

  bool operator==(const Sym5& o) const { return a == o.a; }
};

using SymMat5 = Sym5<double>;
using CSymMat5 = Sym5<cdouble>;

template <class To, class From>
Sym5<To> sym_cast(const Sym5<From>& m) {
  Sym5<To> r;
  for (int k = 0; k < 15; ++k) r.a[k] = To(m.a[k]);
  return r;
}

inline CSymMat5 complexify(const SymMat5& m) {
  CSymMat5 r;
  for (int k = 0; k < 15; ++k) r.a[k] = cdouble(m.a[k], 0.0);
  return r;
}

inline SymMat5 real_part(const CSymMat5& m) {
  SymMat5 r;
  for (int k = 0; k < 15; ++k) r.a[k] = m.a[k].real();
  return r;
}

inline SymMat5 imag_part(const CSymMat5& m) {
  SymMat5 r;
  for (int k = 0; k < 15; ++k) r.a[k] = m.a[k].imag();
  return r;
}

template <class T>
T trace(const Sym5<T>& m) {
  return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3) + m(4, 4);
}

// tr(X * Y) for symmetric X, Y: diagonal products plus twice the off-diagonal.
template <class T>
T trace_product(const Sym5<T>& x, const Sym5<T>& y) {
  T diag = x(0, 0) * y(0, 0);
  for (int i = 1; i < 5; ++i) diag = diag + x(i, i) * y(i, i);
  T off = x(0, 1) * y(0, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      if (i == 0 && j == 1) continue;
      off = off + x(i, j) * y(i, j);
    }
  return diag + off + off;
}

inline double frobenius_norm(const SymMat5& m) {
  double s = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const double v = m(i, j);
      s += (i == j) ? v * v : 2.0 * v * v;
    }
  return std::sqrt(s);
}

inline double frobenius_norm(const CSymMat5& m) {
  double s = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const double v = std::norm(m(i, j));
      s += (i == j) ? v : 2.0 * v;
    }
  return std::sqrt(s);
}

inline double max_abs(const SymMat5& m) {
  double s = 0.0;
  for (double v : m.a) s = std::max(s, std::abs(v));
  return s;
}

namespace detail {

// Index sets obtained by dropping one element of {0..4} resp. {0..3}.
inline constexpr int kDrop5[5][4] = {
    {1, 2, 3, 4}, {0, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 4}, {0, 1, 2, 3}};
inline constexpr int kDrop4[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};

template <class T>
T det3_full(const T m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Adjugate and determinant of a full 4x4 via 3x3 cofactors.
template <class T>
void adj4_full(const T m[4][4], T adj[4][4], T& det) {
  for (int p = 0; p < 4; ++p) {
    const int* rr = kDrop4[p];
    for (int q = 0; q < 4; ++q) {
      const int* cc = kDrop4[q];
      T sub[3][3];
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) sub[r][c] = m[rr[r]][cc[c]];
      const T d3 = det3_full(sub);
      // adj[q][p] is the (p,q) cofactor.
      adj[q][p] = ((p + q) & 1) ? -d3 : d3;
    }
  }
  det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0] +
        m[0][3] * adj[3][0];
}

}  // namespace detail

// Cofactor data of a symmetric 5x5: the 15 distinct 4x4 submatrix adjugates
// plus the 5x5 adjugate and determinant assembled from them. Building this
// once per point serves the determinant, the gradient and the Jacobian of
// the node equations, all through Jacobi's formula.
template <class T>
struct CofactorTables {
  std::array<std::array<T, 16>, 15> sub_adj;  // adjugate of each 4x4 submatrix
  Sym5<T> adjugate;                           // adjugate of the 5x5
  T det{};                                    // determinant of the 5x5

  void build(const Sym5<T>& s) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i; j < 5; ++j) {
        const int* rr = detail::kDrop5[j];  // delete row j
        const int* cc = detail::kDrop5[i];  // delete column i
        T m4[4][4];
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q) m4[p][q] = s(rr[p], cc[q]);
        T a4[4][4];
        T d4;
        detail::adj4_full(m4, a4, d4);
        const int k = Sym5<T>::index(i, j);
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q) sub_adj[k][4 * p + q] = a4[p][q];
        adjugate.a[k] = ((i + j) & 1) ? -d4 : d4;
      }
    }
    // Laplace expansion along row 0 using the already-signed cofactors.
    det = s(0, 0) * adjugate(0, 0) + s(0, 1) * adjugate(1, 0) +
          s(0, 2) * adjugate(2, 0) + s(0, 3) * adjugate(3, 0) +
          s(0, 4) * adjugate(4, 0);
  }

  // Directional derivative of the adjugate in a symmetric direction u:
  // entrywise Jacobi's formula on each 4x4 cofactor.
  Sym5<T> dadj(const Sym5<T>& u) const {
    Sym5<T> r;
    for (int i = 0; i < 5; ++i) {
      for (int j = i; j < 5; ++j) {
        const int* rr = detail::kDrop5[j];
        const int* cc = detail::kDrop5[i];
        const int k = Sym5<T>::index(i, j);
        const std::array<T, 16>& adj = sub_adj[k];
        // tr(adj4 * u4) with u4[p][q] = u(rr[p], cc[q]).
        T s = adj[4 * 0 + 0] * u(rr[0], cc[0]);
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q) {
            if (p == 0 && q == 0) continue;
            s = s + adj[4 * p + q] * u(rr[q], cc[p]);
          }
        r.a[k] = ((i + j) & 1) ? -s : s;
      }
    }
    return r;
  }
};

template <class T>
T det5(const Sym5<T>& s) {
  CofactorTables<T> ct;
  ct.build(s);
  return ct.det;
}

template <class T>
Sym5<T> adjugate(const Sym5<T>& s) {
  CofactorTables<T> ct;
  ct.build(s);
  return ct.adjugate;
}

// Principal minors of sizes 1..3 in canonical order: sizes ascending, index
// subsets lexicographic within each size. 5 + 10 + 10 = 25 values. Sizes 4
// and 5 are excluded on purpose: at the points the toolkit evaluates them
// they vanish and carry no sign information.
struct MinorSubset {
  int size;
  std::array<int, 3> idx;
};

inline constexpr std::array<MinorSubset, 25> kMinorSubsets = {{
    {1, {0, -1, -1}}, {1, {1, -1, -1}}, {1, {2, -1, -1}}, {1, {3, -1, -1}},
    {1, {4, -1, -1}}, {2, {0, 1, -1}},  {2, {0, 2, -1}},  {2, {0, 3, -1}},
    {2, {0, 4, -1}},  {2, {1, 2, -1}},  {2, {1, 3, -1}},  {2, {1, 4, -1}},
    {2, {2, 3, -1}},  {2, {2, 4, -1}},  {2, {3, 4, -1}},  {3, {0, 1, 2}},
    {3, {0, 1, 3}},   {3, {0, 1, 4}},   {3, {0, 2, 3}},   {3, {0, 2, 4}},
    {3, {0, 3, 4}},   {3, {1, 2, 3}},   {3, {1, 2, 4}},   {3, {1, 3, 4}},
    {3, {2, 3, 4}},
}};

template <class T>
std::array<T, 25> principal_minors(const Sym5<T>& s) {
  std::array<T, 25> out;
  for (int k = 0; k < 25; ++k) {
    const MinorSubset& ms = kMinorSubsets[k];
    if (ms.size == 1) {
      out[k] = s(ms.idx[0], ms.idx[0]);
    } else if (ms.size == 2) {
      const int i = ms.idx[0], j = ms.idx[1];
      out[k] = s(i, i) * s(j, j) - s(i, j) * s(i, j);
    } else {
      const int i = ms.idx[0], j = ms.idx[1], l = ms.idx[2];
      T m[3][3] = {{s(i, i), s(i, j), s(i, l)},
                   {s(j, i), s(j, j), s(j, l)},
                   {s(l, i), s(l, j), s(l, l)}};
      out[k] = detail::det3_full(m);
    }
  }
  return out;
}

// Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.
// Sweeps until the off-diagonal Frobenius norm drops below
// tol_factor * ||input||_F. Returns eigenvalues in descending order.
template <int N>
std::array<double, N> jacobi_eigenvalues(std::array<std::array<double, N>, N> m,
                                         double tol_factor = 1e-13) {
  double norm0 = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) norm0 += m[i][j] * m[i][j];
  norm0 = std::sqrt(norm0);
  const double stop = tol_factor * norm0;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) off += 2.0 * m[i][j] * m[i][j];
    if (std::sqrt(off) <= stop || norm0 == 0.0) {
      std::array<double, N> ev;
      for (int i = 0; i < N; ++i) ev[i] = m[i][i];
      for (int i = 1; i < N; ++i) {  // insertion sort, descending
        const double v = ev[i];
        int j = i - 1;
        while (j >= 0 && ev[j] < v) {
          ev[j + 1] = ev[j];
          --j;
        }
        ev[j + 1] = v;
      }
      return ev;
    }
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = m[p][q];
        if (apq == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0)
                             ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                             : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < N; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < N; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  throw std::runtime_error("jacobi_eigenvalues: sweep limit exceeded");
}

std::array<double, 5> sym_eigenvalues(const SymMat5& m);

template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

// Partially pivoted LU of a dense 4x4, in place. Magnitudes go through
// std::abs so the same code serves real and complex matrices. Returns false
// when a pivot degenerates (relative to the largest input entry), which the
// Newton and Krawczyk callers treat as "do not trust this direction".
template <class T>
bool lu_factor4(Mat4<T>& a, std::array<int, 4>& perm) {
  double biggest = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) biggest = std::max(biggest, std::abs(a[i][j]));
  const double tiny = biggest * 1e-18 + 1e-290;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    double best = std::abs(a[c][c]);
    for (int r = c + 1; r < 4; ++r) {
      const double v = std::abs(a[r][c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best > tiny)) return false;  // also rejects NaN
    perm[c] = piv;
    if (piv != c) std::swap(a[piv], a[c]);
    for (int r = c + 1; r < 4; ++r) {
      const T m = a[r][c] / a[c][c];
      a[r][c] = m;
      for (int k = c + 1; k < 4; ++k) a[r][k] = a[r][k] - m * a[c][k];
    }
  }
  return true;
}

template <class T>
void lu_solve4(const Mat4<T>& lu, const std::array<int, 4>& perm,
               std::array<T, 4> b, std::array<T, 4>& x) {
  for (int c = 0; c < 4; ++c) std::swap(b[c], b[perm[c]]);
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < r; ++c) b[r] = b[r] - lu[r][c] * b[c];
  for (int r = 3; r >= 0; --r) {
    T s = b[r];
    for (int c = r + 1; c < 4; ++c) s = s - lu[r][c] * x[c];
    x[r] = s / lu[r][r];
  }
}

template <class T>
bool solve4(Mat4<T> a, const std::array<T, 4>& b, std::array<T, 4>& x) {
  std::array<int, 4> perm;
  if (!lu_factor4(a, perm)) return false;
  lu_solve4(a, perm, b, x);
  return true;
}

template <class T>
bool invert4(Mat4<T> a, Mat4<T>& inv) {
  std::array<int, 4> perm;
  if (!lu_factor4(a, perm)) return false;
  for (int j = 0; j < 4; ++j) {
    std::array<T, 4> e{};
    std::array<T, 4> col;
    e[j] = T(1);
    lu_solve4(a, perm, e, col);
    for (int i = 0; i < 4; ++i) inv[i][j] = col[i];
  }
  return true;
}

}  // namespace quintic
