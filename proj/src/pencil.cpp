#include "quintic/pencil.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quintic/rng.hpp"

namespace quintic {

double Pencil::independence_measure() const {
  // Gram matrix of the generators under the Frobenius inner product on
  // symmetric matrices (off-diagonal entries count twice).
  std::array<std::array<double, 4>, 4> g{};
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      double s = 0.0;
      for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
          const double w = (i == j) ? 1.0 : 2.0;
          s += w * mat[a](i, j) * mat[b](i, j);
        }
      g[a][b] = g[b][a] = s;
    }
  const auto ev = jacobi_eigenvalues<4>(g);
  if (ev[0] <= 0.0) return 0.0;
  return ev[3] / ev[0];
}

Signature signature(const SymMat5& m, double zero_tol) {
  const auto ev = sym_eigenvalues(m);
  const double cut = zero_tol * std::max(frobenius_norm(m), 1e-300);
  Signature s;
  for (double v : ev) {
    if (v > cut)
      ++s.n_plus;
    else if (v < -cut)
      ++s.n_minus;
    else
      ++s.corank;
  }
  return s;
}

bool is_semidefinite(const SymMat5& m, double zero_tol) {
  const Signature s = signature(m, zero_tol);
  return s.n_plus == 0 || s.n_minus == 0;
}

Pencil congruent_pencil(const Pencil& p,
                        const std::array<std::array<double, 5>, 5>& c) {
  Pencil out;
  for (int k = 0; k < 4; ++k) {
    // tmp = A_k * C
    double tmp[5][5] = {};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int l = 0; l < 5; ++l) tmp[i][j] += p.mat[k](i, l) * c[l][j];
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        double s = 0.0;
        for (int l = 0; l < 5; ++l) s += c[l][i] * tmp[l][j];
        out.mat[k].at(i, j) = s;
      }
  }
  return out;
}

Pencil recombine(const Pencil& p, const std::array<std::array<double, 4>, 4>& g) {
  Pencil out;
  for (int i = 0; i < 4; ++i) {
    SymMat5 s;
    for (int e = 0; e < 15; ++e)
      s.a[e] = g[i][0] * p.mat[0].a[e] + g[i][1] * p.mat[1].a[e] +
               g[i][2] * p.mat[2].a[e] + g[i][3] * p.mat[3].a[e];
    out.mat[i] = s;
  }
  return out;
}

Pencil random_normalized_pencil(Rng& rng) {
  Pencil p;
  p.mat[0] = SymMat5::identity();
  for (int k = 1; k < 4; ++k)
    for (auto& v : p.mat[k].a) v = rng.normal();
  return p;
}

double pencil_scale(const Pencil& p) {
  double m = 0.0;
  for (const auto& g : p.mat) m = std::max(m, frobenius_norm(g));
  if (!(m > 0.0) || !std::isfinite(m)) return 1.0;
  return std::exp2(std::round(std::log2(m)));
}

double parse_pencil_number(const std::string& token, int line, int column) {
  const auto slash = token.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(token, &used);
      if (used != token.size())
        throw ParseError("trailing characters in number '" + token + "'", line,
                         column);
      return v;
    }
    const std::string ps = token.substr(0, slash);
    const std::string qs = token.substr(slash + 1);
    const double pv = std::stod(ps, &used);
    if (used != ps.size())
      throw ParseError("bad rational numerator in '" + token + "'", line, column);
    const double qv = std::stod(qs, &used);
    if (used != qs.size() || qv == 0.0)
      throw ParseError("bad rational denominator in '" + token + "'", line,
                       column);
    return pv / qv;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed number '" + token + "'", line, column);
  }
}

Pencil parse_pencil_text(const std::string& text) {
  std::array<double, 60> vals;
  int count = 0;
  int line = 1, column = 1;
  size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ch == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++column;
      ++i;
      continue;
    }
    const int tok_col = column;
    std::string token;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#') {
      token.push_back(text[i]);
      ++i;
      ++column;
    }
    if (count >= 60)
      throw ParseError("more than 60 numbers in pencil", line, tok_col);
    vals[count++] = parse_pencil_number(token, line, tok_col);
  }
  if (count != 60)
    throw ParseError("expected 60 numbers, found " + std::to_string(count), line,
                     column);
  Pencil p;
  for (int k = 0; k < 4; ++k)
    for (int e = 0; e < 15; ++e) p.mat[k].a[e] = vals[15 * k + e];
  if (!p.independent())
    throw ParseError("pencil generators are linearly dependent", line, column);
  return p;
}

Pencil load_pencil(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pencil_text(ss.str());
}

std::string format_pencil(const Pencil& p) {
  std::string out;
  char buf[64];
  for (int k = 0; k < 4; ++k) {
    for (int e = 0; e < 15; ++e) {
      std::snprintf(buf, sizeof(buf), "%.17g", p.mat[k].a[e]);
      out += buf;
      out += (e == 14) ? '\n' : ' ';
    }
  }
  return out;
}

void save_pencil(const Pencil& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << format_pencil(p);
}

}  // namespace quintic
