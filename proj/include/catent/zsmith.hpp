#pragma once

#include <optional>
#include <vector>

#include "catent/int_matrix.hpp"

namespace catent {

// Smith decomposition u*a*v = d with u, v unimodular and d diagonal,
// d(0,0) | d(1,1) | ... ; zeros trail.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  int rank = 0;
};

inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  SmithDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& d = s.d;

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap(d(i, k), d(j, k));
    for (int k = 0; k < m; ++k) std::swap(s.u(i, k), s.u(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < m; ++k) std::swap(d(k, i), d(k, j));
    for (int k = 0; k < n; ++k) std::swap(s.v(k, i), s.v(k, j));
  };
  auto add_row = [&](int dst, int src, const Int& c) {  // row dst += c * row src
    for (int k = 0; k < n; ++k) d(dst, k) += c * d(src, k);
    for (int k = 0; k < m; ++k) s.u(dst, k) += c * s.u(src, k);
  };
  auto add_col = [&](int dst, int src, const Int& c) {
    for (int k = 0; k < m; ++k) d(k, dst) += c * d(k, src);
    for (int k = 0; k < n; ++k) s.v(k, dst) += c * s.v(k, src);
  };
  auto negate_row = [&](int i) {
    for (int k = 0; k < n; ++k) d(i, k) = -d(i, k);
    for (int k = 0; k < m; ++k) s.u(i, k) = -s.u(i, k);
  };

  int t = 0;
  while (t < m && t < n) {
    // Smallest nonzero entry of the trailing block as pivot.
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (d(i, j) != 0 && (pi < 0 || int_abs(d(i, j)) < int_abs(d(pi, pj)))) { pi = i; pj = j; }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const Int q = d(i, t) / d(t, t);
        add_row(i, t, -q);
        if (d(i, t) != 0) { swap_rows(t, i); clean = false; }
      }
      for (int j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const Int q = d(t, j) / d(t, t);
        add_col(j, t, -q);
        if (d(t, j) != 0) { swap_cols(t, j); clean = false; }
      }
    }

    // Divisibility: fold any non-multiple into the pivot's row and retry.
    bool divides = true;
    for (int i = t + 1; i < m && divides; ++i)
      for (int j = t + 1; j < n && divides; ++j)
        if (d(i, j) % d(t, t) != 0) {
          add_row(t, i, 1);
          divides = false;
        }
    if (!divides) continue;

    if (d(t, t) < 0) negate_row(t);
    ++t;
  }
  s.rank = t;
  return s;
}

// Integer solutions of a*x = b when the solution set is a point or a line:
// x0 alone (dir empty), or the family {x0 + t*dir : t in Z}. nullopt when
// inconsistent, non-integral, or the solution space has dimension >= 2.
struct AffineLine {
  std::vector<Int> x0;
  std::optional<std::vector<Int>> dir;
};

inline std::optional<AffineLine> solve_affine(const IntMatrix& a, const std::vector<Int>& b) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  if (b.size() != static_cast<std::size_t>(m))
    throw error(errc::input, "solve_affine: dimension mismatch");
  const SmithDecomposition s = smith_normal_form(a);
  if (n - s.rank > 1) return std::nullopt;
  std::vector<Int> c(m, Int(0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) c[i] += s.u(i, k) * b[k];
  std::vector<Int> y(n, Int(0));
  for (int i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (c[i] % s.d(i, i) != 0) return std::nullopt;
      y[i] = c[i] / s.d(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  AffineLine out;
  out.x0.assign(n, Int(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out.x0[i] += s.v(i, k) * y[k];
  if (s.rank < n) {
    std::vector<Int> dir(n, Int(0));
    for (int i = 0; i < n; ++i) dir[i] = s.v(i, s.rank);
    out.dir = std::move(dir);
  }
  return out;
}

// Unique integer solution of a*x = b, if one exists: nullopt when the system
// is inconsistent, has no integer solution, or is underdetermined.
inline std::optional<std::vector<Int>> solve_unique(const IntMatrix& a,
                                                    const std::vector<Int>& b) {
  const auto sol = solve_affine(a, b);
  if (!sol || sol->dir) return std::nullopt;
  return sol->x0;
}

// Basis of {x : a*x = 0} as matrix columns (saturated: a direct summand of Z^n).
// Columns are sign-canonical (first nonzero entry positive).
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition s = smith_normal_form(a);
  const int n = static_cast<int>(a.cols()), k = n - s.rank;
  IntMatrix ker(n, k);
  for (int j = 0; j < k; ++j) {
    int lead = -1;
    for (int i = 0; i < n; ++i) {
      ker(i, j) = s.v(i, s.rank + j);
      if (lead < 0 && ker(i, j) != 0) lead = i;
    }
    if (lead >= 0 && ker(lead, j) < 0)
      for (int i = 0; i < n; ++i) ker(i, j) = -ker(i, j);
  }
  return ker;
}

}  // namespace catent
