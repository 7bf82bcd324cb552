#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catent/int_matrix.hpp"

namespace catent {

// Finite quiver, 0-indexed vertices; parallel arrows allowed.
struct Quiver {
  int vertices = 0;
  std::vector<std::pair<int, int>> arrows;  // (source, target)
};

inline bool is_acyclic(const Quiver& q) {
  std::vector<int> indeg(static_cast<std::size_t>(q.vertices), 0);
  for (const auto& a : q.arrows) ++indeg[static_cast<std::size_t>(a.second)];
  std::vector<int> ready;
  for (int v = 0; v < q.vertices; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& a : q.arrows)
      if (a.first == v && --indeg[static_cast<std::size_t>(a.second)] == 0)
        ready.push_back(a.second);
  }
  return seen == q.vertices;
}

// E(i,j) = delta_ij - #arrows(i -> j); chi(d, e) = d^T E e on dimension vectors.
inline IntMatrix euler_matrix(const Quiver& q) {
  if (q.vertices < 1) throw error(errc::input, "euler_matrix: quiver needs a vertex");
  for (const auto& a : q.arrows)
    if (a.first < 0 || a.first >= q.vertices || a.second < 0 || a.second >= q.vertices)
      throw error(errc::input, "euler_matrix: arrow endpoint out of range");
  if (!is_acyclic(q)) throw error(errc::precondition, "euler_matrix: cyclic quiver unsupported");
  IntMatrix e = IntMatrix::identity(static_cast<std::size_t>(q.vertices));
  for (const auto& a : q.arrows)
    e(static_cast<std::size_t>(a.first), static_cast<std::size_t>(a.second)) -= 1;
  return e;
}

// Coxeter transformation Phi = -E^{-1} E^T, the K-theory action of the
// Auslander-Reiten translate; satisfies Phi^T E Phi = E.
inline IntMatrix coxeter_matrix(const Quiver& q) {
  const IntMatrix e = euler_matrix(q);
  return -(unimodular_inverse(e) * e.transpose());
}

// Dynkin type with a fixed default orientation.
struct DynkinType {
  char family = 'A';  // 'A', 'D' or 'E'
  int rank = 1;
  Quiver quiver;

  std::string name() const { return family + std::to_string(rank); }
};

inline DynkinType dynkin(char family, int rank) {
  DynkinType d;
  d.family = family;
  d.rank = rank;
  Quiver& q = d.quiver;
  q.vertices = rank;
  switch (family) {
    case 'A':
      if (rank < 1) throw error(errc::input, "dynkin: A_n needs n >= 1");
      for (int i = 0; i + 1 < rank; ++i) q.arrows.emplace_back(i, i + 1);
      break;
    case 'D':
      if (rank < 4) throw error(errc::input, "dynkin: D_n needs n >= 4");
      q.arrows.emplace_back(0, 2);
      q.arrows.emplace_back(1, 2);
      for (int i = 2; i + 1 < rank; ++i) q.arrows.emplace_back(i, i + 1);
      break;
    case 'E':
      if (rank < 6 || rank > 8) throw error(errc::input, "dynkin: E_n needs n in {6,7,8}");
      for (int i = 0; i + 2 < rank; ++i) q.arrows.emplace_back(i, i + 1);
      q.arrows.emplace_back(rank - 1, 2);
      break;
    default:
      throw error(errc::input, "dynkin: family must be A, D or E");
  }
  return d;
}

// Extended Dynkin quivers (euler/coxeter only; their root systems are infinite).
inline Quiver extended_a(int p, int q) {
  if (p < 1 || q < 1) throw error(errc::input, "extended_a: p, q >= 1 required");
  Quiver qu;
  qu.vertices = p + q;
  for (int i = 0; i < p; ++i) qu.arrows.emplace_back(i, i + 1);
  qu.arrows.emplace_back(0, p + q - 1);
  for (int i = p + q - 1; i > p; --i) qu.arrows.emplace_back(i, i - 1);
  return qu;
}

inline Quiver extended_d(int n) {
  if (n < 4) throw error(errc::input, "extended_d: n >= 4 required");
  Quiver q;
  q.vertices = n + 1;
  q.arrows.emplace_back(0, 2);
  q.arrows.emplace_back(1, 2);
  for (int i = 2; i + 2 < n; ++i) q.arrows.emplace_back(i, i + 1);
  q.arrows.emplace_back(n - 2, n - 1);
  q.arrows.emplace_back(n - 2, n);
  return q;
}

inline Quiver extended_e(int n) {
  if (n < 6 || n > 8) throw error(errc::input, "extended_e: n in {6,7,8} required");
  Quiver q;
  q.vertices = n + 1;
  auto arm = [&](int first, int len) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      q.arrows.emplace_back(prev, first + i);
      prev = first + i;
    }
  };
  if (n == 6) { arm(1, 2); arm(3, 2); arm(5, 2); }
  if (n == 7) { arm(1, 1); arm(2, 3); arm(5, 3); }
  if (n == 8) { arm(1, 1); arm(2, 2); arm(4, 5); }
  return q;
}

// Dimension vector of an indecomposable module; for Dynkin types these are
// exactly the positive roots (Gabriel).
using Root = std::vector<Int>;

inline std::vector<Root> positive_roots(const DynkinType& d) {
  const IntMatrix e = euler_matrix(d.quiver);
  const IntMatrix cartan = e + e.transpose();
  const std::size_t n = static_cast<std::size_t>(d.rank);
  std::set<Root> found;
  std::vector<Root> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    Root simple(n, Int(0));
    simple[i] = 1;
    found.insert(simple);
    frontier.push_back(std::move(simple));
  }
  while (!frontier.empty()) {
    const Root v = frontier.back();
    frontier.pop_back();
    const std::vector<Int> cv = cartan.apply(v);
    for (std::size_t i = 0; i < n; ++i) {
      Root w = v;
      w[i] -= cv[i];
      bool positive = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (w[k] < 0) { positive = false; break; }
        if (w[k] > 0) positive = true;
      }
      if (positive && found.insert(w).second) frontier.push_back(std::move(w));
    }
  }
  std::size_t expected = 0;
  const std::size_t r = n;
  if (d.family == 'A') expected = r * (r + 1) / 2;
  if (d.family == 'D') expected = r * (r - 1);
  if (d.family == 'E') expected = d.rank == 6 ? 36 : d.rank == 7 ? 63 : 120;
  std::vector<Root> roots(found.begin(), found.end());
  if (roots.size() != expected)
    throw error(errc::internal, "positive_roots: closure count mismatch for " + d.name());
  return roots;
}

inline int coxeter_number(const DynkinType& d) {
  if (d.family == 'A') return d.rank + 1;
  if (d.family == 'D') return 2 * d.rank - 2;
  return d.rank == 6 ? 12 : d.rank == 7 ? 18 : 30;
}

// dim P_i = row i of E^{-1} (path counts from i); dim I_i = column i.
inline std::vector<Root> projective_dims(const DynkinType& d) {
  const IntMatrix inv = unimodular_inverse(euler_matrix(d.quiver));
  std::vector<Root> dims;
  for (std::size_t i = 0; i < inv.rows(); ++i) {
    Root r(inv.cols());
    for (std::size_t j = 0; j < inv.cols(); ++j) r[j] = inv(i, j);
    dims.push_back(std::move(r));
  }
  return dims;
}

inline std::vector<Root> injective_dims(const DynkinType& d) {
  const IntMatrix inv = unimodular_inverse(euler_matrix(d.quiver));
  std::vector<Root> dims;
  for (std::size_t j = 0; j < inv.cols(); ++j) {
    Root r(inv.rows());
    for (std::size_t i = 0; i < inv.rows(); ++i) r[i] = inv(i, j);
    dims.push_back(std::move(r));
  }
  return dims;
}

// Serre functor on indecomposables of the bounded derived category:
// S(P_i) = I_i (Nakayama, no shift); otherwise S(M[s]) = tau(M)[s+1].
inline std::pair<Root, int> ar_translate(const DynkinType& d, const Root& root, int shift) {
  const std::size_t n = static_cast<std::size_t>(d.rank);
  if (root.size() != n) throw error(errc::input, "ar_translate: dimension vector length");
  {
    const IntMatrix e = euler_matrix(d.quiver);
    const IntMatrix cartan = e + e.transpose();
    Int q2 = 0;
    const std::vector<Int> cv = cartan.apply(root);
    bool nonneg = true;
    for (std::size_t i = 0; i < n; ++i) {
      q2 += root[i] * cv[i];
      if (root[i] < 0) nonneg = false;
    }
    if (!nonneg || q2 != 2)
      throw error(errc::precondition, "ar_translate: not a positive root");
  }
  const std::vector<Root> proj = projective_dims(d);
  for (std::size_t i = 0; i < proj.size(); ++i)
    if (proj[i] == root) return {injective_dims(d)[i], shift};
  const IntMatrix phi = coxeter_matrix(d.quiver);
  Root image = phi.apply(root);
  for (const Int& c : image)
    if (c < 0) throw error(errc::internal, "ar_translate: translate left the positive roots");
  return {std::move(image), shift + 1};
}

// K-theory matrix of the Serre functor itself (shift signs included:
// N(S) = E^{-1} E^T = -Phi).
inline IntMatrix serre_matrix(const DynkinType& d) {
  const IntMatrix e = euler_matrix(d.quiver);
  return unimodular_inverse(e) * e.transpose();
}

}  // namespace catent
