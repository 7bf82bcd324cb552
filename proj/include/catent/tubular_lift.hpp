#pragma once

#include <map>
#include <utility>
#include <vector>

#include "catent/orbifold.hpp"
#include "catent/sl2z.hpp"
#include "catent/zsmith.hpp"

namespace catent {

// Classes [O(y)] with deg y = 0: one for each residue tuple p with
// a | sum_i p_i (a/a_i), completed by l = -(sum_i p_i (a/a_i))/a.
inline std::vector<KClass> degree_zero_line_bundles(const WeightData& w) {
  const Int a = invariants(w).a;
  std::vector<KClass> out;
  std::vector<Int> p(w.branch_count(), Int(0));
  auto rec = [&](auto&& self, std::size_t i, Int degsum) -> void {
    if (i == w.branch_count()) {
      if (degsum % a != 0) return;
      out.push_back(class_of_line_bundle(w, LElement{-degsum / a, p}));
      return;
    }
    for (p[i] = 0; p[i] < w.weights[i]; ++p[i])
      self(self, i + 1, degsum + p[i] * (a / w.weights[i]));
    p[i] = 0;
  };
  rec(rec, 0, Int(0));
  return out;
}

namespace detail {

// Search for an isometry M with nu(M u) = S nu(u). Enumerated part: M[O] is a
// full-weight torsion class and each full-weight torsion column is minus a
// degree-zero line bundle class. Every remaining column is then the unique
// integer solution of the accumulated pairing and rank/degree equations.
inline std::optional<IntMatrix> tubular_s_search(const WeightData& w) {
  const EulerLattice lat = euler_gram(w);
  const std::size_t mu = kclass_rank(w);
  const Int a = invariants(w).a;
  const std::vector<KClass> cat = degree_zero_line_bundles(w);

  // nu coordinates of the basis classes and the shadow target S.
  std::vector<std::pair<Int, Int>> nu(mu);
  for (std::size_t k = 0; k < mu; ++k) {
    KClass e(mu, Int(0));
    e[k] = 1;
    nu[k] = rank_degree(w, e);
  }
  auto s_target = [&](std::size_t col) {  // S * nu(e_col)
    return std::pair<Int, Int>{-nu[col].second, nu[col].first};
  };

  // Assignment order: [O], then single-bundle (full-weight) torsion columns,
  // then the rest by ascending degree, each solved linearly.
  std::vector<std::size_t> single_cols, solved_cols;
  {
    std::vector<std::pair<long long, std::size_t>> rest;
    for (std::size_t i = 0; i < w.branch_count(); ++i)
      for (int j = 1; j < w.weights[i]; ++j) {
        const std::size_t col = torsion_index(w, i, j);
        if (w.weights[i] == a)
          single_cols.push_back(col);
        else
          rest.emplace_back(static_cast<long long>(a / w.weights[i]), col);
      }
    std::sort(rest.begin(), rest.end());
    for (const auto& t : rest) solved_cols.push_back(t.second);
    solved_cols.push_back(mu - 1);
  }

  std::vector<KClass> o_candidates;
  for (std::size_t i = 0; i < w.branch_count(); ++i) {
    if (w.weights[i] != a) continue;
    for (int j = 1; j < w.weights[i]; ++j) {
      KClass v(mu, Int(0));
      v[torsion_index(w, i, j)] = 1;
      o_candidates.push_back(std::move(v));
    }
  }

  std::vector<KClass> cols(mu);
  std::vector<std::size_t> assigned;  // basis-column indices, in order

  auto pair_ok = [&](std::size_t col) {
    const auto nv = rank_degree(w, cols[col]);
    if (nv != s_target(col)) return false;
    for (std::size_t other : assigned) {
      if (pairing(lat, cols[other], cols[col]) != lat.gram(other, col)) return false;
      if (pairing(lat, cols[col], cols[other]) != lat.gram(col, other)) return false;
    }
    return pairing(lat, cols[col], cols[col]) == lat.gram(col, col);
  };

  // Candidate completions of one column: the linear constraints leave a point
  // or a line; on a line the quadratic self-pairing condition (definite along
  // ker nu directions) cuts out at most two integer points.
  auto col_candidates = [&](std::size_t col) -> std::vector<KClass> {
    const std::size_t rows = 2 + 2 * assigned.size();
    IntMatrix am(rows, mu);
    std::vector<Int> b(rows, Int(0));
    for (std::size_t k = 0; k < mu; ++k) {
      am(0, k) = nu[k].first;
      am(1, k) = nu[k].second;
    }
    const auto tgt = s_target(col);
    b[0] = tgt.first;
    b[1] = tgt.second;
    std::size_t rr = 2;
    for (std::size_t other : assigned) {
      for (std::size_t k = 0; k < mu; ++k) {
        Int left = 0, right = 0;  // chi(u_other, v) and chi(v, u_other) rows
        for (std::size_t t = 0; t < mu; ++t) {
          left += cols[other][t] * lat.gram(t, k);
          right += lat.gram(k, t) * cols[other][t];
        }
        am(rr, k) = left;
        am(rr + 1, k) = right;
      }
      b[rr] = lat.gram(other, col);
      b[rr + 1] = lat.gram(col, other);
      rr += 2;
    }
    const auto sol = solve_affine(am, b);
    if (!sol) return {};
    const Int want = lat.gram(col, col);
    if (!sol->dir) {
      if (pairing(lat, sol->x0, sol->x0) != want) return {};
      return {sol->x0};
    }
    const std::vector<Int>& k = *sol->dir;
    const Int qa = pairing(lat, k, k);
    const Int qb = pairing(lat, sol->x0, k) + pairing(lat, k, sol->x0);
    const Int qc = pairing(lat, sol->x0, sol->x0) - want;
    if (qa == 0) return {};  // dir in ker nu, where the form is anisotropic
    const Int disc = qb * qb - 4 * qa * qc;
    if (disc < 0) return {};
    const Int root = isqrt(disc);
    if (root * root != disc) return {};
    std::vector<KClass> cands;
    for (const Int& num : {Int(-qb + root), Int(-qb - root)}) {
      if (num % (2 * qa) != 0) continue;
      const Int t = num / (2 * qa);
      KClass v = sol->x0;
      for (std::size_t i = 0; i < mu; ++i) v[i] += t * k[i];
      if (!cands.empty() && v == cands.front()) continue;
      cands.push_back(std::move(v));
    }
    return cands;
  };

  auto solve_chain = [&](auto&& self, std::size_t idx) -> bool {
    if (idx == solved_cols.size()) return true;
    const std::size_t col = solved_cols[idx];
    for (KClass& cand : col_candidates(col)) {
      cols[col] = std::move(cand);
      assigned.push_back(col);
      if (pair_ok(col) && self(self, idx + 1)) return true;
      assigned.pop_back();
    }
    return false;
  };

  auto search = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == 1 + single_cols.size()) {
      const std::size_t mark = assigned.size();
      const bool done = solve_chain(solve_chain, 0);
      assigned.resize(mark);
      return done;
    }
    const std::size_t col = pos == 0 ? 0 : single_cols[pos - 1];
    if (pos == 0) {
      for (const KClass& cand : o_candidates) {
        cols[col] = cand;
        assigned.push_back(col);
        if (pair_ok(col) && self(self, pos + 1)) return true;
        assigned.pop_back();
      }
      return false;
    }
    for (const KClass& entry : cat) {
      KClass v(mu, Int(0));
      for (std::size_t t = 0; t < mu; ++t) v[t] = -entry[t];
      cols[col] = std::move(v);
      assigned.push_back(col);
      if (pair_ok(col) && self(self, pos + 1)) return true;
      assigned.pop_back();
    }
    return false;
  };

  if (!search(search, 0)) return std::nullopt;
  IntMatrix m(mu, mu);
  for (std::size_t c = 0; c < mu; ++c)
    for (std::size_t r = 0; r < mu; ++r) m(r, c) = cols[c][r];
  return m;
}

}  // namespace detail

// Branch index with a_i = a (exists for every tubular weight type).
inline std::size_t full_weight_branch(const WeightData& w) {
  const Int a = invariants(w).a;
  for (std::size_t i = 0; i < w.branch_count(); ++i)
    if (w.weights[i] == a) return i;
  throw error(errc::precondition, "no branch of full weight");
}

// Twist by x_{i*} of degree 1; its SL2 shadow is L = [[1,0],[1,1]].
inline LatticeEndo tubular_l_lift(const WeightData& w) {
  if (invariants(w).chi != 0)
    throw error(errc::precondition, "tubular lift requires chi_A = 0");
  return twist_matrix(w, l_unit(w, full_weight_branch(w)));
}

// Isometry of the K-lattice whose SL2 shadow is S = [[0,-1],[1,0]], found by
// search and certified afterwards; cached per weight tuple.
inline LatticeEndo tubular_s_lift(const WeightData& w) {
  if (invariants(w).chi != 0)
    throw error(errc::precondition, "tubular lift requires chi_A = 0");
  static std::map<std::vector<int>, IntMatrix> cache;
  const auto hit = cache.find(w.weights);
  if (hit != cache.end()) return LatticeEndo(euler_gram(w), hit->second);

  const auto m = detail::tubular_s_search(w);
  if (!m) throw error(errc::internal, "tubular_s_lift: search found no lift");
  LatticeEndo endo(euler_gram(w), *m);
  if (!is_isometry(endo)) throw error(errc::internal, "tubular_s_lift: lift is not an isometry");
  const IntMatrix phi = phi_map(w, endo);
  if (phi(0, 0) != 0 || phi(0, 1) != -1 || phi(1, 0) != 1 || phi(1, 1) != 0)
    throw error(errc::internal, "tubular_s_lift: wrong SL2 shadow");
  cache.emplace(w.weights, *m);
  return endo;
}

// S L^-1 S^-1 lifts U = [[1,1],[0,1]].
inline LatticeEndo tubular_u_lift(const WeightData& w) {
  const LatticeEndo s = tubular_s_lift(w);
  const LatticeEndo l = tubular_l_lift(w);
  return LatticeEndo(s.lattice, s.matrix * unimodular_inverse(l.matrix) *
                                    unimodular_inverse(s.matrix));
}

// The Euler form is definite on ker nu (so isometries fixing it have finite
// order there, and the spectral radius is read off the SL2 shadow).
inline bool nu_kernel_definite(const WeightData& w) {
  const EulerLattice lat = euler_gram(w);
  const std::size_t mu = kclass_rank(w);
  IntMatrix numat(2, mu);
  for (std::size_t k = 0; k < mu; ++k) {
    KClass e(mu, Int(0));
    e[k] = 1;
    const auto nv = rank_degree(w, e);
    numat(0, k) = nv.first;
    numat(1, k) = nv.second;
  }
  const IntMatrix ker = integer_kernel(numat);
  const std::size_t n = ker.cols();
  if (n == 0) return false;
  const IntMatrix sym = lat.gram + lat.gram.transpose();
  const IntMatrix restricted = ker.transpose() * sym * ker;
  // Sylvester: all leading principal minors positive.
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = restricted(i, j);
    if (det(minor) <= 0) return false;
  }
  return true;
}

}  // namespace catent
