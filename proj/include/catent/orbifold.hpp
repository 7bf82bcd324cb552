#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catent/euler_lattice.hpp"
#include "catent/int_matrix.hpp"

namespace catent {

// Point of the rational projective line.
struct ProjPoint {
  bool infinite = false;
  Rat value = 0;

  static ProjPoint inf() { return {true, 0}; }
  static ProjPoint at(Rat v) { return {false, std::move(v)}; }

  friend bool operator==(const ProjPoint& x, const ProjPoint& y) {
    return x.infinite == y.infinite && (x.infinite || x.value == y.value);
  }
  friend bool operator!=(const ProjPoint& x, const ProjPoint& y) { return !(x == y); }

  std::string str() const { return infinite ? "inf" : rat_to_string(value); }
};

// Weight data (A, Lambda): weights a_i at pairwise-distinct rational points,
// normalized lambda_1 = inf, lambda_2 = 0, lambda_3 = 1.
struct WeightData {
  std::vector<int> weights;
  std::vector<ProjPoint> lambda;

  std::size_t branch_count() const { return weights.size(); }
};

inline WeightData make_weight_data(std::vector<int> weights,
                                   std::vector<ProjPoint> lambda = {}) {
  if (weights.size() < 3)
    throw error(errc::input, "weight data: at least three weights required");
  for (int a : weights)
    if (a < 1) throw error(errc::input, "weight data: weights must be positive");
  if (lambda.empty()) {
    lambda.push_back(ProjPoint::inf());
    for (std::size_t i = 1; i < weights.size(); ++i)
      lambda.push_back(ProjPoint::at(Rat(static_cast<long>(i) - 1)));
  }
  if (lambda.size() != weights.size())
    throw error(errc::input, "weight data: point count != weight count");
  if (!(lambda[0] == ProjPoint::inf()) || !(lambda[1] == ProjPoint::at(0)) ||
      !(lambda[2] == ProjPoint::at(1)))
    throw error(errc::input, "weight data: points must be normalized to (inf, 0, 1, ...)");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if (lambda[i] == lambda[j])
        throw error(errc::input, "weight data: points must be pairwise distinct");
  return {std::move(weights), std::move(lambda)};
}

// Element of the grading group L_A in normal form x = l*c + sum p_i x_i,
// 0 <= p_i <= a_i - 1 (carries a_i * x_i = c).
struct LElement {
  Int l = 0;
  std::vector<Int> p;

  friend bool operator==(const LElement& x, const LElement& y) {
    return x.l == y.l && x.p == y.p;
  }
  friend bool operator!=(const LElement& x, const LElement& y) { return !(x == y); }

  std::string str() const {
    std::string s = "(" + l.str() + ";";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : " ") + p[i].str();
    return s + ")";
  }
};

inline LElement l_normalize(const WeightData& w, Int l, std::vector<Int> p) {
  if (p.size() != w.branch_count())
    throw error(errc::input, "L element: coordinate count != branch count");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Int a = w.weights[i];
    Int q = p[i] / a;
    if (p[i] % a < 0) q -= 1;  // floor division
    p[i] -= q * a;
    l += q;
  }
  return {std::move(l), std::move(p)};
}

inline LElement l_element(const WeightData& w, long long l, std::vector<long long> p) {
  std::vector<Int> pi(p.begin(), p.end());
  return l_normalize(w, Int(l), std::move(pi));
}

inline LElement l_zero(const WeightData& w) {
  return {0, std::vector<Int>(w.branch_count(), Int(0))};
}

inline LElement l_unit(const WeightData& w, std::size_t i) {  // x_{i+1} (0-indexed branch)
  std::vector<Int> p(w.branch_count(), Int(0));
  p[i] = 1;
  return l_normalize(w, 0, std::move(p));
}

inline LElement l_c(const WeightData& w) { return {1, std::vector<Int>(w.branch_count(), Int(0))}; }

inline LElement l_add(const WeightData& w, const LElement& x, const LElement& y) {
  std::vector<Int> p(x.p);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += y.p[i];
  return l_normalize(w, x.l + y.l, std::move(p));
}

inline LElement l_neg(const WeightData& w, const LElement& x) {
  std::vector<Int> p(x.p);
  for (auto& c : p) c = -c;
  return l_normalize(w, -x.l, std::move(p));
}

inline LElement l_sub(const WeightData& w, const LElement& x, const LElement& y) {
  return l_add(w, x, l_neg(w, y));
}

inline LElement l_scale(const WeightData& w, const Int& k, const LElement& x) {
  std::vector<Int> p(x.p);
  for (auto& c : p) c *= k;
  return l_normalize(w, k * x.l, std::move(p));
}

// x positive iff x != 0 and l >= 0 (normal form makes the p_i >= 0 automatic).
inline bool is_positive(const WeightData& w, const LElement& x) {
  const LElement n = l_normalize(w, x.l, x.p);
  if (n.l < 0) return false;
  if (n.l > 0) return true;
  for (const auto& c : n.p)
    if (c != 0) return true;
  return false;
}

// (a, mu_A, chi_A) = (lcm of weights, rank of the K-lattice, orbifold Euler
// characteristic 2 + sum(1/a_i - 1)).
struct OrbifoldInvariants {
  Int a;
  Int mu;
  Rat chi;
};

inline OrbifoldInvariants invariants(const WeightData& w) {
  Int a = 1;
  Int mu = 2;
  Rat chi = 2;
  for (int ai : w.weights) {
    a = boost::multiprecision::lcm(a, Int(ai));
    mu += ai - 1;
    chi += Rat(1, ai) - 1;
  }
  return {a, mu, chi};
}

// omega = (r-2)c - sum x_i; normal form l = -2, p_i = a_i - 1.
inline LElement omega(const WeightData& w) {
  std::vector<Int> p;
  p.reserve(w.branch_count());
  for (int ai : w.weights) p.push_back(ai - 1);
  return {-2, std::move(p)};
}

// dim of the degree-x piece of the coordinate ring: l + 1 for l >= 0, else 0.
inline Int graded_dim(const WeightData& w, const LElement& x) {
  const LElement n = l_normalize(w, x.l, x.p);
  return n.l >= 0 ? Int(n.l + 1) : Int(0);
}

// Brute-force monomial oracle for graded_dim: enumerate every monomial of
// degree x, rewrite X_i^{a_i} = X_2^{a_2} - lambda_i X_1^{a_1} (i >= 3) into
// the spanning set X_1^{m_1} X_2^{m_2} prod X_i^{p_i} (p_i < a_i), and return
// the rank of the resulting coefficient matrix over Q.
inline Int graded_dim_oracle(const WeightData& w, const LElement& x) {
  const std::size_t r = w.branch_count();
  const LElement n = l_normalize(w, x.l, x.p);
  if (n.l < 0) return 0;
  if (n.l > 64) throw error(errc::input, "graded_dim_oracle: degree too large for brute force");
  for (std::size_t i = 2; i < r; ++i)
    if (w.lambda[i].infinite)
      throw error(errc::internal, "graded_dim_oracle: non-normalized point data");

  const long long l = static_cast<long long>(n.l);
  const long long cols = l + 1;  // spanning monomials of degree x, indexed by s = (m_1 - p_1)/a_1

  // Row = one monomial prod X_i^{e_i} of degree exactly x, expanded into the
  // spanning set with exact rational coefficients.
  std::vector<std::vector<Rat>> rows;
  std::vector<long long> e(r, 0);
  // Degree bookkeeping: sum e_i x_i normalizes to (sum floor(e_i/a_i) + carries, e_i mod a_i).
  auto emit = [&]() {
    // Normal form of the monomial degree must equal x.
    Int ml = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (e[i] % w.weights[i] != static_cast<long long>(n.p[i])) return;
      ml += e[i] / w.weights[i];
    }
    if (ml != n.l) return;
    // Rewrite branches i >= 3: X_i^{e_i} = X_i^{p_i} (X_2^{a_2} - lambda_i X_1^{a_1})^{k_i}.
    // Accumulate coefficients over (j_3, ..., j_r), j_i = number of X_1^{a_1} picks.
    std::vector<Rat> row(static_cast<std::size_t>(cols), Rat(0));
    std::vector<long long> j(r, 0);
    auto rec = [&](auto&& self, std::size_t branch, long long x1_extra, Rat coef) -> void {
      if (branch >= r) {
        const long long m1 = e[0] + x1_extra;
        const long long idx = m1 / w.weights[0];  // spanning index s = floor(m_1/a_1) in 0..l
        if (idx < 0 || idx > l) throw error(errc::internal, "graded_dim_oracle: index out of range");
        row[static_cast<std::size_t>(idx)] += coef;
        return;
      }
      if (branch < 2) { self(self, 2, x1_extra, coef); return; }
      const long long k = e[branch] / w.weights[branch];
      Rat binom = 1;
      for (long long pick = 0; pick <= k; ++pick) {
        if (pick > 0) binom = binom * Rat(k - pick + 1) / Rat(pick);
        Rat sign = 1;
        for (long long t = 0; t < pick; ++t) sign *= -w.lambda[branch].value;
        self(self, branch + 1, x1_extra + pick * w.weights[0], binom * sign);
      }
    };
    rec(rec, 0, 0, Rat(1));
    rows.push_back(std::move(row));
  };
  // Enumerate exponents; e_i bounded by the carries available.
  auto enumerate = [&](auto&& self, std::size_t i) -> void {
    if (i >= r) { emit(); return; }
    const long long bound = w.weights[i] * (l + 1) - 1;
    for (e[i] = 0; e[i] <= bound; ++e[i]) self(self, i + 1);
    e[i] = 0;
  };
  enumerate(enumerate, 0);

  // Rank over Q by Gaussian elimination.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < static_cast<std::size_t>(cols) && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const Rat f = rows[i][col] / rows[rank][col];
      for (std::size_t k = col; k < rows[i].size(); ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return Int(rank);
}

// --- K-class basis: ([O]; [S_{1,1}]..[S_{1,a_1-1}]; ...; [S_{r,a_r-1}]; [S]).

inline std::size_t kclass_rank(const WeightData& w) {
  std::size_t mu = 2;
  for (int ai : w.weights) mu += static_cast<std::size_t>(ai - 1);
  return mu;
}

// Index of [S_{i,j}] for 0-indexed branch i and 1 <= j <= a_i - 1.
inline std::size_t torsion_index(const WeightData& w, std::size_t branch, long long j) {
  std::size_t idx = 1;
  for (std::size_t i = 0; i < branch; ++i) idx += static_cast<std::size_t>(w.weights[i] - 1);
  return idx + static_cast<std::size_t>(j - 1);
}

inline std::vector<std::string> kclass_labels(const WeightData& w) {
  std::vector<std::string> labels{"O"};
  for (std::size_t i = 0; i < w.branch_count(); ++i)
    for (int j = 1; j < w.weights[i]; ++j)
      labels.push_back("S(" + std::to_string(i + 1) + "," + std::to_string(j) + ")");
  labels.emplace_back("S");
  return labels;
}

using KClass = std::vector<Int>;

// [O(x)] = [O] + l[S] + sum_i sum_{q<p_i} [S_{i,q}] with the K-relation
// [S_{i,0}] = [S] - sum_{j>=1} [S_{i,j}]; telescoped from the defining
// sequences of the simple torsion sheaves.
inline KClass class_of_line_bundle(const WeightData& w, const LElement& x) {
  const LElement n = l_normalize(w, x.l, x.p);
  KClass v(kclass_rank(w), Int(0));
  v[0] = 1;
  Int s_coord = n.l;
  for (std::size_t i = 0; i < w.branch_count(); ++i) {
    if (n.p[i] == 0) continue;
    s_coord += 1;
    for (Int j = n.p[i]; j <= w.weights[i] - 1; ++j)
      v[torsion_index(w, i, static_cast<long long>(j))] -= 1;
  }
  v[v.size() - 1] = s_coord;
  return v;
}

// Euler pairing chi(O(x), O(y)) = graded_dim(y - x) - graded_dim(x - y + omega).
inline Int line_bundle_pairing(const WeightData& w, const LElement& x, const LElement& y) {
  return graded_dim(w, l_sub(w, y, x)) -
         graded_dim(w, l_add(w, l_sub(w, x, y), omega(w)));
}

// Gram matrix in the K-class basis, via the exceptional collection
// (O, O(x_1), ..., O((a_1-1)x_1), ..., O(c)) and the unimodular change of
// basis [S_{i,j}] = [O((j+1)x_i)] - [O(j x_i)], [S] = [O(c)] - [O].
inline EulerLattice euler_gram(const WeightData& w) {
  const std::size_t mu = kclass_rank(w);
  std::vector<LElement> exceptional;
  exceptional.push_back(l_zero(w));
  for (std::size_t i = 0; i < w.branch_count(); ++i)
    for (int j = 1; j < w.weights[i]; ++j)
      exceptional.push_back(l_scale(w, j, l_unit(w, i)));
  exceptional.push_back(l_c(w));
  if (exceptional.size() != mu) throw error(errc::internal, "euler_gram: collection size");

  IntMatrix ge(mu, mu);
  for (std::size_t k = 0; k < mu; ++k)
    for (std::size_t l = 0; l < mu; ++l)
      ge(k, l) = line_bundle_pairing(w, exceptional[k], exceptional[l]);
  for (std::size_t k = 0; k < mu; ++k) {
    if (ge(k, k) != 1) throw error(errc::internal, "euler_gram: collection not exceptional");
    for (std::size_t l = 0; l < k; ++l)
      if (ge(k, l) != 0) throw error(errc::internal, "euler_gram: collection not triangular");
  }

  // Transition t: columns are the exceptional classes in K-class coordinates.
  IntMatrix t(mu, mu);
  for (std::size_t k = 0; k < mu; ++k) {
    const KClass v = class_of_line_bundle(w, exceptional[k]);
    for (std::size_t i = 0; i < mu; ++i) t(i, k) = v[i];
  }
  const IntMatrix tinv = unimodular_inverse(t);
  return EulerLattice(tinv.transpose() * ge * tinv, kclass_labels(w));
}

// rank/degree homomorphism nu: [O] -> (1,0), [S_{i,j}] -> (0, a/a_i), [S] -> (0, a).
inline std::pair<Int, Int> rank_degree(const WeightData& w, const KClass& v) {
  if (v.size() != kclass_rank(w)) throw error(errc::input, "rank_degree: class length");
  const Int a = invariants(w).a;
  Int rk = v[0];
  Int deg = a * v[v.size() - 1];
  for (std::size_t i = 0; i < w.branch_count(); ++i)
    for (int j = 1; j < w.weights[i]; ++j)
      deg += (a / w.weights[i]) * v[torsion_index(w, i, j)];
  return {rk, deg};
}

inline Int degree_of(const WeightData& w, const LElement& x) {
  const auto [rk, deg] = rank_degree(w, class_of_line_bundle(w, x));
  (void)rk;
  return deg;
}

// Matrix of -tensor O(x): fixes [S], cycles [S_{i,j}] -> [S_{i,j+p_i mod a_i}]
// (index 0 expanded by the K-relation), sends [O] to [O(x)].
inline IntMatrix twist_matrix_raw(const WeightData& w, const LElement& x) {
  const LElement n = l_normalize(w, x.l, x.p);
  const std::size_t mu = kclass_rank(w);
  IntMatrix m(mu, mu);
  const KClass ox = class_of_line_bundle(w, n);
  for (std::size_t i = 0; i < mu; ++i) m(i, 0) = ox[i];
  for (std::size_t i = 0; i < w.branch_count(); ++i) {
    const long long ai = w.weights[i];
    for (long long j = 1; j < ai; ++j) {
      const std::size_t col = torsion_index(w, i, j);
      const long long target = (j + static_cast<long long>(n.p[i])) % ai;
      if (target == 0) {
        m(mu - 1, col) += 1;
        for (long long jj = 1; jj < ai; ++jj) m(torsion_index(w, i, jj), col) -= 1;
      } else {
        m(torsion_index(w, i, target), col) += 1;
      }
    }
  }
  m(mu - 1, mu - 1) = 1;
  return m;
}

inline LatticeEndo twist_matrix(const WeightData& w, const LElement& x) {
  return LatticeEndo(euler_gram(w), twist_matrix_raw(w, x));
}

// Moebius transformation z -> (a z + b)/(c z + d) over Q, nondegenerate.
struct Mobius {
  Rat a = 1, b = 0, c = 0, d = 1;

  static Mobius make(Rat a, Rat b, Rat c, Rat d) {
    if (a * d - b * c == 0) throw error(errc::input, "Moebius map must be nondegenerate");
    return {std::move(a), std::move(b), std::move(c), std::move(d)};
  }

  ProjPoint apply(const ProjPoint& z) const {
    if (z.infinite) return c != 0 ? ProjPoint::at(a / c) : ProjPoint::inf();
    const Rat den = c * z.value + d;
    if (den == 0) return ProjPoint::inf();
    return ProjPoint::at((a * z.value + b) / den);
  }
};

// Unique Moebius map with g(inf) = ti, g(0) = t0, g(1) = t1.
inline Mobius mobius_from_targets(const ProjPoint& ti, const ProjPoint& t0, const ProjPoint& t1) {
  if (ti == t0 || ti == t1 || t0 == t1)
    throw error(errc::input, "mobius_from_targets: targets must be distinct");
  if (ti.infinite) return Mobius::make(t1.value - t0.value, t0.value, 0, 1);
  if (t0.infinite) return Mobius::make(ti.value, t1.value - ti.value, 1, 0);
  if (t1.infinite) return Mobius::make(ti.value, -t0.value, 1, -1);
  const Rat& a2 = t0.value;
  const Rat& b2 = t1.value;
  const Rat& c2 = ti.value;
  return Mobius::make(c2 * (b2 - a2), a2 * (c2 - b2), b2 - a2, c2 - b2);
}

// Permutation sigma of branches (0-indexed image list) induced by an
// automorphism g of the line permuting the marked points.
inline void check_auto_admissible(const WeightData& w, const std::vector<int>& sigma,
                                  const Mobius& g) {
  const std::size_t r = w.branch_count();
  if (sigma.size() != r) throw error(errc::generator, "automorphism: permutation length");
  std::vector<bool> hit(r, false);
  for (int s : sigma) {
    if (s < 0 || static_cast<std::size_t>(s) >= r || hit[static_cast<std::size_t>(s)])
      throw error(errc::generator, "automorphism: not a permutation");
    hit[static_cast<std::size_t>(s)] = true;
  }
  for (std::size_t i = 0; i < r; ++i)
    if (w.weights[i] != w.weights[static_cast<std::size_t>(sigma[i])])
      throw error(errc::generator, "automorphism: weight mismatch at branch " +
                                       std::to_string(i + 1));
  for (std::size_t i = 0; i < r; ++i)
    if (g.apply(w.lambda[i]) != w.lambda[static_cast<std::size_t>(sigma[i])])
      throw error(errc::generator,
                  "automorphism: g(lambda_" + std::to_string(i + 1) + ") = " +
                      g.apply(w.lambda[i]).str() + " != lambda_sigma = " +
                      w.lambda[static_cast<std::size_t>(sigma[i])].str());
}

// The Moebius map matching sigma on the first three points, if it fixes the rest.
inline std::optional<Mobius> mobius_for(const WeightData& w, const std::vector<int>& sigma) {
  const Mobius g = mobius_from_targets(w.lambda[static_cast<std::size_t>(sigma[0])],
                                       w.lambda[static_cast<std::size_t>(sigma[1])],
                                       w.lambda[static_cast<std::size_t>(sigma[2])]);
  for (std::size_t i = 3; i < w.branch_count(); ++i)
    if (g.apply(w.lambda[i]) != w.lambda[static_cast<std::size_t>(sigma[i])]) return std::nullopt;
  return g;
}

inline IntMatrix auto_matrix_raw(const WeightData& w, const std::vector<int>& sigma,
                                 const Mobius& g) {
  check_auto_admissible(w, sigma, g);
  const std::size_t mu = kclass_rank(w);
  IntMatrix m(mu, mu);
  m(0, 0) = 1;
  m(mu - 1, mu - 1) = 1;
  for (std::size_t i = 0; i < w.branch_count(); ++i)
    for (int j = 1; j < w.weights[i]; ++j)
      m(torsion_index(w, static_cast<std::size_t>(sigma[i]), j), torsion_index(w, i, j)) = 1;
  return m;
}

inline LatticeEndo auto_matrix(const WeightData& w, const std::vector<int>& sigma,
                               const Mobius& g) {
  return LatticeEndo(euler_gram(w), auto_matrix_raw(w, sigma, g));
}

// Serre functor (-tensor O(omega)) o [1] at K-level: N(S) = -twist(omega);
// satisfies gram * N(S) = gram^T.
inline IntMatrix serre_matrix_raw(const WeightData& w) {
  return -twist_matrix_raw(w, omega(w));
}

inline LatticeEndo serre_matrix(const WeightData& w) {
  return LatticeEndo(euler_gram(w), serre_matrix_raw(w));
}

// The SL(2,Z) shadow phi with phi o nu = nu o M; requires M to be an isometry
// preserving ker nu.
inline IntMatrix phi_map(const WeightData& w, const LatticeEndo& endo) {
  if (!is_isometry(endo)) throw error(errc::precondition, "phi_map: endomorphism is not an isometry");
  const std::size_t mu = kclass_rank(w);
  const IntMatrix& m = endo.matrix;

  auto nu_of_column = [&](const IntMatrix& mat, std::size_t col) {
    KClass v(mu);
    for (std::size_t i = 0; i < mu; ++i) v[i] = mat(i, col);
    return rank_degree(w, v);
  };

  // nu images of the basis: e_0 -> (1,0); the torsion degrees have gcd 1, so
  // an integer combination u with nu(u) = (0,1) exists; build it by Bezout.
  std::vector<Int> target(mu, Int(0));
  {
    Int g = 0;
    std::vector<std::pair<std::size_t, Int>> picked;
    for (std::size_t k = 1; k < mu; ++k) {
      KClass e(mu, Int(0));
      e[k] = 1;
      const Int dk = rank_degree(w, e).second;
      const Int before = g;
      Int s, t;
      // g_new = s*before + t*dk via extended gcd.
      {
        Int a0 = before, b0 = dk, x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b0 != 0) {
          const Int q = a0 / b0;
          a0 -= q * b0;
          std::swap(a0, b0);
          x0 -= q * x1;
          std::swap(x0, x1);
          y0 -= q * y1;
          std::swap(y0, y1);
        }
        if (a0 < 0) { a0 = -a0; x0 = -x0; y0 = -y0; }
        g = a0;
        s = x0;
        t = y0;
      }
      for (auto& pk : picked) pk.second *= s;
      picked.emplace_back(k, t);
      if (g == 1) break;
    }
    if (g != 1) throw error(errc::internal, "phi_map: torsion degrees not coprime");
    for (const auto& pk : picked) target[pk.first] += pk.second;
  }

  const auto mu1 = nu_of_column(m, 0);  // nu(M [O])
  const std::vector<Int> mu2v = m.apply(target);
  const auto mu2 = rank_degree(w, mu2v);  // nu(M u), nu(u) = (0,1)
  IntMatrix phi(2, 2);
  phi(0, 0) = mu1.first;
  phi(1, 0) = mu1.second;
  phi(0, 1) = mu2.first;
  phi(1, 1) = mu2.second;

  // Commutation phi o nu = nu o M on every basis class; failure means ker nu
  // is not preserved.
  for (std::size_t k = 0; k < mu; ++k) {
    KClass e(mu, Int(0));
    e[k] = 1;
    const auto nk = rank_degree(w, e);
    const auto mk = nu_of_column(m, k);
    if (phi(0, 0) * nk.first + phi(0, 1) * nk.second != mk.first ||
        phi(1, 0) * nk.first + phi(1, 1) * nk.second != mk.second)
      throw error(errc::generator, "phi_map: kernel of rank/degree not preserved (not geometric)");
  }
  const Int d = phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0);
  if (d != 1) {
    if (d == -1) throw error(errc::generator, "phi_map: orientation reversed (det = -1)");
    throw error(errc::internal, "phi_map: determinant " + d.str());
  }
  return phi;
}

// Riemann-Roch identity sum_{j=1}^{a} chi(u(j omega), v) = rk(u)deg(v) - deg(u)rk(v)
// on tubular data (chi_A = 0).
inline bool riemann_roch_check(const WeightData& w, const KClass& u, const KClass& v) {
  const OrbifoldInvariants inv = invariants(w);
  if (inv.chi != 0)
    throw error(errc::precondition, "riemann_roch_check: requires chi_A = 0");
  const EulerLattice lat = euler_gram(w);
  const IntMatrix tw = twist_matrix_raw(w, omega(w));
  Int lhs = 0;
  std::vector<Int> uj = u;
  for (Int j = 1; j <= inv.a; ++j) {
    uj = tw.apply(uj);
    lhs += pairing(lat, uj, v);
  }
  const auto nu_u = rank_degree(w, u);
  const auto nu_v = rank_degree(w, v);
  const Int rhs = nu_u.first * nu_v.second - nu_u.second * nu_v.first;
  return lhs == rhs;
}

// Extended Dynkin symbol for chi_A > 0 weight data ((2,3,5) -> "E8~" etc.);
// weight-1 branches do not contribute.
inline std::string dynkin_symbol(const WeightData& w) {
  const OrbifoldInvariants inv = invariants(w);
  if (inv.chi <= 0) throw error(errc::precondition, "dynkin_symbol: requires chi_A > 0");
  std::vector<int> t;
  for (int a : w.weights)
    if (a > 1) t.push_back(a);
  std::sort(t.begin(), t.end());
  if (t.size() <= 2) {
    const int p = t.size() < 2 ? 1 : t[0];
    const int q = t.empty() ? 1 : t.back();
    return "A(" + std::to_string(p) + "," + std::to_string(q) + ")~";
  }
  if (t.size() == 3 && t[0] == 2 && t[1] == 2) return "D" + std::to_string(t[2] + 2) + "~";
  if (t == std::vector<int>{2, 3, 3}) return "E6~";
  if (t == std::vector<int>{2, 3, 4}) return "E7~";
  if (t == std::vector<int>{2, 3, 5}) return "E8~";
  throw error(errc::internal, "dynkin_symbol: unclassified positive weight type");
}

}  // namespace catent
