#pragma once

#include <random>
#include <string>
#include <vector>

#include "catent/entropy.hpp"
#include "catent/tubular_lift.hpp"

namespace catent {

struct SuiteFailure {
  std::string what;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  bool passed = true;
  std::vector<SuiteFailure> failures;
};

namespace detail {

inline const std::vector<std::vector<int>>& standard_weights() {
  static const std::vector<std::vector<int>> all = {
      {1, 1, 1},    {1, 2, 2},    {2, 3, 5}, {2, 3, 7}, {2, 2, 2, 3},
      {3, 3, 4},    {2, 2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6},
  };
  return all;
}

inline const std::vector<std::vector<int>>& tubular_weights() {
  static const std::vector<std::vector<int>> all = {
      {2, 2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}};
  return all;
}

inline std::vector<DynkinType> dynkin_types_up_to(int max_rank) {
  std::vector<DynkinType> types;
  for (int n = 1; n <= max_rank; ++n) types.push_back(dynkin('A', n));
  for (int n = 4; n <= max_rank; ++n) types.push_back(dynkin('D', n));
  for (int n = 6; n <= std::min(max_rank, 8); ++n) types.push_back(dynkin('E', n));
  return types;
}

inline std::vector<std::pair<std::string, Quiver>> extended_quivers_up_to(int max_rank) {
  std::vector<std::pair<std::string, Quiver>> quivers;
  for (int p = 1; p <= max_rank; ++p)
    for (int q = p; p + q <= max_rank; ++q)
      quivers.emplace_back("A(" + std::to_string(p) + "," + std::to_string(q) + ")~",
                           extended_a(p, q));
  for (int n = 4; n <= max_rank; ++n)
    quivers.emplace_back("D" + std::to_string(n) + "~", extended_d(n));
  for (int n = 6; n <= 8; ++n)
    quivers.emplace_back("E" + std::to_string(n) + "~", extended_e(n));
  return quivers;
}

inline std::string weight_name(const std::vector<int>& weights) {
  std::string s = "(";
  for (std::size_t i = 0; i < weights.size(); ++i)
    s += (i ? "," : "") + std::to_string(weights[i]);
  return s + ")";
}

inline void fail(SuiteResult& r, const std::string& what, const std::string& detail) {
  r.passed = false;
  r.failures.push_back({what, detail});
}

inline void verify_gram(SuiteResult& r) {
  for (const auto& weights : standard_weights()) {
    const WeightData w = make_weight_data(weights);
    const EulerLattice lat = euler_gram(w);
    if (int_abs(det(lat.gram)) != 1)
      fail(r, "gram " + weight_name(weights), "determinant not a unit");
    if (lat.gram(0, 0) != 1)
      fail(r, "gram " + weight_name(weights), "chi(O, O) != 1");
    if (lat.rank() != static_cast<std::size_t>(invariants(w).mu.convert_to<long long>()))
      fail(r, "gram " + weight_name(weights), "rank does not match mu");
  }
}

inline void verify_twists(SuiteResult& r) {
  for (const auto& weights : standard_weights()) {
    const WeightData w = make_weight_data(weights);
    std::vector<LElement> sample = {l_zero(w), l_c(w), omega(w)};
    for (std::size_t i = 0; i < w.branch_count(); ++i) sample.push_back(l_unit(w, i));
    sample.push_back(l_add(w, l_c(w), l_unit(w, 0)));
    const std::string name = "twists " + weight_name(weights);
    for (const LElement& x : sample) {
      const LatticeEndo tx = twist_matrix(w, x);
      if (!is_isometry(tx)) fail(r, name, "twist is not an isometry at " + x.str());
      const IntMatrix back = twist_matrix_raw(w, l_neg(w, x));
      if (tx.matrix * back != IntMatrix::identity(tx.lattice.rank()))
        fail(r, name, "twist by -x is not the inverse at " + x.str());
      for (const LElement& y : sample) {
        const IntMatrix lhs = tx.matrix * twist_matrix_raw(w, y);
        const IntMatrix rhs = twist_matrix_raw(w, l_add(w, x, y));
        if (lhs != rhs) fail(r, name, "T_x T_y != T_{x+y} at " + x.str() + ", " + y.str());
      }
    }
  }
}

inline void verify_serre(SuiteResult& r) {
  for (const auto& weights : standard_weights()) {
    const WeightData w = make_weight_data(weights);
    const EulerLattice lat = euler_gram(w);
    const IntMatrix ns = serre_matrix_raw(w);
    if (lat.gram * ns != lat.gram.transpose())
      fail(r, "serre " + weight_name(weights), "gram * N(S) != gram^T");
  }
  for (const DynkinType& d : dynkin_types_up_to(8)) {
    const IntMatrix e = euler_matrix(d.quiver);
    if (e * serre_matrix(d) != e.transpose())
      fail(r, "serre " + d.name(), "E * N(S) != E^T");
  }
}

inline void verify_riemann_roch(SuiteResult& r) {
  for (const auto& weights : tubular_weights()) {
    const WeightData w = make_weight_data(weights);
    const std::size_t n = kclass_rank(w);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        KClass u(n, Int(0)), v(n, Int(0));
        u[i] = 1;
        v[j] = 1;
        if (!riemann_roch_check(w, u, v))
          fail(r, "riemann-roch " + weight_name(weights),
               "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
}

inline void verify_gy(SuiteResult& r, int n_max, const Rat& tol) {
  const double dev_bound = 4.0 / n_max;
  const double ratio_bound = n_max >= 100 ? 1e-6 : 1e-3;
  {
    // Fibonacci benchmark: [[2,1],[1,1]] against gram [[1,1],[-1,0]] grows at
    // the golden-ratio square; the exact absolute sums are Fibonacci numbers.
    const EulerLattice lat{IntMatrix{{1, 1}, {-1, 0}}};
    const LatticeEndo endo{lat, IntMatrix{{2, 1}, {1, 1}}};
    const double log_rho = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    const GyConsistency gy = gy_consistency(gy_growth_curve(endo, n_max), log_rho, 1e-6);
    if (gy.degenerate) fail(r, "gy fibonacci", "degenerate growth");
    else {
      if (gy.final_dev > dev_bound) fail(r, "gy fibonacci", "tail deviation above C/n envelope");
      if (!gy.monotone_tail) fail(r, "gy fibonacci", "tail not monotone");
      if (std::abs(gy.ratio_estimate - log_rho) > ratio_bound)
        fail(r, "gy fibonacci", "ratio estimate off the certified radius");
    }
  }
  for (const auto& weights : tubular_weights()) {
    const WeightData w = make_weight_data(weights);
    const LatticeEndo ml = tubular_l_lift(w);
    const LatticeEndo mu = tubular_u_lift(w);
    const LatticeEndo endo{ml.lattice, ml.matrix * mu.matrix};
    const EntropyReport report = entropy(w, endo, tol);
    const GyConsistency gy = gy_consistency(gy_growth_curve(endo, n_max), report.h0, 1e-6);
    const std::string name = "gy " + weight_name(weights);
    if (gy.degenerate) fail(r, name, "degenerate growth");
    else {
      if (gy.final_dev > dev_bound) fail(r, name, "tail deviation above C/n envelope");
      if (!gy.monotone_tail) fail(r, name, "tail not monotone");
      if (std::abs(gy.ratio_estimate - report.h0) > ratio_bound)
        fail(r, name, "ratio estimate off the certified radius");
    }
  }
  {
    // Quasi-unipotent word: polynomial growth, so s_n collapses toward 0.
    const WeightData w = make_weight_data({2, 3, 7});
    const std::vector<Generator> word = {Generator::twist(l_unit(w, 2))};
    const EntropyReport report = entropy(w, word, tol);
    const GyConsistency gy =
        gy_consistency(gy_growth_curve(word_to_endo(w, word), n_max), report.h0, 1e-6);
    if (report.h0 != 0.0) fail(r, "gy (2,3,7) twist", "entropy not exactly 0");
    if (gy.degenerate || gy.s_final > 10.0 * std::log(static_cast<double>(n_max)) / n_max)
      fail(r, "gy (2,3,7) twist", "growth not polynomial");
  }
}

inline void verify_dynkin(SuiteResult& r, const Rat& tol) {
  for (const DynkinType& d : dynkin_types_up_to(8)) {
    const IntMatrix phi = coxeter_matrix(d.quiver);
    const CertifiedRadius rho = spectral_radius(phi, tol);
    if (!(rho.contains(1) && rho.width() <= tol))
      fail(r, "dynkin " + d.name(), "Coxeter radius does not certify 1");
    const int h = coxeter_number(d);
    IntMatrix power = IntMatrix::identity(phi.rows());
    bool early = false;
    for (int k = 1; k <= h; ++k) {
      power = power * phi;
      if (k < h && power == IntMatrix::identity(phi.rows())) early = true;
    }
    if (power != IntMatrix::identity(phi.rows()))
      fail(r, "dynkin " + d.name(), "Phi^h != I");
    if (early) fail(r, "dynkin " + d.name(), "Coxeter order below h");
  }
  for (const auto& [name, quiver] : extended_quivers_up_to(8)) {
    const CertifiedRadius rho = spectral_radius(coxeter_matrix(quiver), tol);
    if (!(rho.contains(1) && rho.width() <= tol))
      fail(r, "dynkin " + name, "affine Coxeter radius does not certify 1");
  }
}

inline void verify_factorize(SuiteResult& r) {
  {
    const SL2Matrix m = SL2Matrix::make(1, 1, 1, 2);
    const PositiveWord word = positive_factorize(m);
    if (word.exponents != std::vector<Int>{1, 1} || word.negated ||
        word.conj != SL2Matrix::id())
      fail(r, "factorize [[1,1],[1,2]]", "expected the (1,1) block at identity conjugator");
  }
  {
    const PositiveWord word = positive_factorize(SL2Matrix::make(1, 3, 2, 7));
    if (word.exponents != std::vector<Int>{3, 2})
      fail(r, "factorize [[1,3],[2,7]]", "expected the (3,2) block");
  }
  std::mt19937 rng(20240816u);
  const SL2Matrix gen_l = SL2Matrix::make(1, 0, 1, 1);
  const SL2Matrix gen_u = SL2Matrix::make(1, 1, 0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    SL2Matrix m = SL2Matrix::id();
    const int blocks = 1 + static_cast<int>(rng() % 3);
    for (int b = 0; b < blocks; ++b) {
      const int mu = 1 + static_cast<int>(rng() % 4);
      const int ml = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < mu; ++k) m = m * gen_u;
      for (int k = 0; k < ml; ++k) m = m * gen_l;
    }
    SL2Matrix p = SL2Matrix::id();
    for (int k = 0; k < 4; ++k) {
      const bool upper = rng() % 2;
      const bool neg = rng() % 2;
      const SL2Matrix letter = upper ? gen_u : gen_l;
      p = p * (neg ? letter.inverse() : letter);
    }
    SL2Matrix conjugated = conjugate(m, p);
    if (rng() % 2) conjugated = -conjugated;
    const PositiveWord word = positive_factorize(conjugated);
    if (reassemble(word) != conjugated)
      fail(r, "factorize roundtrip", "trial " + std::to_string(trial));
    for (const Int& e : word.exponents)
      if (e < 1) fail(r, "factorize roundtrip", "non-positive exponent in trial " +
                                                    std::to_string(trial));
  }
}

}  // namespace detail

// Named property suites behind the verify command.  Each runs a deterministic
// battery over the standard weight tuples and Dynkin types and reports every
// violated identity.
inline SuiteResult run_suite(const std::string& suite, int n_max, const Rat& tol) {
  SuiteResult r;
  r.suite = suite;
  if (suite == "gram") detail::verify_gram(r);
  else if (suite == "twists") detail::verify_twists(r);
  else if (suite == "serre") detail::verify_serre(r);
  else if (suite == "riemann-roch") detail::verify_riemann_roch(r);
  else if (suite == "gy") detail::verify_gy(r, n_max, tol);
  else if (suite == "dynkin") detail::verify_dynkin(r, tol);
  else if (suite == "factorize") detail::verify_factorize(r);
  else if (suite == "all") {
    detail::verify_gram(r);
    detail::verify_twists(r);
    detail::verify_serre(r);
    detail::verify_riemann_roch(r);
    detail::verify_gy(r, n_max, tol);
    detail::verify_dynkin(r, tol);
    detail::verify_factorize(r);
  } else {
    throw error(errc::input, "unknown verify suite: " + suite);
  }
  return r;
}

}  // namespace catent
