#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "catent/orbifold.hpp"
#include "catent/quiver.hpp"
#include "catent/sl2z.hpp"
#include "catent/spectral.hpp"

namespace catent {

// One letter of a word in the standard auto-equivalence generators.  Words are
// written in composition order: the rightmost letter acts first, so the
// K-theory matrix of a word is the left-to-right product of letter matrices.
struct Generator {
  enum class Kind { shift, twist, auto_eq, serre, generic };
  Kind kind = Kind::serre;

  long long shift_by = 1;   // shift
  LElement twist_by;        // twist
  std::vector<int> sigma;   // auto_eq: branch permutation
  Mobius moebius;           // auto_eq: base automorphism realising sigma
  IntMatrix matrix;         // generic: explicit matrix on the numerical lattice

  static Generator shift(long long k = 1) {
    Generator g;
    g.kind = Kind::shift;
    g.shift_by = k;
    return g;
  }

  static Generator twist(LElement x) {
    Generator g;
    g.kind = Kind::twist;
    g.twist_by = std::move(x);
    return g;
  }

  static Generator auto_eq(std::vector<int> sigma, Mobius moebius) {
    Generator g;
    g.kind = Kind::auto_eq;
    g.sigma = std::move(sigma);
    g.moebius = moebius;
    return g;
  }

  static Generator serre() { return Generator{}; }

  static Generator generic(IntMatrix m) {
    Generator g;
    g.kind = Kind::generic;
    g.matrix = std::move(m);
    return g;
  }
};

inline bool has_generic(const std::vector<Generator>& word) {
  for (const Generator& g : word)
    if (g.kind == Generator::Kind::generic) return true;
  return false;
}

namespace detail {

inline IntMatrix shift_matrix(std::size_t n, long long k) {
  IntMatrix m = IntMatrix::identity(n);
  if (((k % 2) + 2) % 2 == 1)
    for (std::size_t i = 0; i < n; ++i) m(i, i) = -1;
  return m;
}

// Generic letters carry arbitrary matrices; everything downstream assumes an
// isometry of the Euler form, so reject anything else at the door.
inline void check_generic(const EulerLattice& lat, const IntMatrix& m) {
  if (m.rows() != lat.rank() || m.cols() != lat.rank())
    throw error(errc::generator, "generic letter has the wrong dimensions");
  if (m.transpose() * lat.gram * m != lat.gram)
    throw error(errc::generator, "generic letter is not an isometry of the Euler form");
  if (int_abs(det(m)) != 1)
    throw error(errc::generator, "generic letter is not invertible over the integers");
}

}  // namespace detail

inline LatticeEndo word_to_endo(const WeightData& w, const std::vector<Generator>& word) {
  EulerLattice lat = euler_gram(w);
  IntMatrix m = IntMatrix::identity(lat.rank());
  for (const Generator& g : word) {
    switch (g.kind) {
      case Generator::Kind::shift:
        m = m * detail::shift_matrix(lat.rank(), g.shift_by);
        break;
      case Generator::Kind::twist:
        m = m * twist_matrix_raw(w, g.twist_by);
        break;
      case Generator::Kind::auto_eq:
        m = m * auto_matrix_raw(w, g.sigma, g.moebius);
        break;
      case Generator::Kind::serre:
        m = m * serre_matrix_raw(w);
        break;
      case Generator::Kind::generic:
        detail::check_generic(lat, g.matrix);
        m = m * g.matrix;
        break;
    }
  }
  return {std::move(lat), std::move(m)};
}

inline LatticeEndo word_to_endo(const DynkinType& d, const std::vector<Generator>& word) {
  EulerLattice lat{euler_matrix(d.quiver)};
  IntMatrix m = IntMatrix::identity(lat.rank());
  for (const Generator& g : word) {
    switch (g.kind) {
      case Generator::Kind::shift:
        m = m * detail::shift_matrix(lat.rank(), g.shift_by);
        break;
      case Generator::Kind::serre:
        m = m * serre_matrix(d);
        break;
      case Generator::Kind::generic:
        detail::check_generic(lat, g.matrix);
        m = m * g.matrix;
        break;
      case Generator::Kind::twist:
      case Generator::Kind::auto_eq:
        throw error(errc::input, "twist and auto letters act only on weighted projective lines");
    }
  }
  return {std::move(lat), std::move(m)};
}

// Result of the exact entropy computation.  h0 is the entropy at t = 0; rho is
// a certified enclosure of the spectral radius of the induced lattice map, and
// characteristic holds its characteristic polynomial (descending coefficients)
// as the algebraic certificate.  On the tubular leg phi is the induced SL(2,Z)
// matrix and phi_radius its exact (trace, discriminant) radius certificate.
// Invariant: h0 >= 0 and h0 = log(rho midpoint) up to the enclosure width.
struct EntropyReport {
  double h0 = 0.0;
  CertifiedRadius rho;
  std::vector<Int> characteristic;
  std::string method;
  std::optional<SL2Matrix> phi;
  std::optional<SL2Radius> phi_radius;
};

namespace detail {

// Exact check that (|t| + sqrt(disc)) / 2 lies in [lower, upper].
inline bool encloses_quadratic(const CertifiedRadius& rho, const Int& t, const Int& disc) {
  const Rat lo = 2 * rho.lower - int_abs(t);
  const Rat hi = 2 * rho.upper - int_abs(t);
  const bool above = lo <= 0 || lo * lo <= Rat(disc);
  const bool below = hi >= 0 && Rat(disc) <= hi * hi;
  return above && below;
}

inline EntropyReport entropy_core(const WeightData& w, LatticeEndo endo, bool generic_present,
                                  const Rat& tol) {
  if (!is_isometry(endo)) throw error(errc::generator, "word does not act by an isometry");
  EntropyReport report;
  report.characteristic = char_poly(endo.matrix);
  report.rho = spectral_radius(endo.matrix, tol);
  const OrbifoldInvariants inv = invariants(w);
  if (inv.chi != 0) {
    if (generic_present) {
      // No structure theorem to lean on: report the certified radius as-is.
      // Isometries have |det| = 1, so the true radius is >= 1; clamp the
      // rounding of the enclosure midpoint accordingly.
      report.method = "hereditary-spectral";
      report.h0 = std::max(0.0, std::log(report.rho.mid()));
      return report;
    }
    // Words in the standard generators are quasi-unipotent on the lattice, so
    // a radius enclosure that misses 1 can only mean an internal defect.
    if (!report.rho.contains(1))
      throw error(errc::internal, "standard word with nonzero Euler characteristic must have spectral radius 1");
    report.method = inv.chi > 0 ? "chi-positive" : "chi-negative";
    report.h0 = 0.0;
    return report;
  }
  // Tubular case: read the entropy off the induced isometry of the rank-degree
  // plane, then cross-check it against the certified lattice radius.
  report.method = "tubular-phi";
  const SL2Matrix s = SL2Matrix::from_matrix(phi_map(w, endo));
  report.phi = s;
  if (classify(s) != SL2Class::hyperbolic) {
    if (!report.rho.contains(1))
      throw error(errc::internal, "quasi-unipotent tubular word must have spectral radius 1");
    report.h0 = 0.0;
    return report;
  }
  const SL2Radius rad = radius(s);
  if (!encloses_quadratic(report.rho, rad.trace, rad.disc))
    throw error(errc::internal, "lattice spectral radius does not match the induced SL(2,Z) radius");
  report.phi_radius = rad;
  report.h0 = std::log(rad.value);
  return report;
}

}  // namespace detail

inline EntropyReport entropy(const WeightData& w, const std::vector<Generator>& word,
                             const Rat& tol) {
  return detail::entropy_core(w, word_to_endo(w, word), has_generic(word), tol);
}

inline EntropyReport entropy(const WeightData& w, const LatticeEndo& endo, const Rat& tol) {
  return detail::entropy_core(w, endo, true, tol);
}

inline EntropyReport entropy(const DynkinType& d, const std::vector<Generator>& word,
                             const Rat& tol) {
  LatticeEndo endo = word_to_endo(d, word);
  if (!is_isometry(endo)) throw error(errc::generator, "word does not act by an isometry");
  EntropyReport report;
  report.characteristic = char_poly(endo.matrix);
  report.rho = spectral_radius(endo.matrix, tol);
  report.method = "hereditary-spectral";
  report.h0 = std::max(0.0, std::log(report.rho.mid()));
  return report;
}

// --- object-level estimator --------------------------------------------------

// Formal direct sum of shifted indecomposables, tracked by dimension vector
// and cohomological shift.  Kept sorted so multisets compare canonically.
using DerivedSum = std::vector<std::pair<Root, int>>;

inline DerivedSum projective_generator(const DynkinType& d) {
  DerivedSum sum;
  for (const Root& r : projective_dims(d)) sum.emplace_back(r, 0);
  std::sort(sum.begin(), sum.end());
  return sum;
}

inline DerivedSum apply_letter(const DynkinType& d, const Generator& g, const DerivedSum& sum) {
  DerivedSum out;
  out.reserve(sum.size());
  switch (g.kind) {
    case Generator::Kind::serre:
      for (const auto& [root, shift] : sum) out.push_back(ar_translate(d, root, shift));
      break;
    case Generator::Kind::shift:
      for (const auto& [root, shift] : sum)
        out.emplace_back(root, shift + static_cast<int>(g.shift_by));
      break;
    default:
      throw error(errc::input, "the object-level estimator supports serre and shift letters only");
  }
  std::sort(out.begin(), out.end());
  return out;
}

// delta'_t(G, F^n G) = sum_m dim Hom(G, F^n G[m]) e^{-mt} where G is the sum
// of all indecomposable projectives.  Hom(G, M[s][m]) survives only at
// m = -s, where it contributes the total dimension of M.
inline Int delta_prime_total(const DerivedSum& sum) {
  Int total = 0;
  for (const auto& [root, shift] : sum)
    for (const Int& c : root) total += c;
  return total;
}

inline double delta_prime(const DerivedSum& sum, double t) {
  double value = 0.0;
  for (const auto& [root, shift] : sum) {
    Int dim = 0;
    for (const Int& c : root) dim += c;
    value += rat_to_double(Rat(dim)) * std::exp(t * shift);
  }
  return value;
}

// Trajectory of s_n(t) = (1/n) log delta'_t(G, F^n G).  A word in serre and
// shift letters permutes shifted roots, so its orbit is eventually periodic up
// to a uniform shift; once a cycle is found the asymptotic is exact:
// h_t = slope * t with slope = (shift drift per application), and the t = 0
// limit is exactly zero.  estimates[k] is s_{n_max}(t_values[k]); s holds the
// full t = 0 series for n = 1..n_max.
struct EntropyEstimate {
  std::vector<double> t_values;
  std::vector<double> estimates;
  std::vector<double> s;
  std::vector<Int> totals;
  bool cycle_found = false;
  int period = 0;
  Rat slope{0};
};

inline EntropyEstimate estimate_entropy(const DynkinType& d, const std::vector<Generator>& word,
                                        std::vector<double> t_values, int n_max) {
  if (n_max < 1) throw error(errc::input, "estimate_entropy: n_max must be >= 1");
  if (word.empty()) throw error(errc::input, "estimate_entropy: empty word");
  EntropyEstimate est;
  est.t_values = std::move(t_values);
  DerivedSum state = projective_generator(d);
  std::map<DerivedSum, std::pair<int, long long>> seen;
  for (int n = 1; n <= n_max; ++n) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) state = apply_letter(d, *it, state);
    const Int total = delta_prime_total(state);
    est.totals.push_back(total);
    est.s.push_back(log_big(total) / n);
    if (!est.cycle_found) {
      long long min_shift = state.front().second;
      for (const auto& [root, shift] : state) min_shift = std::min<long long>(min_shift, shift);
      DerivedSum normalized = state;
      for (auto& [root, shift] : normalized) shift -= static_cast<int>(min_shift);
      std::sort(normalized.begin(), normalized.end());
      const auto [it, inserted] = seen.emplace(std::move(normalized), std::make_pair(n, min_shift));
      if (!inserted) {
        est.cycle_found = true;
        est.period = n - it->second.first;
        est.slope = Rat(Int(min_shift - it->second.second), Int(est.period));
      }
    }
  }
  for (double t : est.t_values) est.estimates.push_back(std::log(delta_prime(state, t)) / n_max);
  return est;
}

inline EntropyEstimate estimate_entropy(const DynkinType& d, const std::vector<Generator>& word,
                                        int n_max) {
  return estimate_entropy(d, word, std::vector<double>{}, n_max);
}

// --- growth-curve diagnostics ------------------------------------------------

// Tail behaviour of a growth curve against a reference value of log rho.
struct GyConsistency {
  bool degenerate = false;
  double log_rho = 0.0;        // reference value the curve is compared against
  double s_final = 0.0;
  double final_dev = 0.0;
  double max_dev_tail = 0.0;   // over the last quartile
  bool upper_bounded = true;   // s_n <= log_rho + eps for every n
  bool monotone_tail = true;   // |s_n - log_rho| nonincreasing on the last quartile
  double ratio_estimate = 0.0; // log(sum_n / sum_{n-1}) at the end of the curve
};

inline GyConsistency gy_consistency(const GrowthCurve& curve, double log_rho, double eps) {
  GyConsistency r;
  r.log_rho = log_rho;
  if (curve.degenerate || curve.values.empty()) {
    r.degenerate = true;
    return r;
  }
  const std::size_t n = curve.values.size();
  r.s_final = curve.values.back();
  r.final_dev = std::abs(r.s_final - log_rho);
  const std::size_t tail = n - n / 4;
  double prev_dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = std::abs(curve.values[i] - log_rho);
    if (curve.values[i] > log_rho + eps) r.upper_bounded = false;
    if (i >= tail) {
      r.max_dev_tail = std::max(r.max_dev_tail, dev);
      if (i > tail && dev > prev_dev) r.monotone_tail = false;
    }
    prev_dev = dev;
  }
  if (n >= 2)
    r.ratio_estimate = log_big(curve.sums[n - 1]) - log_big(curve.sums[n - 2]);
  return r;
}

inline GyConsistency gy_consistency(const WeightData& w, const std::vector<Generator>& word,
                                    int n_max, const Rat& tol, double eps = 1e-6) {
  const EntropyReport report = entropy(w, word, tol);
  const LatticeEndo endo = word_to_endo(w, word);
  return gy_consistency(gy_growth_curve(endo, n_max), report.h0, eps);
}

inline GyConsistency gy_consistency(const DynkinType& d, const std::vector<Generator>& word,
                                    int n_max, const Rat& tol, double eps = 1e-6) {
  const EntropyReport report = entropy(d, word, tol);
  const LatticeEndo endo = word_to_endo(d, word);
  return gy_consistency(gy_growth_curve(endo, n_max), report.h0, eps);
}

}  // namespace catent
