#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "catent/int_matrix.hpp"
#include "catent/zsmith.hpp"

namespace catent {

// Free finite-rank lattice with integer Euler pairing chi(v_i, v_j) = gram(i,j).
struct EulerLattice {
  IntMatrix gram;
  std::vector<std::string> labels;

  EulerLattice(IntMatrix g, std::vector<std::string> names)
      : gram(std::move(g)), labels(std::move(names)) {
    validate();
  }

  explicit EulerLattice(IntMatrix g)
      : gram(std::move(g)), labels(default_labels(gram.rows())) {
    validate();
  }

  std::size_t rank() const { return gram.rows(); }

  static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> l;
    l.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) l.push_back("e" + std::to_string(i));
    return l;
  }

 private:
  void validate() const {
    gram.require_square();
    if (labels.size() != gram.rows())
      throw error(errc::input, "EulerLattice: label count != rank");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second)
        throw error(errc::input, "EulerLattice: duplicate label '" + l + "'");
  }
};

// Endomorphism in column convention: column j is the image of basis vector j.
struct LatticeEndo {
  EulerLattice lattice;
  IntMatrix matrix;

  LatticeEndo(EulerLattice lat, IntMatrix m) : lattice(std::move(lat)), matrix(std::move(m)) {
    matrix.require_square();
    if (matrix.rows() != lattice.rank())
      throw error(errc::input, "LatticeEndo: matrix size != lattice rank");
  }
};

inline Int pairing(const EulerLattice& lat, const std::vector<Int>& u, const std::vector<Int>& v) {
  if (u.size() != lat.rank() || v.size() != lat.rank())
    throw error(errc::input, "pairing: vector length != rank");
  Int acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) row += lat.gram(i, j) * v[j];
    acc += u[i] * row;
  }
  return acc;
}

// Integral basis of the two-sided radical {v : gram*v = 0 and gram^T*v = 0}.
inline std::vector<std::vector<Int>> radical(const EulerLattice& lat) {
  const std::size_t n = lat.rank();
  IntMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = lat.gram(i, j);
      stacked(n + i, j) = lat.gram(j, i);
    }
  const IntMatrix ker = integer_kernel(stacked);
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    std::vector<Int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ker(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Quotient by the radical; the induced pairing is nondegenerate on both sides.
inline EulerLattice numerical_quotient(const EulerLattice& lat) {
  const std::size_t n = lat.rank();
  IntMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = lat.gram(i, j);
      stacked(n + i, j) = lat.gram(j, i);
    }
  const SmithDecomposition s = smith_normal_form(stacked);
  const std::size_t r = static_cast<std::size_t>(s.rank);
  if (r == n) return lat;
  // First r columns of v complement the kernel; pair their lifts.
  IntMatrix q(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (s.v(k, i) == 0) continue;
        Int row = 0;
        for (std::size_t l = 0; l < n; ++l) row += lat.gram(k, l) * s.v(l, j);
        acc += s.v(k, i) * row;
      }
      q(i, j) = acc;
    }
  std::vector<std::string> labels;
  labels.reserve(r);
  for (std::size_t i = 1; i <= r; ++i) labels.push_back("q" + std::to_string(i));
  return EulerLattice(std::move(q), std::move(labels));
}

inline bool is_isometry(const LatticeEndo& endo) {
  const IntMatrix& m = endo.matrix;
  if (m.transpose() * endo.lattice.gram * m != endo.lattice.gram) return false;
  return int_abs(det(m)) == 1;
}

// Growth curve s_n = (1/n) log sum_{i,j} |chi(v_i, F^n v_j)|; the sums are
// exact, only the logarithm is floated.
struct GrowthCurve {
  std::vector<double> values;
  std::vector<Int> sums;
  bool degenerate = false;
};

inline GrowthCurve gy_growth_curve(const LatticeEndo& endo, int n_max) {
  if (n_max < 1) throw error(errc::input, "gy_growth_curve: n_max must be >= 1");
  GrowthCurve curve;
  IntMatrix acc = endo.lattice.gram;
  for (int n = 1; n <= n_max; ++n) {
    acc = acc * endo.matrix;
    Int sum = 0;
    for (std::size_t i = 0; i < acc.rows(); ++i)
      for (std::size_t j = 0; j < acc.cols(); ++j) sum += int_abs(acc(i, j));
    if (sum == 0) {
      curve.degenerate = true;
      break;
    }
    curve.sums.push_back(sum);
    curve.values.push_back(log_big(sum) / n);
  }
  return curve;
}

}  // namespace catent
