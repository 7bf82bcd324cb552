#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "catent/int_matrix.hpp"
#include "catent/numeric.hpp"

namespace catent {

struct SL2Matrix {
  Int a = 1, b = 0, c = 0, d = 1;

  static SL2Matrix make(Int a, Int b, Int c, Int d) {
    if (a * d - b * c != 1) throw error(errc::input, "SL2 matrix must have determinant 1");
    return {std::move(a), std::move(b), std::move(c), std::move(d)};
  }

  static SL2Matrix id() { return {}; }

  Int trace() const { return a + d; }

  SL2Matrix inverse() const { return {d, -b, -c, a}; }

  SL2Matrix operator-() const { return {-a, -b, -c, -d}; }

  friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  friend bool operator==(const SL2Matrix& x, const SL2Matrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const SL2Matrix& x, const SL2Matrix& y) { return !(x == y); }

  IntMatrix to_matrix() const {
    IntMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
  }

  static SL2Matrix from_matrix(const IntMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw error(errc::input, "SL2 matrix must be 2x2");
    return make(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  }

  std::string str() const {
    return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
  }
};

enum class SL2Class { elliptic, parabolic, hyperbolic };

// Elliptic means finite order, so the central +-identity lands there and
// parabolic is reserved for the infinite-order trace +-2 elements.
inline SL2Class classify(const SL2Matrix& m) {
  const Int t = int_abs(m.trace());
  if (t < 2) return SL2Class::elliptic;
  if (t == 2) return (m == SL2Matrix::id() || m == -SL2Matrix::id())
                         ? SL2Class::elliptic
                         : SL2Class::parabolic;
  return SL2Class::hyperbolic;
}

// Spectral radius (|tr| + sqrt(tr^2 - 4))/2 for hyperbolic, else 1; the exact
// certificate is the pair (trace, tr^2 - 4).
struct SL2Radius {
  double value = 1.0;
  Int trace;
  Int disc;
};

inline SL2Radius radius(const SL2Matrix& m) {
  SL2Radius r;
  r.trace = m.trace();
  r.disc = r.trace * r.trace - 4;
  if (classify(m) != SL2Class::hyperbolic) {
    r.value = 1.0;
    return r;
  }
  const double t = std::fabs(r.trace.convert_to<double>());
  r.value = (t + std::sqrt(t * t - 4.0)) / 2.0;
  return r;
}

inline SL2Matrix conjugate(const SL2Matrix& m, const SL2Matrix& p) {
  return p * m * p.inverse();
}

// Positive word in L = [[1,0],[1,1]] and U = [[1,1],[0,1]]: exponents
// (m_1, ..., m_2n), all >= 1, with matrix
//   W = L^{m_2n} U^{m_2n-1} ... L^{m_2} U^{m_1}
//     = prod_{k=n..1} [[1, m_2k-1], [m_2k, 1 + m_2k-1 m_2k]].
// Factorization invariant: conj * M * conj^-1 = (negated ? -1 : 1) * W.
struct PositiveWord {
  std::vector<Int> exponents;
  SL2Matrix conj;
  bool negated = false;
};

inline SL2Matrix word_matrix(const std::vector<Int>& exponents) {
  if (exponents.empty() || exponents.size() % 2 != 0)
    throw error(errc::input, "positive word needs an even, nonzero number of exponents");
  for (const Int& m : exponents)
    if (m < 1) throw error(errc::input, "positive word exponents must be >= 1");
  SL2Matrix w = SL2Matrix::id();
  for (std::size_t k = exponents.size(); k >= 2; k -= 2) {
    const Int& mu = exponents[k - 2];  // m_{2k-1}: U exponent
    const Int& ml = exponents[k - 1];  // m_{2k}:   L exponent
    w = w * SL2Matrix{1, mu, ml, 1 + mu * ml};
  }
  return w;
}

inline SL2Matrix reassemble(const PositiveWord& word) {
  const SL2Matrix w = word_matrix(word.exponents);
  const SL2Matrix m = word.conj.inverse() * w * word.conj;
  return word.negated ? -m : m;
}

namespace detail {

// floor((p + sqrt(dd))/q) for nonsquare dd > 0, q != 0, exactly.
inline Int surd_floor(const Int& p, const Int& dd, const Int& q) {
  const Int s = isqrt(dd);
  auto floor_div = [](const Int& num, const Int& den) {
    Int qq = num / den;
    if (num % den != 0 && ((num < 0) != (den < 0))) qq -= 1;
    return qq;
  };
  if (q > 0) return floor_div(p + s, q);
  // (p + sqrt(dd))/q = -(p + sqrt(dd))/|q|; the value is irrational, so
  // floor(-y) = -floor(y) - 1.
  return -floor_div(p + s, -q) - 1;
}

inline bool entrywise_nonneg(const SL2Matrix& m) {
  return m.a >= 0 && m.b >= 0 && m.c >= 0 && m.d >= 0;
}

struct Run {
  bool is_u = false;
  Int count;
};

// Peel a matrix in the free monoid SL2(N) = <L, U> into maximal letter runs.
inline std::vector<Run> monoid_runs(SL2Matrix w) {
  std::vector<Run> runs;
  while (w != SL2Matrix::id()) {
    if (w.a >= w.c && w.b >= w.d && (w.c > 0 || w.d > 0)) {
      // Maximal U run: U^-k W = [[a-kc, b-kd],[c,d]] stays nonnegative.
      Int k = -1;
      if (w.c > 0) k = w.a / w.c;
      if (w.d > 0) {
        const Int k2 = w.b / w.d;
        if (k < 0 || k2 < k) k = k2;
      }
      if (k < 1) throw error(errc::internal, "positive_factorize: empty U run");
      w.a -= k * w.c;
      w.b -= k * w.d;
      runs.push_back({true, k});
    } else if (w.c >= w.a && w.d >= w.b && (w.a > 0 || w.b > 0)) {
      Int k = -1;
      if (w.a > 0) k = w.c / w.a;
      if (w.b > 0) {
        const Int k2 = w.d / w.b;
        if (k < 0 || k2 < k) k = k2;
      }
      if (k < 1) throw error(errc::internal, "positive_factorize: empty L run");
      w.c -= k * w.a;
      w.d -= k * w.b;
      runs.push_back({false, k});
    } else {
      throw error(errc::internal, "positive_factorize: matrix not in the positive monoid");
    }
  }
  return runs;
}

inline SL2Matrix run_matrix(const Run& r) {
  return r.is_u ? SL2Matrix{1, r.count, 0, 1} : SL2Matrix{1, 0, r.count, 1};
}

}  // namespace detail

// Factor a hyperbolic matrix as conj^-1 * W * conj (times -1 when negated)
// with W a positive word in L and U, via the continued fraction of the
// attracting fixed point. The exponent tuple is the lexicographically least
// one among the rotations of the cyclic word starting with an L run.
inline PositiveWord positive_factorize(const SL2Matrix& m_in) {
  PositiveWord out;
  SL2Matrix m = m_in;
  if (m.trace() < -2) {
    out.negated = true;
    m = -m;
  }
  if (m.trace() <= 2)
    throw error(errc::precondition, "positive_factorize: matrix is not hyperbolic up to sign");

  // Attracting fixed point x = (P + sqrt(D))/Q with P = a-d, Q = 2c, D = tr^2-4;
  // Q | D - P^2 since D - P^2 = 4bc. Hyperbolic integer matrices have c != 0.
  if (m.c == 0) throw error(errc::internal, "positive_factorize: hyperbolic with c = 0");
  const Int dd = m.trace() * m.trace() - 4;
  Int p = m.a - m.d;
  Int q = 2 * m.c;

  // Continued fraction steps x -> 1/(x - k) conjugate m by T_k = [[k,1],[1,0]]
  // until the conjugate lies in the positive monoid (and the accumulated
  // conjugator has determinant +1, so one more step if needed).
  SL2Matrix w = m;
  IntMatrix cacc = IntMatrix::identity(2);
  int cdet = 1;
  bool found = false;
  for (int step = 0; step < 4096; ++step) {
    if (cdet == 1 && w != SL2Matrix::id() && detail::entrywise_nonneg(w)) {
      found = true;
      break;
    }
    const Int k = detail::surd_floor(p, dd, q);
    // w <- T^-1 w T with T = [[k,1],[1,0]], T^-1 = [[0,1],[1,-k]].
    const Int na = w.c * k + w.d;
    const Int nb = w.c;
    const Int nc = (w.a - w.d) * k + w.b - w.c * k * k;
    const Int nd = w.a - w.c * k;
    w = SL2Matrix{na, nb, nc, nd};
    IntMatrix t(2, 2);
    t(0, 0) = k;
    t(0, 1) = 1;
    t(1, 0) = 1;
    t(1, 1) = 0;
    cacc = cacc * t;
    cdet = -cdet;
    // CF state update.
    const Int pn = k * q - p;
    const Int qn = (dd - pn * pn) / q;
    if (qn == 0) throw error(errc::internal, "positive_factorize: degenerate surd");
    p = pn;
    q = qn;
  }
  if (!found) throw error(errc::internal, "positive_factorize: reduction did not terminate");

  // w = cacc^-1 m cacc, so conj = cacc^-1 satisfies conj m conj^-1 = w.
  SL2Matrix conj = SL2Matrix::from_matrix(cacc).inverse();

  std::vector<detail::Run> runs = detail::monoid_runs(w);
  if (runs.size() >= 2 && runs.front().is_u == runs.back().is_u) {
    // First and last runs would merge cyclically; rotate the first run to the
    // back so the linear run list is genuinely alternating end to end.
    const SL2Matrix a = detail::run_matrix(runs.front());
    conj = a.inverse() * conj;
    w = a.inverse() * w * a;
    runs = detail::monoid_runs(w);
  }
  if (runs.size() < 2 || runs.size() % 2 != 0 || runs.front().is_u == runs.back().is_u)
    throw error(errc::internal, "positive_factorize: run parity");

  // Canonical rotation: among rotations starting with an L run, choose the
  // lexicographically least exponent tuple; rotating by a prefix A replaces
  // w by A^-1 w A and conj by A^-1 conj.
  std::vector<Int> best;
  std::size_t best_start = 0;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    if (runs[s].is_u) continue;
    std::vector<Int> exps;
    exps.reserve(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i)
      exps.push_back(runs[(s + runs.size() - 1 - i) % runs.size()].count);
    if (best.empty() || exps < best) {
      best = exps;
      best_start = s;
    }
  }
  if (best.empty()) throw error(errc::internal, "positive_factorize: no L run");
  SL2Matrix prefix = SL2Matrix::id();
  for (std::size_t i = 0; i < best_start; ++i) prefix = prefix * detail::run_matrix(runs[i]);
  out.exponents = std::move(best);
  out.conj = prefix.inverse() * conj;

  // Exact reassembly check.
  if (reassemble(out) != m_in) throw error(errc::internal, "positive_factorize: reassembly failed");
  return out;
}

}  // namespace catent
