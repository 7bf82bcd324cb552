#pragma once

#include <optional>

#include "catent/int_matrix.hpp"
#include "catent/poly.hpp"

namespace catent {

// Rational enclosure of a spectral radius: lower <= rho <= upper.
struct CertifiedRadius {
  Rat lower;
  Rat upper;

  Rat width() const { return upper - lower; }
  double mid() const { return rat_to_double((lower + upper) / 2); }
  bool contains(const Rat& x) const { return lower <= x && x <= upper; }
};

namespace detail {

// All arithmetic below is exact rational; no floating point touches the
// certification path.

inline unsigned long long euler_phi(unsigned long long m) {
  unsigned long long result = m;
  for (unsigned long long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

// Kronecker's theorem: a monic integer polynomial with nonzero constant term
// whose roots all lie in the closed unit disk has only roots of unity.
// Conversely, if the squarefree part divides x^K - 1 for K = lcm of orders of
// the cyclotomics of degree <= d, the spectral radius is exactly 1.
// Returns true iff x^K == 1 mod q is established; abandons (false) if interim
// coefficients blow up, which only costs us the fast path.
inline bool roots_are_roots_of_unity(const IntPoly& q) {
  const int d = static_cast<int>(q.size()) - 1;
  if (d < 1) return false;
  if (q.back() != 1) return false;
  if (q.front() != 1 && q.front() != -1) return false;
  for (const auto& c : q)
    if (msb(int_abs(c) + 1) > 64) return false;

  Int k = 1;
  for (unsigned long long m = 2; m <= 2ULL * d * d + 4; ++m)
    if (euler_phi(m) <= static_cast<unsigned long long>(d))
      k = boost::multiprecision::lcm(k, Int(m));

  const unsigned max_bits = 4096;
  auto reduce = [&](std::vector<Int>& a) -> bool {
    while (a.size() > static_cast<std::size_t>(d)) {
      const Int top = a.back();
      a.pop_back();
      if (top == 0) continue;
      const std::size_t shift = a.size() - d;
      for (int i = 0; i < d; ++i) a[shift + i] -= top * q[i];
    }
    for (const auto& c : a)
      if (c != 0 && msb(int_abs(c)) > max_bits) return false;
    return true;
  };
  auto mulmod = [&](const std::vector<Int>& a, const std::vector<Int>& b,
                    std::vector<Int>& out) -> bool {
    out.assign(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return reduce(out);
  };

  std::vector<Int> base(d, Int(0)), acc(1, Int(1)), tmp;
  if (d == 1) {
    base.assign(1, Int(-q[0]));  // x == -q0 mod (x + q0)
  } else {
    base[1] = 1;
  }
  Int e = k;
  while (e > 0) {
    if ((e & 1) != 0) {
      if (!mulmod(acc, base, tmp)) return false;
      acc = tmp;
    }
    e >>= 1;
    if (e > 0) {
      if (!mulmod(base, base, tmp)) return false;
      base = tmp;
    }
  }
  while (!acc.empty() && acc.back() == 0) acc.pop_back();
  return acc.size() == 1 && acc[0] == 1;
}

// Number of roots of q (with multiplicity) in the open disk |z| < r, or
// nullopt when the test radius is degenerate for the Cauchy-index method
// (root on the circle, vanishing leading transform, or a remainder chain
// whose gcd is nonconstant). Degenerate radii are finite in number; callers
// dodge them.
inline std::optional<int> count_in_open_disk(const RatPoly& q, const Rat& r) {
  const int d = rp_degree(q);
  if (d < 1) return 0;
  if (rp_eval(q, r) == 0 || rp_eval(q, -r) == 0) return std::nullopt;

  // g(s) = (1-s)^d q(r(1+s)/(1-s)): roots of q in the open disk of radius r
  // correspond to roots of g in the open left half-plane.
  RatPoly g(static_cast<std::size_t>(d) + 1, Rat(0));
  RatPoly up{Rat(1)};          // (1+s)^k
  std::vector<RatPoly> downs;  // (1-s)^j
  downs.push_back({Rat(1)});
  for (int j = 1; j <= d; ++j) downs.push_back(rp_mul(downs.back(), {Rat(1), Rat(-1)}));
  Rat rk = 1;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) {
      up = rp_mul(up, {Rat(1), Rat(1)});
      rk *= r;
    }
    if (k >= static_cast<int>(q.size()) || q[k] == 0) continue;
    const RatPoly term = rp_mul(up, downs[d - k]);
    const Rat c = q[k] * rk;
    for (std::size_t i = 0; i < term.size(); ++i) g[i] += c * term[i];
  }
  rp_trim(g);
  if (rp_degree(g) != d) return std::nullopt;

  // g(i w) = P(w) + i Q(w).
  RatPoly pr, qi;
  for (std::size_t k = 0; k < g.size(); ++k) {
    switch (k % 4) {
      case 0: if (pr.size() <= k) pr.resize(k + 1, Rat(0)); pr[k] = g[k]; break;
      case 1: if (qi.size() <= k) qi.resize(k + 1, Rat(0)); qi[k] = g[k]; break;
      case 2: if (pr.size() <= k) pr.resize(k + 1, Rat(0)); pr[k] = -g[k]; break;
      default: if (qi.size() <= k) qi.resize(k + 1, Rat(0)); qi[k] = -g[k]; break;
    }
  }
  rp_trim(pr);
  rp_trim(qi);
  if (pr.empty() || qi.empty()) return std::nullopt;

  // Cauchy index over (-inf, +inf), chain led by the degree-d part.
  const bool p_leads = d % 2 == 0;
  auto chain = p_leads ? sturm_chain(pr, qi) : sturm_chain(qi, pr);
  if (rp_degree(chain.back()) >= 1) return std::nullopt;
  const int index = sturm_variations_at_minus_inf(chain) - sturm_variations_at_plus_inf(chain);
  const int twice = p_leads ? d - index : d + index;
  if (twice % 2 != 0) return std::nullopt;
  const int inside = twice / 2;
  if (inside < 0 || inside > d) return std::nullopt;
  return inside;
}

}  // namespace detail

// Certified spectral radius of an integer matrix: char poly -> exact rational
// bisection on the root-modulus counting predicate. tol > 0 required.
inline CertifiedRadius spectral_radius(const IntMatrix& m, const Rat& tol) {
  if (tol <= 0) throw error(errc::input, "spectral_radius: tol must be positive");
  m.require_square();
  std::vector<Int> cp = char_poly(m);

  RatPoly p = rp_from_descending_int(cp);
  // Strip zero eigenvalues.
  std::size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  p.erase(p.begin(), p.begin() + static_cast<long>(low));
  if (rp_degree(p) < 1) return {Rat(0), Rat(0)};

  RatPoly sf = rp_squarefree_part(p);
  const int d = rp_degree(sf);

  // sf is primitive integer after normalization; make it monic-integer for the
  // root-of-unity test (it stems from a monic char poly, so the lead is +-1
  // up to the positive normalization; rebuild monic by sign).
  {
    IntPoly iq;
    bool integral = true;
    for (const auto& c : sf) {
      if (boost::multiprecision::denominator(c) != 1) { integral = false; break; }
      iq.push_back(boost::multiprecision::numerator(c));
    }
    if (integral && !iq.empty()) {
      if (iq.back() < 0)
        for (auto& c : iq) c = -c;
      if (iq.back() == 1 && detail::roots_are_roots_of_unity(iq))
        return {Rat(1), Rat(1)};
    }
  }

  // After stripping zero roots, |product of roots| = |a0/ad| >= ... >= and the
  // roots are algebraic integers with nonzero product, so rho >= 1 unless all
  // roots are roots of unity (handled above); rho > 1 holds on this path, but
  // we only rely on rho >= 1 > 1/2 for the lower bracket.
  Rat lo(1, 2);
  Rat hi = 1;
  {
    Rat maxabs = 0;
    const Rat lead = boost::multiprecision::abs(sf.back());
    for (const auto& c : sf) {
      Rat a = boost::multiprecision::abs(c) / lead;
      if (a > maxabs) maxabs = a;
    }
    hi += maxabs;  // Cauchy bound
  }

  int guard = 0;
  while (hi - lo > tol) {
    if (++guard > 4096)
      throw error(errc::internal, "spectral_radius: bisection failed to converge");
    const Rat w = hi - lo;
    std::optional<int> inside;
    Rat mid;
    bool classified = false;
    for (int attempt = 0; attempt < 64 && !classified; ++attempt) {
      // 1/2, then 1/3, 2/3, 1/4, 3/4, ...: every attempt keeps a real shrink.
      Rat frac;
      if (attempt == 0) {
        frac = Rat(1, 2);
      } else {
        const int den = 2 + (attempt + 1) / 2;
        const int num = (attempt % 2 == 1) ? 1 : den - 1;
        frac = Rat(num, den);
      }
      mid = lo + w * frac;
      inside = detail::count_in_open_disk(sf, mid);
      classified = inside.has_value();
    }
    if (!classified)
      throw error(errc::internal, "spectral_radius: could not find admissible test radius");
    if (*inside == d)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

}  // namespace catent
