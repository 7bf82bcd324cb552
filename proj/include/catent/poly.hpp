#pragma once

#include <vector>

#include "catent/numeric.hpp"

namespace catent {

// Polynomials are coefficient vectors in ascending power order.
// Invariant: either empty (the zero polynomial) or the last entry is nonzero.
using RatPoly = std::vector<Rat>;
using IntPoly = std::vector<Int>;

inline void rp_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int rp_degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly rp_from_descending_int(const std::vector<Int>& c) {
  RatPoly p(c.rbegin(), c.rend());
  rp_trim(p);
  return p;
}

inline Rat rp_eval(const RatPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline RatPoly rp_derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rat(Int(i)) * p[i]);
  rp_trim(d);
  return d;
}

inline RatPoly rp_scale(const RatPoly& p, const Rat& s) {
  RatPoly q = p;
  for (auto& c : q) c *= s;
  rp_trim(q);
  return q;
}

inline RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly c(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  rp_trim(c);
  return c;
}

inline RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  rp_trim(c);
  return c;
}

// Rescales by a positive rational so coefficients become coprime integers.
// Sign pattern is preserved, which is all Sturm chains care about.
inline RatPoly rp_normalize(RatPoly p) {
  rp_trim(p);
  if (p.empty()) return p;
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& c : p) {
    const Int den = boost::multiprecision::denominator(c);
    den_lcm = boost::multiprecision::lcm(den_lcm, den);
  }
  for (auto& c : p) c *= Rat(den_lcm);
  for (const auto& c : p) num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
  if (num_gcd > 1)
    for (auto& c : p) c /= Rat(num_gcd);
  return p;
}

// Remainder of a by b (b nonzero).
inline RatPoly rp_rem(RatPoly a, const RatPoly& b) {
  if (b.empty()) throw error(errc::precondition, "rp_rem: division by zero polynomial");
  rp_trim(a);
  const int db = rp_degree(b);
  while (rp_degree(a) >= db) {
    const Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    rp_trim(a);
  }
  return a;
}

// Exact quotient; throws if the division leaves a remainder.
inline RatPoly rp_divexact(RatPoly a, const RatPoly& b) {
  if (b.empty()) throw error(errc::precondition, "rp_divexact: division by zero polynomial");
  rp_trim(a);
  if (a.empty()) return {};
  if (a.size() < b.size()) throw error(errc::internal, "rp_divexact: inexact division");
  RatPoly q(a.size() - b.size() + 1, Rat(0));
  while (rp_degree(a) >= rp_degree(b)) {
    const Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    rp_trim(a);
  }
  if (!a.empty()) throw error(errc::internal, "rp_divexact: inexact division");
  rp_trim(q);
  return q;
}

// Canonical: the leading coefficient of a nonzero gcd is positive.
inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
  a = rp_normalize(std::move(a));
  b = rp_normalize(std::move(b));
  while (!b.empty()) {
    RatPoly r = rp_normalize(rp_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0)
    for (auto& c : a) c = -c;
  return a;
}

inline RatPoly rp_squarefree_part(const RatPoly& p) {
  if (rp_degree(p) <= 1) return rp_normalize(p);
  RatPoly g = rp_gcd(p, rp_derivative(p));
  if (rp_degree(g) == 0) return rp_normalize(p);
  return rp_normalize(rp_divexact(p, g));
}

inline int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Sturm-type remainder chain: p0, p1, -(p0 mod p1), ...
inline std::vector<RatPoly> sturm_chain(const RatPoly& p0, const RatPoly& p1) {
  std::vector<RatPoly> chain;
  chain.push_back(rp_normalize(p0));
  chain.push_back(rp_normalize(p1));
  while (!chain.back().empty()) {
    const RatPoly& a = chain[chain.size() - 2];
    const RatPoly& b = chain.back();
    chain.push_back(rp_normalize(rp_scale(rp_rem(a, b), Rat(-1))));
  }
  chain.pop_back();
  return chain;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline int sturm_variations_at_minus_inf(const std::vector<RatPoly>& chain) {
  std::vector<int> signs;
  for (const auto& p : chain) {
    if (p.empty()) { signs.push_back(0); continue; }
    int s = sign_of(p.back());
    if (rp_degree(p) % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

inline int sturm_variations_at_plus_inf(const std::vector<RatPoly>& chain) {
  std::vector<int> signs;
  for (const auto& p : chain)
    signs.push_back(p.empty() ? 0 : sign_of(p.back()));
  return variations(signs);
}

inline int sturm_variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
  std::vector<int> signs;
  for (const auto& p : chain) signs.push_back(sign_of(rp_eval(p, x)));
  return variations(signs);
}

// Number of distinct real roots of squarefree p in the open interval (a, b).
inline int sturm_count_real_roots(const RatPoly& p, const Rat& a, const Rat& b) {
  if (rp_degree(p) <= 0) return 0;
  auto chain = sturm_chain(p, rp_derivative(p));
  return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

}  // namespace catent
