#pragma once

// Dense univariate polynomials over Q: the small toolbox behind the
// non-degeneracy heuristic (rational-root hunting) and the surface
// common-component test (Sylvester resultants).

#include <algorithm>

#include "toricinv/matrix.hpp"

namespace toricinv {

using QPoly = std::vector<Rat>;  // coefficients, low degree first

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qpoly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qpoly_trim(r);
  return r;
}

inline QPoly qpoly_derivative(const QPoly& p) {
  QPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rat(static_cast<long>(i)));
  qpoly_trim(r);
  return r;
}

inline Rat qpoly_eval(const QPoly& p, const Rat& x) {
  Rat v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

/// Monic gcd over Q (Euclid).
inline QPoly qpoly_gcd(QPoly a, QPoly b) {
  qpoly_trim(a);
  qpoly_trim(b);
  while (!b.empty()) {
    // a mod b
    QPoly r = a;
    while (static_cast<int>(r.size()) >= static_cast<int>(b.size()) &&
           !r.empty()) {
      Rat f = r.back() / b.back();
      size_t shift = r.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
      qpoly_trim(r);
    }
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

namespace detail {

/// Divisors of |n| up to a budget of trial divisions; the (possibly
/// composite) cofactors are included so small-prime-smooth values are
/// covered exactly and huge ones degrade gracefully.
inline std::vector<Int> bounded_divisors(Int n, long budget = 4000) {
  if (n < 0) n = -n;
  std::vector<Int> divs{Int(1)};
  if (n <= 1) return divs;
  Int m = n;
  std::vector<std::pair<Int, int>> fact;
  Int p = 2;
  long steps = 0;
  while (m > 1 && steps < budget && p * p <= m) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m = int_divexact(m, p);
        ++e;
      }
      fact.emplace_back(p, e);
    }
    p += (p == 2) ? 1 : 2;
    ++steps;
  }
  if (m > 1) fact.emplace_back(m, 1);  // remaining cofactor, maybe composite
  for (auto& [q, e] : fact) {
    size_t sz = divs.size();
    Int pw = 1;
    for (int i = 0; i < e; ++i) {
      pw *= q;
      for (size_t j = 0; j < sz; ++j) {
        if (divs.size() > 20000) return divs;
        divs.push_back(divs[j] * pw);
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

}  // namespace detail

/// Nonzero rational roots of p, found exactly via the rational root theorem
/// with a bounded factoring budget (roots with huge prime factors may be
/// missed; callers treat this as a heuristic search).
inline std::vector<Rat> qpoly_rational_roots(const QPoly& p0) {
  QPoly p = p0;
  qpoly_trim(p);
  std::vector<Rat> roots;
  if (p.size() <= 1) return roots;
  // clear denominators
  Int l = 1;
  for (const Rat& c : p) {
    Rat cc = c;
    cc.canonicalize();
    l = int_lcm(l, cc.get_den());
  }
  IVec ic(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    Rat cc = p[i] * Rat(l);
    cc.canonicalize();
    ic[i] = cc.get_num();
  }
  size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;  // strip x^low
  if (low >= ic.size()) return roots;
  Int a0 = ic[low];
  Int an = ic.back();
  // linear case: exact
  if (ic.size() - low == 2) {
    Rat r(-a0, an);
    r.canonicalize();
    if (r != 0) roots.push_back(r);
    return roots;
  }
  for (const Int& num : detail::bounded_divisors(a0)) {
    for (const Int& den : detail::bounded_divisors(an)) {
      if (int_gcd(num, den) != 1) continue;
      for (int s = 0; s < 2; ++s) {
        Rat cand(s ? Int(-num) : num, den);
        cand.canonicalize();
        if (qpoly_eval(p, cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Numeric determinant over Q (Gaussian elimination, exact rationals).
inline Rat qmat_det(QMat m) {
  size_t n = m.size();
  Rat det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

}  // namespace toricinv
