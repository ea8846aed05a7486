#pragma once

// Exact arithmetic base layer: arbitrary-precision integers and rationals
// (GMP-backed). No floating point is used anywhere in the library.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricinv {

using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

/// Library error with a stable machine-readable code ("ZeroVector",
/// "NotInLattice", ...) alongside the human message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Extended gcd: returns g and writes x, y with a*x + b*y = g, g >= 0.
inline Int int_gcdext(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

/// Exact division; the caller guarantees divisibility.
inline Int int_divexact(const Int& a, const Int& b) {
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Floor division (rounds toward -infinity).
inline Int int_fdiv(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_pow(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& a, long e) {
  if (e == 0) return Rat(1);
  Rat base = e > 0 ? a : Rat(Rat(1) / a);
  unsigned long n = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-e);
  Rat r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

/// Content gcd of a vector (gcd of absolute values), 0 for the zero vector.
inline Int content(const IVec& v) {
  Int g = 0;
  for (const Int& c : v) g = int_gcd(g, c);
  return g;
}

inline bool is_zero(const IVec& v) {
  for (const Int& c : v)
    if (c != 0) return false;
  return true;
}

inline IVec vec_add(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec vec_sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec vec_neg(const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IVec vec_scale(const Int& c, const IVec& a) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot_q(const QVec& a, const IVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  return c.get_str();
}

inline std::string to_string(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

/// Builds an integer vector from small ints (test and construction helper).
inline IVec iv(std::initializer_list<long> xs) {
  IVec r;
  r.reserve(xs.size());
  for (long x : xs) r.emplace_back(x);
  return r;
}

}  // namespace toricinv
