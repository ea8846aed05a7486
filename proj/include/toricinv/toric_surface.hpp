#pragma once

// Two-dimensional toric varieties: the (p, q) normal form, Hirzebruch-Jung
// continued fractions, the semigroup generator recursion, the Riemenschneider
// quasimatrix of defining binomials, orbit decomposition, and the
// isolated-singularity / prepolarity criteria.

#include "toricinv/ambient_poly.hpp"

namespace toricinv {

/// Normal-form data of the cyclic quotient surface attached to coprime
/// 0 < q < p (p = 1 encodes the smooth plane C^2).
struct SurfaceData {
  Int p, q;
  std::vector<Int> hj_digits;  // a_2, ..., a_{n-1}, each >= 2
  IMat generators;             // mu_1, ..., mu_n
  int ambient_dim = 0;         // n
  bool smooth = false;
  bool determinantal = false;  // a_i = 2 for the interior digits
};

/// Hirzebruch-Jung expansion p/(p-q) = [[a_2, ..., a_{n-1}]], digits >= 2.
inline std::vector<Int> hj_expansion(const Int& p, const Int& q) {
  if (!(q > 0 && q < p)) throw Error("RangeError", "need 0 < q < p");
  if (int_gcd(p, q) != 1) throw Error("NotCoprime", "p and q must be coprime");
  std::vector<Int> digits;
  Int n = p, d = p - q;
  while (d != 0) {
    Int a = int_fdiv(n + d - 1, d);  // ceil(n / d)
    digits.push_back(a);
    Int nd = a * d - n;
    n = d;
    d = nd;
  }
  return digits;
}

/// Evaluates [[a_2, ..., a_{n-1}]] as an exact rational (test oracle).
inline Rat hj_evaluate(const std::vector<Int>& digits) {
  Rat v = 0;
  for (size_t i = digits.size(); i-- > 0;) {
    if (i + 1 == digits.size())
      v = Rat(digits[i]);
    else
      v = Rat(digits[i]) - Rat(1) / v;
  }
  return v;
}

/// Minimal semigroup generators via mu_{i+1} = a_i mu_i - mu_{i-1} starting
/// from mu_1 = (1,0), mu_2 = (1,1); the terminal generator is (q, p).
inline SurfaceData semigroup_generators(const Int& p, const Int& q) {
  SurfaceData s;
  s.p = p;
  s.q = q;
  if (p == 1) {
    s.smooth = true;
    s.generators = {iv({1, 0}), iv({0, 1})};
    s.ambient_dim = 2;
    s.determinantal = false;
    return s;
  }
  s.hj_digits = hj_expansion(p, q);
  s.generators.push_back(iv({1, 0}));
  s.generators.push_back(iv({1, 1}));
  for (const Int& a : s.hj_digits) {
    const IVec& prev = s.generators[s.generators.size() - 2];
    const IVec& cur = s.generators.back();
    s.generators.push_back(vec_sub(vec_scale(a, cur), prev));
  }
  s.ambient_dim = static_cast<int>(s.generators.size());
  if (s.generators.back() != IVec{q, p})
    throw Error("Internal", "generator recursion did not terminate at (q,p)");
  s.determinantal = true;
  for (size_t i = 1; i + 1 < s.hj_digits.size(); ++i)
    if (s.hj_digits[i] != 2) s.determinantal = false;
  return s;
}

/// The toric variety of the surface: sigma = cone(e_2, p e_1 - q e_2), so
/// the dual cone is spanned by (1,0) and (q,p). Normal toric surfaces are
/// smooth or have an isolated singularity at the origin.
inline ToricVarietyData make_surface_variety(const SurfaceData& s) {
  Cone sigma;
  sigma.ambient_rank = 2;
  if (s.smooth)
    sigma.rays = {iv({1, 0}), iv({0, 1})};
  else
    sigma.rays = {iv({0, 1}), IVec{s.p, Int(-s.q)}};
  return variety_from_cone(sigma, s.generators, /*isolated=*/true);
}

// ---------------------------------------------------------------------------
// Riemenschneider quasimatrix
// ---------------------------------------------------------------------------

/// The 2 x (n-1) quasimatrix with top row z_1..z_{n-1}, bottom row
/// z_2..z_n, and connectors z_i^{a_i - 2} between consecutive columns.
struct Quasimatrix {
  int ambient_dim = 0;
  std::vector<int> top;                        // variable indices, 0-based
  std::vector<int> bottom;
  std::vector<std::pair<int, Int>> connectors;  // (variable, exponent)

  size_t quasiminor_count() const {
    size_t c = top.size();
    return c * (c - 1) / 2;
  }
};

inline Quasimatrix quasimatrix(const SurfaceData& s) {
  Quasimatrix m;
  m.ambient_dim = s.ambient_dim;
  if (s.smooth) return m;
  int n = s.ambient_dim;
  for (int i = 0; i + 1 < n; ++i) {
    m.top.push_back(i);
    m.bottom.push_back(i + 1);
  }
  for (size_t i = 0; i < s.hj_digits.size(); ++i)
    m.connectors.emplace_back(static_cast<int>(i) + 1, s.hj_digits[i] - 2);
  return m;
}

/// The defining binomials of the surface: quasiminors
/// z_i z_{j+1} - z_{i+1} (prod_{l=i+1}^{j} z_l^{a_l - 2}) z_j for
/// 1 <= i < j <= n-1. Each vanishes identically under the monomial
/// parametrization z_i = t^{mu_i}. Empty for the smooth case.
inline std::vector<AmbientPoly> quasimatrix_equations(const SurfaceData& s) {
  std::vector<AmbientPoly> eqs;
  if (s.smooth) return eqs;
  int n = s.ambient_dim;
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = i + 1; j + 1 < n; ++j) {
      AmbientPoly b;
      b.nvars = n;
      ExpVec e1(n, 0);
      e1[i] += 1;
      e1[j + 1] += 1;
      b.add_term(e1, Rat(1));
      ExpVec e2(n, 0);
      e2[i + 1] += 1;
      e2[j] += 1;
      for (int lc = i; lc < j; ++lc)  // connectors between columns i .. j
        e2[lc + 1] += Int(s.hj_digits[lc] - 2).get_si();
      b.add_term(e2, Rat(-1));
      eqs.push_back(std::move(b));
    }
  }
  return eqs;
}

// ---------------------------------------------------------------------------
// Orbit decomposition
// ---------------------------------------------------------------------------

struct OrbitDescription {
  int face_id = 0;
  int dim = 0;
  std::vector<int> nonzero_vars;  // ambient coordinates alive on the orbit
  IMat exponents;                 // mu_i columns for those coordinates
};

/// The four orbits of the torus action: the fixed point, the two coordinate
/// curves, and the dense torus, each with the exponent data of its monomial
/// parametrization.
inline std::vector<OrbitDescription> orbit_decomposition(
    const SurfaceData& s, const ToricVarietyData& X) {
  std::vector<OrbitDescription> orbits;
  for (const Face& f : X.faces.faces) {
    OrbitDescription o;
    o.face_id = f.id;
    o.dim = f.dim;
    o.nonzero_vars = f.gen_ids;
    for (int g : f.gen_ids) o.exponents.push_back(s.generators[g]);
    orbits.push_back(std::move(o));
  }
  return orbits;
}

// ---------------------------------------------------------------------------
// Isolated singularities and prepolarity
// ---------------------------------------------------------------------------

namespace detail {

inline bool support_meets_ray(const LatticePolynomial& f, const IVec& ray) {
  for (const auto& [v, c] : f.terms) {
    if (is_zero(v)) continue;
    // v is a positive multiple of the primitive ray vector?
    Int cross = v[0] * ray[1] - v[1] * ray[0];
    if (cross == 0 && dot(v, ray) > 0) return true;
  }
  return false;
}

}  // namespace detail

/// A non-degenerate polynomial function has a stratified isolated
/// singularity at the origin iff its support meets both extreme rays of the
/// dual cone (equivalently: it contains pure powers of z_1 and z_n).
inline bool has_isolated_singularity(const AmbientPoly& g,
                                     const SurfaceData& s) {
  LatticePolynomial gl = to_lattice_polynomial(g, s.generators);
  if (gl.zero()) return false;
  IVec ray1 = iv({1, 0});
  IVec ray2{s.smooth ? Int(0) : s.q, s.smooth ? Int(1) : s.p};
  return detail::support_meets_ray(gl, ray1) &&
         detail::support_meets_ray(gl, ray2);
}

// -- common-component test (bivariate, exact) -------------------------------

namespace detail {

/// f as a polynomial in t2 with QPoly coefficients in t1, after dividing
/// out the common monomial (unit) factor.
inline std::vector<QPoly> bivariate_coeffs(const LatticePolynomial& f) {
  Int min1 = 0, min2 = 0;
  bool first = true;
  for (const auto& [v, c] : f.terms) {
    if (first || v[0] < min1) min1 = v[0];
    if (first || v[1] < min2) min2 = v[1];
    first = false;
  }
  long max2 = 0;
  for (const auto& [v, c] : f.terms)
    max2 = std::max(max2, Int(v[1] - min2).get_si());
  std::vector<QPoly> coeffs(max2 + 1);
  for (const auto& [v, c] : f.terms) {
    long d1 = Int(v[0] - min1).get_si();
    long d2 = Int(v[1] - min2).get_si();
    if (static_cast<long>(coeffs[d2].size()) <= d1)
      coeffs[d2].resize(d1 + 1, Rat(0));
    coeffs[d2][d1] += c;
  }
  for (QPoly& c : coeffs) qpoly_trim(c);
  return coeffs;
}

inline QPoly coeff_content(const std::vector<QPoly>& coeffs) {
  QPoly g;
  for (const QPoly& c : coeffs)
    if (!c.empty()) g = g.empty() ? c : qpoly_gcd(g, c);
  return g;
}

inline QPoly qpoly_divexact(const QPoly& a, const QPoly& b) {
  QPoly r = a, q;
  if (b.empty()) throw Error("Internal", "division by zero polynomial");
  q.resize(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (static_cast<int>(r.size()) >= static_cast<int>(b.size()) &&
         !r.empty()) {
    Rat f = r.back() / b.back();
    size_t shift = r.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    qpoly_trim(r);
  }
  if (!r.empty()) throw Error("Internal", "inexact polynomial division");
  qpoly_trim(q);
  return q;
}

/// Whether Res_{t2}(f, g) vanishes identically, by evaluating the Sylvester
/// determinant at enough rational points of t1.
inline bool resultant_identically_zero(const std::vector<QPoly>& fc,
                                       const std::vector<QPoly>& gc) {
  long df = static_cast<long>(fc.size()) - 1;
  long dg = static_cast<long>(gc.size()) - 1;
  long bound = 0;
  for (const QPoly& c : fc) bound = std::max(bound, long(c.size()));
  long mf = bound;
  bound = 0;
  for (const QPoly& c : gc) bound = std::max(bound, long(c.size()));
  long mg = bound;
  long samples = dg * mf + df * mg + 2;
  for (long a = 1; a <= samples; ++a) {
    Rat x(a);
    size_t n = df + dg;
    QMat m(n, QVec(n, Rat(0)));
    for (long row = 0; row < dg; ++row)
      for (long j = 0; j <= df; ++j)
        m[row][row + j] = qpoly_eval(fc[df - j], x);
    for (long row = 0; row < df; ++row)
      for (long j = 0; j <= dg; ++j)
        m[dg + row][row + j] = qpoly_eval(gc[dg - j], x);
    if (qmat_det(m) != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Whether the zero sets of f and g share an irreducible component on the
/// surface: a common factor of the Laurent restrictions on the dense torus,
/// or a coordinate curve on which both vanish identically.
inline bool common_component(const LatticePolynomial& f,
                             const LatticePolynomial& g,
                             const SurfaceData& s) {
  if (f.zero() || g.zero()) return true;
  IVec ray1 = iv({1, 0});
  IVec ray2{s.smooth ? Int(0) : s.q, s.smooth ? Int(1) : s.p};
  // a 1-dimensional orbit contained in both zero sets
  for (const IVec& ray : {ray1, ray2})
    if (!detail::support_meets_ray(f, ray) &&
        !detail::support_meets_ray(g, ray))
      return true;

  std::vector<QPoly> fc = detail::bivariate_coeffs(f);
  std::vector<QPoly> gc = detail::bivariate_coeffs(g);
  QPoly contf = detail::coeff_content(fc);
  QPoly contg = detail::coeff_content(gc);
  QPoly cgcd = qpoly_gcd(contf, contg);
  if (qpoly_deg(cgcd) >= 1) return true;
  std::vector<QPoly> fpp, gpp;
  for (const QPoly& c : fc) fpp.push_back(c.empty() ? c : detail::qpoly_divexact(c, contf));
  for (const QPoly& c : gc) gpp.push_back(c.empty() ? c : detail::qpoly_divexact(c, contg));
  while (!fpp.empty() && fpp.back().empty()) fpp.pop_back();
  while (!gpp.empty() && gpp.back().empty()) gpp.pop_back();
  if (fpp.size() <= 1 || gpp.size() <= 1) return false;  // no common t2-factor
  return detail::resultant_identically_zero(fpp, gpp);
}

struct PrepolarResult {
  bool prepolar = false;
  std::string reason;
};

/// Surface criterion: g is prepolar with respect to the good stratification
/// induced by f iff g has pure powers of z_1 and z_n (stratified isolated
/// singularity) and f, g share no irreducible component.
inline PrepolarResult is_prepolar(const AmbientPoly& g, const AmbientPoly& f,
                                  const SurfaceData& s) {
  PrepolarResult r;
  LatticePolynomial gl = to_lattice_polynomial(g, s.generators);
  LatticePolynomial fl = to_lattice_polynomial(f, s.generators);
  if (common_component(gl, fl, s)) {
    r.reason = "CommonComponent";
    return r;
  }
  if (!has_isolated_singularity(g, s)) {
    r.reason = "NoIsolatedSingularity";
    return r;
  }
  r.prepolar = true;
  r.reason = "ok";
  return r;
}

}  // namespace toricinv
