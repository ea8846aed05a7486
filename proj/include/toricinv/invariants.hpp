#pragma once

// The numerical invariants: Brasselet numbers (hypersurface, complete
// intersection, and prepolar variants), the local Euler obstruction via
// generic linear forms, Euler obstruction of a function, stratified Morse
// counts, GSV index, Newton-polygon Milnor numbers, the Bruce–Roberts
// number, and family-constancy reports.

#include "toricinv/newton.hpp"

namespace toricinv {

// ---------------------------------------------------------------------------
// Euler tables and reports
// ---------------------------------------------------------------------------

/// Local Euler obstruction values along the orbit strata, indexed by face
/// id. The dense orbit always carries the value 1.
struct EulerTable {
  std::map<int, Int> values;
  std::optional<Int> origin_value;

  static EulerTable ones(const ToricVarietyData& X) {
    EulerTable t;
    for (const Face& f : X.faces.faces)
      if (f.dim >= 1) t.values[f.id] = 1;
    return t;
  }

  const Int& at(int face_id, const ToricVarietyData& X) const {
    auto it = values.find(face_id);
    if (it == values.end())
      throw Error("EulerTableIncomplete",
                  "no Euler obstruction value for face " +
                      std::to_string(face_id));
    if (face_id == X.faces.full_face().id && it->second != 1)
      throw Error("EulerTableInvalid", "dense orbit must carry the value 1");
    return it->second;
  }
};

struct FaceTerm {
  int face_id = 0;
  int dim = 0;
  int m = 1;
  int sign = 1;            // (-1)^(dim - m)
  Int volume_sum = 0;      // sum over facets of the face's volume data
  Int eu = 1;
  Int contribution = 0;    // sign * volume_sum * eu
};

struct InvariantReport {
  std::vector<FaceTerm> terms;
  std::vector<int> skipped_faces;  // faces with dim < m (contribute nothing)
  Int total = 0;
  VolumeConvention mode = VolumeConvention::PaperExample;
  std::vector<std::string> assumptions;

  void add(FaceTerm t) {
    total += t.contribution;
    terms.push_back(std::move(t));
  }
};

// ---------------------------------------------------------------------------
// Brasselet numbers
// ---------------------------------------------------------------------------

/// B_{f,X}(0) for a non-degenerate polynomial function: the alternating sum
/// over faces meeting the Newton polygon of the normalized volumes of
/// conv(beta_i, 0), weighted by the Euler obstruction of the orbit.
inline InvariantReport brasselet_hypersurface(const ToricVarietyData& X,
                                              const LatticePolynomial& f,
                                              const EulerTable& eu,
                                              VolumeConvention mode) {
  if (f.zero()) throw Error("ZeroPolynomial", "zero function");
  if (f.origin_in_support())
    throw Error("OriginInSupport", "function does not vanish at the origin");
  InvariantReport rep;
  rep.mode = mode;
  for (const Face& delta : X.faces.faces) {
    if (delta.dim < 1) continue;
    IMat s = detail::support_on_face(f, delta, X.faces);
    if (s.empty()) continue;
    NewtonPolyhedron p = newton_polyhedron(s, delta, X.faces);
    CompactFaceSet cf = compact_faces(p, delta.dim - 1);
    Int vol_sum = 0;
    if (!cf.degenerate) {
      for (const CompactFace& beta : cf.faces) {
        IMat pts = beta.vertices;
        pts.push_back(IVec(X.d, 0));
        LatticePolytope gamma_i{pts, delta.gen_lattice};
        vol_sum += normalized_volume(gamma_i, delta.dim);
      }
    }
    FaceTerm t;
    t.face_id = delta.id;
    t.dim = delta.dim;
    t.m = 1;
    t.sign = (delta.dim - 1) % 2 == 0 ? 1 : -1;
    t.volume_sum = vol_sum;
    t.eu = eu.at(delta.id, X);
    t.contribution = Int(t.sign) * t.volume_sum * t.eu;
    rep.add(std::move(t));
  }
  return rep;
}

/// B_{f,X^g}(0) for a non-degenerate complete intersection (g, f) whose
/// orbit decomposition of X^g is a Whitney stratification. eu carries the
/// Euler obstruction of X^g along the strata T_Δ ∩ X^g.
inline InvariantReport brasselet_ci(const ToricVarietyData& X,
                                    const CompleteIntersectionData& ci,
                                    const EulerTable& eu,
                                    VolumeConvention mode) {
  if (ci.k() < 1) throw Error("BadInput", "empty tuple");
  for (const LatticePolynomial& c : ci.components) {
    if (c.zero()) throw Error("ZeroPolynomial", "zero component");
    if (c.origin_in_support())
      throw Error("OriginInSupport", "component does not vanish at the origin");
  }
  if (ci.k() > 1 && !ci.whitney_assertion)
    throw Error("WhitneyNotAsserted",
                "the orbit decomposition of X^g must be asserted Whitney");
  InvariantReport rep;
  rep.mode = mode;
  if (ci.k() > 1)
    rep.assumptions.push_back("whitney: asserted for the orbit decomposition of X^g");
  for (const Face& delta : X.faces.faces) {
    if (delta.dim < 1) continue;
    if (detail::support_on_face(ci.fk(), delta, X.faces).empty()) continue;
    FaceInvariantData fid = face_invariant_data(X, ci, delta, mode);
    if (fid.dim_too_small) {
      rep.skipped_faces.push_back(delta.id);
      continue;
    }
    Int vol_sum = 0;
    for (const FacetInvariants& fi : fid.facets) vol_sum += fi.d * fi.K;
    FaceTerm t;
    t.face_id = delta.id;
    t.dim = delta.dim;
    t.m = fid.m;
    t.sign = (delta.dim - fid.m) % 2 == 0 ? 1 : -1;
    t.volume_sum = vol_sum;
    t.eu = eu.at(delta.id, X);
    t.contribution = Int(t.sign) * t.volume_sum * t.eu;
    rep.add(std::move(t));
  }
  return rep;
}

/// Prepolar variant for k = 2: the same d_i K_i data but weighted by the
/// Euler obstruction of X itself, with faces of dimension >= 2 and m = 2
/// forced by prepolarity of g. `prepolar_verified` records whether a
/// surface-level check ran (std::nullopt = asserted only).
inline InvariantReport brasselet_ci_prepolar(
    const ToricVarietyData& X, const CompleteIntersectionData& ci,
    const EulerTable& eu_on_x, VolumeConvention mode,
    std::optional<bool> prepolar_verified = std::nullopt) {
  if (ci.k() != 2)
    throw Error("BadInput", "prepolar variant needs exactly (g, f)");
  if (prepolar_verified.has_value() && !*prepolar_verified)
    throw Error("NotPrepolar", "g is not prepolar with respect to f");
  for (const LatticePolynomial& c : ci.components) {
    if (c.zero()) throw Error("ZeroPolynomial", "zero component");
    if (c.origin_in_support())
      throw Error("OriginInSupport", "component does not vanish at the origin");
  }
  InvariantReport rep;
  rep.mode = mode;
  rep.assumptions.push_back(prepolar_verified.has_value()
                                ? "prepolar: verified (surface criterion)"
                                : "prepolar: asserted");
  // Necessary condition for prepolarity: g must meet every positive-
  // dimensional face, else it vanishes identically on that orbit stratum
  // and its stratified critical locus is positive-dimensional.
  for (const Face& delta : X.faces.faces)
    if (delta.dim >= 1 &&
        detail::support_on_face(ci.components[0], delta, X.faces).empty())
      throw Error("NotPrepolar",
                  "g vanishes identically on the stratum of face " +
                      std::to_string(delta.id));
  for (const Face& delta : X.faces.faces) {
    if (delta.dim < 2) {
      if (delta.dim == 1 &&
          !detail::support_on_face(ci.fk(), delta, X.faces).empty())
        rep.skipped_faces.push_back(delta.id);
      continue;
    }
    if (detail::support_on_face(ci.fk(), delta, X.faces).empty()) continue;
    FaceInvariantData fid = face_invariant_data(X, ci, delta, mode);
    if (fid.m != 2)
      throw Error("NotPrepolar",
                  "g misses face " + std::to_string(delta.id) +
                      " so the prepolar sum does not apply");
    Int vol_sum = 0;
    for (const FacetInvariants& fi : fid.facets) vol_sum += fi.d * fi.K;
    FaceTerm t;
    t.face_id = delta.id;
    t.dim = delta.dim;
    t.m = 2;
    t.sign = delta.dim % 2 == 0 ? 1 : -1;  // (-1)^(dim - 2)
    t.volume_sum = vol_sum;
    t.eu = eu_on_x.at(delta.id, X);
    t.contribution = Int(t.sign) * t.volume_sum * t.eu;
    rep.add(std::move(t));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Euler obstructions
// ---------------------------------------------------------------------------

/// Eu_{f,X}(0) = Eu_X(0) - B_{f,X}(0) for f with a stratified isolated
/// critical point at the origin.
inline Int euler_obstruction_of_function(const Int& eu_origin,
                                         const InvariantReport& b) {
  return eu_origin - b.total;
}

struct EuOriginResult {
  Int value = 0;
  uint64_t seed = 0;
  std::vector<std::string> certificate;  // the three agreeing runs
};

namespace detail {

inline LatticePolynomial generic_linear_form(const ToricVarietyData& X,
                                             SplitMix64* rng) {
  LatticePolynomial l;
  for (const IVec& g : X.generators)
    l.add_term(g, Rat(rng ? rng->nonzero(99) : 1));
  if (l.terms.size() != X.generators.size())
    throw Error("GenericityFailure", "generator collision in the linear form");
  return l;
}

}  // namespace detail

/// Eu_X(0) computed as B_{L,X}(0) for a generic linear form L through the
/// semigroup embedding. Two independent random coefficient draws and a
/// coefficient-free run over the full generator support must agree; the
/// agreed value is returned.
inline EuOriginResult euler_obstruction_origin(const ToricVarietyData& X,
                                               const EulerTable& eu_positive,
                                               uint64_t seed) {
  EuOriginResult res;
  res.seed = seed;
  std::vector<Int> vals;
  for (int run = 0; run < 3; ++run) {
    SplitMix64 rng(derive_seed(seed, 0xe0, run));
    LatticePolynomial l =
        detail::generic_linear_form(X, run < 2 ? &rng : nullptr);
    InvariantReport b = brasselet_hypersurface(X, l, eu_positive,
                                               VolumeConvention::Strict);
    vals.push_back(b.total);
    res.certificate.push_back(
        std::string(run < 2 ? "random draw " + std::to_string(run + 1)
                            : "full-support run") +
        ": B_L = " + to_string(b.total));
  }
  if (vals[0] != vals[1] || vals[1] != vals[2])
    throw Error("GenericityFailure",
                "draws disagree: " + to_string(vals[0]) + " vs " +
                    to_string(vals[1]) + " vs " + to_string(vals[2]));
  res.value = vals[0];
  return res;
}

// ---------------------------------------------------------------------------
// Morse counts, GSV, Milnor, Bruce-Roberts
// ---------------------------------------------------------------------------

struct MorseResult {
  Int count = 0;
  bool negative_warning = false;  // an assumption must have failed
};

/// Number of stratified Morse critical points on the top stratum from the
/// Lê-Greuel formula: n = (-1)^(d-1) (B_{f,X}(0) - B_{f,X^g}(0)).
inline MorseResult morse_number(const InvariantReport& b_on_x,
                                const InvariantReport& b_on_xg, int d) {
  MorseResult r;
  Int diff = b_on_x.total - b_on_xg.total;
  r.count = (d - 1) % 2 == 0 ? diff : Int(-diff);
  r.negative_warning = r.count < 0;
  return r;
}

struct GsvResult {
  Int value = 0;
  InvariantReport on_x;
  InvariantReport on_xg;
};

/// GSV index of g relative to f: the difference of the two Brasselet-type
/// sums evaluated with the constant constructible function 1.
inline GsvResult gsv_index(const ToricVarietyData& X,
                           const CompleteIntersectionData& ci,
                           VolumeConvention mode,
                           std::optional<bool> prepolar_verified = std::nullopt) {
  if (ci.k() != 2) throw Error("BadInput", "gsv_index needs (g, f)");
  GsvResult r;
  EulerTable ones = EulerTable::ones(X);
  r.on_x = brasselet_hypersurface(X, ci.fk(), ones, mode);
  r.on_xg = brasselet_ci_prepolar(X, ci, ones, mode, prepolar_verified);
  r.value = r.on_x.total - r.on_xg.total;
  return r;
}

struct MilnorResult {
  Int mu = 0;
  Int chi = 0;  // Euler characteristic of the Milnor fiber
  InvariantReport report;
};

/// Newton-polygon Milnor number on C^n:
/// chi(F) = 1 + (-1)^(n-1) mu, with chi computed from the hypersurface sum.
inline MilnorResult milnor_number(const ToricVarietyData& X,
                                  const LatticePolynomial& f) {
  MilnorResult r;
  r.report = brasselet_hypersurface(X, f, EulerTable::ones(X),
                                    VolumeConvention::Strict);
  r.chi = r.report.total;
  Int delta = r.chi - 1;
  r.mu = (X.d - 1) % 2 == 0 ? delta : Int(-delta);
  return r;
}

struct BruceRobertsResult {
  Int mu_br = 0;
  Int mu_f = 0;
  Int eu_xg = 0;
  Int eu_f_xg = 0;
  std::vector<std::string> assumptions;
};

/// Bruce-Roberts number of f relative to the hypersurface X^g in C^n,
/// assembled as mu(f) + Eu_{X^g}(0) + (-1)^(n-1) (Eu_{f,X^g}(0) + 1). The
/// weighted-homogeneity and isolated-singularity hypotheses are echoed, not
/// verified. Uses the standard mixed-volume convention throughout.
inline BruceRobertsResult bruce_roberts(const ToricVarietyData& X,
                                        const LatticePolynomial& f,
                                        const LatticePolynomial& g,
                                        uint64_t seed) {
  BruceRobertsResult r;
  r.assumptions.push_back(
      "X^g weighted-homogeneous with isolated singularity: asserted");
  r.assumptions.push_back("f isolated on C^n and on X^g: asserted");
  r.mu_f = milnor_number(X, f).mu;

  EulerTable ones = EulerTable::ones(X);
  std::vector<Int> eu_vals;
  for (int run = 0; run < 3; ++run) {
    SplitMix64 rng(derive_seed(seed, 0xb0, run));
    LatticePolynomial l =
        detail::generic_linear_form(X, run < 2 ? &rng : nullptr);
    CompleteIntersectionData gl;
    gl.components = {g, l};
    gl.whitney_assertion = true;
    eu_vals.push_back(
        brasselet_ci(X, gl, ones, VolumeConvention::Strict).total);
  }
  if (eu_vals[0] != eu_vals[1] || eu_vals[1] != eu_vals[2])
    throw Error("GenericityFailure", "Eu_{X^g} draws disagree");
  r.eu_xg = eu_vals[0];

  CompleteIntersectionData gf;
  gf.components = {g, f};
  gf.whitney_assertion = true;
  Int b_f_xg = brasselet_ci(X, gf, ones, VolumeConvention::Strict).total;
  r.eu_f_xg = r.eu_xg - b_f_xg;

  Int tail = r.eu_f_xg + 1;
  r.mu_br = r.mu_f + r.eu_xg + ((X.d - 1) % 2 == 0 ? tail : Int(-tail));
  return r;
}

// ---------------------------------------------------------------------------
// Family constancy
// ---------------------------------------------------------------------------

struct FamilySample {
  Rat s;  // parameter of the g deformations
  Rat t;  // parameter of the f deformations
  Int b_x = 0;
  std::optional<Int> b_xg;
  std::optional<Int> morse;
  std::optional<Int> gsv;
  Int eu_f = 0;
};

struct FamilyReport {
  std::vector<FamilySample> samples;
  bool constant = false;
  Int eu_origin = 0;
  std::vector<std::string> checks;
  VolumeConvention mode = VolumeConvention::PaperExample;
};

/// One deformation term theta(s,t) * h with theta = s^{s_exp} t^{t_exp}.
struct Deformation {
  LatticePolynomial h;
  long s_exp = 0;
  long t_exp = 1;
  std::string label;
};

inline LatticePolynomial deformed(const LatticePolynomial& base,
                                  const std::vector<Deformation>& defs,
                                  const Rat& s, const Rat& t) {
  LatticePolynomial out = base;
  for (const Deformation& d : defs) {
    Rat theta = rat_pow(s, d.s_exp) * rat_pow(t, d.t_exp);
    for (const auto& [p, c] : d.h.terms) out.add_term(p, theta * c);
  }
  return out;
}

/// Evaluates B, Eu_f, the Morse count, and the GSV index across exact
/// parameter samples of the deformation family and asserts the values are
/// identical. Every deformation must pass newton_preserving_check first;
/// a failing one raises ConditionViolated, differing samples NotConstant.
inline FamilyReport family_constancy_report(
    const ToricVarietyData& X, const LatticePolynomial& f,
    const std::optional<LatticePolynomial>& g,
    const std::vector<Deformation>& f_deformations,
    const std::vector<Deformation>& g_deformations,
    const std::vector<std::pair<Rat, Rat>>& samples, VolumeConvention mode,
    uint64_t seed) {
  FamilyReport rep;
  rep.mode = mode;
  for (size_t i = 0; i < f_deformations.size(); ++i) {
    const std::string& name = f_deformations[i].label;
    if (!newton_preserving_check(f, f_deformations[i].h, X).ok)
      throw Error("ConditionViolated",
                  "deformation " + name +
                      " does not preserve the Newton polygon of f");
    rep.checks.push_back(name + ": Newton polygon of f preserved");
  }
  if (!g_deformations.empty() && !g)
    throw Error("BadInput", "g deformations without g");
  if (g)
    for (size_t i = 0; i < g_deformations.size(); ++i) {
      const std::string& name = g_deformations[i].label;
      if (!newton_preserving_check(*g, g_deformations[i].h, X).ok)
        throw Error("ConditionViolated",
                    "deformation " + name +
                        " does not preserve the Newton polygon of g");
      rep.checks.push_back(name + ": Newton polygon of g preserved");
    }

  EulerTable ones = EulerTable::ones(X);
  rep.eu_origin = euler_obstruction_origin(X, ones, seed).value;

  for (const auto& [s, t] : samples) {
    FamilySample sample;
    sample.s = s;
    sample.t = t;
    LatticePolynomial ft = deformed(f, f_deformations, s, t);
    if (ft.zero())
      throw Error("NotConstant", "f vanishes at sample t=" + to_string(t));
    InvariantReport bx = brasselet_hypersurface(X, ft, ones, mode);
    sample.b_x = bx.total;
    sample.eu_f = rep.eu_origin - bx.total;
    if (g) {
      LatticePolynomial gs = deformed(*g, g_deformations, s, t);
      if (gs.zero())
        throw Error("NotConstant", "g vanishes at sample s=" + to_string(s));
      CompleteIntersectionData ci;
      ci.components = {gs, ft};
      ci.whitney_assertion = true;
      InvariantReport bxg = brasselet_ci_prepolar(X, ci, ones, mode);
      sample.b_xg = bxg.total;
      MorseResult n = morse_number(bx, bxg, X.d);
      sample.morse = n.count;
      sample.gsv = bx.total - bxg.total;
    }
    rep.samples.push_back(std::move(sample));
  }

  for (size_t i = 1; i < rep.samples.size(); ++i) {
    const FamilySample& a = rep.samples[0];
    const FamilySample& b = rep.samples[i];
    if (a.b_x != b.b_x || a.b_xg != b.b_xg || a.morse != b.morse ||
        a.gsv != b.gsv || a.eu_f != b.eu_f)
      throw Error("NotConstant",
                  "samples (s,t)=(" + to_string(a.s) + "," + to_string(a.t) +
                      ") and (" + to_string(b.s) + "," + to_string(b.t) +
                      ") disagree");
  }
  rep.constant = true;
  return rep;
}

}  // namespace toricinv
