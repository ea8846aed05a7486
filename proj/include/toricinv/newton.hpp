#pragma once

// Per-face assembly of the invariant data the main formulas consume: the
// index set I(Δ), m(Δ), the product polygon with its compact facets and
// primitive normals, supporting faces of each component, and the
// coefficients d_i, K_i. Also the Newton-polygon-preserving deformation
// check and the probabilistic non-degeneracy heuristic.

#include <sstream>

#include "toricinv/polyq.hpp"
#include "toricinv/rng.hpp"
#include "toricinv/volume.hpp"

namespace toricinv {

// ---------------------------------------------------------------------------
// Variety and polynomial data
// ---------------------------------------------------------------------------

/// An affine toric variety: the cone, its dual, the semigroup generators
/// (coordinate i of the ambient embedding corresponds to generator i), and
/// the face lattice of the dual cone.
struct ToricVarietyData {
  int d = 0;
  Cone sigma;
  Cone sigma_dual;
  IMat generators;
  FaceLattice faces;
  bool isolated_singularity = false;  // all positive-dimensional orbits smooth
};

inline ToricVarietyData variety_from_cone(const Cone& sigma,
                                          const IMat& generators,
                                          bool isolated = false) {
  ToricVarietyData x;
  x.d = sigma.ambient_rank;
  x.sigma = make_cone(x.d, sigma.rays);
  x.sigma_dual = dual_cone(x.sigma);
  x.generators = generators;
  for (const IVec& g : generators)
    if (is_zero(g))
      throw Error("BadInput", "zero semigroup generator");
  if (rank_int(generators) != x.d)
    throw Error("GeneratorsRankDeficient",
                "semigroup generators do not span the character lattice");
  x.faces = face_lattice(x.sigma_dual, generators);
  for (const IVec& g : generators)
    if (!x.faces.in_dual_cone(g))
      throw Error("GeneratorOutsideDualCone",
                  "generator " + to_string(g) + " outside the dual cone");
  x.isolated_singularity = isolated;
  return x;
}

/// The smooth variety C^n (orthant cone, standard generators).
inline ToricVarietyData variety_orthant(int n) {
  IMat rays(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) rays[i][i] = 1;
  return variety_from_cone(Cone{n, rays}, rays, /*isolated=*/true);
}

/// A polynomial function on the variety: a finite map from lattice points of
/// the semigroup to nonzero rational coefficients.
struct LatticePolynomial {
  std::map<LatticePoint, Rat> terms;

  void add_term(const LatticePoint& p, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
      terms.emplace(p, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  bool zero() const { return terms.empty(); }

  IMat support() const {
    IMat s;
    s.reserve(terms.size());
    for (const auto& [p, c] : terms) s.push_back(p);
    return s;
  }

  bool origin_in_support() const {
    for (const auto& [p, c] : terms)
      if (is_zero(p)) return true;
    return false;
  }
};

inline LatticePolynomial lattice_poly(
    std::initializer_list<std::pair<IVec, long>> ts) {
  LatticePolynomial f;
  for (const auto& [p, c] : ts) f.add_term(p, Rat(c));
  return f;
}

/// Components (f_1, ..., f_k); the last one is "the function", the first
/// k-1 cut out the ambient complete intersection.
struct CompleteIntersectionData {
  std::vector<LatticePolynomial> components;
  bool whitney_assertion = false;

  int k() const { return static_cast<int>(components.size()); }
  const LatticePolynomial& fk() const { return components.back(); }
};

// ---------------------------------------------------------------------------
// Per-face invariant data
// ---------------------------------------------------------------------------

/// One compact facet of the product polygon on a face, with everything the
/// formulas need: the primitive normal, supporting faces of each component,
/// and the coefficients d_i and K_i.
struct FacetInvariants {
  CompactFace gamma;                       // gamma_i with normal u_i
  std::map<int, IMat> supporting_ambient;  // component -> face vertex set
  Int d = 0;
  Int K = 0;
  bool k_flagged = false;
};

struct FaceInvariantData {
  int face_id = 0;
  int face_dim = 0;
  std::vector<int> I_set;  // 0-based component indices j < k-1 meeting Δ
  int m = 1;
  bool dim_too_small = false;  // dim Δ < m(Δ): face contributes 0
  bool degenerate_facets = false;
  std::vector<FacetInvariants> facets;
};

namespace detail {

inline IMat support_on_face(const LatticePolynomial& f, const Face& delta,
                            const FaceLattice& fl) {
  IMat s;
  for (const auto& [p, c] : f.terms)
    if (fl.member(p, delta)) s.push_back(p);
  return s;
}

/// Reference lattice for the mixed volumes on a facet with local normal u:
/// the saturated kernel of u inside M(S ∩ Δ), lifted to ambient rows.
inline SublatticeBasis facet_direction_lattice(const Face& delta,
                                               const IVec& u_local) {
  IMat rows = kernel_int({u_local}, delta.gen_lattice.rank);
  IMat ambient_rows;
  for (const IVec& r : rows)
    ambient_rows.push_back(lift_from_basis(r, delta.gen_lattice));
  if (ambient_rows.empty()) return trivial_sublattice(delta.gen_lattice.ambient_rank);
  return sublattice_basis(ambient_rows);
}

}  // namespace detail

/// Assembles I(Δ), m(Δ), the product polygon's compact facets with their
/// normals, supporting faces, and the coefficients d_i, K_i for one face.
/// Throws FaceMissesNewtonPolygon when the function's support misses Δ.
inline FaceInvariantData face_invariant_data(const ToricVarietyData& X,
                                             const CompleteIntersectionData& ci,
                                             const Face& delta,
                                             VolumeConvention mode) {
  const int k = ci.k();
  for (const LatticePolynomial& f : ci.components)
    if (f.zero()) throw Error("ZeroPolynomial", "zero component in the tuple");

  FaceInvariantData out;
  out.face_id = delta.id;
  out.face_dim = delta.dim;

  IMat sk = detail::support_on_face(ci.fk(), delta, X.faces);
  if (sk.empty())
    throw Error("FaceMissesNewtonPolygon",
                "support of the function misses the face");

  std::map<int, IMat> supports;  // component -> support on Δ
  supports[k - 1] = sk;
  for (int j = 0; j + 1 < k; ++j) {
    IMat s = detail::support_on_face(ci.components[j], delta, X.faces);
    if (!s.empty()) {
      out.I_set.push_back(j);
      supports[j] = std::move(s);
    }
  }
  out.m = static_cast<int>(out.I_set.size()) + 1;
  if (delta.dim < out.m) {
    out.dim_too_small = true;
    return out;
  }

  std::vector<int> members = out.I_set;
  members.push_back(k - 1);
  std::map<int, NewtonPolyhedron> restricted;
  std::vector<NewtonPolyhedron> factors;
  for (int j : members) {
    restricted.emplace(j, newton_polyhedron(supports[j], delta, X.faces));
    factors.push_back(restricted.at(j));
  }
  NewtonPolyhedron product = minkowski_sum(factors, X.faces);

  CompactFaceSet cf = compact_faces(product, delta.dim - 1);
  if (cf.degenerate) {
    out.degenerate_facets = true;
    return out;
  }
  for (const CompactFace& gamma : cf.faces) {
    FacetInvariants fi;
    fi.gamma = gamma;
    const IVec& u = *gamma.normal_local;
    IMat mink_check = {IVec(X.d, 0)};
    std::vector<LatticePolytope> gammas_ordered;
    SublatticeBasis dir = detail::facet_direction_lattice(delta, u);
    for (int j : members) {
      auto [ids, min_val] = supporting_face_local(restricted.at(j), u);
      IMat verts;
      for (int i : ids)
        verts.push_back(restricted.at(j).to_ambient(restricted.at(j).local.verts[i]));
      std::sort(verts.begin(), verts.end());
      fi.supporting_ambient[j] = verts;
      gammas_ordered.push_back(LatticePolytope{verts, dir});
      IMat next;
      for (const IVec& a : mink_check)
        for (const IVec& v : verts) next.push_back(vec_add(a, v));
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      mink_check = std::move(next);
      if (j == k - 1) fi.d = min_val;
    }
    // Minkowski decomposition of the facet: every vertex of gamma_i must be
    // a sum of supporting-face points (the reverse containment is automatic
    // since the sums lie on the minimizing face).
    for (const IVec& v : gamma.vertices)
      if (!std::binary_search(mink_check.begin(), mink_check.end(), v))
        throw Error("Internal", "facet Minkowski decomposition failed");
    KResult kr = k_coefficient(delta.dim, out.m, gammas_ordered, mode);
    fi.K = kr.value;
    fi.k_flagged = kr.no_admissible;
    out.facets.push_back(std::move(fi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Newton-polygon-preserving deformations
// ---------------------------------------------------------------------------

struct NewtonPreservingReport {
  bool ok = false;
  std::vector<std::string> details;
};

/// True when the deformation term h keeps the Newton polygon of f intact:
/// Γ₊(h) ⊆ Γ₊(f) and on every face the top-dimensional compact faces of the
/// two restricted polygons are disjoint. When true, Γ₊(f + c·h) = Γ₊(f)
/// (verified on the support union).
inline NewtonPreservingReport newton_preserving_check(
    const LatticePolynomial& f, const LatticePolynomial& h,
    const ToricVarietyData& X) {
  NewtonPreservingReport rep;
  if (f.zero() || h.zero()) throw Error("ZeroPolynomial", "zero polynomial");
  const Face& full = X.faces.full_face();
  NewtonPolyhedron pf = newton_polyhedron(f.support(), full, X.faces);
  for (const auto& [p, c] : h.terms) {
    if (!X.faces.in_dual_cone(p))
      throw Error("SupportOutsideCone", "deformation support outside the cone");
    if (!pf.local.contains(express_in_basis(p, full.gen_lattice))) {
      rep.details.push_back("containment fails at " + to_string(p));
      return rep;
    }
  }
  rep.details.push_back("containment: ok");

  for (const Face& delta : X.faces.faces) {
    if (delta.dim < 1) continue;
    IMat sh = detail::support_on_face(h, delta, X.faces);
    if (sh.empty()) continue;
    IMat sf = detail::support_on_face(f, delta, X.faces);
    if (sf.empty()) {
      rep.details.push_back("face " + std::to_string(delta.id) +
                            ": deformation meets a face the base misses");
      return rep;
    }
    NewtonPolyhedron ph_d = newton_polyhedron(sh, delta, X.faces);
    NewtonPolyhedron pf_d = newton_polyhedron(sf, delta, X.faces);
    CompactFaceSet ch = compact_faces(ph_d, delta.dim - 1);
    CompactFaceSet cfd = compact_faces(pf_d, delta.dim - 1);
    if (ch.degenerate || cfd.degenerate)
      continue;  // one side has no top-dimensional compact faces
    for (const CompactFace& gamma : ch.faces) {
      for (const CompactFace& beta : cfd.faces) {
        const IVec& ub = *beta.normal_local;
        Int best;
        bool first = true;
        for (int vid : gamma.local_vert_ids) {
          Int val = dot(ub, ph_d.local.verts[vid]);
          if (first || val < best) best = val;
          first = false;
        }
        if (best == beta.min_value) {
          rep.details.push_back(
              "face " + std::to_string(delta.id) +
              ": compact faces of the two polygons intersect");
          return rep;
        }
      }
    }
  }
  rep.details.push_back("top-dimensional compact faces disjoint on every face");

  IMat uni = f.support();
  for (const auto& [p, c] : h.terms) uni.push_back(p);
  NewtonPolyhedron pu = newton_polyhedron(uni, full, X.faces);
  if (pu.vertices != pf.vertices)
    throw Error("Internal", "support-union polygon changed despite checks");
  rep.details.push_back("support-union polygon unchanged");
  rep.ok = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Non-degeneracy heuristic
// ---------------------------------------------------------------------------

struct DegenerateWitness {
  int face_id = 0;
  IVec u_local;
  QVec point;     // torus point in face coordinates
  std::string subsystem;
};

struct HeuristicVerdict {
  bool witness_found = false;
  DegenerateWitness witness;
  uint64_t seed = 0;
  int trials = 0;

  std::string summary() const {
    if (!witness_found) return "NoWitnessFound";
    return "DegenerateWitness(face=" + std::to_string(witness.face_id) + ")";
  }
};

namespace detail {

struct LaurentTerm {
  IVec exp;  // local exponents, possibly negative after no shift (kept raw)
  Rat coeff;
};
using LaurentPoly = std::vector<LaurentTerm>;

inline Rat laurent_eval(const LaurentPoly& f, const QVec& x) {
  Rat v = 0;
  for (const LaurentTerm& t : f) {
    Rat m = t.coeff;
    for (size_t i = 0; i < x.size(); ++i) {
      long e = t.exp[i].get_si();
      if (e) m *= rat_pow(x[i], e);
    }
    v += m;
  }
  return v;
}

inline Rat laurent_partial(const LaurentPoly& f, const QVec& x, size_t var) {
  Rat v = 0;
  for (const LaurentTerm& t : f) {
    if (t.exp[var] == 0) continue;
    Rat m = t.coeff * Rat(t.exp[var]);
    for (size_t i = 0; i < x.size(); ++i) {
      long e = t.exp[i].get_si() - (i == var ? 1 : 0);
      if (e) m *= rat_pow(x[i], e);
    }
    v += m;
  }
  return v;
}

/// Restriction of a Laurent polynomial to a line { x_var = T, others fixed },
/// as a univariate polynomial (exponents shifted to be nonnegative).
inline QPoly laurent_restrict(const LaurentPoly& f, const QVec& fixed,
                              size_t var) {
  Int min_e = 0;
  bool first = true;
  for (const LaurentTerm& t : f) {
    if (first || t.exp[var] < min_e) min_e = t.exp[var];
    first = false;
  }
  QPoly p;
  for (const LaurentTerm& t : f) {
    Rat c = t.coeff;
    for (size_t i = 0; i < fixed.size(); ++i) {
      if (i == var) continue;
      long e = t.exp[i].get_si();
      if (e) c *= rat_pow(fixed[i], e);
    }
    size_t deg = static_cast<size_t>(Int(t.exp[var] - min_e).get_si());
    if (p.size() <= deg) p.resize(deg + 1, Rat(0));
    p[deg] += c;
  }
  qpoly_trim(p);
  return p;
}

inline int jacobian_rank(const std::vector<LaurentPoly>& sys, const QVec& x) {
  QMat jac;
  for (const LaurentPoly& f : sys) {
    QVec row;
    for (size_t v = 0; v < x.size(); ++v) row.push_back(laurent_partial(f, x, v));
    jac.push_back(std::move(row));
  }
  return rank_rat(jac);
}

}  // namespace detail

/// Random search for a witness of degeneracy: for every face and every
/// compact face of the product polygon, restricts the u-part system to
/// random rational lines on the torus, extracts exact rational roots, and
/// tests the Jacobian rank at every common zero found. NoWitnessFound is a
/// probabilistic verdict, not a certificate.
inline HeuristicVerdict nondegeneracy_heuristic(
    const ToricVarietyData& X, const CompleteIntersectionData& ci, int trials,
    uint64_t seed) {
  if (trials < 1) throw Error("BadInput", "trials must be >= 1");
  HeuristicVerdict verdict;
  verdict.seed = seed;
  verdict.trials = trials;
  const int k = ci.k();

  for (const Face& delta : X.faces.faces) {
    if (delta.dim < 1) continue;
    IMat sk = detail::support_on_face(ci.fk(), delta, X.faces);
    if (sk.empty()) continue;

    std::vector<int> members;
    std::map<int, IMat> supports;
    for (int j = 0; j + 1 < k; ++j) {
      IMat s = detail::support_on_face(ci.components[j], delta, X.faces);
      if (!s.empty()) {
        members.push_back(j);
        supports[j] = std::move(s);
      }
    }
    members.push_back(k - 1);
    supports[k - 1] = sk;

    std::vector<NewtonPolyhedron> factors;
    for (int j : members)
      factors.push_back(newton_polyhedron(supports[j], delta, X.faces));
    NewtonPolyhedron product = minkowski_sum(factors, X.faces);

    // One representative functional per compact face of the product polygon
    // (sum of the primitive normals of the facets containing it).
    std::vector<IVec> reps;
    for (const PolyFace& pf : product.local.faces) {
      if (!pf.compact() || pf.active.empty()) continue;
      IVec u(delta.gen_lattice.rank, 0);
      for (int a : pf.active) u = vec_add(u, product.local.facets[a].a);
      bool interior = true;
      for (const IVec& r : product.local_rays)
        if (dot(u, r) <= 0) interior = false;
      if (interior) reps.push_back(primitive(u));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

    for (size_t ui = 0; ui < reps.size(); ++ui) {
      const IVec& u = reps[ui];
      // u-parts over the full support on the face (not only vertices).
      std::map<int, detail::LaurentPoly> parts;
      for (int j : members) {
        Int best;
        bool first = true;
        std::vector<std::pair<IVec, Rat>> pts;
        for (const IVec& p : supports.at(j)) {
          IVec c = express_in_basis(p, delta.gen_lattice);
          Int val = dot(u, c);
          if (first || val < best) best = val;
          first = false;
          pts.emplace_back(std::move(c), ci.components[j].terms.at(p));
        }
        detail::LaurentPoly lp;
        for (auto& [c, coeff] : pts)
          if (dot(u, c) == best) lp.push_back({c, coeff});
        parts[j] = std::move(lp);
      }

      // The two subsystems from the definition: {j in I} and {j in I + {k}}.
      std::vector<std::pair<std::string, std::vector<int>>> systems;
      if (members.size() > 1)
        systems.emplace_back("I", std::vector<int>(members.begin(),
                                                   members.end() - 1));
      systems.emplace_back("I+k", members);

      for (const auto& [label, js] : systems) {
        std::vector<detail::LaurentPoly> sys;
        for (int j : js) sys.push_back(parts.at(j));
        size_t r = static_cast<size_t>(delta.gen_lattice.rank);
        for (int trial = 0; trial < trials; ++trial) {
          SplitMix64 rng(derive_seed(seed, delta.id, ui * 8 + (label == "I"),
                                     trial));
          size_t poly_i = rng.next() % sys.size();
          size_t var = rng.next() % r;
          QVec x(r, Rat(0));
          for (size_t i = 0; i < r; ++i) {
            if (i == var) continue;
            long num = rng.nonzero(1000);
            long den = rng.range(1, 1000);
            x[i] = Rat(num, den);
            x[i].canonicalize();
          }
          QPoly restr = detail::laurent_restrict(sys[poly_i], x, var);
          // Roots of the restriction and of its repeated-root part.
          std::vector<Rat> roots = qpoly_rational_roots(restr);
          QPoly sq = qpoly_gcd(restr, qpoly_derivative(restr));
          if (qpoly_deg(sq) >= 1)
            for (const Rat& rv : qpoly_rational_roots(sq)) roots.push_back(rv);
          for (const Rat& root : roots) {
            if (root == 0) continue;
            QVec pt = x;
            pt[var] = root;
            bool common = true;
            for (const detail::LaurentPoly& f : sys)
              if (detail::laurent_eval(f, pt) != 0) {
                common = false;
                break;
              }
            if (!common) continue;
            if (detail::jacobian_rank(sys, pt) <
                static_cast<int>(sys.size())) {
              verdict.witness_found = true;
              verdict.witness =
                  DegenerateWitness{delta.id, u, pt, label};
              return verdict;
            }
          }
        }
      }
    }
  }
  return verdict;
}

}  // namespace toricinv
