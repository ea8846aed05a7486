#pragma once

// Normalized lattice volumes, mixed volumes via polarization, and the
// per-facet coefficients d_i and K_i entering the Brasselet-number sums.

#include "toricinv/polyhedral.hpp"

namespace toricinv {

/// Convention used for the mixed volumes inside K coefficients.
///
/// Strict is the standard theory: a mixed volume whose arguments span less
/// than the full lattice rank is 0 (in particular any multiset of points).
/// PaperExample additionally counts a multiset whose Minkowski sum is a
/// single point as 1 (extending the zero-dimensional volume convention);
/// this reproduces the published worked values for the cusp on the quadric
/// cone. Reports always name the convention in force.
enum class VolumeConvention { Strict, PaperExample };

inline const char* to_string(VolumeConvention m) {
  return m == VolumeConvention::Strict ? "strict" : "paper-example";
}

inline VolumeConvention volume_convention_from_string(const std::string& s) {
  if (s == "strict") return VolumeConvention::Strict;
  if (s == "paper-example") return VolumeConvention::PaperExample;
  throw Error("BadMode", "unknown volume convention: " + s);
}

/// A polytope with vertices in ambient coordinates whose volume is measured
/// against a reference sublattice (vertex differences must lie in it).
struct LatticePolytope {
  IMat vertices;
  SublatticeBasis lattice;
};

/// Normalized volume of a full-dimensional point configuration in Z^k:
/// k! times the Euclidean volume of the convex hull.
inline Int volume_local_fulldim(const IMat& pts) {
  if (pts.empty()) return 0;
  size_t k = pts[0].size();
  if (k == 0) return 1;
  Int total = 0;
  for (const std::vector<int>& s : triangulate_points(pts)) {
    if (s.size() != k + 1) return 0;  // hull degenerate
    IMat edges;
    for (size_t i = 1; i < s.size(); ++i)
      edges.push_back(vec_sub(pts[s[i]], pts[s[0]]));
    Int d = det_int(edges);
    total += d < 0 ? Int(-d) : d;
  }
  return total;
}

/// Normalized dim-dimensional volume of a local point configuration inside
/// Z^rank. Returns 0 when the affine span has dimension below dim; descends
/// to the induced saturated lattice when the span is proper.
inline Int normalized_volume_local(const IMat& pts, int dim) {
  if (dim == 0) return 1;
  if (pts.empty()) return 0;
  int rank = static_cast<int>(pts[0].size());
  IMat diffs;
  for (size_t i = 1; i < pts.size(); ++i)
    diffs.push_back(vec_sub(pts[i], pts[0]));
  int affdim = diffs.empty() ? 0 : rank_int(diffs);
  if (dim > affdim) return 0;
  if (dim < affdim)
    throw Error("DimensionMismatch",
                "requested volume dimension below the affine span");
  if (affdim == rank) return volume_local_fulldim(pts);
  // Proper span: express in a basis of the saturated direction lattice.
  IMat normals = kernel_int(diffs, rank);
  IMat span_basis = kernel_int(normals, rank);
  SublatticeBasis sb;
  sb.ambient_rank = rank;
  sb.basis = span_basis;
  sb.rank = static_cast<int>(span_basis.size());
  sb.index_in_saturation = 1;
  IMat local;
  local.push_back(IVec(sb.rank, 0));
  for (size_t i = 1; i < pts.size(); ++i)
    local.push_back(express_in_basis(vec_sub(pts[i], pts[0]), sb));
  return volume_local_fulldim(local);
}

/// Local coordinates of the polytope's vertices relative to its reference
/// lattice (translated so the first vertex is the origin).
inline IMat polytope_local_coords(const LatticePolytope& p) {
  if (p.vertices.empty()) throw Error("EmptySupport", "empty polytope");
  IMat local;
  local.push_back(IVec(p.lattice.rank, 0));
  for (size_t i = 1; i < p.vertices.size(); ++i)
    local.push_back(
        express_in_basis(vec_sub(p.vertices[i], p.vertices[0]), p.lattice));
  return local;
}

/// Normalized dim-dimensional volume of a lattice polytope with respect to
/// its reference lattice. dim 0 returns 1 by convention; dim above the
/// affine span returns 0.
inline Int normalized_volume(const LatticePolytope& p, int dim) {
  if (dim == 0) return 1;
  return normalized_volume_local(polytope_local_coords(p), dim);
}

/// Normalized mixed volume of m polytopes sharing a rank-m reference
/// lattice, by inclusion-exclusion polarization of the normalized volume:
///   MV(P_1..P_m) = (1/m!) * sum_{S != 0} (-1)^{m-|S|} Vol(sum_{i in S} P_i).
/// Symmetric, Minkowski-multilinear, MV(P,..,P) = Vol(P); 0 whenever the
/// arguments span a proper subspace.
inline Int mixed_volume(const std::vector<LatticePolytope>& ps, int m) {
  if (static_cast<int>(ps.size()) != m)
    throw Error("DimensionMismatch", "mixed_volume needs exactly m polytopes");
  if (m == 0) return 1;
  for (const LatticePolytope& p : ps)
    if (p.lattice.rank != m)
      throw Error("DimensionMismatch",
                  "reference lattice rank must equal the number of factors");
  std::vector<IMat> local;
  local.reserve(ps.size());
  for (const LatticePolytope& p : ps) local.push_back(polytope_local_coords(p));

  Rat acc = 0;
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    IMat sum = {IVec(m, 0)};
    int bits = 0;
    for (int i = 0; i < m; ++i) {
      if (!(mask & (size_t(1) << i))) continue;
      ++bits;
      IMat next;
      for (const IVec& a : sum)
        for (const IVec& v : local[i]) next.push_back(vec_add(a, v));
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      sum = std::move(next);
    }
    Int vol = normalized_volume_local(sum, m);
    if ((m - bits) % 2 == 0)
      acc += Rat(vol);
    else
      acc -= Rat(vol);
  }
  Rat fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  acc /= fact;
  acc.canonicalize();
  if (acc.get_den() != 1)
    throw Error("Internal", "mixed volume polarization not integral");
  return acc.get_num();
}

/// Minimal pairing value of u over a restricted Newton polyhedron (the
/// coefficient d_i). u is an ambient functional.
inline Int d_coefficient(const LatticePoint& u, const NewtonPolyhedron& fk) {
  return supporting_face(fk, u).second;
}

struct KResult {
  Int value = 0;
  bool no_admissible = false;  // empty composition sum (flagged, value 0)
};

namespace detail {

inline void compositions_rec(int remaining, int slot, int m,
                             std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
  if (slot == m - 1) {
    cur[slot] = remaining;  // last part may be zero
    out.push_back(cur);
    return;
  }
  for (int a = 1; a <= remaining - (m - 2 - slot); ++a) {
    cur[slot] = a;
    compositions_rec(remaining - a, slot + 1, m, cur, out);
  }
}

/// Compositions (a_1..a_m) of n with a_q >= 1 for q < m and a_m >= 0.
inline std::vector<std::vector<int>> admissible_compositions(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m <= 0) return out;
  if (n < m - 1) return out;
  std::vector<int> cur(m, 0);
  compositions_rec(n, 0, m, cur, out);
  return out;
}

}  // namespace detail

/// The coefficient K_i: the sum over admissible compositions of the
/// (face_dim-1)-dimensional mixed volumes of the supporting faces, ordered
/// as (gamma(f_{j_1}), ..., gamma(f_{j_{m-1}}), gamma(f_k)). Returns 1 when
/// face_dim - 1 = 0. In PaperExample mode a composition whose Minkowski sum
/// is a single point contributes 1 instead of 0.
inline KResult k_coefficient(int face_dim, int m,
                             const std::vector<LatticePolytope>& gammas,
                             VolumeConvention mode) {
  if (static_cast<int>(gammas.size()) != m)
    throw Error("DimensionMismatch", "k_coefficient needs m supporting faces");
  KResult r;
  int n = face_dim - 1;
  if (n == 0) {
    r.value = 1;
    return r;
  }
  auto comps = detail::admissible_compositions(n, m);
  if (comps.empty()) {
    r.no_admissible = true;
    return r;
  }
  for (const std::vector<int>& alpha : comps) {
    std::vector<LatticePolytope> multiset;
    bool all_points = true;
    for (int q = 0; q < m; ++q) {
      for (int c = 0; c < alpha[q]; ++c) multiset.push_back(gammas[q]);
      if (alpha[q] > 0 && gammas[q].vertices.size() > 1) all_points = false;
    }
    if (mode == VolumeConvention::PaperExample && all_points) {
      r.value += 1;
      continue;
    }
    r.value += mixed_volume(multiset, n);
  }
  return r;
}

}  // namespace toricinv
