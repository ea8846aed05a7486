#pragma once

// Rational polyhedral cones, dual cones, face lattices, and Newton polyhedra
// (convex hull of support points plus a recession cone). Everything is exact:
// V-representations of integer points with H-representations recovered
// through homogenization, and faces enumerated by brute force over facet
// subsets. Dimensions in this domain are tiny (<= 4), so the simple
// combinatorial algorithms are preferred over asymptotically clever ones.

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "toricinv/lattice.hpp"

namespace toricinv {

// ---------------------------------------------------------------------------
// Cone engine
// ---------------------------------------------------------------------------

/// Extreme rays (primitive, lex-sorted) of the cone { x : rows * x >= 0 }.
/// Valid for pointed cones; candidates come from (dim-1)-subsets of rows
/// whose common kernel is one-dimensional.
inline IMat extreme_rays_of_inequalities(const IMat& rows, int dim) {
  std::set<IVec> out;
  size_t m = rows.size();
  size_t need = dim > 0 ? static_cast<size_t>(dim - 1) : 0;
  if (need > m) return {};
  std::vector<size_t> comb(need);
  for (size_t i = 0; i < need; ++i) comb[i] = i;
  auto feasible = [&](const IVec& w) {
    for (const IVec& r : rows)
      if (dot(r, w) < 0) return false;
    return true;
  };
  while (true) {
    IMat sub;
    sub.reserve(need);
    for (size_t i : comb) sub.push_back(rows[i]);
    IMat ker = kernel_int(sub, dim);
    if (ker.size() == 1) {
      IVec w = primitive(ker[0]);
      if (feasible(w))
        out.insert(w);
      else {
        IVec nw = vec_neg(w);
        if (feasible(nw)) out.insert(nw);
      }
    }
    if (need == 0) break;
    long k = static_cast<long>(need) - 1;
    while (k >= 0 && comb[k] == m - need + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (size_t j = k + 1; j < need; ++j) comb[j] = comb[j - 1] + 1;
  }
  return IMat(out.begin(), out.end());
}

/// Facets (primitive inner normals) of the full-dimensional cone spanned by
/// the generators: the extreme rays of its dual.
inline IMat cone_facets(const IMat& gens, int dim) {
  return extreme_rays_of_inequalities(gens, dim);
}

// ---------------------------------------------------------------------------
// Polyhedra in local integer coordinates
// ---------------------------------------------------------------------------

struct HalfSpace {
  IVec a;  // primitive inner normal
  Int b;   // a * x >= b on the polyhedron, equality on the facet
};

struct PolyFace {
  std::vector<int> vert_ids;
  std::vector<int> ray_ids;
  std::vector<int> active;  // facet indices containing this face
  int dim = 0;
  bool compact() const { return ray_ids.empty(); }
};

/// P = conv(verts) + cone(rays), full-dimensional in Z^dim with a pointed
/// recession cone. Carries the facet H-representation and the full face
/// poset (faces sorted by dimension, then by vertex lists).
struct LocalPolyhedron {
  int dim = 0;
  IMat verts;
  IMat rays;
  std::vector<HalfSpace> facets;
  std::vector<PolyFace> faces;

  bool contains(const IVec& p) const {
    for (const HalfSpace& h : facets)
      if (dot(h.a, p) < h.b) return false;
    return true;
  }
};

inline LocalPolyhedron make_local_polyhedron(IMat points, IMat rays) {
  if (points.empty())
    throw Error("EmptySupport", "polyhedron needs at least one point");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  int dim = static_cast<int>(points[0].size());
  LocalPolyhedron p;
  p.dim = dim;
  p.rays = rays;

  IMat homog;
  for (const IVec& v : points) {
    IVec h = v;
    h.emplace_back(1);
    homog.push_back(h);
  }
  for (const IVec& r : rays) {
    IVec h = r;
    h.emplace_back(0);
    homog.push_back(h);
  }
  if (rank_int(homog) != dim + 1)
    throw Error("DegenerateGeometry",
                "polyhedron is not full-dimensional in its coordinates");

  for (const IVec& f : cone_facets(homog, dim + 1)) {
    IVec a(f.begin(), f.end() - 1);
    if (is_zero(a)) continue;  // the facet at infinity
    a = primitive(a);
    Int b;
    bool first = true;
    for (const IVec& v : points) {
      Int val = dot(a, v);
      if (first || val < b) b = val;
      first = false;
    }
    p.facets.push_back({a, b});
  }
  std::sort(p.facets.begin(), p.facets.end(),
            [](const HalfSpace& x, const HalfSpace& y) {
              return x.a < y.a || (x.a == y.a && x.b < y.b);
            });

  for (const IVec& v : points) {
    IMat act;
    for (const HalfSpace& h : p.facets)
      if (dot(h.a, v) == h.b) act.push_back(h.a);
    if (rank_int(act) == dim) p.verts.push_back(v);
  }

  // Faces from facet subsets; the key (vertex set, ray set) deduplicates.
  size_t nf = p.facets.size();
  std::map<std::pair<std::vector<int>, std::vector<int>>, PolyFace> seen;
  for (size_t mask = 0; mask < (size_t(1) << nf); ++mask) {
    std::vector<int> vs, rs;
    for (size_t i = 0; i < p.verts.size(); ++i) {
      bool on = true;
      for (size_t f = 0; f < nf && on; ++f)
        if (mask & (size_t(1) << f))
          on = dot(p.facets[f].a, p.verts[i]) == p.facets[f].b;
      if (on) vs.push_back(static_cast<int>(i));
    }
    if (vs.empty()) continue;
    for (size_t i = 0; i < p.rays.size(); ++i) {
      bool on = true;
      for (size_t f = 0; f < nf && on; ++f)
        if (mask & (size_t(1) << f)) on = dot(p.facets[f].a, p.rays[i]) == 0;
      if (on) rs.push_back(static_cast<int>(i));
    }
    auto key = std::make_pair(vs, rs);
    if (seen.count(key)) continue;
    PolyFace face;
    face.vert_ids = vs;
    face.ray_ids = rs;
    for (size_t f = 0; f < nf; ++f) {
      bool on = true;
      for (int i : vs)
        if (dot(p.facets[f].a, p.verts[i]) != p.facets[f].b) {
          on = false;
          break;
        }
      if (on)
        for (int i : rs)
          if (dot(p.facets[f].a, p.rays[i]) != 0) {
            on = false;
            break;
          }
      if (on) face.active.push_back(static_cast<int>(f));
    }
    IMat dirs;
    const IVec& v0 = p.verts[vs[0]];
    for (size_t j = 1; j < vs.size(); ++j)
      dirs.push_back(vec_sub(p.verts[vs[j]], v0));
    for (int i : rs) dirs.push_back(p.rays[i]);
    face.dim = dirs.empty() ? 0 : rank_int(dirs);
    seen.emplace(std::move(key), std::move(face));
  }
  for (auto& [key, f] : seen) p.faces.push_back(f);
  std::sort(p.faces.begin(), p.faces.end(),
            [](const PolyFace& x, const PolyFace& y) {
              if (x.dim != y.dim) return x.dim < y.dim;
              if (x.vert_ids != y.vert_ids) return x.vert_ids < y.vert_ids;
              return x.ray_ids < y.ray_ids;
            });
  return p;
}

// ---------------------------------------------------------------------------
// Triangulation (used by the volume layer)
// ---------------------------------------------------------------------------

namespace detail {

/// Indices of an affinely independent coordinate subset for the difference
/// matrix of the points (greedy rank extension over Q).
inline std::vector<int> chart_columns(const IMat& pts, int affdim) {
  const IVec& p0 = pts[0];
  IMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vec_sub(pts[i], p0));
  std::vector<int> cols;
  IMat sub;
  int n = static_cast<int>(p0.size());
  for (int c = 0; c < n && static_cast<int>(cols.size()) < affdim; ++c) {
    IMat trial(diffs.size(), IVec());
    for (size_t i = 0; i < diffs.size(); ++i) {
      trial[i] = sub.empty() ? IVec() : sub[i];
      trial[i].push_back(diffs[i][c]);
    }
    if (rank_int(trial) == static_cast<int>(cols.size()) + 1) {
      cols.push_back(c);
      sub = trial;
    }
  }
  return cols;
}

}  // namespace detail

/// Triangulates conv(pts) into simplices of its own affine dimension,
/// returned as index tuples into the input. Fan construction from the
/// lexicographically smallest vertex over recursively triangulated facets.
inline std::vector<std::vector<int>> triangulate_points(const IMat& pts) {
  std::vector<int> order(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
  // Deduplicate by value, keeping the first index as representative.
  std::map<IVec, int> rep;
  std::vector<int> uniq;
  for (size_t i = 0; i < pts.size(); ++i)
    if (rep.emplace(pts[i], static_cast<int>(i)).second)
      uniq.push_back(static_cast<int>(i));

  IMat diffs;
  for (size_t k = 1; k < uniq.size(); ++k)
    diffs.push_back(vec_sub(pts[uniq[k]], pts[uniq[0]]));
  int affdim = diffs.empty() ? 0 : rank_int(diffs);
  if (affdim == 0) return {{uniq[0]}};

  IMat upts;
  for (int i : uniq) upts.push_back(pts[i]);
  std::vector<int> cols = detail::chart_columns(upts, affdim);
  IMat proj(uniq.size(), IVec(affdim));
  for (size_t i = 0; i < uniq.size(); ++i)
    for (int j = 0; j < affdim; ++j) proj[i][j] = pts[uniq[i]][cols[j]];

  if (affdim == 1) {
    size_t lo = 0, hi = 0;
    for (size_t i = 1; i < proj.size(); ++i) {
      if (proj[i][0] < proj[lo][0]) lo = i;
      if (proj[i][0] > proj[hi][0]) hi = i;
    }
    return {{uniq[lo], uniq[hi]}};
  }

  LocalPolyhedron hull = make_local_polyhedron(proj, {});
  // apex: lexicographically smallest projected vertex
  IVec apex = hull.verts[0];
  size_t apex_i = 0;
  for (size_t i = 0; i < proj.size(); ++i)
    if (proj[i] == apex) {
      apex_i = i;
      break;
    }
  std::vector<std::vector<int>> simplices;
  for (const HalfSpace& h : hull.facets) {
    if (dot(h.a, apex) == h.b) continue;  // facet contains the apex
    std::vector<int> sub_ids;
    IMat sub_pts;
    for (size_t i = 0; i < proj.size(); ++i)
      if (dot(h.a, proj[i]) == h.b) {
        sub_ids.push_back(static_cast<int>(i));
        sub_pts.push_back(proj[i]);
      }
    for (const std::vector<int>& s : triangulate_points(sub_pts)) {
      std::vector<int> simplex = {uniq[apex_i]};
      for (int i : s) simplex.push_back(uniq[sub_ids[i]]);
      simplices.push_back(std::move(simplex));
    }
  }
  return simplices;
}

/// Vertex set of conv(pts) for a point configuration of any affine
/// dimension (projects to a chart of the affine hull first).
inline IMat hull_vertices(IMat pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  IMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vec_sub(pts[i], pts[0]));
  int affdim = rank_int(diffs);
  if (affdim == 0) return {pts[0]};
  std::vector<int> cols = detail::chart_columns(pts, affdim);
  IMat proj(pts.size(), IVec(affdim));
  for (size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < affdim; ++j) proj[i][j] = pts[i][cols[j]];
  LocalPolyhedron hull = make_local_polyhedron(proj, {});
  IMat verts;
  for (size_t i = 0; i < pts.size(); ++i)
    for (const IVec& v : hull.verts)
      if (proj[i] == v) {
        verts.push_back(pts[i]);
        break;
      }
  std::sort(verts.begin(), verts.end());
  return verts;
}

// ---------------------------------------------------------------------------
// Cones and the face lattice of a dual cone
// ---------------------------------------------------------------------------

struct Cone {
  int ambient_rank = 0;
  IMat rays;  // primitive, lex-sorted
};

inline Cone make_cone(int ambient_rank, const IMat& rays) {
  std::set<IVec> rs;
  for (const IVec& r : rays) {
    if (is_zero(r)) continue;
    rs.insert(primitive(r));
  }
  return Cone{ambient_rank, IMat(rs.begin(), rs.end())};
}

/// Polar dual of a strongly convex full-dimensional cone, with primitive ray
/// generators. dual_cone(dual_cone(c)) reproduces the ray set of c.
inline Cone dual_cone(const Cone& c) {
  int d = c.ambient_rank;
  if (rank_int(c.rays) != d)
    throw Error("NotStronglyConvex", "cone is not full-dimensional");
  IMat dual = extreme_rays_of_inequalities(c.rays, d);
  if (rank_int(dual) != d)
    throw Error("NotStronglyConvex", "cone contains a line");
  return Cone{d, dual};
}

/// A face of the dual cone, with the sublattice generated by the semigroup
/// generators lying on it.
struct Face {
  int id = 0;
  int dim = 0;
  IMat rays;                    // rays of the dual cone spanning the face
  std::vector<int> active;      // facet-normal indices vanishing on the face
  std::vector<int> gen_ids;     // generators on the face
  IMat gens;                    // their coordinates
  SublatticeBasis gen_lattice;  // M(S ∩ Δ)
};

struct FaceLattice {
  Cone sigma_dual;
  IMat facet_normals;  // inner normals of the dual cone (= rays of sigma)
  IMat generators;
  std::vector<Face> faces;  // sorted by (dim, rays); ids are positions

  const Face& full_face() const { return faces.back(); }

  bool in_dual_cone(const LatticePoint& v) const {
    for (const IVec& n : facet_normals)
      if (dot(n, v) < 0) return false;
    return true;
  }

  /// Membership of a lattice point in the (closed) face.
  bool member(const LatticePoint& v, const Face& f) const {
    if (!in_dual_cone(v)) return false;
    for (int i : f.active)
      if (dot(facet_normals[i], v) != 0) return false;
    return true;
  }
};

/// All faces of the dual cone (including {0} and the cone itself), with
/// per-face generator sublattices populated from the semigroup generators
/// lying on the face.
inline FaceLattice face_lattice(const Cone& sigma_dual,
                                const IMat& generators) {
  int d = sigma_dual.ambient_rank;
  FaceLattice fl;
  fl.sigma_dual = sigma_dual;
  fl.generators = generators;
  fl.facet_normals = cone_facets(sigma_dual.rays, d);
  size_t nf = fl.facet_normals.size();

  std::set<IMat> seen;
  std::vector<Face> faces;
  for (size_t mask = 0; mask < (size_t(1) << nf); ++mask) {
    IMat rs;
    for (const IVec& r : sigma_dual.rays) {
      bool on = true;
      for (size_t i = 0; i < nf && on; ++i)
        if (mask & (size_t(1) << i)) on = dot(fl.facet_normals[i], r) == 0;
      if (on) rs.push_back(r);
    }
    if (!seen.insert(rs).second) continue;
    Face f;
    f.rays = rs;
    f.dim = rs.empty() ? 0 : rank_int(rs);
    for (size_t i = 0; i < nf; ++i) {
      bool on = true;
      for (const IVec& r : rs)
        if (dot(fl.facet_normals[i], r) != 0) {
          on = false;
          break;
        }
      if (on) f.active.push_back(static_cast<int>(i));
    }
    faces.push_back(std::move(f));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) {
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.rays < y.rays;
  });
  for (size_t i = 0; i < faces.size(); ++i) {
    Face& f = faces[i];
    f.id = static_cast<int>(i);
    for (size_t g = 0; g < generators.size(); ++g) {
      bool on = true;
      for (int a : f.active)
        if (dot(fl.facet_normals[a], generators[g]) != 0) {
          on = false;
          break;
        }
      if (on) {
        f.gen_ids.push_back(static_cast<int>(g));
        f.gens.push_back(generators[g]);
      }
    }
    f.gen_lattice = f.gens.empty() ? trivial_sublattice(d)
                                   : sublattice_basis(f.gens);
  }
  fl.faces = std::move(faces);
  return fl;
}

// ---------------------------------------------------------------------------
// Newton polyhedra
// ---------------------------------------------------------------------------

/// conv(support) + cone(rec) for a face rec of the dual cone, stored both in
/// ambient coordinates and in the face's generator-sublattice coordinates.
struct NewtonPolyhedron {
  Face rec;
  IMat support;        // ambient, sorted
  IMat vertices;       // ambient vertex set
  IMat local_rays;     // recession rays in local coordinates, primitive
  LocalPolyhedron local;

  LatticePoint to_ambient(const IVec& c) const {
    return lift_from_basis(c, rec.gen_lattice);
  }
};

inline NewtonPolyhedron newton_polyhedron(const IMat& support, const Face& rec,
                                          const FaceLattice& fl) {
  if (support.empty())
    throw Error("EmptySupport", "newton_polyhedron needs support points");
  if (rec.gen_lattice.rank != rec.dim)
    throw Error("GeneratorsDoNotSpanFace",
                "semigroup generators on the face do not span it");
  NewtonPolyhedron np;
  np.rec = rec;
  np.support = support;
  std::sort(np.support.begin(), np.support.end());
  np.support.erase(std::unique(np.support.begin(), np.support.end()),
                   np.support.end());

  IMat local_pts;
  for (const IVec& v : np.support) {
    if (!fl.member(v, rec))
      throw Error("SupportOutsideCone",
                  "support point " + to_string(v) + " outside the face");
    local_pts.push_back(express_in_basis(v, rec.gen_lattice));
  }
  for (const IVec& r : rec.rays)
    np.local_rays.push_back(
        primitive_from_rat(express_in_basis_rat(r, rec.gen_lattice)));
  std::sort(np.local_rays.begin(), np.local_rays.end());
  np.local_rays.erase(
      std::unique(np.local_rays.begin(), np.local_rays.end()),
      np.local_rays.end());

  np.local = make_local_polyhedron(local_pts, np.local_rays);
  for (const IVec& v : np.local.verts) np.vertices.push_back(np.to_ambient(v));
  std::sort(np.vertices.begin(), np.vertices.end());
  return np;
}

/// Minkowski sum of Newton polyhedra sharing one recession face.
inline NewtonPolyhedron minkowski_sum(const std::vector<NewtonPolyhedron>& ps,
                                      const FaceLattice& fl) {
  IMat cand = {IVec(ps[0].support[0].size(), 0)};
  for (const NewtonPolyhedron& p : ps) {
    IMat next;
    for (const IVec& a : cand)
      for (const IVec& v : p.vertices) next.push_back(vec_add(a, v));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cand = std::move(next);
  }
  return newton_polyhedron(cand, ps[0].rec, fl);
}

/// One compact face of a Newton polyhedron. The primitive inner normal is
/// present exactly for facets (dim = recession dim - 1); it is primitive in
/// the dual of the face's generator sublattice and strictly positive on the
/// recession rays.
struct CompactFace {
  std::vector<int> local_vert_ids;
  IMat vertices;  // ambient
  int dim = 0;
  bool below_target = false;
  std::optional<IVec> normal_local;
  std::optional<QVec> normal_ambient;
  Int min_value = 0;  // pairing minimum over the polyhedron when normal set
};

struct CompactFaceSet {
  std::vector<CompactFace> faces;
  bool degenerate = false;  // no face of the requested dimension exists
};

/// Ambient lift of a local functional: the unique functional on the span of
/// the basis with the given coordinates in the dual basis, extended by zero
/// on the orthogonal complement.
inline QVec lift_functional(const IVec& a, const SublatticeBasis& b) {
  // Solve (B B^T) y = a, then u = B^T y.
  IMat gram(b.rank, IVec(b.rank, 0));
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j) gram[i][j] = dot(b.basis[i], b.basis[j]);
  auto y = solve_int(gram, a);
  if (!y) throw Error("Internal", "gram solve failed");
  QVec u(b.ambient_rank, Rat(0));
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.ambient_rank; ++j)
      u[j] += (*y)[i] * Rat(b.basis[i][j]);
  return u;
}

/// All compact faces of the requested dimension. When the polyhedron is too
/// degenerate to have any (all support on a smaller face), the maximal
/// compact faces are returned with below_target set and `degenerate` raised.
inline CompactFaceSet compact_faces(const NewtonPolyhedron& p,
                                    int target_dim) {
  CompactFaceSet out;
  int max_compact = -1;
  for (const PolyFace& f : p.local.faces)
    if (f.compact()) max_compact = std::max(max_compact, f.dim);
  int use_dim = target_dim;
  if (max_compact < target_dim) {
    out.degenerate = true;
    use_dim = max_compact;
  }
  for (const PolyFace& f : p.local.faces) {
    if (!f.compact() || f.dim != use_dim) continue;
    CompactFace cf;
    cf.local_vert_ids = f.vert_ids;
    for (int i : f.vert_ids) cf.vertices.push_back(p.to_ambient(p.local.verts[i]));
    std::sort(cf.vertices.begin(), cf.vertices.end());
    cf.dim = f.dim;
    cf.below_target = out.degenerate;
    if (!out.degenerate && f.dim == p.rec.dim - 1) {
      if (f.active.size() != 1)
        throw Error("Internal", "facet without a unique supporting halfspace");
      const HalfSpace& h = p.local.facets[f.active[0]];
      for (const IVec& r : p.local_rays)
        if (dot(h.a, r) <= 0)
          throw Error("Internal", "compact facet normal not interior");
      cf.normal_local = h.a;
      cf.normal_ambient = lift_functional(h.a, p.rec.gen_lattice);
      cf.min_value = h.b;
    }
    out.faces.push_back(std::move(cf));
  }
  std::sort(out.faces.begin(), out.faces.end(),
            [](const CompactFace& x, const CompactFace& y) {
              return x.vertices < y.vertices;
            });
  return out;
}

/// Vertices of the supporting face argmin{ <u,v> : v in P } for a local
/// functional u, together with the minimum. Throws UnboundedBelow when u is
/// negative on a recession ray.
inline std::pair<std::vector<int>, Int> supporting_face_local(
    const NewtonPolyhedron& p, const IVec& u) {
  for (const IVec& r : p.local_rays)
    if (dot(u, r) < 0)
      throw Error("UnboundedBelow", "functional negative on a recession ray");
  Int best;
  bool first = true;
  for (const IVec& v : p.local.verts) {
    Int val = dot(u, v);
    if (first || val < best) best = val;
    first = false;
  }
  std::vector<int> ids;
  for (size_t i = 0; i < p.local.verts.size(); ++i)
    if (dot(u, p.local.verts[i]) == best) ids.push_back(static_cast<int>(i));
  return {ids, best};
}

/// Ambient-functional version of supporting_face_local; returns the ambient
/// vertex set of the face and the minimal pairing value.
inline std::pair<IMat, Int> supporting_face(const NewtonPolyhedron& p,
                                            const LatticePoint& u) {
  for (const IVec& r : p.rec.rays)
    if (dot(u, r) < 0)
      throw Error("UnboundedBelow", "functional negative on a recession ray");
  Int best;
  bool first = true;
  for (const IVec& v : p.vertices) {
    Int val = dot(u, v);
    if (first || val < best) best = val;
    first = false;
  }
  IMat face;
  for (const IVec& v : p.vertices)
    if (dot(u, v) == best) face.push_back(v);
  return {face, best};
}

}  // namespace toricinv
