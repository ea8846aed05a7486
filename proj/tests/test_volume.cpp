#include <doctest.h>

#include "toricinv/rng.hpp"
#include "toricinv/volume.hpp"

using namespace toricinv;

namespace {

SublatticeBasis z2() {
  return sublattice_basis({iv({1, 0}), iv({0, 1})});
}

LatticePolytope poly2(const IMat& verts) { return {verts, z2()}; }

// independent shoelace oracle for normalized 2-d volumes of hulls
Int shoelace_oracle(const IMat& pts) {
  IMat hull = hull_vertices(pts);
  if (hull.size() < 3) return 0;
  // order hull vertices by angle around the centroid: for small sets,
  // brute-force a convex ordering by repeatedly picking the point making
  // all others on the left of the previous edge
  // (hull_vertices already gives the extreme points; sort by atan-free
  // comparator using cross products around the lexicographic minimum)
  IVec base = hull[0];
  std::vector<IVec> rest(hull.begin() + 1, hull.end());
  std::sort(rest.begin(), rest.end(), [&](const IVec& a, const IVec& b) {
    IVec da = vec_sub(a, base), db = vec_sub(b, base);
    return da[0] * db[1] - da[1] * db[0] > 0;
  });
  Int twice = 0;
  for (size_t i = 0; i + 1 < rest.size(); ++i) {
    IVec da = vec_sub(rest[i], base), db = vec_sub(rest[i + 1], base);
    twice += da[0] * db[1] - da[1] * db[0];
  }
  return twice < 0 ? Int(-twice) : twice;
}

IMat random_polytope(SplitMix64& rng, int npts, long bound) {
  IMat pts;
  for (int i = 0; i < npts; ++i)
    pts.push_back({rng.range(0, bound), rng.range(0, bound)});
  return pts;
}

}  // namespace

TEST_SUITE_BEGIN("volume");

TEST_CASE("normalized volumes of the worked examples") {
  CHECK(normalized_volume(poly2({iv({0, 0}), iv({3, 0}), iv({2, 2})}), 2) == 6);

  LatticePolytope seg{{iv({0, 0}), iv({3, 0})}, sublattice_basis({iv({1, 0})})};
  CHECK(normalized_volume(seg, 1) == 3);
  for (long d = 1; d <= 5; ++d) {
    LatticePolytope s{{iv({0, 0}), IVec{Int(d), Int(0)}},
                      sublattice_basis({iv({1, 0})})};
    CHECK(normalized_volume(s, 1) == d);
  }

  CHECK(normalized_volume(poly2({iv({5, 7})}), 0) == 1);
  // dim above the affine span
  CHECK(normalized_volume(poly2({iv({5, 7})}), 2) == 0);
  CHECK(normalized_volume(poly2({iv({0, 0}), iv({1, 1})}), 2) == 0);
}

TEST_CASE("vertices outside the reference lattice are rejected") {
  LatticePolytope bad{{iv({0, 0}), iv({1, 1})},
                      sublattice_basis({iv({2, 0}), iv({0, 2})})};
  try {
    normalized_volume(bad, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "NotInLattice");
  }
}

TEST_CASE("normalized volume matches the shoelace oracle") {
  SplitMix64 rng(808);
  for (int it = 0; it < 100; ++it) {
    IMat pts = random_polytope(rng, 3 + static_cast<int>(rng.next() % 5), 7);
    IMat diffs;
    for (size_t i = 1; i < pts.size(); ++i)
      diffs.push_back(vec_sub(pts[i], pts[0]));
    if (rank_int(diffs) != 2) continue;
    CHECK(normalized_volume(poly2(pts), 2) == shoelace_oracle(pts));
  }
}

TEST_CASE("additivity under the fan triangulation") {
  SplitMix64 rng(909);
  for (int it = 0; it < 50; ++it) {
    IMat pts = random_polytope(rng, 4 + static_cast<int>(rng.next() % 4), 6);
    IMat diffs;
    for (size_t i = 1; i < pts.size(); ++i)
      diffs.push_back(vec_sub(pts[i], pts[0]));
    if (rank_int(diffs) != 2) continue;
    Int total = 0;
    for (const std::vector<int>& s : triangulate_points(pts)) {
      REQUIRE(s.size() == 3);
      IMat edges = {vec_sub(pts[s[1]], pts[s[0]]),
                    vec_sub(pts[s[2]], pts[s[0]])};
      Int d = det_int(edges);
      total += d < 0 ? Int(-d) : d;
    }
    CHECK(total == normalized_volume(poly2(pts), 2));
  }
}

TEST_CASE("mixed volume basics") {
  LatticePolytope sx = poly2({iv({0, 0}), iv({1, 0})});
  LatticePolytope sy = poly2({iv({0, 0}), iv({0, 1})});
  // inclusion-exclusion oracle: (Vol(square) - 0 - 0) / 2 = (2 - 0) / 2
  CHECK(mixed_volume({sx, sy}, 2) == 1);

  LatticePolytope tri = poly2({iv({0, 0}), iv({3, 0}), iv({2, 2})});
  CHECK(mixed_volume({tri, tri}, 2) == normalized_volume(tri, 2));

  LatticePolytope seg{{iv({1, 0}), iv({2, 4})},
                      sublattice_basis({iv({1, 4})})};
  CHECK(mixed_volume({seg}, 1) == 1);

  // a point argument kills the mixed volume in the standard convention
  LatticePolytope pt = poly2({iv({1, 1})});
  CHECK(mixed_volume({pt, tri}, 2) == 0);
  CHECK(mixed_volume({pt, pt}, 2) == 0);

  CHECK_THROWS_AS(mixed_volume({tri}, 2), Error);
}

TEST_CASE("mixed volume symmetry, multilinearity, diagonal") {
  SplitMix64 rng(1010);
  int done = 0;
  while (done < 200) {
    IMat a = random_polytope(rng, 3, 4);
    IMat b = random_polytope(rng, 3, 4);
    IMat c = random_polytope(rng, 2, 4);
    LatticePolytope P = poly2(hull_vertices(a));
    LatticePolytope Q = poly2(hull_vertices(b));
    LatticePolytope R = poly2(hull_vertices(c));
    Int pq = mixed_volume({P, Q}, 2);
    CHECK(pq == mixed_volume({Q, P}, 2));
    CHECK(pq >= 0);
    CHECK(mixed_volume({P, P}, 2) == normalized_volume(P, 2));
    // Minkowski linearity in the first slot
    IMat sum_pts;
    for (const IVec& x : P.vertices)
      for (const IVec& y : Q.vertices) sum_pts.push_back(vec_add(x, y));
    LatticePolytope PQ = poly2(hull_vertices(sum_pts));
    CHECK(mixed_volume({PQ, R}, 2) ==
          mixed_volume({P, R}, 2) + mixed_volume({Q, R}, 2));
    ++done;
  }
}

TEST_CASE("d coefficient on the worked example") {
  Cone sigma = make_cone(2, {iv({0, 1}), iv({2, -1})});
  FaceLattice fl =
      face_lattice(dual_cone(sigma), {iv({1, 0}), iv({1, 1}), iv({1, 2})});
  NewtonPolyhedron f =
      newton_polyhedron({iv({3, 0}), iv({2, 2})}, fl.full_face(), fl);
  CHECK(d_coefficient(iv({2, 1}), f) == 6);
  CHECK(d_coefficient(iv({4, -1}), f) == 6);

  const Face* ray = nullptr;
  for (const Face& face : fl.faces)
    if (face.dim == 1 && face.rays == IMat{iv({1, 0})}) ray = &face;
  REQUIRE(ray != nullptr);
  for (long d = 1; d <= 4; ++d) {
    NewtonPolyhedron p = newton_polyhedron({IVec{Int(d), Int(0)}}, *ray, fl);
    CHECK(d_coefficient(iv({1, 0}), p) == d);
  }
}

TEST_CASE("k coefficient conventions") {
  // lattice of rank 1 along the facet directions of the cusp example
  SublatticeBasis dir = sublattice_basis({iv({-1, 2})});
  LatticePolytope point{{iv({1, 0})}, dir};
  LatticePolytope edge_f{{iv({3, 0}), iv({2, 2})}, dir};

  KResult paper = k_coefficient(2, 2, {point, edge_f},
                                VolumeConvention::PaperExample);
  CHECK(paper.value == 1);  // the published value of the worked example
  KResult strict =
      k_coefficient(2, 2, {point, edge_f}, VolumeConvention::Strict);
  CHECK(strict.value == 0);  // standard convention control

  // dim Delta - 1 = 0: the zero-dimensional convention
  CHECK(k_coefficient(1, 1, {point}, VolumeConvention::Strict).value == 1);

  // m = 1, composition (1): the lattice length of the primitive segment
  KResult len = k_coefficient(2, 1, {edge_f}, VolumeConvention::Strict);
  CHECK(len.value == 1);  // gcd oracle: the edge direction (-1,2) is primitive

  // empty composition sum is flagged
  KResult none = k_coefficient(2, 3, {point, point, edge_f},
                               VolumeConvention::Strict);
  CHECK(none.no_admissible);
  CHECK(none.value == 0);
}

TEST_SUITE_END();
