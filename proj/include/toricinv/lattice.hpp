#pragma once

// Exact integer lattice layer: primitive vectors, sublattice bases in
// Hermite normal form, lattice indices, and coordinate changes. All volume
// computations downstream are normalized against bases produced here.

#include <utility>

#include "toricinv/matrix.hpp"

namespace toricinv {

/// A point of the character lattice M (ambient coordinates).
using LatticePoint = IVec;

/// A finitely generated sublattice of Z^d with its canonical (row Hermite
/// normal form) basis.
struct SublatticeBasis {
  int ambient_rank = 0;
  IMat basis;               // rank x ambient_rank, rows are basis vectors
  int rank = 0;
  Int index_in_saturation;  // product of elementary divisors, >= 1

  bool saturated() const { return index_in_saturation == 1; }
};

/// Splits v into (primitive direction, content): v = g * w with
/// gcd(w) = 1 and g > 0. Throws ZeroVector on v = 0.
inline std::pair<LatticePoint, Int> primitive_vector(const LatticePoint& v) {
  if (is_zero(v)) throw Error("ZeroVector", "primitive_vector of zero vector");
  Int g = content(v);
  LatticePoint w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = int_divexact(v[i], g);
  return {w, g};
}

inline LatticePoint primitive(const LatticePoint& v) {
  return primitive_vector(v).first;
}

/// Canonical basis of the integer span of the generators, with the index of
/// that span inside its saturation.
inline SublatticeBasis sublattice_basis(const IMat& generators) {
  if (generators.empty())
    throw Error("EmptyGenerators", "sublattice_basis needs generators");
  SublatticeBasis b;
  b.ambient_rank = static_cast<int>(generators[0].size());
  b.basis = hnf_rows(generators);
  b.rank = static_cast<int>(b.basis.size());
  b.index_in_saturation = minor_gcd_index(b.basis);
  return b;
}

/// Rank-0 sublattice of the given ambient rank (the lattice {0}).
inline SublatticeBasis trivial_sublattice(int ambient_rank) {
  SublatticeBasis b;
  b.ambient_rank = ambient_rank;
  b.rank = 0;
  b.index_in_saturation = 1;
  return b;
}

/// Integer coordinates of p in the basis b. Throws NotInSpan when p is
/// outside the rational span and NotInLattice when the rational coordinates
/// are fractional.
inline IVec express_in_basis(const LatticePoint& p, const SublatticeBasis& b) {
  // Solve c * basis = p, i.e. basis^T c = p.
  IMat bt(b.ambient_rank, IVec(b.rank, 0));
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.ambient_rank; ++j) bt[j][i] = b.basis[i][j];
  auto sol = solve_int(bt, p);
  if (!sol) throw Error("NotInSpan", "point outside the rational span");
  IVec c(b.rank);
  for (int i = 0; i < b.rank; ++i) {
    Rat x = (*sol)[i];
    x.canonicalize();
    if (x.get_den() != 1)
      throw Error("NotInLattice", "point has fractional coordinates in basis");
    c[i] = x.get_num();
  }
  return c;
}

inline bool in_span(const LatticePoint& p, const SublatticeBasis& b) {
  IMat bt(b.ambient_rank, IVec(b.rank, 0));
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.ambient_rank; ++j) bt[j][i] = b.basis[i][j];
  return solve_int(bt, p).has_value();
}

/// Inverse of express_in_basis: the ambient point with the given coordinates.
inline LatticePoint lift_from_basis(const IVec& c, const SublatticeBasis& b) {
  LatticePoint p(b.ambient_rank, 0);
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.ambient_rank; ++j) p[j] += c[i] * b.basis[i][j];
  return p;
}

/// Rational coordinates of p in the basis (used for cone rays, which need
/// not lie in the sublattice). Throws NotInSpan.
inline QVec express_in_basis_rat(const LatticePoint& p,
                                 const SublatticeBasis& b) {
  IMat bt(b.ambient_rank, IVec(b.rank, 0));
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.ambient_rank; ++j) bt[j][i] = b.basis[i][j];
  auto sol = solve_int(bt, p);
  if (!sol) throw Error("NotInSpan", "point outside the rational span");
  // Verify: the solver zero-fills free variables, so check consistency.
  QVec c(sol->begin(), sol->begin() + b.rank);
  for (int j = 0; j < b.ambient_rank; ++j) {
    Rat s = 0;
    for (int i = 0; i < b.rank; ++i) s += c[i] * Rat(b.basis[i][j]);
    if (s != Rat(p[j])) throw Error("NotInSpan", "inconsistent span solve");
  }
  return c;
}

/// Primitive integer vector along the direction of a rational vector.
inline IVec primitive_from_rat(const QVec& q) {
  Int l = 1;
  for (const Rat& x : q) {
    Rat c = x;
    c.canonicalize();
    l = int_lcm(l, c.get_den());
  }
  IVec v(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    Rat c = q[i] * Rat(l);
    c.canonicalize();
    v[i] = c.get_num();
  }
  return primitive(v);
}

}  // namespace toricinv
