// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. All comparisons are exact integer equality.
// Usage: toricinv_acceptance [n]   (run criterion n, or all when omitted)

#include <functional>
#include <iostream>
#include <sstream>

#include "toricinv/cli.hpp"

using namespace toricinv;

namespace {

int failures = 0;
std::ostringstream detail_log;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    detail_log << "    failed: " << what << "\n";
  }
}

template <typename A, typename B>
void expect_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == b)) {
    ++failures;
    detail_log << "    failed: " << what << " (got " << a << ", want " << b
           << ")\n";
  }
}

ToricVarietyData quadric() {
  return make_surface_variety(semigroup_generators(2, 1));
}

LatticePolynomial cusp_f() {
  return lattice_poly({{iv({2, 2}), 1}, {iv({3, 0}), -1}});
}

LatticePolynomial cusp_g() {
  return lattice_poly({{iv({1, 0}), 1}, {iv({2, 4}), -1}});
}

std::pair<ToricVarietyData, LatticePolynomial> rnc_instance(long n, long d) {
  SurfaceData s = semigroup_generators(n, 1);
  ToricVarietyData X = make_surface_variety(s);
  LatticePolynomial f;
  f.add_term(vec_scale(d, s.generators.front()), Rat(1));
  f.add_term(vec_scale(d, s.generators.back()), Rat(1));
  return {X, f};
}

std::string cli_out(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  int c = run_command(args, out, err);
  if (code) *code = c;
  return out.str();
}

// --------------------------------------------------------------------------

void criterion1() {
  ToricVarietyData X = quadric();
  EulerTable ones = EulerTable::ones(X);
  CompleteIntersectionData ci;
  ci.components = {cusp_g(), cusp_f()};
  ci.whitney_assertion = true;

  InvariantReport bx =
      brasselet_hypersurface(X, cusp_f(), ones, VolumeConvention::PaperExample);
  expect_eq(bx.total, Int(-3), "B_{f,X}");

  InvariantReport bxg =
      brasselet_ci(X, ci, ones, VolumeConvention::PaperExample);
  expect_eq(bxg.total, Int(12), "B_{f,X^g}");

  expect_eq(morse_number(bx, bxg, X.d).count, Int(15), "Morse count");
  expect_eq(gsv_index(X, ci, VolumeConvention::PaperExample).value, Int(-15),
            "GSV index");

  FaceInvariantData fid = face_invariant_data(
      X, ci, X.faces.full_face(), VolumeConvention::PaperExample);
  expect_eq(fid.facets.size(), size_t(2), "two compact facets");
  if (fid.facets.size() == 2) {
    expect(*fid.facets[0].gamma.normal_local == iv({2, 1}), "u_1 = (2,1)");
    expect(*fid.facets[1].gamma.normal_local == iv({4, -1}), "u_2 = (4,-1)");
    expect_eq(fid.facets[0].d, Int(6), "d_1");
    expect_eq(fid.facets[1].d, Int(6), "d_2");
    expect_eq(fid.facets[0].K, Int(1), "K_1");
    expect_eq(fid.facets[1].K, Int(1), "K_2");
  }
}

void criterion2() {
  for (long n = 2; n <= 5; ++n)
    for (long d = 1; d <= 3; ++d) {
      auto [X, f] = rnc_instance(n, d);
      EulerTable ones = EulerTable::ones(X);
      InvariantReport b =
          brasselet_hypersurface(X, f, ones, VolumeConvention::PaperExample);
      expect_eq(b.total, Int(2 * d - n * d * d),
                "B for (n,d)=(" + std::to_string(n) + "," + std::to_string(d) +
                    ")");
      Int eu0 = euler_obstruction_origin(X, ones, 23).value;
      expect_eq(euler_obstruction_of_function(eu0, b),
                Int(3 - (n + 1) - 2 * d + n * d * d),
                "Eu_f for (n,d)=(" + std::to_string(n) + "," +
                    std::to_string(d) + ")");
    }
}

void criterion3() {
  for (long n = 2; n <= 6; ++n) {
    SurfaceData s = semigroup_generators(n, 1);
    ToricVarietyData X = make_surface_variety(s);
    Int first;
    for (uint64_t seed : {101u, 202u, 303u, 404u}) {
      EuOriginResult r = euler_obstruction_origin(X, EulerTable::ones(X), seed);
      if (seed == 101u) first = r.value;
      expect_eq(r.value, Int(3 - (n + 1)),
                "Eu(0) on the degree-" + std::to_string(n) + " cone");
      expect_eq(r.value, first, "seed independence");
    }
  }
}

void criterion4() {
  ToricVarietyData c2 = variety_orthant(2);
  expect_eq(
      milnor_number(c2, lattice_poly({{iv({2, 0}), 1}, {iv({0, 2}), 1}})).mu,
      Int(1), "milnor(x^2+y^2)");
  expect_eq(
      milnor_number(c2, lattice_poly({{iv({3, 0}), 1}, {iv({0, 2}), 1}})).mu,
      Int(2), "milnor(x^3+y^2)");
  expect_eq(milnor_number(c2, lattice_poly({{iv({1, 0}), 1}})).mu, Int(0),
            "milnor(x)");
}

void criterion5() {
  ToricVarietyData X = quadric();
  LatticePolynomial f = cusp_f(), g = cusp_g();
  LatticePolynomial h = lattice_poly({{iv({4, 4}), -1}});
  LatticePolynomial l = lattice_poly({{iv({3, 6}), 1}});

  expect(newton_preserving_check(f, h, X).ok, "newton_preserving_check(f, h)");
  expect(newton_preserving_check(g, l, X).ok, "newton_preserving_check(g, l)");

  std::vector<Deformation> hs = {{h, 0, 1, "h"}};
  std::vector<Deformation> ls = {{l, 1, 0, "l"}};
  std::vector<std::pair<Rat, Rat>> samples;
  for (long s : {0L, 1L, -1L, 2L})
    for (long t : {0L, 1L, -1L, 2L}) samples.emplace_back(Rat(s), Rat(t));
  FamilyReport rep = family_constancy_report(
      X, f, g, hs, ls, samples, VolumeConvention::PaperExample, 31);
  expect(rep.constant, "family constancy");
  expect_eq(rep.samples.size(), size_t(16), "sample grid");
  Int eu_f_first = rep.samples.empty() ? Int(0) : rep.samples[0].eu_f;
  for (const FamilySample& s : rep.samples) {
    expect_eq(s.b_x, Int(-3), "B across samples");
    expect(s.b_xg && *s.b_xg == 12, "B^g across samples");
    expect(s.morse && *s.morse == 15, "n across samples");
    expect(s.gsv && *s.gsv == -15, "GSV across samples");
    expect_eq(s.eu_f, eu_f_first, "Eu_f constant across samples");
  }
}

void criterion6() {
  // mixed-volume symmetry / multilinearity / diagonal on 200 random pairs
  {
    SplitMix64 rng(6001);
    SublatticeBasis z2 = sublattice_basis({iv({1, 0}), iv({0, 1})});
    auto rand_poly = [&](int npts) {
      IMat pts;
      for (int i = 0; i < npts; ++i)
        pts.push_back({rng.range(0, 5), rng.range(0, 5)});
      return LatticePolytope{hull_vertices(pts), z2};
    };
    for (int it = 0; it < 200; ++it) {
      LatticePolytope P = rand_poly(3), Q = rand_poly(3), R = rand_poly(2);
      Int pq = mixed_volume({P, Q}, 2);
      expect_eq(pq, mixed_volume({Q, P}, 2), "MV symmetry");
      expect(pq >= 0, "MV nonnegative");
      expect_eq(mixed_volume({P, P}, 2), normalized_volume(P, 2),
                "MV diagonal");
      IMat sum_pts;
      for (const IVec& x : P.vertices)
        for (const IVec& y : Q.vertices) sum_pts.push_back(vec_add(x, y));
      LatticePolytope PQ{hull_vertices(sum_pts), z2};
      expect_eq(mixed_volume({PQ, R}, 2),
                mixed_volume({P, R}, 2) + mixed_volume({Q, R}, 2),
                "MV multilinearity");
    }
  }

  // k = 1 identity d*K = Vol_Z(Gamma) on all regression faces, strict mode
  {
    std::vector<std::pair<ToricVarietyData, LatticePolynomial>> instances;
    instances.emplace_back(quadric(), cusp_f());
    instances.emplace_back(quadric(), cusp_g());
    for (long n = 2; n <= 5; ++n)
      for (long d = 1; d <= 3; ++d) instances.push_back(rnc_instance(n, d));
    ToricVarietyData c2 = variety_orthant(2);
    instances.emplace_back(c2,
                           lattice_poly({{iv({2, 0}), 1}, {iv({0, 2}), 1}}));
    instances.emplace_back(c2,
                           lattice_poly({{iv({3, 0}), 1}, {iv({0, 2}), 1}}));
    for (auto& [X, f] : instances) {
      CompleteIntersectionData ci;
      ci.components = {f};
      for (const Face& delta : X.faces.faces) {
        if (delta.dim < 1) continue;
        bool meets = false;
        for (const auto& [p, c] : f.terms)
          if (X.faces.member(p, delta)) meets = true;
        if (!meets) continue;
        FaceInvariantData fid =
            face_invariant_data(X, ci, delta, VolumeConvention::Strict);
        for (const FacetInvariants& fi : fid.facets) {
          IMat pts = fi.gamma.vertices;
          pts.push_back(IVec(X.d, 0));
          expect_eq(fi.d * fi.K,
                    normalized_volume({pts, delta.gen_lattice}, delta.dim),
                    "d*K = Vol identity");
        }
      }
    }
  }

  // dual-cone involution and restriction identity on 100 random supports
  {
    SplitMix64 rng(6002);
    for (int it = 0; it < 100; ++it) {
      int d = 2 + static_cast<int>(rng.next() % 2);
      IMat rays;
      while (true) {
        rays.clear();
        for (int i = 0; i < d + 1; ++i) {
          IVec v(d);
          v[0] = rng.range(1, 5);
          for (int j = 1; j < d; ++j) v[j] = rng.range(-4, 4);
          rays.push_back(v);
        }
        if (rank_int(rays) == d) break;
      }
      Cone c = make_cone(d, rays);
      Cone cmin = dual_cone(dual_cone(c));
      expect(dual_cone(dual_cone(cmin)).rays == cmin.rays,
             "dual-cone involution");

      // random support inside the dual cone, restriction identity per face
      Cone cd = dual_cone(cmin);
      FaceLattice fl = face_lattice(cd, cd.rays);
      IMat support;
      for (int i = 0; i < 4; ++i) {
        IVec pt(d, 0);
        for (const IVec& r : cd.rays)
          pt = vec_add(pt, vec_scale(rng.range(0, 3), r));
        support.push_back(pt);
      }
      NewtonPolyhedron whole = newton_polyhedron(support, fl.full_face(), fl);
      for (const Face& delta : fl.faces) {
        if (delta.dim < 1 || delta.gen_lattice.rank != delta.dim) continue;
        IMat on_face;
        for (const IVec& v : support)
          if (fl.member(v, delta)) on_face.push_back(v);
        IMat whole_on_face;
        for (const IVec& v : whole.vertices)
          if (fl.member(v, delta)) whole_on_face.push_back(v);
        if (on_face.empty()) {
          expect(whole_on_face.empty(), "membership lemma");
          continue;
        }
        NewtonPolyhedron restricted = newton_polyhedron(on_face, delta, fl);
        expect(restricted.vertices == whole_on_face, "restriction identity");
      }
    }
  }

  // Hirzebruch-Jung identities, exhaustive for coprime 0 < q < p <= 50
  {
    for (long p = 2; p <= 50; ++p)
      for (long q = 1; q < p; ++q) {
        long a = p, b = q;
        while (b) {
          long t = a % b;
          a = b;
          b = t;
        }
        if (a != 1) continue;
        std::vector<Int> digits = hj_expansion(p, q);
        expect(hj_evaluate(digits) == Rat(Int(p), Int(p - q)),
               "HJ identity p=" + std::to_string(p));
        SurfaceData s = semigroup_generators(p, q);
        expect(s.generators.back() == IVec{Int(q), Int(p)},
               "terminal generator (q,p)");
      }
  }

  // quasiminor vanishing under the torus parametrization for p <= 20
  {
    for (long p = 2; p <= 20; ++p)
      for (long q = 1; q < p; ++q) {
        long a = p, b = q;
        while (b) {
          long t = a % b;
          a = b;
          b = t;
        }
        if (a != 1) continue;
        SurfaceData s = semigroup_generators(p, q);
        for (const AmbientPoly& bin : quasimatrix_equations(s)) {
          expect(bin.terms.size() == 2, "binomial");
          auto it = bin.terms.begin();
          LatticePoint m1 = monomial_to_lattice(it->first, s.generators);
          ++it;
          LatticePoint m2 = monomial_to_lattice(it->first, s.generators);
          expect(m1 == m2, "quasiminor vanishes on the variety");
        }
      }
  }
}

void criterion7() {
  int code = 0;
  std::string paper = cli_out({"brasselet-ci", "--p", "2", "--q", "1", "--f",
                               "z2^2 - z1^3", "--g", "z1 - z3^2"},
                              &code);
  expect(code == 0, "paper-example run succeeds");
  expect(paper.find("B^g = 12") != std::string::npos, "paper-example value 12");
  expect(paper.find("mode: paper-example") != std::string::npos,
         "report names the paper-example mode");

  std::string strict =
      cli_out({"--mode", "strict", "brasselet-ci", "--p", "2", "--q", "1",
               "--f", "z2^2 - z1^3", "--g", "z1 - z3^2"},
              &code);
  expect(code == 0, "strict run succeeds");
  expect(strict.find("B^g = 6") != std::string::npos, "strict value 6");
  expect(strict.find("mode: strict") != std::string::npos,
         "report names the strict mode");
}

void criterion8() {
  const std::string problem = std::string(TORICINV_DOCS_DIR) + "/cusp.json";
  std::vector<std::vector<std::string>> runs = {
      {"--problem", problem, "--seed", "7", "--json"},
      {"--problem", problem, "--seed", "1234", "--json"},
      {"--mode", "strict", "--seed", "7", "--json", "brasselet-ci", "--p", "2",
       "--q", "1", "--f", "z2^2 - z1^3", "--g", "z1 - z3^2"},
      {"--seed", "7", "--json", "eu-origin", "--p", "4", "--q", "1"},
      {"--seed", "7", "--json", "milnor", "--f", "x^3 + y^2"},
      {"--seed", "7", "--json", "family", "--p", "2", "--q", "1", "--f",
       "z2^2 - z1^3", "--g", "z1 - z3^2", "--h", "-z1^2*z3^2", "--l", "z3^3"},
  };
  for (const auto& args : runs) {
    int c1 = 0, c2 = 0;
    std::string a = cli_out(args, &c1);
    std::string b = cli_out(args, &c2);
    expect(c1 == c2, "exit codes agree");
    expect(!a.empty() && a == b, "byte-identical JSON reports");
  }
}

struct Criterion {
  int id;
  const char* description;
  std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "cusp-on-quadric-cone regression (B, B^g, n, GSV, u_i, d_i, K_i)",
       criterion1},
      {2, "rational-normal-cone family: B = 2d-nd^2, Eu_f = 3-(n+1)-2d+nd^2",
       criterion2},
      {3, "Euler obstruction via generic linear forms, seed-independent",
       criterion3},
      {4, "Kouchnirenko spot checks: milnor 1, 2, 0", criterion4},
      {5, "family constancy across {0,1,-1,2}^2 samples", criterion5},
      {6, "property suites (mixed volume, d*K=Vol, duality, HJ, quasiminors)",
       criterion6},
      {7, "mode divergence documented: 12 (paper-example) vs 6 (strict)",
       criterion7},
      {8, "byte-identical JSON reports across runs with a fixed seed",
       criterion8},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int total_failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    failures = 0;
    detail_log.str("");
    try {
      c.run();
    } catch (const std::exception& e) {
      ++failures;
      detail_log << "    exception: " << e.what() << "\n";
    }
    std::cout << (failures == 0 ? "PASS" : "FAIL") << " criterion " << c.id
              << ": " << c.description << "\n";
    if (failures != 0) std::cout << detail_log.str();
    total_failures += failures;
  }
  return total_failures == 0 ? 0 : 1;
}
