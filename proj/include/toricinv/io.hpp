#pragma once

// Problem files, task execution, and structured report emission. A report
// is built once as ordered JSON; the text rendering reads the same values,
// so the two outputs cannot disagree. Reports are byte-deterministic for a
// fixed (problem, seed, mode).

#include <json.hpp>

#include <iostream>
#include <sstream>

#include "toricinv/invariants.hpp"
#include "toricinv/toric_surface.hpp"

namespace toricinv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "toricinv";
inline constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

inline Json to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Json to_json(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return to_json(Int(c.get_num()));
  return Json(c.get_str());
}

inline Json to_json(const IVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const IMat& m) {
  Json a = Json::array();
  for (const IVec& v : m) a.push_back(to_json(v));
  return a;
}

inline Json to_json(const QVec& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(to_json(x));
  return a;
}

// ---------------------------------------------------------------------------
// Varieties
// ---------------------------------------------------------------------------

struct VarietyHandle {
  ToricVarietyData X;
  std::optional<SurfaceData> surface;
  Json description;
};

inline Json face_json(const Face& f) {
  Json j;
  j["id"] = f.id;
  j["dim"] = f.dim;
  j["rays"] = to_json(f.rays);
  Json gens = Json::array();
  for (int g : f.gen_ids) gens.push_back(g + 1);  // 1-based like z_i
  j["generators_on_face"] = gens;
  return j;
}

inline VarietyHandle variety_surface_handle(const Int& p, const Int& q) {
  VarietyHandle h;
  SurfaceData s = semigroup_generators(p, q);
  h.X = make_surface_variety(s);
  h.surface = s;
  Json j;
  j["kind"] = "surface";
  j["p"] = to_json(p);
  j["q"] = to_json(q);
  j["ambient_dim"] = s.ambient_dim;
  Json digits = Json::array();
  for (const Int& a : s.hj_digits) digits.push_back(to_json(a));
  j["hj_digits"] = digits;
  j["semigroup_generators"] = to_json(s.generators);
  j["determinantal"] = s.determinantal;
  Json faces = Json::array();
  for (const Face& f : h.X.faces.faces) faces.push_back(face_json(f));
  j["faces"] = faces;
  h.description = std::move(j);
  return h;
}

inline VarietyHandle variety_affine_handle(int n) {
  VarietyHandle h;
  h.X = variety_orthant(n);
  if (n == 2) h.surface = semigroup_generators(1, 0);
  Json j;
  j["kind"] = "affine_space";
  j["n"] = n;
  Json faces = Json::array();
  for (const Face& f : h.X.faces.faces) faces.push_back(face_json(f));
  j["faces"] = faces;
  h.description = std::move(j);
  return h;
}

inline VarietyHandle variety_general_handle(const IMat& sigma_rays,
                                            const IMat& generators) {
  VarietyHandle h;
  Cone sigma{sigma_rays.empty() ? 0 : static_cast<int>(sigma_rays[0].size()),
             sigma_rays};
  h.X = variety_from_cone(sigma, generators, /*isolated=*/false);
  Json j;
  j["kind"] = "general";
  j["sigma_rays"] = to_json(h.X.sigma.rays);
  j["semigroup_generators"] = to_json(generators);
  Json faces = Json::array();
  for (const Face& f : h.X.faces.faces) faces.push_back(face_json(f));
  j["faces"] = faces;
  h.description = std::move(j);
  return h;
}

// ---------------------------------------------------------------------------
// Task requests
// ---------------------------------------------------------------------------

struct TaskDefaults {
  VolumeConvention mode = VolumeConvention::PaperExample;
  uint64_t seed = 42;
  int trials = 64;
  bool sketch = false;
};

struct TaskRequest {
  std::string kind;
  std::string f_text;
  std::vector<std::string> g_texts;         // components g_1..g_{k-1}
  std::vector<std::string> deform_f_texts;  // h_j
  std::vector<std::string> deform_g_texts;  // l_i
  std::optional<VolumeConvention> mode;
  std::optional<uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::map<int, Int>> eu_faces;
  std::optional<Int> eu_origin_override;
  std::vector<Rat> sample_values;  // per-parameter samples for family tasks
};

struct TaskOutcome {
  Json json;
  std::vector<std::string> text;
  int exit_code = 0;
};

namespace detail {

inline AmbientPoly parse_for(const VarietyHandle& vh, const std::string& text,
                             const std::string& role) {
  AmbientPoly p =
      parse_polynomial(text, static_cast<int>(vh.X.generators.size()));
  if (p.zero())
    throw Error("ZeroPolynomial", "polynomial '" + role + "' is zero");
  return p;
}

inline LatticePolynomial lattice_for(const VarietyHandle& vh,
                                     const std::string& text,
                                     const std::string& role) {
  LatticePolynomial l = to_lattice_polynomial(parse_for(vh, text, role),
                                              vh.X.generators);
  if (l.zero())
    throw Error("ZeroPolynomial",
                "polynomial '" + role + "' vanishes on the variety");
  return l;
}

inline EulerTable resolve_eu(const VarietyHandle& vh, const TaskRequest& req,
                             std::vector<std::string>& assumptions) {
  EulerTable eu;
  if (vh.X.isolated_singularity) {
    eu = EulerTable::ones(vh.X);
    assumptions.push_back(
        "euler-table: 1 on positive-dimensional strata (isolated singularity)");
  }
  if (req.eu_faces) {
    for (const auto& [id, v] : *req.eu_faces) eu.values[id] = v;
    assumptions.push_back("euler-table: user-supplied values merged");
  }
  if (!vh.X.isolated_singularity && !req.eu_faces)
    assumptions.push_back(
        "euler-table: required (variety not declared isolated)");
  return eu;
}

inline Json report_json(const InvariantReport& rep) {
  Json j;
  j["mode"] = to_string(rep.mode);
  Json faces = Json::array();
  for (const FaceTerm& t : rep.terms) {
    Json ft;
    ft["face"] = t.face_id;
    ft["dim"] = t.dim;
    ft["m"] = t.m;
    ft["sign"] = t.sign;
    ft["volume_sum"] = to_json(t.volume_sum);
    ft["eu"] = to_json(t.eu);
    ft["contribution"] = to_json(t.contribution);
    faces.push_back(std::move(ft));
  }
  j["faces"] = faces;
  j["skipped_faces"] = rep.skipped_faces;
  Json assum = Json::array();
  for (const std::string& a : rep.assumptions) assum.push_back(a);
  j["assumptions"] = assum;
  j["total"] = to_json(rep.total);
  return j;
}

inline void render_report_text(const Json& rj, std::vector<std::string>& out) {
  out.push_back("mode: " + rj["mode"].get<std::string>());
  out.push_back("face table:");
  for (const Json& ft : rj["faces"]) {
    std::ostringstream os;
    os << "  face " << ft["face"] << " (dim " << ft["dim"] << ", m "
       << ft["m"] << "): sign " << ft["sign"] << ", volume " << ft["volume_sum"]
       << ", eu " << ft["eu"] << ", contribution " << ft["contribution"];
    out.push_back(os.str());
  }
  if (!rj["skipped_faces"].empty()) {
    std::ostringstream os;
    os << "skipped faces (dim < m): " << rj["skipped_faces"].dump();
    out.push_back(os.str());
  }
}

inline Json heuristic_json(const HeuristicVerdict& v) {
  Json j;
  j["seed"] = v.seed;
  j["trials"] = v.trials;
  j["verdict"] = v.witness_found ? "DegenerateWitness" : "NoWitnessFound";
  if (v.witness_found) {
    Json w;
    w["face"] = v.witness.face_id;
    w["u"] = to_json(v.witness.u_local);
    w["point"] = to_json(v.witness.point);
    w["subsystem"] = v.witness.subsystem;
    j["witness"] = std::move(w);
  }
  return j;
}

/// Runs the non-degeneracy heuristic on the tuple and attaches the verdict.
/// A found witness marks the outcome as a failed hypothesis (exit 2).
inline HeuristicVerdict attach_heuristic(const VarietyHandle& vh,
                                         const std::vector<LatticePolynomial>& tuple,
                                         uint64_t seed, int trials,
                                         TaskOutcome& out) {
  CompleteIntersectionData ci;
  ci.components = tuple;
  ci.whitney_assertion = true;
  HeuristicVerdict v = nondegeneracy_heuristic(vh.X, ci, trials, seed);
  out.json["nondegeneracy"] = heuristic_json(v);
  out.text.push_back("nondegeneracy heuristic: " + v.summary() +
                     " (seed " + std::to_string(seed) + ", trials " +
                     std::to_string(trials) + ")");
  if (v.witness_found) out.exit_code = 2;
  return v;
}

/// ASCII sketch of the support and Newton-polygon vertices (d = 2 only).
inline std::vector<std::string> sketch_polygon(const VarietyHandle& vh,
                                               const LatticePolynomial& f) {
  std::vector<std::string> lines;
  if (vh.X.d != 2) return lines;
  const Face& full = vh.X.faces.full_face();
  NewtonPolyhedron np = newton_polyhedron(f.support(), full, vh.X.faces);
  long maxx = 1, maxy = 1;
  for (const auto& [p, c] : f.terms) {
    maxx = std::max(maxx, p[0].get_si());
    maxy = std::max(maxy, p[1].get_si());
  }
  maxx = std::min(maxx + 1, 40L);
  maxy = std::min(maxy + 1, 24L);
  std::vector<std::string> grid(maxy + 1, std::string(maxx + 1, '.'));
  auto plot = [&](const IVec& p, char ch) {
    long x = p[0].get_si(), y = p[1].get_si();
    if (x >= 0 && x <= maxx && y >= 0 && y <= maxy) grid[y][x] = ch;
  };
  plot(iv({0, 0}), 'o');
  for (const auto& [p, c] : f.terms) plot(p, '*');
  for (const IVec& v : np.vertices) plot(v, 'V');
  for (long y = maxy; y >= 0; --y) lines.push_back(grid[y]);
  lines.push_back("('V' polygon vertex, '*' support, 'o' origin)");
  return lines;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Task runner
// ---------------------------------------------------------------------------

inline TaskOutcome run_task(const VarietyHandle& vh, const TaskRequest& req,
                            const TaskDefaults& defaults) {
  TaskOutcome out;
  VolumeConvention mode = req.mode.value_or(defaults.mode);
  uint64_t seed = req.seed.value_or(defaults.seed);
  int trials = req.trials.value_or(defaults.trials);
  out.json["kind"] = req.kind;
  out.json["seed"] = seed;
  out.text.push_back("task: " + req.kind);

  auto need_f = [&]() -> LatticePolynomial {
    if (req.f_text.empty()) throw Error("BadInput", "task needs --f");
    return detail::lattice_for(vh, req.f_text, "f");
  };
  auto need_g1 = [&]() -> LatticePolynomial {
    if (req.g_texts.size() != 1)
      throw Error("BadInput", "task needs exactly one --g");
    return detail::lattice_for(vh, req.g_texts[0], "g");
  };
  auto surface_prepolar = [&](std::vector<std::string>& assumptions)
      -> std::optional<bool> {
    if (!vh.surface || req.g_texts.size() != 1) {
      assumptions.push_back("prepolar: asserted (no surface criterion)");
      return std::nullopt;
    }
    AmbientPoly ga = detail::parse_for(vh, req.g_texts[0], "g");
    AmbientPoly fa = detail::parse_for(vh, req.f_text, "f");
    PrepolarResult pr = is_prepolar(ga, fa, *vh.surface);
    assumptions.push_back("prepolar: surface criterion -> " + pr.reason);
    return pr.prepolar;
  };

  if (req.kind == "brasselet") {
    LatticePolynomial f = need_f();
    std::vector<std::string> assumptions;
    EulerTable eu = detail::resolve_eu(vh, req, assumptions);
    detail::attach_heuristic(vh, {f}, seed, trials, out);
    InvariantReport rep = brasselet_hypersurface(vh.X, f, eu, mode);
    rep.assumptions.insert(rep.assumptions.end(), assumptions.begin(),
                           assumptions.end());
    out.json["report"] = detail::report_json(rep);
    out.json["B"] = to_json(rep.total);
    detail::render_report_text(out.json["report"], out.text);
    if (defaults.sketch)
      for (const std::string& l : detail::sketch_polygon(vh, f))
        out.text.push_back(l);
    out.text.push_back("B = " + to_string(rep.total));
    return out;
  }

  if (req.kind == "brasselet-ci") {
    LatticePolynomial f = need_f();
    if (req.g_texts.empty()) throw Error("BadInput", "brasselet-ci needs --g");
    CompleteIntersectionData ci;
    for (size_t i = 0; i < req.g_texts.size(); ++i)
      ci.components.push_back(detail::lattice_for(
          vh, req.g_texts[i], "g" + std::to_string(i + 1)));
    ci.components.push_back(f);
    ci.whitney_assertion = true;
    std::vector<std::string> assumptions;
    EulerTable eu = detail::resolve_eu(vh, req, assumptions);
    assumptions.push_back(
        "euler-table interpreted on the strata of X^g (isolated X^g asserted)");
    detail::attach_heuristic(vh, ci.components, seed, trials, out);
    InvariantReport rep = brasselet_ci(vh.X, ci, eu, mode);
    rep.assumptions.insert(rep.assumptions.end(), assumptions.begin(),
                           assumptions.end());
    out.json["report"] = detail::report_json(rep);
    out.json["B_Xg"] = to_json(rep.total);
    detail::render_report_text(out.json["report"], out.text);
    out.text.push_back("B^g = " + to_string(rep.total));
    return out;
  }

  if (req.kind == "eu-origin") {
    std::vector<std::string> assumptions;
    EulerTable eu = detail::resolve_eu(vh, req, assumptions);
    EuOriginResult res = euler_obstruction_origin(vh.X, eu, seed);
    Json cert = Json::array();
    for (const std::string& c : res.certificate) cert.push_back(c);
    out.json["certificate"] = cert;
    out.json["Eu0"] = to_json(res.value);
    for (const std::string& c : res.certificate) out.text.push_back(c);
    out.text.push_back("Eu(0) = " + to_string(res.value));
    return out;
  }

  if (req.kind == "eu-f") {
    LatticePolynomial f = need_f();
    std::vector<std::string> assumptions;
    EulerTable eu = detail::resolve_eu(vh, req, assumptions);
    detail::attach_heuristic(vh, {f}, seed, trials, out);
    Int eu0;
    if (req.eu_origin_override) {
      eu0 = *req.eu_origin_override;
      assumptions.push_back("eu-origin: user-supplied " + to_string(eu0));
    } else {
      eu0 = euler_obstruction_origin(vh.X, eu, seed).value;
      assumptions.push_back("eu-origin: computed via generic linear form = " +
                            to_string(eu0));
    }
    if (vh.surface) {
      AmbientPoly fa = detail::parse_for(vh, req.f_text, "f");
      assumptions.push_back(
          std::string("isolated critical point (surface criterion): ") +
          (has_isolated_singularity(fa, *vh.surface) ? "yes" : "NO"));
    } else {
      assumptions.push_back("isolated critical point: asserted");
    }
    InvariantReport rep = brasselet_hypersurface(vh.X, f, eu, mode);
    rep.assumptions.insert(rep.assumptions.end(), assumptions.begin(),
                           assumptions.end());
    Int euf = euler_obstruction_of_function(eu0, rep);
    out.json["report"] = detail::report_json(rep);
    out.json["Eu0"] = to_json(eu0);
    out.json["B"] = to_json(rep.total);
    out.json["Eu_f"] = to_json(euf);
    detail::render_report_text(out.json["report"], out.text);
    for (const std::string& a : assumptions) out.text.push_back(a);
    out.text.push_back("B = " + to_string(rep.total));
    out.text.push_back("Eu_f = " + to_string(euf));
    return out;
  }

  if (req.kind == "morse" || req.kind == "gsv") {
    LatticePolynomial f = need_f();
    LatticePolynomial g = need_g1();
    std::vector<std::string> assumptions;
    std::optional<bool> prepolar = surface_prepolar(assumptions);
    detail::attach_heuristic(vh, {g, f}, seed, trials, out);
    CompleteIntersectionData ci;
    ci.components = {g, f};
    ci.whitney_assertion = true;
    EulerTable eu = detail::resolve_eu(vh, req, assumptions);
    if (req.kind == "gsv") {
      // the GSV index weighs both sums with the constant function 1
      eu = EulerTable::ones(vh.X);
      assumptions.push_back("weights: constant constructible function 1");
    }
    InvariantReport bx = brasselet_hypersurface(vh.X, f, eu, mode);
    InvariantReport bxg = brasselet_ci_prepolar(vh.X, ci, eu, mode, prepolar);
    out.json["B_X"] = to_json(bx.total);
    out.json["B_Xg"] = to_json(bxg.total);
    Json assum = Json::array();
    for (const std::string& a : assumptions) assum.push_back(a);
    out.json["assumptions"] = assum;
    for (const std::string& a : assumptions) out.text.push_back(a);
    out.text.push_back("B on X = " + to_string(bx.total) + ", B on X^g = " +
                       to_string(bxg.total) + " (mode " +
                       std::string(to_string(mode)) + ")");
    if (req.kind == "morse") {
      MorseResult n = morse_number(bx, bxg, vh.X.d);
      out.json["morse"] = to_json(n.count);
      if (n.negative_warning) {
        out.json["warning"] = "negative Morse count: an assumption failed";
        out.text.push_back("warning: negative Morse count, an assumption failed");
      }
      out.text.push_back("n = " + to_string(n.count));
    } else {
      Int gsv = bx.total - bxg.total;
      out.json["gsv"] = to_json(gsv);
      out.text.push_back("GSV = " + to_string(gsv));
    }
    return out;
  }

  if (req.kind == "milnor") {
    if (!vh.description.contains("kind") ||
        vh.description["kind"] != "affine_space")
      throw Error("BadInput", "milnor numbers live on affine space (use --n)");
    LatticePolynomial f = need_f();
    detail::attach_heuristic(vh, {f}, seed, trials, out);
    MilnorResult res = milnor_number(vh.X, f);
    out.json["chi"] = to_json(res.chi);
    out.json["mu"] = to_json(res.mu);
    out.text.push_back("chi(Milnor fiber) = " + to_string(res.chi));
    out.text.push_back("mu = " + to_string(res.mu));
    return out;
  }

  if (req.kind == "bruce-roberts") {
    if (!vh.description.contains("kind") ||
        vh.description["kind"] != "affine_space")
      throw Error("BadInput", "bruce-roberts lives on affine space (use --n)");
    LatticePolynomial f = need_f();
    LatticePolynomial g = need_g1();
    detail::attach_heuristic(vh, {g, f}, seed, trials, out);
    BruceRobertsResult res = bruce_roberts(vh.X, f, g, seed);
    Json assum = Json::array();
    for (const std::string& a : res.assumptions) assum.push_back(a);
    out.json["assumptions"] = assum;
    out.json["mu_f"] = to_json(res.mu_f);
    out.json["Eu_Xg"] = to_json(res.eu_xg);
    out.json["Eu_f_Xg"] = to_json(res.eu_f_xg);
    out.json["mu_BR"] = to_json(res.mu_br);
    for (const std::string& a : res.assumptions) out.text.push_back(a);
    out.text.push_back("mu(f) = " + to_string(res.mu_f) + ", Eu_{X^g}(0) = " +
                       to_string(res.eu_xg) + ", Eu_{f,X^g}(0) = " +
                       to_string(res.eu_f_xg));
    out.text.push_back("mu_BR = " + to_string(res.mu_br));
    return out;
  }

  if (req.kind == "family") {
    if (req.f_text.empty()) throw Error("BadInput", "family needs --f");
    int nvars = static_cast<int>(vh.X.generators.size());
    ParamAmbientPoly fp = parse_polynomial_params(req.f_text, nvars);
    std::optional<ParamAmbientPoly> gp;
    if (!req.g_texts.empty()) {
      if (req.g_texts.size() != 1)
        throw Error("BadInput", "family supports one g");
      gp = parse_polynomial_params(req.g_texts[0], nvars);
    }
    auto split = [&](const ParamAmbientPoly& p, const char* role) {
      std::pair<LatticePolynomial, std::vector<Deformation>> r;
      AmbientPoly base;
      base.nvars = nvars;
      std::map<std::pair<long, long>, AmbientPoly> groups;
      for (const auto& [e, m] : p.terms)
        for (const auto& [st, c] : m) {
          if (st.first == 0 && st.second == 0) {
            base.add_term(e, c);
          } else {
            auto& gpoly = groups[st];
            gpoly.nvars = nvars;
            gpoly.add_term(e, c);
          }
        }
      if (base.zero())
        throw Error("ZeroPolynomial",
                    std::string(role) + " has no parameter-free part");
      r.first = to_lattice_polynomial(base, vh.X.generators);
      for (const auto& [st, poly] : groups) {
        Deformation d;
        d.h = to_lattice_polynomial(poly, vh.X.generators);
        if (d.h.zero()) continue;
        d.s_exp = st.first;
        d.t_exp = st.second;
        d.label = std::string(role) + "-term s^" + std::to_string(st.first) +
                  " t^" + std::to_string(st.second);
        r.second.push_back(std::move(d));
      }
      return r;
    };
    auto [f_base, f_defs] = split(fp, "f");
    std::optional<LatticePolynomial> g_base;
    std::vector<Deformation> g_defs;
    if (gp) {
      auto [gb, gd] = split(*gp, "g");
      g_base = gb;
      g_defs = gd;
    }
    for (size_t i = 0; i < req.deform_f_texts.size(); ++i) {
      Deformation d;
      d.h = detail::lattice_for(vh, req.deform_f_texts[i],
                                "h_" + std::to_string(i + 1));
      d.s_exp = 0;
      d.t_exp = 1;
      d.label = "h_" + std::to_string(i + 1);
      f_defs.push_back(std::move(d));
    }
    for (size_t i = 0; i < req.deform_g_texts.size(); ++i) {
      if (!g_base) throw Error("BadInput", "--l without --g");
      Deformation d;
      d.h = detail::lattice_for(vh, req.deform_g_texts[i],
                                "l_" + std::to_string(i + 1));
      d.s_exp = 1;
      d.t_exp = 0;
      d.label = "l_" + std::to_string(i + 1);
      g_defs.push_back(std::move(d));
    }

    std::vector<Rat> vals = req.sample_values;
    if (vals.empty()) vals = {Rat(0), Rat(1), Rat(-1), Rat(2)};
    std::vector<std::pair<Rat, Rat>> samples;
    bool need_s = g_base.has_value() &&
                  (!g_defs.empty() || (gp && gp->has_parameters()));
    if (need_s) {
      for (const Rat& s : vals)
        for (const Rat& t : vals) samples.emplace_back(s, t);
    } else {
      for (const Rat& t : vals) samples.emplace_back(Rat(0), t);
    }

    std::vector<LatticePolynomial> tuple;
    if (g_base) tuple.push_back(*g_base);
    tuple.push_back(f_base);
    detail::attach_heuristic(vh, tuple, seed, trials, out);

    FamilyReport rep = family_constancy_report(vh.X, f_base, g_base, f_defs,
                                               g_defs, samples, mode, seed);
    Json checks = Json::array();
    for (const std::string& c : rep.checks) checks.push_back(c);
    out.json["checks"] = checks;
    out.json["mode"] = to_string(rep.mode);
    out.json["eu_origin"] = to_json(rep.eu_origin);
    Json sj = Json::array();
    for (const FamilySample& s : rep.samples) {
      Json e;
      e["s"] = to_json(s.s);
      e["t"] = to_json(s.t);
      e["B_X"] = to_json(s.b_x);
      if (s.b_xg) e["B_Xg"] = to_json(*s.b_xg);
      if (s.morse) e["n"] = to_json(*s.morse);
      if (s.gsv) e["GSV"] = to_json(*s.gsv);
      e["Eu_f"] = to_json(s.eu_f);
      sj.push_back(std::move(e));
    }
    out.json["samples"] = sj;
    out.json["constant"] = rep.constant;
    for (const std::string& c : rep.checks) out.text.push_back(c);
    out.text.push_back("samples evaluated: " +
                       std::to_string(rep.samples.size()));
    const FamilySample& s0 = rep.samples.front();
    std::string line = "constant: B = " + to_string(s0.b_x);
    if (s0.b_xg) line += ", B^g = " + to_string(*s0.b_xg);
    if (s0.morse) line += ", n = " + to_string(*s0.morse);
    if (s0.gsv) line += ", GSV = " + to_string(*s0.gsv);
    line += ", Eu_f = " + to_string(s0.eu_f);
    out.text.push_back(line);
    return out;
  }

  if (req.kind == "surface-info") {
    if (!vh.surface) throw Error("BadInput", "surface-info needs a surface");
    const SurfaceData& s = *vh.surface;
    out.json["surface"] = vh.description;
    Json eqs = Json::array();
    std::vector<AmbientPoly> qs = quasimatrix_equations(s);
    for (const AmbientPoly& e : qs) eqs.push_back(format_polynomial(e));
    out.json["equations"] = eqs;
    Json orbits = Json::array();
    for (const OrbitDescription& o : orbit_decomposition(s, vh.X)) {
      Json oj;
      oj["face"] = o.face_id;
      oj["dim"] = o.dim;
      Json vars = Json::array();
      for (int v : o.nonzero_vars) vars.push_back("z" + std::to_string(v + 1));
      oj["nonzero_coordinates"] = vars;
      oj["exponents"] = to_json(o.exponents);
      orbits.push_back(std::move(oj));
    }
    out.json["orbits"] = orbits;
    out.text.push_back("surface p = " + to_string(s.p) + ", q = " +
                       to_string(s.q) + ", embedded in C^" +
                       std::to_string(s.ambient_dim));
    std::string digits = "hj digits:";
    for (const Int& a : s.hj_digits) digits += " " + to_string(a);
    out.text.push_back(digits);
    std::string gens = "generators:";
    for (const IVec& g : s.generators) gens += " " + to_string(g);
    out.text.push_back(gens);
    out.text.push_back(std::string("determinantal: ") +
                       (s.determinantal ? "yes" : "no"));
    out.text.push_back("equations (" + std::to_string(qs.size()) + "):");
    for (const AmbientPoly& e : qs)
      out.text.push_back("  " + format_polynomial(e));
    out.text.push_back("orbits:");
    for (const OrbitDescription& o : orbit_decomposition(s, vh.X)) {
      std::string l = "  face " + std::to_string(o.face_id) + " dim " +
                      std::to_string(o.dim) + ":";
      if (o.nonzero_vars.empty()) l += " fixed point";
      for (int v : o.nonzero_vars) l += " z" + std::to_string(v + 1);
      out.text.push_back(l);
    }
    return out;
  }

  if (req.kind == "check") {
    LatticePolynomial f = need_f();
    std::vector<LatticePolynomial> tuple;
    std::optional<AmbientPoly> ga;
    if (!req.g_texts.empty()) {
      if (req.g_texts.size() != 1) throw Error("BadInput", "check takes one g");
      ga = detail::parse_for(vh, req.g_texts[0], "g");
      tuple.push_back(to_lattice_polynomial(*ga, vh.X.generators));
    }
    tuple.push_back(f);
    HeuristicVerdict v = detail::attach_heuristic(vh, tuple, seed, trials, out);
    bool failed = v.witness_found;
    if (vh.surface) {
      AmbientPoly fa = detail::parse_for(vh, req.f_text, "f");
      const AmbientPoly& target = ga ? *ga : fa;
      bool iso = has_isolated_singularity(target, *vh.surface);
      out.json["isolated_singularity"] = iso;
      out.text.push_back(std::string("isolated singularity (") +
                         (ga ? "g" : "f") + "): " + (iso ? "yes" : "no"));
      if (!iso) failed = true;
      if (ga) {
        PrepolarResult pr = is_prepolar(*ga, fa, *vh.surface);
        out.json["prepolar"] = pr.prepolar;
        out.json["prepolar_reason"] = pr.reason;
        out.text.push_back("prepolar(g with respect to f): " +
                           std::string(pr.prepolar ? "yes" : "no") + " (" +
                           pr.reason + ")");
        if (!pr.prepolar) failed = true;
      }
    }
    out.json["ok"] = !failed;
    out.exit_code = failed ? 2 : 0;
    out.text.push_back(std::string("verdict = ") + (failed ? "FAILED" : "ok"));
    return out;
  }

  throw Error("BadInput", "unknown task kind: " + req.kind);
}

// ---------------------------------------------------------------------------
// Problem files
// ---------------------------------------------------------------------------

struct Problem {
  VarietyHandle variety;
  std::map<std::string, std::string> polynomials;
  std::vector<TaskRequest> tasks;
};

namespace detail {

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<int64_t>()));
  if (j.is_string()) {
    Rat r;
    if (r.set_str(j.get<std::string>(), 10) != 0)
      throw Error("ParseError", "bad rational: " + j.get<std::string>());
    r.canonicalize();
    return r;
  }
  throw Error("ParseError", "expected integer or rational string");
}

inline IMat imat_from_json(const Json& j) {
  IMat m;
  for (const Json& row : j) {
    IVec v;
    for (const Json& x : row) {
      Rat r = rat_from_json(x);
      if (r.get_den() != 1) throw Error("ParseError", "expected an integer");
      v.push_back(r.get_num());
    }
    m.push_back(std::move(v));
  }
  return m;
}

}  // namespace detail

inline Problem load_problem(const Json& j) {
  Problem p;
  if (!j.contains("variety")) throw Error("ParseError", "missing variety");
  const Json& v = j["variety"];
  if (v.contains("surface")) {
    Rat pr = detail::rat_from_json(v["surface"]["p"]);
    Rat qr = detail::rat_from_json(v["surface"]["q"]);
    p.variety = variety_surface_handle(pr.get_num(), qr.get_num());
  } else if (v.contains("affine_space")) {
    p.variety = variety_affine_handle(v["affine_space"]["n"].get<int>());
  } else if (v.contains("general")) {
    p.variety = variety_general_handle(
        detail::imat_from_json(v["general"]["sigma_rays"]),
        detail::imat_from_json(v["general"]["semigroup_generators"]));
  } else {
    throw Error("ParseError", "variety must be surface, affine_space or general");
  }
  if (j.contains("polynomials"))
    for (const auto& [name, text] : j["polynomials"].items())
      p.polynomials[name] = text.get<std::string>();

  auto resolve = [&](const Json& x) -> std::string {
    std::string s = x.get<std::string>();
    auto it = p.polynomials.find(s);
    return it == p.polynomials.end() ? s : it->second;
  };

  if (j.contains("tasks"))
    for (const Json& tj : j["tasks"]) {
      TaskRequest t;
      t.kind = tj.at("kind").get<std::string>();
      if (tj.contains("f")) t.f_text = resolve(tj["f"]);
      if (tj.contains("g")) {
        if (tj["g"].is_array())
          for (const Json& g : tj["g"]) t.g_texts.push_back(resolve(g));
        else
          t.g_texts.push_back(resolve(tj["g"]));
      }
      if (tj.contains("deform_f"))
        for (const Json& h : tj["deform_f"])
          t.deform_f_texts.push_back(resolve(h));
      if (tj.contains("deform_g"))
        for (const Json& l : tj["deform_g"])
          t.deform_g_texts.push_back(resolve(l));
      if (tj.contains("mode"))
        t.mode = volume_convention_from_string(tj["mode"].get<std::string>());
      if (tj.contains("seed")) t.seed = tj["seed"].get<uint64_t>();
      if (tj.contains("trials")) t.trials = tj["trials"].get<int>();
      if (tj.contains("samples")) {
        for (const Json& s : tj["samples"])
          t.sample_values.push_back(detail::rat_from_json(s));
      }
      if (tj.contains("eu")) {
        if (tj["eu"].contains("faces")) {
          std::map<int, Int> faces;
          for (const auto& [k, val] : tj["eu"]["faces"].items())
            faces[std::stoi(k)] = detail::rat_from_json(val).get_num();
          t.eu_faces = faces;
        }
        if (tj["eu"].contains("origin"))
          t.eu_origin_override =
              detail::rat_from_json(tj["eu"]["origin"]).get_num();
      }
      p.tasks.push_back(std::move(t));
    }
  return p;
}

// ---------------------------------------------------------------------------
// Whole-run reports
// ---------------------------------------------------------------------------

struct RunResult {
  Json json;
  std::string text;
  int exit_code = 0;
};

inline RunResult run_tasks(const VarietyHandle& vh,
                           const std::vector<TaskRequest>& tasks,
                           const TaskDefaults& defaults) {
  RunResult r;
  r.json["tool"] = kToolName;
  r.json["version"] = kToolVersion;
  r.json["seed"] = defaults.seed;
  r.json["mode"] = to_string(defaults.mode);
  r.json["variety"] = vh.description;
  Json tj = Json::array();
  std::ostringstream text;
  text << kToolName << " " << kToolVersion << "\n";
  text << "variety: " << vh.description["kind"].get<std::string>();
  if (vh.surface)
    text << " (p = " << to_string(vh.surface->p)
         << ", q = " << to_string(vh.surface->q) << ")";
  if (vh.description["kind"] == "affine_space")
    text << " n = " << vh.description["n"].get<int>();
  text << "\n";
  for (const TaskRequest& t : tasks) {
    TaskOutcome out = run_task(vh, t, defaults);
    tj.push_back(out.json);
    text << "\n";
    for (const std::string& l : out.text) text << l << "\n";
    r.exit_code = std::max(r.exit_code, out.exit_code);
  }
  r.json["tasks"] = tj;
  r.text = text.str();
  return r;
}

}  // namespace toricinv
