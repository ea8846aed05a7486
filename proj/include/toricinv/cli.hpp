#pragma once

// Command-line front end. Subcommands mirror the task kinds; inputs come
// either from inline flags (--p/--q/--n, --f, --g, ...) or from a problem
// file. Running with only --problem executes the file's whole task list.
//
// Exit codes: 0 success, 1 input or usage errors, 2 failed hypothesis
// checks (NotPrepolar, ConditionViolated, DegenerateWitness, NotConstant,
// GenericityFailure).

#include <CLI11.hpp>

#include <fstream>

#include "toricinv/io.hpp"

namespace toricinv {

namespace detail {

inline bool is_hypothesis_failure(const std::string& code) {
  return code == "NotPrepolar" || code == "ConditionViolated" ||
         code == "DegenerateWitness" || code == "NotConstant" ||
         code == "GenericityFailure";
}

inline std::vector<Rat> parse_samples_flag(const std::string& s) {
  std::vector<Rat> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    if (cur.empty()) continue;
    Rat r;
    if (r.set_str(cur, 10) != 0)
      throw Error("ParseError", "bad sample value: " + cur);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

}  // namespace detail

/// Runs one CLI invocation; everything the user sees goes to `out` (reports)
/// or `err` (errors). Returns the process exit code.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"exact singularity invariants of polynomial functions on "
               "affine toric varieties, from Newton-polygon data"};
  app.require_subcommand(0, 1);
  app.set_help_flag("--help", "print help");  // keep -h free for --h below

  std::string problem_path;
  std::string mode_str = "paper-example";
  uint64_t seed = 42;
  int trials = 64;
  bool json_out = false, text_out = false, sketch = false;
  app.add_option("--problem", problem_path, "problem file (JSON)");
  app.add_option("--mode", mode_str, "strict | paper-example")
      ->check(CLI::IsMember({"strict", "paper-example"}));
  app.add_option("--seed", seed, "seed for all randomized procedures");
  app.add_option("--trials", trials, "non-degeneracy heuristic trials");
  app.add_flag("--json", json_out, "emit the JSON report");
  app.add_flag("--text", text_out, "emit the text report (default)");
  app.add_flag("--sketch", sketch, "ASCII Newton-polygon sketch (surfaces)");

  struct SubArgs {
    std::string p, q;
    int n = 0;
    std::string f;
    std::vector<std::string> g, h, l;
    std::string samples;
  };
  SubArgs a;
  std::vector<std::string> kinds = {"brasselet", "brasselet-ci", "eu-origin",
                                    "eu-f",      "morse",        "gsv",
                                    "milnor",    "bruce-roberts", "family",
                                    "surface-info", "check"};
  std::map<std::string, CLI::App*> subs;
  for (const std::string& k : kinds) {
    CLI::App* sub = app.add_subcommand(k, "");
    sub->set_help_flag("--help", "print help");
    sub->add_option("--p", a.p, "surface parameter p");
    sub->add_option("--q", a.q, "surface parameter q");
    sub->add_option("--n", a.n, "ambient dimension of affine space");
    sub->add_option("--f", a.f, "the function f");
    sub->add_option("--g", a.g, "component(s) g");
    sub->add_option("--h", a.h, "Newton-preserving deformations of f");
    sub->add_option("--l", a.l, "Newton-preserving deformations of g");
    sub->add_option("--samples", a.samples,
                    "comma-separated parameter samples (family)");
    subs[k] = sub;
  }

  std::vector<const char*> cargv;
  static const char* name = "toricinv";
  cargv.push_back(name);
  for (const std::string& s : argv) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    TaskDefaults defaults;
    defaults.mode = volume_convention_from_string(mode_str);
    defaults.seed = seed;
    defaults.trials = trials;
    defaults.sketch = sketch;

    std::optional<Problem> problem;
    if (!problem_path.empty()) {
      std::ifstream in(problem_path);
      if (!in) throw Error("BadInput", "cannot open " + problem_path);
      Json j = Json::parse(in, nullptr, true, true);
      problem = load_problem(j);
    }

    CLI::App* active = nullptr;
    for (auto& [k, sub] : subs)
      if (sub->parsed()) active = sub;

    std::vector<TaskRequest> tasks;
    VarietyHandle vh;
    if (active == nullptr) {
      if (!problem) {
        err << "error: BadInput: give a subcommand or --problem\n";
        return 1;
      }
      vh = problem->variety;
      tasks = problem->tasks;
    } else {
      TaskRequest t;
      t.kind = active->get_name();
      auto resolve = [&](const std::string& s) {
        if (problem) {
          auto it = problem->polynomials.find(s);
          if (it != problem->polynomials.end()) return it->second;
        }
        return s;
      };
      t.f_text = resolve(a.f);
      for (const std::string& g : a.g) t.g_texts.push_back(resolve(g));
      for (const std::string& h : a.h) t.deform_f_texts.push_back(resolve(h));
      for (const std::string& l : a.l) t.deform_g_texts.push_back(resolve(l));
      if (!a.samples.empty())
        t.sample_values = detail::parse_samples_flag(a.samples);
      tasks.push_back(std::move(t));

      if (problem) {
        vh = problem->variety;
      } else if (!a.p.empty()) {
        Int p(a.p), q(a.q.empty() ? "0" : a.q);
        vh = variety_surface_handle(p, q);
      } else {
        int n = a.n;
        if (n == 0 && !a.f.empty()) {
          n = infer_nvars(a.f);
          for (const std::string& g : a.g) n = std::max(n, infer_nvars(g));
        }
        if (n == 0)
          throw Error("BadInput", "give --p/--q, --n, or --problem");
        vh = variety_affine_handle(n);
      }
    }

    RunResult r = run_tasks(vh, tasks, defaults);
    if (json_out)
      out << r.json.dump(2) << "\n";
    else
      out << r.text;
    return r.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::is_hypothesis_failure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace toricinv
