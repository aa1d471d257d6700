#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "tmac/config.hpp"
#include "tmac/effect_safe.hpp"
#include "tmac/errors.hpp"
#include "tmac/pddl.hpp"
#include "tmac/plan_io.hpp"
#include "tmac/planner.hpp"
#include "tmac/refine.hpp"
#include "tmac/semantics.hpp"
#include "tmac/shortest_paths.hpp"
#include "tmac/trace_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNotSolved = 1;
constexpr int kInputError = 2;
constexpr int kCertification = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tmac::Error(tmac::Errc::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw tmac::Error(tmac::Errc::Io, "cannot write " + path);
  out << text;
}

tmac::SearchLimits parse_limits(const std::string& text) {
  tmac::SearchLimits limits;
  if (text.empty()) return limits;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw tmac::Error(tmac::Errc::Parse, "--limits entries look like key=value: " + item);
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    if (key == "steps") {
      limits.max_steps = std::stoul(val);
    } else if (key == "budget") {
      limits.node_budget = std::stoul(val);
    } else if (key == "horizon" || key == "eps") {
      auto r = tmac::Rat::parse(val);
      if (!r || !r->positive())
        throw tmac::Error(tmac::Errc::Parse, "--limits " + key + " needs a positive rational");
      (key == "horizon" ? limits.horizon : limits.epsilon) = *r;
    } else {
      throw tmac::Error(tmac::Errc::Parse, "--limits keys: steps, horizon, eps, budget");
    }
  }
  return limits;
}

struct LoadedTask {
  tmac::LiftedDomain domain;        // after recipes, when a manifest is given
  tmac::LiftedDomain base_domain;   // as parsed
  tmac::Problem problem;
  tmac::PlanningTask task;
  tmac::GroundingReport grounding;
  std::vector<tmac::MacroRecipe> recipes;
};

LoadedTask load(const std::string& dom_path, const std::string& prob_path,
                const std::string& manifest_path, bool keep_constituents) {
  LoadedTask lt;
  lt.base_domain = tmac::parse_domain(slurp(dom_path));
  lt.domain = lt.base_domain;
  if (!manifest_path.empty()) {
    tmac::Config cfg = tmac::parse_config(slurp(manifest_path));
    lt.recipes = cfg.recipes;
    lt.domain = tmac::apply_recipes(lt.base_domain, cfg.recipes, keep_constituents);
  }
  lt.problem = tmac::parse_problem(slurp(prob_path), lt.domain);
  lt.task = tmac::ground(lt.domain, lt.problem, &lt.grounding);
  for (const auto& d : lt.grounding.dropped)
    std::cerr << "note: dropped grounding " << d.action << ": " << d.why << "\n";
  return lt;
}

void write_trace_files(const tmac::PlanningTask& task, const tmac::Plan& plan,
                       const std::string& text_path, const std::string& json_path) {
  if (text_path.empty() && json_path.empty()) return;
  tmac::Trace trace = tmac::unroll(task, plan);
  if (!text_path.empty()) spill(text_path, tmac::trace_text(trace, plan));
  if (!json_path.empty()) spill(json_path, tmac::trace_json(trace, plan));
}

int report_check(const tmac::CheckReport& check, const std::string& label) {
  if (check.solves) {
    std::cerr << label << ": solution\n";
    return kOk;
  }
  std::cerr << label << (check.consistent ? ": consistent but goal not reached\n"
                                          : ": not consistent\n");
  for (const auto& v : check.violations) std::cerr << "  " << v.str() << "\n";
  return kNotSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential temporal macro-actions: compose, transform, plan, refine, validate"};
  app.require_subcommand(1);

  // compose
  std::string dom_path, prob_path, cfg_path, out_path, out_prob_path, manifest_path;
  std::string limits_text, trace_path, trace_json_path, audit_path;
  bool keep_constituents = false;
  unsigned jobs = 1;

  auto* compose = app.add_subcommand("compose", "compose macro schemas from recipes");
  compose->add_option("domain", dom_path, "domain file")->required();
  compose->add_option("recipes", cfg_path, "recipe configuration")->required();
  compose->add_option("-o,--out", out_path, "output domain file")->required();
  compose->add_option("--manifest", manifest_path, "manifest output (default: <out>.manifest)");
  compose->add_option("--problem", prob_path, "problem file for the per-grounding report");
  compose->add_flag("--keep-constituents", keep_constituents,
                    "keep the schemas the recipes consumed");

  auto* transform = app.add_subcommand("transform", "emit the effect-safe ground task");
  transform->add_option("domain", dom_path)->required();
  transform->add_option("problem", prob_path)->required();
  transform->add_option("--manifest", manifest_path, "macro recipes to apply first");
  transform->add_option("--out-domain", out_path)->required();
  transform->add_option("--out-problem", out_prob_path)->required();

  auto* ground_cmd = app.add_subcommand("ground", "emit the ground task as PDDL");
  ground_cmd->add_option("domain", dom_path)->required();
  ground_cmd->add_option("problem", prob_path)->required();
  ground_cmd->add_option("--manifest", manifest_path);
  ground_cmd->add_option("--out-domain", out_path)->required();
  ground_cmd->add_option("--out-problem", out_prob_path)->required();

  std::vector<std::string> plan_paths;
  auto* validate = app.add_subcommand("validate", "check plans against the exact semantics");
  validate->add_option("domain", dom_path)->required();
  validate->add_option("problem", prob_path)->required();
  validate->add_option("plans", plan_paths, "plan files")->required()->expected(-1);
  validate->add_option("--manifest", manifest_path);
  validate->add_option("--trace", trace_path, "write the trace in text form (single plan)");
  validate->add_option("--trace-json", trace_json_path, "write the trace as JSON (single plan)");
  validate->add_option("--jobs", jobs, "validate plan files in parallel");

  auto* plan_cmd = app.add_subcommand("plan", "bounded-exhaustive search for a solution");
  plan_cmd->add_option("domain", dom_path)->required();
  plan_cmd->add_option("problem", prob_path)->required();
  plan_cmd->add_option("--manifest", manifest_path);
  plan_cmd->add_option("--limits", limits_text, "steps=K,horizon=Q,eps=Q,budget=N");
  plan_cmd->add_option("-o,--out", out_path, "plan output file (stdout otherwise)");

  auto* refine = app.add_subcommand("refine", "unfold macro steps into their constituents");
  refine->add_option("domain", dom_path, "original (pre-macro) domain")->required();
  refine->add_option("problem", prob_path)->required();
  refine->add_option("plan", cfg_path, "plan over the macro (or effect-safe) task")->required();
  refine->add_option("--manifest", manifest_path, "macro recipes")->required();
  refine->add_option("-o,--out", out_path, "refined plan output")->required();
  refine->add_option("--audit", audit_path, "write one line per unfolding");
  refine->add_option("--trace", trace_path, "trace of the refined plan (text)");
  refine->add_option("--trace-json", trace_json_path, "trace of the refined plan (JSON)");

  auto* paths_cmd = app.add_subcommand("shortest-paths", "replace the move schema by direct moves");
  paths_cmd->add_option("domain", dom_path)->required();
  paths_cmd->add_option("problem", prob_path)->required();
  paths_cmd->add_option("config", cfg_path, "configuration with move-schema and edge lines")
      ->required();
  paths_cmd->add_option("--out-domain", out_path)->required();
  paths_cmd->add_option("--out-problem", out_prob_path)->required();

  auto* pipeline = app.add_subcommand(
      "pipeline", "compose, transform, plan, refine, and validate in one run");
  pipeline->add_option("domain", dom_path)->required();
  pipeline->add_option("problem", prob_path)->required();
  pipeline->add_option("config", cfg_path)->required();
  pipeline->add_option("-o,--out", out_path, "refined plan output")->required();
  pipeline->add_option("--limits", limits_text);
  pipeline->add_option("--audit", audit_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compose->parsed()) {
      tmac::LiftedDomain dom = tmac::parse_domain(slurp(dom_path));
      tmac::Config cfg = tmac::parse_config(slurp(cfg_path));
      tmac::LiftedDomain out = tmac::apply_recipes(dom, cfg.recipes, keep_constituents);
      spill(out_path, tmac::emit_domain(out));
      std::vector<tmac::LiftedSchema> macros;
      for (const auto& s : out.schemas) {
        if (s.macro) macros.push_back(s);
      }
      std::string mpath = manifest_path.empty() ? out_path + ".manifest" : manifest_path;
      spill(mpath, tmac::emit_manifest(macros));
      if (!prob_path.empty()) {
        tmac::Problem prob = tmac::parse_problem(slurp(prob_path), out);
        for (const auto& m : macros) {
          tmac::LiftReport report = tmac::verify_macro_groundings(m, prob);
          std::cerr << "macro " << m.name << ": " << report.admitted() << "/"
                    << report.checks.size() << " groundings admitted\n";
          for (const auto& c : report.checks) {
            if (c.status != tmac::GroundingCheck::Status::Admitted) {
              std::cerr << "  excluded [";
              for (std::size_t i = 0; i < c.binding.size(); ++i)
                std::cerr << (i ? " " : "") << c.binding[i];
              std::cerr << "]: " << c.detail << "\n";
            }
          }
        }
      }
      return kOk;
    }

    if (transform->parsed()) {
      LoadedTask lt = load(dom_path, prob_path, manifest_path, false);
      tmac::EffectSafeTask est = tmac::build_effect_safe(lt.task);
      std::string name = lt.domain.name + "-effect-safe";
      spill(out_path, tmac::emit_ground_domain(est.task, name, lt.domain, lt.problem));
      spill(out_prob_path,
            tmac::emit_ground_problem(est.task, lt.problem.name + "-effect-safe", name,
                                      lt.problem));
      std::cerr << "effect-safe task: " << est.task.atoms.size() << " atoms ("
                << est.universe.size() << " locks), " << est.task.actions.size()
                << " actions\n";
      return kOk;
    }

    if (ground_cmd->parsed()) {
      LoadedTask lt = load(dom_path, prob_path, manifest_path, false);
      std::string name = lt.domain.name + "-ground";
      spill(out_path, tmac::emit_ground_domain(lt.task, name, lt.domain, lt.problem));
      spill(out_prob_path,
            tmac::emit_ground_problem(lt.task, lt.problem.name + "-ground", name, lt.problem));
      std::cerr << "ground task: " << lt.task.atoms.size() << " atoms, "
                << lt.task.actions.size() << " actions\n";
      return kOk;
    }

    if (validate->parsed()) {
      LoadedTask lt = load(dom_path, prob_path, manifest_path, true);
      if (plan_paths.size() > 1 && (!trace_path.empty() || !trace_json_path.empty()))
        throw tmac::Error(tmac::Errc::Io, "--trace needs a single plan file");

      std::vector<int> codes(plan_paths.size(), kInputError);
      std::vector<std::string> notes(plan_paths.size());
      std::mutex mu;
      std::size_t next = 0;
      auto worker = [&]() {
        for (;;) {
          std::size_t mine;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= plan_paths.size()) return;
            mine = next++;
          }
          std::ostringstream os;
          int code;
          try {
            tmac::Plan plan = tmac::parse_plan(slurp(plan_paths[mine]), lt.task);
            tmac::CheckReport check = tmac::check_plan(lt.task, plan);
            if (check.solves) {
              os << plan_paths[mine] << ": solution";
              code = kOk;
            } else {
              os << plan_paths[mine]
                 << (check.consistent ? ": consistent but goal not reached" : ": not consistent");
              for (const auto& v : check.violations) os << "\n  " << v.str();
              code = kNotSolved;
            }
            write_trace_files(lt.task, plan, trace_path, trace_json_path);
          } catch (const tmac::Error& e) {
            os << plan_paths[mine] << ": " << e.what();
            code = kInputError;
          }
          std::lock_guard<std::mutex> lock(mu);
          codes[mine] = code;
          notes[mine] = os.str();
        }
      };
      std::vector<std::thread> pool;
      for (unsigned i = 1; i < std::min<unsigned>(jobs, plan_paths.size()); ++i)
        pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      int rc = kOk;
      for (std::size_t i = 0; i < plan_paths.size(); ++i) {
        std::cerr << notes[i] << "\n";
        rc = std::max(rc, codes[i]);
      }
      return rc;
    }

    if (plan_cmd->parsed()) {
      LoadedTask lt = load(dom_path, prob_path, manifest_path, false);
      tmac::SearchResult result = tmac::solve(lt.task, parse_limits(limits_text));
      if (result.solved()) {
        std::string text = tmac::emit_plan(result.plan);
        if (out_path.empty())
          std::cout << text;
        else
          spill(out_path, text);
        std::cerr << "solved in " << result.nodes << " nodes\n";
        return kOk;
      }
      std::cerr << (result.status == tmac::SearchStatus::ExhaustedComplete
                        ? "no solution within the bounds (space exhausted)"
                        : "no solution found (node budget exceeded)")
                << " after " << result.nodes << " nodes\n";
      return kNotSolved;
    }

    if (refine->parsed()) {
      LoadedTask macro_side = load(dom_path, prob_path, manifest_path, false);
      LoadedTask plain_side = load(dom_path, prob_path, "", false);
      tmac::Plan plan = tmac::parse_plan(slurp(cfg_path), macro_side.task);

      tmac::CheckReport entry = tmac::check_plan(macro_side.task, plan);
      if (!entry.solves) return report_check(entry, "input plan");

      tmac::RefineResult refined = tmac::refine_all(plain_side.task, plan);
      spill(out_path, tmac::emit_plan(refined.plan));
      if (!audit_path.empty()) {
        std::string lines;
        for (const auto& s : refined.audit) lines += s.str() + "\n";
        spill(audit_path, lines);
      }
      tmac::CheckReport final_check = tmac::check_plan(plain_side.task, refined.plan);
      write_trace_files(plain_side.task, refined.plan, trace_path, trace_json_path);
      if (!final_check.solves) {
        report_check(final_check, "refined plan (against the original domain)");
        return kCertification;
      }
      std::cerr << "refined " << refined.audit.size() << " macro steps; "
                << "solution for the original domain\n";
      return kOk;
    }

    if (paths_cmd->parsed()) {
      tmac::LiftedDomain dom = tmac::parse_domain(slurp(dom_path));
      tmac::Problem prob = tmac::parse_problem(slurp(prob_path), dom);
      tmac::Config cfg = tmac::parse_config(slurp(cfg_path));
      if (!cfg.move)
        throw tmac::Error(tmac::Errc::NotAMoveSchema, "config has no move-schema line");
      auto [dom2, prob2] = tmac::shortest_path_closure(dom, prob, *cfg.move, cfg.edges);
      spill(out_path, tmac::emit_domain(dom2));
      spill(out_prob_path, tmac::emit_problem(prob2, dom2));
      return kOk;
    }

    if (pipeline->parsed()) {
      tmac::LiftedDomain dom = tmac::parse_domain(slurp(dom_path));
      tmac::Problem prob = tmac::parse_problem(slurp(prob_path), dom);
      tmac::Config cfg = tmac::parse_config(slurp(cfg_path));
      if (cfg.move) {
        auto closed = tmac::shortest_path_closure(dom, prob, *cfg.move, cfg.edges);
        dom = std::move(closed.first);
        prob = std::move(closed.second);
      }
      tmac::LiftedDomain macro_dom = tmac::apply_recipes(dom, cfg.recipes, false);

      tmac::GroundingReport ground_report;
      tmac::PlanningTask macro_task = tmac::ground(macro_dom, prob, &ground_report);
      for (const auto& d : ground_report.dropped)
        std::cerr << "note: dropped grounding " << d.action << ": " << d.why << "\n";
      tmac::PlanningTask plain_task = tmac::ground(dom, prob, nullptr);

      tmac::EffectSafeTask est = tmac::build_effect_safe(macro_task);
      tmac::SearchResult result = tmac::solve(est.task, parse_limits(limits_text));
      if (!result.solved()) {
        std::cerr << (result.status == tmac::SearchStatus::ExhaustedComplete
                          ? "no solution within the bounds (space exhausted)"
                          : "no solution found (node budget exceeded)")
                  << "\n";
        return kNotSolved;
      }
      tmac::Plan base = tmac::base_plan(result.plan, est);
      tmac::RefineResult refined = tmac::refine_all(plain_task, base);
      if (!audit_path.empty()) {
        std::string lines;
        for (const auto& s : refined.audit) lines += s.str() + "\n";
        spill(audit_path, lines);
      }
      tmac::CheckReport final_check = tmac::check_plan(plain_task, refined.plan);
      if (!final_check.solves) {
        report_check(final_check, "refined plan (against the original domain)");
        return kCertification;
      }
      spill(out_path, tmac::emit_plan(refined.plan));
      std::cerr << "pipeline: solved with " << result.plan.size() << " macro steps, refined to "
                << refined.plan.size() << " ordinary steps, certified against the original "
                << "domain\n";
      return kOk;
    }
  } catch (const tmac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == tmac::Errc::Certification ? kCertification : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
