// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero when any criterion fails. Golden values are exact (rational
// arithmetic end to end), so there are no tolerances anywhere.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tmac/compose.hpp"
#include "tmac/config.hpp"
#include "tmac/effect_safe.hpp"
#include "tmac/errors.hpp"
#include "tmac/pddl.hpp"
#include "tmac/planner.hpp"
#include "tmac/refine.hpp"
#include "tmac/semantics.hpp"
#include "tmac/shortest_paths.hpp"

using namespace tmac;
using namespace tmac::testing;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TMAC_TEST_DATA_DIR) + "/" + name);
  if (!in) throw Error(Errc::Io, "missing test data " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

#define EXPECT(cond, message)                 \
  do {                                        \
    if (!(cond)) {                            \
      detail = (message);                     \
      return false;                           \
    }                                         \
  } while (0)

// ---- 1. two-action composition golden test --------------------------------

bool composition_golden(std::string& detail) {
  CompositionOutcome out = compose(move_action(), get_action(), "move-get");
  EXPECT(out.defined(), "composition must be defined");
  const DurativeAction& m = *out.macro;
  EXPECT(m.pre_s == AtomSet({atom("at", {"r", "l1"}), atom("free", {"l2"}),
                             atom("empty", {"r"})}),
         "start preconditions differ: got " + [&] {
           std::string s;
           for (const auto& a : m.pre_s) s += a.str();
           return s;
         }());
  EXPECT(m.pre_inv.empty(), "invariant must be empty");
  EXPECT(m.pre_e.empty(), "end precondition must be empty");
  EXPECT(m.eff_s == LitSet({neg(atom("at", {"r", "l1"})), pos(atom("free", {"l1"})),
                            neg(atom("free", {"l2"})), neg(atom("empty", {"r"}))}),
         "start effects differ");
  EXPECT(m.eff_e == LitSet({pos(atom("at", {"r", "l2"})), pos(atom("holding", {"r"}))}),
         "end effects differ");
  EXPECT(m.dur == Rat(5), "duration must be 5");
  return true;
}

// ---- 2. mutex-atom golden test ---------------------------------------------

bool mutex_golden(std::string& detail) {
  CompositionOutcome out = compose(move_action(), get_action(), "move-get");
  EXPECT(out.defined(), "composition must be defined");
  MutexSet expected{{Guard::Del, atom("free", {"l2"})},
                    {Guard::Del, atom("empty", {"r"})},
                    {Guard::Del, atom("at", {"r", "l2"})},
                    {Guard::Add, atom("free", {"l2"})},
                    {Guard::Add, atom("empty", {"r"})}};
  EXPECT(out.macro->mutex == expected, "mutex atoms differ from the documented five");
  return true;
}

// ---- 3. concurrency lost by locking: solvable native, locked infeasible ----

bool interference_fixture_criterion(std::string& detail) {
  InterferenceFixture fx = interference_fixture();
  SearchLimits limits;
  limits.max_steps = 3;
  limits.horizon = 10;

  SearchResult native = solve(fx.task, limits);
  EXPECT(native.solved(), "the native task must be solvable");
  Rat macro_start(-1), helper_start(-1);
  for (const auto& s : native.plan.steps) {
    if (s.action->name == "a0") macro_start = s.t;
    if (s.action->name == "act") helper_start = s.t;
  }
  EXPECT(macro_start.positive() && helper_start.positive(),
         "the solution must schedule both the macro and the helper");
  EXPECT(helper_start > macro_start && helper_start < macro_start + fx.macro->dur,
         "the helper must start within the macro's span");

  EffectSafeTask est = build_effect_safe(fx.task);
  SearchResult locked = solve(est.task, limits);
  EXPECT(locked.status == SearchStatus::ExhaustedComplete,
         "the locked task must exhaust its bounded space without a solution");
  return true;
}

// ---- 4 & 5. base-plan and refinement property suites ------------------------

struct SolvedCase {
  PlanningTask task;
  EffectSafeTask est;
  Plan locked;
};

std::vector<SolvedCase> property_corpus(int& generated, int& solved) {
  std::mt19937 rng(61520);
  std::vector<SolvedCase> cases;
  SearchLimits limits;
  limits.max_steps = 3;
  limits.horizon = 20;
  limits.epsilon = Rat::of(1, 2);
  limits.node_budget = 150000;

  generated = 0;
  while (generated < 100) {
    int n_atoms = 3 + static_cast<int>(rng() % 4);      // <= 6
    int n_macros = 1 + static_cast<int>(rng() % 2);     // 1..2
    int n_ordinary = static_cast<int>(rng() % 3);       // 0..2, <= 4 total
    PlanningTask t = random_macro_task(rng, n_atoms, n_macros, n_ordinary);
    ++generated;
    EffectSafeTask est = build_effect_safe(t);
    SearchResult r = solve(est.task, limits);
    if (r.solved()) cases.push_back({std::move(t), std::move(est), std::move(r.plan)});
  }
  solved = static_cast<int>(cases.size());
  return cases;
}

bool base_plan_suite(const std::vector<SolvedCase>& cases, int generated, int solved,
                     std::string& detail) {
  EXPECT(generated >= 100, "need at least 100 generated tasks");
  EXPECT(solved >= 20, "too few solvable instances (" + std::to_string(solved) +
                           ") for the suite to be meaningful");
  int with_macro_step = 0;
  for (const auto& c : cases) {
    Plan base = base_plan(c.locked, c.est);
    for (const auto& s : base.steps) {
      if (s.action->is_macro()) {
        ++with_macro_step;
        break;
      }
    }
    CheckReport check = check_plan(c.task, base);
    EXPECT(check.solves, "a base plan failed to solve its original task: " + check.str());
  }
  EXPECT(with_macro_step >= 10, "too few solutions contain macro steps (" +
                                    std::to_string(with_macro_step) + ")");
  return true;
}

std::vector<std::pair<int, std::string>> descriptors(const PlanningTask& context,
                                                     const Plan& plan) {
  Trace tr = unroll(induced_task(context, plan), plan);
  std::vector<std::pair<int, std::string>> out;
  for (std::size_t i = 1; i < tr.entries.size(); ++i) {
    out.emplace_back(tr.entries[i].event == EventKind::Start ? 1 : 2,
                     plan.steps[*tr.entries[i].step].action->display_name());
  }
  return out;
}

bool refinement_suite(const std::vector<SolvedCase>& cases, std::string& detail) {
  for (const auto& c : cases) {
    Plan base = base_plan(c.locked, c.est);

    // every single refinement step must stay a solution
    Plan current = base;
    for (;;) {
      const TimedAction* pick = nullptr;
      for (const auto& s : current.steps) {
        if (s.action->is_macro() && (!pick || s.t > pick->t)) pick = &s;
      }
      if (!pick) break;
      current = refine_once(current, *pick);
      CheckReport step_check = check_plan(induced_task(c.task, current), current);
      EXPECT(step_check.solves, "an intermediate refinement stopped solving: " + step_check.str());
    }
    for (const auto& s : current.steps)
      EXPECT(!s.action->is_macro(), "refinement left a macro behind");

    // both orders, certified internally, must agree on the event descriptors
    RefineResult desc = refine_all(c.task, base, RefineOrder::DescendingStart);
    RefineResult asc = refine_all(c.task, base, RefineOrder::AscendingStart);
    EXPECT(desc.plan.size() == asc.plan.size(), "refinement orders disagree on plan size");
    EXPECT(descriptors(c.task, desc.plan) == descriptors(c.task, asc.plan),
           "refinement orders disagree on the event sequence");
    EXPECT(desc.plan.size() == current.steps.size(), "stepwise and batch refinement disagree");
  }
  return true;
}

// ---- 6. lifted/grounded commutation -----------------------------------------

bool commutation(std::string& detail) {
  LiftedDomain dom = parse_domain(read_data("robot.pddl"));
  Problem prob = parse_problem(read_data("robot-p34.pddl"), dom);
  Config cfg = parse_config(read_data("robot.cfg"));
  LiftedSchema macro = lift_compose(dom, cfg.recipes.at(0));

  const LiftedSchema* move = dom.find_schema("move");
  const LiftedSchema* get = dom.find_schema("get");
  EXPECT(move && get, "constituent schemas must exist");

  int admitted = 0;
  for (const auto& r : {"r1", "r2", "r3"}) {
    for (const auto& from : {"l1", "l2", "l3", "l4"}) {
      for (const auto& to : {"l1", "l2", "l3", "l4"}) {
        std::vector<ActionPtr> parts{instantiate_schema(*move, {r, from, to}),
                                     instantiate_schema(*get, {r, to})};
        CompositionOutcome grounded = compose_seq(parts, macro.name, {r, from, to});
        ActionPtr direct = instantiate_schema(macro, {r, from, to});
        MutexSet direct_mutex;
        for (const auto& mx : macro.macro->mutex) {
          Atom a;
          a.pred = mx.atom.pred;
          for (const auto& term : mx.atom.terms) {
            if (term == "?r")
              a.args.push_back(r);
            else if (term == "?from")
              a.args.push_back(from);
            else if (term == "?to")
              a.args.push_back(to);
            else
              a.args.push_back(term);
          }
          direct_mutex.insert({mx.guard, std::move(a)});
        }
        if (std::string(from) != to) {
          EXPECT(grounded.defined(), "injective grounding must compose");
          EXPECT(same_behavior(*direct, *grounded.macro),
                 std::string("lifted and grounded macros differ at (") + r + " " + from + " " +
                     to + ")");
          EXPECT(direct_mutex == grounded.macro->mutex,
                 std::string("mutex sets differ at (") + r + " " + from + " " + to + ")");
          ++admitted;
        }
      }
    }
  }
  EXPECT(admitted == 36, "expected 36 injective groundings");

  // the report must admit exactly the injective bindings
  LiftReport report = verify_macro_groundings(macro, prob);
  EXPECT(report.checks.size() == 48, "expected 48 bindings over 3 robots x 4 locations");
  EXPECT(report.admitted() == 36, "expected 36 admitted bindings");
  for (const auto& c : report.checks) {
    bool aliased = c.binding[1] == c.binding[2];
    EXPECT(aliased != (c.status == GroundingCheck::Status::Admitted),
           "the report must exclude exactly the aliased bindings");
  }
  return true;
}

// ---- 7. shortest-path closure vs simple-path oracle -------------------------

bool closure_oracle(std::string& detail) {
  std::mt19937 rng(90210);
  for (int round = 0; round < 50; ++round) {
    std::size_t n = 2 + rng() % 5;
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || rng() % 100 >= 50) continue;
        edges.emplace_back(i, j, Rat(1 + static_cast<long long>(rng() % 9),
                                     1 + static_cast<long long>(rng() % 5)));
      }
    }
    auto dist = all_pairs_shortest(n, edges);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        auto expect = simple_path_oracle(n, edges, u, v);
        EXPECT(dist[u][v].has_value() == expect.has_value(),
               "reachability disagrees with the oracle");
        if (expect)
          EXPECT(*dist[u][v] == *expect, "a distance disagrees with the simple-path oracle");
      }
    }
  }
  return true;
}

// ---- 8. undefinedness checks -------------------------------------------------

bool undefinedness(std::string& detail) {
  // second proviso: an end precondition falsified inside
  ActionPtr killer = action({.name = "killer", .dur = 1, .eff_e = {neg(atom("p"))}});
  ActionPtr needy = action({.name = "needy", .dur = 2, .pre_e = {atom("p")}});
  CompositionOutcome second = compose(killer, needy);
  EXPECT(!second.defined(), "composition must be undefined");
  EXPECT(second.reason == UndefinedReason::EndPreFalsifiedInside, "wrong reason");
  EXPECT(second.witnesses == AtomSet{atom("p")}, "wrong witness set");

  // first proviso: pulled-forward deletes hit the macro invariant
  ActionPtr wrecker = action({.name = "wrecker", .dur = 1, .eff_e = {neg(atom("q"))}});
  ActionPtr keeper = action({.name = "keeper", .dur = 2, .pre_inv = {atom("q")}});
  CompositionOutcome first = compose(wrecker, keeper);
  EXPECT(!first.defined(), "composition must be undefined");
  EXPECT(first.reason == UndefinedReason::InvariantDeletedAtStart, "wrong reason");
  EXPECT(first.witnesses == AtomSet{atom("q")}, "wrong witness set");

  // right-to-left chain: the discard happens at the outermost step
  ActionPtr a1 = action({.name = "a1", .dur = 1, .eff_e = {neg(atom("v"))}});
  ActionPtr a2 = action({.name = "a2", .dur = 1});
  ActionPtr a3 = action({.name = "a3", .dur = 1, .pre_e = {atom("v")}});
  std::vector<ActionPtr> seq{a1, a2, a3};
  CompositionOutcome chain = compose_seq(seq);
  EXPECT(!chain.defined(), "the chain must be undefined");
  EXPECT(chain.step == 0, "the failure must surface at the outer step");
  EXPECT(chain.reason == UndefinedReason::EndPreFalsifiedInside, "wrong chain reason");
  EXPECT(chain.witnesses == AtomSet{atom("v")}, "wrong chain witness set");
  return true;
}

// ---- 9. trace semantics vs the reference simulator --------------------------

bool semantics_oracle(std::string& detail) {
  int plans_checked = 0;
  auto check = [&](const PlanningTask& t, const Plan& p) {
    Trace tr = unroll(t, p);
    if (!traces_agree(t, p, tr)) return false;
    ++plans_checked;
    return true;
  };

  // pickup task: stamps chosen to exercise interleavings and rationals
  PlanningTask pickup = pickup_task(false);
  ActionPtr mv = move_action();
  ActionPtr gt = get_action();
  const Rat move_starts[6] = {Rat(1), Rat::of(1, 2), Rat(2), Rat::of(5, 4), Rat(3), Rat::of(7, 3)};
  for (const auto& t0 : move_starts) {
    Plan p;
    p.add(t0, mv);
    p.add(t0 + Rat::of(7, 2), gt);
    if (!check(pickup, p)) {
      detail = "pickup plan diverged from the simulator at start " + t0.str();
      return false;
    }
  }

  // two overlapping effect-free actions plus an invariant holder
  PlanningTask over;
  over.atoms = {atom("p"), atom("q")};
  ActionPtr holder = action({.name = "holder", .dur = 4, .pre_inv = {atom("p")}});
  ActionPtr flip = action({.name = "flip", .dur = 1, .eff_s = {neg(atom("p"))},
                           .eff_e = {pos(atom("q"))}});
  ActionPtr idle = action({.name = "idle", .dur = 3});
  over.actions = {holder, flip, idle};
  over.init = {atom("p")};
  struct Stamps {
    Rat a, b, c;
  };
  const Stamps combos[7] = {
      {Rat(1), Rat(2), Rat::of(7, 2)},   {Rat(1), Rat(7), Rat::of(5, 2)},
      {Rat::of(1, 2), Rat(1), Rat(6)},   {Rat(2), Rat::of(9, 4), Rat::of(17, 8)},
      {Rat(5), Rat(1), Rat::of(15, 2)},  {Rat(1), Rat::of(13, 3), Rat::of(13, 6)},
      {Rat::of(3, 2), Rat(4), Rat(10)}};
  for (const auto& s : combos) {
    Plan p;
    p.add(s.a, holder);
    p.add(s.b, flip);
    p.add(s.c, idle);
    if (!validate_plan_shape(p).ok()) {
      detail = "a hand-written plan has coinciding stamps";
      return false;
    }
    if (!check(over, p)) {
      detail = "overlap plan diverged from the simulator";
      return false;
    }
  }

  // four-step plans with repeats of one action
  PlanningTask rep;
  rep.atoms = {atom("x"), atom("y")};
  ActionPtr tick = action({.name = "tick", .dur = Rat::of(1, 2), .eff_e = {pos(atom("x"))}});
  ActionPtr tock = action({.name = "tock", .dur = Rat::of(3, 4), .eff_s = {neg(atom("x"))},
                           .eff_e = {pos(atom("y"))}});
  rep.actions = {tick, tock};
  rep.init = {};
  const Rat bases[7] = {Rat(1),          Rat::of(5, 4), Rat::of(4, 3), Rat(2),
                        Rat::of(11, 8),  Rat(3),        Rat::of(5, 2)};
  for (const auto& b : bases) {
    Plan p;
    p.add(b, tick);
    p.add(b + Rat::of(5, 3), tock);
    p.add(b + Rat::of(10, 3), tick);
    p.add(b + Rat(5), tock);
    if (!check(rep, p)) {
      detail = "repetition plan diverged from the simulator at base " + b.str();
      return false;
    }
  }

  EXPECT(plans_checked >= 20, "need at least 20 plans, ran " + std::to_string(plans_checked));
  return true;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  int id = 0;

  auto run = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
    ++id;
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << name;
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
    if (!ok) ++failures;
  };

  run("two-action composition matches the documented macro exactly", composition_golden);
  run("mutex atoms match the documented five exactly", mutex_golden);
  run("locking forfeits the concurrent solution (solvable native, locked exhausts)",
      interference_fixture_criterion);

  auto t0 = Clock::now();
  int generated = 0, solved = 0;
  std::vector<SolvedCase> corpus;
  std::string corpus_error;
  try {
    corpus = property_corpus(generated, solved);
  } catch (const std::exception& e) {
    corpus_error = e.what();
  }
  run("base plans of locked solutions solve the original task (100-task suite)",
      [&](std::string& detail) {
        EXPECT(corpus_error.empty(), "corpus generation failed: " + corpus_error);
        return base_plan_suite(corpus, generated, solved, detail);
      });
  run("every refinement step and order preserves solutions, within the time budget",
      [&](std::string& detail) {
        EXPECT(corpus_error.empty(), "corpus generation failed: " + corpus_error);
        if (!refinement_suite(corpus, detail)) return false;
        auto seconds =
            std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - t0).count();
        EXPECT(seconds < 300, "property suites took " + std::to_string(seconds) + "s");
        return true;
      });

  run("lifted composition commutes with grounding (3 robots x 4 locations)", commutation);
  run("closure distances equal the simple-path oracle (50 random graphs)", closure_oracle);
  run("both undefinedness provisos and the chain discard fire with exact witnesses",
      undefinedness);
  run("traces match an independent event-sorting simulator (20 plans)", semantics_oracle);

  if (failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
  } else {
    std::cout << failures << " acceptance criteria failed" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
