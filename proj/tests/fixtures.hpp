#pragma once

#include <random>
#include <vector>

#include "tmac/compose.hpp"
#include "tmac/model.hpp"

namespace tmac::testing {

inline Atom atom(std::string pred, std::vector<std::string> args = {}) {
  return Atom{std::move(pred), std::move(args)};
}

struct ActionSpec {
  std::string name;
  std::vector<std::string> args;
  Rat dur = 1;
  AtomSet pre_s, pre_inv, pre_e;
  LitSet eff_s, eff_e;
};

inline ActionPtr action(ActionSpec s) {
  DurativeAction a;
  a.name = std::move(s.name);
  a.args = std::move(s.args);
  a.dur = s.dur;
  a.pre_s = std::move(s.pre_s);
  a.pre_inv = std::move(s.pre_inv);
  a.pre_e = std::move(s.pre_e);
  a.eff_s = std::move(s.eff_s);
  a.eff_e = std::move(s.eff_e);
  return make_action(std::move(a));
}

// The two-action pickup domain used throughout: an agent r moves from l1 to
// l2 and picks up an object there.
inline ActionPtr move_action() {
  return action({.name = "move",
                 .args = {"r", "l1", "l2"},
                 .dur = 2,
                 .pre_s = {atom("at", {"r", "l1"})},
                 .pre_e = {atom("free", {"l2"})},
                 .eff_s = {neg(atom("at", {"r", "l1"})), pos(atom("free", {"l1"}))},
                 .eff_e = {pos(atom("at", {"r", "l2"})), neg(atom("free", {"l2"}))}});
}

inline ActionPtr get_action() {
  return action({.name = "get",
                 .args = {"r", "l2"},
                 .dur = 3,
                 .pre_s = {atom("empty", {"r"}), atom("at", {"r", "l2"})},
                 .pre_inv = {atom("at", {"r", "l2"})},
                 .eff_s = {neg(atom("empty", {"r"}))},
                 .eff_e = {pos(atom("holding", {"r"}))}});
}

inline ActionPtr move_get_macro() {
  CompositionOutcome out = compose(move_action(), get_action(), "move-get", {"r", "l1", "l2"});
  if (!out.defined()) throw std::logic_error("move-get composition must be defined");
  return out.macro;
}

inline PlanningTask pickup_task(bool with_macro) {
  PlanningTask t;
  t.atoms = {atom("at", {"r", "l1"}), atom("at", {"r", "l2"}), atom("free", {"l1"}),
             atom("free", {"l2"}),    atom("empty", {"r"}),    atom("holding", {"r"})};
  if (with_macro)
    t.actions = {move_get_macro()};
  else
    t.actions = {move_action(), get_action()};
  t.init = {atom("at", {"r", "l1"}), atom("free", {"l1"}), atom("free", {"l2"}),
            atom("empty", {"r"})};
  t.goal = {atom("holding", {"r"})};
  return t;
}

// A macro that must not tolerate concurrent interference: its first part
// deletes v1 at the start and v2 at the end, its second part needs v1 back
// at the end and produces the goal atom v3. A helper action re-enables v1
// and v2 at its start.
struct InterferenceFixture {
  ActionPtr macro;        // a0 = a1 ; a2
  ActionPtr helper;       // adds v1 and v2 at its start
  PlanningTask task;      // solvable only with the helper inside the macro's span
};

inline InterferenceFixture interference_fixture() {
  ActionPtr a1 = action({.name = "a1", .dur = 2, .eff_s = {neg(atom("v1"))},
                         .eff_e = {neg(atom("v2"))}});
  ActionPtr a2 = action({.name = "a2", .dur = 3, .pre_e = {atom("v1")},
                         .eff_e = {pos(atom("v3"))}});
  CompositionOutcome out = compose(a1, a2, "a0");
  if (!out.defined()) throw std::logic_error("interference macro must be defined");

  InterferenceFixture fx;
  fx.macro = out.macro;
  fx.helper = action({.name = "act", .dur = 1,
                      .eff_s = {pos(atom("v1")), pos(atom("v2"))}});
  fx.task.atoms = {atom("v1"), atom("v2"), atom("v3")};
  fx.task.actions = {fx.macro, fx.helper};
  fx.task.init = {};
  fx.task.goal = {atom("v3")};
  return fx;
}

// --- random small instances ------------------------------------------------

inline Rat pick_duration(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: return Rat(1);
    case 1: return Rat(2);
    case 2: return Rat::of(1, 2);
    default: return Rat(3);
  }
}

inline AtomSet random_atom_subset(std::mt19937& rng, const std::vector<Atom>& pool,
                                  int percent) {
  AtomSet s;
  for (const auto& a : pool) {
    if (static_cast<int>(rng() % 100) < percent) s.insert(a);
  }
  return s;
}

/// Random well-formed ordinary action over the pool. Conflicting literals are
/// resolved in favor of the positive side so validate_action always passes.
inline ActionPtr random_action(std::mt19937& rng, const std::vector<Atom>& pool,
                               const std::string& name) {
  ActionSpec s;
  s.name = name;
  s.dur = pick_duration(rng);
  s.pre_s = random_atom_subset(rng, pool, 20);
  s.pre_inv = random_atom_subset(rng, pool, 10);
  s.pre_e = random_atom_subset(rng, pool, 15);
  AtomSet s_add = random_atom_subset(rng, pool, 20);
  AtomSet s_del = random_atom_subset(rng, pool, 20);
  AtomSet e_add = random_atom_subset(rng, pool, 25);
  AtomSet e_del = random_atom_subset(rng, pool, 15);
  s_del = set_minus(set_minus(s_del, s_add), s.pre_inv);
  e_del = set_minus(e_del, e_add);
  s.eff_s = set_union(as_positive_literals(s_add), as_negative_literals(s_del));
  s.eff_e = set_union(as_positive_literals(e_add), as_negative_literals(e_del));
  return action(std::move(s));
}

/// Small random task with one or two macros: each macro composes two fresh
/// ordinary actions (retrying until the composition is defined), then a few
/// ordinary actions join the mix. The goal is drawn from positive effects so
/// a fair share of the tasks is solvable.
inline PlanningTask random_macro_task(std::mt19937& rng, int n_atoms, int n_macros,
                                      int n_ordinary) {
  std::vector<Atom> pool;
  for (int i = 0; i < n_atoms; ++i) pool.push_back(atom("v" + std::to_string(i)));

  PlanningTask t;
  t.atoms = {pool.begin(), pool.end()};

  for (int m = 0; m < n_macros; ++m) {
    for (int attempt = 0;; ++attempt) {
      ActionPtr a1 = random_action(rng, pool, "m" + std::to_string(m) + "a");
      ActionPtr a2 = random_action(rng, pool, "m" + std::to_string(m) + "b");
      CompositionOutcome out = compose(a1, a2, "m" + std::to_string(m));
      if (out.defined()) {
        t.actions.push_back(out.macro);
        break;
      }
      if (attempt > 200) throw std::logic_error("no composable pair found");
    }
  }
  for (int i = 0; i < n_ordinary; ++i)
    t.actions.push_back(random_action(rng, pool, "o" + std::to_string(i)));

  t.init = random_atom_subset(rng, pool, 50);

  // Prefer goals the macros achieve and that do not hold initially, so the
  // solutions actually exercise macro steps.
  AtomSet by_macro, achievable;
  for (const auto& a : t.actions) {
    AtomSet adds = set_union(a->eff_e_add(), a->eff_s_add());
    achievable = set_union(achievable, adds);
    if (a->is_macro()) by_macro = set_union(by_macro, adds);
  }
  AtomSet fresh_macro = set_minus(by_macro, t.init);
  AtomSet fresh_any = set_minus(achievable, t.init);
  const AtomSet& source = !fresh_macro.empty()   ? fresh_macro
                          : !fresh_any.empty()   ? fresh_any
                                                 : achievable;
  if (source.empty()) {
    t.goal = {};
  } else {
    std::vector<Atom> opts(source.begin(), source.end());
    t.goal = {opts[rng() % opts.size()]};
    if (opts.size() > 1 && rng() % 3 == 0) t.goal.insert(opts[rng() % opts.size()]);
  }
  return t;
}

}  // namespace tmac::testing
