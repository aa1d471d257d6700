#include <doctest.h>

#include "fixtures.hpp"
#include "tmac/effect_safe.hpp"
#include "tmac/errors.hpp"
#include "tmac/semantics.hpp"

using namespace tmac;
using namespace tmac::testing;

namespace {

Atom can_add(const Atom& a) { return MutexAtom{Guard::Add, a}.surface(); }
Atom can_del(const Atom& a) { return MutexAtom{Guard::Del, a}.surface(); }

}  // namespace

TEST_CASE("ordinary-only tasks transform to themselves") {
  PlanningTask t = pickup_task(false);
  EffectSafeTask est = build_effect_safe(t);
  CHECK(est.universe.empty());
  CHECK(est.task.atoms == t.atoms);
  CHECK(est.task.init == t.init);
  CHECK(est.task.goal == t.goal);
  REQUIRE(est.task.actions.size() == t.actions.size());
  for (std::size_t i = 0; i < t.actions.size(); ++i) {
    CHECK(same_behavior(*est.task.actions[i], *t.actions[i]));
    CHECK(est.origin[i] == t.actions[i]);
  }
}

TEST_CASE("the locked pickup macro takes and releases its five locks") {
  PlanningTask t = pickup_task(true);
  EffectSafeTask est = build_effect_safe(t);
  CHECK(est.universe.size() == 5);

  const Atom free_l2 = atom("free", {"l2"});
  const Atom empty_r = atom("empty", {"r"});
  const Atom at_rl2 = atom("at", {"r", "l2"});
  AtomSet locks{can_del(free_l2), can_del(empty_r), can_del(at_rl2),
                can_add(free_l2), can_add(empty_r)};

  CHECK(est.task.atoms == set_union(t.atoms, locks));
  CHECK(est.task.init == set_union(t.init, locks));

  REQUIRE(est.task.actions.size() == 1);
  const DurativeAction& locked = *est.task.actions[0];
  const DurativeAction& source = *t.actions[0];

  // start preconditions gain exactly the action's own locks: the add-side
  // guards of its del guards and the guards of its start effects are already
  // among them here
  CHECK(locked.pre_s == set_union(source.pre_s, locks));
  CHECK(locked.pre_inv == source.pre_inv);
  // no lock outside the action's own set guards its end effects
  CHECK(locked.pre_e == source.pre_e);
  CHECK(locked.eff_s == set_union(source.eff_s, as_negative_literals(locks)));
  CHECK(locked.eff_e == set_union(source.eff_e, as_positive_literals(locks)));
}

TEST_CASE("another action's volatile start effect picks up the lock precondition") {
  InterferenceFixture fx = interference_fixture();
  EffectSafeTask est = build_effect_safe(fx.task);

  // the macro holds a single add-guard on v2
  CHECK(fx.macro->mutex == MutexSet{{Guard::Add, atom("v2")}});

  const DurativeAction& locked_macro = *est.task.actions[0];
  const DurativeAction& locked_helper = *est.task.actions[1];
  CHECK(locked_macro.eff_s.count(neg(can_add(atom("v2")))) == 1);
  CHECK(locked_macro.eff_e.count(pos(can_add(atom("v2")))) == 1);
  // the helper adds v2 at its start, so it must hold the add lock
  CHECK(locked_helper.pre_s.count(can_add(atom("v2"))) == 1);
}

TEST_CASE("locks guarding end effects come from other actions only") {
  // the macro deletes p on the way and re-adds it at its end, locking
  // additions of p; a second action also adds p at its end
  ActionPtr a1 = action({.name = "a1", .dur = 1});
  ActionPtr a2 =
      action({.name = "a2", .dur = 1, .eff_s = {neg(atom("p"))}, .eff_e = {pos(atom("p"))}});
  CompositionOutcome out = compose(a1, a2, "m");
  REQUIRE(out.defined());
  REQUIRE(out.macro->mutex == MutexSet{{Guard::Add, atom("p")}});
  REQUIRE(out.macro->eff_e.count(pos(atom("p"))) == 1);

  ActionPtr adder = action({.name = "adder", .dur = 1, .eff_e = {pos(atom("p"))}});
  PlanningTask t;
  t.atoms = {atom("p")};
  t.actions = {out.macro, adder};
  EffectSafeTask est = build_effect_safe(t);

  const DurativeAction& locked_adder = *est.task.actions[1];
  CHECK(locked_adder.pre_e.count(can_add(atom("p"))) == 1);
  // the macro's own end effects are not guarded by its own locks
  const DurativeAction& locked_macro = *est.task.actions[0];
  CHECK(locked_macro.pre_e.count(can_add(atom("p"))) == 0);
}

TEST_CASE("lock predicates clashing with existing names are rejected") {
  ActionPtr a1 = action({.name = "a1", .dur = 1, .eff_e = {neg(atom("p"))}});
  ActionPtr a2 = action({.name = "a2", .dur = 1});
  CompositionOutcome out = compose(a1, a2, "m");
  REQUIRE(out.defined());
  PlanningTask t;
  t.atoms = {atom("p"), atom("can-add-p")};  // already taken
  t.actions = {out.macro};
  CHECK_THROWS_AS(static_cast<void>(build_effect_safe(t)), Error);
}

TEST_CASE("base plans keep stamps and map back to the sources") {
  PlanningTask t = pickup_task(true);
  EffectSafeTask est = build_effect_safe(t);

  Plan locked;
  locked.add(Rat::of(3, 2), est.task.actions[0]);
  Plan base = base_plan(locked, est);
  REQUIRE(base.size() == 1);
  CHECK(base.steps[0].t == Rat::of(3, 2));
  CHECK(base.steps[0].action == t.actions[0]);

  CHECK(base_plan(Plan{}, est).empty());

  Plan foreign;
  foreign.add(1, action({.name = "stranger", .dur = 1}));
  CHECK_THROWS_AS(static_cast<void>(base_plan(foreign, est)), Error);
}

TEST_CASE("a hand-written locked solution restricts to a base solution") {
  PlanningTask t = pickup_task(true);
  EffectSafeTask est = build_effect_safe(t);
  Plan locked;
  locked.add(1, est.task.actions[0]);
  CHECK(check_plan(est.task, locked).solves);
  Plan base = base_plan(locked, est);
  CHECK(check_plan(t, base).solves);

  // the locked trace restricted to the original universe matches the base trace
  Trace locked_trace = unroll(est.task, locked);
  Trace base_trace = unroll(t, base);
  REQUIRE(locked_trace.entries.size() == base_trace.entries.size());
  for (std::size_t i = 0; i < base_trace.entries.size(); ++i) {
    CHECK(locked_trace.entries[i].stamp == base_trace.entries[i].stamp);
    CHECK(set_inter(locked_trace.entries[i].state, t.atoms) == base_trace.entries[i].state);
  }
}
