#include "tmac/effect_safe.hpp"

#include <algorithm>
#include <set>

#include "tmac/errors.hpp"

namespace tmac {

ActionPtr EffectSafeTask::source_of(const ActionPtr& locked) const {
  for (std::size_t i = 0; i < task.actions.size(); ++i) {
    if (task.actions[i] == locked) return origin[i];
  }
  for (std::size_t i = 0; i < task.actions.size(); ++i) {
    const DurativeAction& a = *task.actions[i];
    if (a.name == locked->name && a.args == locked->args && same_behavior(a, *locked))
      return origin[i];
  }
  throw Error(Errc::UnknownAction,
              "action " + locked->display_name() + " is not part of the effect-safe task");
}

EffectSafeTask build_effect_safe(const PlanningTask& task) {
  MutexSet universe;
  for (const auto& a : task.actions) universe.insert(a->mutex.begin(), a->mutex.end());

  std::set<std::string> predicates;
  for (const auto& v : task.atoms) predicates.insert(v.pred);
  AtomSet lock_atoms;
  for (const auto& m : universe) {
    Atom s = m.surface();
    if (predicates.count(s.pred))
      throw Error(Errc::NameClash,
                  "mutex surface predicate " + s.pred + " collides with an existing predicate");
    lock_atoms.insert(std::move(s));
  }

  EffectSafeTask est;
  est.universe = universe;
  est.task.atoms = set_union(task.atoms, lock_atoms);
  est.task.init = set_union(task.init, lock_atoms);
  est.task.goal = task.goal;

  for (const auto& src : task.actions) {
    const DurativeAction& a = *src;
    DurativeAction locked;
    locked.name = a.name;
    locked.args = a.args;
    locked.dur = a.dur;
    locked.pre_inv = a.pre_inv;

    // Start preconditions: the action's own locks, the add-side locks of its
    // del-guards where such locks exist at all, and the locks (anyone's)
    // guarding its start effects.
    locked.pre_s = a.pre_s;
    for (const auto& m : a.mutex) {
      locked.pre_s.insert(m.surface());
      if (m.guard == Guard::Del) {
        MutexAtom add_side{Guard::Add, m.atom};
        if (universe.count(add_side)) locked.pre_s.insert(add_side.surface());
      }
    }
    for (const auto& l : a.eff_s) {
      MutexAtom g = guard_of(l);
      if (universe.count(g)) locked.pre_s.insert(g.surface());
    }

    // End preconditions: locks guarding its end effects, except its own.
    locked.pre_e = a.pre_e;
    for (const auto& l : a.eff_e) {
      MutexAtom g = guard_of(l);
      if (universe.count(g) && !a.mutex.count(g)) locked.pre_e.insert(g.surface());
    }

    // The action takes its locks at the start and releases them at the end.
    locked.eff_s = a.eff_s;
    locked.eff_e = a.eff_e;
    for (const auto& m : a.mutex) {
      locked.eff_s.insert(neg(m.surface()));
      locked.eff_e.insert(pos(m.surface()));
    }

    est.origin.push_back(src);
    est.task.actions.push_back(make_action(std::move(locked)));
  }

  check_task(est.task);
  return est;
}

Plan base_plan(const Plan& locked_plan, const EffectSafeTask& est) {
  Plan out;
  for (const auto& step : locked_plan.steps) out.add(step.t, est.source_of(step.action));
  return out;
}

}  // namespace tmac
