#pragma once

#include <vector>

#include "tmac/model.hpp"

namespace tmac {

/// Task whose actions carry mutex locks so that concurrent actions cannot
/// disturb the atoms a running macro depends on. Mutex atoms materialize as
/// ordinary atoms named can-add-<pred> / can-del-<pred>, all true initially.
struct EffectSafeTask {
  PlanningTask task;
  MutexSet universe;  // X: every mutex atom of every action
  // origin[i] is the source of task.actions[i]; names are preserved, so the
  // map is a bijection by construction.
  std::vector<ActionPtr> origin;

  ActionPtr source_of(const ActionPtr& locked) const;
};

/// Builds the effect-safe task: every action is augmented so it requires its
/// own locks free at the start, takes them for its duration, and releases
/// them at the end; any action whose effects are locked somewhere must hold
/// the corresponding lock atoms when those effects apply.
///
/// Throws Errc::NameClash when a lock's surface name collides with an
/// existing predicate.
EffectSafeTask build_effect_safe(const PlanningTask& task);

/// Replaces each locked action by its source, time stamps unchanged.
Plan base_plan(const Plan& locked_plan, const EffectSafeTask& est);

}  // namespace tmac
