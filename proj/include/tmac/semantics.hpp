#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tmac/model.hpp"

namespace tmac {

/// A pending ending event gathered while its action runs: the end stamp plus
/// the invariant, end precondition, and end effects of the owning step. Keyed
/// by owner (distinct end times make value collisions impossible anyway).
struct ScheduledEffect {
  Rat t_end;
  AtomSet pre_inv;
  AtomSet pre_e;
  LitSet eff_e;
  std::size_t owner;  // index into the plan's sorted steps
};

enum class EventKind { Initial, Start, End };

struct TraceEntry {
  std::size_t index = 0;
  Rat stamp;
  AtomSet state;
  std::vector<ScheduledEffect> scheduled;  // sorted by t_end
  EventKind event = EventKind::Initial;
  std::optional<std::size_t> step;  // owning plan step for Start/End
};

/// The 2|P|+1 time-stamped states induced by a plan.
struct Trace {
  std::vector<TraceEntry> entries;
};

/// Unrolls a plan into its trace. Entry 0 is (0, s0, {}); each later entry
/// advances to the least pending start or scheduled end time, applies the
/// start or end effects, and updates the scheduled-effect set.
///
/// Throws Errc::ShapeViolation when the plan fails validate_plan_shape and
/// Errc::UnknownAction when a step's action is not drawn from the task.
Trace unroll(const PlanningTask& task, const Plan& plan);

enum class ViolationKind { InvariantBroken, StartPreMissing, EndPreMissing, GoalMissing };

struct PlanViolation {
  std::size_t index;
  ViolationKind kind;
  AtomSet atoms;

  std::string str() const;
};

struct CheckReport {
  bool consistent = true;
  bool solves = true;
  std::vector<PlanViolation> violations;

  std::string str() const;
};

/// Consistency and solution check. Violations are collected exhaustively:
/// every running invariant broken at any entry, every missing start or end
/// precondition, and the goal atoms missing from the final state.
CheckReport check_plan(const PlanningTask& task, const Plan& plan);

}  // namespace tmac
