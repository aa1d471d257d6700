#include "tmac/semantics.hpp"

#include <algorithm>

#include "tmac/errors.hpp"

namespace tmac {

namespace {

void apply_literals(AtomSet& state, const LitSet& effects) {
  for (const auto& l : effects) {
    if (l.positive)
      state.insert(l.atom);
    else
      state.erase(l.atom);
  }
}

}  // namespace

Trace unroll(const PlanningTask& task, const Plan& plan) {
  ShapeReport shape = validate_plan_shape(plan);
  if (!shape.ok())
    throw Error(Errc::ShapeViolation, "plan violates event-time distinctness: " + shape.str());
  for (const auto& s : plan.steps) {
    bool known = std::any_of(task.actions.begin(), task.actions.end(),
                             [&](const ActionPtr& a) { return same_behavior(*a, *s.action); });
    if (!known)
      throw Error(Errc::UnknownAction,
                  "plan step " + s.action->display_name() + " is not an action of the task");
  }

  Trace trace;
  TraceEntry first;
  first.stamp = 0;
  first.state = task.init;
  trace.entries.push_back(std::move(first));

  std::size_t next_start = 0;  // steps are sorted by start time
  std::vector<ScheduledEffect> pending;

  while (next_start < plan.steps.size() || !pending.empty()) {
    const TraceEntry& prev = trace.entries.back();

    std::optional<Rat> start_t;
    if (next_start < plan.steps.size()) start_t = plan.steps[next_start].t;
    std::optional<Rat> end_t;
    std::size_t end_pos = 0;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (!end_t || pending[i].t_end < *end_t) {
        end_t = pending[i].t_end;
        end_pos = i;
      }
    }
    if (start_t && end_t && *start_t == *end_t)
      throw Error(Errc::Internal, "tied start and end stamps survived the shape check");

    TraceEntry entry;
    entry.index = trace.entries.size();
    entry.state = prev.state;

    if (start_t && (!end_t || *start_t < *end_t)) {
      const TimedAction& step = plan.steps[next_start];
      entry.stamp = *start_t;
      entry.event = EventKind::Start;
      entry.step = next_start;
      apply_literals(entry.state, step.action->eff_s);
      pending.push_back({step.end(), step.action->pre_inv, step.action->pre_e,
                         step.action->eff_e, next_start});
      ++next_start;
    } else {
      ScheduledEffect done = pending[end_pos];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(end_pos));
      entry.stamp = *end_t;
      entry.event = EventKind::End;
      entry.step = done.owner;
      apply_literals(entry.state, done.eff_e);
    }

    entry.scheduled = pending;
    std::sort(entry.scheduled.begin(), entry.scheduled.end(),
              [](const ScheduledEffect& a, const ScheduledEffect& b) { return a.t_end < b.t_end; });
    trace.entries.push_back(std::move(entry));
  }

  return trace;
}

std::string PlanViolation::str() const {
  std::string s = "at entry " + std::to_string(index) + ": ";
  switch (kind) {
    case ViolationKind::InvariantBroken: s += "running invariant broken, missing"; break;
    case ViolationKind::StartPreMissing: s += "start precondition missing"; break;
    case ViolationKind::EndPreMissing: s += "end precondition missing"; break;
    case ViolationKind::GoalMissing: s += "goal atoms missing"; break;
  }
  for (const auto& a : atoms) {
    s += ' ';
    s += a.str();
  }
  return s;
}

std::string CheckReport::str() const {
  if (violations.empty()) return "ok";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.str();
  }
  return s;
}

CheckReport check_plan(const PlanningTask& task, const Plan& plan) {
  Trace trace = unroll(task, plan);
  CheckReport report;

  for (std::size_t i = 1; i < trace.entries.size(); ++i) {
    const TraceEntry& here = trace.entries[i];
    const TraceEntry& before = trace.entries[i - 1];

    AtomSet required;
    for (const auto& f : here.scheduled) required.insert(f.pre_inv.begin(), f.pre_inv.end());
    AtomSet missing = set_minus(required, here.state);
    if (!missing.empty())
      report.violations.push_back({i, ViolationKind::InvariantBroken, std::move(missing)});

    const TimedAction& step = plan.steps[*here.step];
    if (here.event == EventKind::Start) {
      AtomSet gap = set_minus(step.action->pre_s, before.state);
      if (!gap.empty())
        report.violations.push_back({i, ViolationKind::StartPreMissing, std::move(gap)});
    } else {
      AtomSet gap = set_minus(step.action->pre_e, before.state);
      if (!gap.empty())
        report.violations.push_back({i, ViolationKind::EndPreMissing, std::move(gap)});
    }
  }

  report.consistent = report.violations.empty();

  AtomSet unmet = set_minus(task.goal, trace.entries.back().state);
  const bool goal_met = unmet.empty();
  if (!goal_met)
    report.violations.push_back(
        {trace.entries.size() - 1, ViolationKind::GoalMissing, std::move(unmet)});
  report.solves = report.consistent && goal_met;

  return report;
}

}  // namespace tmac
