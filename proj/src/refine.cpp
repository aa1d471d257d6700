#include "tmac/refine.hpp"

#include <algorithm>
#include <optional>

#include "tmac/errors.hpp"

namespace tmac {

namespace {

std::size_t locate(const Plan& plan, const TimedAction& step) {
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (plan.steps[i] == step) return i;
  }
  throw Error(Errc::NotInPlan, "no step " + step.action->display_name() + " at t=" + step.t.str());
}

}  // namespace

std::string RefinementStep::str() const {
  return "unfold " + removed.action->display_name() + " @ " + removed.t.str() +
         " (clearance " + clearance.str() + ") -> " + first.action->display_name() + " @ " +
         first.t.str() + ", " + second.action->display_name() + " @ " + second.t.str();
}

Rat refinement_delta(const Plan& plan, const TimedAction& step) {
  if (!step.action->is_macro())
    throw Error(Errc::NotAMacro, step.action->display_name() + " is not a macro-action");
  locate(plan, step);

  // Stamps 0..2|P|-1 of the trace: zero plus every event time but the last.
  std::vector<Rat> events;
  for (const auto& s : plan.steps) {
    events.push_back(s.t);
    events.push_back(s.end());
  }
  std::sort(events.begin(), events.end());
  std::vector<Rat> stamps;
  stamps.push_back(0);
  stamps.insert(stamps.end(), events.begin(), events.end() - 1);

  const Rat refs[3] = {step.t, step.t + step.action->left->dur, step.t + step.action->dur};
  std::optional<Rat> best;
  for (const Rat& ref : refs) {
    for (const Rat& s : stamps) {
      if (s < ref) {
        Rat gap = ref - s;
        if (!best || gap < *best) best = gap;
      }
    }
  }
  // stamp 0 sits below every reference, so the minimum exists and is positive
  return *best;
}

Plan refine_once(const Plan& plan, const TimedAction& step, RefinementStep* audit) {
  Rat d = refinement_delta(plan, step);
  std::size_t pos = locate(plan, step);

  const Rat t0 = step.t;
  const Rat t1 = t0 - d / 2;
  const Rat t2 = t0 + step.action->left->dur - d / 4;

  std::vector<TimedAction> steps = plan.steps;
  steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(pos));
  steps.push_back({t1, step.action->left});
  steps.push_back({t2, step.action->right});
  Plan out{std::move(steps)};

  ShapeReport shape = validate_plan_shape(out);
  if (!shape.ok())
    throw Error(Errc::Internal, "refinement produced coinciding events: " + shape.str());

  if (audit) *audit = {step, {t1, step.action->left}, {t2, step.action->right}, d};
  return out;
}

PlanningTask induced_task(const PlanningTask& context, const Plan& plan) {
  PlanningTask t;
  t.atoms = context.atoms;
  t.init = context.init;
  t.goal = context.goal;
  for (const auto& s : plan.steps) {
    bool seen = std::any_of(t.actions.begin(), t.actions.end(),
                            [&](const ActionPtr& a) { return a == s.action; });
    if (!seen) t.actions.push_back(s.action);
  }
  return t;
}

RefineResult refine_all(const PlanningTask& context, const Plan& plan, RefineOrder order) {
  RefineResult result;
  result.plan = plan;

  for (;;) {
    std::optional<TimedAction> pick;
    for (const auto& s : result.plan.steps) {
      if (!s.action->is_macro()) continue;
      if (!pick || (order == RefineOrder::DescendingStart ? s.t > pick->t : s.t < pick->t))
        pick = s;
    }
    if (!pick) break;

    RefinementStep audit;
    result.plan = refine_once(result.plan, *pick, &audit);
    result.audit.push_back(audit);

    CheckReport check = check_plan(induced_task(context, result.plan), result.plan);
    if (!check.solves)
      throw Error(Errc::Certification,
                  "refined plan failed certification after " + audit.str() + ": " + check.str());
  }
  return result;
}

}  // namespace tmac
