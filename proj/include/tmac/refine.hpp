#pragma once

#include <vector>

#include "tmac/model.hpp"
#include "tmac/semantics.hpp"

namespace tmac {

/// One unfolding: the removed time-stamped macro, the two constituents
/// inserted in its place, and the clearance delta around the boundary events.
struct RefinementStep {
  TimedAction removed;
  TimedAction first;
  TimedAction second;
  Rat clearance;

  std::string str() const;
};

/// Clearance around the three reference times of a macro step (its start,
/// its internal seam, and its end): the least positive gap from any earlier
/// trace stamp, the final stamp excluded. Always positive.
///
/// Throws Errc::NotAMacro / Errc::NotInPlan.
Rat refinement_delta(const Plan& plan, const TimedAction& step);

/// Unfolds one time-stamped macro into its two constituents, placing the
/// first at t0 - delta/2 and the second at t0 + dur(first) - delta/4. Both
/// land strictly inside the admissible open intervals, and the new end stays
/// within delta of the macro's, so no foreign event intrudes between any
/// replaced and original event pair.
Plan refine_once(const Plan& plan, const TimedAction& step, RefinementStep* audit = nullptr);

enum class RefineOrder { DescendingStart, AscendingStart };

struct RefineResult {
  Plan plan;
  std::vector<RefinementStep> audit;
};

/// The task a plan is measured against while refining: the context's
/// universe, initial state, and goal, with the plan's own actions.
PlanningTask induced_task(const PlanningTask& context, const Plan& plan);

/// Repeatedly unfolds macros until none remain, re-certifying each
/// intermediate plan against its induced task. A failed certification throws
/// Errc::Certification: for a solution input it indicates a bug, since
/// stepwise refinement preserves solutions by construction.
RefineResult refine_all(const PlanningTask& context, const Plan& plan,
                        RefineOrder order = RefineOrder::DescendingStart);

}  // namespace tmac
