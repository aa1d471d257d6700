#include "tmac/model.hpp"

#include <map>
#include <utility>

#include "tmac/errors.hpp"

namespace tmac {

std::string Atom::str() const {
  std::string s = "(" + pred;
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  s += ')';
  return s;
}

std::string Literal::str() const {
  return positive ? atom.str() : "(not " + atom.str() + ")";
}

AtomSet positives(const LitSet& ls) {
  AtomSet r;
  for (const auto& l : ls) {
    if (l.positive) r.insert(l.atom);
  }
  return r;
}

AtomSet negatives(const LitSet& ls) {
  AtomSet r;
  for (const auto& l : ls) {
    if (!l.positive) r.insert(l.atom);
  }
  return r;
}

LitSet as_positive_literals(const AtomSet& as) {
  LitSet r;
  for (const auto& a : as) r.insert(pos(a));
  return r;
}

LitSet as_negative_literals(const AtomSet& as) {
  LitSet r;
  for (const auto& a : as) r.insert(neg(a));
  return r;
}

Atom MutexAtom::surface() const {
  return {(guard == Guard::Add ? "can-add-" : "can-del-") + atom.pred, atom.args};
}

std::string MutexAtom::str() const { return surface().str(); }

AtomSet DurativeAction::mentioned_atoms() const {
  AtomSet r = set_union(set_union(pre_s, pre_inv), pre_e);
  for (const auto& l : eff_s) r.insert(l.atom);
  for (const auto& l : eff_e) r.insert(l.atom);
  return r;
}

std::string DurativeAction::display_name() const {
  std::string s = "(" + name;
  for (const auto& a : args) {
    s += ' ';
    s += a;
  }
  s += ')';
  return s;
}

std::string DurativeAction::flat_name() const {
  std::string s = name;
  for (const auto& a : args) {
    s += '_';
    s += a;
  }
  return s;
}

ActionPtr make_action(DurativeAction a) {
  return std::make_shared<const DurativeAction>(std::move(a));
}

bool same_behavior(const DurativeAction& a, const DurativeAction& b) {
  return a.dur == b.dur && a.pre_s == b.pre_s && a.pre_inv == b.pre_inv &&
         a.pre_e == b.pre_e && a.eff_s == b.eff_s && a.eff_e == b.eff_e;
}

bool same_structure(const DurativeAction& a, const DurativeAction& b) {
  if (a.name != b.name || a.args != b.args || !same_behavior(a, b) || a.mutex != b.mutex)
    return false;
  if (a.is_macro() != b.is_macro()) return false;
  if (!a.is_macro()) return true;
  return same_structure(*a.left, *b.left) && same_structure(*a.right, *b.right);
}

std::string ActionIssue::str() const {
  std::string s;
  switch (kind) {
    case Kind::StartDeleteConflict:
      s = "start delete effects overlap start add effects or the invariant:";
      break;
    case Kind::EndDeleteConflict:
      s = "end delete effects overlap end add effects:";
      break;
    case Kind::NonPositiveDuration:
      return "duration is not positive";
  }
  for (const auto& a : atoms) {
    s += ' ';
    s += a.str();
  }
  return s;
}

std::string WellFormednessReport::str() const {
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += "; ";
    s += i.str();
  }
  return s;
}

WellFormednessReport validate_action(const DurativeAction& a) {
  WellFormednessReport r;
  AtomSet start_clash = set_inter(a.eff_s_del(), set_union(a.eff_s_add(), a.pre_inv));
  if (!start_clash.empty())
    r.issues.push_back({ActionIssue::Kind::StartDeleteConflict, std::move(start_clash)});
  AtomSet end_clash = set_inter(a.eff_e_del(), a.eff_e_add());
  if (!end_clash.empty())
    r.issues.push_back({ActionIssue::Kind::EndDeleteConflict, std::move(end_clash)});
  if (!a.dur.positive())
    r.issues.push_back({ActionIssue::Kind::NonPositiveDuration, {}});
  return r;
}

bool operator==(const TimedAction& a, const TimedAction& b) {
  return a.t == b.t && a.action->name == b.action->name &&
         a.action->args == b.action->args && same_behavior(*a.action, *b.action);
}

namespace {

void sort_steps(std::vector<TimedAction>& steps) {
  std::sort(steps.begin(), steps.end(), [](const TimedAction& a, const TimedAction& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.action->name != b.action->name) return a.action->name < b.action->name;
    return a.action->args < b.action->args;
  });
}

}  // namespace

Plan::Plan(std::vector<TimedAction> s) : steps(std::move(s)) { sort_steps(steps); }

void Plan::add(Rat t, ActionPtr action) {
  steps.push_back({std::move(t), std::move(action)});
  sort_steps(steps);
}

Rat Plan::makespan() const {
  Rat m = 0;
  for (const auto& s : steps) m = std::max(m, s.end());
  return m;
}

std::string ShapeReport::str() const {
  std::string s;
  for (const auto& c : clashes) {
    if (!s.empty()) s += "; ";
    s += c.first + " coincides with " + c.second + " at t=" + c.at.str();
  }
  return s;
}

ShapeReport validate_plan_shape(const Plan& p) {
  ShapeReport r;
  struct Event {
    Rat t;
    std::string what;
  };
  std::vector<Event> events;
  for (const auto& s : p.steps) {
    if (!s.t.positive()) {
      r.clashes.push_back({s.t, "start of " + s.action->display_name(),
                           "the initial stamp (start times must be positive)"});
    }
    events.push_back({s.t, "start of " + s.action->display_name()});
    events.push_back({s.end(), "end of " + s.action->display_name()});
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      // events of one step (its own start and end) never coincide: dur > 0
      if (j == i + 1 && i % 2 == 0) continue;
      if (events[i].t == events[j].t)
        r.clashes.push_back({events[i].t, events[i].what, events[j].what});
    }
  }
  return r;
}

void check_task(const PlanningTask& task) {
  if (!is_subset(task.init, task.atoms))
    throw Error(Errc::Model, "task: initial state mentions atoms outside the universe");
  if (!is_subset(task.goal, task.atoms))
    throw Error(Errc::Model, "task: goal mentions atoms outside the universe");
  for (const auto& a : task.actions) {
    AtomSet extra = set_minus(a->mentioned_atoms(), task.atoms);
    if (!extra.empty())
      throw Error(Errc::Model, "task: action " + a->display_name() +
                                   " references atoms outside the universe, e.g. " +
                                   extra.begin()->str());
  }
}

}  // namespace tmac
