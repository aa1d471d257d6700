#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tmac/rational.hpp"

namespace tmac {

/// Grounded predicate instance. Equality is structural.
struct Atom {
  std::string pred;
  std::vector<std::string> args;

  auto operator<=>(const Atom&) const = default;
  std::string str() const;
};

using AtomSet = std::set<Atom>;

struct Literal {
  Atom atom;
  bool positive = true;

  Literal complement() const { return {atom, !positive}; }
  auto operator<=>(const Literal&) const = default;
  std::string str() const;
};

using LitSet = std::set<Literal>;

inline Literal pos(Atom a) { return {std::move(a), true}; }
inline Literal neg(Atom a) { return {std::move(a), false}; }

AtomSet positives(const LitSet& ls);
AtomSet negatives(const LitSet& ls);
LitSet as_positive_literals(const AtomSet& as);
LitSet as_negative_literals(const AtomSet& as);

template <class T>
std::set<T> set_union(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> r = a;
  r.insert(b.begin(), b.end());
  return r;
}

template <class T>
std::set<T> set_minus(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

template <class T>
std::set<T> set_inter(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

template <class T>
bool is_subset(const std::set<T>& a, const std::set<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Which kind of effect on the atom the lock rejects while a macro runs:
/// Add locks out additions, Del locks out deletions.
enum class Guard { Add, Del };

struct MutexAtom {
  Guard guard;
  Atom atom;

  auto operator<=>(const MutexAtom&) const = default;
  /// Materialization as an ordinary atom: can-add-<pred> / can-del-<pred>,
  /// same arguments.
  Atom surface() const;
  std::string str() const;
};

using MutexSet = std::set<MutexAtom>;

/// The lock guarding a literal: Add for a positive literal, Del for a
/// negative one.
inline MutexAtom guard_of(const Literal& l) {
  return {l.positive ? Guard::Add : Guard::Del, l.atom};
}

struct DurativeAction;
using ActionPtr = std::shared_ptr<const DurativeAction>;

/// Durative action: positive duration, three precondition sets (at start /
/// over all / at end) and two effect sets (at start / at end). Macro-kind
/// actions additionally record the two composed constituents and their
/// accumulated mutex-atom set. Immutable after construction.
struct DurativeAction {
  std::string name;
  std::vector<std::string> args;
  Rat dur;
  AtomSet pre_s, pre_inv, pre_e;
  LitSet eff_s, eff_e;

  ActionPtr left;   // set iff macro
  ActionPtr right;  // set iff macro
  MutexSet mutex;   // empty for ordinary actions

  bool is_macro() const { return left != nullptr; }

  AtomSet eff_s_add() const { return positives(eff_s); }
  AtomSet eff_s_del() const { return negatives(eff_s); }
  AtomSet eff_e_add() const { return positives(eff_e); }
  AtomSet eff_e_del() const { return negatives(eff_e); }

  /// Every atom referenced by conditions or effects.
  AtomSet mentioned_atoms() const;

  /// "(name arg1 arg2)" — the plan-file token form.
  std::string display_name() const;
  /// "name_arg1_arg2" — the token form used by ground-emitted domains.
  std::string flat_name() const;
};

ActionPtr make_action(DurativeAction a);

/// Semantic payload comparison: duration plus the five condition/effect sets.
/// Names, arguments, and macro structure do not matter to plan semantics.
bool same_behavior(const DurativeAction& a, const DurativeAction& b);

/// Full structural comparison including name, arguments, mutex set, and
/// (recursively) constituents.
bool same_structure(const DurativeAction& a, const DurativeAction& b);

struct ActionIssue {
  enum class Kind { StartDeleteConflict, EndDeleteConflict, NonPositiveDuration };
  Kind kind;
  AtomSet atoms;

  std::string str() const;
};

struct WellFormednessReport {
  std::vector<ActionIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string str() const;
};

/// Report-style check of the standing assumptions on a single action:
/// eff_s- must not meet eff_s+ or the invariant, eff_e- must not meet eff_e+,
/// and the duration must be positive.
WellFormednessReport validate_action(const DurativeAction& a);

struct TimedAction {
  Rat t;
  ActionPtr action;

  Rat end() const { return t + action->dur; }
};

bool operator==(const TimedAction& a, const TimedAction& b);

/// Set of time-stamped actions, kept sorted by start time.
struct Plan {
  std::vector<TimedAction> steps;

  Plan() = default;
  explicit Plan(std::vector<TimedAction> s);

  void add(Rat t, ActionPtr action);
  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }

  /// Latest end time; zero for the empty plan.
  Rat makespan() const;
};

struct ShapeClash {
  Rat at;
  std::string first;   // e.g. "end of (move r l1 l2)"
  std::string second;  // e.g. "start of (get r l2)"
};

struct ShapeReport {
  std::vector<ShapeClash> clashes;
  bool ok() const { return clashes.empty(); }
  std::string str() const;
};

/// Checks the no-moving-targets requirement: across distinct steps, all
/// start times, all end times, and every start-vs-end pair must differ.
/// Start times must also be strictly positive.
ShapeReport validate_plan_shape(const Plan& p);

/// Task over a finite atom universe V: total initial state, partial goal.
struct PlanningTask {
  AtomSet atoms;
  std::vector<ActionPtr> actions;
  AtomSet init;
  AtomSet goal;
};

/// Load-time validation: init and goal inside V, every atom mentioned by an
/// action inside V. Throws Errc::Model on violation.
void check_task(const PlanningTask& task);

}  // namespace tmac
