#include "tmac/compose.hpp"

#include <utility>

#include "tmac/errors.hpp"

namespace tmac {

std::string CompositionOutcome::describe_failure() const {
  if (defined()) return "";
  if (!reason) return "ill-formed input";
  std::string s = *reason == UndefinedReason::InvariantDeletedAtStart
                      ? "start delete effects falsify the macro invariant:"
                      : "an end precondition is falsified inside the macro:";
  for (const auto& a : witnesses) {
    s += ' ';
    s += a.str();
  }
  return s;
}

CompositionOutcome compose(const ActionPtr& first, const ActionPtr& second,
                           std::string name, std::vector<std::string> args) {
  if (first->is_macro())
    throw Error(Errc::MacroLeftOperand,
                "compose: left operand " + first->display_name() +
                    " is a macro; chains must be composed from the end");
  WellFormednessReport w1 = validate_action(*first);
  if (!w1.ok())
    throw Error(Errc::IllFormedInput,
                "compose: " + first->display_name() + " is ill-formed: " + w1.str());
  WellFormednessReport w2 = validate_action(*second);
  if (!w2.ok())
    throw Error(Errc::IllFormedInput,
                "compose: " + second->display_name() + " is ill-formed: " + w2.str());

  const DurativeAction& a1 = *first;
  const DurativeAction& a2 = *second;

  const AtomSet pre1 = set_union(a1.pre_inv, a1.pre_e);
  const AtomSet add1 = set_union(a1.eff_s_add(), a1.eff_e_add());
  const AtomSet del1 = set_union(a1.eff_s_del(), a1.eff_e_del());
  const AtomSet add12 = set_union(a1.eff_e_add(), a2.eff_s_add());
  const AtomSet del12 = set_union(a1.eff_e_del(), a2.eff_s_del());
  const AtomSet del2 = set_union(a2.eff_s_del(), a2.eff_e_del());

  DurativeAction m;
  m.dur = a1.dur + a2.dur;

  // Start preconditions: a1's own, plus later preconditions of either action
  // that internal delete effects would falsify (unless start effects of a1,
  // or any add effect of a1 for a2's start preconditions, re-enable them).
  m.pre_s = set_union(a1.pre_s,
                      set_union(set_minus(set_inter(pre1, del12), a1.eff_s_add()),
                                set_minus(set_inter(a2.pre_s, a2.eff_s_del()), add1)));

  // Invariants: whatever survives the internal delete effects.
  m.pre_inv = set_union(
      set_minus(pre1, set_minus(del12, a1.eff_s_del())),
      set_union(set_minus(a2.pre_s,
                          set_union(a1.eff_e_add(), set_minus(a2.eff_s_del(), del1))),
                set_minus(a2.pre_inv, add12)));

  m.pre_e = set_minus(a2.pre_e, add12);

  // Start effects: a1's, minus positive literals on atoms the macro deletes
  // internally, plus the pulled-forward deletes themselves.
  for (const auto& l : a1.eff_s) {
    if (l.positive && del12.count(l.atom)) continue;
    m.eff_s.insert(l);
  }
  for (const auto& v : del12) m.eff_s.insert(neg(v));

  // End effects: a2's, plus postponed internal adds that survive a2's deletes.
  m.eff_e = set_union(a2.eff_e, as_positive_literals(set_minus(add12, del2)));

  AtomSet clash = set_inter(negatives(m.eff_s), m.pre_inv);
  if (!clash.empty()) {
    CompositionOutcome out;
    out.reason = UndefinedReason::InvariantDeletedAtStart;
    out.witnesses = std::move(clash);
    return out;
  }
  AtomSet lost = set_minus(set_inter(a2.pre_e, del12), a2.eff_s_add());
  if (!lost.empty()) {
    CompositionOutcome out;
    out.reason = UndefinedReason::EndPreFalsifiedInside;
    out.witnesses = std::move(lost);
    return out;
  }

  m.mutex = mutex_atoms(a1, a2, m.pre_inv);
  m.name = name.empty() ? a1.name + "+" + a2.name : std::move(name);
  m.args = std::move(args);
  m.left = first;
  m.right = second;

  CompositionOutcome out;
  out.macro = make_action(std::move(m));
  return out;
}

MutexSet mutex_atoms(const DurativeAction& a1, const DurativeAction& a2,
                     const AtomSet& macro_pre_inv) {
  const AtomSet pre1 = set_union(a1.pre_inv, a1.pre_e);
  const AtomSet pre2 = set_union(a2.pre_inv, a2.pre_e);
  const AtomSet add12 = set_union(a1.eff_e_add(), a2.eff_s_add());
  const AtomSet del12 = set_union(a1.eff_e_del(), a2.eff_s_del());
  const AtomSet del2 = set_union(a2.eff_s_del(), a2.eff_e_del());

  AtomSet del_guarded =
      set_union(set_minus(add12, set_union(a2.eff_e_add(), del2)),
                set_union(set_inter(pre1, del12),
                          set_union(set_minus(set_inter(a2.pre_s, a2.eff_s_del()),
                                              a1.eff_e_add()),
                                    set_inter(pre2, add12))));
  del_guarded = set_minus(del_guarded, macro_pre_inv);

  MutexSet xs = a2.mutex;
  for (const auto& v : del_guarded) xs.insert({Guard::Del, v});
  for (const auto& v : del12) xs.insert({Guard::Add, v});
  return xs;
}

CompositionOutcome compose_seq(std::span<const ActionPtr> actions,
                               std::string name, std::vector<std::string> args) {
  if (actions.size() < 2)
    throw Error(Errc::TooShort, "compose_seq: need at least two actions");

  ActionPtr acc = actions.back();
  for (std::size_t k = actions.size() - 1; k-- > 0;) {
    const bool outermost = k == 0;
    CompositionOutcome out =
        compose(actions[k], acc, outermost ? std::move(name) : std::string{},
                outermost ? std::move(args) : std::vector<std::string>{});
    if (!out.defined()) {
      out.step = k;
      return out;
    }
    acc = out.macro;
  }
  CompositionOutcome out;
  out.macro = std::move(acc);
  return out;
}

}  // namespace tmac
