#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmac/model.hpp"

namespace tmac {

enum class UndefinedReason { InvariantDeletedAtStart, EndPreFalsifiedInside };

/// Result of composing two actions into a sequential macro. Either the macro
/// itself, or the reason composition is undefined plus the witnessing atoms.
struct CompositionOutcome {
  ActionPtr macro;  // null when undefined
  std::optional<UndefinedReason> reason;
  AtomSet witnesses;
  std::size_t step = 0;  // for sequences: index of the left operand at failure

  bool defined() const { return macro != nullptr; }
  std::string describe_failure() const;
};

/// Composes first ; second into one macro-action executing them back to
/// back. Delete effects arising inside the macro are pulled to its start,
/// add effects arising inside are postponed to its end, and preconditions
/// that survive neither move become start preconditions or mutex atoms.
///
/// The left operand must be ordinary (chains are built right to left); the
/// right operand may itself be a macro, whose mutex atoms are inherited.
/// Throws Errc::IllFormedInput when either input fails validate_action and
/// Errc::MacroLeftOperand for a macro on the left.
CompositionOutcome compose(const ActionPtr& first, const ActionPtr& second,
                           std::string name = {}, std::vector<std::string> args = {});

/// The mutex-atom set of the macro first ; second, given the macro's
/// already-computed invariant set. Del guards lock atoms whose truth the
/// macro relies on or re-establishes late; Add guards lock atoms the macro
/// falsifies along the way. The right operand's own set is inherited.
MutexSet mutex_atoms(const DurativeAction& first, const DurativeAction& second,
                     const AtomSet& macro_pre_inv);

/// Right-associative fold: a1 ; (a2 ; (... ; an)). On failure the outcome
/// carries the index of the left operand of the failing step. Throws
/// Errc::TooShort for fewer than two actions.
CompositionOutcome compose_seq(std::span<const ActionPtr> actions,
                               std::string name = {}, std::vector<std::string> args = {});

}  // namespace tmac
