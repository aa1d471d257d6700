#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmac/compose.hpp"
#include "tmac/model.hpp"

namespace tmac {

struct TypedVar {
  std::string name;  // "?x"
  std::string type;  // "object" when untyped

  auto operator<=>(const TypedVar&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedVar> params;
};

struct LiftedAtom {
  std::string pred;
  std::vector<std::string> terms;  // "?x" or a constant

  auto operator<=>(const LiftedAtom&) const = default;
  std::string str() const;
};

inline bool is_variable(const std::string& term) { return !term.empty() && term[0] == '?'; }

enum class CondTag { AtStart, OverAll, AtEnd };
enum class EffTag { AtStart, AtEnd };

struct Condition {
  CondTag tag;
  LiftedAtom atom;
  auto operator<=>(const Condition&) const = default;
};

struct SchemaEffect {
  EffTag tag;
  LiftedAtom atom;
  bool positive = true;
  auto operator<=>(const SchemaEffect&) const = default;
};

struct MacroStep {
  std::string schema;
  std::vector<std::string> terms;
};

struct LiftedMutex {
  Guard guard;
  LiftedAtom atom;
  auto operator<=>(const LiftedMutex&) const = default;
};

struct LiftedSchema;

/// Recorded on schemas produced by lifted composition: the constituent
/// sequence, the constituents themselves (so a macro domain stays grounded
/// even after the consumed schemas are dropped), and the parameterized mutex
/// atoms.
struct MacroInfo {
  std::vector<MacroStep> steps;
  std::vector<LiftedSchema> parts;  // parts[i] is the schema of steps[i]
  std::vector<LiftedMutex> mutex;
};

struct LiftedSchema {
  std::string name;
  std::vector<TypedVar> params;
  Rat dur;
  std::vector<Condition> conds;
  std::vector<SchemaEffect> effs;
  std::optional<MacroInfo> macro;
};

struct LiftedDomain {
  std::string name;
  std::vector<std::string> types;  // flat, all under the implicit "object"
  bool typed = false;
  std::vector<PredicateDecl> predicates;
  std::vector<TypedVar> constants;  // name/type pairs
  std::vector<LiftedSchema> schemas;

  const LiftedSchema* find_schema(const std::string& name) const;
  const PredicateDecl* find_predicate(const std::string& name) const;
};

struct Problem {
  std::string name;
  std::string domain;
  std::vector<TypedVar> objects;  // name/type pairs, constants included
  AtomSet init;
  AtomSet goal;
};

struct MacroRecipe {
  std::string name;
  std::vector<MacroStep> steps;
};

struct DroppedGrounding {
  std::string action;  // display name
  std::string why;
};

struct GroundingReport {
  std::vector<DroppedGrounding> dropped;
};

/// Enumerates all type-consistent instantiations. The atom universe is every
/// ground atom of every predicate over the objects, plus init and goal. A
/// ground action failing validate_action is dropped and reported when the
/// failure stems from parameter aliasing, and is a hard error otherwise.
/// Macro schemas ground through the composer: each instantiation grounds the
/// constituents and composes them, which also yields the macro structure the
/// refinement stage unfolds.
PlanningTask ground(const LiftedDomain& dom, const Problem& prob,
                    GroundingReport* report = nullptr);

/// Grounds one schema body under an explicit binding. Exposed for the
/// lifted-vs-grounded commutation check.
ActionPtr instantiate_schema(const LiftedSchema& schema,
                             const std::vector<std::string>& binding);

/// Composes the recipe's schemas symbolically, treating distinct variables
/// as distinct objects. The result carries the recipe so grounding can
/// rebuild constituents. Throws Errc::UnknownSchema for unknown steps and
/// Errc::UndefinedForAllGroundings when the symbolic composition is
/// undefined.
LiftedSchema lift_compose(const LiftedDomain& dom, const MacroRecipe& recipe);

struct GroundingCheck {
  enum class Status { Admitted, ExcludedUndefined, ExcludedIllFormed, ExcludedMismatch };
  std::vector<std::string> binding;
  Status status;
  std::string detail;
};

struct LiftReport {
  std::vector<GroundingCheck> checks;
  std::size_t admitted() const;
  std::string str() const;
};

/// Per-grounding safety net for a composed schema over a problem's objects:
/// a grounding is admitted when instantiating the lifted macro agrees
/// exactly with composing the correspondingly grounded constituents.
LiftReport verify_macro_groundings(const LiftedSchema& macro, const Problem& prob);

/// Applies recipes to a domain: adds the composed macro schemas and, unless
/// keep_constituents is set, removes the schemas any recipe consumed.
LiftedDomain apply_recipes(const LiftedDomain& dom, const std::vector<MacroRecipe>& recipes,
                           bool keep_constituents = false);

}  // namespace tmac
