#pragma once

#include <string>
#include <string_view>

#include "tmac/lifted.hpp"

namespace tmac {

/// Parses the supported durative-action subset: requirements
/// :durative-actions and :typing, a flat type list, typed predicates and
/// constants, and durative actions with constant durations, positive-atom
/// conditions tagged (at start | over all | at end), and literal effects
/// tagged (at start | at end).
///
/// Anything outside the subset raises Errc::UnsupportedFeature with a
/// position: numeric fluents, conditional effects, negative conditions,
/// duration inequalities, timed initial literals.
LiftedDomain parse_domain(std::string_view text);

Problem parse_problem(std::string_view text, const LiftedDomain& dom);

std::string emit_domain(const LiftedDomain& dom);
std::string emit_problem(const Problem& prob, const LiftedDomain& dom);

/// A ground task rendered back as PDDL: one zero-parameter durative action
/// per ground action (named name_arg1_arg2), objects as domain constants.
std::string emit_ground_domain(const PlanningTask& task, const std::string& name,
                               const LiftedDomain& dom, const Problem& prob);
std::string emit_ground_problem(const PlanningTask& task, const std::string& name,
                                const std::string& domain_name, const Problem& prob);

}  // namespace tmac
