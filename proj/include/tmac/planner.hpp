#pragma once

#include <cstddef>

#include "tmac/model.hpp"

namespace tmac {

/// Bounds for the desk-scale solver. epsilon is the scheduling grid pitch:
/// candidate start times are positive multiples of epsilon, which also keeps
/// distinct events at least a grid step apart whenever durations are grid
/// multiples.
struct SearchLimits {
  std::size_t max_steps = 4;
  Rat horizon = Rat(50);
  Rat epsilon = Rat::of(1, 100);
  std::size_t node_budget = 1000000;
};

enum class SearchStatus { Solved, ExhaustedComplete, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::ExhaustedComplete;
  Plan plan;  // meaningful when Solved
  std::size_t nodes = 0;

  bool solved() const { return status == SearchStatus::Solved; }
};

/// Bounded-exhaustive forward search. Plans are explored as event orders
/// (which action starts or ends next); each order prunes on the exact
/// consistency conditions and on schedulability, i.e. whether start times on
/// the epsilon grid within the horizon can realize the order. Found plans are
/// re-checked against the plan semantics before being returned.
///
/// ExhaustedComplete certifies that no plan of at most max_steps actions with
/// grid start times and all ends within the horizon is a solution; it is
/// returned only after the full bounded space was enumerated.
SearchResult solve(const PlanningTask& task, const SearchLimits& limits = {});

}  // namespace tmac
