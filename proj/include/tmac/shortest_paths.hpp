#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "tmac/config.hpp"
#include "tmac/lifted.hpp"

namespace tmac {

/// Min-plus all-pairs shortest distances over exact rational weights;
/// nullopt marks unreachable pairs. Diagonal entries are 0.
std::vector<std::vector<std::optional<Rat>>> all_pairs_shortest(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Rat>>& edges);

/// Replaces the designated move schema by one direct move per ordered pair
/// of locations reachable in the edge graph, with the shortest-path distance
/// as its duration. Edges come from the problem's init atoms of the edge
/// predicate; their weight defaults to the schema's duration and is
/// overridden by sidecar edge entries. The edge-predicate conditions are
/// dropped from the emitted moves (the predicate is static and path
/// existence discharges it).
std::pair<LiftedDomain, Problem> shortest_path_closure(const LiftedDomain& dom,
                                                       const Problem& prob,
                                                       const MoveSpec& spec,
                                                       const std::vector<EdgeDuration>& table);

}  // namespace tmac
