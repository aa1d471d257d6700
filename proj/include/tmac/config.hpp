#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmac/lifted.hpp"
#include "tmac/rational.hpp"

namespace tmac {

/// Shortest-path pre-processing spec: which schema is the move, which of its
/// parameters are the endpoints, and which static init predicate names the
/// edges.
struct MoveSpec {
  std::string schema;
  std::string from_param;  // "?from"
  std::string to_param;    // "?to"
  std::string edge_pred;
};

struct EdgeDuration {
  std::string from;
  std::string to;
  Rat dur;
};

/// The line-oriented configuration document shared by macro recipes, the
/// move spec, per-edge durations, and the emitted manifest:
///
///   macro NAME = schema term... ; schema term... ; ...
///   mutex NAME = (atom) ; (atom) ; ...          (emitted, informational)
///   move-schema SCHEMA ?from ?to EDGE-PREDICATE
///   edge FROM TO DURATION
///   # comment
struct Config {
  std::vector<MacroRecipe> recipes;
  std::optional<MoveSpec> move;
  std::vector<EdgeDuration> edges;
};

Config parse_config(std::string_view text);

/// The manifest for a set of composed macros: each recipe line followed by
/// the macro's parameterized mutex atoms.
std::string emit_manifest(const std::vector<LiftedSchema>& macros);

}  // namespace tmac
