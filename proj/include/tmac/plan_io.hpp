#pragma once

#include <string>
#include <string_view>

#include "tmac/model.hpp"

namespace tmac {

/// Plan files: one step per line, "T: (name args...) [D]", ';' comments.
/// Times and durations accept integers, exact decimals, and fractions p/q.
/// A bracketed duration must equal the action's declared duration
/// (Errc::DurationMismatch); steps naming unknown actions raise
/// Errc::UnknownAction. Lines over ground-emitted domains may also use the
/// flattened single-token form (name_arg1_arg2).
Plan parse_plan(std::string_view text, const PlanningTask& task);

std::string emit_plan(const Plan& plan);

}  // namespace tmac
