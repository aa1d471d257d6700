#pragma once

#include <string>

#include "tmac/semantics.hpp"

namespace tmac {

/// Line-oriented text form, one entry per line:
///   i tau event action | +added -removed
/// Rationals print exactly as p/q. Entry 0 lists the initial state.
std::string trace_text(const Trace& trace, const Plan& plan);

/// Structured form: a JSON array with one object per entry, carrying the
/// stamp, event, action, full state, and scheduled ending events.
std::string trace_json(const Trace& trace, const Plan& plan);

}  // namespace tmac
