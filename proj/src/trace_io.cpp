#include "tmac/trace_io.hpp"

#include <sstream>

#include <json.hpp>

namespace tmac {

namespace {

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Initial: return "initial";
    case EventKind::Start: return "start";
    case EventKind::End: return "end";
  }
  return "";
}

}  // namespace

std::string trace_text(const Trace& trace, const Plan& plan) {
  std::ostringstream os;
  for (const auto& e : trace.entries) {
    os << e.index << ' ' << e.stamp.str() << ' ' << kind_name(e.event) << ' ';
    os << (e.step ? plan.steps[*e.step].action->display_name() : "-");
    os << " |";
    if (e.index == 0) {
      for (const auto& a : e.state) os << " +" << a.str();
    } else {
      const AtomSet& before = trace.entries[e.index - 1].state;
      for (const auto& a : set_minus(e.state, before)) os << " +" << a.str();
      for (const auto& a : set_minus(before, e.state)) os << " -" << a.str();
    }
    os << '\n';
  }
  return os.str();
}

std::string trace_json(const Trace& trace, const Plan& plan) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : trace.entries) {
    nlohmann::json entry;
    entry["index"] = e.index;
    entry["stamp"] = e.stamp.str();
    entry["event"] = kind_name(e.event);
    if (e.step) entry["action"] = plan.steps[*e.step].action->display_name();
    nlohmann::json state = nlohmann::json::array();
    for (const auto& a : e.state) state.push_back(a.str());
    entry["state"] = std::move(state);
    nlohmann::json sched = nlohmann::json::array();
    for (const auto& f : e.scheduled) {
      nlohmann::json g;
      g["end"] = f.t_end.str();
      g["action"] = plan.steps[f.owner].action->display_name();
      nlohmann::json inv = nlohmann::json::array();
      for (const auto& a : f.pre_inv) inv.push_back(a.str());
      g["invariant"] = std::move(inv);
      sched.push_back(std::move(g));
    }
    entry["scheduled"] = std::move(sched);
    out.push_back(std::move(entry));
  }
  return out.dump(2) + "\n";
}

}  // namespace tmac
