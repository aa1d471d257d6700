#include "tmac/plan_io.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "tmac/errors.hpp"

namespace tmac {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ':') {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
      toks.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

}  // namespace

Plan parse_plan(std::string_view text, const PlanningTask& task) {
  std::map<std::string, ActionPtr> by_tokens;  // "name arg1 arg2" and flat form
  for (const auto& a : task.actions) {
    std::string key = a->name;
    for (const auto& arg : a->args) key += ' ' + arg;
    by_tokens[key] = a;
    by_tokens[a->flat_name()] = a;
  }

  Plan plan;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto sc = raw.find(';'); sc != std::string::npos) raw.erase(sc);
    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    auto err = [&](Errc c, const std::string& m) { return Error(c, m, {lineno, 1}); };
    std::size_t i = 0;
    auto need = [&](const char* what) -> const std::string& {
      if (i >= toks.size()) throw err(Errc::Parse, std::string("expected ") + what);
      return toks[i];
    };

    auto t = Rat::parse(need("a start time"));
    if (!t) throw err(Errc::Parse, "cannot read start time '" + toks[i] + "'");
    ++i;
    if (need("':'") != ":") throw err(Errc::Parse, "expected ':' after the start time");
    ++i;
    if (need("'('") != "(") throw err(Errc::Parse, "expected '(' before the action");
    ++i;
    std::vector<std::string> name;
    while (need("an action token or ')'") != ")") name.push_back(toks[i++]);
    ++i;  // ')'
    if (name.empty()) throw err(Errc::Parse, "empty action");

    std::string key = name[0];
    for (std::size_t k = 1; k < name.size(); ++k) key += ' ' + name[k];
    auto found = by_tokens.find(key);
    if (found == by_tokens.end())
      throw err(Errc::UnknownAction, "unknown action (" + key + ")");
    const ActionPtr& action = found->second;

    if (i < toks.size()) {
      if (toks[i] != "[") throw err(Errc::Parse, "expected '[' before the duration");
      ++i;
      auto d = Rat::parse(need("a duration"));
      if (!d) throw err(Errc::Parse, "cannot read duration '" + toks[i] + "'");
      ++i;
      if (need("']'") != "]") throw err(Errc::Parse, "expected ']' after the duration");
      ++i;
      if (*d != action->dur)
        throw err(Errc::DurationMismatch,
                  "step duration " + d->str() + " does not match the declared duration " +
                      action->dur.str() + " of (" + key + ")");
    }
    if (i < toks.size()) throw err(Errc::Parse, "trailing input '" + toks[i] + "'");
    if (!t->positive()) throw err(Errc::Parse, "start times must be positive");
    plan.add(*t, action);
  }
  return plan;
}

std::string emit_plan(const Plan& plan) {
  std::ostringstream os;
  for (const auto& s : plan.steps)
    os << s.t.str() << ": " << s.action->display_name() << " [" << s.action->dur.str() << "]\n";
  return os.str();
}

}  // namespace tmac
