#include "tmac/config.hpp"

#include <cctype>
#include <sstream>

#include "tmac/errors.hpp"

namespace tmac {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == ')') continue;  // atoms may be written in s-expr form
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Config parse_config(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto err = [&](const std::string& m) { return Error(Errc::Parse, m, {lineno, 1}); };

    std::vector<std::string> head = words(raw);
    if (head.empty()) continue;
    const std::string& kind = head[0];

    if (kind == "macro") {
      auto eq = raw.find('=');
      if (eq == std::string::npos) throw err("expected 'macro NAME = step ; step ...'");
      std::vector<std::string> lhs = words(raw.substr(0, eq));
      if (lhs.size() != 2) throw err("expected exactly one macro name before '='");
      MacroRecipe recipe;
      recipe.name = lhs[1];
      for (const std::string& part : split(raw.substr(eq + 1), ';')) {
        std::vector<std::string> toks = words(part);
        if (toks.empty()) throw err("empty step in macro " + recipe.name);
        MacroStep step;
        step.schema = toks[0];
        step.terms.assign(toks.begin() + 1, toks.end());
        recipe.steps.push_back(std::move(step));
      }
      if (recipe.steps.size() < 2) throw err("macro " + recipe.name + " needs at least two steps");
      cfg.recipes.push_back(std::move(recipe));
    } else if (kind == "mutex") {
      // emitted alongside recipes; carries no extra information for loading
      continue;
    } else if (kind == "move-schema") {
      if (head.size() != 5)
        throw err("expected 'move-schema SCHEMA ?from ?to EDGE-PREDICATE'");
      if (cfg.move) throw err("duplicate move-schema line");
      cfg.move = MoveSpec{head[1], head[2], head[3], head[4]};
    } else if (kind == "edge") {
      if (head.size() != 4) throw err("expected 'edge FROM TO DURATION'");
      auto d = Rat::parse(head[3]);
      if (!d) throw err("cannot read edge duration '" + head[3] + "'");
      if (!d->positive()) throw err("edge durations must be positive");
      cfg.edges.push_back({head[1], head[2], *d});
    } else {
      throw err("unknown directive '" + kind + "'");
    }
  }
  return cfg;
}

std::string emit_manifest(const std::vector<LiftedSchema>& macros) {
  std::ostringstream os;
  for (const auto& m : macros) {
    if (!m.macro) continue;
    os << "macro " << m.name << " =";
    for (std::size_t i = 0; i < m.macro->steps.size(); ++i) {
      if (i) os << " ;";
      os << ' ' << m.macro->steps[i].schema;
      for (const auto& t : m.macro->steps[i].terms) os << ' ' << t;
    }
    os << '\n';
    if (!m.macro->mutex.empty()) {
      os << "mutex " << m.name << " =";
      bool first = true;
      for (const auto& mx : m.macro->mutex) {
        os << (first ? " " : " ; ");
        first = false;
        LiftedAtom surface{
            (mx.guard == Guard::Add ? "can-add-" : "can-del-") + mx.atom.pred, mx.atom.terms};
        os << surface.str();
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace tmac
