#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "tmac/errors.hpp"
#include "tmac/pddl.hpp"

namespace tmac {

namespace {

struct SExpr {
  // leaf when items is empty and !list
  std::string text;
  std::vector<SExpr> items;
  bool list = false;
  SourcePos pos;

  bool leaf() const { return !list; }
  bool is(std::string_view kw) const { return leaf() && text == kw; }
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  SExpr read_all_one() {
    SExpr e = read();
    skip_space();
    if (pos_ < text_.size()) throw err("trailing input after the closing parenthesis");
    return e;
  }

 private:
  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw err("unexpected end of input, expected an expression");
    SourcePos at = here();
    char c = text_[pos_];
    if (c == ')') throw err("unexpected ')'");
    if (c == '(') {
      advance();
      SExpr e;
      e.list = true;
      e.pos = at;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw err("missing ')'");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    SExpr e;
    e.pos = at;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      e.text += to_lower(text_[pos_]);
      advance();
    }
    if (e.text.empty()) throw err("expected a symbol");
    return e;
  }

  static char to_lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourcePos here() const { return {line_, col_}; }
  Error err(const std::string& m) const { return Error(Errc::Parse, m, here()); }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

[[noreturn]] void fail(const SExpr& at, const std::string& m) {
  throw Error(Errc::Parse, m, at.pos);
}

[[noreturn]] void unsupported(const SExpr& at, const std::string& feature) {
  throw Error(Errc::UnsupportedFeature, "unsupported feature: " + feature, at.pos);
}

const SExpr& expect_list(const SExpr& e, const std::string& what) {
  if (!e.list) fail(e, "expected " + what);
  return e;
}

const std::string& expect_leaf(const SExpr& e, const std::string& what) {
  if (!e.leaf()) fail(e, "expected " + what);
  return e.text;
}

/// Reads "name name - type name ..." blocks into typed entries.
std::vector<TypedVar> typed_list(const SExpr& list, std::size_t from,
                                 const std::string& what) {
  std::vector<TypedVar> out;
  std::vector<std::string> pending;
  for (std::size_t i = from; i < list.items.size(); ++i) {
    const std::string& tok = expect_leaf(list.items[i], what + " name");
    if (tok == "-") {
      if (i + 1 >= list.items.size()) fail(list.items[i], "expected a type after '-'");
      const std::string& ty = expect_leaf(list.items[i + 1], "type name");
      for (auto& p : pending) out.push_back({std::move(p), ty});
      pending.clear();
      ++i;
    } else {
      pending.push_back(tok);
    }
  }
  for (auto& p : pending) out.push_back({std::move(p), "object"});
  return out;
}

LiftedAtom read_atom(const SExpr& e) {
  expect_list(e, "an atom");
  if (e.items.empty()) fail(e, "empty atom");
  LiftedAtom a;
  a.pred = expect_leaf(e.items[0], "a predicate name");
  if (a.pred == "=") unsupported(e, "numeric fluents");
  if (a.pred == "not" || a.pred == "and" || a.pred == "or" || a.pred == "when")
    fail(e, "expected an atom, found connective '" + a.pred + "'");
  for (std::size_t i = 1; i < e.items.size(); ++i)
    a.terms.push_back(expect_leaf(e.items[i], "a term"));
  return a;
}

struct DomainContext {
  const LiftedDomain* dom;
  const std::vector<TypedVar>* vars;  // in-scope parameters, may be null

  void check_atom(const SExpr& at, const LiftedAtom& a) const {
    const PredicateDecl* p = dom->find_predicate(a.pred);
    if (!p) fail(at, "unknown predicate " + a.pred);
    if (p->params.size() != a.terms.size())
      throw Error(Errc::Type,
                  "predicate " + a.pred + " expects " + std::to_string(p->params.size()) +
                      " arguments",
                  at.pos);
    for (const auto& t : a.terms) {
      if (is_variable(t)) {
        bool known = false;
        if (vars) {
          for (const auto& v : *vars) known = known || v.name == t;
        }
        if (!known)
          fail(at, "variable " + t + " is not declared in the parameters");
      }
    }
  }
};

void read_conditions(const SExpr& e, const DomainContext& ctx, std::vector<Condition>& out);

void read_one_condition(const SExpr& e, const DomainContext& ctx, std::vector<Condition>& out) {
  expect_list(e, "a condition");
  if (e.items.empty()) return;  // () is an empty condition
  if (e.items[0].is("and")) {
    read_conditions(e, ctx, out);
    return;
  }
  if (e.items.size() == 3 && e.items[0].is("at") && e.items[1].is("start")) {
    const SExpr& body = e.items[2];
    expect_list(body, "an atom");
    if (!body.items.empty() && body.items[0].is("not")) unsupported(body, "negative conditions");
    LiftedAtom a = read_atom(body);
    ctx.check_atom(body, a);
    out.push_back({CondTag::AtStart, std::move(a)});
    return;
  }
  if (e.items.size() == 3 && e.items[0].is("over") && e.items[1].is("all")) {
    const SExpr& body = e.items[2];
    expect_list(body, "an atom");
    if (!body.items.empty() && body.items[0].is("not")) unsupported(body, "negative conditions");
    LiftedAtom a = read_atom(body);
    ctx.check_atom(body, a);
    out.push_back({CondTag::OverAll, std::move(a)});
    return;
  }
  if (e.items.size() == 3 && e.items[0].is("at") && e.items[1].is("end")) {
    const SExpr& body = e.items[2];
    expect_list(body, "an atom");
    if (!body.items.empty() && body.items[0].is("not")) unsupported(body, "negative conditions");
    LiftedAtom a = read_atom(body);
    ctx.check_atom(body, a);
    out.push_back({CondTag::AtEnd, std::move(a)});
    return;
  }
  if (!e.items.empty() && (e.items[0].is("<=") || e.items[0].is(">=") || e.items[0].is("<") ||
                           e.items[0].is(">") || e.items[0].is("=")))
    unsupported(e, "numeric conditions");
  fail(e, "expected (at start A), (over all A), or (at end A)");
}

void read_conditions(const SExpr& e, const DomainContext& ctx, std::vector<Condition>& out) {
  expect_list(e, "a condition");
  if (e.items.empty()) return;
  if (e.items[0].is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) read_one_condition(e.items[i], ctx, out);
    return;
  }
  read_one_condition(e, ctx, out);
}

void read_effects(const SExpr& e, const DomainContext& ctx, std::vector<SchemaEffect>& out);

void read_one_effect(const SExpr& e, const DomainContext& ctx, std::vector<SchemaEffect>& out) {
  expect_list(e, "an effect");
  if (e.items.empty()) return;
  if (e.items[0].is("and")) {
    read_effects(e, ctx, out);
    return;
  }
  if (e.items[0].is("when")) unsupported(e, "conditional effects");
  if (e.items[0].is("increase") || e.items[0].is("decrease") || e.items[0].is("assign") ||
      e.items[0].is("scale-up") || e.items[0].is("scale-down"))
    unsupported(e, "numeric effects");
  if (e.items.size() == 3 && e.items[0].is("at") && (e.items[1].is("start") || e.items[1].is("end"))) {
    EffTag tag = e.items[1].is("start") ? EffTag::AtStart : EffTag::AtEnd;
    const SExpr& body = expect_list(e.items[2], "a literal");
    bool positive = true;
    const SExpr* atom_expr = &body;
    if (!body.items.empty() && body.items[0].is("not")) {
      if (body.items.size() != 2) fail(body, "(not ...) takes exactly one atom");
      positive = false;
      atom_expr = &body.items[1];
    }
    LiftedAtom a = read_atom(*atom_expr);
    ctx.check_atom(*atom_expr, a);
    out.push_back({tag, std::move(a), positive});
    return;
  }
  fail(e, "expected (at start L) or (at end L)");
}

void read_effects(const SExpr& e, const DomainContext& ctx, std::vector<SchemaEffect>& out) {
  expect_list(e, "an effect");
  if (e.items.empty()) return;
  if (e.items[0].is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) read_one_effect(e.items[i], ctx, out);
    return;
  }
  read_one_effect(e, ctx, out);
}

Rat read_duration(const SExpr& e) {
  expect_list(e, "a duration constraint");
  if (e.items.size() == 3 && e.items[0].is("=") && e.items[1].is("?duration")) {
    const std::string& num = expect_leaf(e.items[2], "a duration value");
    auto r = Rat::parse(num);
    if (!r) fail(e.items[2], "cannot read duration value '" + num + "'");
    if (!r->positive()) fail(e.items[2], "durations must be positive");
    return *r;
  }
  if (!e.items.empty() &&
      (e.items[0].is("<=") || e.items[0].is(">=") || e.items[0].is("and")))
    unsupported(e, "duration inequalities");
  fail(e, "expected (= ?duration <value>)");
}

LiftedSchema read_schema(const SExpr& e, const LiftedDomain& dom) {
  LiftedSchema s;
  s.name = expect_leaf(e.items[1], "an action name");
  bool have_dur = false;
  std::size_t i = 2;
  while (i < e.items.size()) {
    const std::string& key = expect_leaf(e.items[i], "a section keyword");
    if (i + 1 >= e.items.size()) fail(e.items[i], "missing value after " + key);
    const SExpr& val = e.items[i + 1];
    if (key == ":parameters") {
      s.params = typed_list(expect_list(val, "a parameter list"), 0, "parameter");
      for (const auto& p : s.params) {
        if (!is_variable(p.name)) fail(val, "parameters must be ?variables");
      }
    } else if (key == ":duration") {
      s.dur = read_duration(val);
      have_dur = true;
    } else if (key == ":condition") {
      DomainContext ctx{&dom, &s.params};
      read_conditions(val, ctx, s.conds);
    } else if (key == ":effect") {
      DomainContext ctx{&dom, &s.params};
      read_effects(val, ctx, s.effs);
    } else {
      fail(e.items[i], "unexpected section " + key + " in a durative action");
    }
    i += 2;
  }
  if (!have_dur) fail(e, "durative action " + s.name + " has no :duration");
  // declared types must exist
  return s;
}

void check_types_exist(const std::vector<TypedVar>& vars, const LiftedDomain& dom,
                       const SExpr& at) {
  for (const auto& v : vars) {
    if (v.type == "object") continue;
    if (std::find(dom.types.begin(), dom.types.end(), v.type) == dom.types.end())
      throw Error(Errc::Type, "unknown type " + v.type, at.pos);
  }
}

}  // namespace

LiftedDomain parse_domain(std::string_view text) {
  Lexer lex(text);
  SExpr root = lex.read_all_one();
  expect_list(root, "(define ...)");
  if (root.items.size() < 2 || !root.items[0].is("define")) fail(root, "expected (define ...)");
  const SExpr& head = expect_list(root.items[1], "(domain NAME)");
  if (head.items.size() != 2 || !head.items[0].is("domain"))
    fail(root.items[1], "expected (domain NAME)");

  LiftedDomain dom;
  dom.name = expect_leaf(head.items[1], "a domain name");

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& sec = expect_list(root.items[i], "a domain section");
    if (sec.items.empty()) fail(sec, "empty domain section");
    const std::string& key = expect_leaf(sec.items[0], "a section keyword");

    if (key == ":requirements") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const std::string& req = expect_leaf(sec.items[j], "a requirement");
        if (req == ":durative-actions") continue;
        if (req == ":typing") {
          dom.typed = true;
          continue;
        }
        unsupported(sec.items[j], "requirement " + req);
      }
    } else if (key == ":types") {
      std::vector<TypedVar> ts = typed_list(sec, 1, "type");
      for (const auto& t : ts) {
        if (t.type != "object")
          unsupported(sec, "nested type hierarchies (" + t.name + " - " + t.type + ")");
        dom.types.push_back(t.name);
      }
    } else if (key == ":constants") {
      dom.constants = typed_list(sec, 1, "constant");
      check_types_exist(dom.constants, dom, sec);
    } else if (key == ":predicates") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const SExpr& p = expect_list(sec.items[j], "a predicate declaration");
        if (p.items.empty()) fail(p, "empty predicate declaration");
        PredicateDecl decl;
        decl.name = expect_leaf(p.items[0], "a predicate name");
        decl.params = typed_list(p, 1, "parameter");
        check_types_exist(decl.params, dom, p);
        if (dom.find_predicate(decl.name)) fail(p, "duplicate predicate " + decl.name);
        dom.predicates.push_back(std::move(decl));
      }
    } else if (key == ":functions") {
      unsupported(sec, "numeric fluents");
    } else if (key == ":durative-action") {
      LiftedSchema s = read_schema(sec, dom);
      check_types_exist(s.params, dom, sec);
      if (dom.find_schema(s.name)) fail(sec, "duplicate action " + s.name);
      dom.schemas.push_back(std::move(s));
    } else if (key == ":action") {
      unsupported(sec, "instantaneous actions (only durative actions are supported)");
    } else {
      fail(sec, "unexpected domain section " + key);
    }
  }
  return dom;
}

Problem parse_problem(std::string_view text, const LiftedDomain& dom) {
  Lexer lex(text);
  SExpr root = lex.read_all_one();
  expect_list(root, "(define ...)");
  if (root.items.size() < 2 || !root.items[0].is("define")) fail(root, "expected (define ...)");
  const SExpr& head = expect_list(root.items[1], "(problem NAME)");
  if (head.items.size() != 2 || !head.items[0].is("problem"))
    fail(root.items[1], "expected (problem NAME)");

  Problem prob;
  prob.name = expect_leaf(head.items[1], "a problem name");
  prob.objects = dom.constants;

  auto ground_atom = [&](const SExpr& e) {
    LiftedAtom a = read_atom(e);
    DomainContext ctx{&dom, nullptr};
    ctx.check_atom(e, a);
    for (const auto& t : a.terms) {
      if (is_variable(t)) fail(e, "ground atoms cannot contain variables");
      bool known = false;
      for (const auto& o : prob.objects) known = known || o.name == t;
      if (!known) fail(e, "unknown object " + t);
    }
    return Atom{a.pred, a.terms};
  };

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& sec = expect_list(root.items[i], "a problem section");
    if (sec.items.empty()) fail(sec, "empty problem section");
    const std::string& key = expect_leaf(sec.items[0], "a section keyword");

    if (key == ":domain") {
      if (sec.items.size() != 2) fail(sec, "expected (:domain NAME)");
      prob.domain = expect_leaf(sec.items[1], "a domain name");
      if (prob.domain != dom.name)
        fail(sec, "problem references domain " + prob.domain + ", expected " + dom.name);
    } else if (key == ":objects") {
      std::vector<TypedVar> objs = typed_list(sec, 1, "object");
      check_types_exist(objs, dom, sec);
      prob.objects.insert(prob.objects.end(), objs.begin(), objs.end());
    } else if (key == ":init") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const SExpr& e = expect_list(sec.items[j], "an initial atom");
        if (!e.items.empty() && e.items[0].is("=")) unsupported(e, "numeric fluents");
        if (!e.items.empty() && e.items[0].is("at") && e.items.size() == 3 &&
            e.items[1].leaf() && std::isdigit(static_cast<unsigned char>(e.items[1].text[0])))
          unsupported(e, "timed initial literals");
        if (!e.items.empty() && e.items[0].is("not"))
          fail(e, "initial states list true atoms only");
        prob.init.insert(ground_atom(e));
      }
    } else if (key == ":goal") {
      if (sec.items.size() != 2) fail(sec, "expected (:goal ...)");
      const SExpr& g = expect_list(sec.items[1], "a goal");
      auto goal_atom = [&](const SExpr& e) {
        if (!e.items.empty() && e.items[0].is("not")) unsupported(e, "negative goals");
        prob.goal.insert(ground_atom(e));
      };
      if (!g.items.empty() && g.items[0].is("and")) {
        for (std::size_t j = 1; j < g.items.size(); ++j)
          goal_atom(expect_list(g.items[j], "a goal atom"));
      } else if (!g.items.empty()) {
        goal_atom(g);
      }
    } else if (key == ":metric") {
      unsupported(sec, "metric specifications");
    } else {
      fail(sec, "unexpected problem section " + key);
    }
  }
  return prob;
}

}  // namespace tmac
