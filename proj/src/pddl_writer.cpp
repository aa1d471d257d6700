#include <map>
#include <set>
#include <sstream>

#include "tmac/errors.hpp"
#include "tmac/pddl.hpp"

namespace tmac {

namespace {

void write_typed(std::ostream& os, const std::vector<TypedVar>& vars) {
  // group consecutive entries of one type: "a b - t c - u"
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    while (j < vars.size() && vars[j].type == vars[i].type) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (k > i || i > 0) os << ' ';
      os << vars[k].name;
    }
    if (vars[i].type != "object") os << " - " << vars[i].type;
    i = j;
  }
}

void write_atom(std::ostream& os, const LiftedAtom& a) {
  os << '(' << a.pred;
  for (const auto& t : a.terms) os << ' ' << t;
  os << ')';
}

const char* cond_tag(CondTag t) {
  switch (t) {
    case CondTag::AtStart: return "at start";
    case CondTag::OverAll: return "over all";
    case CondTag::AtEnd: return "at end";
  }
  return "";
}

void write_schema(std::ostream& os, const LiftedSchema& s) {
  os << "  (:durative-action " << s.name << "\n   :parameters (";
  write_typed(os, s.params);
  os << ")\n   :duration (= ?duration " << s.dur.str() << ")\n   :condition (and";
  for (const auto& c : s.conds) {
    os << " (" << cond_tag(c.tag) << ' ';
    write_atom(os, c.atom);
    os << ')';
  }
  os << ")\n   :effect (and";
  for (const auto& e : s.effs) {
    os << " (at " << (e.tag == EffTag::AtStart ? "start" : "end") << ' ';
    if (!e.positive) os << "(not ";
    write_atom(os, e.atom);
    if (!e.positive) os << ')';
    os << ')';
  }
  os << "))\n";
}

std::string atom_sexpr(const Atom& a) { return a.str(); }

}  // namespace

std::string emit_domain(const LiftedDomain& dom) {
  std::ostringstream os;
  os << "(define (domain " << dom.name << ")\n  (:requirements :durative-actions";
  if (dom.typed) os << " :typing";
  os << ")\n";
  if (!dom.types.empty()) {
    os << "  (:types";
    for (const auto& t : dom.types) os << ' ' << t;
    os << ")\n";
  }
  if (!dom.constants.empty()) {
    os << "  (:constants ";
    write_typed(os, dom.constants);
    os << ")\n";
  }
  os << "  (:predicates";
  for (const auto& p : dom.predicates) {
    os << "\n    (" << p.name;
    if (!p.params.empty()) {
      os << ' ';
      write_typed(os, p.params);
    }
    os << ')';
  }
  os << ")\n";
  for (const auto& s : dom.schemas) write_schema(os, s);
  os << ")\n";
  return os.str();
}

std::string emit_problem(const Problem& prob, const LiftedDomain& dom) {
  std::ostringstream os;
  os << "(define (problem " << prob.name << ")\n  (:domain "
     << (prob.domain.empty() ? dom.name : prob.domain) << ")\n";
  std::vector<TypedVar> own;  // objects that are not domain constants
  for (const auto& o : prob.objects) {
    bool is_const = false;
    for (const auto& c : dom.constants) is_const = is_const || c.name == o.name;
    if (!is_const) own.push_back(o);
  }
  os << "  (:objects ";
  write_typed(os, own);
  os << ")\n  (:init";
  for (const auto& a : prob.init) os << ' ' << atom_sexpr(a);
  os << ")\n  (:goal (and";
  for (const auto& a : prob.goal) os << ' ' << atom_sexpr(a);
  os << ")))\n";
  return os.str();
}

std::string emit_ground_domain(const PlanningTask& task, const std::string& name,
                               const LiftedDomain& dom, const Problem& prob) {
  std::ostringstream os;
  os << "(define (domain " << name << ")\n  (:requirements :durative-actions";
  if (dom.typed) os << " :typing";
  os << ")\n";
  if (!dom.types.empty()) {
    os << "  (:types";
    for (const auto& t : dom.types) os << ' ' << t;
    os << ")\n";
  }
  os << "  (:constants ";
  write_typed(os, prob.objects);
  os << ")\n  (:predicates";

  // predicates actually present in the universe; locks appear here
  std::map<std::string, std::size_t> preds;
  for (const auto& v : task.atoms) preds.emplace(v.pred, v.args.size());
  for (const auto& [pname, arity] : preds) {
    const PredicateDecl* decl = dom.find_predicate(pname);
    if (!decl) {
      // lock predicate: reuse the parameter list of the guarded predicate
      for (const char* prefix : {"can-add-", "can-del-"}) {
        if (pname.rfind(prefix, 0) == 0) decl = dom.find_predicate(pname.substr(8));
      }
    }
    os << "\n    (" << pname;
    if (decl && decl->params.size() == arity) {
      if (!decl->params.empty()) {
        os << ' ';
        write_typed(os, decl->params);
      }
    } else {
      for (std::size_t i = 0; i < arity; ++i) os << " ?x" << i;
    }
    os << ')';
  }
  os << ")\n";

  for (const auto& a : task.actions) {
    os << "  (:durative-action " << a->flat_name()
       << "\n   :parameters ()\n   :duration (= ?duration " << a->dur.str()
       << ")\n   :condition (and";
    for (const auto& v : a->pre_s) os << " (at start " << v.str() << ')';
    for (const auto& v : a->pre_inv) os << " (over all " << v.str() << ')';
    for (const auto& v : a->pre_e) os << " (at end " << v.str() << ')';
    os << ")\n   :effect (and";
    for (const auto& l : a->eff_s) os << " (at start " << l.str() << ')';
    for (const auto& l : a->eff_e) os << " (at end " << l.str() << ')';
    os << "))\n";
  }
  os << ")\n";
  return os.str();
}

std::string emit_ground_problem(const PlanningTask& task, const std::string& name,
                                const std::string& domain_name, const Problem& prob) {
  std::ostringstream os;
  os << "(define (problem " << name << ")\n  (:domain " << domain_name
     << ")\n  (:objects)\n  (:init";
  for (const auto& a : task.init) os << ' ' << a.str();
  os << ")\n  (:goal (and";
  for (const auto& a : task.goal) os << ' ' << a.str();
  os << ")))\n";
  return os.str();
}

}  // namespace tmac
