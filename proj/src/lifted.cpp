#include "tmac/lifted.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "tmac/errors.hpp"

namespace tmac {

std::string LiftedAtom::str() const {
  std::string s = "(" + pred;
  for (const auto& t : terms) {
    s += ' ';
    s += t;
  }
  s += ')';
  return s;
}

const LiftedSchema* LiftedDomain::find_schema(const std::string& n) const {
  for (const auto& s : schemas) {
    if (s.name == n) return &s;
  }
  return nullptr;
}

const PredicateDecl* LiftedDomain::find_predicate(const std::string& n) const {
  for (const auto& p : predicates) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

namespace {

using Binding = std::map<std::string, std::string>;

Atom substitute(const LiftedAtom& a, const Binding& b) {
  Atom out;
  out.pred = a.pred;
  for (const auto& t : a.terms) {
    auto it = b.find(t);
    out.args.push_back(it == b.end() ? t : it->second);
  }
  return out;
}

/// Objects admissible for a parameter: exact type match, or everything for
/// the root type.
std::vector<std::string> candidates(const std::vector<TypedVar>& objects,
                                    const std::string& type) {
  std::vector<std::string> r;
  for (const auto& o : objects) {
    if (type == "object" || o.type == type) r.push_back(o.name);
  }
  return r;
}

template <class Fn>
void enumerate_bindings(const std::vector<TypedVar>& params,
                        const std::vector<TypedVar>& objects, Fn&& fn) {
  std::vector<std::vector<std::string>> pools;
  for (const auto& p : params) pools.push_back(candidates(objects, p.type));
  std::vector<std::string> pick(params.size());
  std::vector<std::size_t> idx(params.size(), 0);
  if (params.empty()) {
    fn(pick);
    return;
  }
  for (const auto& pool : pools) {
    if (pool.empty()) return;
  }
  for (;;) {
    for (std::size_t i = 0; i < params.size(); ++i) pick[i] = pools[i][idx[i]];
    fn(pick);
    std::size_t i = params.size();
    while (i-- > 0) {
      if (++idx[i] < pools[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
  }
}

bool injective(const std::vector<std::string>& binding) {
  std::set<std::string> seen(binding.begin(), binding.end());
  return seen.size() == binding.size();
}

Binding as_map(const std::vector<TypedVar>& params, const std::vector<std::string>& binding) {
  Binding b;
  for (std::size_t i = 0; i < params.size(); ++i) b[params[i].name] = binding[i];
  return b;
}

MutexSet ground_mutex(const std::vector<LiftedMutex>& mx, const Binding& b) {
  MutexSet out;
  for (const auto& m : mx) out.insert({m.guard, substitute(m.atom, b)});
  return out;
}

/// Grounds the constituents of a macro schema under a binding of the macro's
/// parameters and composes them.
CompositionOutcome compose_constituents(const LiftedSchema& macro, const Binding& b,
                                        const std::vector<std::string>& args,
                                        std::string* ill_formed) {
  std::vector<ActionPtr> parts;
  for (std::size_t i = 0; i < macro.macro->steps.size(); ++i) {
    const MacroStep& step = macro.macro->steps[i];
    const LiftedSchema& s = macro.macro->parts[i];
    std::vector<std::string> part_binding;
    for (const auto& term : step.terms) {
      auto it = b.find(term);
      part_binding.push_back(it == b.end() ? term : it->second);
    }
    ActionPtr part = instantiate_schema(s, part_binding);
    WellFormednessReport wf = validate_action(*part);
    if (!wf.ok()) {
      if (ill_formed) *ill_formed = part->display_name() + ": " + wf.str();
      return {};
    }
    parts.push_back(std::move(part));
  }
  return compose_seq(parts, macro.name, args);
}

}  // namespace

ActionPtr instantiate_schema(const LiftedSchema& schema,
                             const std::vector<std::string>& binding) {
  if (binding.size() != schema.params.size())
    throw Error(Errc::Type, "schema " + schema.name + " expects " +
                                std::to_string(schema.params.size()) + " arguments");
  Binding b = as_map(schema.params, binding);

  DurativeAction a;
  a.name = schema.name;
  a.args = binding;
  a.dur = schema.dur;
  for (const auto& c : schema.conds) {
    Atom atom = substitute(c.atom, b);
    switch (c.tag) {
      case CondTag::AtStart: a.pre_s.insert(std::move(atom)); break;
      case CondTag::OverAll: a.pre_inv.insert(std::move(atom)); break;
      case CondTag::AtEnd: a.pre_e.insert(std::move(atom)); break;
    }
  }
  for (const auto& e : schema.effs) {
    Literal l{substitute(e.atom, b), e.positive};
    if (e.tag == EffTag::AtStart)
      a.eff_s.insert(std::move(l));
    else
      a.eff_e.insert(std::move(l));
  }
  return make_action(std::move(a));
}

PlanningTask ground(const LiftedDomain& dom, const Problem& prob, GroundingReport* report) {
  PlanningTask task;

  // The universe: every ground atom of every predicate over the objects.
  for (const auto& pred : dom.predicates) {
    enumerate_bindings(pred.params, prob.objects, [&](const std::vector<std::string>& binding) {
      task.atoms.insert(Atom{pred.name, binding});
    });
  }
  task.atoms.insert(prob.init.begin(), prob.init.end());
  task.atoms.insert(prob.goal.begin(), prob.goal.end());
  task.init = prob.init;
  task.goal = prob.goal;

  for (const auto& schema : dom.schemas) {
    enumerate_bindings(schema.params, prob.objects, [&](const std::vector<std::string>& binding) {
      if (schema.macro) {
        Binding b = as_map(schema.params, binding);
        std::string ill;
        CompositionOutcome out = compose_constituents(schema, b, binding, &ill);
        std::string name = "(" + schema.name;
        for (const auto& x : binding) name += " " + x;
        name += ")";
        if (!ill.empty()) {
          if (report)
            report->dropped.push_back({name, "ill-formed constituent under this binding: " + ill});
          return;
        }
        if (!out.defined()) {
          if (report) report->dropped.push_back({name, out.describe_failure()});
          return;
        }
        // Safety net: the lifted text must describe this grounding exactly.
        ActionPtr direct = instantiate_schema(schema, binding);
        if (!same_behavior(*direct, *out.macro) ||
            ground_mutex(schema.macro->mutex, b) != out.macro->mutex) {
          if (report)
            report->dropped.push_back(
                {name, "lifted macro disagrees with the composed constituents under aliasing"});
          return;
        }
        task.actions.push_back(out.macro);
        return;
      }
      ActionPtr a = instantiate_schema(schema, binding);
      WellFormednessReport wf = validate_action(*a);
      if (!wf.ok()) {
        if (injective(binding))
          throw Error(Errc::Model, "schema " + schema.name +
                                       " is ill-formed even for distinct objects: " + wf.str());
        if (report) report->dropped.push_back({a->display_name(), wf.str()});
        return;
      }
      task.actions.push_back(std::move(a));
    });
  }

  check_task(task);
  return task;
}

LiftedSchema lift_compose(const LiftedDomain& dom, const MacroRecipe& recipe) {
  if (recipe.steps.size() < 2)
    throw Error(Errc::TooShort, "macro " + recipe.name + ": need at least two steps");

  // Macro parameters: variables in order of first occurrence across steps.
  std::vector<TypedVar> params;
  auto param_type = [&](const std::string& v) -> std::string* {
    for (auto& p : params) {
      if (p.name == v) return &p.type;
    }
    return nullptr;
  };

  std::vector<ActionPtr> symbolic;
  for (const auto& step : recipe.steps) {
    const LiftedSchema* schema = dom.find_schema(step.schema);
    if (!schema)
      throw Error(Errc::UnknownSchema, "macro " + recipe.name + ": unknown schema " + step.schema);
    if (schema->macro)
      throw Error(Errc::MacroLeftOperand,
                  "macro " + recipe.name + ": step " + step.schema + " is itself a macro");
    if (step.terms.size() != schema->params.size())
      throw Error(Errc::Type, "macro " + recipe.name + ": step " + step.schema + " expects " +
                                  std::to_string(schema->params.size()) + " terms");
    for (std::size_t i = 0; i < step.terms.size(); ++i) {
      const std::string& t = step.terms[i];
      if (!is_variable(t)) continue;
      if (std::string* ty = param_type(t)) {
        if (*ty != schema->params[i].type)
          throw Error(Errc::Type, "macro " + recipe.name + ": variable " + t +
                                      " used with conflicting types " + *ty + " and " +
                                      schema->params[i].type);
      } else {
        params.push_back({t, schema->params[i].type});
      }
    }
    // Variables denote distinct objects here, so plain structural equality
    // of parameterized atoms is the right set algebra.
    symbolic.push_back(instantiate_schema(*schema, step.terms));
  }

  CompositionOutcome out = compose_seq(symbolic, recipe.name);
  if (!out.defined())
    throw Error(Errc::UndefinedForAllGroundings,
                "macro " + recipe.name + " is undefined at step " + std::to_string(out.step) +
                    ": " + out.describe_failure());

  const DurativeAction& m = *out.macro;
  LiftedSchema schema;
  schema.name = recipe.name;
  schema.params = params;
  schema.dur = m.dur;
  auto lifted = [](const Atom& a) { return LiftedAtom{a.pred, a.args}; };
  for (const auto& a : m.pre_s) schema.conds.push_back({CondTag::AtStart, lifted(a)});
  for (const auto& a : m.pre_inv) schema.conds.push_back({CondTag::OverAll, lifted(a)});
  for (const auto& a : m.pre_e) schema.conds.push_back({CondTag::AtEnd, lifted(a)});
  for (const auto& l : m.eff_s) schema.effs.push_back({EffTag::AtStart, lifted(l.atom), l.positive});
  for (const auto& l : m.eff_e) schema.effs.push_back({EffTag::AtEnd, lifted(l.atom), l.positive});

  MacroInfo info;
  info.steps = recipe.steps;
  for (const auto& step : recipe.steps) info.parts.push_back(*dom.find_schema(step.schema));
  for (const auto& mx : m.mutex) info.mutex.push_back({mx.guard, lifted(mx.atom)});
  schema.macro = std::move(info);
  return schema;
}

std::size_t LiftReport::admitted() const {
  std::size_t n = 0;
  for (const auto& c : checks) {
    if (c.status == GroundingCheck::Status::Admitted) ++n;
  }
  return n;
}

std::string LiftReport::str() const {
  std::string s;
  for (const auto& c : checks) {
    s += c.status == GroundingCheck::Status::Admitted ? "admitted " : "excluded ";
    s += '[';
    for (std::size_t i = 0; i < c.binding.size(); ++i) {
      if (i) s += ' ';
      s += c.binding[i];
    }
    s += ']';
    if (!c.detail.empty()) {
      s += ": ";
      s += c.detail;
    }
    s += '\n';
  }
  return s;
}

LiftReport verify_macro_groundings(const LiftedSchema& macro, const Problem& prob) {
  if (!macro.macro)
    throw Error(Errc::NotAMacro, "schema " + macro.name + " carries no macro structure");
  LiftReport report;
  enumerate_bindings(macro.params, prob.objects, [&](const std::vector<std::string>& binding) {
    GroundingCheck check;
    check.binding = binding;
    Binding b = as_map(macro.params, binding);
    std::string ill;
    CompositionOutcome out = compose_constituents(macro, b, binding, &ill);
    if (!ill.empty()) {
      check.status = GroundingCheck::Status::ExcludedIllFormed;
      check.detail = ill;
    } else if (!out.defined()) {
      check.status = GroundingCheck::Status::ExcludedUndefined;
      check.detail = out.describe_failure();
    } else {
      ActionPtr direct = instantiate_schema(macro, binding);
      if (same_behavior(*direct, *out.macro) &&
          ground_mutex(macro.macro->mutex, b) == out.macro->mutex) {
        check.status = GroundingCheck::Status::Admitted;
      } else {
        check.status = GroundingCheck::Status::ExcludedMismatch;
        check.detail = "lifted instantiation disagrees with the composed constituents";
      }
    }
    report.checks.push_back(std::move(check));
  });
  return report;
}

LiftedDomain apply_recipes(const LiftedDomain& dom, const std::vector<MacroRecipe>& recipes,
                           bool keep_constituents) {
  std::set<std::string> consumed;
  std::vector<LiftedSchema> macros;
  for (const auto& r : recipes) {
    macros.push_back(lift_compose(dom, r));
    for (const auto& s : r.steps) consumed.insert(s.schema);
  }

  LiftedDomain out = dom;
  if (!keep_constituents) {
    std::erase_if(out.schemas,
                  [&](const LiftedSchema& s) { return consumed.count(s.name) > 0; });
  }
  for (auto& m : macros) {
    if (out.find_schema(m.name))
      throw Error(Errc::NameClash, "macro " + m.name + " collides with an existing schema");
    out.schemas.push_back(std::move(m));
  }
  return out;
}

}  // namespace tmac
