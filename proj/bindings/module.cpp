#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmac/compose.hpp"
#include "tmac/config.hpp"
#include "tmac/effect_safe.hpp"
#include "tmac/errors.hpp"
#include "tmac/lifted.hpp"
#include "tmac/model.hpp"
#include "tmac/pddl.hpp"
#include "tmac/plan_io.hpp"
#include "tmac/planner.hpp"
#include "tmac/refine.hpp"
#include "tmac/semantics.hpp"
#include "tmac/shortest_paths.hpp"
#include "tmac/trace_io.hpp"

namespace py = pybind11;
using namespace tmac;

namespace {

Rat to_rat(const py::object& value) {
  if (py::isinstance<py::int_>(value)) return Rat(value.cast<long long>());
  auto r = Rat::parse(value.cast<std::string>());
  if (!r) throw Error(Errc::Parse, "cannot read rational '" + value.cast<std::string>() + "'");
  return *r;
}

struct PyAction {
  ActionPtr ptr;
};

struct PyPlan {
  Plan plan;
};

struct PyEst {
  EffectSafeTask est;
};

std::vector<Atom> atoms_of(const AtomSet& s) { return {s.begin(), s.end()}; }
std::vector<Literal> lits_of(const LitSet& s) { return {s.begin(), s.end()}; }

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["consistent"] = r.consistent;
  d["solves"] = r.solves;
  py::list vs;
  for (const auto& v : r.violations) {
    py::dict e;
    e["index"] = v.index;
    switch (v.kind) {
      case ViolationKind::InvariantBroken: e["kind"] = "invariant-broken"; break;
      case ViolationKind::StartPreMissing: e["kind"] = "start-pre-missing"; break;
      case ViolationKind::EndPreMissing: e["kind"] = "end-pre-missing"; break;
      case ViolationKind::GoalMissing: e["kind"] = "goal-missing"; break;
    }
    e["atoms"] = atoms_of(v.atoms);
    vs.append(e);
  }
  d["violations"] = vs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "durative-action macro composition, effect-safe tasks, plan "
            "validation, and refinement over exact rational time";

  py::register_exception<Error>(m, "TmacError");

  py::class_<Atom>(m, "Atom")
      .def(py::init<std::string, std::vector<std::string>>(), py::arg("pred"),
           py::arg("args") = std::vector<std::string>{})
      .def_readonly("pred", &Atom::pred)
      .def_readonly("args", &Atom::args)
      .def("__eq__", [](const Atom& a, const Atom& b) { return a == b; })
      .def("__lt__", [](const Atom& a, const Atom& b) { return a < b; })
      .def("__hash__", [](const Atom& a) { return py::hash(py::str(a.str())); })
      .def("__repr__", &Atom::str);

  py::class_<Literal>(m, "Literal")
      .def(py::init<Atom, bool>(), py::arg("atom"), py::arg("positive") = true)
      .def_readonly("atom", &Literal::atom)
      .def_readonly("positive", &Literal::positive)
      .def("complement", &Literal::complement)
      .def("__eq__", [](const Literal& a, const Literal& b) { return a == b; })
      .def("__hash__", [](const Literal& l) { return py::hash(py::str(l.str())); })
      .def("__repr__", &Literal::str);

  py::class_<MutexAtom>(m, "MutexAtom")
      .def_property_readonly(
          "guard", [](const MutexAtom& x) { return x.guard == Guard::Add ? "add" : "del"; })
      .def_readonly("atom", &MutexAtom::atom)
      .def("surface", &MutexAtom::surface)
      .def("__eq__", [](const MutexAtom& a, const MutexAtom& b) { return a == b; })
      .def("__hash__", [](const MutexAtom& x) { return py::hash(py::str(x.str())); })
      .def("__repr__", &MutexAtom::str);

  py::class_<PyAction>(m, "Action")
      .def(py::init([](const std::string& name, const std::vector<std::string>& args,
                       const py::object& dur, const std::vector<Atom>& pre_s,
                       const std::vector<Atom>& pre_inv, const std::vector<Atom>& pre_e,
                       const std::vector<Literal>& eff_s, const std::vector<Literal>& eff_e) {
             DurativeAction a;
             a.name = name;
             a.args = args;
             a.dur = to_rat(dur);
             a.pre_s = {pre_s.begin(), pre_s.end()};
             a.pre_inv = {pre_inv.begin(), pre_inv.end()};
             a.pre_e = {pre_e.begin(), pre_e.end()};
             a.eff_s = {eff_s.begin(), eff_s.end()};
             a.eff_e = {eff_e.begin(), eff_e.end()};
             return PyAction{make_action(std::move(a))};
           }),
           py::arg("name"), py::arg("args") = std::vector<std::string>{}, py::arg("dur") = 1,
           py::arg("pre_s") = std::vector<Atom>{}, py::arg("pre_inv") = std::vector<Atom>{},
           py::arg("pre_e") = std::vector<Atom>{}, py::arg("eff_s") = std::vector<Literal>{},
           py::arg("eff_e") = std::vector<Literal>{})
      .def_property_readonly("name", [](const PyAction& a) { return a.ptr->name; })
      .def_property_readonly("args", [](const PyAction& a) { return a.ptr->args; })
      .def_property_readonly("dur", [](const PyAction& a) { return a.ptr->dur.str(); })
      .def_property_readonly("pre_s", [](const PyAction& a) { return atoms_of(a.ptr->pre_s); })
      .def_property_readonly("pre_inv",
                             [](const PyAction& a) { return atoms_of(a.ptr->pre_inv); })
      .def_property_readonly("pre_e", [](const PyAction& a) { return atoms_of(a.ptr->pre_e); })
      .def_property_readonly("eff_s", [](const PyAction& a) { return lits_of(a.ptr->eff_s); })
      .def_property_readonly("eff_e", [](const PyAction& a) { return lits_of(a.ptr->eff_e); })
      .def_property_readonly("is_macro", [](const PyAction& a) { return a.ptr->is_macro(); })
      .def_property_readonly("left",
                             [](const PyAction& a) -> py::object {
                               if (!a.ptr->left) return py::none();
                               return py::cast(PyAction{a.ptr->left});
                             })
      .def_property_readonly("right",
                             [](const PyAction& a) -> py::object {
                               if (!a.ptr->right) return py::none();
                               return py::cast(PyAction{a.ptr->right});
                             })
      .def_property_readonly("mutex",
                             [](const PyAction& a) {
                               return std::vector<MutexAtom>{a.ptr->mutex.begin(),
                                                             a.ptr->mutex.end()};
                             })
      .def("validate",
           [](const PyAction& a) {
             std::vector<std::string> out;
             for (const auto& i : validate_action(*a.ptr).issues) out.push_back(i.str());
             return out;
           })
      .def("__repr__", [](const PyAction& a) { return a.ptr->display_name(); });

  py::class_<PlanningTask>(m, "Task")
      .def(py::init([](const std::vector<Atom>& atoms, const std::vector<PyAction>& actions,
                       const std::vector<Atom>& init, const std::vector<Atom>& goal) {
             PlanningTask t;
             t.atoms = {atoms.begin(), atoms.end()};
             for (const auto& a : actions) t.actions.push_back(a.ptr);
             t.init = {init.begin(), init.end()};
             t.goal = {goal.begin(), goal.end()};
             check_task(t);
             return t;
           }),
           py::arg("atoms"), py::arg("actions"), py::arg("init") = std::vector<Atom>{},
           py::arg("goal") = std::vector<Atom>{})
      .def_property_readonly("atoms", [](const PlanningTask& t) { return atoms_of(t.atoms); })
      .def_property_readonly("init", [](const PlanningTask& t) { return atoms_of(t.init); })
      .def_property_readonly("goal", [](const PlanningTask& t) { return atoms_of(t.goal); })
      .def_property_readonly("actions", [](const PlanningTask& t) {
        std::vector<PyAction> out;
        for (const auto& a : t.actions) out.push_back({a});
        return out;
      });

  py::class_<PyPlan>(m, "Plan")
      .def(py::init<>())
      .def("add",
           [](PyPlan& p, const py::object& t, const PyAction& a) { p.plan.add(to_rat(t), a.ptr); })
      .def("__len__", [](const PyPlan& p) { return p.plan.size(); })
      .def_property_readonly("steps",
                             [](const PyPlan& p) {
                               std::vector<std::pair<std::string, PyAction>> out;
                               for (const auto& s : p.plan.steps)
                                 out.emplace_back(s.t.str(), PyAction{s.action});
                               return out;
                             })
      .def("__repr__", [](const PyPlan& p) { return emit_plan(p.plan); });

  m.def("validate_plan_shape", [](const PyPlan& p) {
    std::vector<std::string> out;
    for (const auto& c : validate_plan_shape(p.plan).clashes)
      out.push_back(c.first + " / " + c.second + " at t=" + c.at.str());
    return out;
  });

  m.def(
      "unroll",
      [](const PlanningTask& task, const PyPlan& plan) {
        Trace tr = unroll(task, plan.plan);
        py::list out;
        for (const auto& e : tr.entries) {
          py::dict d;
          d["index"] = e.index;
          d["stamp"] = e.stamp.str();
          d["event"] = e.event == EventKind::Initial ? "initial"
                       : e.event == EventKind::Start ? "start"
                                                     : "end";
          if (e.step) d["action"] = PyAction{plan.plan.steps[*e.step].action};
          d["state"] = atoms_of(e.state);
          out.append(d);
        }
        return out;
      },
      py::arg("task"), py::arg("plan"));

  m.def(
      "check_plan",
      [](const PlanningTask& task, const PyPlan& plan) {
        return report_dict(check_plan(task, plan.plan));
      },
      py::arg("task"), py::arg("plan"));

  m.def(
      "compose",
      [](const PyAction& a, const PyAction& b, const std::string& name,
         const std::vector<std::string>& args) {
        CompositionOutcome out = compose(a.ptr, b.ptr, name, args);
        py::dict d;
        d["defined"] = out.defined();
        if (out.defined()) {
          d["macro"] = PyAction{out.macro};
        } else {
          d["reason"] = out.reason == UndefinedReason::InvariantDeletedAtStart
                            ? "invariant-deleted-at-start"
                            : "end-pre-falsified-inside";
          d["witnesses"] = atoms_of(out.witnesses);
        }
        return d;
      },
      py::arg("first"), py::arg("second"), py::arg("name") = std::string{},
      py::arg("args") = std::vector<std::string>{});

  m.def(
      "compose_seq",
      [](const std::vector<PyAction>& actions, const std::string& name,
         const std::vector<std::string>& args) {
        std::vector<ActionPtr> ptrs;
        for (const auto& a : actions) ptrs.push_back(a.ptr);
        CompositionOutcome out = compose_seq(ptrs, name, args);
        py::dict d;
        d["defined"] = out.defined();
        if (out.defined()) {
          d["macro"] = PyAction{out.macro};
        } else {
          d["reason"] = out.reason == UndefinedReason::InvariantDeletedAtStart
                            ? "invariant-deleted-at-start"
                            : "end-pre-falsified-inside";
          d["witnesses"] = atoms_of(out.witnesses);
          d["step"] = out.step;
        }
        return d;
      },
      py::arg("actions"), py::arg("name") = std::string{},
      py::arg("args") = std::vector<std::string>{});

  py::class_<PyEst>(m, "EffectSafeTask")
      .def_property_readonly("task", [](const PyEst& e) { return e.est.task; })
      .def_property_readonly("locks", [](const PyEst& e) {
        return std::vector<MutexAtom>{e.est.universe.begin(), e.est.universe.end()};
      });

  m.def("build_effect_safe",
        [](const PlanningTask& t) { return PyEst{build_effect_safe(t)}; });

  m.def("base_plan", [](const PyPlan& p, const PyEst& est) {
    return PyPlan{base_plan(p.plan, est.est)};
  });

  m.def(
      "refinement_delta",
      [](const PyPlan& plan, const py::object& t, const PyAction& a) {
        return refinement_delta(plan.plan, {to_rat(t), a.ptr}).str();
      },
      py::arg("plan"), py::arg("t"), py::arg("action"));

  m.def(
      "refine_once",
      [](const PyPlan& plan, const py::object& t, const PyAction& a) {
        return PyPlan{refine_once(plan.plan, {to_rat(t), a.ptr})};
      },
      py::arg("plan"), py::arg("t"), py::arg("action"));

  m.def(
      "refine_all",
      [](const PlanningTask& context, const PyPlan& plan, const std::string& order) {
        RefineResult r = refine_all(context, plan.plan,
                                    order == "ascending" ? RefineOrder::AscendingStart
                                                         : RefineOrder::DescendingStart);
        py::list audit;
        for (const auto& s : r.audit) audit.append(s.str());
        return py::make_tuple(PyPlan{r.plan}, audit);
      },
      py::arg("context"), py::arg("plan"), py::arg("order") = "descending");

  m.def(
      "solve",
      [](const PlanningTask& task, std::size_t max_steps, const py::object& horizon,
         const py::object& epsilon, std::size_t node_budget) {
        SearchLimits limits;
        limits.max_steps = max_steps;
        limits.horizon = to_rat(horizon);
        limits.epsilon = to_rat(epsilon);
        limits.node_budget = node_budget;
        SearchResult r = solve(task, limits);
        py::dict d;
        d["status"] = r.status == SearchStatus::Solved ? "solved"
                      : r.status == SearchStatus::ExhaustedComplete ? "exhausted-complete"
                                                                    : "budget-exceeded";
        d["nodes"] = r.nodes;
        if (r.solved()) d["plan"] = PyPlan{r.plan};
        return d;
      },
      py::arg("task"), py::arg("max_steps") = 4, py::arg("horizon") = 50,
      py::arg("epsilon") = "1/100", py::arg("node_budget") = 1000000);

  py::class_<LiftedDomain>(m, "Domain")
      .def_property_readonly("name", [](const LiftedDomain& d) { return d.name; })
      .def_property_readonly("schemas",
                             [](const LiftedDomain& d) {
                               std::vector<std::string> out;
                               for (const auto& s : d.schemas) out.push_back(s.name);
                               return out;
                             })
      .def("__repr__", [](const LiftedDomain& d) { return "<domain " + d.name + ">"; });

  py::class_<Problem>(m, "Problem")
      .def_property_readonly("name", [](const Problem& p) { return p.name; })
      .def("__repr__", [](const Problem& p) { return "<problem " + p.name + ">"; });

  m.def("parse_domain", [](const std::string& text) { return parse_domain(text); });
  m.def("parse_problem", [](const std::string& text, const LiftedDomain& dom) {
    return parse_problem(text, dom);
  });
  m.def("emit_domain", [](const LiftedDomain& d) { return emit_domain(d); });
  m.def("emit_problem",
        [](const Problem& p, const LiftedDomain& d) { return emit_problem(p, d); });

  m.def(
      "ground",
      [](const LiftedDomain& dom, const Problem& prob) {
        GroundingReport report;
        PlanningTask task = ground(dom, prob, &report);
        py::list dropped;
        for (const auto& d : report.dropped) dropped.append(py::make_tuple(d.action, d.why));
        return py::make_tuple(task, dropped);
      },
      py::arg("domain"), py::arg("problem"));

  m.def(
      "apply_recipes",
      [](const LiftedDomain& dom, const std::string& config_text, bool keep) {
        Config cfg = parse_config(config_text);
        LiftedDomain out = apply_recipes(dom, cfg.recipes, keep);
        std::vector<LiftedSchema> macros;
        for (const auto& s : out.schemas) {
          if (s.macro) macros.push_back(s);
        }
        return py::make_tuple(out, emit_manifest(macros));
      },
      py::arg("domain"), py::arg("config"), py::arg("keep_constituents") = false);

  m.def(
      "shortest_path_closure",
      [](const LiftedDomain& dom, const Problem& prob, const std::string& config_text) {
        Config cfg = parse_config(config_text);
        if (!cfg.move) throw Error(Errc::NotAMoveSchema, "config has no move-schema line");
        auto [d2, p2] = shortest_path_closure(dom, prob, *cfg.move, cfg.edges);
        return py::make_tuple(d2, p2);
      },
      py::arg("domain"), py::arg("problem"), py::arg("config"));

  m.def("parse_plan", [](const std::string& text, const PlanningTask& task) {
    return PyPlan{parse_plan(text, task)};
  });
  m.def("emit_plan", [](const PyPlan& p) { return emit_plan(p.plan); });
  m.def("trace_text", [](const PlanningTask& task, const PyPlan& plan) {
    Trace tr = unroll(task, plan.plan);
    return trace_text(tr, plan.plan);
  });
  m.def("trace_json", [](const PlanningTask& task, const PyPlan& plan) {
    Trace tr = unroll(task, plan.plan);
    return trace_json(tr, plan.plan);
  });
}
