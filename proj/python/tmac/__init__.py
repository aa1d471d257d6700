"""Sequential temporal macro-actions over exact rational time.

Compose durative-action sequences into macro schemas, build effect-safe
tasks with mutex locks, validate time-stamped plans against the exact
event-sequence semantics, solve small tasks, and unfold macro steps in
solutions back into their constituent actions.
"""

from tmac._core import (
    Action,
    Atom,
    Domain,
    EffectSafeTask,
    Literal,
    MutexAtom,
    Plan,
    Problem,
    Task,
    TmacError,
    apply_recipes,
    base_plan,
    build_effect_safe,
    check_plan,
    compose,
    compose_seq,
    emit_domain,
    emit_plan,
    emit_problem,
    ground,
    parse_domain,
    parse_plan,
    parse_problem,
    refine_all,
    refine_once,
    refinement_delta,
    shortest_path_closure,
    solve,
    trace_json,
    trace_text,
    unroll,
    validate_plan_shape,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Atom",
    "Domain",
    "EffectSafeTask",
    "Literal",
    "MutexAtom",
    "Plan",
    "Problem",
    "Task",
    "TmacError",
    "apply_recipes",
    "base_plan",
    "build_effect_safe",
    "check_plan",
    "compose",
    "compose_seq",
    "emit_domain",
    "emit_plan",
    "emit_problem",
    "ground",
    "parse_domain",
    "parse_plan",
    "parse_problem",
    "refine_all",
    "refine_once",
    "refinement_delta",
    "shortest_path_closure",
    "solve",
    "trace_json",
    "trace_text",
    "unroll",
    "validate_plan_shape",
]
