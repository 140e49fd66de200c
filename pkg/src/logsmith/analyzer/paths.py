"""Inter-procedural enumeration of string-construction paths.

For each logging call site the tracer follows the first argument through
concatenations and resolved helper methods, splitting on every if/else it
meets, and yields one call path per branch combination. String literals
become constant segments; identifiers, built-in methods and unresolved
calls become wildcard slots. ``{}`` placeholders in a literal format string
each become a wildcard as well.

Call cycles collapse to a wildcard and are flagged; enumeration stops at
the configured depth and path budget, setting the truncation flag rather
than failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..templates import WILD, TemplateBody
from .callgraph import CallGraph
from .logcalls import LogCallSite
from .syntax import (
    Call,
    Concat,
    If,
    Ident,
    MethodDecl,
    Return,
    SourceUnit,
    StrLit,
    expr_to_source,
    method_to_source,
)

# String operations recognized as opaque built-ins: the call is terminated
# with a wildcard instead of being traced.
DEFAULT_BUILTIN_METHODS = (
    "toUpperCase", "toLowerCase", "trim", "strip", "substring", "replace",
    "valueOf", "toString", "format", "concat", "join", "getMessage", "name",
)

_JAVA_LANG_TYPES = {
    "String", "Object", "Integer", "Long", "Double", "Float", "Boolean",
    "Character", "Short", "Byte", "StringBuilder", "StringBuffer",
}

KIND_LOG = "log-invocation"
KIND_USER = "user-method"
KIND_BUILTIN = "built-in"
KIND_UNKNOWN = "unknown"


@dataclass(frozen=True)
class PathBudget:
    max_call_depth: int = 8
    max_paths_per_site: int = 64

    def __post_init__(self):
        if self.max_call_depth < 1 or self.max_paths_per_site < 1:
            raise ValueError("path budget values must be positive")


@dataclass(frozen=True)
class RecursionCycle:
    """A detected call cycle, as the chain of method names that closed it."""

    chain: tuple[str, ...]


@dataclass(frozen=True)
class PathStep:
    class_fqn: str
    call_code: str
    callee_kind: str
    callee_source: str | None = None


@dataclass(frozen=True)
class CallPath:
    steps: tuple[PathStep, ...]
    yielded: TemplateBody


@dataclass
class PathEnumeration:
    """All feasible paths of one call site, plus analysis flags."""

    site: LogCallSite
    paths: list[CallPath]
    truncated: bool = False
    cycles: tuple[RecursionCycle, ...] = ()
    involves_conditional: bool = False
    involves_external_call: bool = False
    placeholder_mismatch: bool = False


class _State:
    def __init__(self):
        self.truncated = False
        self.conditional = False
        self.external = False
        self.cycles: list[RecursionCycle] = []

    def record_cycle(self, chain: tuple[str, ...]):
        cycle = RecursionCycle(chain)
        if cycle not in self.cycles:
            self.cycles.append(cycle)


# An alternative is (segments, steps) for one branch combination.
_Alt = tuple[tuple, tuple]


def _literal_segments(text: str) -> list:
    """Split a format literal on ``{}`` placeholders, each becoming a wildcard."""
    parts = text.split("{}")
    raw: list = []
    for i, part in enumerate(parts):
        if i > 0:
            raw.append(WILD)
        raw.append(part)
    return raw


def _step_class(unit: SourceUnit, method: MethodDecl | None, call: Call,
                graph: CallGraph) -> str:
    """Best-effort class name for a built-in or unresolved call step."""
    recv = call.receiver
    if recv is None:
        return unit.fqn
    if isinstance(recv, StrLit):
        return "java.lang.String"
    if isinstance(recv, Ident):
        fqn = graph.resolve_class(unit, recv.name)
        if fqn is not None:
            return fqn
        ptype = method.param_type(recv.name) if method is not None else None
        if ptype is not None:
            tfqn = graph.resolve_class(unit, ptype)
            if tfqn is not None:
                return tfqn
            if ptype in _JAVA_LANG_TYPES:
                return f"java.lang.{ptype}"
            return ptype
        if recv.name[:1].isupper():
            # unresolved class-looking receiver: report the raw name
            return recv.name
    return "java.lang.String"


def _return_branches(stmts: tuple, saw_if: bool) -> Iterator[tuple]:
    """Yield (return expression, reached through a conditional) per branch."""
    for i, stmt in enumerate(stmts):
        if isinstance(stmt, Return):
            yield (stmt.value, saw_if)
            return
        if isinstance(stmt, If):
            rest = stmts[i + 1:]
            yield from _return_branches(stmt.then_body + rest, True)
            yield from _return_branches(stmt.else_body + rest, True)
            return
        # other statements do not affect the returned value
    # branch without a return contributes nothing


def _trace_expr(expr, unit: SourceUnit, method: MethodDecl | None, graph: CallGraph,
                budget: PathBudget, builtins: frozenset, depth: int,
                stack: tuple, state: _State) -> Iterator[_Alt]:
    if isinstance(expr, StrLit):
        yield ((expr.text,) if expr.text else (), ())
        return
    if isinstance(expr, Ident):
        yield ((WILD,), ())
        return
    if isinstance(expr, Concat):
        for left_segs, left_steps in _trace_expr(expr.left, unit, method, graph,
                                                 budget, builtins, depth, stack, state):
            for right_segs, right_steps in _trace_expr(expr.right, unit, method, graph,
                                                       budget, builtins, depth, stack, state):
                yield (left_segs + right_segs, left_steps + right_steps)
        return
    if isinstance(expr, Call):
        yield from _trace_call(expr, unit, method, graph, budget, builtins,
                               depth, stack, state)
        return
    raise TypeError(f"cannot trace {expr!r}")


def _trace_call(call: Call, unit: SourceUnit, method: MethodDecl | None,
                graph: CallGraph, budget: PathBudget, builtins: frozenset,
                depth: int, stack: tuple, state: _State) -> Iterator[_Alt]:
    target = graph.resolve_call(unit, call)
    code = expr_to_source(call)

    if target is not None:
        state.external = True
        key = target.key
        step = PathStep(
            class_fqn=target.unit.fqn,
            call_code=code,
            callee_kind=KIND_USER,
            callee_source=method_to_source(target.method),
        )
        if key in stack:
            chain = stack[stack.index(key):] + (key,)
            state.record_cycle(tuple(f"{fqn}.{name}" for fqn, name, _ in chain))
            yield ((WILD,), ())
            return
        if depth + 1 > budget.max_call_depth:
            state.truncated = True
            yield ((WILD,), (step,))
            return

        produced = False
        for ret_expr, through_if in _return_branches(target.method.body, False):
            if through_if:
                state.conditional = True
            produced = True
            if ret_expr is None:
                yield ((), (step,))
                continue
            for segs, steps in _trace_expr(ret_expr, target.unit, target.method,
                                           graph, budget, builtins, depth + 1,
                                           stack + (key,), state):
                yield (segs, (step,) + steps)
        if not produced:
            # callee never returns a value; its contribution is opaque
            yield ((WILD,), (step,))
        return

    state.external = True
    kind = KIND_BUILTIN if call.method in builtins else KIND_UNKNOWN
    step = PathStep(
        class_fqn=_step_class(unit, method, call, graph),
        call_code=code,
        callee_kind=kind,
    )
    yield ((WILD,), (step,))


def enumerate_paths(site: LogCallSite, graph: CallGraph,
                    budget: PathBudget = PathBudget(),
                    builtin_methods=DEFAULT_BUILTIN_METHODS) -> PathEnumeration:
    """Enumerate every feasible string-construction path of one call site.

    Each path pairs the step chain (logging invocation first, then every
    method call followed on that branch combination) with the template body
    the branch produces. Paths beyond ``budget.max_paths_per_site`` and
    calls deeper than ``budget.max_call_depth`` set the truncation flag;
    call cycles collapse to a wildcard and record the offending chain.
    """
    builtins = frozenset(builtin_methods)
    state = _State()
    enclosing = _enclosing_decl(site)

    log_step = PathStep(
        class_fqn=site.unit.fqn,
        call_code=expr_to_source(site.call),
        callee_kind=KIND_LOG,
    )

    literal = site.literal_format
    mismatch = False
    if literal is not None:
        placeholders = literal.count("{}")
        if placeholders > 0 and placeholders != len(site.args) - 1:
            mismatch = True
        alts: Iterator[_Alt] = iter([(tuple(_literal_segments(literal)), ())])
    elif not site.args:
        alts = iter([((), ())])
    else:
        alts = _trace_expr(site.args[0], site.unit, enclosing, graph, budget,
                           builtins, 0, (), state)

    paths: list[CallPath] = []
    for segments, steps in alts:
        if len(paths) >= budget.max_paths_per_site:
            state.truncated = True
            break
        paths.append(CallPath(
            steps=(log_step,) + steps,
            yielded=TemplateBody.from_segments(segments),
        ))

    return PathEnumeration(
        site=site,
        paths=paths,
        truncated=state.truncated,
        cycles=tuple(state.cycles),
        involves_conditional=state.conditional,
        involves_external_call=state.external,
        placeholder_mismatch=mismatch,
    )


def _enclosing_decl(site: LogCallSite) -> MethodDecl | None:
    # the enclosing method is identified by name only; pick the first match
    for decl in site.unit.methods:
        if decl.name == site.enclosing_method:
            return decl
    return None
