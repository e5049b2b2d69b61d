"""Free-variable analysis over definition bodies.

Use sites are collected with the local binding context (parameters, let
bindings, quantifier and comprehension bindings) and marked conditional when
they sit under an if/elseif branch or a quantifier body.  Initialization
dependencies keep only unconditional uses of other values, which is the
conservative rule for initialization-cycle errors.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import nodes as N
from .defcollect import DefKind, FlatModule, Namespace, pattern_names
from .diag import Diagnostic, Loc


@dataclass(frozen=True)
class UseSite:
    name: str
    space: Namespace
    at: Loc
    conditional: bool


class BoundContext:
    """Stack of name scopes; a name is bound if any scope holds it."""

    def __init__(self, scopes=()):
        self.scopes = [frozenset(s) for s in scopes]

    def push(self, names):
        self.scopes.append(frozenset(names))

    def pop(self):
        self.scopes.pop()

    def bound(self, name: str) -> bool:
        return any(name in s for s in self.scopes)


def free_uses(body, ctx: BoundContext, conditional: bool = False) -> list:
    """Every identifier used by `body` that the context does not bind."""
    uses: list = []

    def type_refs(t, cond):
        if isinstance(t, N.TNamed):
            uses.append(UseSite(t.name, Namespace.TYPE, t.loc, cond))
        elif isinstance(t, (N.TSeq, N.TSeq1, N.TSet, N.TOptional)):
            type_refs(t.elem, cond)
        elif isinstance(t, N.TMap):
            type_refs(t.key, cond)
            type_refs(t.val, cond)
        elif isinstance(t, N.TUnion):
            for m in t.members:
                type_refs(m, cond)

    def walk_binds(binds, cond):
        """Sequential binds: each domain sees the names bound before it."""
        introduced: list = []
        for b in binds:
            if b.domain is not None:
                walk(b.domain, cond)
            if b.decl_type is not None:
                type_refs(b.decl_type, cond)
            names = pattern_names(b.pattern)
            ctx.push(names)
            introduced.append(names)
        return introduced

    def pop_binds(introduced):
        for _ in introduced:
            ctx.pop()

    def walk(e, cond):
        if isinstance(e, N.Lit):
            return
        if isinstance(e, N.Name):
            if not ctx.bound(e.name):
                uses.append(UseSite(e.name, Namespace.FUNCTION, e.loc, cond))
            return
        if isinstance(e, N.Apply):
            if not ctx.bound(e.callee):
                uses.append(UseSite(e.callee, Namespace.FUNCTION, e.loc, cond))
            for a in e.args:
                walk(a, cond)
            return
        if isinstance(e, N.Unary):
            walk(e.operand, cond)
            return
        if isinstance(e, N.Binary):
            walk(e.left, cond)
            walk(e.right, cond)
            return
        if isinstance(e, N.If):
            walk(e.cond, cond)
            walk(e.then, True)
            for c, branch in e.elifs:
                walk(c, cond)
                walk(branch, True)
            walk(e.els, True)
            return
        if isinstance(e, N.Let):
            pushed = 0
            for b in e.binds:
                if b.decl_type is not None:
                    type_refs(b.decl_type, cond)
                walk(b.init, cond)
                ctx.push(pattern_names(b.pattern))
                pushed += 1
            walk(e.body, cond)
            for _ in range(pushed):
                ctx.pop()
            return
        if isinstance(e, N.Quant):
            introduced = walk_binds(e.binds, cond)
            walk(e.body, True)
            pop_binds(introduced)
            return
        if isinstance(e, (N.SetEnum, N.SeqEnum)):
            for item in e.items:
                walk(item, cond)
            return
        if isinstance(e, N.MapEnum):
            for k, v in e.maplets:
                walk(k, cond)
                walk(v, cond)
            return
        if isinstance(e, (N.SetComp, N.SeqComp)):
            introduced = walk_binds(e.binds, cond)
            walk(e.elem, cond)
            if e.pred is not None:
                walk(e.pred, cond)
            pop_binds(introduced)
            return
        if isinstance(e, N.MapComp):
            introduced = walk_binds(e.binds, cond)
            walk(e.key, cond)
            walk(e.val, cond)
            if e.pred is not None:
                walk(e.pred, cond)
            pop_binds(introduced)
            return
        if isinstance(e, N.Is):
            walk(e.expr, cond)
            type_refs(e.type, cond)
            return
        if isinstance(e, N.FieldSel):
            walk(e.expr, cond)
            return
        if isinstance(e, N.MkCtor):
            uses.append(UseSite(e.type_name, Namespace.TYPE, e.loc, cond))
            for a in e.args:
                walk(a, cond)
            return
        if isinstance(e, N.BuiltinApp):
            for a in e.args:
                walk(a, cond)
            return
        raise TypeError(f"unexpected expression node {type(e).__name__}")

    walk(body, conditional)
    return uses


def def_use_sites(node, fm: FlatModule) -> list:
    """Resolved (UseSite, DefNode) pairs for a flattened node's body.

    Self references are ignored, as is a measure clause's use of the
    function it measures.  Names that resolve nowhere are dropped: with
    imports in scope they are external, otherwise they are not ours to sort.
    """
    if node.body is None:
        return []
    ctx = BoundContext([node.bound])
    resolved: list = []
    for use in free_uses(node.body, ctx):
        target = fm.get(use.space, use.name)
        if target is None or target.key == node.key:
            continue
        if node.kind is DefKind.MEASURE_FN and use.name == node.origin:
            continue
        resolved.append((use, target))
    return resolved


def def_dependencies(node, fm: FlatModule) -> set:
    """Names a node's body depends on, any evaluation path counted."""
    return {target.name for _, target in def_use_sites(node, fm)}


def init_dependencies(node, fm: FlatModule) -> set:
    """Names whose values are read before this value can initialize."""
    if node.kind is not DefKind.VALUE_DEF:
        return set()
    deps = set()
    for use, target in def_use_sites(node, fm):
        if not use.conditional and target.kind is DefKind.VALUE_DEF:
            deps.add(target.name)
    return deps


# ── diagnostics ───────────────────────────────────────────────────────────


def _iter_exprs(e):
    yield e
    if isinstance(e, (N.Apply, N.MkCtor, N.BuiltinApp)):
        for a in e.args:
            yield from _iter_exprs(a)
    elif isinstance(e, N.Unary):
        yield from _iter_exprs(e.operand)
    elif isinstance(e, N.Binary):
        yield from _iter_exprs(e.left)
        yield from _iter_exprs(e.right)
    elif isinstance(e, N.If):
        yield from _iter_exprs(e.cond)
        yield from _iter_exprs(e.then)
        for c, b in e.elifs:
            yield from _iter_exprs(c)
            yield from _iter_exprs(b)
        yield from _iter_exprs(e.els)
    elif isinstance(e, N.Let):
        for b in e.binds:
            yield from _iter_exprs(b.init)
        yield from _iter_exprs(e.body)
    elif isinstance(e, N.Quant):
        for b in e.binds:
            if b.domain is not None:
                yield from _iter_exprs(b.domain)
        yield from _iter_exprs(e.body)
    elif isinstance(e, (N.SetEnum, N.SeqEnum)):
        for item in e.items:
            yield from _iter_exprs(item)
    elif isinstance(e, N.MapEnum):
        for k, v in e.maplets:
            yield from _iter_exprs(k)
            yield from _iter_exprs(v)
    elif isinstance(e, (N.SetComp, N.SeqComp)):
        for b in e.binds:
            if b.domain is not None:
                yield from _iter_exprs(b.domain)
        yield from _iter_exprs(e.elem)
        if e.pred is not None:
            yield from _iter_exprs(e.pred)
    elif isinstance(e, N.MapComp):
        for b in e.binds:
            if b.domain is not None:
                yield from _iter_exprs(b.domain)
        yield from _iter_exprs(e.key)
        yield from _iter_exprs(e.val)
        if e.pred is not None:
            yield from _iter_exprs(e.pred)
    elif isinstance(e, N.Is):
        yield from _iter_exprs(e.expr)
    elif isinstance(e, N.FieldSel):
        yield from _iter_exprs(e.expr)


def _definition_exprs(d):
    if isinstance(d, N.RecordTypeDef):
        if d.inv is not None:
            yield d.inv.expr
    elif isinstance(d, N.NamedTypeDef):
        for clause in (d.inv, d.eq, d.ord):
            if clause is not None:
                yield clause.expr
    elif isinstance(d, N.ValueDef):
        yield d.init
    elif isinstance(d, N.FuncDef):
        for e in (d.body, d.pre, d.post, d.measure):
            if e is not None:
                yield e


def check_duplicate_binds(m: N.SourceModule) -> list:
    """A comprehension must not bind the same name twice.

    VDM treats repeated binds as an implicit union of ranges, which silently
    changes meaning; the second bind is reported as an error.
    """
    diags: list = []
    for d in m.definitions:
        for root in _definition_exprs(d):
            for e in _iter_exprs(root):
                if not isinstance(e, (N.SetComp, N.SeqComp, N.MapComp)):
                    continue
                seen: set = set()
                for b in e.binds:
                    for name in pattern_names(b.pattern):
                        if name in seen:
                            diags.append(Diagnostic(
                                "error", "dup-bind",
                                f"comprehension binds {name!r} more than once",
                                b.loc,
                            ))
                        else:
                            seen.add(name)
    return diags


def check_precondition_calls(m: N.SourceModule, fm: FlatModule) -> list:
    """Warn on calls to a function with a precondition when the calling
    body never consults that precondition itself."""
    diags: list = []
    for node in fm.nodes:
        if node.body is None:
            continue
        applies = [e for e in _iter_exprs(node.body) if isinstance(e, N.Apply)]
        if not applies:
            continue
        referenced = {e.callee for e in applies}
        referenced.update(e.name for e in _iter_exprs(node.body) if isinstance(e, N.Name))
        for call in applies:
            target = fm.get(Namespace.FUNCTION, call.callee)
            pre = fm.get(Namespace.FUNCTION, f"pre_{call.callee}")
            if (
                target is not None
                and target.kind is DefKind.FUNCTION_DEF
                and pre is not None
                and pre.kind is DefKind.PRE_FN
                and pre.name not in referenced
            ):
                diags.append(Diagnostic(
                    "warning", "pre-call",
                    f"call to {call.callee} is not guarded by {pre.name}",
                    call.loc,
                ))
    return diags


def check_init_cycles(fm: FlatModule) -> list:
    """Unconditional value-initialization cycles are errors."""
    from .depgraph import DepGraph, Edge, find_cycles

    values = [n for n in fm.nodes if n.kind is DefKind.VALUE_DEF]
    g = DepGraph({n.key: n for n in values}, [])
    for n in values:
        for dep in sorted(init_dependencies(n, fm)):
            g.add_edge(Edge(n.key, (Namespace.FUNCTION, dep), n.location))
    diags: list = []
    for cycle in find_cycles(g):
        first = fm.get(Namespace.FUNCTION, cycle.members[0])
        diags.append(Diagnostic(
            "error", "init-cycle",
            "value initialization cycle: " + " -> ".join(cycle.members),
            first.location,
        ))
    return diags
