"""Flattening of module definitions into sortable, namespace-separated nodes.

Every type clause (invariant, equality, order) and every function clause
(pre, post, measure) becomes its own node, named after its origin
(``inv_T``, ``pre_f`` and so on).  Types without a user invariant receive a
synthetic, trivially-true invariant node so that invariant totality holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import nodes as N
from .diag import DuplicateNameError, Loc, UnknownNameError


class Namespace(Enum):
    TYPE = "type"
    FUNCTION = "function"


class DefKind(Enum):
    TYPE_DEF = "type"
    VALUE_DEF = "value"
    FUNCTION_DEF = "function"
    INVARIANT_FN = "inv"
    EQ_FN = "eq"
    ORD_FN = "ord"
    PRE_FN = "pre"
    POST_FN = "post"
    MEASURE_FN = "measure"


PRIMARY_KINDS = frozenset({DefKind.TYPE_DEF, DefKind.VALUE_DEF, DefKind.FUNCTION_DEF})
CLAUSE_KINDS = frozenset(set(DefKind) - PRIMARY_KINDS)

# (namespace, name): names are unique per namespace, not per module
NodeKey = tuple


@dataclass(frozen=True, eq=False)
class DefNode:
    name: str
    namespace: Namespace
    kind: DefKind
    origin: str  # user definition this node was flattened from
    synthetic: bool
    location: Loc  # declaration location used for ordering and labels
    bound: frozenset  # names the node's body may use without depending on them
    def_index: int  # index into the source module's definition list
    index: int  # collection order; synthesized nodes come after all user nodes
    body: object  # Expr or None

    @property
    def key(self) -> NodeKey:
        return (self.namespace, self.name)

    @property
    def is_clause(self) -> bool:
        return self.kind in CLAUSE_KINDS

    def __repr__(self):
        return f"<DefNode {self.name} {self.kind.value}@{self.location.line}>"


@dataclass
class FlatModule:
    module_name: str
    nodes: list
    original_names: list
    source: N.SourceModule

    def __post_init__(self):
        self._by_key = {n.key: n for n in self.nodes}

    def node(self, key: NodeKey) -> DefNode:
        return self._by_key[key]

    def get(self, namespace: Namespace, name: str):
        return self._by_key.get((namespace, name))

    def has(self, namespace: Namespace, name: str) -> bool:
        return (namespace, name) in self._by_key

    def lookup_name(self, name: str):
        """First node carrying `name`, searching functions then types."""
        return self.get(Namespace.FUNCTION, name) or self.get(Namespace.TYPE, name)


def pattern_names(pattern) -> list:
    """All identifiers bound by a pattern, left to right."""
    if isinstance(pattern, N.PatName):
        return [pattern.name]
    if isinstance(pattern, (N.PatSeq, N.PatSet, N.PatCtor)):
        names: list = []
        for item in pattern.items:
            names.extend(pattern_names(item))
        return names
    return []


def _param_names(d: N.FuncDef) -> frozenset:
    names: list = []
    for p in d.params:
        names.extend(pattern_names(p))
    return frozenset(names)


TRUE_LIT = N.Lit("bool", True, Loc(0, 0))


def collect(m: N.SourceModule) -> FlatModule:
    """Flatten a module; raises DuplicateNameError on a namespace collision."""
    nodes: list = []
    seen: dict = {}

    def add(node: DefNode):
        if node.key in seen:
            raise DuplicateNameError(node.name, node.namespace.value, node.location)
        seen[node.key] = node
        nodes.append(node)

    def mk(name, ns, kind, origin, synthetic, loc, bound, di, body):
        return DefNode(name, ns, kind, origin, synthetic, loc, frozenset(bound), di, len(nodes), body)

    for di, d in enumerate(m.definitions):
        if isinstance(d, (N.RecordTypeDef, N.NamedTypeDef)):
            add(mk(d.name, Namespace.TYPE, DefKind.TYPE_DEF, d.name, False, d.name_loc, (), di, None))
            if d.inv is not None:
                add(mk(f"inv_{d.name}", Namespace.FUNCTION, DefKind.INVARIANT_FN, d.name,
                       False, d.inv.loc, pattern_names(d.inv.pattern), di, d.inv.expr))
            if isinstance(d, N.NamedTypeDef):
                if d.eq is not None:
                    bound = pattern_names(d.eq.left) + pattern_names(d.eq.right)
                    add(mk(f"eq_{d.name}", Namespace.FUNCTION, DefKind.EQ_FN, d.name,
                           False, d.eq.loc, bound, di, d.eq.expr))
                if d.ord is not None:
                    bound = pattern_names(d.ord.left) + pattern_names(d.ord.right)
                    add(mk(f"ord_{d.name}", Namespace.FUNCTION, DefKind.ORD_FN, d.name,
                           False, d.ord.loc, bound, di, d.ord.expr))
        elif isinstance(d, N.ValueDef):
            for name in pattern_names(d.pattern):
                add(mk(name, Namespace.FUNCTION, DefKind.VALUE_DEF, name,
                       False, d.name_loc, (), di, d.init))
        elif isinstance(d, N.FuncDef):
            params = _param_names(d)
            add(mk(d.name, Namespace.FUNCTION, DefKind.FUNCTION_DEF, d.name,
                   False, d.name_loc, params, di, d.body))
            if d.pre is not None:
                add(mk(f"pre_{d.name}", Namespace.FUNCTION, DefKind.PRE_FN, d.name,
                       False, d.name_loc, params, di, d.pre))
            if d.post is not None:
                add(mk(f"post_{d.name}", Namespace.FUNCTION, DefKind.POST_FN, d.name,
                       False, d.name_loc, params | {"RESULT"}, di, d.post))
            if d.measure is not None:
                add(mk(f"measure_{d.name}", Namespace.FUNCTION, DefKind.MEASURE_FN, d.name,
                       False, d.name_loc, params, di, d.measure))

    # second stage: every type gets an invariant node, synthesized when absent
    for node in list(nodes):
        if node.kind is DefKind.TYPE_DEF and not (Namespace.FUNCTION, f"inv_{node.name}") in seen:
            add(mk(f"inv_{node.name}", Namespace.FUNCTION, DefKind.INVARIANT_FN, node.name,
                   True, node.location, (), node.def_index, TRUE_LIT))

    original: list = []
    for node in nodes:
        if not node.synthetic and node.origin not in original:
            original.append(node.origin)
    return FlatModule(m.name, nodes, original, m)


@dataclass(frozen=True)
class TypeLink:
    user: NodeKey
    used: NodeKey
    at: Loc

    @property
    def user_name(self):
        return self.user[1]

    @property
    def used_name(self):
        return self.used[1]


def _named_refs(t):
    """(name, loc) for every Named reference inside a type expression."""
    if isinstance(t, N.TNamed):
        yield t.name, t.loc
    elif isinstance(t, (N.TSeq, N.TSeq1, N.TSet, N.TOptional)):
        yield from _named_refs(t.elem)
    elif isinstance(t, N.TMap):
        yield from _named_refs(t.key)
        yield from _named_refs(t.val)
    elif isinstance(t, N.TUnion):
        for member in t.members:
            yield from _named_refs(member)


def type_dependency_links(fm: FlatModule) -> list:
    """Structural edges: type-to-clause links plus named references.

    A record's field types and a named type's right-hand side attach to the
    type node itself; invariant/eq/ord nodes carry no signature links.
    Unresolved type names fall back to imports when the module has any,
    otherwise they are an error.
    """
    links: list = []
    has_imports = bool(fm.source.imports)

    def named_type(user: DefNode, name: str, at: Loc):
        used = (Namespace.TYPE, name)
        if used == user.key:  # a recursive type does not order against itself
            return
        if used in fm._by_key:
            links.append(TypeLink(user.key, used, at))
        elif not has_imports:
            raise UnknownNameError(name, at)

    for node in fm.nodes:
        d = fm.source.definitions[node.def_index]
        if node.kind is DefKind.TYPE_DEF:
            for clause in ("inv", "eq", "ord"):
                other = fm.get(Namespace.FUNCTION, f"{clause}_{node.name}")
                if other is not None:
                    links.append(TypeLink(node.key, other.key, node.location))
            if isinstance(d, N.RecordTypeDef):
                for fld in d.fields:
                    for name, at in _named_refs(fld.type):
                        named_type(node, name, at)
            else:
                for name, at in _named_refs(d.rhs):
                    named_type(node, name, at)
        elif node.kind is DefKind.VALUE_DEF:
            if d.decl_type is not None:
                for name, at in _named_refs(d.decl_type):
                    named_type(node, name, at)
        elif node.kind in (DefKind.FUNCTION_DEF, DefKind.PRE_FN, DefKind.POST_FN,
                           DefKind.MEASURE_FN):
            for t in list(d.param_types) + [d.ret_type]:
                for name, at in _named_refs(t):
                    named_type(node, name, at)
    return links
