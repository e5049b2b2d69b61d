"""AST for the VDM-SL module subset.

Structural equality deliberately ignores locations, spans and verbatim text,
so a module compares equal to the result of printing and reparsing it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .diag import Loc, Span


def _pos():
    # position-ish payload: never part of structural equality
    return field(compare=False, repr=False)


# ── patterns ──────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class PatName:
    name: str
    loc: Loc = _pos()


@dataclass(frozen=True)
class PatIgnore:
    loc: Loc = _pos()


@dataclass(frozen=True)
class PatSeq:
    items: tuple
    loc: Loc = _pos()


@dataclass(frozen=True)
class PatSet:
    items: tuple
    loc: Loc = _pos()


@dataclass(frozen=True)
class PatCtor:
    type_name: str
    items: tuple
    loc: Loc = _pos()


Pattern = Union[PatName, PatIgnore, PatSeq, PatSet, PatCtor]


# ── type expressions ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class TBasic:
    name: str  # nat nat1 int real bool char token
    loc: Loc = _pos()


@dataclass(frozen=True)
class TQuote:
    name: str
    loc: Loc = _pos()


@dataclass(frozen=True)
class TNamed:
    name: str
    loc: Loc = _pos()


@dataclass(frozen=True)
class TSeq:
    elem: "TypeExpr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class TSeq1:
    elem: "TypeExpr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class TSet:
    elem: "TypeExpr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class TMap:
    key: "TypeExpr"
    val: "TypeExpr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class TOptional:
    elem: "TypeExpr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class TUnion:
    # parser flattens nested unions; always two or more members
    members: tuple
    loc: Loc = _pos()


TypeExpr = Union[TBasic, TQuote, TNamed, TSeq, TSeq1, TSet, TMap, TOptional, TUnion]


# ── expressions ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Lit:
    kind: str  # nat real bool char quote nil
    value: object
    loc: Loc = _pos()


@dataclass(frozen=True)
class Name:
    name: str
    loc: Loc = _pos()


@dataclass(frozen=True)
class Apply:
    callee: str
    args: tuple
    loc: Loc = _pos()


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    elifs: tuple  # of (cond, expr)
    els: "Expr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class LetBind:
    pattern: Pattern
    decl_type: Optional[TypeExpr]
    init: "Expr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class Let:
    binds: tuple  # of LetBind, bound sequentially
    body: "Expr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class Bind:
    """`pattern in set expr` or `pattern : type` in quantifiers/comprehensions."""

    pattern: Pattern
    domain: Optional["Expr"]  # the set expression, if a set bind
    decl_type: Optional[TypeExpr]  # the type, if a type bind
    loc: Loc = _pos()


@dataclass(frozen=True)
class Quant:
    which: str  # forall | exists
    binds: tuple
    body: "Expr"
    loc: Loc = _pos()


@dataclass(frozen=True)
class SetEnum:
    items: tuple
    loc: Loc = _pos()


@dataclass(frozen=True)
class SeqEnum:
    items: tuple
    loc: Loc = _pos()


@dataclass(frozen=True)
class MapEnum:
    maplets: tuple  # of (key, value)
    loc: Loc = _pos()


@dataclass(frozen=True)
class SetComp:
    elem: "Expr"
    binds: tuple
    pred: Optional["Expr"]
    loc: Loc = _pos()


@dataclass(frozen=True)
class SeqComp:
    elem: "Expr"
    binds: tuple
    pred: Optional["Expr"]
    loc: Loc = _pos()


@dataclass(frozen=True)
class MapComp:
    key: "Expr"
    val: "Expr"
    binds: tuple
    pred: Optional["Expr"]
    loc: Loc = _pos()


@dataclass(frozen=True)
class Is:
    expr: "Expr"
    type: TypeExpr
    loc: Loc = _pos()


@dataclass(frozen=True)
class FieldSel:
    expr: "Expr"
    field: str
    loc: Loc = _pos()


@dataclass(frozen=True)
class MkCtor:
    type_name: str
    args: tuple
    loc: Loc = _pos()


@dataclass(frozen=True)
class BuiltinApp:
    op: str  # hd tl len elems card dom rng inds
    args: tuple
    loc: Loc = _pos()


Expr = Union[
    Lit, Name, Apply, Unary, Binary, If, Let, Quant,
    SetEnum, SeqEnum, MapEnum, SetComp, SeqComp, MapComp,
    Is, FieldSel, MkCtor, BuiltinApp,
]


# ── definitions ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class InvClause:
    pattern: Pattern
    expr: Expr
    loc: Loc = _pos()


@dataclass(frozen=True)
class EqClause:
    left: Pattern
    right: Pattern
    expr: Expr
    loc: Loc = _pos()


@dataclass(frozen=True)
class OrdClause:
    left: Pattern
    right: Pattern
    expr: Expr
    loc: Loc = _pos()


@dataclass(frozen=True)
class RecordField:
    name: str
    type: TypeExpr
    loc: Loc = _pos()


@dataclass(frozen=True)
class RecordTypeDef:
    name: str
    fields: tuple
    inv: Optional[InvClause]
    doc_comments: tuple
    name_loc: Loc = _pos()
    span: Span = _pos()
    verbatim: str = _pos()

    section = "types"


@dataclass(frozen=True)
class NamedTypeDef:
    name: str
    rhs: TypeExpr
    inv: Optional[InvClause]
    eq: Optional[EqClause]
    ord: Optional[OrdClause]
    doc_comments: tuple
    name_loc: Loc = _pos()
    span: Span = _pos()
    verbatim: str = _pos()

    section = "types"


@dataclass(frozen=True)
class ValueDef:
    pattern: Pattern
    decl_type: Optional[TypeExpr]
    init: Expr
    doc_comments: tuple
    name_loc: Loc = _pos()  # location of the pattern
    span: Span = _pos()
    verbatim: str = _pos()

    section = "values"


@dataclass(frozen=True)
class FuncDef:
    name: str
    param_types: tuple
    ret_type: TypeExpr
    params: tuple  # one pattern per domain component
    body: Expr
    pre: Optional[Expr]
    post: Optional[Expr]
    measure: Optional[Expr]
    doc_comments: tuple
    name_loc: Loc = _pos()
    span: Span = _pos()
    verbatim: str = _pos()

    section = "functions"


Definition = Union[RecordTypeDef, NamedTypeDef, ValueDef, FuncDef]


@dataclass(frozen=True)
class ImportRef:
    module: str
    loc: Loc = _pos()


@dataclass(frozen=True)
class SourceModule:
    name: str
    exports_all: bool
    imports: tuple
    definitions: tuple
    file: str = _pos()
    name_loc: Loc = _pos()
    span: Span = _pos()
    text: str = _pos()  # exact source slice of the whole module
