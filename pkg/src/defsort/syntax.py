"""Lexer, parser and printer for the VDM-SL module subset.

The parser is a plain recursive descent over a pre-lexed token list.  Every
definition records the exact source span it came from (leading comments
included), so later stages can move definitions around without touching
their text.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import nodes as N
from .diag import Loc, ParseError, Span

KEYWORDS = frozenset(
    """
    module exports imports from all definitions end types values functions
    inv eq ord pre post measure if then elseif else let in forall exists
    set seq seq1 map of to nat nat1 int real bool char token true false nil
    not and or div mod hd tl len elems card dom rng inds union inter
    subset psubset
    """.split()
)

BASIC_TYPES = frozenset({"nat", "nat1", "int", "real", "bool", "char", "token"})
BUILTIN_OPS = frozenset({"hd", "tl", "len", "elems", "card", "dom", "rng", "inds"})
SECTION_KEYWORDS = ("types", "values", "functions")

# longest first so the lexer never splits a two-char operator
_PUNCT = (
    "|->", "<=>", "::", "==", "=>", "<>", "<=", ">=", "->",
    "(", ")", "{", "}", "[", "]", ",", ";", ":", "=", "<", ">",
    "+", "-", "*", "/", "|", "&", ".", "\\", "^",
)


@dataclass(frozen=True)
class Token:
    kind: str  # kw punct name nat real char quote comment eof
    text: str
    loc: Loc
    off: int
    end: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        if self.kind in ("kw", "punct"):
            return f"'{self.text}'"
        return f"{self.kind} '{self.text}'"


def _is_ident_start(c: str) -> bool:
    return c.isascii() and (c.isalpha())


def _is_ident_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")


def lex(text: str, file: str = "<string>"):
    """Split text into (significant tokens, comment tokens)."""
    toks: list[Token] = []
    comments: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        loc = Loc(line, col, file)
        if text.startswith("--", i):
            j = text.find("\n", i)
            if j < 0:
                j = n
            comments.append(Token("comment", text[i:j].rstrip("\r"), loc, i, j))
            col += j - i
            i = j
            continue
        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = "kw" if word in KEYWORDS else "name"
            toks.append(Token(kind, word, loc, i, j))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n - 1 and text[j] == "." and text[j + 1].isdigit():
                j += 2
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(Token("real", text[i:j], loc, i, j))
            else:
                toks.append(Token("nat", text[i:j], loc, i, j))
            col += j - i
            i = j
            continue
        if c == "'":
            if i + 2 < n and text[i + 2] == "'" and text[i + 1] != "'":
                toks.append(Token("char", text[i + 1], loc, i, i + 3))
                i += 3
                col += 3
                continue
            raise ParseError("malformed character literal", loc)
        if c == "<":
            if text.startswith("<=>", i):
                toks.append(Token("punct", "<=>", loc, i, i + 3))
                i += 3
                col += 3
                continue
            if text[i : i + 2] in ("<=", "<>"):
                toks.append(Token("punct", text[i : i + 2], loc, i, i + 2))
                i += 2
                col += 2
                continue
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            if j > i + 1 and j < n and text[j] == ">" and _is_ident_start(text[i + 1]):
                toks.append(Token("quote", text[i + 1 : j], loc, i, j + 1))
                col += j + 1 - i
                i = j + 1
                continue
            toks.append(Token("punct", "<", loc, i, i + 1))
            i += 1
            col += 1
            continue
        for op in _PUNCT:
            if text.startswith(op, i):
                toks.append(Token("punct", op, loc, i, i + len(op)))
                i += len(op)
                col += len(op)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", loc)
    toks.append(Token("eof", "", Loc(line, col, file), n, n))
    return toks, comments


def pattern_names_distinct(patterns, where: str):
    """ParseError if the same identifier is bound twice across `patterns`."""
    seen: dict[str, Loc] = {}
    for p in patterns:
        for name, loc in _pattern_name_sites(p):
            if name in seen:
                raise ParseError(f"name {name!r} bound twice in {where}", loc)
            seen[name] = loc


def _pattern_name_sites(p):
    if isinstance(p, N.PatName):
        yield p.name, p.loc
    elif isinstance(p, (N.PatSeq, N.PatSet, N.PatCtor)):
        for item in p.items:
            yield from _pattern_name_sites(item)


# ── parser ────────────────────────────────────────────────────────────────


class _Parser:
    def __init__(self, text: str, file: str):
        self.text = text
        self.file = file
        self.toks, self.comments = lex(text, file)
        self.i = 0

    # token plumbing

    def cur(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def last(self) -> Token:
        return self.toks[self.i - 1]

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.cur()
        return t.kind == kind and (text is None or t.text == text)

    def at_kw(self, *words: str) -> bool:
        t = self.cur()
        return t.kind == "kw" and t.text in words

    def advance(self) -> Token:
        t = self.cur()
        self.i += 1
        return t

    def accept(self, kind: str, text: str | None = None):
        if self.at(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        if self.at(kind, text):
            return self.advance()
        want = f"'{text}'" if text else kind
        raise ParseError(f"expected {want}, found {self.cur().describe()}", self.cur().loc)

    def expect_name(self, what: str = "identifier") -> Token:
        if self.at("name"):
            return self.advance()
        raise ParseError(f"expected {what}, found {self.cur().describe()}", self.cur().loc)

    # file / module level

    def parse_file(self):
        mods = []
        while not self.at("eof"):
            mods.append(self.parse_module())
        return mods

    def parse_module(self) -> N.SourceModule:
        mod_tok = self.expect("kw", "module")
        name_tok = self.expect_name("module name")
        exports_all = False
        if self.accept("kw", "exports"):
            self.expect("kw", "all")
            exports_all = True
        imports = []
        while self.at_kw("imports"):
            self.advance()
            self.expect("kw", "from")
            imp = self.expect_name("module name")
            self.expect("kw", "all")
            imports.append(N.ImportRef(imp.text, imp.loc))
        self.expect("kw", "definitions")
        defs: list = []
        while self.at_kw(*SECTION_KEYWORDS):
            sec_tok = self.advance()
            boundary = sec_tok.end
            while not (self.at_kw(*SECTION_KEYWORDS) or self.at_kw("end") or self.at("eof")):
                d = self.parse_definition(sec_tok.text, boundary)
                defs.append(d)
                boundary = d.span.end_off
        self.expect("kw", "end")
        end_tok = self.expect_name("module name")
        if end_tok.text != name_tok.text:
            raise ParseError(
                f"module ends with 'end {end_tok.text}' but is named {name_tok.text!r}",
                end_tok.loc,
            )
        _check_toplevel_names(defs, name_tok.text)
        span = self._make_span(mod_tok.off, mod_tok.loc, end_tok.end)
        return N.SourceModule(
            name=name_tok.text,
            exports_all=exports_all,
            imports=tuple(imports),
            definitions=tuple(defs),
            file=self.file,
            name_loc=name_tok.loc,
            span=span,
            text=self.text[span.start_off : span.end_off],
        )

    def _make_span(self, start_off: int, start_loc: Loc, end_off: int) -> Span:
        line_start = start_off - (start_loc.col - 1)
        if self.text[line_start:start_off].strip() == "":
            start_off = line_start
            start_loc = Loc(start_loc.line, 1, start_loc.file)
        end_loc = self.last().loc
        return Span(start_loc, end_loc, start_off, end_off)

    # definitions

    def parse_definition(self, section: str, boundary: int):
        first = self.cur()
        leading = [c for c in self.comments if boundary <= c.off < first.off]
        if section == "types":
            core = self.parse_typedef()
        elif section == "values":
            core = self.parse_valuedef()
        else:
            core = self.parse_fundef()
        self.accept("punct", ";")
        end_off = self.last().end
        if leading:
            start_off, start_loc = leading[0].off, leading[0].loc
        else:
            start_off, start_loc = first.off, first.loc
        span = self._make_span(start_off, start_loc, end_off)
        docs = tuple(c.text[len("--@doc"):].strip() for c in leading if c.text.startswith("--@doc"))
        return replace(
            core,
            doc_comments=docs,
            span=span,
            verbatim=self.text[span.start_off : span.end_off],
        )

    def parse_typedef(self):
        name = self.expect_name("type name")
        if self.accept("punct", "::"):
            fields = []
            while self.at("name") and self.peek().kind == "punct" and self.peek().text == ":":
                fname = self.advance()
                self.expect("punct", ":")
                fields.append(N.RecordField(fname.text, self.parse_type(), fname.loc))
            if not fields:
                raise ParseError("record type needs at least one field", self.cur().loc)
            inv = self._parse_inv_clause()
            return N.RecordTypeDef(name.text, tuple(fields), inv, (), name.loc, None, "")
        self.expect("punct", "=")
        rhs = self.parse_type()
        inv = self._parse_inv_clause()
        eq = None
        if self.at_kw("eq"):
            loc = self.advance().loc
            left = self.parse_pattern()
            self.expect("punct", "=")
            right = self.parse_pattern()
            pattern_names_distinct([left, right], "eq clause")
            self.expect("punct", "==")
            eq = N.EqClause(left, right, self.parse_expr(), loc)
        order = None
        if self.at_kw("ord"):
            loc = self.advance().loc
            left = self.parse_pattern()
            self.expect("punct", "<")
            right = self.parse_pattern()
            pattern_names_distinct([left, right], "ord clause")
            self.expect("punct", "==")
            order = N.OrdClause(left, right, self.parse_expr(), loc)
        return N.NamedTypeDef(name.text, rhs, inv, eq, order, (), name.loc, None, "")

    def _parse_inv_clause(self):
        if not self.at_kw("inv"):
            return None
        loc = self.advance().loc
        pat = self.parse_pattern()
        pattern_names_distinct([pat], "inv clause")
        self.expect("punct", "==")
        return N.InvClause(pat, self.parse_expr(), loc)

    def parse_valuedef(self):
        pat = self.parse_pattern()
        pattern_names_distinct([pat], "value pattern")
        decl_type = None
        if self.accept("punct", ":"):
            decl_type = self.parse_type()
        self.expect("punct", "=")
        init = self.parse_expr()
        return N.ValueDef(pat, decl_type, init, (), pat.loc, None, "")

    def parse_fundef(self):
        name = self.expect_name("function name")
        self.expect("punct", ":")
        param_types: list = []
        if self.at("punct", "(") and self.peek().kind == "punct" and self.peek().text == ")":
            self.advance()
            self.advance()
        else:
            param_types.append(self.parse_type())
            while self.accept("punct", "*"):
                param_types.append(self.parse_type())
        self.expect("punct", "->")
        ret = self.parse_type()
        body_name = self.expect_name("function name")
        if body_name.text != name.text:
            raise ParseError(
                f"body is named {body_name.text!r} but the signature says {name.text!r}",
                body_name.loc,
            )
        self.expect("punct", "(")
        params = []
        if not self.at("punct", ")"):
            params.append(self.parse_pattern())
            while self.accept("punct", ","):
                params.append(self.parse_pattern())
        self.expect("punct", ")")
        if len(params) != len(param_types):
            raise ParseError(
                f"{name.text} takes {len(param_types)} parameters "
                f"but {len(params)} patterns are given",
                body_name.loc,
            )
        pattern_names_distinct(params, "parameter list")
        self.expect("punct", "==")
        body = self.parse_expr()
        pre = self.parse_expr() if self.accept("kw", "pre") else None
        post = self.parse_expr() if self.accept("kw", "post") else None
        measure = self.parse_expr() if self.accept("kw", "measure") else None
        return N.FuncDef(
            name.text, tuple(param_types), ret, tuple(params),
            body, pre, post, measure, (), name.loc, None, "",
        )

    # patterns

    def parse_pattern(self):
        t = self.cur()
        if t.kind == "punct" and t.text == "-":
            self.advance()
            return N.PatIgnore(t.loc)
        if t.kind == "name":
            if t.text.startswith("mk_") and self.peek().kind == "punct" and self.peek().text == "(":
                self.advance()
                ctor = t.text[3:]
                if not ctor:
                    raise ParseError("constructor pattern needs a type name", t.loc)
                self.expect("punct", "(")
                items = [self.parse_pattern()]
                while self.accept("punct", ","):
                    items.append(self.parse_pattern())
                self.expect("punct", ")")
                return N.PatCtor(ctor, tuple(items), t.loc)
            self.advance()
            return N.PatName(t.text, t.loc)
        if t.kind == "punct" and t.text == "[":
            self.advance()
            items = []
            if not self.at("punct", "]"):
                items.append(self.parse_pattern())
                while self.accept("punct", ","):
                    items.append(self.parse_pattern())
            self.expect("punct", "]")
            return N.PatSeq(tuple(items), t.loc)
        if t.kind == "punct" and t.text == "{":
            self.advance()
            items = []
            if not self.at("punct", "}"):
                items.append(self.parse_pattern())
                while self.accept("punct", ","):
                    items.append(self.parse_pattern())
            self.expect("punct", "}")
            return N.PatSet(tuple(items), t.loc)
        raise ParseError(f"expected a pattern, found {t.describe()}", t.loc)

    # types

    def parse_type(self):
        first = self.parse_type_atom()
        if not self.at("punct", "|"):
            return first
        members = [first]
        while self.accept("punct", "|"):
            members.append(self.parse_type_atom())
        flat: list = []
        for m in members:
            flat.extend(m.members if isinstance(m, N.TUnion) else [m])
        return N.TUnion(tuple(flat), first.loc)

    def parse_type_atom(self):
        t = self.cur()
        if t.kind == "kw" and t.text in BASIC_TYPES:
            self.advance()
            return N.TBasic(t.text, t.loc)
        if t.kind == "kw" and t.text in ("seq", "seq1", "set"):
            self.advance()
            self.expect("kw", "of")
            elem = self.parse_type_atom()
            ctor = {"seq": N.TSeq, "seq1": N.TSeq1, "set": N.TSet}[t.text]
            return ctor(elem, t.loc)
        if t.kind == "kw" and t.text == "map":
            self.advance()
            key = self.parse_type_atom()
            self.expect("kw", "to")
            return N.TMap(key, self.parse_type_atom(), t.loc)
        if t.kind == "punct" and t.text == "[":
            self.advance()
            inner = self.parse_type()
            self.expect("punct", "]")
            return N.TOptional(inner, t.loc)
        if t.kind == "punct" and t.text == "(":
            self.advance()
            inner = self.parse_type()
            self.expect("punct", ")")
            return inner
        if t.kind == "quote":
            self.advance()
            return N.TQuote(t.text, t.loc)
        if t.kind == "name":
            self.advance()
            return N.TNamed(t.text, t.loc)
        raise ParseError(f"expected a type, found {t.describe()}", t.loc)

    # expressions, loosest binding first

    def parse_expr(self):
        return self.parse_iff()

    def parse_iff(self):
        e = self.parse_implies()
        while self.at("punct", "<=>"):
            loc = self.advance().loc
            e = N.Binary("<=>", e, self.parse_implies(), loc)
        return e

    def parse_implies(self):
        e = self.parse_or()
        if self.at("punct", "=>"):
            loc = self.advance().loc
            return N.Binary("=>", e, self.parse_implies(), loc)
        return e

    def parse_or(self):
        e = self.parse_and()
        while self.at_kw("or"):
            loc = self.advance().loc
            e = N.Binary("or", e, self.parse_and(), loc)
        return e

    def parse_and(self):
        e = self.parse_not()
        while self.at_kw("and"):
            loc = self.advance().loc
            e = N.Binary("and", e, self.parse_not(), loc)
        return e

    def parse_not(self):
        if self.at_kw("not") and not (self.peek().kind == "kw" and self.peek().text == "in"):
            loc = self.advance().loc
            return N.Unary("not", self.parse_not(), loc)
        return self.parse_rel()

    _REL_PUNCT = ("=", "<>", "<=", ">=", "<", ">")

    def parse_rel(self):
        e = self.parse_add()
        while True:
            t = self.cur()
            if t.kind == "punct" and t.text in self._REL_PUNCT:
                self.advance()
                e = N.Binary(t.text, e, self.parse_add(), t.loc)
            elif t.kind == "kw" and t.text in ("subset", "psubset"):
                self.advance()
                e = N.Binary(t.text, e, self.parse_add(), t.loc)
            elif t.kind == "kw" and t.text == "in" and self.peek().text == "set":
                self.advance()
                self.advance()
                e = N.Binary("in set", e, self.parse_add(), t.loc)
            elif (
                t.kind == "kw"
                and t.text == "not"
                and self.peek().text == "in"
                and self.peek(2).text == "set"
            ):
                self.advance()
                self.advance()
                self.advance()
                e = N.Binary("not in set", e, self.parse_add(), t.loc)
            else:
                return e

    def parse_add(self):
        e = self.parse_mul()
        while True:
            t = self.cur()
            if (t.kind == "punct" and t.text in ("+", "-", "\\", "^")) or (
                t.kind == "kw" and t.text == "union"
            ):
                self.advance()
                e = N.Binary(t.text, e, self.parse_mul(), t.loc)
            else:
                return e

    def parse_mul(self):
        e = self.parse_prefix()
        while True:
            t = self.cur()
            if (t.kind == "punct" and t.text in ("*", "/")) or (
                t.kind == "kw" and t.text in ("div", "mod", "inter")
            ):
                self.advance()
                e = N.Binary(t.text, e, self.parse_prefix(), t.loc)
            else:
                return e

    def parse_prefix(self):
        t = self.cur()
        if t.kind == "punct" and t.text == "-":
            self.advance()
            return N.Unary("-", self.parse_prefix(), t.loc)
        if t.kind == "kw" and t.text in BUILTIN_OPS:
            self.advance()
            return N.BuiltinApp(t.text, (self.parse_prefix(),), t.loc)
        return self.parse_postfix()

    def parse_postfix(self):
        e = self.parse_primary()
        while self.at("punct", "."):
            loc = self.advance().loc
            e = N.FieldSel(e, self.expect_name("field name").text, loc)
        return e

    def _parse_args(self):
        self.expect("punct", "(")
        args = []
        if not self.at("punct", ")"):
            args.append(self.parse_expr())
            while self.accept("punct", ","):
                args.append(self.parse_expr())
        self.expect("punct", ")")
        return tuple(args)

    def parse_primary(self):
        t = self.cur()
        if t.kind == "nat":
            self.advance()
            return N.Lit("nat", int(t.text), t.loc)
        if t.kind == "real":
            self.advance()
            return N.Lit("real", float(t.text), t.loc)
        if t.kind == "char":
            self.advance()
            return N.Lit("char", t.text, t.loc)
        if t.kind == "quote":
            self.advance()
            return N.Lit("quote", t.text, t.loc)
        if t.kind == "kw":
            if t.text in ("true", "false"):
                self.advance()
                return N.Lit("bool", t.text == "true", t.loc)
            if t.text == "nil":
                self.advance()
                return N.Lit("nil", None, t.loc)
            if t.text == "if":
                return self.parse_if()
            if t.text == "let":
                return self.parse_let()
            if t.text in ("forall", "exists"):
                return self.parse_quantifier()
        if t.kind == "name":
            return self.parse_name_expr()
        if t.kind == "punct" and t.text == "(":
            self.advance()
            e = self.parse_expr()
            self.expect("punct", ")")
            return e
        if t.kind == "punct" and t.text == "{":
            return self.parse_braced()
        if t.kind == "punct" and t.text == "[":
            return self.parse_bracketed()
        raise ParseError(f"expected an expression, found {t.describe()}", t.loc)

    def parse_name_expr(self):
        t = self.advance()
        word = t.text
        applies = self.at("punct", "(")
        if word.startswith("mk_") and applies:
            ctor = word[3:]
            if not ctor:
                raise ParseError("record constructor needs a type name", t.loc)
            return N.MkCtor(ctor, self._parse_args(), t.loc)
        if word == "is_" and applies:
            self.expect("punct", "(")
            e = self.parse_expr()
            self.expect("punct", ",")
            ty = self.parse_type()
            self.expect("punct", ")")
            return N.Is(e, ty, t.loc)
        if word.startswith("is_") and applies:
            tyname = word[3:]
            self.expect("punct", "(")
            e = self.parse_expr()
            self.expect("punct", ")")
            ty = N.TBasic(tyname, t.loc) if tyname in BASIC_TYPES else N.TNamed(tyname, t.loc)
            return N.Is(e, ty, t.loc)
        if applies:
            return N.Apply(word, self._parse_args(), t.loc)
        return N.Name(word, t.loc)

    def parse_if(self):
        loc = self.expect("kw", "if").loc
        cond = self.parse_expr()
        self.expect("kw", "then")
        then = self.parse_expr()
        elifs = []
        while self.accept("kw", "elseif"):
            c = self.parse_expr()
            self.expect("kw", "then")
            elifs.append((c, self.parse_expr()))
        self.expect("kw", "else")
        return N.If(cond, then, tuple(elifs), self.parse_expr(), loc)

    def parse_let(self):
        loc = self.expect("kw", "let").loc
        binds = []
        while True:
            pat = self.parse_pattern()
            pattern_names_distinct([pat], "let binding")
            decl_type = self.parse_type() if self.accept("punct", ":") else None
            self.expect("punct", "=")
            binds.append(N.LetBind(pat, decl_type, self.parse_expr(), pat.loc))
            if not self.accept("punct", ","):
                break
        self.expect("kw", "in")
        return N.Let(tuple(binds), self.parse_expr(), loc)

    def parse_quantifier(self):
        t = self.advance()
        binds = self.parse_binds()
        self.expect("punct", "&")
        return N.Quant(t.text, binds, self.parse_expr(), t.loc)

    def parse_binds(self):
        binds = []
        while True:
            pat = self.parse_pattern()
            pattern_names_distinct([pat], "binding pattern")
            if self.at_kw("in") and self.peek().text == "set":
                self.advance()
                self.advance()
                binds.append(N.Bind(pat, self.parse_expr(), None, pat.loc))
            elif self.accept("punct", ":"):
                binds.append(N.Bind(pat, None, self.parse_type(), pat.loc))
            else:
                raise ParseError(
                    f"expected 'in set' or ':' in binding, found {self.cur().describe()}",
                    self.cur().loc,
                )
            if not self.accept("punct", ","):
                return tuple(binds)

    def _parse_comp_tail(self):
        binds = self.parse_binds()
        pred = self.parse_expr() if self.accept("punct", "&") else None
        return binds, pred

    def parse_braced(self):
        loc = self.expect("punct", "{").loc
        if self.accept("punct", "}"):
            return N.SetEnum((), loc)
        if self.at("punct", "|->"):
            self.advance()
            self.expect("punct", "}")
            return N.MapEnum((), loc)
        first = self.parse_expr()
        if self.accept("punct", "|->"):
            val = self.parse_expr()
            if self.accept("punct", "|"):
                binds, pred = self._parse_comp_tail()
                self.expect("punct", "}")
                return N.MapComp(first, val, binds, pred, loc)
            maplets = [(first, val)]
            while self.accept("punct", ","):
                k = self.parse_expr()
                self.expect("punct", "|->")
                maplets.append((k, self.parse_expr()))
            self.expect("punct", "}")
            return N.MapEnum(tuple(maplets), loc)
        if self.accept("punct", "|"):
            binds, pred = self._parse_comp_tail()
            self.expect("punct", "}")
            return N.SetComp(first, binds, pred, loc)
        items = [first]
        while self.accept("punct", ","):
            items.append(self.parse_expr())
        self.expect("punct", "}")
        return N.SetEnum(tuple(items), loc)

    def parse_bracketed(self):
        loc = self.expect("punct", "[").loc
        if self.accept("punct", "]"):
            return N.SeqEnum((), loc)
        first = self.parse_expr()
        if self.accept("punct", "|"):
            binds, pred = self._parse_comp_tail()
            self.expect("punct", "]")
            return N.SeqComp(first, binds, pred, loc)
        items = [first]
        while self.accept("punct", ","):
            items.append(self.parse_expr())
        self.expect("punct", "]")
        return N.SeqEnum(tuple(items), loc)


def _check_toplevel_names(defs, module_name: str):
    """Duplicate names inside one namespace are rejected at parse time."""
    from .defcollect import pattern_names

    type_names: dict[str, Loc] = {}
    fn_names: dict[str, Loc] = {}
    for d in defs:
        if isinstance(d, (N.RecordTypeDef, N.NamedTypeDef)):
            if d.name in type_names:
                raise ParseError(
                    f"duplicate type name {d.name!r} in module {module_name}", d.name_loc
                )
            type_names[d.name] = d.name_loc
        elif isinstance(d, N.FuncDef):
            if d.name in fn_names:
                raise ParseError(
                    f"duplicate function or value name {d.name!r} in module {module_name}",
                    d.name_loc,
                )
            fn_names[d.name] = d.name_loc
        else:
            for name in pattern_names(d.pattern):
                if name in fn_names:
                    raise ParseError(
                        f"duplicate function or value name {name!r} in module {module_name}",
                        d.name_loc,
                    )
                fn_names[name] = d.name_loc


def parse_source(text: str, file: str = "<string>"):
    """Parse a file's worth of text into a list of modules."""
    return _Parser(text, file).parse_file()


def print_module(m: N.SourceModule) -> str:
    """Render a module back to text.

    Definitions are emitted verbatim, in list order, grouped under repeated
    section keywords whenever consecutive definitions share a section.
    """
    out = [f"module {m.name}"]
    if m.exports_all:
        out.append("exports all")
    for imp in m.imports:
        out.append(f"imports from {imp.module} all")
    out.append("definitions")
    section = None
    for d in m.definitions:
        if d.section != section:
            out.append(d.section)
            section = d.section
        out.append(d.verbatim)
        out.append("")
    while out and out[-1] == "":
        out.pop()
    out.append(f"end {m.name}")
    return "\n".join(out) + "\n"
