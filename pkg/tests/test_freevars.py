"""Free-variable collection, conditional marking, and body diagnostics."""

from conftest import single_module

from defsort.defcollect import DefKind, Namespace, collect
from defsort.freevars import (
    BoundContext,
    check_duplicate_binds,
    check_init_cycles,
    check_precondition_calls,
    def_dependencies,
    def_use_sites,
    free_uses,
    init_dependencies,
)
from defsort.syntax import parse_source


def _value_body(expr_src):
    src = f"module X\nexports all\ndefinitions\nvalues\n    v = {expr_src};\nend X\n"
    fm = collect(parse_source(src)[0])
    return fm.get(Namespace.FUNCTION, "v").body


def _uses(expr_src, bound=()):
    body = _value_body(expr_src)
    return free_uses(body, BoundContext([frozenset(bound)]))


def _triples(uses):
    return [(u.name, u.space, u.conditional) for u in uses]


def test_bound_context_stacks_scopes():
    ctx = BoundContext([{"a"}])
    assert ctx.bound("a") and not ctx.bound("b")
    ctx.push({"b"})
    assert ctx.bound("b")
    ctx.pop()
    assert not ctx.bound("b")


def test_names_and_applications_respect_bindings():
    assert _triples(_uses("x + y", bound={"x"})) == [
        ("y", Namespace.FUNCTION, False),
    ]
    assert _triples(_uses("f(x)", bound={"x"})) == [
        ("f", Namespace.FUNCTION, False),
    ]


def test_if_branches_are_conditional_but_conditions_are_not():
    got = _triples(_uses("if c then a elseif d then b else e"))
    assert got == [
        ("c", Namespace.FUNCTION, False),
        ("a", Namespace.FUNCTION, True),
        ("d", Namespace.FUNCTION, False),
        ("b", Namespace.FUNCTION, True),
        ("e", Namespace.FUNCTION, True),
    ]


def test_quantifier_bodies_are_conditional_and_binders_scope():
    got = _triples(_uses("forall x in set s & x > t"))
    assert got == [
        ("s", Namespace.FUNCTION, False),
        ("t", Namespace.FUNCTION, True),
    ]


def test_type_binds_emit_type_uses():
    got = _triples(_uses("forall m : T & m > 0"))
    assert got == [("T", Namespace.TYPE, False)]


def test_let_bindings_scope_sequentially():
    got = _triples(_uses("let a = p, b = a + q in a + b + r"))
    assert got == [
        ("p", Namespace.FUNCTION, False),
        ("q", Namespace.FUNCTION, False),
        ("r", Namespace.FUNCTION, False),
    ]


def test_comprehension_parts_stay_unconditional():
    got = _triples(_uses("{ x + w | x in set s, y in set x & y > z }"))
    assert got == [
        ("s", Namespace.FUNCTION, False),
        ("w", Namespace.FUNCTION, False),
        ("z", Namespace.FUNCTION, False),
    ]


def test_constructors_and_type_tests_use_type_names():
    got = _triples(_uses("mk_Point(a, b)", bound={"a", "b"}))
    assert got == [("Point", Namespace.TYPE, False)]
    got = _triples(_uses("is_T(x)", bound={"x"}))
    assert got == [("T", Namespace.TYPE, False)]


def test_field_selection_walks_the_record_expression_only():
    got = _triples(_uses("r.fld + r.fld"))
    assert got == [
        ("r", Namespace.FUNCTION, False),
        ("r", Namespace.FUNCTION, False),
    ]


def test_builtin_operators_are_not_uses():
    assert _uses("len s + card t + hd u", bound={"s", "t", "u"}) == []


def test_def_use_sites_drop_self_references():
    src = (
        "module R\nexports all\ndefinitions\nfunctions\n"
        "    f: nat -> nat\n"
        "    f(x) == if x = 0 then 0 else f(x - 1)\n"
        "    measure f(x);\n"
        "end R\n"
    )
    fm = collect(parse_source(src)[0])
    f = fm.get(Namespace.FUNCTION, "f")
    assert def_use_sites(f, fm) == []
    measure = fm.get(Namespace.FUNCTION, "measure_f")
    assert def_use_sites(measure, fm) == []


def test_def_use_sites_drop_unresolved_names():
    src = (
        "module R\nexports all\ndefinitions\nvalues\n"
        "    v = external_helper(1);\n"
        "end R\n"
    )
    fm = collect(parse_source(src)[0])
    assert def_use_sites(fm.get(Namespace.FUNCTION, "v"), fm) == []


def test_def_dependencies_for_golden_invariant():
    fm = collect(single_module("M.vdmsl"))
    inv_s = fm.get(Namespace.FUNCTION, "inv_S")
    assert def_dependencies(inv_s, fm) == {"tail", "head"}


def test_init_dependencies_ignore_conditional_uses():
    fm = collect(single_module("valcond.vdmsl"))
    a = fm.get(Namespace.FUNCTION, "A")
    b = fm.get(Namespace.FUNCTION, "B")
    assert init_dependencies(a, fm) == {"c"}
    assert init_dependencies(b, fm) == {"A"}


def test_init_dependencies_only_apply_to_values():
    fm = collect(single_module("M.vdmsl"))
    assert init_dependencies(fm.get(Namespace.FUNCTION, "tail"), fm) == set()


def test_duplicate_bind_reported_once_at_second_bind():
    m = single_module("dupbind.vdmsl")
    diags = check_duplicate_binds(m)
    assert len(diags) == 1
    d = diags[0]
    assert (d.severity, d.code) == ("error", "dup-bind")
    assert (d.at.line, d.at.col) == (4, 44)
    assert str(d).endswith(
        "4:44: error: comprehension binds 'x' more than once [dup-bind]"
    )


def test_distinct_binds_are_clean():
    src = (
        "module OK\nexports all\ndefinitions\nvalues\n"
        "    v = { x + y | x in set {1}, y in set {2} };\n"
        "end OK\n"
    )
    assert check_duplicate_binds(parse_source(src)[0]) == []


def test_init_cycle_reported_at_first_member():
    fm = collect(single_module("valcycle.vdmsl"))
    diags = check_init_cycles(fm)
    assert len(diags) == 1
    d = diags[0]
    assert (d.severity, d.code) == ("error", "init-cycle")
    assert d.message == "value initialization cycle: A -> B -> A"
    assert (d.at.line, d.at.col) == (4, 5)


def test_conditional_use_breaks_init_cycle():
    fm = collect(single_module("valcond.vdmsl"))
    assert check_init_cycles(fm) == []


def test_unguarded_precondition_call_warns():
    m = single_module("precall.vdmsl")
    diags = check_precondition_calls(m, collect(m))
    assert len(diags) == 1
    d = diags[0]
    assert (d.severity, d.code) == ("warning", "pre-call")
    assert d.message == "call to f is not guarded by pre_f"
    assert (d.at.line, d.at.col) == (9, 13)


def test_guarded_call_suppresses_the_warning():
    src = (
        "module G\nexports all\ndefinitions\nfunctions\n"
        "    f: nat -> nat\n"
        "    f(x) == x\n"
        "    pre x > 0;\n"
        "    g: nat -> nat\n"
        "    g(y) == if pre_f(y) then f(y) else 0;\n"
        "end G\n"
    )
    m = parse_source(src)[0]
    assert check_precondition_calls(m, collect(m)) == []
