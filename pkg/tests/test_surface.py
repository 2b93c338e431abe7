"""Surface syntax: parsing, scope resolution, printing round-trips."""

import pytest

from sconekit.syntax import (
    App,
    Bool,
    Context,
    El,
    ElimBool,
    FalseTm,
    Lam,
    Pi,
    TrueTm,
    U,
    Var,
)
from sconekit import oracle
from sconekit.surface import (
    SurfaceError,
    parse,
    parse_file_contents,
    pretty,
    resolve_term,
    resolve_type,
)


def test_parse_true():
    assert resolve_term(parse("true")) == TrueTm()


def test_parse_negation():
    got = resolve_term(parse("fun b => elim b at _ => Bool | false | true"))
    assert got == Lam(ElimBool(Bool(), FalseTm(), TrueTm(), Var(0)))


def test_parse_polymorphic_identity_type():
    got = resolve_type(parse("(A : U0) -> A -> A"))
    assert got == Pi(U(0), Pi(El(Var(0)), El(Var(1))))


def test_el_inserted_only_for_code_valued_heads():
    assert resolve_type(parse("Bool -> Bool")) == Pi(Bool(), Bool())


def test_unknown_identifier_reports_span():
    with pytest.raises(SurfaceError) as e:
        resolve_term(parse("fun x => y"))
    assert "y" in str(e.value) and "1:10" in str(e.value)


def test_syntax_error_has_position():
    with pytest.raises(SurfaceError, match=r"1:\d+"):
        parse("fun =>")


def test_comments_and_whitespace():
    text = "-- negation\nfun b =>  -- binder\n  elim b at _ => Bool | false | true\n"
    assert isinstance(resolve_term(parse(text)), Lam)


def test_ascription_splits_term_and_type():
    t, ann = parse_file_contents("(fun A => fun a => a) : (A : U0) -> A -> A")
    assert resolve_term(t) == Lam(Lam(Var(0)))
    assert resolve_type(ann) == Pi(U(0), Pi(El(Var(0)), El(Var(1))))


def test_application_is_left_associative():
    got = resolve_term(parse("fun f => fun a => fun b => f a b"))
    assert got == Lam(Lam(Lam(App(App(Var(2), Var(1)), Var(0)))))


def test_pretty_names_by_binder_depth():
    t = Lam(Lam(App(Var(1), Var(0))))
    assert pretty(t) == "fun x0 => fun x1 => x0 x1"


def test_print_parse_roundtrip_on_generated_closed_terms():
    count = 0
    for seed in range(150):
        budget = oracle.GenBudget(seed=seed)
        try:
            ctx = oracle.gen_context(budget)
            ty = oracle.gen_type(budget, ctx)
            t = oracle.gen_term(budget, ctx, ty)
        except oracle.NoInhabitantError:
            continue
        closed = t
        for _ in ctx.entries:
            closed = Lam(closed)
        assert resolve_term(parse(pretty(closed))) == closed
        count += 1
    assert count >= 60


def test_print_parse_roundtrip_on_types():
    for seed in range(100):
        ty = oracle.gen_type(oracle.GenBudget(seed=seed), Context())
        assert resolve_type(parse(pretty(ty))) == ty
