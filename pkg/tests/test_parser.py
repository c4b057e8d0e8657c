from __future__ import annotations

import pytest

from specimen.errors import ParseError, UnknownConstant
from specimen.parser import parse_term, parse_type
from specimen.syntax import (
    App,
    Arrow,
    Base,
    Const,
    Forall,
    Lam,
    TVar,
    TyApp,
    TyLam,
    Var,
    alpha_eq,
    term_to_text,
    type_to_text,
)

BASES = frozenset({"t", "float", "human", "brits", "2yoGirl"})


def test_forall_constant_type():
    ty = parse_type("Pi a. (a -> t) -> t")
    assert ty == Forall("a", Arrow(Arrow(TVar("a"), Base("t")), Base("t")))


def test_arrow_right_associative():
    ty = parse_type("float -> float -> t")
    assert ty == Arrow(Base("float"), Arrow(Base("float"), Base("t")))


def test_specimen_type():
    assert parse_type("Pi a. a") == Forall("a", TVar("a"))


def test_pi_extends_right():
    ty = parse_type("Pi a. a -> t")
    assert ty == Forall("a", Arrow(TVar("a"), Base("t")))


def test_parenthesised_pi_in_domain():
    ty = parse_type("(Pi a. a) -> t")
    assert ty == Arrow(Forall("a", TVar("a")), Base("t"))


def test_base_vs_tvar_classification():
    ty = parse_type("human -> a", frozenset({"t", "float", "human"}))
    assert ty == Arrow(Base("human"), TVar("a"))


def test_digit_leading_class_name():
    assert parse_type("2yoGirl", BASES) == Base("2yoGirl")


def test_pure_numeral_rejected_in_types():
    with pytest.raises(ParseError):
        parse_type("80 -> t")


def test_reserved_binder_rejected():
    with pytest.raises(ParseError):
        parse_type("Pi forall. forall")


def test_base_type_cannot_be_rebound():
    with pytest.raises(ParseError):
        parse_type("Pi human. human", frozenset({"t", "float", "human"}))


def test_unbalanced_parens():
    with pytest.raises(ParseError):
        parse_type("(a -> t")


def test_quantified_sentence_parses():
    term = parse_term("forall{human} (\\x:human. mortal x)", BASES)
    assert isinstance(term, App)
    assert term.fn == TyApp(Const("forall"), Base("human"))
    assert term.arg == Lam("x", Base("human"), App(Const("mortal"), Var("x")))


def test_type_application_of_spec():
    assert parse_term("spec{brits}", BASES) == TyApp(Const("spec"), Base("brits"))


def test_malformed_lambda():
    with pytest.raises(ParseError):
        parse_term("\\x:")


def test_application_left_associative():
    term = parse_term("f x y", BASES)
    assert term == App(App(Const("f"), Const("x")), Const("y"))


def test_tyapp_binds_tighter_than_application():
    term = parse_term("f x{t}", BASES)
    assert term == App(Const("f"), TyApp(Const("x"), Base("t")))


def test_tyapp_on_application_needs_parens():
    term = parse_term("(f x){t}", BASES)
    assert term == TyApp(App(Const("f"), Const("x")), Base("t"))


def test_lambda_argument_extends_right():
    term = parse_term("f \\x:t. g x", BASES)
    assert term == App(Const("f"), Lam("x", Base("t"), App(Const("g"), Var("x"))))


def test_bound_names_shadow_constants():
    term = parse_term("\\mortal:t. mortal", BASES)
    assert term == Lam("mortal", Base("t"), Var("mortal"))


def test_type_lambda():
    term = parse_term("/\\a. \\x:a. x", BASES)
    assert term == TyLam("a", Lam("x", TVar("a"), Var("x")))


def test_unknown_constant_rejected_with_signature():
    with pytest.raises(UnknownConstant):
        parse_term("mortal socrates", BASES, constants=frozenset({"mortal"}))


def test_comments_ignored():
    ty = parse_type("t -> t  # identity on truth values")
    assert ty == Arrow(Base("t"), Base("t"))


@pytest.mark.parametrize(
    "text",
    [
        "Pi a. (a -> t) -> t",
        "float -> float -> t",
        "(Pi a. a) -> Pi b. b -> t",
        "((t -> t) -> t) -> t",
    ],
)
def test_type_print_parse_round_trip(text):
    ty = parse_type(text, BASES)
    assert alpha_eq(parse_type(type_to_text(ty), BASES), ty)


@pytest.mark.parametrize(
    "text",
    [
        "forall{human} (\\x:human. mortal x)",
        "spec{brits}",
        "/\\a. \\x:a. x",
        "(\\x:t. x) ((\\y:t. y) z)",
        "(f x){t} y",
        "lt a (g b)",
        "\\f:(t -> t) -> t. f (\\x:t. x)",
    ],
)
def test_term_print_parse_round_trip(text):
    term = parse_term(text, BASES)
    assert alpha_eq(parse_term(term_to_text(term), BASES), term)
