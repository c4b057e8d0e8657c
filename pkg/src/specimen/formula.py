"""First-order formula skeletons extracted from beta-normal terms of type t.

The logical fragment is head-constant directed: forall/exists become
quantifiers ranging over their type argument, and/or/imp/not become
connectives, and every other constant head with ground arguments becomes
an atom.  Ground arguments may mention the specimen, tau/eps witness
terms, coercion applications, model constants and numerals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotLogicalFragment
from .syntax import (
    App,
    Const,
    Lam,
    TermExpr,
    TyApp,
    TypeExpr,
    Var,
    term_to_text,
    type_to_text,
)

_CONNECTIVES = frozenset({"and", "or", "imp", "not"})
_QUANTIFIERS = frozenset({"forall", "exists"})
_WITNESS = frozenset({"tau", "eps"})
_NUMERAL_RE = re.compile(r"[0-9]+\Z")


# ------------------------------------------------------------ ground terms


@dataclass(frozen=True)
class BoundVar:
    name: str


@dataclass(frozen=True)
class ModelConst:
    name: str


@dataclass(frozen=True)
class Specimen:
    of_type: TypeExpr


@dataclass(frozen=True)
class TauTerm:
    of_type: TypeExpr
    var: str
    predicate: "Formula"


@dataclass(frozen=True)
class EpsTerm:
    of_type: TypeExpr
    var: str
    predicate: "Formula"


@dataclass(frozen=True)
class CoerceApp:
    coercion: str
    arg: "GroundTerm"


@dataclass(frozen=True)
class Numeral:
    value: Fraction


GroundTerm = Union[BoundVar, ModelConst, Specimen, TauTerm, EpsTerm, CoerceApp, Numeral]


# --------------------------------------------------------------- formulae


@dataclass(frozen=True)
class Atom:
    rel: str
    type_args: tuple[TypeExpr, ...]
    args: tuple[GroundTerm, ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForallQ:
    var: str
    over: TypeExpr
    body: "Formula"


@dataclass(frozen=True)
class ExistsQ:
    var: str
    over: TypeExpr
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Imp, ForallQ, ExistsQ]


# -------------------------------------------------------------- extraction


def _spine(u: TermExpr) -> tuple[TermExpr, list]:
    """Flatten an application spine into (head, mixed type/term arguments)."""
    items: list = []
    while True:
        match u:
            case App(fn, arg):
                items.append(("arg", arg))
                u = fn
            case TyApp(fn, type_arg):
                items.append(("ty", type_arg))
                u = fn
            case _:
                items.reverse()
                return u, items


def _split_spine(u: TermExpr):
    head, items = _spine(u)
    ty_args = tuple(x for kind, x in items if kind == "ty")
    args = tuple(x for kind, x in items if kind == "arg")
    return head, ty_args, args


def _predicate_body(pred: TermExpr, scope: frozenset[str]) -> tuple[str, "Formula"]:
    """A quantified predicate as (bound variable, formula).

    Literal lambdas are opened; a bare constant predicate is eta-expanded
    with a fresh variable.
    """
    match pred:
        case Lam(binder, _, body):
            return binder, _extract(body, scope | {binder})
        case Const(name):
            var = "x"
            k = 0
            while var in scope:
                k += 1
                var = f"x{k}"
            return var, Atom(name, (), (BoundVar(var),))
    raise NotLogicalFragment(term_to_text(pred))


def _ground(u: TermExpr, scope: frozenset[str]) -> GroundTerm:
    match u:
        case Var(name):
            if name in scope:
                return BoundVar(name)
            raise NotLogicalFragment(f"free variable {name!r}")
        case Const(name):
            if _NUMERAL_RE.match(name):
                return Numeral(Fraction(name))
            return ModelConst(name)
    head, ty_args, args = _split_spine(u)
    if not isinstance(head, Const):
        raise NotLogicalFragment(term_to_text(u))
    if head.name == "spec" and len(ty_args) == 1 and not args:
        return Specimen(ty_args[0])
    if head.name in _WITNESS and len(ty_args) == 1 and len(args) == 1:
        var, body = _predicate_body(args[0], scope)
        cls = TauTerm if head.name == "tau" else EpsTerm
        return cls(ty_args[0], var, body)
    if head.name not in _CONNECTIVES | _QUANTIFIERS | _WITNESS | {"spec"} and not ty_args and len(args) == 1:
        return CoerceApp(head.name, _ground(args[0], scope))
    raise NotLogicalFragment(term_to_text(u))


def _extract(u: TermExpr, scope: frozenset[str]) -> Formula:
    head, ty_args, args = _split_spine(u)
    if not isinstance(head, Const):
        raise NotLogicalFragment(term_to_text(u))
    name = head.name

    if name in _QUANTIFIERS:
        if len(ty_args) != 1 or len(args) != 1:
            raise NotLogicalFragment(term_to_text(u))
        var, body = _predicate_body(args[0], scope)
        cls = ForallQ if name == "forall" else ExistsQ
        return cls(var, ty_args[0], body)

    if name == "not":
        if ty_args or len(args) != 1:
            raise NotLogicalFragment(term_to_text(u))
        return Not(_extract(args[0], scope))

    if name in ("and", "or", "imp"):
        if ty_args or len(args) != 2:
            raise NotLogicalFragment(term_to_text(u))
        cls = {"and": And, "or": Or, "imp": Imp}[name]
        return cls(_extract(args[0], scope), _extract(args[1], scope))

    if name in _WITNESS or name == "spec":
        raise NotLogicalFragment(term_to_text(u))

    return Atom(name, ty_args, tuple(_ground(a, scope) for a in args))


def extract_formula(u: TermExpr, free_vars: frozenset[str] = frozenset()) -> Formula:
    """Translate a closed beta-normal term of type t into a Formula.

    `free_vars` admits named holes (used when judging a predicate whose
    argument is supplied during evaluation); everything else free is
    outside the fragment.
    """
    return _extract(u, free_vars)


# --------------------------------------------------------------- rendering


def _frac_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def ground_to_text(g: GroundTerm) -> str:
    match g:
        case BoundVar(name) | ModelConst(name):
            return name
        case Specimen(of_type):
            return f"spec[{type_to_text(of_type)}]"
        case TauTerm(of_type, var, predicate):
            return f"tau[{type_to_text(of_type)}]({var}. {formula_to_text(predicate)})"
        case EpsTerm(of_type, var, predicate):
            return f"eps[{type_to_text(of_type)}]({var}. {formula_to_text(predicate)})"
        case CoerceApp(coercion, arg):
            return f"{coercion}({ground_to_text(arg)})"
        case Numeral(value):
            return _frac_text(value)
    raise AssertionError(g)


def formula_to_text(f: Formula) -> str:
    """Compact text rendering, e.g. ``love(spec[brits], France)``."""
    match f:
        case Atom(rel, _, args):
            if not args:
                return rel
            return f"{rel}({', '.join(ground_to_text(a) for a in args)})"
        case Not(body):
            inner = formula_to_text(body)
            return f"not {inner}" if isinstance(body, Atom) else f"not ({inner})"
        case And(left, right):
            return f"({formula_to_text(left)} and {formula_to_text(right)})"
        case Or(left, right):
            return f"({formula_to_text(left)} or {formula_to_text(right)})"
        case Imp(left, right):
            return f"({formula_to_text(left)} imp {formula_to_text(right)})"
        case ForallQ(var, over, body):
            return f"forall {var}:{type_to_text(over)}. {formula_to_text(body)}"
        case ExistsQ(var, over, body):
            return f"exists {var}:{type_to_text(over)}. {formula_to_text(body)}"
    raise AssertionError(f)


def _ground_sexpr(g: GroundTerm) -> str:
    match g:
        case BoundVar(name) | ModelConst(name):
            return name
        case Specimen(of_type):
            return f"(spec {type_to_text(of_type)})"
        case TauTerm(of_type, var, predicate):
            return f"(tau {type_to_text(of_type)} {var} {formula_to_sexpr(predicate)})"
        case EpsTerm(of_type, var, predicate):
            return f"(eps {type_to_text(of_type)} {var} {formula_to_sexpr(predicate)})"
        case CoerceApp(coercion, arg):
            return f"(coerce {coercion} {_ground_sexpr(arg)})"
        case Numeral(value):
            return _frac_text(value)
    raise AssertionError(g)


def formula_to_sexpr(f: Formula) -> str:
    match f:
        case Atom(rel, _, args):
            if not args:
                return f"({rel})"
            return f"({rel} {' '.join(_ground_sexpr(a) for a in args)})"
        case Not(body):
            return f"(not {formula_to_sexpr(body)})"
        case And(left, right):
            return f"(and {formula_to_sexpr(left)} {formula_to_sexpr(right)})"
        case Or(left, right):
            return f"(or {formula_to_sexpr(left)} {formula_to_sexpr(right)})"
        case Imp(left, right):
            return f"(imp {formula_to_sexpr(left)} {formula_to_sexpr(right)})"
        case ForallQ(var, over, body):
            return f"(forall ({var} {type_to_text(over)}) {formula_to_sexpr(body)})"
        case ExistsQ(var, over, body):
            return f"(exists ({var} {type_to_text(over)}) {formula_to_sexpr(body)})"
    raise AssertionError(f)
