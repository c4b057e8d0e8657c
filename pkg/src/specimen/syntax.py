"""Abstract syntax for the second-order calculus.

Types are base types, type variables, arrows and Pi-quantified types.
Terms are Church style: every lambda binder carries its type annotation,
and quantification over types is explicit (TyLam / TyApp).

Everything here is an immutable value; substitution returns fresh trees.
Capture avoidance renames binders deterministically by appending the
smallest positive integer suffix not already in use, so printed output is
stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

# ------------------------------------------------------------------ types


@dataclass(frozen=True, slots=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class TVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: TypeExpr
    cod: TypeExpr

    def __str__(self) -> str:
        return type_to_text(self)


@dataclass(frozen=True, slots=True)
class Forall:
    binder: str
    body: TypeExpr

    def __str__(self) -> str:
        return type_to_text(self)


TypeExpr = Union[Base, TVar, Arrow, Forall]

# ------------------------------------------------------------------ terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    fn: TermExpr
    arg: TermExpr

    def __str__(self) -> str:
        return term_to_text(self)


@dataclass(frozen=True, slots=True)
class Lam:
    binder: str
    binder_type: TypeExpr
    body: TermExpr

    def __str__(self) -> str:
        return term_to_text(self)


@dataclass(frozen=True, slots=True)
class TyApp:
    fn: TermExpr
    type_arg: TypeExpr

    def __str__(self) -> str:
        return term_to_text(self)


@dataclass(frozen=True, slots=True)
class TyLam:
    binder: str
    body: TermExpr

    def __str__(self) -> str:
        return term_to_text(self)


TermExpr = Union[Var, Const, App, Lam, TyApp, TyLam]


# --------------------------------------------------------------- printing


def type_to_text(t: TypeExpr) -> str:
    """Concrete syntax for a type; arrows print right-associated."""
    match t:
        case Base(name) | TVar(name):
            return name
        case Arrow(dom, cod):
            left = type_to_text(dom)
            if isinstance(dom, (Arrow, Forall)):
                left = f"({left})"
            return f"{left} -> {type_to_text(cod)}"
        case Forall(binder, body):
            return f"Pi {binder}. {type_to_text(body)}"
    raise AssertionError(t)


def _atom_text(u: TermExpr) -> str:
    text = term_to_text(u)
    if isinstance(u, (Var, Const, TyApp)):
        return text
    return f"({text})"


def term_to_text(u: TermExpr) -> str:
    """Concrete syntax for a term; application is left-associated and the
    {T} postfix binds tighter than application."""
    match u:
        case Var(name) | Const(name):
            return name
        case App(fn, arg):
            left = term_to_text(fn) if isinstance(fn, (Var, Const, App, TyApp)) else f"({term_to_text(fn)})"
            return f"{left} {_atom_text(arg)}"
        case Lam(binder, binder_type, body):
            return f"\\{binder}:{type_to_text(binder_type)}. {term_to_text(body)}"
        case TyApp(fn, type_arg):
            return f"{_atom_text(fn)}{{{type_to_text(type_arg)}}}"
        case TyLam(binder, body):
            return f"/\\{binder}. {term_to_text(body)}"
    raise AssertionError(u)


# ------------------------------------------------------------- name sets


def free_tvars(t: TypeExpr) -> frozenset[str]:
    match t:
        case Base(_):
            return frozenset()
        case TVar(name):
            return frozenset({name})
        case Arrow(dom, cod):
            return free_tvars(dom) | free_tvars(cod)
        case Forall(binder, body):
            return free_tvars(body) - {binder}
    raise AssertionError(t)


def base_names(t: TypeExpr) -> frozenset[str]:
    match t:
        case Base(name):
            return frozenset({name})
        case TVar(_):
            return frozenset()
        case Arrow(dom, cod):
            return base_names(dom) | base_names(cod)
        case Forall(_, body):
            return base_names(body)
    raise AssertionError(t)


def free_vars(u: TermExpr) -> frozenset[str]:
    match u:
        case Var(name):
            return frozenset({name})
        case Const(_):
            return frozenset()
        case App(fn, arg):
            return free_vars(fn) | free_vars(arg)
        case Lam(binder, _, body):
            return free_vars(body) - {binder}
        case TyApp(fn, _):
            return free_vars(fn)
        case TyLam(_, body):
            return free_vars(body)
    raise AssertionError(u)


def const_names(u: TermExpr) -> frozenset[str]:
    match u:
        case Var(_):
            return frozenset()
        case Const(name):
            return frozenset({name})
        case App(fn, arg):
            return const_names(fn) | const_names(arg)
        case Lam(_, _, body) | TyLam(_, body):
            return const_names(body)
        case TyApp(fn, _):
            return const_names(fn)
    raise AssertionError(u)


def free_tvars_in_term(u: TermExpr) -> frozenset[str]:
    match u:
        case Var(_) | Const(_):
            return frozenset()
        case App(fn, arg):
            return free_tvars_in_term(fn) | free_tvars_in_term(arg)
        case Lam(_, binder_type, body):
            return free_tvars(binder_type) | free_tvars_in_term(body)
        case TyApp(fn, type_arg):
            return free_tvars_in_term(fn) | free_tvars(type_arg)
        case TyLam(binder, body):
            return free_tvars_in_term(body) - {binder}
    raise AssertionError(u)


def base_names_in_term(u: TermExpr) -> frozenset[str]:
    match u:
        case Var(_) | Const(_):
            return frozenset()
        case App(fn, arg):
            return base_names_in_term(fn) | base_names_in_term(arg)
        case Lam(_, binder_type, body):
            return base_names(binder_type) | base_names_in_term(body)
        case TyApp(fn, type_arg):
            return base_names_in_term(fn) | base_names(type_arg)
        case TyLam(_, body):
            return base_names_in_term(body)
    raise AssertionError(u)


def all_names(x: TypeExpr | TermExpr) -> set[str]:
    """Every identifier occurring anywhere in the tree, bound or free."""
    match x:
        case Base(name) | TVar(name) | Var(name) | Const(name):
            return {name}
        case Arrow(dom, cod):
            return all_names(dom) | all_names(cod)
        case Forall(binder, body) | TyLam(binder, body):
            return {binder} | all_names(body)
        case App(fn, arg):
            return all_names(fn) | all_names(arg)
        case Lam(binder, binder_type, body):
            return {binder} | all_names(binder_type) | all_names(body)
        case TyApp(fn, type_arg):
            return all_names(fn) | all_names(type_arg)
    raise AssertionError(x)


def fresh_name(stem: str, avoid: set[str]) -> str:
    """`stem` with the smallest positive integer suffix not in `avoid`."""
    k = 1
    while f"{stem}{k}" in avoid:
        k += 1
    return f"{stem}{k}"


# ------------------------------------------------------------ substitution
#
# Capture avoidance is slightly stronger than the textbook rule: a binder
# is also renamed when it collides with a *constant* or *base type* name of
# the inserted value.  Without this, printing a term like
# (\h:float. ... h ...) with the coercion constant h substituted inside
# would re-bind the constant on reparse and break the printer/parser
# round trip.


def _avoid_for_term(v: TermExpr) -> frozenset[str]:
    return free_vars(v) | const_names(v)


def subst_term(u: TermExpr, x: str, v: TermExpr) -> TermExpr:
    """u with every free occurrence of the term variable x replaced by v."""
    match u:
        case Var(name):
            return v if name == x else u
        case Const(_):
            return u
        case App(fn, arg):
            return App(subst_term(fn, x, v), subst_term(arg, x, v))
        case TyApp(fn, type_arg):
            return TyApp(subst_term(fn, x, v), type_arg)
        case TyLam(binder, body):
            # the binder can capture a free *type* variable of v
            if binder in (free_tvars_in_term(v) | base_names_in_term(v)) and x in free_vars(body):
                avoid = set(all_names(v)) | all_names(body) | {binder}
                renamed = fresh_name(binder, avoid)
                body = subst_type_in_term(body, binder, TVar(renamed))
                return TyLam(renamed, subst_term(body, x, v))
            return TyLam(binder, subst_term(body, x, v))
        case Lam(binder, binder_type, body):
            if binder == x:
                return u
            if binder in _avoid_for_term(v) and x in free_vars(body):
                avoid = set(all_names(v)) | all_names(body) | {binder}
                renamed = fresh_name(binder, avoid)
                body = subst_term(body, binder, Var(renamed))
                return Lam(renamed, binder_type, subst_term(body, x, v))
            return Lam(binder, binder_type, subst_term(body, x, v))
    raise AssertionError(u)


def _avoid_for_type(t: TypeExpr) -> frozenset[str]:
    return free_tvars(t) | base_names(t)


def subst_type_in_type(t: TypeExpr, a: str, s: TypeExpr) -> TypeExpr:
    """t with every free occurrence of the type variable a replaced by s."""
    match t:
        case Base(_):
            return t
        case TVar(name):
            return s if name == a else t
        case Arrow(dom, cod):
            return Arrow(subst_type_in_type(dom, a, s), subst_type_in_type(cod, a, s))
        case Forall(binder, body):
            if binder == a:
                return t
            if binder in _avoid_for_type(s) and a in free_tvars(body):
                avoid = set(all_names(s)) | all_names(body) | {binder}
                renamed = fresh_name(binder, avoid)
                body = subst_type_in_type(body, binder, TVar(renamed))
                return Forall(renamed, subst_type_in_type(body, a, s))
            return Forall(binder, subst_type_in_type(body, a, s))
    raise AssertionError(t)


def subst_type_in_term(u: TermExpr, a: str, s: TypeExpr) -> TermExpr:
    """u with the type variable a replaced by s, including in annotations."""
    match u:
        case Var(_) | Const(_):
            return u
        case App(fn, arg):
            return App(subst_type_in_term(fn, a, s), subst_type_in_term(arg, a, s))
        case Lam(binder, binder_type, body):
            return Lam(binder, subst_type_in_type(binder_type, a, s), subst_type_in_term(body, a, s))
        case TyApp(fn, type_arg):
            return TyApp(subst_type_in_term(fn, a, s), subst_type_in_type(type_arg, a, s))
        case TyLam(binder, body):
            if binder == a:
                return u
            if binder in _avoid_for_type(s) and a in free_tvars_in_term(body):
                avoid = set(all_names(s)) | all_names(body) | {binder}
                renamed = fresh_name(binder, avoid)
                body = subst_type_in_term(body, binder, TVar(renamed))
                return TyLam(renamed, subst_type_in_term(body, a, s))
            return TyLam(binder, subst_type_in_term(body, a, s))
    raise AssertionError(u)


def subst_type(target: TypeExpr | TermExpr, a: str, s: TypeExpr):
    """Substitute in either kind of tree; dispatches on the target."""
    if isinstance(target, (Base, TVar, Arrow, Forall)):
        return subst_type_in_type(target, a, s)
    return subst_type_in_term(target, a, s)


# --------------------------------------------------------- alpha equality


def _alpha_ty(a: TypeExpr, b: TypeExpr, env_a: dict[str, int], env_b: dict[str, int], depth: int) -> bool:
    match a, b:
        case Base(n1), Base(n2):
            return n1 == n2
        case TVar(n1), TVar(n2):
            i, j = env_a.get(n1), env_b.get(n2)
            if i is None and j is None:
                return n1 == n2
            return i == j
        case Arrow(d1, c1), Arrow(d2, c2):
            return _alpha_ty(d1, d2, env_a, env_b, depth) and _alpha_ty(c1, c2, env_a, env_b, depth)
        case Forall(x1, b1), Forall(x2, b2):
            return _alpha_ty(b1, b2, {**env_a, x1: depth}, {**env_b, x2: depth}, depth + 1)
    return False


def _alpha_tm(
    a: TermExpr,
    b: TermExpr,
    venv_a: dict[str, int],
    venv_b: dict[str, int],
    tenv_a: dict[str, int],
    tenv_b: dict[str, int],
    depth: int,
) -> bool:
    match a, b:
        case Var(n1), Var(n2):
            i, j = venv_a.get(n1), venv_b.get(n2)
            if i is None and j is None:
                return n1 == n2
            return i == j
        case Const(n1), Const(n2):
            return n1 == n2
        case App(f1, x1), App(f2, x2):
            return _alpha_tm(f1, f2, venv_a, venv_b, tenv_a, tenv_b, depth) and _alpha_tm(
                x1, x2, venv_a, venv_b, tenv_a, tenv_b, depth
            )
        case Lam(x1, t1, b1), Lam(x2, t2, b2):
            if not _alpha_ty(t1, t2, tenv_a, tenv_b, depth):
                return False
            return _alpha_tm(b1, b2, {**venv_a, x1: depth}, {**venv_b, x2: depth}, tenv_a, tenv_b, depth + 1)
        case TyApp(f1, t1), TyApp(f2, t2):
            return _alpha_ty(t1, t2, tenv_a, tenv_b, depth) and _alpha_tm(
                f1, f2, venv_a, venv_b, tenv_a, tenv_b, depth
            )
        case TyLam(x1, b1), TyLam(x2, b2):
            return _alpha_tm(b1, b2, venv_a, venv_b, {**tenv_a, x1: depth}, {**tenv_b, x2: depth}, depth + 1)
    return False


def alpha_eq(a, b) -> bool:
    """True iff a and b are identical up to consistent renaming of bound
    term and type variables.  Works on two types or two terms."""
    a_is_type = isinstance(a, (Base, TVar, Arrow, Forall))
    b_is_type = isinstance(b, (Base, TVar, Arrow, Forall))
    if a_is_type != b_is_type:
        return False
    if a_is_type:
        return _alpha_ty(a, b, {}, {}, 0)
    return _alpha_tm(a, b, {}, {}, {}, {}, 0)
