"""Syntax-directed Church-style type checker.

Five rules: variables and constants carry their declared type; an
application u(v) of u : T1 -> T2 demands v : T1; a lambda with annotated
binder builds an arrow; a type application specialises a Pi type; a type
abstraction is admitted only when the bound type variable does not occur
in the type of any free term variable of the body.

Free type variables in annotations are tolerated (open checking), so the
genericity side condition can be exercised on bare terms; unknown *base*
type names are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ApplicationMismatch,
    GenericityViolation,
    IllFormedType,
    NotAForall,
    NotAFunction,
    UnboundVariable,
    UnknownConstant,
)
from .syntax import (
    App,
    Arrow,
    Base,
    Const,
    Forall,
    Lam,
    TermExpr,
    TVar,
    TyApp,
    TyLam,
    TypeExpr,
    Var,
    alpha_eq,
    base_names,
    free_tvars,
    free_vars,
    subst_type_in_type,
)


@dataclass(frozen=True)
class TypingContext:
    """Declared base types, type variables in scope, term variable types
    and the constant signature."""

    type_names: frozenset[str] = frozenset({"t", "float"})
    tvars_in_scope: frozenset[str] = frozenset()
    term_vars: dict[str, TypeExpr] = field(default_factory=dict)
    constants: dict[str, TypeExpr] = field(default_factory=dict)

    def bind(self, name: str, ty: TypeExpr) -> "TypingContext":
        return TypingContext(self.type_names, self.tvars_in_scope, {**self.term_vars, name: ty}, self.constants)

    def bind_tvar(self, name: str) -> "TypingContext":
        return TypingContext(self.type_names, self.tvars_in_scope | {name}, self.term_vars, self.constants)


def check_wellformed(ty: TypeExpr, ctx: TypingContext) -> None:
    """Reject unknown base type names and binders that shadow base types.

    Free type variables pass; they may be bound by an enclosing type
    abstraction or stand for an open checking context.
    """
    match ty:
        case Base(name):
            if name not in ctx.type_names:
                raise IllFormedType(f"unknown base type {name!r}")
        case TVar(_):
            pass
        case Arrow(dom, cod):
            check_wellformed(dom, ctx)
            check_wellformed(cod, ctx)
        case Forall(binder, body):
            if binder in ctx.type_names:
                raise IllFormedType(f"Pi binder {binder!r} shadows a declared base type")
            check_wellformed(body, ctx)


def type_of(ctx: TypingContext, u: TermExpr) -> TypeExpr:
    """The unique type of u in ctx, or a TypeCheckError subclass."""
    match u:
        case Var(name):
            ty = ctx.term_vars.get(name)
            if ty is None:
                raise UnboundVariable(f"unbound variable {name!r}")
            return ty
        case Const(name):
            ty = ctx.constants.get(name)
            if ty is None:
                raise UnknownConstant(f"unknown constant {name!r}")
            return ty
        case App(fn, arg):
            fn_ty = type_of(ctx, fn)
            if isinstance(fn_ty, Forall):
                raise NotAFunction(
                    f"{fn} : {fn_ty} must be specialised with {{T}} before application"
                )
            if not isinstance(fn_ty, Arrow):
                raise NotAFunction(f"{fn} : {fn_ty} is not a function")
            arg_ty = type_of(ctx, arg)
            if not alpha_eq(fn_ty.dom, arg_ty):
                raise ApplicationMismatch(fn_ty.dom, arg_ty)
            return fn_ty.cod
        case Lam(binder, binder_type, body):
            check_wellformed(binder_type, ctx)
            return Arrow(binder_type, type_of(ctx.bind(binder, binder_type), body))
        case TyApp(fn, type_arg):
            fn_ty = type_of(ctx, fn)
            if not isinstance(fn_ty, Forall):
                raise NotAForall(f"{fn} : {fn_ty} is not a Pi type")
            check_wellformed(type_arg, ctx)
            return subst_type_in_type(fn_ty.body, fn_ty.binder, type_arg)
        case TyLam(binder, body):
            if binder in ctx.type_names:
                raise IllFormedType(f"type binder {binder!r} shadows a declared base type")
            for var in sorted(free_vars(body)):
                var_ty = ctx.term_vars.get(var)
                if var_ty is None:
                    continue  # unbound; reported when the body is checked
                if binder in free_tvars(var_ty) or binder in base_names(var_ty):
                    raise GenericityViolation(
                        f"type variable {binder!r} occurs in the type of free variable {var!r}"
                    )
            return Forall(binder, type_of(ctx.bind_tvar(binder), body))
    raise AssertionError(u)
