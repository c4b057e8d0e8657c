"""Beta reduction: single leftmost-outermost steps and full normalization.

The calculus is strongly normalizing, so the fuel bound on normalize is a
safety valve against bugs, not something well-typed input should hit.
"""

from __future__ import annotations

from .errors import FuelExhausted
from .syntax import App, Lam, TermExpr, TyApp, TyLam, subst_term, subst_type_in_term


def beta_step(u: TermExpr) -> TermExpr | None:
    """Contract the leftmost-outermost redex; None when u is normal."""
    match u:
        case App(Lam(binder, _, body), arg):
            return subst_term(body, binder, arg)
        case TyApp(TyLam(binder, body), type_arg):
            return subst_type_in_term(body, binder, type_arg)
        case App(fn, arg):
            stepped = beta_step(fn)
            if stepped is not None:
                return App(stepped, arg)
            stepped = beta_step(arg)
            if stepped is not None:
                return App(fn, stepped)
            return None
        case TyApp(fn, type_arg):
            stepped = beta_step(fn)
            if stepped is not None:
                return TyApp(stepped, type_arg)
            return None
        case Lam(binder, binder_type, body):
            stepped = beta_step(body)
            if stepped is not None:
                return Lam(binder, binder_type, stepped)
            return None
        case TyLam(binder, body):
            stepped = beta_step(body)
            if stepped is not None:
                return TyLam(binder, stepped)
            return None
    return None


def normalize(u: TermExpr, fuel: int = 10_000) -> TermExpr:
    """Iterate beta_step to the beta-normal form.

    Raises FuelExhausted after `fuel` steps; on well-typed desk-scale
    terms this signals a bug rather than a long computation.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    current = u
    for _ in range(fuel):
        stepped = beta_step(current)
        if stepped is None:
            return current
        current = stepped
    raise FuelExhausted(fuel)
