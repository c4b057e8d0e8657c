"""Evaluation of formulae over finite weighted models.

"Most of" is a weight ratio, not a count: an atom about the specimen of a
class holds when the elements making it true carry at least theta of the
class weight.  Scalar relations are special-cased: the specimen does not
have a single value, so the atom holds exactly when the value argument
falls inside the central weighted quantile band of the class.  All
arithmetic is exact rational; no floats enter a truth decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    EmptyDomain,
    EvalError,
    MissingScalarValue,
    NotLogicalFragment,
    SpecimenOfNonClass,
    UninterpretedSymbol,
)
from .formula import (
    And,
    Atom,
    BoundVar,
    CoerceApp,
    EpsTerm,
    ExistsQ,
    ForallQ,
    Formula,
    GroundTerm,
    Imp,
    ModelConst,
    Not,
    Numeral,
    Or,
    Specimen,
    TauTerm,
    extract_formula,
)
from .model import FiniteModel
from .reduction import normalize
from .syntax import Base, Const, Lam, TermExpr, type_to_text

DEFAULT_SCALAR_RELATIONS = frozenset({"height"})


@dataclass(frozen=True)
class EvalConfig:
    """The most-of threshold; must exceed a half or specimen properties
    could contradict each other."""

    theta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        if not (Fraction(1, 2) < self.theta <= 1):
            raise ValueError(f"theta must lie in (1/2, 1], got {self.theta}")


class JudgementStatus(Enum):
    HOLDS_UNIVERSAL = "HoldsUniversal"
    HOLDS_MOST = "HoldsMost"
    REFUTED_MINORITY = "RefutedMinority"
    REFUTED_DISJOINT = "RefutedDisjoint"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Judgement:
    status: JudgementStatus
    applicable_rules: tuple[str, ...]
    ratio: Fraction
    disjoint_witnesses: tuple[tuple[str, Fraction], ...] = ()


# ------------------------------------------------------------- quantiles


def specimen_band(
    model: FiniteModel, class_type: str, scalar_rel: str, cfg: EvalConfig
) -> tuple[Fraction, Fraction]:
    """Central weighted quantile band of a scalar relation over a class.

    Returns (lo, hi) where lo and hi are the (1-theta)/2 and (1+theta)/2
    weighted quantiles; the quantile at p is the smallest value whose
    cumulative weight reaches p times the total weight.
    """
    domain = model.domains.get(class_type)
    if not domain:
        raise EmptyDomain(f"no domain for class {class_type!r}")
    value_of = _scalar_table(model, scalar_rel)
    pairs: dict[Fraction, Fraction] = {}
    for elem in domain:
        value = value_of.get(elem)
        if value is None:
            raise MissingScalarValue(f"{scalar_rel!r} gives no value for {elem!r}")
        pairs[value] = pairs.get(value, Fraction(0)) + model.weights[elem]
    ordered = sorted(pairs.items())
    total = sum(w for _, w in ordered)
    return (
        _quantile(ordered, total, (1 - cfg.theta) / 2),
        _quantile(ordered, total, (1 + cfg.theta) / 2),
    )


def _quantile(ordered: list[tuple[Fraction, Fraction]], total: Fraction, p: Fraction) -> Fraction:
    target = p * total
    cumulative = Fraction(0)
    for value, weight in ordered:
        cumulative += weight
        if cumulative >= target:
            return value
    return ordered[-1][0]


def _scalar_table(model: FiniteModel, scalar_rel: str) -> dict[str, Fraction]:
    table: dict[str, Fraction] = {}
    for tup in model.rel_extensions.get(scalar_rel, ()):
        if len(tup) != 2:
            raise EvalError(f"scalar relation {scalar_rel!r} has a tuple of arity {len(tup)}")
        ind, val = tup
        value = model.float_values.get(val)
        if value is None:
            raise MissingScalarValue(f"{scalar_rel!r}: {val!r} is not a float element")
        if ind in table:
            raise EvalError(f"scalar relation {scalar_rel!r} gives {ind!r} two values")
        table[ind] = value
    return table


# ------------------------------------------------------------- witnesses


def witness(model: FiniteModel, class_type: str, extension, mode: str) -> str:
    """Deterministic Hilbert-style witness over the domain order.

    eps picks the first element satisfying the predicate (first element
    overall when none does); tau picks the first element falsifying it
    (first element overall when all do).  By construction A(tau A) agrees
    with the universal quantifier and A(eps A) with the existential one.
    """
    domain = model.domains.get(class_type)
    if not domain:
        raise EmptyDomain(f"no domain for class {class_type!r}")
    inside = set(extension)
    if mode == "eps":
        chosen = [e for e in domain if e in inside]
    elif mode == "tau":
        chosen = [e for e in domain if e not in inside]
    else:
        raise ValueError(f"mode must be 'tau' or 'eps', got {mode!r}")
    return chosen[0] if chosen else domain[0]


# ------------------------------------------------------------- evaluator


# Resolved atom arguments: an element id, an exact numeric value, or a
# specimen of a class seen through a chain of coercion maps.
_Elem = tuple  # ("elem", id) | ("num", Fraction) | ("spec", class, chain)


class _Evaluator:
    def __init__(self, model: FiniteModel, cfg: EvalConfig, scalar_relations: frozenset[str]):
        self.model = model
        self.cfg = cfg
        self.scalar_relations = scalar_relations

    # formulas

    def eval(self, f: Formula, env: dict[str, str]) -> bool:
        match f:
            case Atom(rel, _, args):
                resolved = [self._resolve(a, env) for a in args]
                return self._atom(rel, resolved)
            case Not(body):
                return not self.eval(body, env)
            case And(left, right):
                return self.eval(left, env) and self.eval(right, env)
            case Or(left, right):
                return self.eval(left, env) or self.eval(right, env)
            case Imp(left, right):
                return (not self.eval(left, env)) or self.eval(right, env)
            case ForallQ(var, over, body):
                return all(self.eval(body, {**env, var: e}) for e in self._domain(over))
            case ExistsQ(var, over, body):
                return any(self.eval(body, {**env, var: e}) for e in self._domain(over))
        raise AssertionError(f)

    def _domain(self, over) -> tuple[str, ...]:
        if not isinstance(over, Base):
            raise UninterpretedSymbol(f"cannot quantify over {type_to_text(over)}")
        domain = self.model.domains.get(over.name)
        if domain is None:
            raise UninterpretedSymbol(f"no domain for type {over.name!r}")
        return domain

    # ground arguments

    def _resolve(self, g: GroundTerm, env: dict[str, str]) -> _Elem:
        match g:
            case BoundVar(name):
                elem = env.get(name)
                if elem is None:
                    raise UninterpretedSymbol(f"unbound variable {name!r} in formula")
                return ("elem", elem)
            case ModelConst(name):
                elem = self.model.const_intp.get(name)
                if elem is None:
                    raise UninterpretedSymbol(f"no interpretation for constant {name!r}")
                return ("elem", elem)
            case Numeral(value):
                return ("num", value)
            case Specimen(of_type):
                return ("spec", self._class_name(of_type), ())
            case TauTerm(of_type, var, predicate):
                return ("elem", self._witness_term(of_type, var, predicate, "tau"))
            case EpsTerm(of_type, var, predicate):
                return ("elem", self._witness_term(of_type, var, predicate, "eps"))
            case CoerceApp(coercion, arg):
                inner = self._resolve(arg, env)
                if inner[0] == "spec":
                    return ("spec", inner[1], inner[2] + (coercion,))
                if inner[0] == "elem":
                    return ("elem", self._apply_map(coercion, inner[1]))
                raise EvalError(f"coercion {coercion!r} applied to a numeral")
        raise AssertionError(g)

    def _class_name(self, of_type) -> str:
        if not isinstance(of_type, Base) or of_type.name in ("float", "t"):
            raise SpecimenOfNonClass(f"specimen of {type_to_text(of_type)} has no interpretation")
        if of_type.name not in self.model.domains:
            raise SpecimenOfNonClass(f"specimen of {of_type.name!r}: type has no domain")
        return of_type.name

    def _witness_term(self, of_type, var: str, predicate: Formula, mode: str) -> str:
        if not isinstance(of_type, Base) or of_type.name not in self.model.domains:
            raise EmptyDomain(f"no domain for type {type_to_text(of_type)}")
        name = of_type.name
        extension = [e for e in self.model.domains[name] if self.eval(predicate, {var: e})]
        return witness(self.model, name, extension, mode)

    def _apply_map(self, coercion: str, elem: str) -> str:
        table = self.model.coercion_maps.get(coercion)
        if table is None:
            raise UninterpretedSymbol(f"no coercion map for {coercion!r}")
        dst = table.get(elem)
        if dst is None:
            raise UninterpretedSymbol(f"coercion map {coercion!r} is undefined at {elem!r}")
        return dst

    # atoms

    def _atom(self, rel: str, args: list[_Elem]) -> bool:
        spec_positions = [i for i, a in enumerate(args) if a[0] == "spec"]
        if spec_positions:
            # scalar specimen: the value must fall in the quantile band
            if (
                rel in self.scalar_relations
                and len(args) == 2
                and args[0][0] == "spec"
                and args[0][2] == ()
            ):
                if args[1][0] == "spec":
                    raise EvalError(f"scalar relation {rel!r} with two specimen arguments")
                lo, hi = specimen_band(self.model, args[0][1], rel, self.cfg)
                value = self._value(args[1], rel)
                return lo <= value <= hi
            # generic most-of rule, leftmost specimen first
            i = spec_positions[0]
            _, class_name, chain = args[i]
            domain = self.model.domains[class_name]
            total = self.model.domain_weight(class_name)
            true_weight = Fraction(0)
            for elem in domain:
                image = elem
                for coercion in chain:
                    image = self._apply_map(coercion, image)
                if self._atom(rel, args[:i] + [("elem", image)] + args[i + 1 :]):
                    true_weight += self.model.weights[elem]
            return true_weight >= self.cfg.theta * total

        if rel == "lt":
            if len(args) != 2:
                raise EvalError("lt expects two arguments")
            return self._value(args[0], rel) < self._value(args[1], rel)

        extension = self.model.rel_extensions.get(rel)
        if extension is None:
            raise UninterpretedSymbol(f"no extension for relation {rel!r}")
        return tuple(self._elem_id(a) for a in args) in extension

    def _value(self, arg: _Elem, rel: str) -> Fraction:
        if arg[0] == "num":
            return arg[1]
        if arg[0] == "elem":
            value = self.model.float_values.get(arg[1])
            if value is not None:
                return value
            raise EvalError(f"{rel!r}: element {arg[1]!r} is not a float element")
        raise EvalError(f"{rel!r}: expected a numeric argument")

    def _elem_id(self, arg: _Elem) -> str:
        if arg[0] == "elem":
            return arg[1]
        if arg[0] == "num":
            for elem, value in self.model.float_values.items():
                if value == arg[1]:
                    return elem
            raise UninterpretedSymbol(f"numeral {arg[1]} is not in the float domain")
        raise AssertionError(arg)


# ------------------------------------------------------------- public api


def eval_formula(
    model: FiniteModel,
    f: Formula,
    cfg: EvalConfig = EvalConfig(),
    scalar_relations: frozenset[str] = DEFAULT_SCALAR_RELATIONS,
) -> bool:
    """Truth value of a closed formula in the model."""
    return _Evaluator(model, cfg, scalar_relations).eval(f, {})


def judge_specimen(
    model: FiniteModel,
    class_type: str,
    predicate: TermExpr,
    cfg: EvalConfig = EvalConfig(),
    scalar_relations: frozenset[str] = DEFAULT_SCALAR_RELATIONS,
    fuel: int = 10_000,
) -> Judgement:
    """Assertion/refutation judgement for `predicate holds of the specimen
    of class_type`.

    Rules gathered: the universal rule (every element satisfies the
    predicate), the most-of rule (ratio at least theta), the minority
    refutation (ratio at most 1-theta) and the disjoint refutation (some
    unary relation disjoint from the predicate on this class itself
    covers at least theta of it).  The status takes the strongest rule;
    with no rule at all the answer is Unknown.
    """
    domain = model.domains.get(class_type)
    if not domain:
        raise EmptyDomain(f"no domain for class {class_type!r}")

    nf = normalize(predicate, fuel)
    match nf:
        case Lam(binder, _, body):
            var, formula = binder, extract_formula(body, frozenset({binder}))
        case Const(name):
            var, formula = "x", Atom(name, (), (BoundVar("x"),))
        case _:
            raise NotLogicalFragment(f"predicate must be a lambda or constant, got {nf}")

    evaluator = _Evaluator(model, cfg, scalar_relations)
    extension = [e for e in domain if evaluator.eval(formula, {var: e})]
    total = model.domain_weight(class_type)
    ratio = model.weight_of(extension) / total

    rules: list[str] = []
    if ratio == 1:
        rules.append("universal")
    if ratio >= cfg.theta:
        rules.append("most")
    if ratio <= 1 - cfg.theta:
        rules.append("minority")

    in_extension = set(extension)
    disjoint: list[tuple[str, Fraction]] = []
    for rel in sorted(model.rel_extensions):
        tuples = model.rel_extensions[rel]
        if not tuples or any(len(t) != 1 for t in tuples):
            continue
        members = {t[0] for t in tuples}
        on_class = [e for e in domain if e in members]
        if set(on_class) & in_extension:
            continue
        q_ratio = model.weight_of(on_class) / total
        if q_ratio >= cfg.theta:
            rules.append(f"disjoint:{rel}")
            disjoint.append((rel, q_ratio))

    if "universal" in rules:
        status = JudgementStatus.HOLDS_UNIVERSAL
    elif "most" in rules:
        status = JudgementStatus.HOLDS_MOST
    elif "minority" in rules:
        status = JudgementStatus.REFUTED_MINORITY
    elif disjoint:
        status = JudgementStatus.REFUTED_DISJOINT
    else:
        status = JudgementStatus.UNKNOWN

    return Judgement(status, tuple(rules), ratio, tuple(disjoint))
