"""Finite weighted models and their file format.

Every element id belongs to exactly one domain; the float domain's
elements are decimal numerals whose listing order is its domain order.
Weights are exact positive rationals and default to 1, so an unweighted
model behaves as plain counting.

File format (line oriented, "#" comments):

    type <Ident> = <elem> <elem> ...
    weight <elem> <positive decimal>
    const <Ident> = <elem>
    rel <Ident> <elem> <elem> ...
    map <Ident> <elem> = <elem>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ModelError
from .lexicon import Signature
from .syntax import Arrow, Base

_ELEM_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_'.]*\Z")
_NUMERAL_RE = re.compile(r"[0-9]+(\.[0-9]+)?\Z")


@dataclass(frozen=True)
class FiniteModel:
    domains: dict[str, tuple[str, ...]]
    weights: dict[str, Fraction]
    const_intp: dict[str, str]
    rel_extensions: dict[str, frozenset[tuple[str, ...]]]
    coercion_maps: dict[str, dict[str, str]]
    element_domain: dict[str, str] = field(default_factory=dict)
    float_values: dict[str, Fraction] = field(default_factory=dict)

    def weight_of(self, elements) -> Fraction:
        return sum((self.weights[e] for e in elements), Fraction(0))

    def domain_weight(self, type_name: str) -> Fraction:
        return self.weight_of(self.domains[type_name])

    def scaled(self, factor: Fraction) -> "FiniteModel":
        """The same model with every weight multiplied by `factor` > 0."""
        if factor <= 0:
            raise ModelError("weights must stay positive")
        return FiniteModel(
            self.domains,
            {e: w * factor for e, w in self.weights.items()},
            self.const_intp,
            self.rel_extensions,
            self.coercion_maps,
            self.element_domain,
            self.float_values,
        )


def _parse_weight(text: str, line_no: int) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ModelError(f"line {line_no}: bad weight {text!r}") from None
    if value <= 0:
        raise ModelError(f"line {line_no}: weight must be positive, got {text}")
    return value


def load_model(text: str) -> FiniteModel:
    """Parse a model file and run the structural checks."""
    domains: dict[str, tuple[str, ...]] = {}
    weights: dict[str, Fraction] = {}
    const_intp: dict[str, str] = {}
    rels: dict[str, set[tuple[str, ...]]] = {}
    maps: dict[str, dict[str, str]] = {}
    element_domain: dict[str, str] = {}

    def known(elem: str, line_no: int) -> str:
        if elem not in element_domain:
            raise ModelError(f"line {line_no}: element {elem!r} is not in any domain")
        return elem

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        fields = rest.split()

        if keyword == "type":
            if len(fields) < 3 or fields[1] != "=":
                raise ModelError(f"line {line_no}: expected 'type <Ident> = <elem> ...'")
            name, elems = fields[0], fields[2:]
            if name in domains:
                raise ModelError(f"line {line_no}: domain {name!r} declared twice")
            for elem in elems:
                if not _ELEM_RE.match(elem):
                    raise ModelError(f"line {line_no}: bad element id {elem!r}")
                if elem in element_domain:
                    raise ModelError(f"line {line_no}: element {elem!r} listed twice")
                element_domain[elem] = name
            if not elems:
                raise ModelError(f"line {line_no}: domain {name!r} is empty")
            domains[name] = tuple(elems)

        elif keyword == "weight":
            if len(fields) != 2:
                raise ModelError(f"line {line_no}: expected 'weight <elem> <decimal>'")
            elem = known(fields[0], line_no)
            if elem in weights:
                raise ModelError(f"line {line_no}: weight of {elem!r} set twice")
            weights[elem] = _parse_weight(fields[1], line_no)

        elif keyword == "const":
            if len(fields) != 3 or fields[1] != "=":
                raise ModelError(f"line {line_no}: expected 'const <Ident> = <elem>'")
            name, elem = fields[0], known(fields[2], line_no)
            if name in const_intp:
                raise ModelError(f"line {line_no}: constant {name!r} interpreted twice")
            const_intp[name] = elem

        elif keyword == "rel":
            if len(fields) < 2:
                raise ModelError(f"line {line_no}: expected 'rel <Ident> <elem> ...'")
            name, tup = fields[0], tuple(known(e, line_no) for e in fields[1:])
            prior = rels.setdefault(name, set())
            if prior and len(next(iter(prior))) != len(tup):
                raise ModelError(f"line {line_no}: relation {name!r} has mixed arities")
            prior.add(tup)

        elif keyword == "map":
            if len(fields) != 4 or fields[2] != "=":
                raise ModelError(f"line {line_no}: expected 'map <Ident> <elem> = <elem>'")
            name, src, _, dst = fields
            table = maps.setdefault(name, {})
            src, dst = known(src, line_no), known(dst, line_no)
            if src in table:
                raise ModelError(f"line {line_no}: map {name!r} already defined at {src!r}")
            table[src] = dst

        else:
            raise ModelError(f"line {line_no}: unknown directive {keyword!r}")

    float_values: dict[str, Fraction] = {}
    for elem in domains.get("float", ()):
        if not _NUMERAL_RE.match(elem):
            raise ModelError(f"float element {elem!r} is not a numeral")
        float_values[elem] = Fraction(elem)

    for elem in element_domain:
        weights.setdefault(elem, Fraction(1))

    return FiniteModel(
        domains,
        weights,
        const_intp,
        {name: frozenset(tuples) for name, tuples in rels.items()},
        maps,
        element_domain,
        float_values,
    )


def check_model(model: FiniteModel, signature: Signature) -> None:
    """Semantic checks that need the signature.

    Constants of base type must be interpreted inside their type's
    domain; coercion maps must be total on their source domain and land
    in their target domain; scalar relations must relate every related
    individual to exactly one float element.
    """
    for name, elem in model.const_intp.items():
        ty = signature.constants.get(name)
        if isinstance(ty, Base):
            domain = model.domains.get(ty.name, ())
            if elem not in domain:
                raise ModelError(
                    f"constant {name!r} of type {ty.name} interpreted outside its domain"
                )

    for name, table in model.coercion_maps.items():
        ty = signature.constants.get(name)
        if not isinstance(ty, Arrow) or not isinstance(ty.dom, Base) or not isinstance(ty.cod, Base):
            continue  # maps for undeclared names are checked lazily at evaluation
        src_domain = model.domains.get(ty.dom.name, ())
        dst_domain = set(model.domains.get(ty.cod.name, ()))
        for elem in src_domain:
            dst = table.get(elem)
            if dst is None:
                raise ModelError(f"coercion map {name!r} is undefined at {elem!r}")
            if dst not in dst_domain:
                raise ModelError(f"coercion map {name!r} sends {elem!r} outside {ty.cod.name}")

    for name in signature.scalar_relations:
        seen: dict[str, str] = {}
        for tup in model.rel_extensions.get(name, ()):
            if len(tup) != 2:
                raise ModelError(f"scalar relation {name!r} has a tuple of arity {len(tup)}")
            ind, val = tup
            if val not in model.float_values:
                raise ModelError(f"scalar relation {name!r}: value {val!r} is not a float element")
            if ind in seen:
                raise ModelError(f"scalar relation {name!r} gives {ind!r} two values")
            seen[ind] = val
