"""Reading enumeration over binary application trees.

Each leaf contributes its coercion closure (in argument position) or its
bare main term (in function position: coercing function heads is not
supported).  At an application node every Pi-prefixed function candidate
is specialised over the tree's instantiation universe, the types of all
leaf candidates, and ordinary application is attempted on the result.
Root candidates of type t are normalized, deduplicated up to alpha
equality and ordered by coercion cost.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Union

from .errors import LeafNotInLexicon, NoReading, ParseError
from .lexicon import Lexicon, coercion_candidates
from .parser import tokenize
from .reduction import normalize
from .syntax import (
    App,
    Arrow,
    Base,
    Forall,
    TermExpr,
    TyApp,
    TypeExpr,
    alpha_eq,
    subst_type_in_type,
    term_to_text,
    type_to_text,
)

logger = logging.getLogger("specimen")


@dataclass(frozen=True, slots=True)
class Leaf:
    word: str


@dataclass(frozen=True, slots=True)
class Node:
    fn: "SyntaxTree"
    arg: "SyntaxTree"


SyntaxTree = Union[Leaf, Node]


def parse_tree(text: str) -> SyntaxTree:
    """Parse the s-expression tree form, e.g. ``(app (app love theBrits) France)``."""
    tokens = tokenize(text)
    pos = 0

    def parse() -> SyntaxTree:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of tree")
        tok = tokens[pos]
        if tok.kind == "ident" and tok.text != "app":
            pos += 1
            return Leaf(tok.text)
        if tok.kind != "(":
            raise ParseError(f"expected '(' or a word, found {tok.text!r}", tok.line, tok.col)
        pos += 1
        head = tokens[pos] if pos < len(tokens) else None
        if head is None or head.kind != "ident" or head.text != "app":
            raise ParseError("expected 'app' after '('", tok.line, tok.col)
        pos += 1
        fn = parse()
        arg = parse()
        if pos >= len(tokens) or tokens[pos].kind != ")":
            raise ParseError("expected ')'", tok.line, tok.col)
        pos += 1
        return Node(fn, arg)

    tree = parse()
    if pos != len(tokens):
        tok = tokens[pos]
        raise ParseError(f"trailing input after tree: {tok.text!r}", tok.line, tok.col)
    return tree


def tree_to_text(tree: SyntaxTree) -> str:
    match tree:
        case Leaf(word):
            return word
        case Node(fn, arg):
            return f"(app {tree_to_text(fn)} {tree_to_text(arg)})"
    raise AssertionError(tree)


@dataclass(frozen=True)
class Reading:
    """One normalized reading of type t, with its derivation record."""

    term: TermExpr
    raw_term: TermExpr
    coercions_used: tuple[tuple[str, str], ...]  # (word, coercion name)
    instantiations: tuple[tuple[str, TypeExpr], ...]  # (binder site, type)
    cost: int


@dataclass(frozen=True)
class _Cand:
    term: TermExpr
    type: TypeExpr
    cost: int
    coercions: tuple[tuple[str, str], ...] = ()
    insts: tuple[tuple[str, TypeExpr], ...] = ()


def _leaf_candidates(
    tree: Leaf, lexicon: Lexicon, depth: int, in_arg_position: bool
) -> list[_Cand]:
    entry = lexicon.entries.get(tree.word)
    if entry is None:
        raise LeafNotInLexicon(f"word {tree.word!r} is not in the lexicon")
    if not in_arg_position:
        return [_Cand(entry.main_term, entry.main_type, 0)]
    return [
        _Cand(c.term, c.type, c.count, tuple((tree.word, n) for n in c.names))
        for c in coercion_candidates(entry, lexicon, depth)
    ]


def _instantiation_universe(tree: SyntaxTree, lexicon: Lexicon, depth: int) -> list[TypeExpr]:
    """Types of all leaf candidates, position aware, deduplicated."""
    types: list[TypeExpr] = []

    def visit(node: SyntaxTree, in_arg_position: bool) -> None:
        match node:
            case Leaf(_):
                for cand in _leaf_candidates(node, lexicon, depth, in_arg_position):
                    if not any(alpha_eq(cand.type, t) for t in types):
                        types.append(cand.type)
            case Node(fn, arg):
                visit(fn, False)
                visit(arg, True)

    visit(tree, False)
    return sorted(types, key=type_to_text)


def _specialisations(
    cand: _Cand, universe: list[TypeExpr], site_label: str
) -> list[_Cand]:
    """All full instantiations of cand's leading Pi prefix over the universe."""
    out = [cand]
    while isinstance(out[0].type, Forall):
        grown: list[_Cand] = []
        for c in out:
            assert isinstance(c.type, Forall)
            binder = c.type.binder
            for ty in universe:
                grown.append(
                    _Cand(
                        TyApp(c.term, ty),
                        _apply_forall(c.type, ty),
                        c.cost,
                        c.coercions,
                        c.insts + ((f"{site_label}.{binder}", ty),),
                    )
                )
        out = grown
    return out


def _apply_forall(ty: Forall, arg: TypeExpr) -> TypeExpr:
    return subst_type_in_type(ty.body, ty.binder, arg)


def _combine(
    fn_cands: list[_Cand], arg_cands: list[_Cand], universe: list[TypeExpr], site_label: str
) -> list[_Cand]:
    out: list[_Cand] = []
    for f in fn_cands:
        variants = _specialisations(f, universe, site_label) if isinstance(f.type, Forall) else [f]
        for v in variants:
            if not isinstance(v.type, Arrow):
                continue
            for x in arg_cands:
                if alpha_eq(v.type.dom, x.type):
                    out.append(
                        _Cand(
                            App(v.term, x.term),
                            v.type.cod,
                            v.cost + x.cost,
                            v.coercions + x.coercions,
                            v.insts + x.insts,
                        )
                    )
    deduped: list[_Cand] = []
    for cand in out:
        if not any(alpha_eq(cand.term, kept.term) for kept in deduped):
            deduped.append(cand)
    return deduped


def _tree_candidates(
    tree: SyntaxTree,
    lexicon: Lexicon,
    depth: int,
    universe: list[TypeExpr],
    path: str,
    in_arg_position: bool,
    failures: dict[str, str],
) -> list[_Cand]:
    match tree:
        case Leaf(_):
            return _leaf_candidates(tree, lexicon, depth, in_arg_position)
        case Node(fn, arg):
            label = fn.word if isinstance(fn, Leaf) else f"{path}.fn"
            fn_cands = _tree_candidates(fn, lexicon, depth, universe, f"{path}.fn", False, failures)
            arg_cands = _tree_candidates(arg, lexicon, depth, universe, f"{path}.arg", True, failures)
            combined = _combine(fn_cands, arg_cands, universe, label)
            if not combined and fn_cands and arg_cands:
                fn_types = ", ".join(sorted({type_to_text(c.type) for c in fn_cands}))
                arg_types = ", ".join(sorted({type_to_text(c.type) for c in arg_cands}))
                failures[path] = f"no typed combination of function [{fn_types}] with argument [{arg_types}]"
            return combined
    raise AssertionError(tree)


def enumerate_readings(
    tree: SyntaxTree,
    lexicon: Lexicon,
    depth: int = 2,
    max_readings: int = 64,
    fuel: int = 10_000,
) -> list[Reading]:
    """Every well-typed reading of the tree, cheapest first.

    Raises NoReading (with per-node failure reasons) when no root
    candidate has type t, and LeafNotInLexicon for unknown words.
    """
    if max_readings <= 0:
        raise ValueError("max_readings must be positive")
    failures: dict[str, str] = {}
    universe = _instantiation_universe(tree, lexicon, depth)
    root = _tree_candidates(tree, lexicon, depth, universe, "root", False, failures)
    sentence_cands = [c for c in root if alpha_eq(c.type, Base("t"))]
    if not sentence_cands:
        if root:
            kinds = ", ".join(sorted({type_to_text(c.type) for c in root}))
            failures["root"] = f"candidates exist but none has type t (got [{kinds}])"
        if not failures:
            failures["root"] = "the tree produced no candidates"
        raise NoReading(failures)

    readings: list[Reading] = []
    for cand in sentence_cands:
        nf = normalize(cand.term, fuel)
        reading = Reading(nf, cand.term, cand.coercions, cand.insts, cand.cost)
        replaced = False
        for i, prev in enumerate(readings):
            if alpha_eq(prev.term, nf):
                if _reading_key(reading) < _reading_key(prev):
                    readings[i] = reading
                replaced = True
                break
        if not replaced:
            readings.append(reading)

    readings.sort(key=_reading_key)
    if len(readings) > max_readings:
        logger.warning(
            "reading list truncated: %d readings, keeping the first %d", len(readings), max_readings
        )
        readings = readings[:max_readings]
    return readings


def _reading_key(r: Reading):
    return (r.cost, term_to_text(r.term))


def order_readings(
    readings: list[Reading], preference: Callable[[Reading], object] | None = None
) -> list[Reading]:
    """Stable re-sort under a preference key; default is cost ascending.

    The key models contextual preference among readings: the set of
    readings is never changed, only their order.
    """
    if preference is None:
        preference = lambda r: r.cost
    return sorted(readings, key=preference)


def prefer_type(type_name: str) -> Callable[[Reading], object]:
    """Preference key putting readings instantiated at `type_name` first."""

    def key(r: Reading):
        hit = any(type_to_text(ty) == type_name for _, ty in r.instantiations)
        return (0 if hit else 1, r.cost)

    return key
