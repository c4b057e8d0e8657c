"""Signatures, lexicon files and coercion closures.

A lexicon assigns each surface word a typed main term plus a finite list
of optional coercion terms that may be inserted, when composition would
otherwise fail, to move the word's denotation into another type.

File format (line oriented, "#" comments):

    type <Ident>                    declare a base type
    constant <Ident> : <Type>       declare an extra constant
    scalar <Ident>                  flag a constant as a scalar relation
    word <surface> = <Term> : <Type>
      coercion <Ident> : <Type>     attach a declared constant as coercion
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    BadCoercion,
    DuplicateWord,
    LexiconError,
    ParseError,
    SpecimenError,
    TypeCheckFailure,
    UnknownBaseType,
)
from .parser import BUILTIN_BASE_TYPES, RESERVED, _IDENT, parse_annotated_term, parse_term, parse_type
from .syntax import (
    App,
    Arrow,
    Base,
    Const,
    Lam,
    TermExpr,
    TyApp,
    TyLam,
    TypeExpr,
    alpha_eq,
    free_tvars,
    term_to_text,
    type_to_text,
)
from .typecheck import TypingContext, type_of


@dataclass(frozen=True)
class Signature:
    """Constant types, declared base types and scalar-relation flags."""

    constants: dict[str, TypeExpr]
    base_types: frozenset[str]
    scalar_relations: frozenset[str]

    def typing_context(self, term_vars: dict[str, TypeExpr] | None = None) -> TypingContext:
        return TypingContext(self.base_types, frozenset(), dict(term_vars or {}), self.constants)

    def parse_type(self, text: str) -> TypeExpr:
        return parse_type(text, self.base_types)

    def parse_term(self, text: str) -> TermExpr:
        return parse_term(text, self.base_types, frozenset(self.constants))


def builtin_signature() -> Signature:
    """The fixed core signature every lexicon starts from.

    forall/exists quantify a predicate over any type; spec maps each type
    to its specimen; tau and eps are the universal and existential generic
    witness operators; height is the canonical scalar relation and is
    flagged as such.
    """
    sig = {
        "forall": "Pi a. (a -> t) -> t",
        "exists": "Pi a. (a -> t) -> t",
        "spec": "Pi a. a",
        "tau": "Pi a. (a -> t) -> a",
        "eps": "Pi a. (a -> t) -> a",
        "and": "t -> t -> t",
        "or": "t -> t -> t",
        "imp": "t -> t -> t",
        "not": "t -> t",
        "lt": "float -> float -> t",
        "height": "Pi a. a -> float -> t",
    }
    constants = {name: parse_type(text, BUILTIN_BASE_TYPES) for name, text in sig.items()}
    return Signature(constants, BUILTIN_BASE_TYPES, frozenset({"height"}))


@dataclass(frozen=True)
class LexEntry:
    word: str
    main_term: TermExpr
    main_type: TypeExpr
    coercions: tuple[tuple[str, TermExpr, TypeExpr], ...] = ()


@dataclass(frozen=True)
class Lexicon:
    signature: Signature
    entries: dict[str, LexEntry] = field(default_factory=dict)

    def parse_term(self, text: str) -> TermExpr:
        """Parse a term; lexicon words abbreviate their main terms."""
        allowed = frozenset(self.signature.constants) | frozenset(self.entries)
        term = parse_term(text, self.signature.base_types, allowed)
        return self._expand_words(term)

    def _expand_words(self, term: TermExpr) -> TermExpr:
        match term:
            case Const(name) if name not in self.signature.constants and name in self.entries:
                return self.entries[name].main_term
            case App(fn, arg):
                return App(self._expand_words(fn), self._expand_words(arg))
            case TyApp(fn, type_arg):
                return TyApp(self._expand_words(fn), type_arg)
            case Lam(binder, binder_type, body):
                return Lam(binder, binder_type, self._expand_words(body))
            case TyLam(binder, body):
                return TyLam(binder, self._expand_words(body))
        return term

    def parse_type(self, text: str) -> TypeExpr:
        return self.signature.parse_type(text)

    def typing_context(self) -> TypingContext:
        return self.signature.typing_context()


@dataclass(frozen=True)
class CoercionCandidate:
    """One member of an entry's coercion closure."""

    term: TermExpr
    type: TypeExpr
    count: int
    names: tuple[str, ...] = ()

    def __iter__(self):  # allow (term, type, count) unpacking
        return iter((self.term, self.type, self.count))


def _is_ground(ty: TypeExpr) -> bool:
    match ty:
        case Base(_):
            return True
        case Arrow(dom, cod):
            return _is_ground(dom) and _is_ground(cod)
    return False


def coercion_candidates(entry: LexEntry, lexicon: Lexicon, depth: int) -> list[CoercionCandidate]:
    """Closure of the entry's main term under at most `depth` coercions.

    The uncoerced candidate always comes first; the rest are ordered by
    coercion count, then lexicographically by the names applied, and
    deduplicated up to alpha equality of terms.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    out = [CoercionCandidate(entry.main_term, entry.main_type, 0)]
    seen = [entry.main_term]
    frontier = [out[0]]
    for _ in range(depth):
        grown = [
            CoercionCandidate(App(c_term, cand.term), c_type.cod, cand.count + 1, cand.names + (name,))
            for cand in frontier
            for name, c_term, c_type in entry.coercions
            if isinstance(c_type, Arrow) and alpha_eq(c_type.dom, cand.type)
        ]
        grown.sort(key=lambda c: c.names)
        new = []
        for cand in grown:
            if any(alpha_eq(cand.term, prev) for prev in seen):
                continue
            seen.append(cand.term)
            new.append(cand)
        out.extend(new)
        frontier = new
        if not frontier:
            break
    return out


# ------------------------------------------------------------ file format


def _split_decl(rest: str, line_no: int, keyword: str) -> tuple[str, str]:
    if ":" not in rest:
        raise ParseError(f"{keyword} line needs ': <Type>'", line_no, 1)
    name, _, ty_text = rest.partition(":")
    return name.strip(), ty_text.strip()


def _take_ident(text: str, line_no: int) -> str:
    word = text.strip()
    if not _IDENT.match(word):
        raise ParseError(f"expected an identifier, found {word!r}", line_no, 1)
    return word


def load_lexicon(text: str) -> Lexicon:
    """Parse and validate a lexicon file on top of the builtin signature."""
    builtin = builtin_signature()
    constants = dict(builtin.constants)
    base_types = set(builtin.base_types)
    scalar = set(builtin.scalar_relations)
    entries: dict[str, LexEntry] = {}
    current_word: str | None = None

    def signature() -> Signature:
        return Signature(dict(constants), frozenset(base_types), frozenset(scalar))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        keyword, _, rest = line.strip().partition(" ")
        rest = rest.strip()

        if keyword == "type":
            name = _take_ident(rest, line_no)
            if name in RESERVED:
                raise ParseError(f"cannot declare reserved name {name!r} as a type", line_no, 1)
            if name in base_types:
                raise ParseError(f"base type {name!r} declared twice", line_no, 1)
            base_types.add(name)
            current_word = None

        elif keyword == "constant":
            name_text, ty_text = _split_decl(rest, line_no, "constant")
            name = _take_ident(name_text, line_no)
            if name in constants:
                raise ParseError(f"constant {name!r} declared twice", line_no, 1)
            ty = parse_type(ty_text, frozenset(base_types))
            _require_closed(ty, f"constant {name!r}")
            constants[name] = ty
            current_word = None

        elif keyword == "scalar":
            name = _take_ident(rest, line_no)
            if name not in constants:
                raise LexiconError(f"line {line_no}: scalar flag on undeclared constant {name!r}")
            scalar.add(name)
            current_word = None

        elif keyword == "word":
            word_text, _, body = rest.partition("=")
            word = _take_ident(word_text, line_no)
            if word in entries:
                raise DuplicateWord(f"line {line_no}: word {word!r} defined twice")
            if not body.strip():
                raise ParseError("word line needs '= <Term> : <Type>'", line_no, 1)
            try:
                term, ty = parse_annotated_term(body, frozenset(base_types), frozenset(constants))
            except ParseError as exc:
                raise ParseError(f"line {line_no}: {exc}") from exc
            _require_closed(ty, f"word {word!r}")
            _check_entry_type(signature(), word, term, ty)
            entries[word] = LexEntry(word, term, ty)
            current_word = word

        elif keyword == "coercion":
            if current_word is None:
                raise LexiconError(f"line {line_no}: coercion line with no preceding word")
            name_text, ty_text = _split_decl(rest, line_no, "coercion")
            name = _take_ident(name_text, line_no)
            declared = constants.get(name)
            if declared is None:
                raise BadCoercion(f"line {line_no}: coercion {name!r} is not a declared constant")
            ty = parse_type(ty_text, frozenset(base_types))
            if not alpha_eq(ty, declared):
                raise BadCoercion(
                    f"line {line_no}: coercion {name!r} declared as {type_to_text(declared)},"
                    f" not {type_to_text(ty)}"
                )
            if not isinstance(ty, Arrow) or not _is_ground(ty):
                raise BadCoercion(
                    f"line {line_no}: coercion {name!r} must be an arrow between ground types"
                )
            entry = entries[current_word]
            entries[current_word] = LexEntry(
                entry.word,
                entry.main_term,
                entry.main_type,
                entry.coercions + ((name, parse_term(name, frozenset(base_types), frozenset(constants)), ty),),
            )

        else:
            raise ParseError(f"unknown directive {keyword!r}", line_no, 1)

    return Lexicon(signature(), entries)


def _require_closed(ty: TypeExpr, what: str) -> None:
    free = free_tvars(ty)
    if free:
        name = sorted(free)[0]
        raise UnknownBaseType(f"{what}: undeclared base type {name!r} (declare it with 'type {name}')")


def _check_entry_type(sig: Signature, word: str, term: TermExpr, declared: TypeExpr) -> None:
    try:
        actual = type_of(sig.typing_context(), term)
    except SpecimenError as exc:
        raise TypeCheckFailure(word, str(exc)) from exc
    if not alpha_eq(actual, declared):
        raise TypeCheckFailure(
            word, f"term has type {type_to_text(actual)}, annotation says {type_to_text(declared)}"
        )


def print_lexicon(lexicon: Lexicon) -> str:
    """Render a lexicon back to the file format (builtins omitted)."""
    builtin = builtin_signature()
    lines: list[str] = []
    for name in sorted(lexicon.signature.base_types - builtin.base_types):
        lines.append(f"type {name}")
    for name, ty in lexicon.signature.constants.items():
        if name not in builtin.constants:
            lines.append(f"constant {name} : {type_to_text(ty)}")
    for name in sorted(lexicon.signature.scalar_relations - builtin.scalar_relations):
        lines.append(f"scalar {name}")
    for entry in lexicon.entries.values():
        lines.append(f"word {entry.word} = {term_to_text(entry.main_term)} : {type_to_text(entry.main_type)}")
        for name, _, ty in entry.coercions:
            lines.append(f"  coercion {name} : {type_to_text(ty)}")
    return "\n".join(lines) + "\n"
