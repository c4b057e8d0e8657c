"""Command-line front end.

Subcommands: check, normalize, compose, eval, judge.  Results go to
stdout, diagnostics to stderr.  Exit codes: 0 success, 1 usage error,
2 type or validation error, 3 no reading, 4 evaluation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .composer import Reading, enumerate_readings, parse_tree
from .errors import EvalError, FuelExhausted, NoReading, SpecimenError
from .evaluate import EvalConfig, eval_formula, judge_specimen
from .formula import extract_formula, formula_to_sexpr, formula_to_text
from .lexicon import Lexicon, builtin_signature, load_lexicon
from .model import check_model, load_model
from .reduction import normalize
from .syntax import Arrow, Base, alpha_eq, term_to_text, type_to_text
from .typecheck import type_of

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TYPE = 2
EXIT_NO_READING = 3
EXIT_EVAL = 4


@dataclass(frozen=True)
class RunConfig:
    theta: Fraction = Fraction(3, 4)
    max_coercions: int = 2
    fuel: int = 10_000
    max_readings: int = 64
    format: str = "text"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 1
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="specimen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model=False, tree=False, term=False, pred=False):
        p.add_argument("--lexicon", required=True, help="lexicon file")
        if model:
            p.add_argument("--model", required=True, help="model file")
            p.add_argument("--theta", default=None, help="most-of threshold in (0.5, 1]")
        if tree:
            p.add_argument("--tree", default=None, help="syntax tree, e.g. '(app tall Carlotta)'")
            p.add_argument("--tree-file", default=None, help="file containing a syntax tree")
        if term:
            p.add_argument("--term", default=None, help="term in concrete syntax")
            p.add_argument("--term-file", default=None, help="file containing a term")
        if pred:
            p.add_argument("--pred", default=None, help="predicate term of type <class> -> t")
            p.add_argument("--pred-file", default=None, help="file containing the predicate")
        p.add_argument("--fuel", type=int, default=10_000, help="normalization step bound")

    p_check = sub.add_parser("check", help="type-check a term")
    add_common(p_check, term=True)

    p_norm = sub.add_parser("normalize", help="print the beta-normal form of a term")
    add_common(p_norm, term=True)

    p_compose = sub.add_parser("compose", help="enumerate the readings of a syntax tree")
    add_common(p_compose, tree=True)
    p_compose.add_argument("--max-coercions", type=int, default=2, help="coercion depth per word")
    p_compose.add_argument("--max-readings", type=int, default=64, help="cap on listed readings")
    p_compose.add_argument("--format", choices=("text", "sexpr"), default="text")

    p_eval = sub.add_parser("eval", help="evaluate a closed term of type t in a model")
    add_common(p_eval, model=True)
    p_eval.add_argument("--formula-term", default=None, help="term of type t")
    p_eval.add_argument("--formula-term-file", default=None, help="file containing the term")

    p_judge = sub.add_parser("judge", help="judge a predicate of the specimen of a class")
    add_common(p_judge, model=True, pred=True)
    p_judge.add_argument("--class", dest="class_type", required=True, help="class type name")

    return parser


def _inline_or_file(inline: str | None, path: str | None, what: str) -> str:
    # inline wins when both are present
    if inline is not None:
        return inline
    if path is not None:
        return Path(path).read_text(encoding="utf-8")
    raise _UsageError(f"missing {what}: pass it inline or as a file")


def _load_lexicon(path: str) -> Lexicon:
    return load_lexicon(Path(path).read_text(encoding="utf-8"))


def _theta(text: str | None) -> Fraction:
    if text is None:
        return Fraction(3, 4)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"bad theta {text!r}") from None
    if not (Fraction(1, 2) < value <= 1):
        raise SpecimenError(f"theta must lie in (0.5, 1], got {text}")
    return value


def _run_config(args) -> RunConfig:
    if getattr(args, "fuel", 10_000) <= 0:
        raise _UsageError("--fuel must be positive")
    if getattr(args, "max_readings", 64) <= 0:
        raise _UsageError("--max-readings must be positive")
    if getattr(args, "max_coercions", 2) < 0:
        raise _UsageError("--max-coercions must be non-negative")
    return RunConfig(
        theta=_theta(getattr(args, "theta", None)),
        max_coercions=getattr(args, "max_coercions", 2),
        fuel=getattr(args, "fuel", 10_000),
        max_readings=getattr(args, "max_readings", 64),
        format=getattr(args, "format", "text"),
    )


def _print_reading(rank: int, reading: Reading, fmt: str, out) -> None:
    print(f"reading {rank}: cost={reading.cost}", file=out)
    print(f"  term: {term_to_text(reading.term)}", file=out)
    if reading.coercions_used:
        used = ", ".join(f"{word}:{name}" for word, name in reading.coercions_used)
    else:
        used = "-"
    print(f"  coercions: {used}", file=out)
    if reading.instantiations:
        insts = ", ".join(f"{site}:={type_to_text(ty)}" for site, ty in reading.instantiations)
    else:
        insts = "-"
    print(f"  instantiations: {insts}", file=out)
    try:
        formula = extract_formula(reading.term)
        rendered = formula_to_text(formula) if fmt == "text" else formula_to_sexpr(formula)
    except EvalError:
        rendered = "- (outside the logical fragment)"
    print(f"  formula: {rendered}", file=out)


def _cmd_check(args, out, err) -> int:
    lexicon = _load_lexicon(args.lexicon)
    term = lexicon.parse_term(_inline_or_file(args.term, args.term_file, "--term"))
    ty = type_of(lexicon.typing_context(), term)
    print(type_to_text(ty), file=out)
    return EXIT_OK


def _cmd_normalize(args, out, err) -> int:
    cfg = _run_config(args)
    lexicon = _load_lexicon(args.lexicon)
    term = lexicon.parse_term(_inline_or_file(args.term, args.term_file, "--term"))
    type_of(lexicon.typing_context(), term)
    print(term_to_text(normalize(term, cfg.fuel)), file=out)
    return EXIT_OK


def _cmd_compose(args, out, err) -> int:
    cfg = _run_config(args)
    lexicon = _load_lexicon(args.lexicon)
    tree = parse_tree(_inline_or_file(args.tree, args.tree_file, "--tree"))
    readings = enumerate_readings(
        tree, lexicon, depth=cfg.max_coercions, max_readings=cfg.max_readings, fuel=cfg.fuel
    )
    for rank, reading in enumerate(readings, start=1):
        _print_reading(rank, reading, cfg.format, out)
    return EXIT_OK


def _cmd_eval(args, out, err) -> int:
    lexicon = _load_lexicon(args.lexicon)
    model = load_model(Path(args.model).read_text(encoding="utf-8"))
    check_model(model, lexicon.signature)
    text = _inline_or_file(args.formula_term, args.formula_term_file, "--formula-term")
    term = lexicon.parse_term(text)
    ty = type_of(lexicon.typing_context(), term)
    if not alpha_eq(ty, Base("t")):
        raise SpecimenError(f"--formula-term must have type t, got {type_to_text(ty)}")
    run = _run_config(args)
    formula = extract_formula(normalize(term, run.fuel))
    result = eval_formula(model, formula, EvalConfig(run.theta), lexicon.signature.scalar_relations)
    print("true" if result else "false", file=out)
    return EXIT_OK


def _cmd_judge(args, out, err) -> int:
    lexicon = _load_lexicon(args.lexicon)
    model = load_model(Path(args.model).read_text(encoding="utf-8"))
    check_model(model, lexicon.signature)
    if args.class_type not in lexicon.signature.base_types:
        raise SpecimenError(f"unknown class type {args.class_type!r}")
    pred = lexicon.parse_term(_inline_or_file(args.pred, args.pred_file, "--pred"))
    ty = type_of(lexicon.typing_context(), pred)
    expected = Arrow(Base(args.class_type), Base("t"))
    if not alpha_eq(ty, expected):
        raise SpecimenError(
            f"--pred must have type {type_to_text(expected)}, got {type_to_text(ty)}"
        )
    run = _run_config(args)
    judgement = judge_specimen(
        model, args.class_type, pred, EvalConfig(run.theta), lexicon.signature.scalar_relations, run.fuel
    )
    print(f"status: {judgement.status.value}", file=out)
    print(f"ratio: {judgement.ratio}", file=out)
    rules = ", ".join(judgement.applicable_rules) if judgement.applicable_rules else "-"
    print(f"rules: {rules}", file=out)
    for name, q_ratio in judgement.disjoint_witnesses:
        print(f"disjoint {name}: ratio {q_ratio}", file=out)
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "normalize": _cmd_normalize,
    "compose": _cmd_compose,
    "eval": _cmd_eval,
    "judge": _cmd_judge,
}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    logging.basicConfig(stream=err, format="%(levelname)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out, err)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except NoReading as exc:
        print(f"no reading: {exc}", file=err)
        return EXIT_NO_READING
    except (EvalError, FuelExhausted) as exc:
        print(f"evaluation error: {exc}", file=err)
        return EXIT_EVAL
    except SpecimenError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_TYPE
    except OSError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
