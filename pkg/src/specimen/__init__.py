"""Second-order typed lambda calculus with a specimen operator, lexical
coercions, reading enumeration and measure-based finite-model semantics."""

from .composer import (
    Leaf,
    Node,
    Reading,
    SyntaxTree,
    enumerate_readings,
    order_readings,
    parse_tree,
    prefer_type,
    tree_to_text,
)
from .errors import SpecimenError
from .evaluate import (
    EvalConfig,
    Judgement,
    JudgementStatus,
    eval_formula,
    judge_specimen,
    specimen_band,
    witness,
)
from .formula import Formula, extract_formula, formula_to_sexpr, formula_to_text
from .lexicon import (
    CoercionCandidate,
    LexEntry,
    Lexicon,
    Signature,
    builtin_signature,
    coercion_candidates,
    load_lexicon,
    print_lexicon,
)
from .model import FiniteModel, check_model, load_model
from .parser import parse_term, parse_type
from .reduction import beta_step, normalize
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
    subst_term,
    subst_type,
    term_to_text,
    type_to_text,
)
from .typecheck import TypingContext, type_of

__version__ = "0.1.0"

__all__ = [
    "App",
    "Arrow",
    "Base",
    "CoercionCandidate",
    "Const",
    "EvalConfig",
    "FiniteModel",
    "Forall",
    "Formula",
    "Judgement",
    "JudgementStatus",
    "Lam",
    "Leaf",
    "LexEntry",
    "Lexicon",
    "Node",
    "Reading",
    "Signature",
    "SpecimenError",
    "SyntaxTree",
    "TVar",
    "TermExpr",
    "TyApp",
    "TyLam",
    "TypeExpr",
    "TypingContext",
    "Var",
    "alpha_eq",
    "beta_step",
    "builtin_signature",
    "check_model",
    "coercion_candidates",
    "enumerate_readings",
    "eval_formula",
    "extract_formula",
    "formula_to_sexpr",
    "formula_to_text",
    "judge_specimen",
    "load_lexicon",
    "load_model",
    "normalize",
    "order_readings",
    "parse_term",
    "parse_tree",
    "parse_type",
    "prefer_type",
    "print_lexicon",
    "specimen_band",
    "subst_term",
    "subst_type",
    "term_to_text",
    "tree_to_text",
    "type_of",
    "type_to_text",
    "witness",
]
