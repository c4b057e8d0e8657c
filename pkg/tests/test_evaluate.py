from __future__ import annotations

from fractions import Fraction

import pytest

from oracles import brute_band, brute_eval
from specimen.errors import EmptyDomain, MissingScalarValue, SpecimenOfNonClass, UninterpretedSymbol
from specimen.evaluate import (
    EvalConfig,
    JudgementStatus,
    eval_formula,
    judge_specimen,
    specimen_band,
    witness,
)
from specimen.formula import Atom, ModelConst, Specimen, extract_formula
from specimen.model import load_model
from specimen.parser import parse_term
from specimen.reduction import normalize
from specimen.syntax import Base

BASES = frozenset({"t", "float", "human", "brits", "country", "thing", "2yoGirl"})
CFG = EvalConfig(Fraction(3, 4))


def tm(text: str):
    return parse_term(text, BASES)


def formula(text: str):
    return extract_formula(normalize(tm(text)))


BAND_MODEL = load_model(
    """
type thing = e1 e2 e3 e4 e5 e6 e7 e8 e9 e10
type float = 80 81 82 83 84 85 86 87 88 95 92
rel height e1 80
rel height e2 81
rel height e3 82
rel height e4 83
rel height e5 84
rel height e6 85
rel height e7 86
rel height e8 87
rel height e9 88
rel height e10 95
type single = s1
rel height s1 92
"""
)


def test_band_ten_unit_weights():
    assert specimen_band(BAND_MODEL, "thing", "height", CFG) == (81, 88)


def test_band_single_element():
    for theta in (Fraction(3, 4), Fraction(9, 10), Fraction(1)):
        assert specimen_band(BAND_MODEL, "single", "height", EvalConfig(theta)) == (92, 92)


def test_band_theta_one_is_min_max():
    assert specimen_band(BAND_MODEL, "thing", "height", EvalConfig(Fraction(1))) == (80, 95)


def test_band_matches_brute_oracle_with_weights():
    model = load_model(
        """
type thing = a b c d
type float = 10 20 30 40
weight a 3
weight b 1/2
weight d 5
rel height a 10
rel height b 20
rel height c 30
rel height d 40
"""
    )
    for theta in (Fraction(3, 5), Fraction(3, 4), Fraction(9, 10), Fraction(1)):
        cfg = EvalConfig(theta)
        pairs = [
            (model.float_values[val], model.weights[ind])
            for ind, val in model.rel_extensions["height"]
        ]
        assert specimen_band(model, "thing", "height", cfg) == brute_band(pairs, theta)


def test_band_missing_value():
    model = load_model("type thing = a b\ntype float = 1\nrel height a 1\n")
    with pytest.raises(MissingScalarValue):
        specimen_band(model, "thing", "height", CFG)


TEA_MODEL_8 = load_model(
    "type brits = b1 b2 b3 b4 b5 b6 b7 b8 b9 b10\n"
    + "".join(f"rel drinks_tea b{i}\n" for i in range(1, 9))
)
TEA_MODEL_2 = load_model(
    "type brits = b1 b2 b3 b4 b5 b6 b7 b8 b9 b10\nrel drinks_tea b1\nrel drinks_tea b2\n"
)


def test_universal_quantifier_over_all_mortals():
    model = load_model("type human = h1 h2 h3\nrel mortal h1\nrel mortal h2\nrel mortal h3\n")
    assert eval_formula(model, formula("forall{human} (\\x:human. mortal x)"), CFG) is True
    assert eval_formula(model, formula("exists{human} (\\x:human. not (mortal x))"), CFG) is False


def test_most_of_specimen_atom():
    f = formula("drinks_tea spec{brits}")
    assert eval_formula(TEA_MODEL_8, f, CFG) is True
    assert eval_formula(TEA_MODEL_2, f, CFG) is False
    assert brute_eval(TEA_MODEL_8, f, CFG.theta) is True
    assert brute_eval(TEA_MODEL_2, f, CFG.theta) is False


def test_most_of_threshold_is_inclusive():
    # exactly 3/4 of the weight satisfies the atom
    model = load_model("type brits = b1 b2 b3 b4\nrel drinks_tea b1\nrel drinks_tea b2\nrel drinks_tea b3\n")
    assert eval_formula(model, formula("drinks_tea spec{brits}"), CFG) is True


def test_specimen_under_negation_is_atom_negation():
    f = formula("not (drinks_tea spec{brits})")
    assert eval_formula(TEA_MODEL_8, f, CFG) is False
    assert eval_formula(TEA_MODEL_2, f, CFG) is True


def test_specimen_of_nonclass_rejected():
    f = Atom("drinks_tea", (), (Specimen(Base("t")),))
    with pytest.raises(SpecimenOfNonClass):
        eval_formula(TEA_MODEL_8, f, CFG)
    with pytest.raises(SpecimenOfNonClass):
        eval_formula(TEA_MODEL_8, Atom("lt", (), (Specimen(Base("float")), Specimen(Base("float")))), CFG)


def test_uninterpreted_symbol():
    with pytest.raises(UninterpretedSymbol):
        eval_formula(TEA_MODEL_8, Atom("unknown_rel", (), (ModelConst("b1"),)), CFG)
    with pytest.raises(UninterpretedSymbol):
        eval_formula(TEA_MODEL_8, Atom("drinks_tea", (), (ModelConst("nobody"),)), CFG)


COERCE_MODEL = load_model(
    """
type 2yoGirl = g1 g2 g3 g4
type human = h1 h2 h3 h4 adult
map h g1 = h1
map h g2 = h2
map h g3 = h3
map h g4 = h4
rel happy h1
rel happy h2
rel happy h3
rel happy adult
"""
)


def test_specimen_under_coercion_ranges_over_source_class():
    # 3 of 4 girls map to happy humans: ratio 3/4 over the girls, not 4/5 over humans
    f = formula("happy (h spec{2yoGirl})")
    assert eval_formula(COERCE_MODEL, f, CFG) is True
    assert eval_formula(COERCE_MODEL, f, EvalConfig(Fraction(4, 5))) is False
    f_humans = formula("happy spec{human}")
    assert eval_formula(COERCE_MODEL, f_humans, EvalConfig(Fraction(4, 5))) is True


def test_multiple_specimens_leftmost_first():
    model = load_model(
        """
type brits = b1 b2 b3 b4
type country = fr de
rel love b1 fr
rel love b2 fr
rel love b3 fr
rel love b4 fr
rel love b1 de
"""
    )
    # for most brits x: for most countries y: love(x, y) -- fails (de unloved)
    f = formula("love{brits}{country} spec{brits} spec{country}")
    assert eval_formula(model, f, EvalConfig(Fraction(3, 4))) is False
    # with theta 0.51 the country majority needs 2 of 2, still false
    assert eval_formula(model, f, EvalConfig(Fraction(51, 100))) is False
    assert brute_eval(model, f, Fraction(3, 4)) is False


def test_weights_drive_the_ratio():
    model = load_model(
        "type brits = b1 b2\nweight b1 9\nrel drinks_tea b1\n"
    )
    assert eval_formula(model, formula("drinks_tea spec{brits}"), CFG) is True
    scaled = model.scaled(Fraction(13, 7))
    assert eval_formula(scaled, formula("drinks_tea spec{brits}"), CFG) is True


def test_scalar_atom_with_ordinary_element_is_functional_lookup():
    f = formula("height{thing} c9 c88")
    model = load_model(
        "type thing = e1\ntype float = 88 90\nrel height e1 88\nconst c9 = e1\nconst c88 = 88\n"
    )
    assert eval_formula(model, f, CFG) is True


def test_lt_compares_values():
    model = load_model("type float = 1 2\nconst one = 1\nconst two = 2\n")
    assert eval_formula(model, formula("lt one two"), CFG) is True
    assert eval_formula(model, formula("lt two one"), CFG) is False


# ------------------------------------------------------------------ judge


def judge(model, text, theta=Fraction(3, 4), class_type="brits"):
    return judge_specimen(model, class_type, tm(text), EvalConfig(theta))


def test_judge_universal():
    model = load_model("type brits = b1 b2\nrel drinks_tea b1\nrel drinks_tea b2\n")
    j = judge(model, "\\x:brits. drinks_tea x")
    assert j.status is JudgementStatus.HOLDS_UNIVERSAL
    assert "universal" in j.applicable_rules and "most" in j.applicable_rules
    assert j.ratio == 1


def test_judge_minority():
    model = load_model(
        "type brits = " + " ".join(f"b{i}" for i in range(1, 11)) + "\nrel drinks_tea b1\n"
    )
    j = judge(model, "drinks_tea")
    assert j.status is JudgementStatus.REFUTED_MINORITY
    assert j.ratio == Fraction(1, 10)


def test_judge_unknown_between_thresholds():
    model = load_model(
        "type brits = " + " ".join(f"b{i}" for i in range(1, 11)) + "\n"
        + "".join(f"rel drinks_tea b{i}\n" for i in range(1, 7))
    )
    j = judge(model, "drinks_tea")
    assert j.status is JudgementStatus.UNKNOWN
    assert j.applicable_rules == ()
    assert j.ratio == Fraction(6, 10)


def test_judge_disjoint_implies_minority():
    lines = ["type brits = " + " ".join(f"b{i}" for i in range(1, 11))]
    lines += [f"rel coffee_only b{i}" for i in range(1, 9)]
    lines += ["rel drinks_tea b9"]
    model = load_model("\n".join(lines) + "\n")
    j = judge(model, "drinks_tea")
    assert "disjoint:coffee_only" in j.applicable_rules
    assert "minority" in j.applicable_rules
    assert j.status is JudgementStatus.REFUTED_MINORITY
    assert j.disjoint_witnesses == (("coffee_only", Fraction(8, 10)),)


def test_judge_most():
    j = judge(TEA_MODEL_8, "drinks_tea")
    assert j.status is JudgementStatus.HOLDS_MOST
    assert j.applicable_rules == ("most",)


# ---------------------------------------------------------------- witness


WITNESS_MODEL = load_model("type thing = e1 e2 e3 e4\nrel good e1\nrel good e2\nrel good e4\n")


def test_witness_tau_picks_least_falsifier():
    assert witness(WITNESS_MODEL, "thing", {"e1", "e2", "e4"}, "tau") == "e3"


def test_witness_tau_all_satisfy():
    assert witness(WITNESS_MODEL, "thing", {"e1", "e2", "e3", "e4"}, "tau") == "e1"


def test_witness_eps_picks_least_satisfier():
    assert witness(WITNESS_MODEL, "thing", {"e3", "e2"}, "eps") == "e2"
    assert witness(WITNESS_MODEL, "thing", set(), "eps") == "e1"


def test_witness_duality():
    domain = WITNESS_MODEL.domains["thing"]
    for extension in ({"e1"}, {"e2", "e3"}, set(), set(domain)):
        complement = set(domain) - set(extension)
        assert witness(WITNESS_MODEL, "thing", extension, "eps") == witness(
            WITNESS_MODEL, "thing", complement, "tau"
        )


def test_witness_empty_domain():
    with pytest.raises(EmptyDomain):
        witness(WITNESS_MODEL, "nowhere", set(), "tau")


def test_tau_formula_equivalences():
    # A(tau A) agrees with the universal quantifier; A(eps A) with the existential
    all_good = load_model("type thing = e1 e2\nrel good e1\nrel good e2\n")
    some_good = WITNESS_MODEL
    none_good = load_model("type thing = e1 e2\nrel good e1\n")
    none_good.rel_extensions["good"] = frozenset()  # empty extension
    for model, expect_all, expect_some in (
        (all_good, True, True),
        (some_good, False, True),
        (none_good, False, False),
    ):
        f_tau = formula("good (tau{thing} (\\x:thing. good x))")
        f_all = formula("forall{thing} (\\x:thing. good x)")
        f_eps = formula("good (eps{thing} (\\x:thing. good x))")
        f_some = formula("exists{thing} (\\x:thing. good x)")
        assert eval_formula(model, f_tau, CFG) == eval_formula(model, f_all, CFG) == expect_all
        assert eval_formula(model, f_eps, CFG) == eval_formula(model, f_some, CFG) == expect_some
