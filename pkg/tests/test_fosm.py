import pytest
from hypothesis import given, settings, strategies as st

from fsneg import verify
from fsneg.fosm import (
    classical_models,
    hat,
    hatted_assignments,
    is_stable,
    lt_formula,
    stable_models,
    star_transform,
)
from fsneg.ground import builtin_corpus
from fsneg.logic import (
    And,
    Atom,
    Eq,
    Fn,
    Not,
    Or,
    PreconditionError,
    Signature,
    Var,
    evaluate,
    forall,
    make_interpretation,
)
from fsneg.syntax import parse_fo

U3 = ("1", "2", "3")


def _fo(name):
    text = builtin_corpus(name).meta["fo"]
    f, sig, universe = parse_fo(text)
    return f, sig, universe


def test_choice_has_single_stable_model():
    f, sig, u = _fo("f-choice")
    models = stable_models(f, ["f"], sig, u)
    assert [m.funcs["f"][()] for m in models] == ["1"]


def test_choice_verdicts_per_interpretation():
    f, sig, u = _fo("f-choice")
    i1 = make_interpretation(sig, u, funcs={"f": "1"})
    i2 = make_interpretation(sig, u, funcs={"f": "2"})
    assert is_stable(f, ["f"], i1).status == "stable"
    v = is_stable(f, ["f"], i2)
    assert v.status == "not-minimal"
    assert v.witness["f"][()] != "2"


def test_choice_with_fact_selects_other_value():
    f, sig, u = _fo("f-choice-conflict")
    models = stable_models(f, ["f"], sig, u)
    assert [m.funcs["f"][()] for m in models] == ["2"]
    i1 = make_interpretation(sig, u, funcs={"f": "1"})
    assert is_stable(f, ["f"], i1).status == "not-model"


def test_star_atomic_case_keeps_original_atom():
    g = Eq(Fn("f"), Fn("1"))
    assert star_transform(g, ["f"]) == And(Eq(Fn(hat("f")), Fn("1")), g)
    # constants outside c are untouched
    assert star_transform(Atom("q", (Fn("1"),)), ["f"]) == Atom("q", (Fn("1"),))


def test_star_of_negation_is_equivalent_to_negation():
    g = Not(Eq(Fn("f"), Fn("1")))
    s = star_transform(g, ["f", "q"])
    for f_val in U3:
        for fh in U3:
            i = make_interpretation(
                Signature({"q": 0}, {"f": 0, hat("f"): 0}, set(U3)), U3, funcs={"f": f_val, hat("f"): fh}
            )
            assert evaluate(s, i) == evaluate(g, i)


def test_lt_formula_requires_difference():
    sig = Signature({"q": 1}, {}, set())
    lt = lt_formula(["q"], sig)
    hsig = Signature({"q": 1, hat("q"): 1})
    u = ("1", "2")
    same = make_interpretation(hsig, u, {"q": ["1"], hat("q"): ["1"]})
    smaller = make_interpretation(hsig, u, {"q": ["1"], hat("q"): []})
    wider = make_interpretation(hsig, u, {"q": ["1"], hat("q"): ["2"]})
    assert not evaluate(lt, same)
    assert evaluate(lt, smaller)
    assert not evaluate(lt, wider)


def test_hatted_assignments_exclude_identity():
    sig = Signature({"q": 0}, {"f": 0}, set())
    i = make_interpretation(sig, ("1", "2"), {"q": True}, {"f": "1"})
    found = list(hatted_assignments(i, ["q", "f"]))
    assert len(found) == 2 * 2 - 1
    assert {"q": frozenset({()}), "f": {(): "1"}} not in found


def test_sm_requires_sentence():
    sig = Signature({"q": 1})
    i = make_interpretation(sig, ("1",), {"q": []})
    with pytest.raises(PreconditionError):
        is_stable(Atom("q", (Var("X"),)), ["q"], i)


def test_predicate_stable_models_are_minimal():
    # q(1) ∨ q(2): two stable models, each with one atom
    sig = Signature({"q": 1}, {}, {"1", "2"})
    f = Or(Atom("q", (Fn("1"),)), Atom("q", (Fn("2"),)))
    models = stable_models(f, ["q"], sig, ("1", "2"))
    assert sorted(sorted(m.preds["q"]) for m in models) == [[("1",)], [("2",)]]


def test_strong_negation_pair_is_intensional():
    # -q(1) as a fact over the pair q/~q
    sig = Signature({"q": 1, "~q": 1}, {}, {"1", "2"})
    f = And(Atom("~q", (Fn("1"),)), forall(["X"], Or(Not(Atom("q", (Var("X"),))), Atom("q", (Var("X"),)))))
    models = stable_models(f, ["q", "~q"], sig, ("1", "2"))
    assert len(models) == 2
    assert all(m.preds["~q"] == {("1",)} for m in models)


@settings(max_examples=60)
@given(st.integers(0, 10_000))
def test_empty_intensional_list_gives_classical_models(seed):
    inst = verify.random_instance("f-plain-formula", {"universe": 2, "rules": 2}, seed, target="f")
    sm = stable_models(inst.formula, [], inst.signature, inst.universe)
    cl = [i for i in classical_models(inst.formula, inst.signature, inst.universe)]
    assert sm == cl


@settings(max_examples=60)
@given(st.integers(0, 10_000), st.sampled_from(["f", "p", "b"]))
def test_stable_models_match_definition_oracle(seed, target):
    inst = verify.random_instance("f-plain-formula", {"universe": 2, "rules": 2}, seed, target=target)
    fast = verify.solve(inst, "fosm")
    slow = verify.oracle("fosm", inst)
    assert fast == slow


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_stable_models_are_models(seed):
    inst = verify.random_instance("f-plain-formula", {"universe": 2}, seed, target="p")
    for m in verify.solve(inst, "fosm"):
        assert evaluate(inst.formula, m)
