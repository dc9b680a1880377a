import pytest
from hypothesis import given, settings, strategies as st

from fsneg import verify
from fsneg.ground import builtin_corpus
from fsneg.logic import And, Bot, Imp, LogicError, Not, Or
from fsneg.mvsm import (
    BOT,
    FALSE,
    TRUE,
    MvSignature,
    Val,
    check_formula,
    interpretations,
    mv_is_stable,
    mv_reduct,
    mv_satisfies,
    mv_stable_models,
)


def test_choice_over_three_values():
    f, sig = builtin_corpus("f-choice").artifact
    assert mv_stable_models(f, sig) == [{"f": "1"}]


def test_choice_conflict():
    f, sig = builtin_corpus("f-choice-conflict").artifact
    assert mv_stable_models(f, sig) == [{"f": "2"}]
    assert mv_is_stable(f, {"f": "1"}, sig).status == "not-model"


def test_choice_reducts():
    f, sig = builtin_corpus("f-choice").artifact
    one = Val("f", "1")
    assert mv_reduct(f, {"f": "1"}) == Or(one, BOT)
    assert mv_reduct(f, {"f": "2"}) == Or(BOT, Not(BOT))
    v = mv_is_stable(f, {"f": "2"}, sig)
    assert v.status == "not-unique" and v.witness != {"f": "2"}


def test_tape_colour_reduct():
    sig = MvSignature({"ClrBlue": (TRUE, FALSE), "ClrRed": (TRUE, FALSE), "TapeClr": ("Red", "Blue", "Green")})

    def both(c):
        return Or(Val(c, TRUE), Val(c, FALSE))

    f = And(
        And(both("ClrBlue"), both("ClrRed")),
        And(Imp(Val("ClrBlue", TRUE), Val("TapeClr", "Blue")), Imp(Val("ClrRed", TRUE), Val("TapeClr", "Red"))),
    )
    i = {"ClrBlue": FALSE, "ClrRed": TRUE, "TapeClr": "Red"}
    expected = And(
        And(Or(BOT, Val("ClrBlue", FALSE)), Or(Val("ClrRed", TRUE), BOT)),
        And(Imp(BOT, BOT), Imp(Val("ClrRed", TRUE), Val("TapeClr", "Red"))),
    )
    assert mv_reduct(f, i) == expected
    assert [j for j in interpretations(sig) if mv_satisfies(expected, j)] == [i]
    assert mv_is_stable(f, i, sig)


def test_domain_values_cannot_clash_with_constants():
    with pytest.raises(LogicError):
        MvSignature({"a": ("a", "b")})


def test_unknown_value_rejected():
    with pytest.raises(LogicError):
        check_formula(Val("f", "9"), MvSignature({"f": ("1", "2")}))


_SIZES = {"constants": 3, "depth": 3}


@settings(max_examples=150)
@given(st.integers(0, 100_000))
def test_reduct_satisfaction_equivalence(seed):
    f, sig = verify.random_instance("mv-formula", _SIZES, seed)
    for i in interpretations(sig):
        assert mv_satisfies(mv_reduct(f, i), i) == mv_satisfies(f, i)


@settings(max_examples=150)
@given(st.integers(0, 100_000))
def test_reduct_is_idempotent(seed):
    f, sig = verify.random_instance("mv-formula", _SIZES, seed)
    for i in interpretations(sig):
        r = mv_reduct(f, i)
        assert mv_reduct(r, i) == r


@settings(max_examples=150)
@given(st.integers(0, 100_000))
def test_stable_models_match_oracle(seed):
    inst = verify.random_instance("mv-formula", _SIZES, seed)
    assert verify.solve(inst, "mv") == verify.oracle("mv", inst)


def _formulas(names, doms):
    atoms = [Val(c, v) for c in names for v in doms[c]] + [Bot()]
    return st.recursive(
        st.sampled_from(atoms),
        lambda sub: st.one_of(
            st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Imp, sub, sub), st.builds(Not, sub)
        ),
        max_leaves=8,
    )


_DOMS = {"c": ("1", "2", "3"), "d": (TRUE, FALSE)}


@settings(max_examples=200)
@given(_formulas(["c", "d"], _DOMS))
def test_stable_model_is_unique_model_of_its_reduct(f):
    sig = MvSignature(_DOMS)
    for i in mv_stable_models(f, sig):
        r = mv_reduct(f, i)
        assert [j for j in interpretations(sig) if mv_satisfies(r, j)] == [i]


@settings(max_examples=200)
@given(_formulas(["c", "d"], _DOMS))
def test_double_negation_never_stable_with_several_interpretations(f):
    # the reduct of ¬¬F is ⊥ or ¬⊥, so no interpretation is the unique model
    sig = MvSignature(_DOMS)
    assert mv_stable_models(Not(Not(f)), sig) == []
