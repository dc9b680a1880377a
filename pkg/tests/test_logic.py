import pytest
from hypothesis import given, strategies as st

from fsneg.logic import (
    TOP,
    And,
    Atom,
    CapExceeded,
    Eq,
    Exists,
    Fn,
    LogicError,
    Not,
    Or,
    PreconditionError,
    Signature,
    Var,
    check_coherent,
    check_complete_on,
    enumerate_interpretations,
    evaluate,
    forall,
    free_vars,
    make_interpretation,
    signature_of,
    space_size,
)


def test_negative_predicate_needs_positive():
    with pytest.raises(LogicError):
        Signature({"~p": 1})


def test_negative_predicate_arity_must_match():
    with pytest.raises(LogicError):
        Signature({"p": 1, "~p": 2})


def test_name_in_two_categories_rejected():
    with pytest.raises(LogicError):
        Signature({"p": 0}, {"p": 0})


def test_signature_inferred_from_formula():
    f = And(Atom("p", (Fn("f"),)), Atom("~p", (Fn("1"),)))
    sig = signature_of(f, rigid={"1", "2"})
    assert sig.preds == {"p": 1, "~p": 1}
    assert sig.funcs == {"f": 0}
    assert sig.rigid == {"1"}
    assert tuple(sig.pairs) == ("p",)


def test_evaluate_quantifiers_and_functions():
    sig = Signature({"q": 1}, {"f": 1}, {"1", "2"})
    i = make_interpretation(sig, ("1", "2"), {"q": ["1"]}, {"f": {"1": "2", "2": "1"}})
    # forall X (q(X) -> f(X) = 2)
    g = forall(["X"], Or(Not(Atom("q", (Var("X"),))), Eq(Fn("f", (Var("X"),)), Fn("2"))))
    assert evaluate(g, i)
    assert not evaluate(Exists("X", And(Atom("q", (Var("X"),)), Eq(Fn("f", (Var("X"),)), Var("X")))), i)
    assert evaluate(TOP, i)


def test_zero_ary_predicate_given_as_boolean():
    sig = Signature({"r": 0, "s": 0})
    i = make_interpretation(sig, ("1",), {"r": True, "s": False})
    assert evaluate(Atom("r"), i)
    assert not evaluate(Atom("s"), i)


def test_empty_universe_rejected():
    with pytest.raises(PreconditionError):
        make_interpretation(Signature({"r": 0}), ())


def test_coherence_and_completeness():
    sig = Signature({"p": 1, "~p": 1}, {}, {"1", "2"})
    u = ("1", "2")
    both = make_interpretation(sig, u, {"p": ["1"], "~p": ["1", "2"]})
    ok = make_interpretation(sig, u, {"p": ["1"], "~p": ["2"]})
    partial = make_interpretation(sig, u, {"p": ["1"]})
    assert not check_coherent(both)
    assert check_coherent(ok) and check_complete_on(ok, "p")
    assert check_coherent(partial) and not check_complete_on(partial, "p")


def test_free_vars():
    g = forall(["X"], Atom("q", (Var("X"), Var("Y"))))
    assert free_vars(g) == {"Y"}


@given(st.integers(0, 2), st.integers(0, 1), st.integers(1, 3))
def test_enumeration_count_matches_space_size(pred_arity, func_arity, n):
    sig = Signature({"q": pred_arity}, {"f": func_arity})
    universe = tuple(str(k) for k in range(n))
    expected = 2 ** (n**pred_arity) * n ** (n**func_arity)
    assert space_size(sig, universe, ["q", "f"]) == expected
    found = list(enumerate_interpretations(sig, universe))
    assert len(found) == expected
    assert len({i.key() for i in found}) == expected


def test_enumeration_cap():
    sig = Signature({"q": 2})
    with pytest.raises(CapExceeded):
        list(enumerate_interpretations(sig, ("1", "2", "3"), cap=100))
