import pytest
from hypothesis import given, settings, strategies as st

from fsneg import verify
from fsneg.ground import builtin_corpus
from fsneg.logic import CapExceeded, LogicError
from fsneg.progsem import (
    Program,
    Rule,
    answer_sets,
    expand_choice,
    gl_reduct,
    is_complete,
    is_consistent,
    least_model,
    tvlp_is_stable,
    tvlp_reduct,
    tvlp_stable_models,
)
from fsneg.syntax import parse_asp, parse_tvlp


def sets(*items):
    return sorted(frozenset(x.split()) for x in items)


def test_transition_program_answer_sets():
    prog = builtin_corpus("transition8").artifact
    res = answer_sets(prog)
    assert sorted(res.models) == sets("p0 a p1", "~p0 a p1", "p0 ~a p1", "~p0 ~a ~p1")
    assert frozenset({"~p0", "a", "p1"}) in res.models
    assert all(is_complete(x, prog.atoms) for x in res.models)
    assert not res.inconsistent


def test_gl_reduct_drops_and_strips():
    prog = parse_asp("p :- q, not r.\nq :- not not p.\ns :- not q.\n")
    red = gl_reduct(prog, {"p", "q"})
    assert red.rules == (Rule(("p",), ("q",)), Rule(("q",)))


def test_choice_expands_to_double_negation():
    r = expand_choice(Rule(("p",), ("q",), choice=True))
    assert r == Rule(("p",), ("q",), (), ("p",))
    assert answer_sets(parse_asp("{p}.")).models == sets("", "p")


def test_least_model_ignores_constraints():
    rules = [Rule(("a",)), Rule(("b",), ("a",)), Rule((), ("b",))]
    assert least_model(rules) == {"a", "b"}


def test_contradiction_gives_inconsistency_verdict():
    res = answer_sets(parse_asp("p.\n-p.\nq :- not r.\n"))
    assert res.inconsistent and res.models == []


def test_inconsistency_verdict_coexists_with_choice():
    res = answer_sets(parse_asp("{p}.\n-p.\n"))
    assert res.inconsistent
    assert res.models == [frozenset({"~p"})]


def test_constraint_kills_all():
    res = answer_sets(parse_asp("p.\n:- p.\n"))
    assert not res.inconsistent and res.models == []


def test_disjunctive_program():
    res = answer_sets(parse_asp("p | q.\nr :- p.\n"))
    assert res.models == sets("q", "p r")


def test_disjunction_with_strong_negation():
    res = answer_sets(parse_asp("p | -p.\n"))
    assert res.models == sets("p", "~p")


def test_cap_counts_search_nodes():
    with pytest.raises(CapExceeded):
        answer_sets(builtin_corpus("transition8").artifact, cap=2)


def test_choice_braces_hold_one_literal():
    with pytest.raises(LogicError):
        Rule(("p", "q"), choice=True)


def test_consistency_helpers():
    assert is_consistent({"p", "~q"})
    assert not is_consistent({"p", "~p"})
    assert is_complete({"p", "~q"}, ["p", "q"])
    assert not is_complete({"p"}, ["p", "q"])


def test_tvlp_example_single_model():
    prog = builtin_corpus("tvlp-ex10").artifact
    assert tvlp_stable_models(prog) == [frozenset({"a", "b"})]
    assert not tvlp_is_stable(prog, {"~a", "b"})
    assert not tvlp_is_stable(prog, {"~a", "~b"})


def test_tvlp_reduct_needs_complete_interpretation():
    prog = parse_tvlp("a <- : a.\n")
    with pytest.raises(LogicError):
        tvlp_reduct(prog, {"a", "~a"})


_SIZES = {"atoms": 3, "rules": 6}


@settings(max_examples=200)
@given(st.integers(0, 100_000))
def test_answer_sets_match_definition_oracle(seed):
    prog = verify.random_instance("program-sneg", _SIZES, seed)
    fast = answer_sets(prog)
    slow = verify.oracle("asp", prog)
    assert fast.models == slow.models
    assert fast.inconsistent == slow.inconsistent


@settings(max_examples=200)
@given(st.integers(0, 100_000))
def test_answer_sets_form_an_antichain(seed):
    prog = verify.random_instance("program-sneg", _SIZES, seed)
    if any(r.nneg or r.choice for r in prog.rules):
        # {p}. alone has the answer sets {} and {p}
        return
    found = answer_sets(prog).models
    for x in found:
        assert is_consistent(x)
        for y in found:
            assert x == y or not x < y


@settings(max_examples=150)
@given(st.integers(0, 100_000))
def test_normal_search_agrees_with_candidate_scan(seed):
    prog = verify.random_instance("program-sneg", _SIZES, seed)
    if prog.disjunctive:
        return
    # a tautological disjunction forces the candidate scan path
    forced = Program(prog.rules + (Rule(("z", "~z"), ("z",)),), prog.atoms)
    a = {x for x in answer_sets(prog).models}
    b = {x - {"z", "~z"} for x in answer_sets(forced).models}
    assert a == b


@settings(max_examples=200)
@given(st.integers(0, 100_000))
def test_tvlp_matches_definition_oracle(seed):
    prog = verify.random_instance("tv-program", {"atoms": 3, "rules": 6}, seed)
    assert tvlp_stable_models(prog) == verify.oracle("tvlp", prog)
