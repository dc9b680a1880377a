import pytest
from hypothesis import given, settings, strategies as st

from fsneg import verify
from fsneg.ground import CORPUS_NAMES, builtin_corpus, instantiate
from fsneg.logic import Atom, Bot, Or
from fsneg.mvsm import MvSignature, Val
from fsneg.progsem import Rule, TvRule
from fsneg.syntax import (
    ParseError,
    parse_asp,
    parse_fo,
    parse_mv,
    parse_tvlp,
    print_asp,
    print_fo,
    print_mv,
    print_rule,
    print_tvlp,
)


def test_strongly_negated_body_literal():
    (r,) = parse_asp("p1 :- p0, not -p1.").rules
    assert r == Rule(("p1",), ("p0",), ("~p1",))
    assert r.line == 1


def test_mv_choice_conflict():
    f, sig = parse_mv("const f : {1,2,3}.\n{f=1} & f=2.\n")
    one = Val("f", "1")
    assert sig == MvSignature({"f": ("1", "2", "3")})
    assert f.right == Val("f", "2")
    assert f.left.left == one


def test_tvlp_rule_with_condition():
    (r,) = parse_tvlp("a <- : a.").rules
    assert r == TvRule("a", (), Atom("a"))


def test_choice_rule_prints_with_braces():
    assert print_rule(Rule(("p0",), choice=True)) == "{p0}."


def test_bot_prints_as_keyword():
    assert print_mv(Bot()).strip() == "bot."


def test_strong_negation_prints_with_minus():
    prog = parse_asp("-On(b1,b2,0) :- On(b1,table,0).")
    assert print_asp(prog).strip() == "-On(b1,b2,0) :- On(b1,table,0)."


def test_parse_error_has_position():
    with pytest.raises(ParseError) as e:
        parse_asp("p :- q\nr.")
    assert "2:" in str(e.value)


def test_unexpected_character():
    with pytest.raises(ParseError):
        parse_asp("p @ q.")


def _reparse(dialect, art):
    if dialect == "asp":
        return parse_asp(print_asp(art, declare_atoms=True))
    if dialect == "mv":
        return parse_mv(print_mv(*art))
    if dialect == "tvlp":
        return parse_tvlp(print_tvlp(art))
    if dialect == "fo":
        return parse_fo(print_fo(*art))
    raise AssertionError(dialect)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_corpus_round_trip(name):
    entry = builtin_corpus(name, blocks=1, steps=1)
    art = entry.artifact
    dialect = entry.dialect
    if dialect == "schema":
        if hasattr(art, "rules"):
            dialect = "asp"
        else:
            dialect, art = "fo", (art.formula, art.signature, art.universe)
    once = _reparse(dialect, art)
    assert once == art or (dialect == "fo" and once[0] == art[0] and once[1].preds == art[1].preds)
    assert _reparse(dialect, once) == once


@settings(max_examples=100)
@given(st.integers(0, 100_000))
def test_random_program_round_trip(seed):
    prog = verify.random_instance("program-sneg", {"atoms": 3, "rules": 6}, seed)
    assert parse_asp(print_asp(prog, declare_atoms=True)) == prog


@settings(max_examples=100)
@given(st.integers(0, 100_000))
def test_random_mv_round_trip(seed):
    f, sig = verify.random_instance("mv-formula", {"constants": 3, "depth": 3}, seed)
    assert parse_mv(print_mv(f, sig)) == (f, sig)


@settings(max_examples=100)
@given(st.integers(0, 100_000))
def test_random_tvlp_round_trip(seed):
    prog = verify.random_instance("tv-program", {"atoms": 3, "rules": 6}, seed)
    assert parse_tvlp(print_tvlp(prog)) == prog


@settings(max_examples=100)
@given(st.integers(0, 100_000), st.sampled_from(["f", "p", "b"]))
def test_random_fo_round_trip(seed, target):
    inst = verify.random_instance("f-plain-formula", {"universe": 2}, seed, target=target)
    f, sig, u = parse_fo(print_fo(inst.formula, inst.signature, inst.universe))
    assert f == inst.formula
    assert sig.preds == inst.signature.preds and sig.funcs == inst.signature.funcs
    assert u == inst.universe


def test_disjunction_head():
    (r,) = parse_asp("p | -q :- r.").rules
    assert r.head == ("p", "~q")
    assert parse_fo("p | q.")[0] == Or(Atom("p"), Atom("q"))


def test_grounded_sneg_program_prints_solver_profile():
    prog = instantiate(builtin_corpus("bw-sneg21", blocks=2, steps=1).text)
    text = print_asp(prog)
    assert "-On(b1,b2,0) :- On(b1,table,0)." in text
    assert "{Move(b1,table,0)}." in text
    assert "~" not in text


def test_final_period_is_optional_for_formulas():
    assert parse_fo("{f=1}")[0] == parse_fo("{f=1}.")[0]
    assert parse_mv("const f : {1,2,3}.\n{f=1} & f=2") == parse_mv("const f : {1,2,3}.\n{f=1} & f=2.")
    with pytest.raises(ParseError):
        parse_fo("{f=1} {f=2}")
