import json

import pytest
from hypothesis import given, settings, strategies as st

from fsneg import fosm, verify, xlate
from fsneg.ground import builtin_corpus
from fsneg.logic import And, Bot, CapExceeded, Imp, check_complete_on, LogicError, Signature, evaluate, make_interpretation
from fsneg.mvsm import FALSE, TRUE
from fsneg.syntax import parse_fo


def _choice_instance(truth=None):
    f, sig, u = parse_fo(builtin_corpus("f-choice").meta["fo"])
    return verify.FoInstance(f, sig, u, (), "f", "b", truth=truth)


def test_example4_fails_without_plainness_check():
    rep = verify.check_theorem("Ex4", None)
    assert rep.verdict == "fail"
    assert rep.theorem == "Ex4"
    assert rep.counterexample["direction"].startswith("(I)")
    assert rep.details["violations"] >= 1


def test_example4_rejected_with_plainness_check():
    rep = verify.check_theorem("T3", verify.example4_instance())
    assert rep.verdict == "precondition"
    assert "plain" in rep.details["reason"]


def test_example4_alternate_witness():
    f, sig, u = builtin_corpus("example4").artifact
    bundle = xlate.sneg_to_boolfunc(f, "p", "b", ["f", "g"], sig, force=True)
    i = make_interpretation(sig, u, {"p": ["1"], "~p": ["2"]}, {"f": "1", "g": "2"})
    c_src = ("p", "~p", "f", "g")
    assert fosm.is_stable(f, c_src, i)
    j = xlate.sneg_bf_map(i, "p", "b", ("1", "2"), bundle.signature)
    assert j.funcs["b"] == {("1",): "1", ("2",): "2"}
    c_tgt = ("b", "f", "g")
    hsig = fosm.hatted_signature(j.signature, c_tgt)
    witness = {"b": {("1",): "2", ("2",): "1"}, "f": {(): "2"}, "g": {(): "1"}}
    test = And(fosm.lt_formula(c_tgt, j.signature), fosm.star_transform(bundle.formula, c_tgt))
    assert evaluate(test, fosm.extend_hatted(j, witness, hsig))
    assert not fosm.is_stable(bundle.formula, c_tgt, j)


def test_choice_function_to_boolean_with_pinned_carriers():
    rep = verify.check_theorem("T5", _choice_instance(("1", "2")))
    assert rep.passed
    assert rep.details["source_stable"] == 1
    assert rep.details["target_stable"] == 1


def test_coincident_truth_values_are_reported_not_matched():
    rep = verify.check_theorem("T5", _choice_instance())
    assert rep.passed
    # every carrier pair t != f gives one image; TRUE = FALSE gives extra
    # stable models that no source interpretation maps to
    assert rep.details["target_stable"] == 6
    assert rep.details["coincident_truth_models"] == 3


def test_coincident_truth_model_is_stable():
    f, sig, u = parse_fo(builtin_corpus("f-choice").meta["fo"])
    bundle = xlate.func_to_boolfunc(f, "f", "b", [], sig)
    full = bundle.conjoined("UE")
    j = make_interpretation(bundle.signature, u, funcs={"b": {"1": "3", "2": "3", "3": "3"}, TRUE: "3", FALSE: "3"})
    assert fosm.is_stable(full, ["b"], j)
    assert verify.oracle_fo_is_stable(full, ["b"], j)


def test_choice_function_to_predicate():
    rep = verify.check_theorem("T6", _choice_instance())
    assert rep.passed and rep.details["target_stable"] == 1


def test_transition_program_theorem1():
    rep = verify.check_theorem("T1", builtin_corpus("transition8").artifact)
    assert rep.passed
    assert rep.details["complete_answer_sets"] == 4 and rep.details["mv_stable"] == 4


def test_two_valued_example():
    rep = verify.check_theorem("T-tv2sm", builtin_corpus("tvlp-ex10").artifact)
    assert rep.passed and rep.details["tvlp_stable"] == 1


def test_aliases_and_unknown_theorems():
    rep = verify.check_theorem("Cor3", _choice_instance(("1", "2")))
    assert rep.theorem == "T5"
    with pytest.raises(LogicError):
        verify.check_theorem("T9", _choice_instance())


def test_report_record_is_json():
    rep = verify.check_theorem("T6", _choice_instance())
    rec = json.loads(json.dumps(rep.record()))
    assert rec["verdict"] == "pass" and rec["theorem"] == "T6"
    assert len(rec["digest"]) == 12


def test_digest_is_stable():
    assert verify.digest(_choice_instance()) == verify.digest(_choice_instance())
    assert verify.digest(_choice_instance()) != verify.digest(_choice_instance(("1", "2")))


def test_cross_check_detects_missing_and_extra():
    rep = verify.cross_check([1, 2], [2, 3], lambda x: x + 1)
    assert rep.passed
    bad = verify.cross_check([1, 2], [2], lambda x: x + 1)
    assert not bad.passed
    clash = verify.cross_check([1, 2], [5], lambda x: 5)
    assert clash.counterexample["direction"] == "not injective"


def test_fo_oracle_refuses_large_spaces():
    sig = Signature({"q": 3})
    i = make_interpretation(sig, ("1", "2", "3"), {"q": []})
    top = Imp(Bot(), Bot())
    assert verify.oracle_fo_is_stable(top, [], i, cap=10)
    with pytest.raises(CapExceeded):
        verify.oracle_fo_is_stable(top, ["q"], i, cap=10)


def test_asp_oracle_refuses_many_atoms():
    prog = builtin_corpus("bw-sneg21").artifact
    with pytest.raises(CapExceeded):
        verify.oracle("asp", prog)


def test_random_instances_are_reproducible():
    a = verify.random_instance("f-plain-formula", {"universe": 2}, 7, target="p")
    b = verify.random_instance("f-plain-formula", {"universe": 2}, 7, target="p")
    assert a == b
    with pytest.raises(LogicError):
        verify.random_instance("nothing")


def test_blocks_world_one_block():
    bw = verify.blocks_world_pipeline(1, 1)
    assert bw.report.passed and bw.uec_report.passed and bw.sneg21_report.passed
    assert len(bw.fo_models) == 3


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.sampled_from(["T3", "T4", "T5", "T6"]))
def test_corollaries_hold_on_random_instances(seed, theorem):
    target = {"T3": "p", "T4": "b", "T5": "f", "T6": "f"}[theorem]
    inst = verify.random_instance("f-plain-formula", {"universe": 2}, seed, target=target)
    rep = verify.check_theorem(theorem, inst, seed=seed)
    assert rep.passed, str(rep)


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_double_negation_replacement_on_random_instances(seed):
    rep = verify.check_theorem("T2", verify.random_dneg_instance(seed, {"universe": 2}))
    assert rep.passed, str(rep)


def test_boolean_to_strong_negation_has_incomplete_stable_models():
    inst = verify.random_instance("f-plain-formula", {"universe": 2}, 29, target="b")
    rep = verify.check_theorem("T4", inst)
    assert rep.passed
    assert rep.details["source_stable"] == 0
    assert rep.details["target_stable"] == 1 and rep.details["target_stable_complete"] == 0
    bundle = xlate.boolfunc_to_sneg(inst.formula, "b", "bp", inst.intensional, inst.signature)
    c = ("bp", "~bp") + tuple(inst.intensional)
    (j,) = fosm.stable_models(bundle.formula, c, bundle.signature, inst.universe)
    assert verify.oracle_fo_is_stable(bundle.formula, c, j)
    assert not check_complete_on(j, "bp")
