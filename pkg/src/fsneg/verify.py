"""Cross-checks between the semantics, definition-level oracles and random
instance generation.

Every check enumerates a bounded space exhaustively.  A failing check
re-derives its counterexample with the oracles below before reporting it,
so a harness bug cannot manufacture a refutation.
"""

from __future__ import annotations

import hashlib
import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import fosm, mvsm, progsem, xlate
from .ground import builtin_corpus, fo_to_literals, propositionalize, value_second
from .logic import (
    BOT,
    DEFAULT_CAP,
    TOP,
    And,
    Atom,
    Bot,
    CapExceeded,
    Eq,
    Exists,
    FoInterpretation,
    Fn,
    Formula,
    Iff,
    Imp,
    LogicError,
    Not,
    Or,
    PreconditionError,
    Signature,
    Var,
    atoms_of,
    check_coherent,
    check_complete_on,
    conj,
    enumerate_interpretations,
    evaluate,
    forall,
    free_vars,
    is_negative,
    negative,
    positive,
)
from .mvsm import FALSE, TRUE, MvSignature, Val
from .progsem import Program, Rule, TvProgram, TvRule
from .syntax import print_asp, print_fo, print_mv, print_tvlp

ORACLE_LITERALS = 20
ORACLE_FO_SPACE = 100_000

THEOREMS = ("T1", "T2", "T3", "T4", "T5", "T6", "T-tv2sm", "Ex4")
ALIASES = {"Cor1": "T3", "Cor2": "T4", "Cor3": "T5", "Cor4": "T6", "tv2sm": "T-tv2sm"}


# ---------------------------------------------------------------------------
# Reports and instances


@dataclass
class CheckReport:
    theorem: str
    instance: str
    digest: str
    verdict: str  # "pass" | "fail" | "precondition"
    counterexample: Optional[Dict[str, str]] = None
    cases: int = 0
    seconds: float = 0.0
    seed: Optional[int] = None
    bounds: Dict[str, object] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def record(self) -> Dict[str, object]:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "digest": self.digest,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "cases": self.cases,
            "seconds": round(self.seconds, 6),
            "seed": self.seed,
            "bounds": self.bounds,
            "details": self.details,
        }

    def __str__(self) -> str:
        lines = [f"{self.theorem} [{self.digest}] {self.verdict.upper()} ({self.cases} cases, {self.seconds:.3f}s)"]
        for k, v in sorted(self.details.items()):
            if k != "violations":
                lines.append(f"  {k}: {v}")
        if self.counterexample:
            for k, v in self.counterexample.items():
                lines.append(f"  {k}: {v}")
        return "\n".join(lines)


@dataclass
class FoInstance:
    """A first-order sentence with its bounded search space.

    ``intensional`` lists the intensional constants other than ``target``;
    ``fresh`` names what a translation introduces.  ``truth`` pins the
    TRUE/FALSE carriers; by default every pair of distinct elements is used.
    """

    formula: Formula
    signature: Signature
    universe: Tuple[str, ...]
    intensional: Tuple[str, ...] = ()
    target: Optional[str] = None
    fresh: Optional[str] = None
    path: Optional[Tuple[str, ...]] = None
    replacement: Optional[Formula] = None
    truth: Optional[Tuple[str, str]] = None

    def describe(self) -> str:
        parts = [print_fo(self.formula, self.signature, self.universe)]
        parts.append(f"intensional {', '.join(self.intensional) or '-'}; target {self.target}; fresh {self.fresh}")
        if self.path is not None:
            parts.append(f"path {'/'.join(self.path) or '.'}; replacement {self.replacement}")
        if self.truth:
            parts.append(f"truth {self.truth}")
        return "\n".join(parts)


def describe_instance(inst) -> str:
    if isinstance(inst, FoInstance):
        return inst.describe()
    if isinstance(inst, Program):
        return print_asp(inst, declare_atoms=True)
    if isinstance(inst, TvProgram):
        return print_tvlp(inst)
    if isinstance(inst, tuple) and len(inst) == 2 and isinstance(inst[1], MvSignature):
        return print_mv(*inst)
    return repr(inst)


def digest(inst) -> str:
    return hashlib.sha256(describe_instance(inst).encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Oracles: direct transcriptions of the definitions, no shortcuts


def _all_relations(arity, universe):
    tuples = list(itertools.product(universe, repeat=arity))
    for bits in itertools.product((False, True), repeat=len(tuples)):
        yield frozenset(t for t, b in zip(tuples, bits) if b)


def _all_maps(arity, universe):
    args = list(itertools.product(universe, repeat=arity))
    for vals in itertools.product(universe, repeat=len(args)):
        yield dict(zip(args, vals))


def oracle_fo_is_stable(f: Formula, c: Sequence[str], i: FoInterpretation, cap: int = ORACLE_FO_SPACE) -> bool:
    """I ⊨ F ∧ ¬∃ĉ(ĉ<c ∧ F*(ĉ)), with ĉ ranging over every relation and map."""
    if not evaluate(f, i):
        return False
    sig = i.signature
    n = len(i.universe)
    size = 1
    for name in c:
        k = sig.arity(name)
        size *= 2 ** (n**k) if name in sig.preds else n ** (n**k)
    if size > cap:
        raise CapExceeded("oracle hatted space", size, cap)
    hsig = fosm.hatted_signature(sig, c)
    test = And(fosm.lt_formula(c, sig), fosm.star_transform(f, c))
    choices = [
        list(_all_relations(sig.preds[name], i.universe)) if name in sig.preds else list(_all_maps(sig.funcs[name], i.universe))
        for name in c
    ]
    for combo in itertools.product(*choices):
        if evaluate(test, fosm.extend_hatted(i, dict(zip(c, combo)), hsig)):
            return False
    return True


def _oracle_fo(f, c, sig, universe, cap):
    out = []
    for i in enumerate_interpretations(sig, universe, cap=cap):
        if check_coherent(i) and oracle_fo_is_stable(f, c, i, cap):
            out.append(i)
    return sorted(out, key=lambda m: m.key())


def _closed(x, rules) -> bool:
    return all(not set(r.pos) <= x or any(h in x for h in r.head) for r in rules)


def _gl_reduct_rules(prog: Program, x) -> List[Rule]:
    out = []
    for r in prog.rules:
        nneg = r.nneg + ((r.head[0],) if r.choice and r.head[0] not in r.nneg else ())
        if any(l in x for l in r.neg) or any(l not in x for l in nneg):
            continue
        out.append(Rule(r.head, r.pos))
    return out


def _oracle_asp(prog: Program, cap: int):
    """Answer sets by the original definition: X is an answer set iff X is a
    minimal set closed under Π^X, where closed sets are consistent or Lit."""
    atoms = sorted(prog.atoms)
    if 2 * len(atoms) > ORACLE_LITERALS:
        raise CapExceeded("oracle literal count", 2 * len(atoms), ORACLE_LITERALS)
    lit = frozenset(atoms) | frozenset(negative(a) for a in atoms)
    candidates = [
        frozenset(a if v else negative(a) for a, v in zip(atoms, choice) if v is not None)
        for choice in itertools.product((None, True, False), repeat=len(atoms))
    ] + [lit]

    def ok(y, rules):
        return _closed(y, rules) and (progsem.is_consistent(y) or y == lit)

    found = []
    for x in candidates:
        rules = _gl_reduct_rules(prog, x)
        if not ok(x, rules):
            continue
        items = sorted(x)
        minimal = True
        for r in range(len(items)):
            for sub in itertools.combinations(items, r):
                if ok(frozenset(sub), rules):
                    minimal = False
                    break
            if not minimal:
                break
        if minimal:
            found.append(x)
    inconsistent = lit in found
    models = [x for x in found if x != lit]
    return progsem.AnswerSets(progsem._sort_sets(models), inconsistent)


def _mv_reduct_oracle(f, i):
    if not mvsm.mv_satisfies(f, i):
        return BOT
    if isinstance(f, (Val, Bot)):
        return f
    return type(f)(_mv_reduct_oracle(f.left, i), _mv_reduct_oracle(f.right, i))


def _oracle_mv(f, sig: MvSignature, cap: int):
    if sig.space() > cap:
        raise CapExceeded("oracle mv space", sig.space(), cap)
    names = sorted(sig)
    space = [dict(zip(names, vals)) for vals in itertools.product(*(sig[c] for c in names))]
    out = []
    for i in space:
        red = _mv_reduct_oracle(f, i)
        models = [j for j in space if mvsm.mv_satisfies(red, j)]
        if models == [i]:
            out.append(i)
    return out


def _oracle_tvlp(prog: TvProgram, cap: int):
    atoms = sorted(prog.atoms)
    if 2 * len(atoms) > ORACLE_LITERALS:
        raise CapExceeded("oracle literal count", 2 * len(atoms), ORACLE_LITERALS)
    out = []
    for bits in itertools.product((True, False), repeat=len(atoms)):
        true = {a for a, b in zip(atoms, bits) if b}
        lits = progsem.literals_of(true, atoms)
        core = [Rule((r.head,), r.body) for r in prog.rules if progsem.prop_eval(r.cond, true)]
        if not _closed(lits, core):
            continue
        items = sorted(lits)
        if any(
            _closed(frozenset(sub), core) for k in range(len(items)) for sub in itertools.combinations(items, k)
        ):
            continue
        out.append(lits)
    return progsem._sort_sets(out)


def oracle(semantics: str, artifact, cap: int = ORACLE_FO_SPACE):
    """Model list by definition transcription.

    asp: Program -> AnswerSets; mv: (formula, MvSignature) -> list of dicts;
    tvlp: TvProgram -> list of literal sets; fosm: FoInstance -> list of
    interpretations (intensional constants plus ``target``).
    """
    if semantics == "asp":
        return _oracle_asp(artifact, cap)
    if semantics == "mv":
        f, sig = artifact
        return _oracle_mv(f, sig, cap)
    if semantics == "tvlp":
        return _oracle_tvlp(artifact, cap)
    if semantics == "fosm":
        inst = artifact
        c = _full_c(inst)
        return _oracle_fo(inst.formula, c, inst.signature, inst.universe, cap)
    raise LogicError(f"unknown semantics {semantics!r}")


def _full_c(inst: FoInstance) -> Tuple[str, ...]:
    c = list(inst.intensional)
    if inst.target:
        names = [inst.target]
        if inst.target in inst.signature.preds:
            names = [positive(inst.target), negative(inst.target)]
        c = [n for n in names if n not in c] + c
    return tuple(c)


# ---------------------------------------------------------------------------
# Counterexample re-verification


def _fo_recheck(f, c, i, claimed: bool, cap) -> bool:
    """Re-derive a stability verdict with the oracle (or the witness)."""
    v = fosm.is_stable(f, c, i, cap)
    if not claimed and v.status == "not-minimal":
        hsig = fosm.hatted_signature(i.signature, c)
        test = And(fosm.lt_formula(c, i.signature), fosm.star_transform(f, c))
        return evaluate(test, fosm.extend_hatted(i, v.witness, hsig))
    if not claimed and v.status == "not-model":
        return not evaluate(f, i)
    return oracle_fo_is_stable(f, c, i, cap) == claimed


def _witness_text(w) -> str:
    if w is None:
        return "-"
    parts = []
    for k, v in sorted(w.items()):
        if isinstance(v, dict):
            parts.append(f"{k}^=" + "{" + ", ".join(f"{','.join(a) or '()'}:{x}" for a, x in sorted(v.items())) + "}")
        else:
            parts.append(f"{k}^=" + "{" + ", ".join(",".join(t) or "()" for t in sorted(v)) + "}")
    return "; ".join(parts)


# ---------------------------------------------------------------------------
# Theorem checks


class _Run:
    def __init__(self, theorem, inst, seed, bounds):
        self.theorem = theorem
        self.inst = inst
        self.t0 = time.perf_counter()
        self.cases = 0
        self.violations: List[Dict[str, str]] = []
        self.details: Dict[str, object] = {}
        self.seed = seed
        self.bounds = dict(bounds or {})
        # how a violation was confirmed before being recorded, if it was
        self.reverified: Optional[str] = None

    def violate(self, **info):
        if self.reverified:
            info["reverified"] = self.reverified
        self.violations.append({k: str(v) for k, v in info.items()})

    def report(self, verdict=None) -> CheckReport:
        if verdict is None:
            verdict = "fail" if self.violations else "pass"
        if self.violations:
            self.details["violations"] = len(self.violations)
        return CheckReport(
            self.theorem,
            describe_instance(self.inst).splitlines()[0][:80] if describe_instance(self.inst) else "",
            digest(self.inst),
            verdict,
            self.violations[0] if self.violations else None,
            self.cases,
            time.perf_counter() - self.t0,
            self.seed,
            self.bounds,
            self.details,
        )


def _carriers(inst: FoInstance):
    if inst.truth:
        return [tuple(inst.truth)]
    return [(t, f) for t in inst.universe for f in inst.universe if t != f]


def _check_t1(run: _Run, prog: Program, cap):
    ans = progsem.answer_sets(prog, cap)
    atoms = sorted(prog.atoms)
    complete = {x for x in ans.models if progsem.is_complete(x, atoms)}
    f = xlate.pi_to_mv(prog)
    sig = MvSignature.boolean(atoms)
    mv = mvsm.mv_stable_models(f, sig, cap)
    images = {xlate.mv_to_lits(i) for i in mv}
    run.cases = sig.space()
    run.details.update(answer_sets=len(ans), complete_answer_sets=len(complete), mv_stable=len(mv),
                       inconsistent=ans.inconsistent)
    for x in sorted(complete - images, key=sorted):
        i = xlate.lits_to_mv(x, atoms)
        if not mvsm.mv_is_stable(f, i, sig, cap) and x in oracle("asp", prog).models:
            run.violate(direction="answer set, not mv-stable", literals=sorted(x))
    for x in sorted(images - complete, key=sorted):
        if x not in oracle("asp", prog).models:
            run.violate(direction="mv-stable, not an answer set", literals=sorted(x))
    return run.report()


def _equiv_closure(h, h2):
    return forall(sorted(free_vars(h) | free_vars(h2)), Iff(h, h2))


def _check_t2(run: _Run, inst: FoInstance, cap):
    f = inst.formula
    h = xlate.subformula_at(f, inst.path).left
    f2 = xlate.dneg_rewrite(f, inst.path, inst.replacement)
    c = _full_c(inst)
    eq = _equiv_closure(h, inst.replacement)
    same = 0
    for i in enumerate_interpretations(inst.signature, inst.universe, cap=cap):
        if not check_coherent(i) or not evaluate(eq, i):
            continue
        same += 1
        a = bool(fosm.is_stable(f, c, i, cap))
        b = bool(fosm.is_stable(f2, c, i, cap))
        if a != b and _fo_recheck(f, c, i, a, cap) and _fo_recheck(f2, c, i, b, cap):
            run.violate(direction=f"original {'stable' if a else 'not stable'}, rewritten {'stable' if b else 'not stable'}",
                        interpretation=i)
    run.cases = same
    run.details["equivalent_interpretations"] = same
    return run.report()


def _check_t3(run: _Run, inst: FoInstance, cap, force):
    p = positive(inst.target)
    b = inst.fresh or f"{p}_b"
    try:
        bundle = xlate.sneg_to_boolfunc(inst.formula, p, b, inst.intensional, inst.signature, force=force)
    except xlate.PlainnessError as e:
        run.details["reason"] = str(e)
        return run.report("precondition")
    c_src = (p, negative(p)) + tuple(inst.intensional)
    c_tgt = (b,) + tuple(inst.intensional)
    f_src = inst.formula
    f_tgt = bundle.formula
    carriers = _carriers(inst)
    for t, fv in carriers:
        if t not in inst.universe or fv not in inst.universe:
            raise PreconditionError(f"carriers {(t, fv)} are not universe elements")
    # (I) per interpretation complete on p
    stable_src = []
    for i in enumerate_interpretations(inst.signature, inst.universe, cap=cap):
        if not check_coherent(i) or not check_complete_on(i, p):
            continue
        a = bool(fosm.is_stable(f_src, c_src, i, cap))
        if a:
            stable_src.append(i)
        for tr in carriers:
            run.cases += 1
            j = xlate.sneg_bf_map(i, p, b, tr, bundle.signature)
            v = fosm.is_stable(f_tgt, c_tgt, j, cap)
            if a != bool(v) and _fo_recheck(f_src, c_src, i, a, cap) and _fo_recheck(f_tgt, c_tgt, j, bool(v), cap):
                run.violate(direction="(I) source stable, image not stable" if a else "(I) image stable, source not stable",
                            interpretation=i, image=j, witness=_witness_text(v.witness))
    # (II) stable models of F^b ∧ BC are exactly the images
    full = bundle.conjoined("BC")
    tgt_models = set(fosm.stable_models(full, c_tgt, bundle.signature, inst.universe, cap=cap))
    if inst.truth:
        tgt_models = {j for j in tgt_models if (j.funcs[TRUE][()], j.funcs[FALSE][()]) == tuple(inst.truth)}
    images = {xlate.sneg_bf_map(i, p, b, tr, bundle.signature) for i in stable_src for tr in carriers}
    for j in sorted(tgt_models - images, key=lambda m: m.key()):
        if _fo_recheck(full, c_tgt, j, True, cap):
            run.violate(direction="(II) stable with BC, not an image", interpretation=j)
    for j in sorted(images - tgt_models, key=lambda m: m.key()):
        if _fo_recheck(full, c_tgt, j, False, cap):
            run.violate(direction="(II) image, not stable with BC", interpretation=j)
    run.details.update(source_stable_complete=len(stable_src), target_stable=len(tgt_models), carriers=len(carriers))
    return run.report()


def _check_t4(run: _Run, inst: FoInstance, cap):
    b = inst.target
    p = inst.fresh or f"{b}_p"
    try:
        bundle = xlate.boolfunc_to_sneg(inst.formula, b, p, inst.intensional, inst.signature)
    except LogicError as e:
        run.details["reason"] = str(e)
        return run.report("precondition")
    bc = bundle.constraints["BC"]
    f_src = And(inst.formula, bc)
    c_src = (b,) + tuple(inst.intensional)
    c_tgt = (p, negative(p)) + tuple(inst.intensional)
    stable_src = []
    for i in enumerate_interpretations(inst.signature, inst.universe, cap=cap):
        if not evaluate(bc, i):
            continue
        run.cases += 1
        a = bool(fosm.is_stable(f_src, c_src, i, cap))
        if a:
            stable_src.append(i)
        j = xlate.bf_sneg_map(i, b, p, bundle.signature)
        v = fosm.is_stable(bundle.formula, c_tgt, j, cap)
        if a != bool(v) and _fo_recheck(f_src, c_src, i, a, cap) and _fo_recheck(bundle.formula, c_tgt, j, bool(v), cap):
            run.violate(direction="(I) source stable, image not stable" if a else "(I) image stable, source not stable",
                        interpretation=i, image=j, witness=_witness_text(v.witness))
    tgt = fosm.stable_models(bundle.formula, c_tgt, bundle.signature, inst.universe, cap=cap)
    complete = {j for j in tgt if check_complete_on(j, p)}
    images = {xlate.bf_sneg_map(i, b, p, bundle.signature) for i in stable_src}
    for j in sorted(complete - images, key=lambda m: m.key()):
        if _fo_recheck(bundle.formula, c_tgt, j, True, cap):
            run.violate(direction="(II) complete stable model, not an image", interpretation=j)
    for j in sorted(images - complete, key=lambda m: m.key()):
        if _fo_recheck(bundle.formula, c_tgt, j, False, cap):
            run.violate(direction="(II) image, not stable", interpretation=j)
    run.details.update(source_stable=len(stable_src), target_stable=len(tgt), target_stable_complete=len(complete))
    return run.report()


def _check_functional(run: _Run, inst: FoInstance, cap, kind: str):
    fname = inst.target
    if len(inst.universe) < 2:
        run.details["reason"] = "the universe needs two distinct elements"
        return run.report("precondition")
    if kind == "bf":
        b = inst.fresh or f"{fname}_b"
        bundle = xlate.func_to_boolfunc(inst.formula, fname, b, inst.intensional, inst.signature)
        c_tgt = (b,) + tuple(inst.intensional)
        carriers = _carriers(inst)

        def images(i):
            return [xlate.f_bf_map(i, fname, b, tr, bundle.signature) for tr in carriers]
    else:
        p = inst.fresh or f"{fname}_p"
        bundle = xlate.func_to_pred(inst.formula, fname, p, inst.intensional, inst.signature)
        c_tgt = (p, negative(p)) + tuple(inst.intensional)

        def images(i):
            return [xlate.f_pred_map(i, fname, p, bundle.signature)]

    c_src = (fname,) + tuple(inst.intensional)
    full = bundle.conjoined("UE")
    stable_src = []
    for i in enumerate_interpretations(inst.signature, inst.universe, cap=cap):
        if not check_coherent(i):
            continue
        a = bool(fosm.is_stable(inst.formula, c_src, i, cap))
        if a:
            stable_src.append(i)
        for j in images(i):
            run.cases += 1
            v = fosm.is_stable(full, c_tgt, j, cap)
            if a != bool(v) and _fo_recheck(inst.formula, c_src, i, a, cap) and _fo_recheck(full, c_tgt, j, bool(v), cap):
                run.violate(direction="(I) source stable, image not stable" if a else "(I) image stable, source not stable",
                            interpretation=i, image=j, witness=_witness_text(v.witness))
    tgt = set(fosm.stable_models(full, c_tgt, bundle.signature, inst.universe, cap=cap))
    if kind == "bf":
        # models where TRUE and FALSE coincide have no preimage; they are
        # counted but kept out of the correspondence
        same = {j for j in tgt if j.funcs[TRUE][()] == j.funcs[FALSE][()]}
        run.details["coincident_truth_models"] = len(same)
        tgt -= same
        if inst.truth:
            tgt = {j for j in tgt if (j.funcs[TRUE][()], j.funcs[FALSE][()]) == tuple(inst.truth)}
    imgs = {j for i in stable_src for j in images(i)}
    for j in sorted(tgt - imgs, key=lambda m: m.key()):
        if _fo_recheck(full, c_tgt, j, True, cap):
            run.violate(direction="(II) stable with UE, not an image", interpretation=j)
    for j in sorted(imgs - tgt, key=lambda m: m.key()):
        if _fo_recheck(full, c_tgt, j, False, cap):
            run.violate(direction="(II) image, not stable with UE", interpretation=j)
    run.details.update(source_stable=len(stable_src), target_stable=len(tgt))
    return run.report()


def _check_tv2sm(run: _Run, prog: TvProgram, cap):
    tv = progsem.tvlp_stable_models(prog, cap)
    f = xlate.tv_to_sm(prog)
    atoms = sorted(prog.atoms)
    sig = MvSignature.boolean(atoms)
    mv = mvsm.mv_stable_models(f, sig, cap)
    left = {mvsm.freeze(xlate.lits_to_mv(x, atoms)) for x in tv}
    right = {mvsm.freeze(i) for i in mv}
    run.cases = sig.space()
    run.details.update(tvlp_stable=len(tv), mv_stable=len(mv))
    ora_tv = {mvsm.freeze(xlate.lits_to_mv(x, atoms)) for x in oracle("tvlp", prog)}
    ora_mv = {mvsm.freeze(i) for i in oracle("mv", (f, sig))}
    for i in sorted(left - right):
        if i in ora_tv and i not in ora_mv:
            run.violate(direction="tvlp-stable, image not mv-stable", interpretation=dict(i))
    for i in sorted(right - left):
        if i in ora_mv and i not in ora_tv:
            run.violate(direction="mv-stable, not the image of a tvlp stable model", interpretation=dict(i))
    return run.report()


def example4_instance() -> FoInstance:
    f, sig, universe = builtin_corpus("example4").artifact
    return FoInstance(f, sig, universe, ("f", "g"), "p", "b", truth=("1", "2"))


def check_theorem(
    theorem: str,
    instance,
    cap: int = DEFAULT_CAP,
    force: bool = False,
    seed: Optional[int] = None,
    bounds: Optional[Dict[str, object]] = None,
) -> CheckReport:
    """Exhaustively verify one theorem on one instance.

    T1 and T-tv2sm take programs; T2-T6 take a FoInstance.  ``Ex4`` runs T3
    on the non-plain example with enforcement disabled.
    """
    theorem = ALIASES.get(theorem, theorem)
    if theorem == "Ex4":
        instance = instance or example4_instance()
        rep = check_theorem("T3", instance, cap, force=True, seed=seed, bounds=bounds)
        rep.theorem = "Ex4"
        return rep
    run = _Run(theorem, instance, seed, bounds)
    run.reverified = "oracle" if theorem in ("T1", "T-tv2sm") else "evaluate"
    if theorem == "T1":
        return _check_t1(run, instance, cap)
    if theorem == "T-tv2sm":
        return _check_tv2sm(run, instance, cap)
    if not isinstance(instance, FoInstance):
        raise LogicError(f"{theorem} needs a first-order instance")
    if theorem == "T2":
        return _check_t2(run, instance, cap)
    if theorem == "T3":
        return _check_t3(run, instance, cap, force)
    if theorem == "T4":
        return _check_t4(run, instance, cap)
    if theorem == "T5":
        return _check_functional(run, instance, cap, "bf")
    if theorem == "T6":
        return _check_functional(run, instance, cap, "pred")
    raise LogicError(f"unknown theorem {theorem!r}; known: {', '.join(THEOREMS)}")


# ---------------------------------------------------------------------------
# Bijection checks


def _norm(m):
    if isinstance(m, dict):
        return mvsm.freeze(m)
    return m


def cross_check(
    models_a: Iterable,
    models_b: Iterable,
    mapping: Callable,
    name: str = "cross-check",
) -> CheckReport:
    """Check that ``mapping`` is a bijection from models_a onto models_b."""
    run = _Run(name, name, None, None)
    a = list(models_a)
    b = {_norm(m) for m in models_b}
    seen = {}
    for m in a:
        run.cases += 1
        try:
            img = _norm(mapping(m))
        except PreconditionError as e:
            run.violate(direction="map undefined", model=m, reason=e)
            continue
        if img in seen:
            run.violate(direction="not injective", model=m, other=seen[img])
        seen[img] = m
        if img not in b:
            run.violate(direction="image is not a model on the right", model=m, image=img)
    for m in sorted(b - set(seen), key=str):
        run.violate(direction="right model without a preimage", model=m)
    run.details.update(left=len(a), right=len(b))
    return run.report()


def solve(artifact, semantics: str, cap: int = DEFAULT_CAP):
    """Models under the optimized path, in the shapes ``oracle`` returns."""
    if semantics == "asp":
        return progsem.answer_sets(artifact, cap)
    if semantics == "mv":
        f, sig = artifact
        return mvsm.mv_stable_models(f, sig, cap)
    if semantics == "tvlp":
        return progsem.tvlp_stable_models(artifact, cap)
    if semantics == "fosm":
        inst = artifact
        return fosm.stable_models(inst.formula, _full_c(inst), inst.signature, inst.universe, cap=cap)
    raise LogicError(f"unknown semantics {semantics!r}")


# ---------------------------------------------------------------------------
# Blocks World pipeline


@dataclass
class BlocksWorld:
    fo_models: list
    ue_program: Program
    uec_program: Program
    ue_answer_sets: list
    uec_answer_sets: list
    report: CheckReport
    uec_report: CheckReport
    sneg21_report: CheckReport


def eliminate_functions(theory, rename: Optional[Dict[str, str]] = None, emit_uec: bool = False):
    """Eliminate every ground function of a theory in favour of a predicate pair.

    ``rename`` maps a function's base name to the predicate's (``Loc`` to
    ``On``); unmapped names get a ``_p`` suffix.  Returns (formula, UE parts,
    UEC parts, chain) where ``chain`` lists the (function, predicate, output
    signature) steps the interpretation map follows.
    """
    rename = rename or {}
    f, sig = theory.formula, theory.signature
    funcs = sorted(sig.funcs)
    ue, uec, chain = [], [], []
    for k, fn in enumerate(funcs):
        base, paren, rest_args = fn.partition("(")
        pname = rename.get(base, base + "_p") + paren + rest_args
        bundle = xlate.func_to_pred(f, fn, pname, funcs[k + 1 :], sig, emit_uec=emit_uec)
        f, sig = bundle.formula, bundle.signature
        ue.append(bundle.constraints["UE"])
        if emit_uec:
            uec.append(bundle.constraints["UEC"])
        chain.append((fn, pname, sig))
    return f, ue, uec, chain


def _ground_program(f, universe, atoms):
    prop = propositionalize(f, universe, value_second)
    return xlate.formula_to_program(prop, atoms)


def blocks_world_pipeline(blocks: int = 2, steps: int = 1, cap: int = DEFAULT_CAP) -> BlocksWorld:
    """Stable models of the functional Blocks World against answer sets of its
    predicate emission, and the UE against the UEC emission."""
    t0 = time.perf_counter()
    theory = builtin_corpus("bw-func", blocks=blocks, steps=steps).artifact
    fo_models = fosm.stable_models(theory.formula, theory.intensional, theory.signature, theory.universe, cap=cap)
    f, ue, uec, chain = eliminate_functions(theory, {"Loc": "On"}, emit_uec=True)
    inst = builtin_corpus("bw-sneg21", blocks=blocks, steps=steps).artifact
    atoms = sorted(inst.atoms)
    ue_prog = _ground_program(conj([f] + ue), theory.universe, atoms)
    uec_prog = _ground_program(conj([f] + uec), theory.universe, atoms)
    ue_sets = progsem.answer_sets(ue_prog, cap)
    uec_sets = progsem.answer_sets(uec_prog, cap)

    def image(i):
        for fn, pname, sig in chain:
            i = xlate.f_pred_map(i, fn, pname, sig)
        return fo_to_literals(i, value_second)

    rep = cross_check(fo_models, ue_sets.models, image, "T6-blocks-world")
    rep.bounds = {"blocks": blocks, "steps": steps}
    rep.details.update(fo_stable=len(fo_models), ue_answer_sets=len(ue_sets), inconsistent=ue_sets.inconsistent)

    def erase(x):
        return frozenset(l for l in x if not (is_negative(l) and positive(l).startswith("On(")))

    rep2 = cross_check(ue_sets.models, uec_sets.models, erase, "UEC-blocks-world")
    rep2.bounds = dict(rep.bounds)
    rep2.details.update(uec_answer_sets=len(uec_sets))
    # the printed strong-negation program lacks the existence rule; adding it
    # back as a filter must give the same answer sets
    hand = progsem.answer_sets(inst, cap)
    heads = [pname for _, pname, _ in chain]

    def exists_all(x):
        return all(any(value_second(h, (v,)) in x for v in theory.universe) for h in heads)

    filtered = [x for x in hand.models if exists_all(x)]
    rep3 = cross_check(filtered, ue_sets.models, lambda x: x, "sneg21-blocks-world")
    rep3.bounds = dict(rep.bounds)
    rep3.details.update(answer_sets=len(hand), with_existence=len(filtered))
    rep.seconds = time.perf_counter() - t0
    return BlocksWorld(fo_models, ue_prog, uec_prog, ue_sets.models, uec_sets.models, rep, rep2, rep3)


# ---------------------------------------------------------------------------
# Random instances


def _pick(rng, seq):
    return seq[rng.randrange(len(seq))]


def _random_program(rng, n_atoms, n_rules) -> Program:
    atoms = [f"a{k}" for k in range(n_atoms)]
    lits = atoms + [negative(a) for a in atoms]
    rules = []
    for _ in range(rng.randint(1, n_rules)):
        kind = rng.random()
        body = {"pos": [], "neg": [], "nneg": []}
        for _ in range(rng.randint(0, 2)):
            g = _pick(rng, ("pos", "pos", "neg", "neg", "nneg"))
            l = _pick(rng, lits)
            if l not in body[g]:
                body[g].append(l)
        args = (tuple(body["pos"]), tuple(body["neg"]), tuple(body["nneg"]))
        if kind < 0.6:
            rules.append(Rule((_pick(rng, lits),), *args))
        elif kind < 0.72:
            h = rng.sample(lits, 2)
            rules.append(Rule(tuple(h), *args))
        elif kind < 0.88:
            rules.append(Rule((_pick(rng, lits),), *args, choice=True))
        else:
            rules.append(Rule((), *args))
    return Program(tuple(rules), frozenset(atoms))


def _random_mv(rng, n_consts, depth):
    sig = {}
    for k in range(n_consts):
        sig[f"c{k}"] = _pick(rng, (mvsm.BOOL, ("1", "2"), ("1", "2", "3"), ("1",)))
    sig = MvSignature(sig)
    names = sorted(sig)

    def gen(d):
        r = rng.random()
        if d == 0 or r < 0.3:
            if rng.random() < 0.08:
                return BOT
            c = _pick(rng, names)
            return Val(c, _pick(rng, sig[c]))
        if r < 0.45:
            return Not(gen(d - 1))
        if r < 0.55:
            g = gen(d - 1)
            return Or(g, Not(g))
        cls = _pick(rng, (And, Or, Imp, Imp))
        return cls(gen(d - 1), gen(d - 1))

    f = conj([gen(depth) for _ in range(rng.randint(1, 2))])
    return f, sig


def _random_cond(rng, atoms, depth):
    r = rng.random()
    if depth == 0 or r < 0.35:
        if r < 0.05:
            return TOP
        a = Atom(_pick(rng, atoms))
        return Not(a) if rng.random() < 0.4 else a
    if r < 0.5:
        return Not(_random_cond(rng, atoms, depth - 1))
    return _pick(rng, (And, Or, Imp))(_random_cond(rng, atoms, depth - 1), _random_cond(rng, atoms, depth - 1))


def _random_tv(rng, n_atoms, n_rules) -> TvProgram:
    atoms = [f"a{k}" for k in range(n_atoms)]
    lits = atoms + [negative(a) for a in atoms]
    rules = []
    for _ in range(rng.randint(1, n_rules)):
        body = tuple(dict.fromkeys(_pick(rng, lits) for _ in range(rng.randint(0, 2))))
        cond = TOP if rng.random() < 0.3 else _random_cond(rng, atoms, 2)
        rules.append(TvRule(_pick(rng, lits), body, cond))
    return TvProgram(tuple(rules), frozenset(atoms))


def _random_fo(rng, target: str, universe_size: int, n_rules: int) -> FoInstance:
    """A sentence built from rule-shaped conjuncts whose function atoms are
    always ``f(t)=u`` with ``t``, ``u`` object constants or variables."""
    universe = tuple(str(k) for k in range(1, universe_size + 1))
    preds: Dict[str, int] = {"r": 0}
    funcs: Dict[str, int] = {}
    intensional = ["r"]
    atoms = []
    vars_ = ["X", "Y"]

    def obj():
        return Var(_pick(rng, vars_)) if rng.random() < 0.5 else Fn(_pick(rng, universe))

    if target == "f":
        arity = 1 if universe_size == 2 and rng.random() < 0.3 else 0
        funcs["f"] = arity
        atoms.append(lambda: Eq(Fn("f", tuple(obj() for _ in range(funcs["f"]))), obj()))
        atoms.append(atoms[-1])
    if target == "p":
        n = _pick(rng, (0, 1))
        preds.update({"q": n, "~q": n})
        atoms.append(lambda: Atom("q", tuple(obj() for _ in range(preds["q"]))))
        atoms.append(lambda: Atom("~q", tuple(obj() for _ in range(preds["q"]))))
    if target == "b":
        n = _pick(rng, (0, 1))
        funcs.update({"b": n, TRUE: 0, FALSE: 0})
        atoms.append(lambda: Eq(Fn("b", tuple(obj() for _ in range(funcs["b"]))), _pick(rng, (xlate.TRUE_C, xlate.FALSE_C))))
        atoms.append(atoms[-1])
    if rng.random() < 0.5:
        funcs["g"] = 0
        intensional.append("g")
        atoms.append(lambda: Eq(Fn("g"), obj()))
    if target != "p" and rng.random() < 0.4:
        preds["s"] = 1
        intensional.append("s")
        atoms.append(lambda: Atom("s", (obj(),)))
    atoms.append(lambda: Atom("r"))
    if rng.random() < 0.3:
        atoms.append(lambda: Eq(obj(), obj()))

    def member():
        a = _pick(rng, atoms)()
        r = rng.random()
        return Not(a) if r < 0.25 else Not(Not(a)) if r < 0.35 else a

    def choice(a):
        return Or(a, Not(a))

    # a seed conjunct that makes stable models likely
    parts = []
    xs = tuple(Var("X") for _ in range(max(preds.get("q", 0), funcs.get("f", 0), funcs.get("b", 0))))
    if rng.random() < 0.85:
        if target == "f":
            parts.append(forall([v.name for v in xs], choice(Eq(Fn("f", xs), Fn(_pick(rng, universe))))))
        elif target == "p":
            q = Atom("q", xs)
            parts.append(forall([v.name for v in xs], And(choice(q), Imp(Not(q), Atom("~q", xs)))))
        else:
            t = Eq(Fn("b", xs), xlate.TRUE_C)
            parts.append(forall([v.name for v in xs], And(choice(t), Imp(Not(t), Eq(Fn("b", xs), xlate.FALSE_C)))))
    if "g" in funcs and rng.random() < 0.7:
        parts.append(choice(Eq(Fn("g"), Fn(_pick(rng, universe)))))
    for _ in range(rng.randint(1, n_rules)):
        body = [member() for _ in range(rng.randint(0, 2))]
        kind = rng.random()
        if kind < 0.45:
            head = _pick(rng, atoms)()
        elif kind < 0.8:
            a = _pick(rng, atoms)()
            head = Or(a, Not(a))
        elif kind < 0.9:
            head = Or(_pick(rng, atoms)(), _pick(rng, atoms)())
        else:
            head = BOT
        g = Imp(conj(body), head) if body else head
        fv = sorted(free_vars(g))
        if fv and rng.random() < 0.25:
            g = forall(fv[:-1], Exists(fv[-1], g))
        else:
            g = forall(fv, g)
        parts.append(g)
    f = conj(parts)
    sig = Signature(preds, funcs, frozenset(universe))
    tgt = {"f": "f", "p": "q", "b": "b"}[target]
    return FoInstance(f, sig, universe, tuple(intensional), tgt, {"f": "fb", "p": "qb", "b": "bp"}[target])


def random_instance(kind: str, size: Optional[Dict[str, int]] = None, seed: int = 0, target: str = "f"):
    """Reproducible random instance.

    program-sneg: Program; mv-formula: (formula, MvSignature);
    tv-program: TvProgram; f-plain-formula: FoInstance whose ``target`` is a
    function ``f`` (T5/T6), a pair ``q``/``~q`` (T3) or a Boolean ``b`` (T4).
    """
    size = dict(size or {})
    rng = random.Random(f"{kind}:{target}:{seed}")
    if kind == "program-sneg":
        return _random_program(rng, size.get("atoms", 3), size.get("rules", 5))
    if kind == "mv-formula":
        return _random_mv(rng, size.get("constants", 2), size.get("depth", 3))
    if kind == "tv-program":
        return _random_tv(rng, size.get("atoms", 2), size.get("rules", 3))
    if kind == "f-plain-formula":
        return _random_fo(rng, target, size.get("universe", 2), size.get("rules", 3))
    raise LogicError(f"unknown instance kind {kind!r}")


def random_dneg_instance(seed: int, size: Optional[Dict[str, int]] = None) -> FoInstance:
    """An f-plain sentence with a chosen ¬H position and a replacement H′."""
    rng = random.Random(f"dneg:{seed}")
    for attempt in itertools.count():
        inst = random_instance("f-plain-formula", size, seed * 1000 + attempt, target="f")
        paths = xlate.negation_paths(inst.formula)
        if paths:
            break
    path = _pick(rng, paths)
    h = xlate.subformula_at(inst.formula, path).left
    r = rng.random()
    if r < 0.25:
        h2 = And(h, TOP)
    elif r < 0.4:
        h2 = Not(Not(h))
    elif r < 0.5:
        h2 = Or(BOT, h)
    else:
        # an atom of the sentence; only interpretations where the two agree
        # are checked
        cands = [g for g in atoms_of(inst.formula) if free_vars(g) <= free_vars(h)]
        h2 = _pick(rng, cands) if cands else Not(Not(h))
    c = inst.intensional
    if rng.random() < 0.3:
        c = tuple(x for x in c if rng.random() < 0.5)
    return FoInstance(inst.formula, inst.signature, inst.universe, c, "f", None, path, h2)
