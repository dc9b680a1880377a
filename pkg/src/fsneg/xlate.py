"""Translations between strong negation, Boolean functions, non-Boolean
functions, multi-valued formulas and two-valued programs, together with the
interpretation maps that relate their models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .logic import (
    TOP,
    And,
    Atom,
    Bot,
    Eq,
    Exists,
    FoInterpretation,
    Forall,
    Fn,
    Formula,
    Iff,
    Imp,
    LogicError,
    Neq,
    Not,
    Or,
    PreconditionError,
    Signature,
    Var,
    atoms_of,
    check_coherent,
    check_complete_on,
    constants_of,
    conj,
    disj,
    exists,
    flatten_and,
    forall,
    is_negative,
    is_not,
    map_atoms,
    negative,
    positive,
    signature_of,
    subterms,
)
from .mvsm import FALSE, TRUE, MvSignature, Val
from .progsem import Program, Rule, TvProgram, expand_choice

TRUE_C = Fn(TRUE)
FALSE_C = Fn(FALSE)


class PlainnessError(LogicError):
    def __init__(self, report: "PlainnessReport"):
        super().__init__(f"formula is not {','.join(report.targets)}-plain: " + "; ".join(
            f"{f} in {a}" for f, a in report.offending))
        self.report = report


@dataclass
class PlainnessReport:
    targets: Tuple[str, ...]
    offending: List[Tuple[str, Formula]] = field(default_factory=list)

    @property
    def plain(self) -> bool:
        return not self.offending

    def __bool__(self) -> bool:
        return self.plain


def _contains(t, name: str) -> bool:
    return any(isinstance(s, Fn) and s.name == name for s in subterms(t))


def check_plain(f: Formula, cs: Iterable[str], sig: Optional[Signature] = None) -> PlainnessReport:
    """c-plainness: every function in ``cs`` occurs only as ``f(t) = u``
    with ``f`` absent from ``t`` and ``u``."""
    sig = sig or signature_of(f)
    funcs = tuple(c for c in cs if c in sig.funcs)
    report = PlainnessReport(funcs)
    for a in atoms_of(f):
        terms = a.args if isinstance(a, Atom) else (a.left, a.right)
        for name in funcs:
            if not any(_contains(t, name) for t in terms):
                continue
            ok = (
                isinstance(a, Eq)
                and isinstance(a.left, Fn)
                and a.left.name == name
                and not any(_contains(t, name) for t in a.left.args)
                and not _contains(a.right, name)
            )
            if not ok:
                report.offending.append((name, a))
    return report


def _require_plain(f, cs, sig, force):
    rep = check_plain(f, cs, sig)
    if not rep.plain and not force:
        raise PlainnessError(rep)
    return rep


@dataclass
class TranslationBundle:
    formula: Formula
    signature: Signature
    map_id: str
    constraints: Dict[str, Formula] = field(default_factory=dict)
    bridge: Optional[Formula] = None
    side: Dict[str, Formula] = field(default_factory=dict)

    def conjoined(self, *names: str) -> Formula:
        """The translated formula with the named side constraints conjoined."""
        return conj([self.formula] + [self.constraints[n] for n in names])


def _xs(n: int, prefix="X") -> List[str]:
    return [f"{prefix}{k}" for k in range(1, n + 1)]


def _with_truth(sig: Signature) -> Signature:
    funcs = dict(sig.funcs)
    for t in (TRUE, FALSE):
        if t in sig.preds or t in sig.rigid:
            raise LogicError(f"{t} is already declared")
        funcs[t] = 0
    return Signature(sig.preds, funcs, sig.rigid)


def _fresh(sig: Signature, *names: str) -> None:
    for n in names:
        if n in sig.preds or n in sig.funcs or n in sig.rigid:
            raise LogicError(f"fresh name {n} collides with the signature")


# ---------------------------------------------------------------------------
# Strong negation <-> Boolean functions


def sneg_to_boolfunc(
    f: Formula,
    p: str,
    b: str,
    c: Sequence[str] = (),
    sig: Optional[Signature] = None,
    force: bool = False,
) -> TranslationBundle:
    """Replace ~p(t) by b(t)=FALSE, then p(t) by b(t)=TRUE."""
    sig = sig or signature_of(f)
    p = positive(p)
    if p not in sig.pairs:
        raise LogicError(f"predicate {p} has no negative counterpart")
    base = sig.without(p, negative(p))
    _fresh(base, b)
    rep = _require_plain(f, c, sig, force)
    n = sig.preds[p]

    def sub_neg(a):
        if isinstance(a, Atom) and a.pred == negative(p):
            return Eq(Fn(b, a.args), FALSE_C)
        return a

    def sub_pos(a):
        if isinstance(a, Atom) and a.pred == p:
            return Eq(Fn(b, a.args), TRUE_C)
        return a

    out = map_atoms(map_atoms(f, sub_neg), sub_pos)
    xs = _xs(n)
    args = tuple(Var(x) for x in xs)
    bx = Fn(b, args)
    bc = And(Neq(TRUE_C, FALSE_C), Not(Not(forall(xs, Or(Eq(bx, TRUE_C), Eq(bx, FALSE_C))))))
    bridge = forall(xs, And(Iff(Atom(p, args), Eq(bx, TRUE_C)), Iff(Atom(negative(p), args), Eq(bx, FALSE_C))))
    osig = _with_truth(Signature(base.preds, {**base.funcs, b: n}, base.rigid))
    bundle = TranslationBundle(out, osig, "sneg→bf", {"BC": bc}, bridge)
    bundle.side["plainness"] = rep
    return bundle


def boolfunc_to_sneg(
    f: Formula,
    b: str,
    p: str,
    c: Sequence[str] = (),
    sig: Optional[Signature] = None,
) -> TranslationBundle:
    """Replace b(t)=TRUE by p(t) and b(t)=FALSE by ~p(t)."""
    sig = sig or signature_of(f)
    p = positive(p)
    if b not in sig.funcs:
        raise LogicError(f"{b} is not a function constant")
    _require_plain(f, (b,) + tuple(c), sig, False)
    for a in atoms_of(f):
        terms = a.args if isinstance(a, Atom) else (a.left, a.right)
        if any(_contains(t, b) for t in terms):
            if not (isinstance(a, Eq) and a.right in (TRUE_C, FALSE_C)):
                raise LogicError(f"atom {a} is not of the form {b}(t)=TRUE or {b}(t)=FALSE")
    n = sig.funcs[b]
    base = sig.without(b)
    _fresh(base, p, negative(p))

    def sub(a):
        if isinstance(a, Eq) and isinstance(a.left, Fn) and a.left.name == b:
            return Atom(p if a.right == TRUE_C else negative(p), a.left.args)
        return a

    out = map_atoms(f, sub)
    if not constants_of(out)[1] & {TRUE, FALSE}:
        base = base.without(TRUE, FALSE)
    xs = _xs(n)
    args = tuple(Var(x) for x in xs)
    bx = Fn(b, args)
    bridge = forall(xs, And(Iff(Atom(p, args), Eq(bx, TRUE_C)), Iff(Atom(negative(p), args), Eq(bx, FALSE_C))))
    osig = Signature({**base.preds, p: n, negative(p): n}, base.funcs, base.rigid)
    bc = And(Neq(TRUE_C, FALSE_C), Not(Not(forall(xs, Or(Eq(bx, TRUE_C), Eq(bx, FALSE_C))))))
    return TranslationBundle(out, osig, "bf→sneg", {"BC": bc}, bridge)


# ---------------------------------------------------------------------------
# Non-Boolean functions


def _func_sub(f: Formula, fname: str, make):
    def sub(a):
        if isinstance(a, Eq) and isinstance(a.left, Fn) and a.left.name == fname:
            return make(a.left.args, a.right)
        return a

    return map_atoms(f, sub)


def func_to_boolfunc(
    f: Formula,
    fname: str,
    b: str,
    c: Sequence[str] = (),
    sig: Optional[Signature] = None,
) -> TranslationBundle:
    """Replace f(t)=u by b(t,u)=TRUE; emits UE_b."""
    sig = sig or signature_of(f)
    if fname not in sig.funcs:
        raise LogicError(f"{fname} is not a function constant")
    _require_plain(f, (fname,) + tuple(c), sig, False)
    n = sig.funcs[fname]
    base = sig.without(fname)
    _fresh(base, b)
    out = _func_sub(f, fname, lambda args, u: Eq(Fn(b, args + (u,)), TRUE_C))
    xs = _xs(n)
    x = tuple(Var(v) for v in xs)
    y, z = Var("Y"), Var("Z")
    ue1 = forall(xs + ["Y", "Z"], Imp(And(Neq(y, z), Eq(Fn(b, x + (y,)), TRUE_C)), Eq(Fn(b, x + (z,)), FALSE_C)))
    ue2 = Not(Not(forall(xs, Exists("Y", Eq(Fn(b, x + (y,)), TRUE_C)))))
    fx = Fn(fname, x)
    bridge = forall(
        xs + ["Y"],
        And(Iff(Eq(fx, y), Eq(Fn(b, x + (y,)), TRUE_C)), Iff(Neq(fx, y), Eq(Fn(b, x + (y,)), FALSE_C))),
    )
    osig = _with_truth(Signature(base.preds, {**base.funcs, b: n + 1}, base.rigid))
    bundle = TranslationBundle(out, osig, "f→bf", {"UE": And(ue1, ue2)}, bridge)
    bundle.side["nontrivial"] = exists(["X", "Y"], Neq(Var("X"), Var("Y")))
    return bundle


def func_to_pred(
    f: Formula,
    fname: str,
    p: str,
    c: Sequence[str] = (),
    sig: Optional[Signature] = None,
    emit_uec: bool = False,
) -> TranslationBundle:
    """Replace f(t)=u by p(t,u); emits UE_p and optionally the UEC pair."""
    sig = sig or signature_of(f)
    if fname not in sig.funcs:
        raise LogicError(f"{fname} is not a function constant")
    _require_plain(f, (fname,) + tuple(c), sig, False)
    n = sig.funcs[fname]
    base = sig.without(fname)
    _fresh(base, p, negative(p))
    out = _func_sub(f, fname, lambda args, u: Atom(p, args + (u,)))
    xs = _xs(n)
    x = tuple(Var(v) for v in xs)
    y, z = Var("Y"), Var("Z")
    exist = Not(Not(forall(xs, Exists("Y", Atom(p, x + (y,))))))
    ue1 = forall(xs + ["Y", "Z"], Imp(And(Neq(y, z), Atom(p, x + (y,))), Atom(negative(p), x + (z,))))
    constraints = {"UE": And(ue1, exist)}
    if emit_uec:
        uec1 = forall(xs + ["Y", "Z"], Not(conj([Neq(y, z), Atom(p, x + (y,)), Atom(p, x + (z,))])))
        constraints["UEC"] = And(uec1, exist)
    fx = Fn(fname, x)
    bridge = And(
        forall(xs + ["Y"], Iff(Eq(fx, y), Atom(p, x + (y,)))),
        forall(xs + ["Y"], Iff(Neq(fx, y), Atom(negative(p), x + (y,)))),
    )
    osig = Signature({**base.preds, p: n + 1, negative(p): n + 1}, base.funcs, base.rigid)
    bundle = TranslationBundle(out, osig, "f→pred", constraints, bridge)
    bundle.side["nontrivial"] = exists(["X", "Y"], Neq(Var("X"), Var("Y")))
    return bundle


# ---------------------------------------------------------------------------
# Programs to multi-valued formulas


def tr_literal(lit: str) -> Val:
    return Val(positive(lit), FALSE if is_negative(lit) else TRUE)


def pi_to_mv(prog: Program) -> Formula:
    """Each rule becomes body -> head with not as negation over c=TRUE/FALSE atoms."""
    parts = []
    for r in prog.rules:
        r = expand_choice(r)
        body = (
            [tr_literal(l) for l in r.pos]
            + [Not(tr_literal(l)) for l in r.neg]
            + [Not(Not(tr_literal(l))) for l in r.nneg]
        )
        head = disj([tr_literal(l) for l in r.head])
        parts.append(Imp(conj(body), head) if body else head)
    return conj(parts)


def mv_signature_of(prog) -> MvSignature:
    return MvSignature.boolean(sorted(prog.atoms))


def tr_formula(g: Formula) -> Formula:
    """Tr: ¬A becomes A=FALSE and A becomes A=TRUE."""
    if isinstance(g, Atom):
        if is_negative(g.pred):
            return Val(positive(g.pred), FALSE)
        return Val(g.pred, TRUE)
    if is_not(g) and isinstance(g.left, Atom):
        return Val(g.left.pred, FALSE)
    if isinstance(g, Bot):
        return g
    if isinstance(g, (And, Or, Imp)):
        return type(g)(tr_formula(g.left), tr_formula(g.right))
    raise LogicError(f"not a propositional formula: {g!r}")


def tv_to_sm(prog: TvProgram) -> Formula:
    parts = []
    for r in prog.rules:
        body = [] if r.cond == TOP else [Not(Not(tr_formula(r.cond)))]
        body += [tr_literal(l) for l in r.body]
        head = tr_literal(r.head)
        parts.append(Imp(conj(body), head) if body else head)
    return conj(parts)


# ---------------------------------------------------------------------------
# Program <-> formula


def program_to_formula(prog: Program) -> Formula:
    """The FOL-representation of a ground program over 0-ary predicates."""
    parts = []
    for r in prog.rules:
        r = expand_choice(r)
        body = (
            [Atom(l) for l in r.pos]
            + [Not(Atom(l)) for l in r.neg]
            + [Not(Not(Atom(l))) for l in r.nneg]
        )
        head = disj([Atom(l) for l in r.head])
        parts.append(Imp(conj(body), head) if body else head)
    return conj(parts)


def program_signature(prog: Program) -> Signature:
    preds = {}
    for a in prog.atoms:
        preds[a] = 0
        preds[negative(a)] = 0
    return Signature(preds)


def _body_members(g: Formula) -> List[Tuple[str, str]]:
    """Classify a body conjunct as [('pos'|'neg'|'nneg', literal), ...]."""
    if g == TOP:
        return []
    if isinstance(g, Atom) and not g.args:
        return [("pos", g.pred)]
    if is_not(g):
        inner = g.left
        if isinstance(inner, Atom) and not inner.args:
            return [("neg", inner.pred)]
        if is_not(inner) and isinstance(inner.left, Atom) and not inner.left.args:
            return [("nneg", inner.left.pred)]
        if isinstance(inner, (Or, Bot)):
            # ¬(A1 ∨ ... ∨ An) is not A1, ..., not An
            return [("neg", l) for l in _head_lits(inner)]
    raise LogicError(f"body member {g!r} is not a literal with at most two negations")


def _head_lits(g: Formula) -> Tuple[str, ...]:
    if isinstance(g, Bot):
        return ()
    if isinstance(g, Or):
        return _head_lits(g.left) + _head_lits(g.right)
    if isinstance(g, Atom) and not g.args:
        return (g.pred,)
    raise LogicError(f"head {g!r} is not a disjunction of literals")


def _choice_lit(g: Formula) -> Optional[str]:
    if isinstance(g, Or) and is_not(g.right) and g.right.left == g.left and isinstance(g.left, Atom):
        return g.left.pred
    return None


def formula_to_rule(g: Formula) -> Optional[Rule]:
    """Read one rule-shaped ground formula; TOP yields None."""
    if g == TOP:
        return None
    body, head = (g.left, g.right) if isinstance(g, Imp) else (TOP, g)
    groups = {"pos": [], "neg": [], "nneg": []}
    for m in flatten_and(body):
        for kind, lit in _body_members(m):
            if lit not in groups[kind]:
                groups[kind].append(lit)
    pos, neg, nneg = (tuple(groups[k]) for k in ("pos", "neg", "nneg"))
    lit = _choice_lit(head)
    if lit is not None:
        return Rule((lit,), pos, neg, nneg, choice=True)
    return Rule(_head_lits(head), pos, neg, nneg)


def formula_to_program(f: Formula, atoms: Iterable[str] = ()) -> Program:
    """Read a ground conjunction of rule-shaped formulas back as a program."""
    rules = []
    for g in flatten_and(f):
        r = formula_to_rule(g)
        if r is not None:
            rules.append(r)
    return Program(tuple(rules), frozenset(positive(a) for a in atoms))


# ---------------------------------------------------------------------------
# Interpretation maps


def _truth(i: FoInterpretation, truth):
    if truth is None:
        truth = (TRUE, FALSE)
    t, f = truth
    if t not in i.universe or f not in i.universe:
        raise PreconditionError(f"truth carriers {truth} must be universe elements")
    if t == f:
        raise PreconditionError("TRUE and FALSE must denote distinct elements")
    return t, f


def sneg_bf_map(i: FoInterpretation, p: str, b: str, truth=None, osig: Signature = None) -> FoInterpretation:
    p = positive(p)
    if not check_coherent(i):
        raise PreconditionError("interpretation is not coherent")
    if not check_complete_on(i, p):
        raise PreconditionError(f"interpretation is not complete on {p}")
    t, f = _truth(i, truth)
    n = i.signature.preds[p]
    pos = i.preds[p]
    bmap = {args: (t if args in pos else f) for args in itertools.product(i.universe, repeat=n)}
    sig = osig or _with_truth(Signature(i.signature.without(p, negative(p)).preds, {**i.signature.funcs, b: n}, i.signature.rigid))
    preds = {k: v for k, v in i.preds.items() if k not in (p, negative(p))}
    funcs = {**i.funcs, b: bmap, TRUE: {(): t}, FALSE: {(): f}}
    return FoInterpretation(sig, i.universe, preds, funcs)


def bf_sneg_map(i: FoInterpretation, b: str, p: str, osig: Signature = None) -> FoInterpretation:
    t, f = i.funcs[TRUE][()], i.funcs[FALSE][()]
    if t == f:
        raise PreconditionError("TRUE and FALSE coincide")
    bmap = i.funcs[b]
    if any(v not in (t, f) for v in bmap.values()):
        raise PreconditionError(f"{b} is not Boolean")
    p = positive(p)
    n = i.signature.funcs[b]
    base = i.signature.without(b)
    sig = osig or Signature({**base.preds, p: n, negative(p): n}, base.funcs, base.rigid)
    preds = {**i.preds, p: {a for a, v in bmap.items() if v == t}, negative(p): {a for a, v in bmap.items() if v == f}}
    funcs = {k: v for k, v in i.funcs.items() if k != b and k in sig.funcs}
    return FoInterpretation(sig, i.universe, preds, funcs)


def f_bf_map(i: FoInterpretation, fname: str, b: str, truth=None, osig: Signature = None) -> FoInterpretation:
    if len(i.universe) < 2:
        raise PreconditionError("the universe needs two distinct elements")
    t, f = _truth(i, truth)
    n = i.signature.funcs[fname]
    fmap = i.funcs[fname]
    bmap = {}
    for args in itertools.product(i.universe, repeat=n):
        for v in i.universe:
            bmap[args + (v,)] = t if fmap[args] == v else f
    base = i.signature.without(fname)
    sig = osig or _with_truth(Signature(base.preds, {**base.funcs, b: n + 1}, base.rigid))
    funcs = {k: v for k, v in i.funcs.items() if k != fname}
    funcs.update({b: bmap, TRUE: {(): t}, FALSE: {(): f}})
    return FoInterpretation(sig, i.universe, i.preds, funcs)


def bf_f_map(i: FoInterpretation, b: str, fname: str, osig: Signature = None) -> FoInterpretation:
    t = i.funcs[TRUE][()]
    n = i.signature.funcs[b] - 1
    bmap = i.funcs[b]
    fmap = {}
    for args in itertools.product(i.universe, repeat=n):
        vals = [v for v in i.universe if bmap[args + (v,)] == t]
        if len(vals) != 1:
            raise PreconditionError(f"{b} does not define a total function at {args}")
        fmap[args] = vals[0]
    base = i.signature.without(b, TRUE, FALSE)
    sig = osig or Signature(base.preds, {**base.funcs, fname: n}, base.rigid)
    funcs = {k: v for k, v in i.funcs.items() if k in sig.funcs}
    funcs[fname] = fmap
    return FoInterpretation(sig, i.universe, i.preds, funcs)


def f_pred_map(i: FoInterpretation, fname: str, p: str, osig: Signature = None) -> FoInterpretation:
    if len(i.universe) < 2:
        raise PreconditionError("the universe needs two distinct elements")
    p = positive(p)
    n = i.signature.funcs[fname]
    fmap = i.funcs[fname]
    pos = {args + (fmap[args],) for args in itertools.product(i.universe, repeat=n)}
    neg = {t for t in itertools.product(i.universe, repeat=n + 1) if t not in pos}
    base = i.signature.without(fname)
    sig = osig or Signature({**base.preds, p: n + 1, negative(p): n + 1}, base.funcs, base.rigid)
    funcs = {k: v for k, v in i.funcs.items() if k != fname}
    return FoInterpretation(sig, i.universe, {**i.preds, p: pos, negative(p): neg}, funcs)


def pred_f_map(i: FoInterpretation, p: str, fname: str, osig: Signature = None) -> FoInterpretation:
    p = positive(p)
    n = i.signature.preds[p] - 1
    fmap = {}
    for args in itertools.product(i.universe, repeat=n):
        vals = [v for v in i.universe if args + (v,) in i.preds[p]]
        if len(vals) != 1:
            raise PreconditionError(f"{p} is not functional at {args}")
        fmap[args] = vals[0]
    base = i.signature.without(p, negative(p))
    sig = osig or Signature(base.preds, {**base.funcs, fname: n}, base.rigid)
    preds = {k: v for k, v in i.preds.items() if k not in (p, negative(p))}
    return FoInterpretation(sig, i.universe, preds, {**i.funcs, fname: fmap})


def lits_to_mv(lits: Iterable[str], atoms: Iterable[str]) -> Dict[str, str]:
    """A complete consistent literal set read as a Boolean mv interpretation."""
    lits = set(lits)
    out = {}
    for a in sorted(atoms):
        if a in lits and negative(a) in lits:
            raise PreconditionError(f"inconsistent on {a}")
        if a in lits:
            out[a] = TRUE
        elif negative(a) in lits:
            out[a] = FALSE
        else:
            raise PreconditionError(f"literal set is not complete on {a}")
    return out


def mv_to_lits(i: Mapping[str, str]) -> FrozenSet[str]:
    out = set()
    for a, v in i.items():
        if v == TRUE:
            out.add(a)
        elif v == FALSE:
            out.add(negative(a))
        else:
            raise PreconditionError(f"{a} has non-Boolean value {v}")
    return frozenset(out)


_MAPS = {
    "sneg→bf": sneg_bf_map,
    "bf→sneg": bf_sneg_map,
    "f→bf": f_bf_map,
    "bf→f": bf_f_map,
    "f→pred": f_pred_map,
    "pred→f": pred_f_map,
}

INVERSE = {"sneg→bf": "bf→sneg", "bf→sneg": "sneg→bf", "f→bf": "bf→f", "bf→f": "f→bf", "f→pred": "pred→f", "pred→f": "f→pred"}


def map_interpretation(i, map_id: str, *args, **kw):
    """Dispatch to the named interpretation map.

    ``"tv→mv"``/``"asp→mv"`` take a literal set and the atom list;
    ``"mv→tv"`` takes an mv interpretation.
    """
    if map_id in ("tv→mv", "asp→mv"):
        return lits_to_mv(i, *args, **kw)
    if map_id in ("mv→tv", "mv→asp"):
        return mv_to_lits(i)
    if map_id == "identity":
        return i
    try:
        fn = _MAPS[map_id]
    except KeyError:
        raise LogicError(f"unknown map {map_id}") from None
    return fn(i, *args, **kw)


# ---------------------------------------------------------------------------
# Double negation rewriting


def subformula_at(f: Formula, path: Sequence[str]) -> Formula:
    for step in path:
        f = getattr(f, step)
    return f


def negation_paths(f: Formula, prefix=()) -> List[Tuple[str, ...]]:
    """Paths of every subformula of the form ¬H (H → ⊥)."""
    out = []
    if is_not(f):
        out.append(prefix)
    if isinstance(f, (And, Or, Imp)):
        out += negation_paths(f.left, prefix + ("left",))
        out += negation_paths(f.right, prefix + ("right",))
    elif isinstance(f, (Forall, Exists)):
        out += negation_paths(f.body, prefix + ("body",))
    return out


def dneg_rewrite(f: Formula, path: Sequence[str], h2: Formula) -> Formula:
    """Replace the subformula ¬H at ``path`` with ¬H'."""
    target = subformula_at(f, path)
    if not is_not(target):
        raise LogicError(f"path {tuple(path)} does not address a negation")

    def rebuild(g, steps):
        if not steps:
            return Not(h2)
        step, rest = steps[0], steps[1:]
        if step == "body":
            return type(g)(g.var, rebuild(g.body, rest))
        if step == "left":
            return type(g)(rebuild(g.left, rest), g.right)
        return type(g)(g.left, rebuild(g.right, rest))

    return rebuild(f, tuple(path))
