"""The functional stable model operator SM[F; c] over finite universes.

Second-order quantification over the hatted constants is realised by
exhaustive enumeration.  Predicates are only ever hatted with subsets of
their current extension, which is exactly the ``ĉ^pred <= c^pred`` guard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence

from .logic import (
    DEFAULT_CAP,
    And,
    Atom,
    Bot,
    CapExceeded,
    Eq,
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
    check_coherent,
    conj,
    enumerate_interpretations,
    evaluate,
    forall,
    is_sentence,
)

HAT = "^"


def hat(name: str) -> str:
    return name + HAT


def intensional_list(sig: Signature, c: Sequence[str]) -> tuple:
    c = tuple(c)
    if len(set(c)) != len(c):
        raise LogicError(f"duplicate intensional constants in {c}")
    for name in c:
        if name not in sig.preds and name not in sig.funcs:
            raise LogicError(f"intensional constant {name} is not declared")
    return c


def hatted_signature(sig: Signature, c: Sequence[str]) -> Signature:
    preds = dict(sig.preds)
    funcs = dict(sig.funcs)
    for name in c:
        h = hat(name)
        if h in preds or h in funcs or h in sig.rigid:
            raise LogicError(f"hatted name {h} collides with a declared constant")
        if name in sig.preds:
            preds[h] = sig.preds[name]
        else:
            funcs[h] = sig.funcs[name]
    # hatted negative predicates are free-standing copies, not strong negations
    plain = {k: v for k, v in preds.items() if not k.endswith(HAT)}
    out = Signature(plain, funcs, sig.rigid)
    object.__setattr__(out, "preds", preds)
    return out


def _hat_term(t, cs):
    if isinstance(t, Var):
        return t
    name = hat(t.name) if t.name in cs else t.name
    return Fn(name, tuple(_hat_term(a, cs) for a in t.args))


def _mentions(t, cs) -> bool:
    if isinstance(t, Var):
        return False
    return t.name in cs or any(_mentions(a, cs) for a in t.args)


def star_transform(f: Formula, c: Sequence[str]) -> Formula:
    """F*(ĉ) with the atomic base case F' ∧ F."""
    cs = frozenset(c)

    def star(g):
        if isinstance(g, Bot):
            return g
        if isinstance(g, Atom):
            if g.pred not in cs and not any(_mentions(a, cs) for a in g.args):
                return g
            name = hat(g.pred) if g.pred in cs else g.pred
            return And(Atom(name, tuple(_hat_term(a, cs) for a in g.args)), g)
        if isinstance(g, Eq):
            if not (_mentions(g.left, cs) or _mentions(g.right, cs)):
                return g
            return And(Eq(_hat_term(g.left, cs), _hat_term(g.right, cs)), g)
        if isinstance(g, And):
            return And(star(g.left), star(g.right))
        if isinstance(g, Or):
            return Or(star(g.left), star(g.right))
        if isinstance(g, Imp):
            return And(Imp(star(g.left), star(g.right)), g)
        return type(g)(g.var, star(g.body))

    return star(f)


def star_transform_pred(f: Formula, c: Sequence[str]) -> Formula:
    """F*(u) with the predicate-only base case p(t)* = u(t)."""
    cs = frozenset(c)

    def star(g):
        if isinstance(g, Atom):
            return Atom(hat(g.pred), g.args) if g.pred in cs else g
        if isinstance(g, (Bot, Eq)):
            return g
        if isinstance(g, And):
            return And(star(g.left), star(g.right))
        if isinstance(g, Or):
            return Or(star(g.left), star(g.right))
        if isinstance(g, Imp):
            return And(Imp(star(g.left), star(g.right)), g)
        return type(g)(g.var, star(g.body))

    return star(f)


def _xs(n: int) -> List[str]:
    return [f"X{k}" for k in range(1, n + 1)]


def lt_formula(c: Sequence[str], sig: Signature) -> Formula:
    """ĉ < c, i.e. (ĉ^pred <= c^pred) ∧ ¬(ĉ = c)."""
    le, eq = [], []
    for name in c:
        if name in sig.preds:
            xs = _xs(sig.preds[name])
            args = tuple(Var(x) for x in xs)
            u, p = Atom(hat(name), args), Atom(name, args)
            le.append(forall(xs, Imp(u, p)))
            eq.append(forall(xs, Iff(u, p)))
        else:
            xs = _xs(sig.funcs[name])
            args = tuple(Var(x) for x in xs)
            eq.append(forall(xs, Eq(Fn(hat(name), args), Fn(name, args))))
    if not le:
        return Not(conj(eq))
    return And(conj(le), Not(conj(eq)))


@dataclass
class Verdict:
    status: str  # "stable" | "not-model" | "not-minimal"
    witness: Optional[Dict[str, object]] = field(default=None)

    def __bool__(self) -> bool:
        return self.status == "stable"


def hatted_assignments(
    i: FoInterpretation, c: Sequence[str], cap: int = DEFAULT_CAP
) -> Iterator[Dict[str, object]]:
    """All ĉ with ĉ^pred <= c^pred and ĉ != c, as {name: relation | map}."""
    sig = i.signature
    n = len(i.universe)
    size = 1
    per = []
    for name in c:
        if name in sig.preds:
            ext = sorted(i.preds[name])
            size *= 2 ** len(ext)
            per.append([frozenset(s) for s in _subsets(ext)])
        else:
            k = sig.funcs[name]
            size *= n ** (n**k)
            args = list(itertools.product(i.universe, repeat=k))
            per.append([dict(zip(args, vals)) for vals in itertools.product(i.universe, repeat=len(args))])
    if size > cap:
        raise CapExceeded("hatted assignment enumeration", size, cap)
    current = [i.preds[name] if name in sig.preds else i.funcs[name] for name in c]
    for combo in itertools.product(*per):
        if all(a == b for a, b in zip(combo, current)):
            continue
        yield dict(zip(c, combo))


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def extend_hatted(i: FoInterpretation, assignment: Dict[str, object], hsig: Signature) -> FoInterpretation:
    preds = dict(i.preds)
    funcs = dict(i.funcs)
    for name, v in assignment.items():
        if name in i.signature.preds:
            preds[hat(name)] = v
        else:
            funcs[hat(name)] = v
    return FoInterpretation(hsig, i.universe, preds, funcs)


def is_stable(f: Formula, c: Sequence[str], i: FoInterpretation, cap: int = DEFAULT_CAP) -> Verdict:
    """Decide I |= SM[F; c]; on failure of minimality return a witness ĉ."""
    if not is_sentence(f):
        raise PreconditionError("SM is defined for sentences only")
    c = intensional_list(i.signature, c)
    if not check_coherent(i):
        raise PreconditionError("incoherent interpretation")
    if not evaluate(f, i):
        return Verdict("not-model")
    hsig = hatted_signature(i.signature, c)
    fstar = star_transform(f, c)
    for a in hatted_assignments(i, c, cap):
        if evaluate(fstar, extend_hatted(i, a, hsig)):
            return Verdict("not-minimal", a)
    return Verdict("stable")


def stable_models(
    f: Formula,
    c: Sequence[str],
    sig: Signature,
    universe: Sequence[str],
    fixed: Optional[FoInterpretation] = None,
    cap: int = DEFAULT_CAP,
) -> List[FoInterpretation]:
    """All coherent c-stable models of ``f`` extending ``fixed``, canonically ordered."""
    out = []
    for i in enumerate_interpretations(sig, universe, fixed, cap):
        if not check_coherent(i) or not evaluate(f, i):
            continue
        if is_stable(f, c, i, cap):
            out.append(i)
    return sorted(out, key=lambda m: m.key())


def classical_models(f: Formula, sig: Signature, universe, fixed=None, cap: int = DEFAULT_CAP):
    return sorted(
        (i for i in enumerate_interpretations(sig, universe, fixed, cap) if evaluate(f, i)),
        key=lambda m: m.key(),
    )
