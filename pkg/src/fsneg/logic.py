"""First-order syntax and Tarskian evaluation over finite universes.

Formulas are built from ``Bot``, ``Atom``, ``Eq``, ``And``, ``Or``, ``Imp``,
``Forall`` and ``Exists``.  Negation and choice are derived forms:
``Not(F)`` is ``Imp(F, Bot())`` and ``Choice(F)`` is ``Or(F, Not(F))``.

Strong negation is not a connective.  A predicate named ``~p`` is the
negative counterpart of ``p``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Sequence, Tuple, Union

DEFAULT_CAP = int(os.environ.get("FSNEG_CAP", 2_000_000))


class LogicError(Exception):
    """Malformed input: arity mismatch, unbound variable, bad signature."""


class CapExceeded(LogicError):
    """A search space is larger than the configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: search space {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class PreconditionError(LogicError):
    pass


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fn:
    """Application of a function constant; object constants have no args."""

    name: str
    args: Tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(map(str, self.args))})"


Term = Union[Var, Fn]


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Bot:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Atom:
    pred: str
    args: Tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{self.left}={self.right}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Bot, Atom, Eq, And, Or, Imp, Forall, Exists]

BOT = Bot()


def Not(f: Formula) -> Formula:
    return Imp(f, BOT)


TOP = Not(BOT)


def Choice(f: Formula) -> Formula:
    return Or(f, Not(f))


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def Neq(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


def conj(parts: Sequence[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is TOP."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts: Sequence[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def forall(vars_: Sequence[str], body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Forall(v, body)
    return body


def exists(vars_: Sequence[str], body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Exists(v, body)
    return body


def is_not(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bot)


def flatten_and(f: Formula) -> list:
    if isinstance(f, And):
        return flatten_and(f.left) + flatten_and(f.right)
    return [f]


def term_vars(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    out: FrozenSet[str] = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Bot):
        return frozenset()
    if isinstance(f, Atom):
        out: FrozenSet[str] = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, (And, Or, Imp)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def map_terms(f: Formula, fn) -> Formula:
    """Rebuild ``f`` applying ``fn`` to every maximal term."""
    if isinstance(f, Bot):
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(fn(a) for a in f.args))
    if isinstance(f, Eq):
        return Eq(fn(f.left), fn(f.right))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(map_terms(f.left, fn), map_terms(f.right, fn))
    return type(f)(f.var, map_terms(f.body, fn))


def map_atoms(f: Formula, fn) -> Formula:
    """Rebuild ``f`` replacing every atomic formula ``a`` (Atom, Eq) with ``fn(a)``."""
    if isinstance(f, Bot):
        return f
    if isinstance(f, (Atom, Eq)):
        return fn(f)
    if isinstance(f, (And, Or, Imp)):
        return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))
    return type(f)(f.var, map_atoms(f.body, fn))


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Fn):
        for a in t.args:
            yield from subterms(a)


def atoms_of(f: Formula) -> Iterator[Formula]:
    if isinstance(f, (Atom, Eq)):
        yield f
    elif isinstance(f, (And, Or, Imp)):
        yield from atoms_of(f.left)
        yield from atoms_of(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from atoms_of(f.body)


def constants_of(f: Formula) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """Return (predicate names, function names) occurring in ``f``."""
    preds, funcs = set(), set()
    for a in atoms_of(f):
        terms = a.args if isinstance(a, Atom) else (a.left, a.right)
        if isinstance(a, Atom):
            preds.add(a.pred)
        for t in terms:
            for s in subterms(t):
                if isinstance(s, Fn):
                    funcs.add(s.name)
    return frozenset(preds), frozenset(funcs)


# ---------------------------------------------------------------------------
# Signatures and interpretations


def is_negative(name: str) -> bool:
    return name.startswith("~")


def positive(name: str) -> str:
    return name[1:] if is_negative(name) else name


def negative(name: str) -> str:
    return name if is_negative(name) else "~" + name


@dataclass(frozen=True)
class Signature:
    """Predicate and function constants with arities.

    ``rigid`` object constants denote the universe element of the same name.
    """

    preds: Mapping[str, int] = field(default_factory=dict)
    funcs: Mapping[str, int] = field(default_factory=dict)
    rigid: FrozenSet[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "preds", dict(self.preds))
        object.__setattr__(self, "funcs", dict(self.funcs))
        object.__setattr__(self, "rigid", frozenset(self.rigid))
        clash = (set(self.preds) & set(self.funcs)) | (set(self.preds) & self.rigid) | (
            set(self.funcs) & self.rigid
        )
        if clash:
            raise LogicError(f"names declared in two categories: {sorted(clash)}")
        for p, n in self.preds.items():
            if is_negative(p):
                q = positive(p)
                if q not in self.preds:
                    raise LogicError(f"negative predicate {p} has no positive counterpart {q}")
                if self.preds[q] != n:
                    raise LogicError(f"{p} and {q} differ in arity")

    @property
    def pairs(self) -> Tuple[str, ...]:
        """Positive predicates that have a declared negative counterpart."""
        return tuple(sorted(positive(p) for p in self.preds if is_negative(p)))

    def arity(self, name: str) -> int:
        if name in self.preds:
            return self.preds[name]
        if name in self.funcs:
            return self.funcs[name]
        if name in self.rigid:
            return 0
        raise LogicError(f"undeclared constant {name}")

    def merge(self, other: "Signature") -> "Signature":
        preds = dict(self.preds)
        funcs = dict(self.funcs)
        for k, v in other.preds.items():
            if preds.get(k, v) != v:
                raise LogicError(f"arity clash on {k}")
            preds[k] = v
        for k, v in other.funcs.items():
            if funcs.get(k, v) != v:
                raise LogicError(f"arity clash on {k}")
            funcs[k] = v
        return Signature(preds, funcs, self.rigid | other.rigid)

    def without(self, *names: str) -> "Signature":
        drop = set(names)
        return Signature(
            {k: v for k, v in self.preds.items() if k not in drop},
            {k: v for k, v in self.funcs.items() if k not in drop},
            self.rigid - drop,
        )

    def check_formula(self, f: Formula) -> None:
        for a in atoms_of(f):
            if isinstance(a, Atom):
                if a.pred not in self.preds:
                    raise LogicError(f"undeclared predicate {a.pred}")
                if self.preds[a.pred] != len(a.args):
                    raise LogicError(f"arity mismatch in {a}")
                terms = a.args
            else:
                terms = (a.left, a.right)
            for t in terms:
                for s in subterms(t):
                    if isinstance(s, Fn):
                        if s.name in self.rigid:
                            if s.args:
                                raise LogicError(f"rigid constant {s.name} applied to arguments")
                        elif s.name not in self.funcs:
                            raise LogicError(f"undeclared function {s.name}")
                        elif self.funcs[s.name] != len(s.args):
                            raise LogicError(f"arity mismatch in {s}")


def signature_of(f: Formula, rigid=()) -> Signature:
    """Infer a signature from the constants occurring in ``f``."""
    rigid = frozenset(rigid)
    preds: Dict[str, int] = {}
    funcs: Dict[str, int] = {}
    for a in atoms_of(f):
        if isinstance(a, Atom):
            preds[a.pred] = len(a.args)
            terms = a.args
        else:
            terms = (a.left, a.right)
        for t in terms:
            for s in subterms(t):
                if isinstance(s, Fn) and s.name not in rigid:
                    funcs[s.name] = len(s.args)
    for p in list(preds):
        if is_negative(p):
            preds.setdefault(positive(p), preds[p])
    return Signature(preds, funcs, rigid & _names_used(f))


def _names_used(f: Formula) -> FrozenSet[str]:
    ps, fs = constants_of(f)
    return ps | fs


@dataclass(frozen=True)
class FoInterpretation:
    """A total interpretation over a finite universe.

    ``preds`` maps predicate names to sets of tuples, ``funcs`` maps function
    names to dicts from argument tuples to elements.
    """

    signature: Signature
    universe: Tuple[str, ...]
    preds: Mapping[str, FrozenSet[tuple]]
    funcs: Mapping[str, Mapping[tuple, str]]

    def __post_init__(self):
        if not self.universe:
            raise PreconditionError("universe must be nonempty")
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "preds", {k: frozenset(v) for k, v in self.preds.items()})
        object.__setattr__(self, "funcs", {k: dict(v) for k, v in self.funcs.items()})

    def key(self) -> tuple:
        """Hashable canonical form."""
        return (
            tuple(sorted((k, tuple(sorted(v))) for k, v in self.preds.items())),
            tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.funcs.items())),
        )

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, FoInterpretation):
            return NotImplemented
        return self.universe == other.universe and self.key() == other.key()

    def replace(self, preds=None, funcs=None, signature=None) -> "FoInterpretation":
        p = dict(self.preds)
        p.update(preds or {})
        fn = dict(self.funcs)
        fn.update(funcs or {})
        return FoInterpretation(signature or self.signature, self.universe, p, fn)

    def restrict(self, names) -> "FoInterpretation":
        """Drop every constant not in ``names``."""
        names = set(names)
        sig = Signature(
            {k: v for k, v in self.signature.preds.items() if k in names},
            {k: v for k, v in self.signature.funcs.items() if k in names},
            self.signature.rigid,
        )
        return FoInterpretation(
            sig,
            self.universe,
            {k: v for k, v in self.preds.items() if k in names},
            {k: v for k, v in self.funcs.items() if k in names},
        )

    def value(self, name: str, args: tuple = ()):
        if name in self.preds:
            return args in self.preds[name]
        return self.funcs[name][args]

    def __str__(self) -> str:
        return describe(self)


def describe(i: FoInterpretation, names=None) -> str:
    parts = []
    for k in sorted(i.funcs):
        if names is not None and k not in names:
            continue
        for args, v in sorted(i.funcs[k].items()):
            t = f"{k}({','.join(args)})" if args else k
            parts.append(f"{t}={v}")
    for k in sorted(i.preds):
        if names is not None and k not in names:
            continue
        for args in sorted(i.preds[k]):
            parts.append(f"{k}({','.join(args)})" if args else k)
    return "{" + ", ".join(parts) + "}"


def eval_term(t: Term, i: FoInterpretation, env: Mapping[str, str]) -> str:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise LogicError(f"unbound variable {t.name}") from None
    if t.name in i.funcs:
        args = tuple(eval_term(a, i, env) for a in t.args)
        try:
            return i.funcs[t.name][args]
        except KeyError:
            raise LogicError(f"arity mismatch or value missing for {t}") from None
    if not t.args and (t.name in i.signature.rigid or t.name in i.universe):
        if t.name not in i.universe:
            raise LogicError(f"rigid constant {t.name} missing from universe")
        return t.name
    raise LogicError(f"uninterpreted function constant {t.name}")


def evaluate(f: Formula, i: FoInterpretation, env: Optional[Mapping[str, str]] = None) -> bool:
    """Classical satisfaction of ``f`` by ``i`` under variable assignment ``env``."""
    return _ev(f, i, dict(env or {}))


def _ev(f, i, env) -> bool:
    if isinstance(f, Atom):
        try:
            rel = i.preds[f.pred]
        except KeyError:
            raise LogicError(f"uninterpreted predicate {f.pred}") from None
        args = tuple(eval_term(a, i, env) for a in f.args)
        return args in rel
    if isinstance(f, Eq):
        return eval_term(f.left, i, env) == eval_term(f.right, i, env)
    if isinstance(f, And):
        return _ev(f.left, i, env) and _ev(f.right, i, env)
    if isinstance(f, Or):
        return _ev(f.left, i, env) or _ev(f.right, i, env)
    if isinstance(f, Imp):
        return (not _ev(f.left, i, env)) or _ev(f.right, i, env)
    if isinstance(f, Bot):
        return False
    if isinstance(f, (Forall, Exists)):
        want = isinstance(f, Exists)
        saved = env.get(f.var, _MISSING)
        try:
            for e in i.universe:
                env[f.var] = e
                if _ev(f.body, i, env) == want:
                    return want
            return not want
        finally:
            if saved is _MISSING:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
    raise TypeError(f"not a formula: {f!r}")


_MISSING = object()


def space_size(sig: Signature, universe: Sequence[str], names) -> int:
    n = len(universe)
    total = 1
    for c in names:
        if c in sig.preds:
            total *= 2 ** (n ** sig.preds[c])
        else:
            total *= n ** (n ** sig.funcs[c])
    return total


def _pred_choices(arity: int, universe, base=None):
    tuples = list(itertools.product(universe, repeat=arity)) if base is None else sorted(base)
    for bits in itertools.product((False, True), repeat=len(tuples)):
        yield frozenset(t for t, b in zip(tuples, bits) if b)


def _func_choices(arity: int, universe):
    args = list(itertools.product(universe, repeat=arity))
    for vals in itertools.product(universe, repeat=len(args)):
        yield dict(zip(args, vals))


def enumerate_interpretations(
    sig: Signature,
    universe: Sequence[str],
    fixed: Optional[FoInterpretation] = None,
    cap: int = DEFAULT_CAP,
) -> Iterator[FoInterpretation]:
    """Yield every total interpretation of ``sig`` extending ``fixed``.

    Constants interpreted by ``fixed`` keep their values; the rest range over
    all relations and maps on ``universe`` in canonical order.
    """
    universe = tuple(universe)
    if not universe:
        raise PreconditionError("universe must be nonempty")
    for r in sig.rigid:
        if r not in universe:
            raise LogicError(f"rigid constant {r} missing from universe")
    fixed_p = dict(fixed.preds) if fixed else {}
    fixed_f = dict(fixed.funcs) if fixed else {}
    free = [c for c in sorted(sig.preds) if c not in fixed_p] + [
        c for c in sorted(sig.funcs) if c not in fixed_f
    ]
    size = space_size(sig, universe, free)
    if size > cap:
        raise CapExceeded("interpretation enumeration", size, cap)
    choices = []
    for c in free:
        if c in sig.preds:
            choices.append(list(_pred_choices(sig.preds[c], universe)))
        else:
            choices.append(list(_func_choices(sig.funcs[c], universe)))
    for combo in itertools.product(*choices):
        preds = dict(fixed_p)
        funcs = dict(fixed_f)
        for c, v in zip(free, combo):
            if c in sig.preds:
                preds[c] = v
            else:
                funcs[c] = v
        yield FoInterpretation(sig, universe, preds, funcs)


def check_coherent(i: FoInterpretation) -> bool:
    for p in i.signature.pairs:
        if i.preds.get(p, frozenset()) & i.preds.get(negative(p), frozenset()):
            return False
    return True


def check_complete_on(i: FoInterpretation, p: str) -> bool:
    p = positive(p)
    if p not in i.signature.pairs:
        raise LogicError(f"predicate {p} has no negative counterpart")
    n = i.signature.preds[p]
    covered = i.preds[p] | i.preds[negative(p)]
    return all(t in covered for t in itertools.product(i.universe, repeat=n))


def make_interpretation(
    sig: Signature, universe: Sequence[str], preds=None, funcs=None
) -> FoInterpretation:
    """Convenience constructor: 0-ary function values may be given bare,
    predicate tuples may be given as bare elements for unary predicates and
    0-ary predicates as booleans."""
    p2 = {}
    for k, v in (preds or {}).items():
        n = sig.preds.get(k, 1)
        if isinstance(v, bool):
            p2[k] = frozenset({()}) if v else frozenset()
            continue
        p2[k] = frozenset(t if isinstance(t, tuple) else ((t,) if n == 1 else ()) for t in v)
    f2 = {}
    for k, v in (funcs or {}).items():
        if isinstance(v, Mapping):
            f2[k] = {(a if isinstance(a, tuple) else (a,)): x for a, x in v.items()}
        else:
            f2[k] = {(): v}
    for k in sig.preds:
        p2.setdefault(k, frozenset())
    return FoInterpretation(sig, tuple(universe), p2, f2)
