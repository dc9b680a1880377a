"""Propositional answer sets with strong negation, and two-valued programs.

Literals are strings: ``"p"`` or ``"~p"``.  A rule body holds three groups:
plain literals, literals under ``not`` and literals under ``not not``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .logic import (
    DEFAULT_CAP,
    And,
    Atom,
    Bot,
    CapExceeded,
    Formula,
    Imp,
    LogicError,
    Or,
    is_negative,
    negative,
    positive,
)


def complement(lit: str) -> str:
    return positive(lit) if is_negative(lit) else negative(lit)


def atom_of(lit: str) -> str:
    return positive(lit)


def is_consistent(lits: Iterable[str]) -> bool:
    s = set(lits)
    return not any(negative(l) in s for l in s if not is_negative(l))


def is_complete(lits: Iterable[str], atoms: Iterable[str]) -> bool:
    s = set(lits)
    return all(a in s or negative(a) in s for a in atoms)


@dataclass(frozen=True)
class Rule:
    head: Tuple[str, ...] = ()
    pos: Tuple[str, ...] = ()
    neg: Tuple[str, ...] = ()
    nneg: Tuple[str, ...] = ()
    choice: bool = False
    line: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for group in (self.head, self.pos, self.neg, self.nneg):
            if len(set(group)) != len(group):
                raise LogicError(f"duplicate literal in rule group {group}")
        if self.choice and len(self.head) != 1:
            raise LogicError("choice braces are only allowed around a single literal")

    @property
    def literals(self) -> FrozenSet[str]:
        return frozenset(self.head + self.pos + self.neg + self.nneg)

    @property
    def is_constraint(self) -> bool:
        return not self.head


@dataclass(frozen=True)
class Program:
    rules: Tuple[Rule, ...] = ()
    atoms: FrozenSet[str] = frozenset()

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        mentioned = {atom_of(l) for r in rules for l in r.literals}
        atoms = frozenset(self.atoms) | mentioned
        object.__setattr__(self, "atoms", atoms)

    @property
    def literals(self) -> Tuple[str, ...]:
        return tuple(sorted(list(self.atoms) + [negative(a) for a in self.atoms]))

    @property
    def disjunctive(self) -> bool:
        return any(len(r.head) > 1 for r in self.rules)


def expand_choice(rule: Rule) -> Rule:
    """{L} <- Body becomes L <- Body, not not L."""
    if not rule.choice:
        return rule
    (lit,) = rule.head
    nneg = rule.nneg if lit in rule.nneg else rule.nneg + (lit,)
    return Rule(rule.head, rule.pos, rule.neg, nneg, line=rule.line)


def expand_choices(prog: Program) -> Program:
    return Program(tuple(expand_choice(r) for r in prog.rules), prog.atoms)


def gl_reduct(prog: Program, x: Iterable[str]) -> Program:
    x = frozenset(x)
    out = []
    for r in expand_choices(prog).rules:
        if any(l in x for l in r.neg) or any(l not in x for l in r.nneg):
            continue
        out.append(Rule(r.head, r.pos))
    return Program(tuple(out), prog.atoms)


def satisfies_positive(prog: Program, x: FrozenSet[str]) -> bool:
    """X is closed under a negation-free program."""
    for r in prog.rules:
        if all(l in x for l in r.pos) and not any(h in x for h in r.head):
            return False
    return True


def least_model(rules: Sequence[Rule]) -> FrozenSet[str]:
    """Least literal set closed under non-disjunctive positive rules; constraints ignored."""
    m = set()
    pending = [r for r in rules if r.head]
    changed = True
    while changed:
        changed = False
        rest = []
        for r in pending:
            if all(l in m for l in r.pos):
                if r.head[0] not in m:
                    m.add(r.head[0])
                    changed = True
            else:
                rest.append(r)
        pending = rest
    return frozenset(m)


@dataclass
class AnswerSets:
    models: List[FrozenSet[str]] = field(default_factory=list)
    inconsistent: bool = False

    def __len__(self):
        return len(self.models)

    def __iter__(self):
        return iter(self.models)


def _sort_sets(sets) -> List[FrozenSet[str]]:
    return sorted(set(sets), key=lambda s: (len(s), sorted(s)))


def _lit_answer_set(prog: Program, cap: int) -> bool:
    """Whether the set of all literals is an answer set."""
    red = gl_reduct(prog, prog.literals)
    if any(r.is_constraint for r in red.rules):
        return False
    if not red.disjunctive:
        return not is_consistent(least_model(red.rules))
    for x in _consistent_sets(prog.atoms, cap):
        if satisfies_positive(red, x):
            return False
    return True


def _consistent_sets(atoms, cap: int):
    atoms = sorted(atoms)
    size = 3 ** len(atoms)
    if size > cap:
        raise CapExceeded("consistent literal sets", size, cap)
    for choice in itertools.product((None, True, False), repeat=len(atoms)):
        yield frozenset(a if c else negative(a) for a, c in zip(atoms, choice) if c is not None)


def answer_sets(prog: Program, cap: int = DEFAULT_CAP) -> AnswerSets:
    """All consistent answer sets; the all-literal answer set becomes a verdict.

    Without ``not not`` an all-literal answer set is the only one, so the
    search is skipped.  With it (choice rules included) both can coexist:
    ``{p}. -p.`` has the answer sets ``{~p}`` and the set of all literals.
    """
    prog = expand_choices(prog)
    inconsistent = _lit_answer_set(prog, cap)
    if inconsistent and not any(r.nneg for r in prog.rules):
        return AnswerSets([], True)
    if prog.disjunctive:
        found = []
        for x in _consistent_sets(prog.atoms, cap):
            red = gl_reduct(prog, x)
            if satisfies_positive(red, x) and _minimal_closed(red, x):
                found.append(x)
        return AnswerSets(_sort_sets(found), inconsistent)
    return AnswerSets(_sort_sets(_normal_answer_sets(prog, cap)), inconsistent)


def _minimal_closed(red: Program, x: FrozenSet[str]) -> bool:
    items = sorted(x)
    for r in range(len(items)):
        for sub in itertools.combinations(items, r):
            if satisfies_positive(red, frozenset(sub)):
                return False
    return True


def _normal_answer_sets(prog: Program, cap: int):
    """Branch on the literals under default negation, with propagation.

    For a partial assignment, rules that surely survive the reduct give a
    lower bound on the answer set and rules that may survive give an upper
    bound.  Guessed literals are forced by the bounds; a constraint whose
    body is already settled, or an inconsistent lower bound, closes the
    branch.  ``cap`` bounds the number of search nodes.
    """
    rules = [r for r in prog.rules if r.head]
    constraints = [r for r in prog.rules if not r.head]
    guess = sorted({l for r in prog.rules for l in r.neg + r.nneg})
    out = []
    nodes = 0

    def bounds(assign):
        sure = [
            r for r in rules
            if all(assign.get(l) is False for l in r.neg) and all(assign.get(l) is True for l in r.nneg)
        ]
        maybe = [
            r for r in rules
            if not any(assign.get(l) is True for l in r.neg) and not any(assign.get(l) is False for l in r.nneg)
        ]
        return least_model(sure), least_model(maybe)

    def propagate(assign):
        while True:
            lo, hi = bounds(assign)
            if not is_consistent(lo):
                return None
            for r in constraints:
                if (
                    all(l in lo for l in r.pos)
                    and all(l not in hi for l in r.neg)
                    and all(l in lo for l in r.nneg)
                ):
                    return None
            changed = False
            for l in guess:
                v = assign.get(l)
                if v is True and l not in hi or v is False and l in lo:
                    return None
                if v is None and (l in lo or l not in hi):
                    assign[l] = l in lo
                    changed = True
            if not changed:
                return lo

    def search(assign):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded("answer-set search nodes", nodes, cap)
        lo = propagate(assign)
        if lo is None:
            return
        free = [l for l in guess if l not in assign]
        if not free:
            if satisfies_positive(gl_reduct(prog, lo), lo):
                out.append(lo)
            return
        for v in (False, True):
            search({**assign, free[0]: v})

    search({})
    return out


# ---------------------------------------------------------------------------
# Two-valued programs


@dataclass(frozen=True)
class TvRule:
    """L0 <- L1, ..., Ln : F with F a classical formula over 0-ary atoms."""

    head: str
    body: Tuple[str, ...] = ()
    cond: Formula = Imp(Bot(), Bot())
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TvProgram:
    rules: Tuple[TvRule, ...] = ()
    atoms: FrozenSet[str] = frozenset()

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        mentioned = set()
        for r in rules:
            mentioned |= {atom_of(l) for l in (r.head,) + r.body}
            mentioned |= prop_atoms(r.cond)
        object.__setattr__(self, "atoms", frozenset(self.atoms) | mentioned)


def prop_atoms(f: Formula) -> set:
    if isinstance(f, Atom):
        return {f.pred}
    if isinstance(f, (And, Or, Imp)):
        return prop_atoms(f.left) | prop_atoms(f.right)
    return set()


def prop_eval(f: Formula, true_atoms) -> bool:
    if isinstance(f, Atom):
        return f.pred in true_atoms
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return prop_eval(f.left, true_atoms) and prop_eval(f.right, true_atoms)
    if isinstance(f, Or):
        return prop_eval(f.left, true_atoms) or prop_eval(f.right, true_atoms)
    if isinstance(f, Imp):
        return (not prop_eval(f.left, true_atoms)) or prop_eval(f.right, true_atoms)
    raise LogicError(f"not a propositional formula: {f!r}")


def literals_of(true_atoms, atoms) -> FrozenSet[str]:
    """The complete literal set of a two-valued interpretation."""
    t = set(true_atoms)
    return frozenset(a if a in t else negative(a) for a in atoms)


def tvlp_reduct(prog: TvProgram, lits: Iterable[str]) -> List[Rule]:
    lits = frozenset(lits)
    if not is_consistent(lits) or not is_complete(lits, prog.atoms):
        raise LogicError("tvlp reduct needs a complete consistent interpretation")
    true_atoms = {l for l in lits if not is_negative(l)}
    return [Rule((r.head,), r.body) for r in prog.rules if prop_eval(r.cond, true_atoms)]


def tvlp_is_stable(prog: TvProgram, lits: Iterable[str]) -> bool:
    lits = frozenset(lits)
    core = tvlp_reduct(prog, lits)
    return least_model(core) == lits


def tvlp_stable_models(prog: TvProgram, cap: int = DEFAULT_CAP) -> List[FrozenSet[str]]:
    atoms = sorted(prog.atoms)
    if 2 ** len(atoms) > cap:
        raise CapExceeded("two-valued interpretations", 2 ** len(atoms), cap)
    out = []
    for bits in itertools.product((True, False), repeat=len(atoms)):
        lits = literals_of([a for a, b in zip(atoms, bits) if b], atoms)
        if tvlp_is_stable(prog, lits):
            out.append(lits)
    return _sort_sets(out)
