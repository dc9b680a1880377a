"""Multi-valued propositional formulas and their stable models.

Formulas reuse the connectives of :mod:`fsneg.logic` (``Bot``, ``And``,
``Or``, ``Imp``) with ``Val(c, v)`` as the only kind of atom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .logic import DEFAULT_CAP, And, Bot, CapExceeded, Imp, LogicError, Or

TRUE = "TRUE"
FALSE = "FALSE"
BOOL = (TRUE, FALSE)


@dataclass(frozen=True)
class Val:
    const: str
    value: str

    def __str__(self) -> str:
        return f"{self.const}={self.value}"


class MvSignature(dict):
    """Constant name -> nonempty tuple of domain values."""

    def __init__(self, domains: Mapping[str, Sequence[str]] = ()):
        super().__init__()
        for c, dom in dict(domains).items():
            dom = tuple(dom)
            if not dom:
                raise LogicError(f"empty domain for {c}")
            self[c] = dom
        clash = set(self) & {v for dom in self.values() for v in dom}
        if clash:
            raise LogicError(f"domain values clash with constant names: {sorted(clash)}")

    @classmethod
    def boolean(cls, consts) -> "MvSignature":
        return cls({c: BOOL for c in consts})

    def space(self) -> int:
        n = 1
        for dom in self.values():
            n *= len(dom)
        return n


def mv_atoms(f) -> Iterator[Val]:
    if isinstance(f, Val):
        yield f
    elif isinstance(f, (And, Or, Imp)):
        yield from mv_atoms(f.left)
        yield from mv_atoms(f.right)


def check_formula(f, sig: MvSignature) -> None:
    for a in mv_atoms(f):
        if a.const not in sig:
            raise LogicError(f"undeclared constant {a.const}")
        if a.value not in sig[a.const]:
            raise LogicError(f"{a.value} is not in the domain of {a.const}")


def mv_satisfies(f, i: Mapping[str, str]) -> bool:
    if isinstance(f, Val):
        try:
            return i[f.const] == f.value
        except KeyError:
            raise LogicError(f"interpretation does not assign {f.const}") from None
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return mv_satisfies(f.left, i) and mv_satisfies(f.right, i)
    if isinstance(f, Or):
        return mv_satisfies(f.left, i) or mv_satisfies(f.right, i)
    if isinstance(f, Imp):
        return (not mv_satisfies(f.left, i)) or mv_satisfies(f.right, i)
    raise TypeError(f"not a multi-valued formula: {f!r}")


BOT = Bot()


def mv_reduct(f, i: Mapping[str, str]):
    """Replace each maximal subformula not satisfied by ``i`` with ⊥."""
    if not mv_satisfies(f, i):
        return BOT
    if isinstance(f, (Val, Bot)):
        return f
    return type(f)(mv_reduct(f.left, i), mv_reduct(f.right, i))


def interpretations(sig: MvSignature, cap: int = DEFAULT_CAP) -> Iterator[Dict[str, str]]:
    if sig.space() > cap:
        raise CapExceeded("multi-valued interpretation space", sig.space(), cap)
    names = sorted(sig)
    for vals in itertools.product(*(sig[c] for c in names)):
        yield dict(zip(names, vals))


@dataclass
class MvVerdict:
    status: str  # "stable" | "not-model" | "not-unique"
    witness: Optional[Dict[str, str]] = None

    def __bool__(self) -> bool:
        return self.status == "stable"


def mv_is_stable(f, i: Mapping[str, str], sig: MvSignature, cap: int = DEFAULT_CAP) -> MvVerdict:
    """I is stable iff it is the only interpretation satisfying F^I."""
    r = mv_reduct(f, i)
    if not mv_satisfies(r, i):
        return MvVerdict("not-model")
    for j in interpretations(sig, cap):
        if j != dict(i) and mv_satisfies(r, j):
            return MvVerdict("not-unique", j)
    return MvVerdict("stable")


def mv_stable_models(f, sig: MvSignature, cap: int = DEFAULT_CAP) -> List[Dict[str, str]]:
    check_formula(f, sig)
    return [i for i in interpretations(sig, cap) if mv_satisfies(f, i) and mv_is_stable(f, i, sig, cap)]


def freeze(i: Mapping[str, str]) -> Tuple[Tuple[str, str], ...]:
    return tuple(sorted(i.items()))
