"""Parsers and printers for the text dialects.

asp    ground rules:      ``p1 :- p0, not -p1.``  ``{p0}.``  ``a | -a.``
mv     declarations plus formulas:  ``const f : {1,2,3}.  {f=1} & f=2.``
fo     declarations plus sentences: ``pred p/1, -p/1. func f/0. p(f) & -p(g).``
tvlp   two-valued rules:  ``a <- : a.``  ``-a <- : -a.``  ``b <- a : top.``

Formula operators, loosest first: ``<->``, ``->``/``<-``, ``|``, ``&``, then
``not F``, ``{F}``, ``(F)``, ``forall X Y (F)``, ``exists X (F)``.  Strong
negation is ``-p``; in tvlp ``-a`` is classical negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .logic import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Eq,
    Exists,
    Forall,
    Fn,
    Formula,
    Iff,
    Imp,
    LogicError,
    Not,
    Or,
    Signature,
    Var,
    conj,
    is_negative,
    is_not,
    map_atoms,
    negative,
    positive,
)
from .mvsm import BOOL, MvSignature, Val
from .progsem import Program, Rule, TvProgram, TvRule


class ParseError(LogicError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {msg}" if line else msg)
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<op><->|:-|<-|->|!=|\.\.|[=&|(){},.:~\-+/])
  | (?P<name>[A-Za-z0-9_'^#]+)
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos, line, lstart = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            out.append(Token(kind, tok, line, pos - lstart + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            lstart = pos + tok.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - lstart + 1))
    return out


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.bound: List[str] = []

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        return self.tok.text in texts and self.tok.kind != "eof"

    def error(self, msg: str):
        raise ParseError(msg, self.tok.line, self.tok.col)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def end_statement(self) -> None:
        """A period, optional before end of input."""
        if not self.eof():
            self.expect(".")

    def name(self) -> str:
        if self.tok.kind != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.next().text

    def eof(self) -> bool:
        return self.tok.kind == "eof"

    # -- ground atoms: name or name(arg,...) flattened to a single string
    def ground_atom(self) -> str:
        n = self.name()
        if self.at("("):
            self.next()
            args = [self.ground_atom()]
            while self.at(","):
                self.next()
                args.append(self.ground_atom())
            self.expect(")")
            return f"{n}({','.join(args)})"
        return n

    def literal(self) -> str:
        if self.at("-", "~"):
            self.next()
            return negative(self.ground_atom())
        return self.ground_atom()

    # -- formulas
    def formula(self, atom) -> Formula:
        left = self.implication(atom)
        if self.at("<->"):
            self.next()
            return Iff(left, self.implication(atom))
        return left

    def implication(self, atom) -> Formula:
        left = self.disjunction(atom)
        if self.at("->"):
            self.next()
            return Imp(left, self.implication(atom))
        if self.at("<-"):
            self.next()
            return Imp(self.disjunction(atom), left)
        return left

    def disjunction(self, atom) -> Formula:
        parts = [self.conjunction(atom)]
        while self.at("|"):
            self.next()
            parts.append(self.conjunction(atom))
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Or(p, out)
        return out

    def conjunction(self, atom) -> Formula:
        parts = [self.unary(atom)]
        while self.at("&"):
            self.next()
            parts.append(self.unary(atom))
        return conj(parts)

    def unary(self, atom) -> Formula:
        t = self.tok
        if t.text == "not":
            self.next()
            return Not(self.unary(atom))
        if t.text == "(":
            self.next()
            f = self.formula(atom)
            self.expect(")")
            return f
        if t.text == "{":
            self.next()
            f = self.formula(atom)
            self.expect("}")
            return Or(f, Not(f))
        if t.text == "bot":
            self.next()
            return BOT
        if t.text == "top":
            self.next()
            return TOP
        if t.text in ("forall", "exists"):
            self.next()
            vs = []
            while not self.at("("):
                vs.append(self.name())
                if self.at(","):
                    self.next()
            if not vs:
                self.error("quantifier without variables")
            self.bound.extend(vs)
            self.expect("(")
            body = self.formula(atom)
            self.expect(")")
            del self.bound[-len(vs):]
            cls = Forall if t.text == "forall" else Exists
            for v in reversed(vs):
                body = cls(v, body)
            return body
        return atom(self)


def _mv_atom(p: Parser) -> Formula:
    c = p.name()
    p.expect("=")
    return Val(c, p.name())


def _term(p: Parser):
    n = p.name()
    if n in p.bound and not p.at("("):
        return Var(n)
    args = ()
    if p.at("("):
        p.next()
        args = [_term(p)]
        while p.at(","):
            p.next()
            args.append(_term(p))
        p.expect(")")
    return Fn(n, tuple(args))


def _fo_atom(p: Parser) -> Formula:
    if p.at("-", "~"):
        p.next()
        t = _term(p)
        if not isinstance(t, Fn):
            p.error("strong negation applies to predicates")
        return Atom(negative(t.name), t.args)
    t = _term(p)
    if p.at("="):
        p.next()
        return Eq(t, _term(p))
    if p.at("!="):
        p.next()
        return Not(Eq(t, _term(p)))
    if isinstance(t, Var):
        p.error(f"variable {t.name} used as a formula")
    return Atom(t.name, t.args)


def _prop_atom(p: Parser) -> Formula:
    if p.at("-", "~"):
        p.next()
        return Not(Atom(p.ground_atom()))
    return Atom(p.ground_atom())


# ---------------------------------------------------------------------------
# Dialect parsers


def parse_asp(text: str) -> Program:
    p = Parser(text)
    rules, atoms = [], set()
    while not p.eof():
        if p.at("#atoms"):
            p.next()
            atoms.add(positive(p.literal()))
            while p.at(","):
                p.next()
                atoms.add(positive(p.literal()))
            p.expect(".")
            continue
        line = p.tok.line
        choice = False
        head: List[str] = []
        if p.at("{"):
            p.next()
            head.append(p.literal())
            if p.at("|", ";"):
                p.error("choice braces around a disjunction")
            p.expect("}")
            choice = True
        elif not p.at(":-"):
            head.append(p.literal())
            while p.at("|"):
                p.next()
                head.append(p.literal())
        pos, neg, nneg = [], [], []
        if p.at(":-"):
            p.next()
            while not p.at("."):
                if p.at("not"):
                    p.next()
                    if p.at("not"):
                        p.next()
                        nneg.append(p.literal())
                    else:
                        neg.append(p.literal())
                else:
                    pos.append(p.literal())
                if not p.at(","):
                    break
                p.next()
        p.expect(".")
        rules.append(Rule(tuple(head), tuple(pos), tuple(neg), tuple(nneg), choice, line))
    return Program(tuple(rules), frozenset(atoms))


def parse_mv(text: str) -> Tuple[Formula, MvSignature]:
    p = Parser(text)
    doms: Dict[str, Tuple[str, ...]] = {}
    parts = []
    while not p.eof():
        if p.at("const"):
            p.next()
            names = [p.name()]
            while p.at(","):
                p.next()
                names.append(p.name())
            p.expect(":")
            if p.at("bool"):
                p.next()
                dom = BOOL
            else:
                p.expect("{")
                dom = [p.name()]
                while p.at(","):
                    p.next()
                    dom.append(p.name())
                p.expect("}")
            for n in names:
                doms[n] = tuple(dom)
            p.expect(".")
            continue
        parts.append(p.formula(_mv_atom))
        p.end_statement()
    f = conj(parts)
    sig = MvSignature(doms)
    from .mvsm import check_formula, mv_atoms

    for a in mv_atoms(f):
        if a.const not in sig:
            raise ParseError(f"undeclared constant {a.const}")
    check_formula(f, sig)
    return f, sig


def parse_fo(text: str) -> Tuple[Formula, Optional[Signature], Optional[Tuple[str, ...]]]:
    """Return (sentence, declared signature or None, declared universe or None)."""
    p = Parser(text)
    preds: Dict[str, int] = {}
    funcs: Dict[str, int] = {}
    rigid: List[str] = []
    universe = None
    declared = False
    parts = []
    while not p.eof():
        if p.at("pred", "func"):
            kind = p.next().text
            declared = True
            while True:
                neg = False
                if p.at("-", "~"):
                    p.next()
                    neg = True
                n = p.ground_atom()
                p.expect("/")
                k = int(p.name())
                if kind == "pred":
                    preds[negative(n) if neg else n] = k
                else:
                    funcs[n] = k
                if not p.at(","):
                    break
                p.next()
            p.expect(".")
            continue
        if p.at("rigid", "universe"):
            kind = p.next().text
            names = [p.name()]
            while p.at(","):
                p.next()
                names.append(p.name())
            p.expect(".")
            if kind == "rigid":
                rigid += names
            else:
                universe = tuple(names)
            continue
        parts.append(p.formula(_fo_atom))
        p.end_statement()
    f = conj(parts)
    flat = {n for n in list(preds) + list(funcs) if "(" in n}
    if flat:
        f = _fold_ground_names(f, flat)
    sig = Signature(preds, funcs, rigid) if declared else None
    return f, sig, universe


def _fold_ground_names(f: Formula, names) -> Formula:
    """Read ``Loc(b1,0)`` back as the declared 0-ary constant of that name."""

    def term(t):
        if isinstance(t, Fn) and t.args:
            if str(t) in names:
                return Fn(str(t))
            return Fn(t.name, tuple(term(a) for a in t.args))
        return t

    def atom(a):
        if isinstance(a, Atom):
            if a.args and str(Fn(a.pred, a.args)) in names:
                return Atom(str(Fn(a.pred, a.args)))
            return Atom(a.pred, tuple(term(x) for x in a.args))
        return Eq(term(a.left), term(a.right))

    return map_atoms(f, atom)


def parse_tvlp(text: str) -> TvProgram:
    p = Parser(text)
    rules, atoms = [], set()
    while not p.eof():
        if p.at("#atoms"):
            p.next()
            atoms.add(p.ground_atom())
            while p.at(","):
                p.next()
                atoms.add(p.ground_atom())
            p.expect(".")
            continue
        line = p.tok.line
        head = p.literal()
        body: List[str] = []
        cond = TOP
        if p.at("<-"):
            p.next()
            if not p.at(":", "."):
                body.append(p.literal())
                while p.at(","):
                    p.next()
                    body.append(p.literal())
        if p.at(":"):
            p.next()
            cond = p.formula(_prop_atom)
        p.expect(".")
        rules.append(TvRule(head, tuple(body), cond, line))
    return TvProgram(tuple(rules), frozenset(atoms))


# ---------------------------------------------------------------------------
# Printers


def _lit(l: str, neg: str = "-") -> str:
    return neg + positive(l) if is_negative(l) else l


def print_rule(r: Rule) -> str:
    if r.choice:
        head = "{" + _lit(r.head[0]) + "}"
    else:
        head = " | ".join(_lit(h) for h in r.head)
    body = [_lit(l) for l in r.pos] + ["not " + _lit(l) for l in r.neg] + ["not not " + _lit(l) for l in r.nneg]
    if not body:
        return (head or ":- ") + "."
    return (head + " " if head else "") + ":- " + ", ".join(body) + "."


def print_asp(prog: Program, declare_atoms: bool = False) -> str:
    lines = []
    mentioned = {positive(l) for r in prog.rules for l in r.literals}
    extra = sorted(prog.atoms - mentioned)
    if extra and declare_atoms:
        lines.append("#atoms " + ", ".join(extra) + ".")
    lines += [print_rule(r) for r in prog.rules]
    return "\n".join(lines) + ("\n" if lines else "")


def _is_choice(f) -> bool:
    return isinstance(f, Or) and is_not(f.right) and f.right.left == f.left


def _is_iff(f) -> bool:
    return (
        isinstance(f, And)
        and isinstance(f.left, Imp)
        and isinstance(f.right, Imp)
        and f.left.left == f.right.right
        and f.left.right == f.right.left
        and not is_not(f.left)
    )


def print_formula(f: Formula, atom=None) -> str:
    """Canonical text; derived forms (not, {F}, top, <->) are re-sugared."""
    atom = atom or _print_atom

    def tight(g) -> bool:
        return (
            isinstance(g, (Bot, Atom, Eq, Val))
            or g == TOP
            or _is_choice(g)
            or (is_not(g) and not isinstance(g.left, Eq))
            or isinstance(g, (Forall, Exists))
        )

    def wrap(g) -> str:
        s = go(g)
        return s if tight(g) else "(" + s + ")"

    def go(g) -> str:
        if isinstance(g, Bot):
            return "bot"
        if g == TOP:
            return "top"
        if isinstance(g, (Atom, Eq, Val)):
            return atom(g)
        if _is_choice(g):
            return "{" + go(g.left) + "}"
        if is_not(g):
            if isinstance(g.left, Eq):
                return f"{g.left.left} != {g.left.right}"
            return "not " + wrap(g.left)
        if isinstance(g, (Forall, Exists)):
            q = "forall" if isinstance(g, Forall) else "exists"
            vs = [g.var]
            body = g.body
            while type(body) is type(g):
                vs.append(body.var)
                body = body.body
            return f"{q} {' '.join(vs)} (" + go(body) + ")"
        if _is_iff(g):
            return wrap(g.left.left) + " <-> " + wrap(g.left.right)
        if isinstance(g, (And, Or)):
            parts = []
            h = g
            while type(h) is type(g) and not _is_choice(h) and not _is_iff(h):
                parts.append(wrap(h.left))
                h = h.right
            parts.append(wrap(h))
            return (" & " if isinstance(g, And) else " | ").join(parts)
        if isinstance(g, Imp):
            return wrap(g.left) + " -> " + wrap(g.right)
        raise TypeError(f"cannot print {g!r}")

    return go(f)


def _print_atom(a) -> str:
    if isinstance(a, Val):
        return f"{a.const}={a.value}"
    if isinstance(a, Eq):
        return f"{a.left} = {a.right}"
    name = "-" + positive(a.pred) if is_negative(a.pred) else a.pred
    if not a.args:
        return name
    return f"{name}({','.join(map(str, a.args))})"


def print_mv(f: Formula, sig: Optional[MvSignature] = None) -> str:
    lines = []
    if sig:
        for c in sorted(sig):
            dom = sig[c]
            lines.append(f"const {c} : " + ("bool" if dom == BOOL else "{" + ",".join(dom) + "}") + ".")
    lines.append(print_formula(f) + ".")
    return "\n".join(lines) + "\n"


def print_fo(f: Formula, sig: Optional[Signature] = None, universe=None) -> str:
    lines = []
    if sig:
        if sig.preds:
            lines.append("pred " + ", ".join(f"{_lit(p)}/{n}" for p, n in sorted(sig.preds.items())) + ".")
        if sig.funcs:
            lines.append("func " + ", ".join(f"{p}/{n}" for p, n in sorted(sig.funcs.items())) + ".")
        if sig.rigid:
            lines.append("rigid " + ", ".join(sorted(sig.rigid)) + ".")
    if universe:
        lines.append("universe " + ", ".join(universe) + ".")
    lines.append(print_formula(f) + ".")
    return "\n".join(lines) + "\n"


def print_tvlp(prog: TvProgram) -> str:
    lines = []
    mentioned = set()
    for r in prog.rules:
        mentioned |= {positive(l) for l in (r.head,) + r.body} | _cond_atoms(r.cond)
    extra = sorted(prog.atoms - mentioned)
    if extra:
        lines.append("#atoms " + ", ".join(extra) + ".")
    for r in prog.rules:
        body = ", ".join(_lit(l) for l in r.body)
        cond = print_formula(r.cond, _tv_atom)
        lines.append(f"{_lit(r.head)} <- {body + ' ' if body else ''}: {cond}.")
    return "\n".join(lines) + ("\n" if lines else "")


def _cond_atoms(f) -> set:
    if isinstance(f, Atom):
        return {f.pred}
    if isinstance(f, (And, Or, Imp)):
        return _cond_atoms(f.left) | _cond_atoms(f.right)
    return set()


def _tv_atom(a) -> str:
    return a.pred


def print_tv_cond(f: Formula) -> str:
    return print_formula(f, _tv_atom)
