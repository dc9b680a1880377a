"""Sorted schema instantiation, finite-universe propositionalization and the
built-in corpus.

Schema text::

    sort block = {b1, b2}.
    sort loc = block + {table}.
    sort time = 0..1.
    var B, B1 : block.
    var T : time.
    func Loc(block, time) : loc.
    pred Move(block, loc, time).
    :- Loc(B1,T) = B, Loc(B2,T) = B, B1 != B2.
    Loc(B,T+1) = L :- Move(B,L,T).
    {Move(B,L,T)}.

Rules use the asp surface (``:-``, ``not``, ``not not``, ``-p``, ``{L}``,
``|``); ``f(t)=u`` is a function atom when ``f`` is declared with ``func``,
otherwise ``=``/``!=`` compare ground terms and are resolved while grounding.
Arithmetic is limited to ``V+k`` on integer sorts; an instance whose
successor leaves the sort is dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .logic import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Eq,
    Fn,
    Forall,
    Formula,
    Imp,
    LogicError,
    Not,
    Or,
    Signature,
    Var,
    Choice,
    conj,
    disj,
    is_negative,
    negative,
    positive,
)
from .progsem import Program, Rule
from .syntax import Parser, parse_asp, parse_fo, parse_mv, parse_tvlp


# ---------------------------------------------------------------------------
# Schema syntax


@dataclass(frozen=True)
class SVar:
    name: str


@dataclass(frozen=True)
class SConst:
    name: str


@dataclass(frozen=True)
class SSucc:
    var: str
    k: int


STerm = Union[SVar, SConst, SSucc]


@dataclass(frozen=True)
class SAtom:
    pred: str
    args: Tuple[STerm, ...] = ()
    neg: bool = False


@dataclass(frozen=True)
class SFun:
    func: str
    args: Tuple[STerm, ...]
    value: STerm


@dataclass(frozen=True)
class SCmp:
    op: str  # "=" or "!="
    left: STerm
    right: STerm


@dataclass(frozen=True)
class SchemaRule:
    head: Tuple[Union[SAtom, SFun], ...]
    body: Tuple[Tuple[str, Union[SAtom, SFun, SCmp]], ...]  # mode in "", "not", "not not"
    choice: bool = False
    line: int = 0


@dataclass
class Schema:
    sorts: Dict[str, Optional[Tuple[str, ...]]] = field(default_factory=dict)
    vars: Dict[str, str] = field(default_factory=dict)
    funcs: Dict[str, Tuple[Tuple[str, ...], str]] = field(default_factory=dict)
    preds: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    rules: List[SchemaRule] = field(default_factory=list)
    sort_exprs: Dict[str, list] = field(default_factory=dict)


def _int_range(p: Parser, lo: str) -> List[str]:
    p.expect("..")
    hi = p.name()
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        p.error("range bounds must be integers")
    return [str(k) for k in range(a, b + 1)]


def _sort_expr(p: Parser) -> list:
    """A union of ``{a,b}``, ``n..m`` and sort names, joined by ``+``."""
    parts = []
    while True:
        if p.at("{"):
            p.next()
            elems = [p.name()]
            while p.at(","):
                p.next()
                elems.append(p.name())
            p.expect("}")
            parts.append(("set", elems))
        else:
            n = p.name()
            if p.at(".."):
                parts.append(("set", _int_range(p, n)))
            else:
                parts.append(("sort", n))
        if not p.at("+"):
            return parts
        p.next()


def _sterm(p: Parser, schema: Schema) -> STerm:
    n = p.name()
    if n in schema.vars:
        if p.at("+"):
            p.next()
            k = p.name()
            if not k.isdigit():
                p.error("only successor arithmetic V+k is supported")
            return SSucc(n, int(k))
        if p.at("-", "/"):
            p.error("only successor arithmetic V+k is supported")
        return SVar(n)
    if p.at("("):
        p.error(f"nested function term {n}(...) is not supported in schemas")
    return SConst(n)


def _sargs(p: Parser, schema: Schema) -> Tuple[STerm, ...]:
    if not p.at("("):
        return ()
    p.next()
    args = [_sterm(p, schema)]
    while p.at(","):
        p.next()
        args.append(_sterm(p, schema))
    p.expect(")")
    return tuple(args)


def _selement(p: Parser, schema: Schema):
    if p.at("-", "~"):
        p.next()
        name = p.name()
        return SAtom(name, _sargs(p, schema), neg=True)
    if p.tok.kind == "name" and p.tok.text in schema.funcs:
        name = p.name()
        args = _sargs(p, schema)
        if p.at("!="):
            p.next()
            return ("not", SFun(name, args, _sterm(p, schema)))
        p.expect("=")
        return SFun(name, args, _sterm(p, schema))
    start = p.i
    name = p.name()
    if name in schema.vars or (p.at("=", "!=", "+")):
        p.i = start
        left = _sterm(p, schema)
        if not p.at("=", "!="):
            p.error("expected a comparison")
        op = p.next().text
        return SCmp(op, left, _sterm(p, schema))
    return SAtom(name, _sargs(p, schema))


def _decl_names(p: Parser) -> List[str]:
    names = [p.name()]
    while p.at(","):
        p.next()
        names.append(p.name())
    return names


def parse_schema(text: str) -> Schema:
    p = Parser(text)
    s = Schema()
    while not p.eof():
        line = p.tok.line
        if p.at("sort"):
            p.next()
            n = p.name()
            if p.at("="):
                p.next()
                s.sort_exprs[n] = _sort_expr(p)
            else:
                s.sort_exprs[n] = None
            s.sorts[n] = None
            p.expect(".")
            continue
        if p.at("var"):
            p.next()
            names = _decl_names(p)
            p.expect(":")
            sort = p.name()
            if sort not in s.sorts:
                p.error(f"unknown sort {sort}")
            for v in names:
                s.vars[v] = sort
            p.expect(".")
            continue
        if p.at("func", "pred") and p.peek().kind == "name":
            kind = p.next().text
            n = p.name()
            argsorts: List[str] = []
            if p.at("("):
                p.next()
                argsorts = _decl_names(p)
                p.expect(")")
            for a in argsorts:
                if a not in s.sorts:
                    p.error(f"unknown sort {a}")
            if kind == "func":
                p.expect(":")
                val = p.name()
                if val not in s.sorts:
                    p.error(f"unknown sort {val}")
                s.funcs[n] = (tuple(argsorts), val)
            else:
                s.preds[n] = tuple(argsorts)
            p.expect(".")
            continue
        choice = False
        head = []
        if p.at("{"):
            p.next()
            e = _selement(p, s)
            if not isinstance(e, (SAtom, SFun)):
                p.error("choice braces need a literal or function atom")
            head.append(e)
            if p.at("|"):
                p.error("choice braces around a disjunction")
            p.expect("}")
            choice = True
        elif not p.at(":-"):
            if p.at("bot"):
                p.next()
            else:
                while True:
                    e = _selement(p, s)
                    if not isinstance(e, (SAtom, SFun)):
                        p.error("rule heads hold literals or function atoms")
                    head.append(e)
                    if not p.at("|"):
                        break
                    p.next()
        body = []
        if p.at(":-"):
            p.next()
            while True:
                mode = ""
                if p.at("not"):
                    p.next()
                    mode = "not"
                    if p.at("not"):
                        p.next()
                        mode = "not not"
                e = _selement(p, s)
                if isinstance(e, tuple):  # f(t) != u
                    if mode:
                        p.error("negated function inequality is not supported")
                    mode, e = e
                if isinstance(e, SCmp) and mode:
                    p.error("comparisons cannot be negated")
                body.append((mode, e))
                if not p.at(","):
                    break
                p.next()
        p.expect(".")
        s.rules.append(SchemaRule(tuple(head), tuple(body), choice, line))
    return s


# ---------------------------------------------------------------------------
# Instantiation


def resolve_sorts(schema: Schema, bindings: Optional[Mapping[str, Sequence[str]]] = None) -> Dict[str, Tuple[str, ...]]:
    bindings = dict(bindings or {})
    out: Dict[str, Tuple[str, ...]] = {}

    def resolve(name, stack=()):
        if name in out:
            return out[name]
        if name in stack:
            raise LogicError(f"cyclic sort definition through {name}")
        if name not in schema.sorts and name not in bindings:
            raise LogicError(f"unknown sort {name}")
        if name in bindings:
            elems = tuple(str(e) for e in bindings[name])
        elif schema.sort_exprs.get(name) is None:
            raise LogicError(f"unbound sort {name}")
        else:
            elems = []
            for kind, val in schema.sort_exprs[name]:
                items = val if kind == "set" else resolve(val, stack + (name,))
                elems.extend(e for e in items if e not in elems)
            elems = tuple(elems)
        if not elems:
            raise LogicError(f"sort {name} is empty")
        out[name] = elems
        return elems

    for n in list(schema.sorts) + list(bindings):
        resolve(n)
    return out


def atom_name(pred: str, args: Sequence[str]) -> str:
    """Ground atom naming: ``p``, ``p(a,b)``; an already applied name gets
    the extra arguments appended inside its parentheses."""
    if not args:
        return pred
    if pred.endswith(")"):
        return f"{pred[:-1]},{','.join(args)})"
    return f"{pred}({','.join(args)})"


class _Dropped(Exception):
    pass


def _ground_term(t: STerm, env, sorts, schema, target: Optional[str] = None) -> str:
    """Ground a term; a successor value must land in ``target`` (the sort
    of its argument position) or, failing a declaration, in its variable's
    sort.  Otherwise the instance is dropped."""
    if isinstance(t, SConst):
        return t.name
    if isinstance(t, SVar):
        return env[t.name]
    try:
        v = str(int(env[t.var]) + t.k)
    except ValueError:
        raise LogicError(f"successor arithmetic on non-integer sort of {t.var}") from None
    if v not in sorts[target or schema.vars[t.var]]:
        raise _Dropped
    return v


def _rule_vars(rule: SchemaRule) -> List[str]:
    seen: List[str] = []

    def add(t):
        name = t.name if isinstance(t, SVar) else t.var if isinstance(t, SSucc) else None
        if name and name not in seen:
            seen.append(name)

    for e in rule.head + tuple(e for _, e in rule.body):
        if isinstance(e, SAtom):
            for t in e.args:
                add(t)
        elif isinstance(e, SFun):
            for t in e.args + (e.value,):
                add(t)
        else:
            add(e.left)
            add(e.right)
    return seen


@dataclass
class GroundRule:
    """One instance: head elements and body members over ground names.

    Elements are ``("lit", name)`` or ``("fun", fname, value)``.
    """

    head: Tuple[tuple, ...]
    body: Tuple[Tuple[str, tuple], ...]
    choice: bool = False


def _ground_args(args, declared, env, sorts, schema) -> List[str]:
    if declared is not None and len(declared) != len(args):
        raise LogicError(f"arity mismatch: expected {len(declared)} arguments")
    return [
        _ground_term(t, env, sorts, schema, declared[k] if declared else None)
        for k, t in enumerate(args)
    ]


def _ground_element(e, env, sorts, schema) -> tuple:
    if isinstance(e, SAtom):
        args = _ground_args(e.args, schema.preds.get(e.pred), env, sorts, schema)
        name = atom_name(e.pred, args)
        return ("lit", negative(name) if e.neg else name)
    argsorts, valsort = schema.funcs[e.func]
    fname = atom_name(e.func, _ground_args(e.args, argsorts, env, sorts, schema))
    return ("fun", fname, _ground_term(e.value, env, sorts, schema, valsort))


def ground_rules(schema: Schema, sorts: Mapping[str, Tuple[str, ...]]) -> List[GroundRule]:
    out = []
    for rule in schema.rules:
        vs = _rule_vars(rule)
        for v in vs:
            if v not in schema.vars:
                raise LogicError(f"line {rule.line}: unsorted variable {v}")
        doms = [sorts[schema.vars[v]] for v in vs]
        for vals in itertools.product(*doms):
            env = dict(zip(vs, vals))
            try:
                body = []
                for mode, e in rule.body:
                    if isinstance(e, SCmp):
                        a = _ground_term(e.left, env, sorts, schema)
                        b = _ground_term(e.right, env, sorts, schema)
                        if (a == b) != (e.op == "="):
                            raise _Dropped
                        continue
                    body.append((mode, _ground_element(e, env, sorts, schema)))
                head = tuple(_ground_element(e, env, sorts, schema) for e in rule.head)
            except _Dropped:
                continue
            out.append(GroundRule(head, tuple(body), rule.choice))
    return out


@dataclass
class GroundTheory:
    """A ground first-order theory produced from a schema with functions."""

    formula: Formula
    signature: Signature
    universe: Tuple[str, ...]
    intensional: Tuple[str, ...]


def _element_formula(e: tuple) -> Formula:
    if e[0] == "lit":
        return Atom(e[1])
    return Eq(Fn(e[1]), Fn(e[2]))


def _member_formula(mode: str, e: tuple) -> Formula:
    g = _element_formula(e)
    if mode == "not":
        return Not(g)
    if mode == "not not":
        return Not(Not(g))
    return g


def rule_formula(r: GroundRule) -> Formula:
    head = disj([_element_formula(e) for e in r.head])
    if r.choice:
        head = Choice(head)
    if not r.body:
        return head
    return Imp(conj([_member_formula(m, e) for m, e in r.body]), head)


def instantiate(
    schema: Union[Schema, str], bindings: Optional[Mapping[str, Sequence[str]]] = None
) -> Union[Program, GroundTheory]:
    """Ground a schema: a Program when no functions are declared, otherwise a
    first-order theory over 0-ary ground predicates and functions."""
    if isinstance(schema, str):
        schema = parse_schema(schema)
    sorts = resolve_sorts(schema, bindings)
    rules = ground_rules(schema, sorts)
    declared = [
        atom_name(p, args)
        for p, argsorts in schema.preds.items()
        for args in itertools.product(*(sorts[a] for a in argsorts))
    ]
    if not schema.funcs:
        prog_rules = []
        for r in rules:
            if any(m[0] != "lit" for _, m in r.body) or any(e[0] != "lit" for e in r.head):
                raise LogicError("function atoms need a func declaration")
            groups = {"": [], "not": [], "not not": []}
            for mode, (_, lit) in r.body:
                if lit not in groups[mode]:
                    groups[mode].append(lit)
            head = tuple(dict.fromkeys(e[1] for e in r.head))
            prog_rules.append(Rule(head, tuple(groups[""]), tuple(groups["not"]), tuple(groups["not not"]), r.choice))
        return Program(tuple(prog_rules), frozenset(declared))
    funcs: Dict[str, int] = {}
    universe: List[str] = []
    for f, (argsorts, val) in schema.funcs.items():
        for args in itertools.product(*(sorts[a] for a in argsorts)):
            funcs[atom_name(f, args)] = 0
        for v in sorts[val]:
            if v not in universe:
                universe.append(v)
    preds: Dict[str, int] = {p: 0 for p in declared}
    values = set()
    for r in rules:
        for e in r.head + tuple(m for _, m in r.body):
            if e[0] == "lit":
                preds[e[1]] = 0
                preds.setdefault(positive(e[1]), 0)
            else:
                if e[1] not in funcs:
                    raise LogicError(f"function atom {e[1]} outside its declared sorts")
                values.add(e[2])
    stray = values - set(universe)
    if stray:
        raise LogicError(f"function values outside every value sort: {sorted(stray)}")
    sig = Signature(preds, funcs, frozenset(universe))
    f = conj([rule_formula(r) for r in rules])
    intensional = tuple(sorted(preds)) + tuple(sorted(funcs))
    return GroundTheory(f, sig, tuple(universe), intensional)


# ---------------------------------------------------------------------------
# Propositionalization over a finite universe

Namer = Callable[[str, Tuple[str, ...]], str]


def _simplify(f: Formula) -> Formula:
    """Drop ⊤/⊥ by rules that hold in the logic of here-and-there."""
    if isinstance(f, And):
        a, b = _simplify(f.left), _simplify(f.right)
        if a == BOT or b == BOT:
            return BOT
        if a == TOP:
            return b
        if b == TOP:
            return a
        return And(a, b)
    if isinstance(f, Or):
        a, b = _simplify(f.left), _simplify(f.right)
        if a == TOP or b == TOP:
            return TOP
        if a == BOT:
            return b
        if b == BOT:
            return a
        return Or(a, b)
    if isinstance(f, Imp):
        a, b = _simplify(f.left), _simplify(f.right)
        if a == BOT or b == TOP:
            return TOP
        if a == TOP:
            return b
        return Imp(a, b)
    return f


def propositionalize(
    f: Formula,
    universe: Sequence[str],
    namer: Optional[Namer] = None,
    rigid: Sequence[str] = (),
) -> Formula:
    """Expand quantifiers over ``universe``, decide equalities between
    elements and turn each atom into a 0-ary atom named by ``namer``.

    The formula must be free of non-rigid function constants.
    """
    namer = namer or atom_name
    known = set(universe) | set(rigid)

    def term(t, env):
        if isinstance(t, Var):
            if t.name not in env:
                raise LogicError(f"unbound variable {t.name}")
            return env[t.name]
        if t.args or t.name not in known:
            raise LogicError(f"function constant {t} must be eliminated before propositionalizing")
        return t.name

    def go(g, env):
        if isinstance(g, Bot):
            return g
        if isinstance(g, Atom):
            args = tuple(term(a, env) for a in g.args)
            if not args:
                return g
            if is_negative(g.pred):
                return Atom(negative(namer(positive(g.pred), args)))
            return Atom(namer(g.pred, args))
        if isinstance(g, Eq):
            return TOP if term(g.left, env) == term(g.right, env) else BOT
        if isinstance(g, (And, Or, Imp)):
            return type(g)(go(g.left, env), go(g.right, env))
        parts = [go(g.body, {**env, g.var: u}) for u in universe]
        return conj(parts) if isinstance(g, Forall) else disj(parts)

    return _simplify(go(f, {}))


def fo_to_literals(i, namer: Optional[Namer] = None) -> frozenset:
    """The literal set of a first-order interpretation over predicates."""
    namer = namer or atom_name
    out = set()
    for p, rel in i.preds.items():
        for t in rel:
            if not t:
                out.add(p)
            elif is_negative(p):
                out.add(negative(namer(positive(p), t)))
            else:
                out.add(namer(p, t))
    return frozenset(out)


def value_second(pred: str, args: Tuple[str, ...]) -> str:
    """Namer for ``On(b,t)`` plus a value ``l``: ``On(b,l,t)``."""
    if pred.endswith(")") and len(args) == 1:
        inner = pred[pred.index("(") + 1 : -1].split(",")
        return f"{pred[: pred.index('(')]}({inner[0]},{args[0]},{','.join(inner[1:])})"
    return atom_name(pred, args)


# ---------------------------------------------------------------------------
# Built-in corpus

TRANSITION8 = """\
p0 :- not -p0.
-p0 :- not p0.
a :- not -a.
-a :- not a.
p1 :- a.
p1 :- p0, not -p1.
-p1 :- -p0, not p1.
"""


def _bw_header(blocks: int, steps: int) -> str:
    bs = ",".join(f"b{k}" for k in range(1, blocks + 1))
    return (
        f"sort block = {{{bs}}}.\n"
        "sort loc = block + {table}.\n"
        f"sort time = 0..{steps}.\n"
        + f"sort step = 0..{steps - 1}.\n"
        + "var B, B1, B2 : block.\n"
        "var L, L1 : loc.\n"
        "var T : time.\n"
        "var S : step.\n"
    )


BW_SNEG0 = """\
pred On(block,loc,time).
pred Move(block,loc,step).
:- On(B1,B,T), On(B2,B,T), B1 != B2.
On(B,L,S+1) :- Move(B,L,S).
:- Move(B,L,S), On(B1,B,S).
:- Move(B,B1,S), Move(B1,L,S).
On(B,L,0) :- not -On(B,L,0).
-On(B,L,0) :- not On(B,L,0).
Move(B,L,S) :- not -Move(B,L,S).
-Move(B,L,S) :- not Move(B,L,S).
On(B,L,S+1) :- On(B,L,S), not -On(B,L,S+1).
-On(B,L,T) :- On(B,L1,T), L != L1.
"""

BW_FUNC = """\
func Loc(block,time) : loc.
pred Move(block,loc,step).
:- Loc(B1,T) = B, Loc(B2,T) = B, B1 != B2.
Loc(B,S+1) = L :- Move(B,L,S).
:- Move(B,L,S), Loc(B1,S) = B.
:- Move(B,B1,S), Move(B1,L,S).
{Loc(B,0) = L}.
{Move(B,L,S)}.
{Loc(B,S+1) = L} :- Loc(B,S) = L.
"""

BW_SNEG21 = """\
pred On(block,loc,time).
pred Move(block,loc,step).
:- On(B1,B,T), On(B2,B,T), B1 != B2.
On(B,L,S+1) :- Move(B,L,S).
:- Move(B,L,S), On(B1,B,S).
:- Move(B,B1,S), Move(B1,L,S).
{On(B,L,0)}.
{Move(B,L,S)}.
{On(B,L,S+1)} :- On(B,L,S).
-On(B,L,T) :- On(B,L1,T), L != L1.
"""

TVLP_EX10 = """\
a <- : a.
-a <- : -a.
b <- a : top.
"""

F_CHOICE = "const f : {1,2,3}.\n{f=1}.\n"
F_CHOICE_CONFLICT = "const f : {1,2,3}.\n{f=1} & f=2.\n"
# the same formulas read as first-order sentences over rigid numerals
F_CHOICE_FO = "func f/0.\nrigid 1, 2, 3.\nuniverse 1, 2, 3.\n{f=1}.\n"
F_CHOICE_CONFLICT_FO = "func f/0.\nrigid 1, 2, 3.\nuniverse 1, 2, 3.\n{f=1} & f=2.\n"
EXAMPLE4 = "pred p/1, -p/1.\nfunc f/0, g/0.\nuniverse 1, 2.\np(f) & -p(g).\n"

CORPUS_NAMES = (
    "transition8",
    "bw-sneg0",
    "bw-func",
    "bw-sneg21",
    "tvlp-ex10",
    "f-choice",
    "f-choice-conflict",
    "example4",
)


@dataclass
class CorpusEntry:
    name: str
    dialect: str
    text: str
    artifact: object
    meta: Dict[str, object] = field(default_factory=dict)


def builtin_corpus(name: str, blocks: int = 2, steps: int = 1) -> CorpusEntry:
    """A named corpus artifact; Blocks World entries take sizes."""
    if name == "transition8":
        return CorpusEntry(name, "asp", TRANSITION8, parse_asp(TRANSITION8))
    if name in ("bw-sneg0", "bw-func", "bw-sneg21"):
        if blocks < 1 or steps < 1:
            raise LogicError("Blocks World needs at least one block and one step")
        body = {"bw-sneg0": BW_SNEG0, "bw-func": BW_FUNC, "bw-sneg21": BW_SNEG21}[name]
        text = _bw_header(blocks, steps) + body
        art = instantiate(text)
        return CorpusEntry(name, "schema", text, art, {"blocks": blocks, "steps": steps})
    if name == "tvlp-ex10":
        return CorpusEntry(name, "tvlp", TVLP_EX10, parse_tvlp(TVLP_EX10))
    if name == "f-choice":
        return CorpusEntry(name, "mv", F_CHOICE, parse_mv(F_CHOICE), {"fo": F_CHOICE_FO})
    if name == "f-choice-conflict":
        return CorpusEntry(
            name, "mv", F_CHOICE_CONFLICT, parse_mv(F_CHOICE_CONFLICT), {"fo": F_CHOICE_CONFLICT_FO}
        )
    if name == "example4":
        return CorpusEntry(name, "fo", EXAMPLE4, parse_fo(EXAMPLE4))
    raise LogicError(f"unknown corpus entry {name!r}; known: {', '.join(CORPUS_NAMES)}")
