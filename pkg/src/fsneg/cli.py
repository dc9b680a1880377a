"""Command-line front end: solve, translate, ground, check, corpus.

Exit codes: 0 success, 1 failed check or inconsistency verdict, 2 usage,
parse or precondition error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional, Sequence

from . import fosm, mvsm, progsem, verify, xlate
from .ground import CORPUS_NAMES, GroundTheory, builtin_corpus, instantiate, propositionalize, value_second
from .logic import DEFAULT_CAP, CapExceeded, LogicError, conj, describe, signature_of
from .mvsm import MvSignature
from .progsem import Program, TvProgram
from .syntax import (
    ParseError,
    _lit,
    parse_asp,
    parse_fo,
    parse_mv,
    parse_tvlp,
    print_asp,
    print_fo,
    print_mv,
)

DIALECTS = ("asp", "mv", "fo", "tvlp", "schema")
SEMANTICS = ("asp", "mv", "tvlp", "fosm")
EXTENSIONS = {".lp": "asp", ".asp": "asp", ".mv": "mv", ".fo": "fo", ".tv": "tvlp", ".tvlp": "tvlp", ".schema": "schema"}
TRANSLATIONS = ("sneg-bf", "bf-sneg", "f-bf", "f-pred", "asp-mv", "tv-sm", "asp-fo", "eliminate")


class UsageError(LogicError):
    pass


class Output:
    """Collects text or machine records and writes them in one go."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.lines: List[str] = []

    def text(self, line: str = ""):
        if self.fmt == "text":
            self.lines.append(line)

    def record(self, kind: str, **fields):
        if self.fmt == "machine":
            self.lines.append(json.dumps({"kind": kind, **fields}, sort_keys=True, separators=(",", ":"), ensure_ascii=False))

    def flush(self):
        if self.lines:
            self.stream.write("\n".join(self.lines) + "\n")
        self.lines = []


# ---------------------------------------------------------------------------
# Loading artifacts


def _split(value: Optional[str]) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()] if value else []


def _bindings(items: Sequence[str]) -> Dict[str, List[str]]:
    out = {}
    for item in items or ():
        name, eq, vals = item.partition("=")
        if not eq:
            raise UsageError(f"--bind expects sort=v1,v2,... (got {item!r})")
        out[name.strip()] = _split(vals)
    return out


def load(args):
    """Return (dialect, parsed artifact, source text)."""
    if getattr(args, "corpus", None):
        entry = builtin_corpus(args.corpus, blocks=args.blocks, steps=args.steps)
        if args.dialect == "fo" and entry.dialect != "fo" and "fo" in entry.meta:
            # an alternative first-order reading of the same entry
            text = entry.meta["fo"]
            return "fo", parse_fo(text), text
        return entry.dialect, entry.artifact, entry.text
    if not args.source:
        raise UsageError("no input: give a file, '-' for stdin, or --corpus NAME")
    if args.source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(str(e)) from None
    dialect = args.dialect or EXTENSIONS.get(os.path.splitext(args.source)[1])
    if dialect is None:
        raise UsageError("cannot infer the dialect; pass --dialect")
    parsers = {"asp": parse_asp, "mv": parse_mv, "fo": parse_fo, "tvlp": parse_tvlp}
    if dialect == "schema":
        return dialect, instantiate(text, _bindings(args.bind)), text
    return dialect, parsers[dialect](text), text


def fo_problem(dialect, art, args):
    """(formula, signature, universe, intensional) for first-order input."""
    if isinstance(art, GroundTheory):
        universe = tuple(_split(args.universe)) or art.universe
        c = tuple(_split(args.intensional)) or art.intensional
        return art.formula, art.signature, universe, c
    if dialect != "fo":
        raise UsageError(f"{dialect} input has no first-order reading")
    f, sig, universe = art
    universe = tuple(_split(args.universe)) or universe
    if not universe:
        raise UsageError("first-order input needs --universe or a universe declaration")
    if sig is None:
        sig = signature_of(f, rigid=universe)
    c = tuple(_split(args.intensional))
    if not c:
        c = tuple(sorted(sig.preds)) + tuple(sorted(sig.funcs))
    return f, sig, universe, c


# ---------------------------------------------------------------------------
# Rendering


def lits_text(x) -> str:
    return " ".join(_lit(l) for l in sorted(x, key=lambda l: (l.lstrip("~"), l)))


def interp_record(i) -> Dict[str, object]:
    return {
        "preds": {k: sorted(list(t) for t in v) for k, v in sorted(i.preds.items())},
        "funcs": {k: sorted(list(a) + [v] for a, v in m.items()) for k, m in sorted(i.funcs.items())},
    }


def _default_semantics(dialect, art) -> str:
    if dialect == "asp" or isinstance(art, Program):
        return "asp"
    if dialect == "tvlp":
        return "tvlp"
    if dialect == "mv":
        return "mv"
    return "fosm"


def cmd_solve(args, out: Output) -> int:
    dialect, art, _ = load(args)
    sem = args.semantics or _default_semantics(dialect, art)
    cap = args.cap
    if sem == "asp":
        if not isinstance(art, Program):
            raise UsageError("asp semantics needs a program (asp or function-free schema input)")
        res = progsem.answer_sets(art, cap)
        for k, x in enumerate(res.models, 1):
            out.text(f"Answer {k}: {lits_text(x)}")
            out.record("model", index=k, semantics=sem, literals=sorted(_lit(l) for l in x))
        if res.inconsistent:
            out.text("INCONSISTENT: the set of all literals is the only answer set")
        out.text(f"Models: {len(res)}")
        out.record("summary", semantics=sem, count=len(res), inconsistent=res.inconsistent)
        return 1 if res.inconsistent else 0
    if sem == "mv":
        if isinstance(art, Program):
            f, sig = xlate.pi_to_mv(art), MvSignature.boolean(sorted(art.atoms))
        elif isinstance(art, TvProgram):
            f, sig = xlate.tv_to_sm(art), MvSignature.boolean(sorted(art.atoms))
        elif dialect == "mv":
            f, sig = art
        else:
            raise UsageError(f"mv semantics does not apply to {dialect} input")
        models = mvsm.mv_stable_models(f, sig, cap)
        for k, i in enumerate(models, 1):
            out.text(f"Model {k}: " + " ".join(f"{c}={v}" for c, v in sorted(i.items())))
            out.record("model", index=k, semantics=sem, values=dict(sorted(i.items())))
    elif sem == "tvlp":
        if not isinstance(art, TvProgram):
            raise UsageError("tvlp semantics needs tvlp input")
        models = progsem.tvlp_stable_models(art, cap)
        for k, x in enumerate(models, 1):
            out.text(f"Model {k}: {lits_text(x)}")
            out.record("model", index=k, semantics=sem, literals=sorted(_lit(l) for l in x))
    elif sem == "fosm":
        f, sig, universe, c = fo_problem(dialect, art, args)
        models = fosm.stable_models(f, c, sig, universe, cap=cap)
        for k, i in enumerate(models, 1):
            out.text(f"Model {k}: {describe(i)}")
            out.record("model", index=k, semantics=sem, interpretation=interp_record(i))
    else:
        raise UsageError(f"unknown semantics {sem!r}")
    out.text(f"Models: {len(models)}")
    out.record("summary", semantics=sem, count=len(models), inconsistent=False)
    return 0


def _print_bundle(out: Output, bundle, universe=None, mv_sig=None):
    def show(f, sig=None):
        if mv_sig is not None:
            return print_mv(f, mv_sig).rstrip("\n")
        return print_fo(f, sig, universe).rstrip("\n")

    out.text(f"% map {bundle.map_id}")
    out.text("% formula")
    out.text(show(bundle.formula, bundle.signature))
    for name, g in bundle.constraints.items():
        out.text(f"% constraint {name}")
        out.text(show(g))
    if bundle.bridge is not None:
        out.text("% bridge")
        out.text(show(bundle.bridge))
    out.record(
        "bundle",
        map=bundle.map_id,
        formula=show(bundle.formula, bundle.signature),
        constraints={k: show(v) for k, v in bundle.constraints.items()},
        bridge=show(bundle.bridge) if bundle.bridge is not None else None,
    )


def cmd_translate(args, out: Output) -> int:
    dialect, art, _ = load(args)
    via = args.via
    if via == "asp-mv":
        if not isinstance(art, Program):
            raise UsageError("asp-mv needs a program")
        sig = MvSignature.boolean(sorted(art.atoms))
        text = print_mv(xlate.pi_to_mv(art), sig).rstrip("\n")
        out.text(text)
        out.record("formula", dialect="mv", text=text)
        return 0
    if via == "tv-sm":
        if not isinstance(art, TvProgram):
            raise UsageError("tv-sm needs a tvlp program")
        sig = MvSignature.boolean(sorted(art.atoms))
        text = print_mv(xlate.tv_to_sm(art), sig).rstrip("\n")
        out.text(text)
        out.record("formula", dialect="mv", text=text)
        return 0
    if via == "asp-fo":
        if not isinstance(art, Program):
            raise UsageError("asp-fo needs a program")
        text = print_fo(xlate.program_to_formula(art), xlate.program_signature(art)).rstrip("\n")
        out.text(text)
        out.record("formula", dialect="fo", text=text)
        return 0
    f, sig, universe, c = fo_problem(dialect, art, args)
    if via == "eliminate":
        if not isinstance(art, GroundTheory):
            raise UsageError("eliminate needs schema input with functions")
        rename = dict(kv.split("=", 1) for kv in _split(args.rename))
        theory = GroundTheory(f, sig, universe, c)
        g, ue, uec, _ = verify.eliminate_functions(theory, rename, emit_uec=args.uec)
        full = conj([g] + (uec if args.uec else ue))
        prog = xlate.formula_to_program(propositionalize(full, universe, value_second))
        text = print_asp(prog).rstrip("\n")
        out.text(text)
        out.record("program", dialect="asp", text=text)
        return 0
    if not args.target:
        raise UsageError(f"{via} needs --target")
    rest = tuple(x for x in c if x not in (args.target, "~" + args.target))
    if via == "sneg-bf":
        bundle = xlate.sneg_to_boolfunc(f, args.target, args.fresh or args.target + "_b", rest, sig, force=args.force)
    elif via == "bf-sneg":
        bundle = xlate.boolfunc_to_sneg(f, args.target, args.fresh or args.target + "_p", rest, sig)
    elif via == "f-bf":
        bundle = xlate.func_to_boolfunc(f, args.target, args.fresh or args.target + "_b", rest, sig)
    elif via == "f-pred":
        bundle = xlate.func_to_pred(f, args.target, args.fresh or args.target + "_p", rest, sig, emit_uec=args.uec)
    else:
        raise UsageError(f"unknown translation {via!r}")
    _print_bundle(out, bundle, universe)
    return 0


def cmd_ground(args, out: Output) -> int:
    dialect, art, _ = load(args)
    if dialect != "schema":
        raise UsageError("ground needs schema input")
    if isinstance(art, Program):
        text = print_asp(art, declare_atoms=True).rstrip("\n")
        out.text(text)
        out.record("program", dialect="asp", text=text)
    else:
        text = print_fo(art.formula, art.signature, art.universe).rstrip("\n")
        out.text(text)
        out.record("theory", dialect="fo", text=text, intensional=list(art.intensional))
    return 0


def _fo_instance(dialect, art, args):
    f, sig, universe, c = fo_problem(dialect, art, args)
    if not args.target:
        raise UsageError("first-order checks need --target")
    target = args.target
    rest = tuple(x for x in c if x not in (target, "~" + target))
    path = tuple(p for p in (args.path or "").split("/") if p) if args.path is not None else None
    replacement = None
    if args.replacement:
        replacement, _, _ = parse_fo(args.replacement + ".")
    truth = tuple(_split(args.truth)) or None
    return verify.FoInstance(f, sig, universe, rest, target, args.fresh, path, replacement, truth)


def _emit_report(out: Output, rep) -> None:
    out.text(str(rep))
    out.record("report", **rep.record())


def cmd_check(args, out: Output) -> int:
    theorem = verify.ALIASES.get(args.theorem, args.theorem)
    reports = []
    if theorem == "BW":
        bw = verify.blocks_world_pipeline(args.blocks, args.steps, args.cap)
        reports = [bw.report, bw.uec_report, bw.sneg21_report]
    elif args.random:
        if args.count < 1:
            raise UsageError("--count must be positive")
        size = {k: int(v) for k, v in (kv.split("=", 1) for kv in _split(args.size))}
        base = args.seed or 0
        for k in range(args.count):
            seed = base + k
            if theorem == "T2":
                inst = verify.random_dneg_instance(seed, size)
            else:
                inst = verify.random_instance(args.random, size, seed, target=args.target or "f")
            rep = verify.check_theorem(theorem, inst, args.cap, args.force, seed, size)
            reports.append(rep)
    elif theorem == "Ex4":
        reports = [verify.check_theorem("Ex4", None, args.cap)]
    else:
        dialect, art, _ = load(args)
        if theorem in ("T1", "T-tv2sm"):
            inst = art
        else:
            inst = _fo_instance(dialect, art, args)
        reports = [verify.check_theorem(theorem, inst, args.cap, args.force, args.seed)]
    for rep in reports:
        _emit_report(out, rep)
    verdicts = {r.verdict for r in reports}
    if len(reports) > 1:
        out.text(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
        out.record("summary", passed=sum(r.passed for r in reports), total=len(reports))
    if "fail" in verdicts:
        return 1
    if "precondition" in verdicts:
        return 2
    return 0


def cmd_corpus(args, out: Output) -> int:
    if not args.name:
        for name in CORPUS_NAMES:
            entry = builtin_corpus(name)
            out.text(f"{name}\t{entry.dialect}")
            out.record("corpus", name=name, dialect=entry.dialect)
        return 0
    entry = builtin_corpus(args.name, blocks=args.blocks, steps=args.steps)
    out.text(entry.text.rstrip("\n"))
    out.record("corpus", name=entry.name, dialect=entry.dialect, text=entry.text)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dialect", choices=DIALECTS)
    common.add_argument("--semantics", choices=SEMANTICS)
    common.add_argument("--intensional", help="comma-separated intensional constants")
    common.add_argument("--universe", help="comma-separated universe elements")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (default from FSNEG_CAP)")
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--corpus", choices=CORPUS_NAMES, help="use a built-in corpus entry as input")
    common.add_argument("--blocks", type=int, default=2)
    common.add_argument("--steps", type=int, default=1)
    common.add_argument("--bind", action="append", help="bind a schema sort: name=v1,v2")

    ap = argparse.ArgumentParser(prog="fsneg", description="Stable models with strong negation and functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="enumerate stable models")
    p.add_argument("source", nargs="?")

    p = sub.add_parser("translate", parents=[common], help="apply a translation")
    p.add_argument("source", nargs="?")
    p.add_argument("--via", choices=TRANSLATIONS, required=True)
    p.add_argument("--target", help="predicate or function to eliminate")
    p.add_argument("--fresh", help="name of the introduced constant")
    p.add_argument("--force", action="store_true", help="skip the plainness check")
    p.add_argument("--uec", action="store_true", help="emit the constraint form of uniqueness")
    p.add_argument("--rename", help="base renames for eliminate, e.g. Loc=On")

    p = sub.add_parser("ground", parents=[common], help="instantiate a schema")
    p.add_argument("source", nargs="?")

    p = sub.add_parser("check", parents=[common], help="verify a theorem on an instance")
    p.add_argument("theorem", help=", ".join(verify.THEOREMS + ("BW",)))
    p.add_argument("source", nargs="?")
    p.add_argument("--target")
    p.add_argument("--fresh")
    p.add_argument("--force", action="store_true")
    p.add_argument("--truth", help="TRUE,FALSE carrier elements")
    p.add_argument("--path", help="slash-separated path to a negation (T2)")
    p.add_argument("--replacement", help="replacement formula H' (T2)")
    p.add_argument("--random", choices=("program-sneg", "mv-formula", "tv-program", "f-plain-formula"))
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--size", help="generator sizes, e.g. universe=2,rules=3")

    p = sub.add_parser("corpus", parents=[common], help="list or dump built-in artifacts")
    p.add_argument("name", nargs="?", choices=CORPUS_NAMES)
    return ap


COMMANDS = {"solve": cmd_solve, "translate": cmd_translate, "ground": cmd_ground, "check": cmd_check, "corpus": cmd_corpus}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    out = Output(args.format)
    try:
        code = COMMANDS[args.command](args, out)
    except CapExceeded as e:
        out.flush()
        _error(args.format, 3, e)
        return 3
    except (ParseError, UsageError, LogicError) as e:
        out.flush()
        _error(args.format, 2, e)
        return 2
    out.flush()
    return code


def _error(fmt: str, code: int, e: Exception) -> None:
    if fmt == "machine":
        sys.stdout.write(json.dumps({"kind": "error", "code": code, "message": str(e)}, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stderr.write(f"fsneg: error: {e}\n")


if __name__ == "__main__":
    sys.exit(main())
