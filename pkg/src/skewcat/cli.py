"""Command-line front end.

    skewcat enumerate [--ln] [--rn] [--an] "<sequent>"
    skewcat count     [flags] "<sequent>"
    skewcat equal     [flags] "<catderiv>" "<catderiv>"
    skewcat normalize [flags] "<seqderiv>"
    skewcat hom       [flags] "<formula>" "<formula>"
    skewcat coherence [--max-atoms K] [--seed S] [--trials N]

``--json`` switches to line-delimited JSON.  A positional argument ``-`` is
read from standard input.  Exit status: 0 on success, 1 for a negative
``equal`` or a failed audit, 2 for parse and type errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, TextIO

from . import bridge, catcalc, focused, seqcalc
from .core import (Atom, Formula, I, NormalityFlags, SkewError, Tensor, frontier, parse_formula,
                   parse_sequent, print_formula)
from .rewrite import rewrite_nf


class _Out:
    def __init__(self, stream: TextIO, as_json: bool):
        self.stream = stream
        self.as_json = as_json

    def emit(self, text: str, **record):
        if self.as_json:
            self.stream.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        else:
            self.stream.write(text + "\n")


def _arg(value: str, stdin: TextIO) -> str:
    return stdin.read().strip() if value == "-" else value


def _flags(ns) -> NormalityFlags:
    return NormalityFlags(ns.ln, ns.rn, ns.an)


def _root(text: str) -> focused.FocSequent:
    s = parse_sequent(text)
    return focused.root(s.stoup, s.context, s.succedent)


def _cmd_enumerate(ns, out, stdin) -> int:
    ds = focused.search(_flags(ns), _root(_arg(ns.sequent, stdin)))
    for d in ds:
        out.emit(focused.dumps(d), derivation=focused.dumps(d))
    out.emit(f"count: {len(ds)}", count=len(ds))
    return 0


def _cmd_count(ns, out, stdin) -> int:
    s = parse_sequent(_arg(ns.sequent, stdin))
    n = focused.count_derivations(_flags(ns), s.stoup, s.context, s.succedent)
    out.emit(str(n), count=n)
    return 0


def _cmd_equal(ns, out, stdin) -> int:
    fl = _flags(ns)
    f = catcalc.loads(_arg(ns.left, stdin))
    g = catcalc.loads(_arg(ns.right, stdin))
    eq = catcalc.cat_equal(f, g, fl)
    out.emit("equal" if eq else "not-equal", equal=eq)
    return 0 if eq else 1


def _cmd_normalize(ns, out, stdin) -> int:
    fl = _flags(ns)
    d = seqcalc.loads(_arg(ns.derivation, stdin))
    seqcalc.check_seq(d, fl)
    foc = focused.dumps(focused.focus(d, fl))
    nf = seqcalc.dumps(rewrite_nf(d, fl))
    if out.as_json:
        out.emit("", focused=foc, rewrite=nf)
    else:
        out.emit(f"focused: {foc}")
        out.emit(f"rewrite: {nf}")
    return 0


def _cmd_hom(ns, out, stdin) -> int:
    a = parse_formula(_arg(ns.source, stdin))
    c = parse_formula(_arg(ns.target, stdin))
    maps = bridge.hom_enumerate(_flags(ns), a, c)
    for m in maps:
        out.emit(catcalc.dumps(m), map=catcalc.dumps(m))
    out.emit(f"count: {len(maps)}", count=len(maps))
    return 0


# --- coherence audit ------------------------------------------------------

def _random_tree(rng: random.Random, leaves: list) -> Formula:
    if len(leaves) == 1:
        return leaves[0]
    k = rng.randint(1, len(leaves) - 1)
    return Tensor(_random_tree(rng, leaves[:k]), _random_tree(rng, leaves[k:]))


def _with_units(rng: random.Random, atoms: list, max_units: int) -> list:
    leaves = list(atoms)
    for _ in range(rng.randint(0 if atoms else 1, max_units)):
        leaves.insert(rng.randint(0, len(leaves)), I)
    return leaves


def _random_pair(rng: random.Random, max_atoms: int) -> tuple[Formula, Formula]:
    names = [f"X{i}" for i in range(max_atoms)]
    xs = [Atom(rng.choice(names)) for _ in range(rng.randint(0, max_atoms))]
    a = _random_tree(rng, _with_units(rng, xs, 2))
    if rng.random() < 0.5:
        ys = xs                      # same frontier: the interesting case
    else:
        ys = [Atom(rng.choice(names)) for _ in range(rng.randint(0, max_atoms))]
    c = _random_tree(rng, _with_units(rng, ys, 2))
    return a, c


def _cmd_coherence(ns, out, stdin) -> int:
    rng = random.Random(ns.seed)
    full = NormalityFlags(True, True, True)
    thin = (NormalityFlags(True, True, False), full)
    mac_fail = thin_fail = 0
    for _ in range(ns.trials):
        a, c = _random_pair(rng, ns.max_atoms)
        n = focused.count_derivations(full, a, (), c)
        if n != (1 if frontier(a) == frontier(c) else 0):
            mac_fail += 1
            out.emit(f"mac-lane counterexample: {print_formula(a)} |- {print_formula(c)} ({n})",
                     check="mac-lane", source=print_formula(a), target=print_formula(c), count=n)
        for fl in thin:
            m = focused.count_derivations(fl, a, (), c)
            if m > 1:
                thin_fail += 1
                out.emit(f"thinness counterexample [{fl}]: {print_formula(a)} |- {print_formula(c)} ({m})",
                         check="thinness", flags=str(fl), source=print_formula(a),
                         target=print_formula(c), count=m)
    for name, bad in (("mac-lane", mac_fail), ("thinness", thin_fail)):
        verdict = "pass" if bad == 0 else "fail"
        out.emit(f"{name}: {verdict} ({ns.trials} trials, {bad} failures)",
                 check=name, result=verdict, trials=ns.trials, failures=bad)
    return 0 if mac_fail == thin_fail == 0 else 1


# --- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ln", action="store_true", help="left normal: lambda invertible")
    common.add_argument("--rn", action="store_true", help="right normal: rho invertible")
    common.add_argument("--an", action="store_true", help="associative normal: alpha invertible")
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")

    p = argparse.ArgumentParser(prog="skewcat", description="Coherence tools for skew monoidal categories.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("enumerate", _cmd_enumerate, "list focused derivations of a sequent"),
                               ("count", _cmd_count, "count focused derivations of a sequent")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("sequent", help='e.g. "X * (I * Y) | |- X * (I * Y)" or "A |- C"')
        s.set_defaults(fn=fn)

    s = sub.add_parser("equal", parents=[common], help="decide equality of two categorical maps")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=_cmd_equal)

    s = sub.add_parser("normalize", parents=[common], help="focused and rewrite normal forms")
    s.add_argument("derivation")
    s.set_defaults(fn=_cmd_normalize)

    s = sub.add_parser("hom", parents=[common], help="one map per equivalence class A ==> C")
    s.add_argument("source")
    s.add_argument("target")
    s.set_defaults(fn=_cmd_hom)

    s = sub.add_parser("coherence", help="randomised Mac Lane and thinness audit")
    s.add_argument("--max-atoms", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--json", action="store_true", help="line-delimited JSON output")
    s.set_defaults(fn=_cmd_coherence)
    return p


def run_cli(argv: list[str], stdout: Optional[TextIO] = None, stdin: Optional[TextIO] = None,
            stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = _Out(stdout, ns.json)
    try:
        return ns.fn(ns, out, stdin)
    except SkewError as e:
        if ns.json:
            stdout.write(json.dumps({"error": str(e), "kind": type(e).__name__}) + "\n")
        stderr.write(f"error: {e}\n")
        return 2


def main(argv: Optional[list[str]] = None) -> int:
    return run_cli(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
