"""The twelve acceptance criteria, each reported as one PASS/FAIL line.

Corpus for criteria 5-7 and 12: every formula with at most three atom leaves
and at most two unit leaves.  Sources are labelled X, Y, Z from left to
right; targets range over every labelling from {X, Y, Z}, so permuted and
repeated atoms appear on the target side.
"""
import random

import pytest

from gen import cat_from, cc_size, formula, rng_choose, seq_deriv
from skewcat import catcalc as cc
from skewcat import focused as fo
from skewcat import seqcalc as sc
from skewcat.bridge import cmplt, cmplt_seq, sound
from skewcat.core import Atom, I, NormalityFlags, Tensor, formulas_upto, frontier, is_closed, parse_formula
from skewcat.rewrite import RewriteLimitExceeded, max_steps, one_step_rewrites, redexes, rewrite_nf

SETTINGS = NormalityFlags.all_settings()
OFF = NormalityFlags()
ALL = NormalityFlags(True, True, True)

SOURCES = list(formulas_upto(3, 2))
TARGETS = list(formulas_upto(3, 2, distinct_in_order=False))


def count(flags, a, c, ctx=()):
    return fo.count_derivations(flags, a, tuple(ctx), c)


def pf(text):
    return parse_formula(text)


def matched_pairs():
    # pairs whose frontiers differ have no derivations at any flag setting
    by_frontier = {}
    for c in TARGETS:
        by_frontier.setdefault(frontier(c), []).append(c)
    for a in SOURCES:
        for c in by_frontier.get(frontier(a), ()):
            yield a, c


def test_criterion_01_count_regression(criterion):
    with criterion(1, "count regression, all flags off") as cr:
        for text, n in [("X * (I * Y)", 2), ("(X * I) * Y", 2)]:
            got = count(OFF, pf(text), pf(text))
            cr.check(got == n, f"{text}: expected {n}, got {got}")


def test_criterion_02_normality_collapse(criterion):
    with criterion(2, "normality collapse under ln / rn") as cr:
        j8, j9 = pf("X * (I * Y)"), pf("(X * I) * Y")
        got = count(NormalityFlags(ln=True), j8, j8)
        cr.check(got == 1, f"ln: expected 1, got {got}")
        got = count(NormalityFlags(rn=True), j9, j9)
        cr.check(got == 1, f"rn: expected 1, got {got}")


def test_criterion_03_underivability(criterion):
    with criterion(3, "underivable sequents, all flags off") as cr:
        for a, c in [("X", "I * X"), ("X * I", "X"), ("X * (Y * Z)", "(X * Y) * Z")]:
            got = count(OFF, pf(a), pf(c))
            cr.check(got == 0, f"{a} |- {c}: expected 0, got {got}")


def test_criterion_04_structural_maps(criterion):
    with criterion(4, "structural maps derivable at every flag setting") as cr:
        cases = [("A", "A * I"), ("(A * B) * C", "A * (B * C)"), ("I * A", "A")]
        for flags in SETTINGS:
            for a, c in cases:
                got = count(flags, pf(a), pf(c))
                cr.check(got >= 1, f"[{flags}] {a} |- {c}: got {got}")


def test_criterion_05_mac_lane(criterion):
    with criterion(5, "Mac Lane coherence, all flags on") as cr:
        for a in SOURCES:
            fa = frontier(a)
            for c in TARGETS:
                n = count(ALL, a, c)
                cr.check(n == (1 if fa == frontier(c) else 0), lambda: f"{a} |- {c}: {n}")
        cr.detail = f"{len(SOURCES)} x {len(TARGETS)} pairs"


def test_criterion_06_thinness(criterion):
    with criterion(6, "thinness under ln and rn, an off and on") as cr:
        for an in (False, True):
            flags = NormalityFlags(True, True, an)
            for a in SOURCES:
                for c in TARGETS:
                    n = count(flags, a, c)
                    cr.check(n <= 1, lambda: f"[{flags}] {a} |- {c}: {n}")


def test_criterion_07_focus_emb_bijection(criterion):
    with criterion(7, "focus(emb(d)) == d at all 8 flag settings") as cr:
        total = 0
        for flags in SETTINGS:
            for a, c in matched_pairs():
                for d in fo.search(flags, fo.root(a, (), c)):
                    total += 1
                    cr.check(fo.focus(fo.emb(d, flags), flags) == d, lambda: f"[{flags}] {fo.dumps(d)}")
            fo.clear_caches()
        cr.detail = f"{total} derivations"


def test_criterion_08_sound_cmplt_roundtrips(criterion):
    with criterion(8, "sound/cmplt roundtrips, 500 + 500 per flag setting") as cr:
        for i, flags in enumerate(SETTINGS):
            for k in range(500):
                ch = rng_choose(10_000 * i + k)
                f = cat_from(ch, flags, formula(ch, 2), 12)
                cr.check(cc_size(f) <= 12, "generated term too large")
                cr.check(cc.cat_equal(sound(cmplt(f, flags), flags), f, flags),
                         lambda: f"[{flags}] cat {cc.dumps(f)}")
            for k in range(500):
                g = seq_deriv(rng_choose(20_000 * (i + 1) + k), flags, 10)
                s = sc.check_seq(g, flags)
                back = cmplt_seq(sound(g, flags), s.stoup, s.context, flags)
                cr.check(sc.seq_equal(back, g, flags), lambda: f"[{flags}] seq {sc.dumps(g)}")


def test_criterion_09_focus_respects_congruence(criterion):
    with criterion(9, "one rewrite step leaves focus unchanged, 1000 trials") as cr:
        rng = random.Random(9)
        trials = seed = 0
        used = set()
        while trials < 1000:
            seed += 1
            flags = SETTINGS[seed % 8]
            d = seq_deriv(rng_choose(30_000 + seed), flags, 10)
            steps = list(one_step_rewrites(d, flags))
            if not steps:
                continue
            path, name, r = steps[rng.randrange(len(steps))]
            used.add(name)
            trials += 1
            cr.check(sc.check_seq(r, flags) == sc.check_seq(d, flags) and
                     fo.focus(r, flags) == fo.focus(d, flags),
                     lambda: f"[{flags}] {name} at {path} in {sc.dumps(d)}")
        cr.detail = f"{len(used)} distinct generators exercised"


def test_criterion_10_rewrite_system(criterion):
    with criterion(10, "rewrite_nf terminates, redex-free, idempotent, strategies agree") as cr:
        cap = max_steps()
        for i, flags in enumerate(SETTINGS):
            for k in range(500):
                d = seq_deriv(rng_choose(40_000 + 1000 * i + k), flags, 10)
                try:
                    nf = rewrite_nf(d, flags, "innermost", cap)
                    out = rewrite_nf(d, flags, "outermost", cap)
                except RewriteLimitExceeded as e:
                    cr.check(False, f"[{flags}] {e}")
                    continue
                cr.check(redexes(nf, flags) == [], lambda: f"[{flags}] redex left in {sc.dumps(nf)}")
                cr.check(rewrite_nf(nf, flags) == nf, lambda: f"[{flags}] not idempotent on {sc.dumps(d)}")
                cr.check(out == nf, lambda: f"[{flags}] strategies disagree on {sc.dumps(d)}")


def test_criterion_11_closedness_lemma(criterion):
    with criterion(11, "closed succedent forces closed stoup and context") as cr:
        stoups = list(formulas_upto(2, 2))
        items = list(formulas_upto(1, 2))
        contexts = [()] + [(x,) for x in items] + [(x, y) for x in items for y in items]
        closed = [I, pf("I * I"), pf("(I * I) * I"), pf("I * (I * I)")]
        derivable = 0
        for flags in SETTINGS:
            for a in stoups:
                for ctx in contexts:
                    for j in closed:
                        for d in fo.search(flags, fo.root(a, ctx, j)):
                            derivable += 1
                            cr.check(is_closed(a) and all(map(is_closed, ctx)),
                                     lambda: f"[{flags}] {fo.dumps(d)}")
            fo.clear_caches()
        cr.detail = f"{derivable} derivations"


def test_criterion_12_passive_purity(criterion):
    with criterion(12, "passive contexts pure under rn / an") as cr:
        audited = 0
        for flags in SETTINGS:
            if not (flags.rn or flags.an):
                continue
            for a, c in matched_pairs():
                for d in fo.search(flags, fo.root(a, (), c)):
                    audited += 1
                    bad = fo.purity_violations(d, flags)
                    cr.check(not bad, lambda: f"[{flags}] {fo.dumps(d)}: {bad[:1]}")
            fo.clear_caches()
        cr.detail = f"{audited} derivations"
