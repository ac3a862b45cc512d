"""The congruence on sequent derivations, read left to right as rewrite rules.

Each rule is a named root-step function; which rules are live depends on the
flags.  Context-rule commutations are generated once for every enabled
context rule X in {IC (rn), JJC (rn), OtLctx (an)}:

    Pass(X_q f)           -> X_{q+1}(Pass f)
    IL(X_q f)             -> X_q(IL f)
    OtL(X_q f), q >= 1    -> X_{q-1}(OtL f)
    OtR(X_q f, g)         -> X_q(OtR(f, g))
    OtR(f, X_q g)         -> X_{|G|+q}(OtR(f, g))          (G = context of f)
    OtRem(f, X_q g)       -> X_q(OtRem(f, g))              (ln)
    Y_p(X_q f), q >= p+w  -> X_{q-w+1}(Y_p f)              (w = 0 for IC, 2 otherwise)

With rn and an both on, JJC_p f -> OtLctx_p f, so closed tensors are always
decomposed by OtLctx.  The full table, with the flags each rule needs, is
``RULES`` below.
"""
from __future__ import annotations

import os
from typing import Callable, Iterator, Optional

from . import seqcalc as sc
from .core import NormalityFlags, SkewError, Tensor, Unit, is_closed

DEFAULT_MAX_STEPS = 10 ** 6


class RewriteLimitExceeded(SkewError):
    """The step cap was hit; with a terminating system this indicates a bug."""


def max_steps() -> int:
    return int(os.environ.get("SKEWCAT_MAX_STEPS", DEFAULT_MAX_STEPS))


def _ctx_len(d) -> int:
    return len(sc.conclusion(d).context)


def _enabled_ctx_rules(flags: NormalityFlags) -> tuple:
    out = ()
    if flags.rn:
        out += (sc.IC, sc.JJC)
    if flags.an:
        out += (sc.OtLctx,)
    return out


def _width(x) -> int:
    return 0 if x is sc.IC else 2


# --- base equations --------------------------------------------------------

def _ax_unit(d, flags):
    if isinstance(d, sc.Ax) and isinstance(d.a, Unit):
        return sc.IL(sc.IR())


def _ax_tensor(d, flags):
    if isinstance(d, sc.Ax) and isinstance(d.a, Tensor):
        a, b = d.a.left, d.a.right
        return sc.OtL(sc.OtR(sc.Ax(a), sc.Pass(sc.Ax(b))))


def _otr_pass(d, flags):
    if isinstance(d, sc.OtR) and isinstance(d.f, sc.Pass):
        return sc.Pass(sc.OtR(d.f.f, d.g))


def _otr_il(d, flags):
    if isinstance(d, sc.OtR) and isinstance(d.f, sc.IL):
        return sc.IL(sc.OtR(d.f.f, d.g))


def _otr_otl(d, flags):
    if isinstance(d, sc.OtR) and isinstance(d.f, sc.OtL):
        return sc.OtL(sc.OtR(d.f.f, d.g))


# --- left normality --------------------------------------------------------

def _otr_empty_pass(d, flags):
    if isinstance(d, sc.OtR) and isinstance(d.g, sc.Pass):
        s = sc.conclusion(d.f)
        if s.stoup is None and not s.context:
            return sc.Pass(sc.OtRem(d.f, d.g.f))


def _otrem_il(d, flags):
    if isinstance(d, sc.OtRem) and isinstance(d.g, sc.IL):
        return sc.IL(sc.OtR(d.f, d.g.f))


def _otrem_otl(d, flags):
    if isinstance(d, sc.OtRem) and isinstance(d.g, sc.OtL):
        return sc.OtL(sc.OtRem(d.f, d.g.f))


def _otrem_ctx(d, flags):
    if isinstance(d, sc.OtRem) and isinstance(d.g, _enabled_ctx_rules(flags)):
        x = d.g
        return type(x)(x.pos, sc.OtRem(d.f, x.f))


# --- right / associative normality -----------------------------------------

def _pass_il(d, flags):
    if isinstance(d, sc.Pass) and isinstance(d.f, sc.IL):
        return sc.IC(0, d.f.f)


def _pass_otl(d, flags):
    if isinstance(d, sc.Pass) and isinstance(d.f, sc.OtL):
        f = d.f.f
        if flags.an:
            return sc.OtLctx(0, sc.Pass(f))
        s = sc.conclusion(f)
        if is_closed(s.stoup) and is_closed(s.context[0]):
            return sc.JJC(0, sc.Pass(f))


def _jjc_to_otlctx(d, flags):
    if isinstance(d, sc.JJC):
        return sc.OtLctx(d.pos, d.f)


def _pass_ctx(d, flags):
    if isinstance(d, sc.Pass) and isinstance(d.f, _enabled_ctx_rules(flags)):
        x = d.f
        return type(x)(x.pos + 1, sc.Pass(x.f))


def _il_ctx(d, flags):
    if isinstance(d, sc.IL) and isinstance(d.f, _enabled_ctx_rules(flags)):
        x = d.f
        return type(x)(x.pos, sc.IL(x.f))


def _otl_ctx(d, flags):
    if isinstance(d, sc.OtL) and isinstance(d.f, _enabled_ctx_rules(flags)) and d.f.pos >= 1:
        x = d.f
        return type(x)(x.pos - 1, sc.OtL(x.f))


def _otr_ctx_left(d, flags):
    if isinstance(d, sc.OtR) and isinstance(d.f, _enabled_ctx_rules(flags)):
        x = d.f
        return type(x)(x.pos, sc.OtR(x.f, d.g))


def _otr_ctx_right(d, flags):
    if isinstance(d, sc.OtR) and isinstance(d.g, _enabled_ctx_rules(flags)):
        x = d.g
        return type(x)(_ctx_len(d.f) + x.pos, sc.OtR(d.f, x.f))


def _ctx_ctx(d, flags):
    live = _enabled_ctx_rules(flags)
    if isinstance(d, live) and isinstance(d.f, live):
        y, x = d, d.f
        w = _width(type(y))
        if x.pos >= y.pos + w:
            return type(x)(x.pos - w + 1, type(y)(y.pos, x.f))


Rule = Callable[[sc.SeqDeriv, NormalityFlags], Optional[sc.SeqDeriv]]

# (name, guard on flags, root step); the order is the priority at one position
RULES: tuple[tuple[str, Callable[[NormalityFlags], bool], Rule], ...] = (
    ("ax-unit", lambda fl: True, _ax_unit),
    ("ax-tensor", lambda fl: True, _ax_tensor),
    ("otr-pass", lambda fl: True, _otr_pass),
    ("otr-il", lambda fl: True, _otr_il),
    ("otr-otl", lambda fl: True, _otr_otl),
    ("otr-empty-pass", lambda fl: fl.ln, _otr_empty_pass),
    ("otrem-il", lambda fl: fl.ln, _otrem_il),
    ("otrem-otl", lambda fl: fl.ln, _otrem_otl),
    ("otrem-ctx", lambda fl: fl.ln and (fl.rn or fl.an), _otrem_ctx),
    ("pass-il", lambda fl: fl.rn, _pass_il),
    ("pass-otl", lambda fl: fl.rn or fl.an, _pass_otl),
    ("jjc-otlctx", lambda fl: fl.rn and fl.an, _jjc_to_otlctx),
    ("pass-ctx", lambda fl: fl.rn or fl.an, _pass_ctx),
    ("il-ctx", lambda fl: fl.rn or fl.an, _il_ctx),
    ("otl-ctx", lambda fl: fl.rn or fl.an, _otl_ctx),
    ("otr-ctx-left", lambda fl: fl.rn or fl.an, _otr_ctx_left),
    ("otr-ctx-right", lambda fl: fl.rn or fl.an, _otr_ctx_right),
    ("ctx-ctx", lambda fl: fl.rn or fl.an, _ctx_ctx),
)


def live_rules(flags: NormalityFlags) -> list[str]:
    return [name for name, guard, _ in RULES if guard(flags)]


def root_rewrites(d: sc.SeqDeriv, flags: NormalityFlags) -> Iterator[tuple[str, sc.SeqDeriv]]:
    """Every (rule name, result) of a rewrite step at the root of ``d``."""
    for name, guard, step in RULES:
        if guard(flags):
            r = step(d, flags)
            if r is not None:
                yield name, r


def one_step_rewrites(d: sc.SeqDeriv, flags: NormalityFlags) -> Iterator[tuple[tuple, str, sc.SeqDeriv]]:
    """Every single rewrite step anywhere in ``d``: (path, rule name, whole result)."""
    for name, r in root_rewrites(d, flags):
        yield (), name, r
    kids = sc.children(d)
    for i, k in enumerate(kids):
        for path, name, r in one_step_rewrites(k, flags):
            new = list(kids)
            new[i] = r
            yield (i,) + path, name, sc.with_children(d, tuple(new))


def redexes(d: sc.SeqDeriv, flags: NormalityFlags) -> list[tuple[tuple, str]]:
    return [(path, name) for path, name, _ in one_step_rewrites(d, flags)]


def is_normal(d: sc.SeqDeriv, flags: NormalityFlags) -> bool:
    return next(one_step_rewrites(d, flags), None) is None


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, d):
        self.used += 1
        if self.used > self.cap:
            raise RewriteLimitExceeded(f"rewrite step cap {self.cap} exceeded at {sc.dumps(d)}")


def rewrite_nf(d: sc.SeqDeriv, flags: NormalityFlags = NormalityFlags(), strategy: str = "innermost",
               cap: Optional[int] = None) -> sc.SeqDeriv:
    """Normal form under the live rules, by leftmost-innermost or leftmost-outermost steps."""
    budget = _Budget(max_steps() if cap is None else cap)
    if strategy == "innermost":
        return _innermost(d, flags, budget)
    if strategy == "outermost":
        return _outermost(d, flags, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


def _innermost(d, flags, budget):
    while True:
        kids = sc.children(d)
        if kids:
            new = tuple(_innermost(k, flags, budget) for k in kids)
            if any(a is not b for a, b in zip(new, kids)):
                d = sc.with_children(d, new)
        r = next(root_rewrites(d, flags), None)
        if r is None:
            return d
        budget.spend(d)
        d = r[1]


def _outermost(d, flags, budget):
    while True:
        step = next(_leftmost_outermost(d, flags), None)
        if step is None:
            return d
        budget.spend(d)
        d = step


def _leftmost_outermost(d, flags):
    for _, r in root_rewrites(d, flags):
        yield r
        return
    kids = sc.children(d)
    for i, k in enumerate(kids):
        for r in _leftmost_outermost(k, flags):
            new = list(kids)
            new[i] = r
            yield sc.with_children(d, tuple(new))
            return
