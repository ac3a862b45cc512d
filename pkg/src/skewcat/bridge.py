"""Translations between the categorical and the sequent calculus.

``sound`` interprets a sequent derivation of S | G --> C as a map
[[S|G]] ==> C.  ``cmplt`` sends a map A ==> C to a derivation of A | --> C;
``cmplt_seq`` generalises it to an arbitrary antecedent by cutting against
the canonical derivation of S | G --> [[S|G]].

Case table for ``cmplt``::

    id_A            ax_A
    g . f           scut(cmplt f, cmplt g)
    f (x) g         OtL(OtR(cmplt f, Pass(cmplt g)))
    lambda_A        OtL(IL(Pass(ax_A)))
    rho_A           OtR(ax_A, IR)
    alpha_ABC       OtL(OtL(OtR(ax_A, Pass(OtR(ax_B, Pass(ax_C))))))
    lambda^-1_A     OtRem(IR, ax_A)                                  (ln)
    rho^-1_A        OtL(IC_0(ax_A))                                  (rn)
    alpha^-1_ABC    OtL(OtLctx_0(OtR(OtR(ax_A, Pass ax_B), Pass ax_C)))   (an)
"""
from __future__ import annotations

from . import catcalc as cc
from . import seqcalc as sc
from .core import Formula, NormalityFlags, TypeMismatch, I, interp_antecedent


def _psi(a: Formula, delta) -> cc.CatDeriv:
    # [[a|D]] ==> a * [[-|D]]
    f = cc.Rho(a)
    prefix: list = []
    for d in delta:
        f = cc.Comp(cc.Alpha(a, interp_antecedent(None, prefix), d), cc.TensorMap(f, cc.Id(d)))
        prefix.append(d)
    return f


def sound(f: sc.SeqDeriv, flags: NormalityFlags = NormalityFlags()) -> cc.CatDeriv:
    """The map [[S|G]] ==> C denoted by ``f``."""
    sc.check_seq(f, flags)
    return _sound(f)


def _sound(f) -> cc.CatDeriv:
    match f:
        case sc.Ax(a):
            return cc.Id(a)
        case sc.IR():
            return cc.Id(I)
        case sc.Pass(g):
            s = sc.conclusion(g)
            return cc.Comp(_sound(g), cc.tensor_ctx(cc.Lam(s.stoup), s.context))
        case sc.IL(g) | sc.OtL(g):
            return _sound(g)
        case sc.OtR(g, h, _):
            s = sc.conclusion(g)
            t = sc.conclusion(h)
            return cc.Comp(cc.TensorMap(_sound(g), _sound(h)),
                           _psi(interp_antecedent(s.stoup, s.context), t.context))
        case sc.OtRem(g, h):
            b = sc.conclusion(h).succedent
            return cc.comp(cc.TensorMap(_sound(g), cc.Id(b)), cc.LamInv(b), _sound(h))
        case sc.IC(p, g) | sc.JJC(p, g) | sc.OtLctx(p, g):
            s = sc.conclusion(g)
            base = interp_antecedent(s.stoup, s.context[:p])
            if isinstance(f, sc.IC):
                step, rest = cc.RhoInv(base), s.context[p:]
            elif isinstance(f, sc.JJC):
                step, rest = cc.alpha_c_inv(base, s.context[p], s.context[p + 1]), s.context[p + 2:]
            else:
                step, rest = cc.AlphaInv(base, s.context[p], s.context[p + 1]), s.context[p + 2:]
            return cc.Comp(_sound(g), cc.tensor_ctx(step, rest))
    raise TypeMismatch(f"not a sequent derivation: {f!r}")


def cmplt(f: cc.CatDeriv, flags: NormalityFlags = NormalityFlags()) -> sc.SeqDeriv:
    """The derivation of A | --> C for a map A ==> C."""
    cc.check_cat(f, flags)
    return _cmplt(f)


def _cmplt(f) -> sc.SeqDeriv:
    match f:
        case cc.Id(a):
            return sc.Ax(a)
        case cc.Comp(g, h):
            return sc.scut(_cmplt(h), _cmplt(g))
        case cc.TensorMap(g, h):
            return sc.OtL(sc.OtR(_cmplt(g), sc.Pass(_cmplt(h)), 0))
        case cc.Lam(a):
            return sc.OtL(sc.IL(sc.Pass(sc.Ax(a))))
        case cc.Rho(a):
            return sc.OtR(sc.Ax(a), sc.IR(), 0)
        case cc.Alpha(a, b, c):
            return sc.OtL(sc.OtL(sc.OtR(sc.Ax(a), sc.Pass(sc.OtR(sc.Ax(b), sc.Pass(sc.Ax(c)), 0)), 0)))
        case cc.LamInv(a):
            return sc.OtRem(sc.IR(), sc.Ax(a))
        case cc.RhoInv(a):
            return sc.OtL(sc.IC(0, sc.Ax(a)))
        case cc.AlphaInv(a, b, c):
            inner = sc.OtR(sc.OtR(sc.Ax(a), sc.Pass(sc.Ax(b)), 0), sc.Pass(sc.Ax(c)), 1)
            return sc.OtL(sc.OtLctx(0, inner))
    raise TypeMismatch(f"not a categorical derivation: {f!r}")


def cmplt_seq(f: cc.CatDeriv, stoup, ctx, flags: NormalityFlags = NormalityFlags()) -> sc.SeqDeriv:
    """The derivation of S | G --> C for a map [[S|G]] ==> C."""
    a, _ = cc.check_cat(f, flags)
    if a != interp_antecedent(stoup, ctx):
        raise TypeMismatch("cmplt_seq: source is not the interpretation of the antecedent")
    return sc.scut(sc.unfold(stoup, tuple(ctx)), _cmplt(f))


def hom_enumerate(flags: NormalityFlags, a: Formula, c: Formula) -> list:
    """One categorical representative per equivalence class of maps a ==> c."""
    from .focused import emb, root, search

    return [_sound(emb(d, flags)) for d in search(flags, root(a, (), c))]
