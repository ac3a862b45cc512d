import pytest
from hypothesis import given, settings, strategies as st

from gen import seq_derivs
from helpers import SETTINGS, random_seq
from skewcat import focused as fo
from skewcat.core import Atom, I, NormalityFlags, parse_formula
from skewcat.rewrite import (RULES, RewriteLimitExceeded, is_normal, live_rules, one_step_rewrites, redexes,
                             rewrite_nf)
from skewcat.seqcalc import IC, IL, IR, JJC, Ax, OtLctx, OtR, OtRem, Pass, check_seq

X, Y = Atom("X"), Atom("Y")


def test_rule_table_gating():
    names = [n for n, _, _ in RULES]
    assert len(names) == len(set(names))
    assert live_rules(NormalityFlags()) == ["ax-unit", "ax-tensor", "otr-pass", "otr-il", "otr-otl"]
    assert "otrem-il" in live_rules(NormalityFlags(ln=True))
    assert "pass-il" in live_rules(NormalityFlags(rn=True))
    assert "jjc-otlctx" not in live_rules(NormalityFlags(rn=True))
    assert "jjc-otlctx" in live_rules(NormalityFlags(rn=True, an=True))
    assert set(live_rules(NormalityFlags(True, True, True))) == set(names)


def test_worked_rewrites():
    ln = NormalityFlags(ln=True)
    # empty-antecedent first premise against a pass: the stoup goes to the second premise
    d = OtR(IR(), Pass(Ax(X)))
    assert rewrite_nf(d, ln) == Pass(OtRem(IR(), Ax(X)))
    assert rewrite_nf(d, NormalityFlags()) == d
    rn_an = NormalityFlags(rn=True, an=True)
    j = JJC(0, IC(0, IC(0, Ax(X))))
    check_seq(j, NormalityFlags(rn=True))
    assert isinstance(rewrite_nf(j, rn_an), OtLctx)


def test_ax_expansion_normal_form():
    nf = rewrite_nf(Ax(I))
    assert nf == IL(IR())
    assert is_normal(nf, NormalityFlags())


def test_step_cap(monkeypatch):
    d = Ax(parse_formula("((X * Y) * (X * Y)) * (I * X)"))
    with pytest.raises(RewriteLimitExceeded):
        rewrite_nf(d, cap=2)
    monkeypatch.setenv("SKEWCAT_MAX_STEPS", "2")
    with pytest.raises(RewriteLimitExceeded):
        rewrite_nf(d)
    monkeypatch.delenv("SKEWCAT_MAX_STEPS")
    assert is_normal(rewrite_nf(d), NormalityFlags())


def test_unknown_strategy():
    with pytest.raises(ValueError):
        rewrite_nf(Ax(X), strategy="sideways")


@pytest.mark.parametrize("flags", SETTINGS, ids=str)
@settings(max_examples=40)
@given(data=st.data())
def test_normal_form_properties(flags, data):
    d = data.draw(seq_derivs(flags, 10))
    s = check_seq(d, flags)
    nf = rewrite_nf(d, flags)
    assert check_seq(nf, flags) == s
    assert redexes(nf, flags) == []
    assert rewrite_nf(nf, flags) == nf
    assert rewrite_nf(d, flags, "outermost") == nf
    assert fo.focus(nf, flags) == fo.focus(d, flags)


@pytest.mark.parametrize("flags", SETTINGS, ids=str)
def test_each_step_preserves_class(flags):
    for seed in range(40):
        d = random_seq(seed, flags)
        s = check_seq(d, flags)
        target = fo.focus(d, flags)
        for path, name, r in one_step_rewrites(d, flags):
            assert check_seq(r, flags) == s, name
            assert fo.focus(r, flags) == target, name


def test_focus_normal_forms_are_rewrite_normal():
    # experiment, not an invariant: report how often emb(focus f) is itself rewrite-normal
    hits = total = 0
    for flags in SETTINGS:
        for seed in range(30):
            d = random_seq(seed, flags)
            total += 1
            hits += rewrite_nf(d, flags) == fo.emb(fo.focus(d, flags), flags)
    assert 0 <= hits <= total
