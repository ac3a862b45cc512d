import pytest
from hypothesis import given, settings, strategies as st

from gen import seq_derivs
from helpers import SETTINGS, random_seq
from skewcat import focused as fo
from skewcat import seqcalc as sc
from skewcat.core import (Atom, FlagViolation, I, NormalityFlags, Tensor, TypeMismatch, formulas_upto,
                          frontier, parse_formula as pf)
from skewcat.focused import (ActF, AxF, FocSequent, ICF, ILF, IRF, OtLctxF, OtLF, OtRemF, OtRF, PassF, SwLC,
                             SwRL, check_foc, count_derivations, emb, focus, root, search)

X, Y = Atom("X"), Atom("Y")
OFF = NormalityFlags()
LN, RN, AN = NormalityFlags(ln=True), NormalityFlags(rn=True), NormalityFlags(an=True)
ALL = NormalityFlags(True, True, True)
SMALL = list(formulas_upto(2, 1))


def test_check_foc_examples():
    assert check_foc(SwLC(SwRL(AxF(X)))) == FocSequent("C", X, (), (), X)
    with pytest.raises(FlagViolation, match="ln"):
        check_foc(SwRL(OtRemF(IRF(), AxF(X))), OFF)
    assert check_foc(SwRL(OtRemF(IRF(), AxF(X))), LN) == FocSequent("L", X, (), (), Tensor(I, X))
    act_unit = ActF(SwLC(PassF(ILF(SwRL(IRF())))))
    assert check_foc(act_unit, OFF) == FocSequent("C", None, (I,), (), I)
    with pytest.raises(FlagViolation, match="rn -> D not closed"):
        check_foc(act_unit, RN)
    act_atom = ActF(SwLC(PassF(SwRL(AxF(X)))))
    assert check_foc(act_atom, ALL).anteroom == (X,)


def test_check_foc_side_conditions():
    xy = Tensor(X, Y)
    split = OtLctxF(ActF(ActF(SwLC(PassF(SwRL(OtRF(AxF(X), PassF(SwRL(AxF(Y))), 0)))))))
    assert check_foc(split, AN).anteroom == (xy,)
    with pytest.raises(FlagViolation, match="an"):
        check_foc(split, RN)
    with pytest.raises(FlagViolation, match="context empty"):
        check_foc(SwRL(OtRF(IRF(), PassF(SwRL(AxF(X))), 0)), LN)
    with pytest.raises(FlagViolation, match="IC requires rn"):
        check_foc(ICF(SwLC(SwRL(AxF(X)))), OFF)


def test_check_foc_type_errors():
    with pytest.raises(TypeMismatch, match="phase"):
        check_foc(PassF(AxF(X)))
    with pytest.raises(TypeMismatch):
        check_foc(SwRL(AxF(I)))
    with pytest.raises(TypeMismatch, match="split"):
        check_foc(SwRL(OtRF(AxF(X), SwRL(IRF()), 1)))


@pytest.mark.parametrize("text, flags, n", [
    ("X * (I * Y)", OFF, 2),
    ("(X * I) * Y", OFF, 2),
    ("X * (I * Y)", LN, 1),
    ("(X * I) * Y", RN, 1),
])
def test_endsequent_counts(text, flags, n):
    a = pf(text)
    assert len(search(flags, root(a, (), a))) == n
    assert count_derivations(flags, a, (), a) == n


@pytest.mark.parametrize("a, c", [("X", "I * X"), ("X * I", "X"), ("X * (Y * Z)", "(X * Y) * Z")])
def test_underivable(a, c):
    assert search(OFF, root(pf(a), (), pf(c))) == []


def test_context_loaded_into_anteroom():
    assert count_derivations(OFF, None, (X, Y), Tensor(X, Y)) == 1
    assert count_derivations(RN, X, (I, Tensor(I, I)), X) == 1
    assert count_derivations(OFF, X, (I,), X) == 0


def test_all_off_anteroom_holds_at_most_one_formula():
    for a in SMALL:
        for c in SMALL:
            for d in search(OFF, root(a, (), c)):
                assert all(len(fo.conclusion(n).anteroom) <= 1 for n in fo.nodes(d) if n is not d)


def test_deterministic_and_duplicate_free():
    a = pf("((X * I) * (I * Y)) * I")
    first = [fo.dumps(d) for d in search(OFF, root(a, (), a))]
    fo.clear_caches()
    again = [fo.dumps(d) for d in search(OFF, root(a, (), a))]
    assert first == again
    assert len(set(first)) == len(first) == count_derivations(OFF, a, (), a)


@pytest.mark.parametrize("flags", SETTINGS, ids=str)
def test_search_results_check_and_respect_frontier(flags):
    for a in SMALL:
        for c in SMALL:
            ds = search(flags, root(a, (), c))
            if ds:
                assert frontier(a) == frontier(c)
            for d in ds:
                assert check_foc(d, flags) == root(a, (), c)


@pytest.mark.parametrize("flags", SETTINGS, ids=str)
def test_measure_decreases(flags):
    for a in SMALL:
        for c in SMALL:
            todo = [root(a, (), c)]
            seen = set()
            while todo:
                s = todo.pop()
                if s in seen:
                    continue
                seen.add(s)
                for _, prem in fo._steps(flags, s):
                    for p in prem:
                        assert fo._measure(p) < fo._measure(s)
                        todo.append(p)


@pytest.mark.parametrize("flags", [f for f in SETTINGS if f.rn or f.an], ids=str)
def test_passive_purity(flags):
    for a in SMALL:
        for c in SMALL:
            for d in search(flags, root(a, (), c)):
                assert fo.purity_violations(d, flags) == []


def test_focus_examples():
    j = pf("X * (I * Y)")
    for d in search(OFF, root(j, (), j)):
        assert focus(emb(d, OFF), OFF) == d
    assert focus(sc.Ax(I)) == focus(sc.IL(sc.IR()))
    f, g = sc.Ax(X), sc.Pass(sc.Ax(Y))
    assert focus(sc.OtR(sc.Pass(f), g)) == focus(sc.Pass(sc.OtR(f, g)))


def test_emb_examples():
    assert emb(SwRL(AxF(X))) == sc.Ax(X)
    assert emb(SwLC(SwRL(AxF(X)))) == sc.Ax(X)
    d = ICF(SwLC(SwRL(AxF(X))))
    assert emb(d, RN) == sc.IC(0, sc.Ax(X))
    ii = OtLctxF(ICF(ICF(SwLC(SwRL(AxF(X))))))
    assert emb(ii, RN) == sc.JJC(0, sc.IC(1, sc.IC(0, sc.Ax(X))))
    assert emb(ii, ALL) == sc.OtLctx(0, sc.IC(1, sc.IC(0, sc.Ax(X))))
    assert emb(ii) == emb(ii, RN)


@pytest.mark.parametrize("flags", SETTINGS, ids=str)
@settings(max_examples=40)
@given(data=st.data())
def test_focus_lands_in_search_and_emb_inverts(flags, data):
    f = data.draw(seq_derivs(flags, 10))
    s = sc.check_seq(f, flags)
    d = focus(f, flags)
    assert check_foc(d, flags) == root(s.stoup, s.context, s.succedent)
    assert d in search(flags, root(s.stoup, s.context, s.succedent))
    e = emb(d, flags)
    assert sc.check_seq(e, flags) == s
    assert sc.seq_equal(e, f, flags)


def test_sexpr_roundtrip():
    for flags in SETTINGS:
        for seed in range(20):
            d = focus(random_seq(seed, flags), flags)
            assert fo.loads(fo.dumps(d)) == d
    for bad in ["(otr (ax \"X\") (ir))", "(swlc)", "(frob (ir))", "(ir (ir))"]:
        with pytest.raises(TypeMismatch):
            fo.loads(bad)
