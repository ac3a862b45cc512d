"""The flag-parameterised focused calculus.

Phases:

* ``C``  S | O ; G |- C   the anteroom O is inspected right to left: a unit is
  deleted (ICF, rn), a decomposable tensor is split (OtLctxF), anything else
  is moved to the front of the passive context G (ActF); once O is empty,
  SwLC enters phase L.
* ``L``  S | G |- C   left rules on the stoup, or SwRL into phase R.
* ``R``  T | G |- C   T irreducible (empty or an atom); right rules.

Search is exhaustive and memoised; ``focus`` normalises sequent derivations
by structural recursion, relying on the C phase being deterministic: a
C-phase derivation of S | O ; G |- C is determined by an L-phase derivation of
S | P(O), G |- C, where P removes units (rn) and splits decomposable tensors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Union

from . import seqcalc as sc
from . import sexpr
from .core import (Atom, Formula, FlagViolation, NormalityFlags, Sequent, Tensor, TypeMismatch, Unit, I,
                   frontier, is_closed, parse_formula, size, print_context, print_formula, print_stoup)
from .sexpr import Symbol

PHASES = ("C", "L", "R")


@dataclass(frozen=True)
class FocSequent:
    phase: str
    stoup: Optional[Formula]
    anteroom: tuple
    context: tuple
    succedent: Formula

    def __str__(self):
        ctx = print_context(self.context)
        if self.phase == "C":
            ctx = f"{print_context(self.anteroom)} ; {ctx}".strip()
        mid = f" {ctx} " if ctx else " "
        return f"{print_stoup(self.stoup)} |{mid}|-{self.phase} {print_formula(self.succedent)}"

    def erase(self) -> Sequent:
        return Sequent(self.stoup, self.anteroom + self.context, self.succedent)


def root(stoup, ctx, succ) -> FocSequent:
    """The C-phase sequent  S | G ; |- C  with the whole context in the anteroom."""
    return FocSequent("C", stoup, tuple(ctx), (), succ)


@dataclass(frozen=True)
class _Node:
    _concl: Optional[FocSequent] = field(default=None, init=False, repr=False, compare=False)


@dataclass(frozen=True)
class ICF(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class OtLctxF(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class ActF(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class SwLC(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class PassF(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class ILF(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class OtLF(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class SwRL(_Node):
    f: "FocDeriv"


@dataclass(frozen=True)
class AxF(_Node):
    a: Atom


@dataclass(frozen=True)
class IRF(_Node):
    pass


@dataclass(frozen=True)
class OtRF(_Node):
    f: "FocDeriv"
    g: "FocDeriv"
    split: Optional[int] = None

    def __post_init__(self):
        if self.split is None:
            object.__setattr__(self, "split", len(conclusion(self.f).context))


@dataclass(frozen=True)
class OtRemF(_Node):
    f: "FocDeriv"
    g: "FocDeriv"


FocDeriv = Union[ICF, OtLctxF, ActF, SwLC, PassF, ILF, OtLF, SwRL, AxF, IRF, OtRF, OtRemF]
_UNARY = (ICF, OtLctxF, ActF, SwLC, PassF, ILF, OtLF, SwRL)


# ---------------------------------------------------------------------------
# side conditions shared by checking and search

def _decomposable(flags: NormalityFlags, d: Formula) -> bool:
    return isinstance(d, Tensor) and (flags.an or (flags.rn and is_closed(d)))


def _deletable(flags: NormalityFlags, d: Formula) -> bool:
    return flags.rn and isinstance(d, Unit)


def _irreducible(s) -> bool:
    return s is None or isinstance(s, Atom)


def passive(flags: NormalityFlags, d: Formula) -> tuple:
    """What the C phase leaves in the passive context for anteroom formula ``d``."""
    if _deletable(flags, d) or (flags.rn and is_closed(d)):
        return ()
    if _decomposable(flags, d):
        return passive(flags, d.left) + passive(flags, d.right)
    return (d,)


def passive_ctx(flags: NormalityFlags, g) -> tuple:
    return tuple(x for d in g for x in passive(flags, d))


# ---------------------------------------------------------------------------
# typing

def _infer(d, flags: Optional[NormalityFlags], path) -> FocSequent:
    if flags is None and d._concl is not None:
        return d._concl
    # with flags=None only the structural typing is checked
    strict = flags is not None
    fl = flags or NormalityFlags()

    def sub(x, i, phase):
        s = _infer(x, flags, path + (i,))
        if s.phase != phase:
            raise TypeMismatch(f"{type(d).__name__}: premise must be in phase {phase}, got {s.phase}",
                               path)
        return s

    def fail(cond: str):
        if not strict:
            return
        raise FlagViolation(f"{type(d).__name__}: side condition violated: {cond}", path)

    match d:
        case AxF(a):
            if not isinstance(a, Atom):
                raise TypeMismatch("ax: only atoms are axioms in phase R", path)
            out = FocSequent("R", a, (), (), a)
        case IRF():
            out = FocSequent("R", None, (), (), I)
        case OtRF(f, g, k):
            s, t = sub(f, 0, "R"), sub(g, 1, "L")
            if t.stoup is not None:
                raise TypeMismatch("OtR: second premise stoup must be empty", path)
            if k != len(s.context):
                raise TypeMismatch(f"OtR: recorded split {k} does not match premise", path)
            out = FocSequent("R", s.stoup, (), s.context + t.context, Tensor(s.succedent, t.succedent))
        case OtRemF(f, g):
            if not fl.ln:
                fail("OtRem requires ln")
            s, t = sub(f, 0, "R"), sub(g, 1, "R")
            if s.stoup is not None or s.context:
                raise TypeMismatch("OtRem: first premise antecedent must be empty", path)
            if not isinstance(t.stoup, Atom):
                raise TypeMismatch("OtRem: second premise stoup must be an atom", path)
            out = FocSequent("R", t.stoup, (), t.context, Tensor(s.succedent, t.succedent))
        case SwRL(f):
            s = sub(f, 0, "R")
            if fl.ln and s.stoup is None and s.context:
                fail("ln and empty stoup -> context empty")
            out = FocSequent("L", s.stoup, (), s.context, s.succedent)
        case PassF(f):
            s = sub(f, 0, "L")
            if s.stoup is None:
                raise TypeMismatch("pass: premise stoup is empty", path)
            out = FocSequent("L", None, (), (s.stoup,) + s.context, s.succedent)
        case ILF(f):
            s = sub(f, 0, "L")
            if s.stoup is not None:
                raise TypeMismatch("IL: premise stoup must be empty", path)
            out = FocSequent("L", I, (), s.context, s.succedent)
        case OtLF(f):
            s = sub(f, 0, "C")
            if s.stoup is None or len(s.anteroom) != 1:
                raise TypeMismatch("OtL: premise needs a stoup formula and a one-formula anteroom", path)
            out = FocSequent("L", Tensor(s.stoup, s.anteroom[0]), (), s.context, s.succedent)
        case SwLC(f):
            s = sub(f, 0, "L")
            out = FocSequent("C", s.stoup, (), s.context, s.succedent)
        case ActF(f):
            s = sub(f, 0, "C")
            if not s.context:
                raise TypeMismatch("act: premise passive context is empty", path)
            dd = s.context[0]
            if fl.rn and is_closed(dd):
                fail(f"rn -> D not closed (D = {print_formula(dd)})")
            if fl.an and isinstance(dd, Tensor):
                fail(f"an -> D not a tensor (D = {print_formula(dd)})")
            out = FocSequent("C", s.stoup, s.anteroom + (dd,), s.context[1:], s.succedent)
        case ICF(f):
            if not fl.rn:
                fail("IC requires rn")
            s = sub(f, 0, "C")
            out = FocSequent("C", s.stoup, s.anteroom + (I,), s.context, s.succedent)
        case OtLctxF(f):
            s = sub(f, 0, "C")
            if len(s.anteroom) < 2:
                raise TypeMismatch("OtLctx: premise anteroom too short", path)
            a, b = s.anteroom[-2:]
            if not (fl.an or (fl.rn and is_closed(a) and is_closed(b))):
                fail("(rn and both parts closed) or an")
            out = FocSequent("C", s.stoup, s.anteroom[:-2] + (Tensor(a, b),), s.context, s.succedent)
        case _:
            raise TypeMismatch(f"not a focused derivation: {d!r}", path)
    if flags is None:
        object.__setattr__(d, "_concl", out)
    return out


def conclusion(d: FocDeriv) -> FocSequent:
    """Conclusion with flag-dependent side conditions ignored (cached)."""
    return _infer(d, None, ())


def check_foc(d: FocDeriv, flags: NormalityFlags = NormalityFlags()) -> FocSequent:
    """Conclusion of ``d``; every side condition is checked against ``flags``."""
    return _infer(d, flags, ())


def children(d: FocDeriv) -> tuple:
    match d:
        case OtRF(f, g, _) | OtRemF(f, g):
            return (f, g)
        case AxF() | IRF():
            return ()
    return (d.f,)


def nodes(d: FocDeriv) -> Iterator[FocDeriv]:
    stack = [d]
    while stack:
        x = stack.pop()
        yield x
        stack.extend(reversed(children(x)))


# ---------------------------------------------------------------------------
# proof search

def _measure(s: FocSequent) -> tuple:
    nodes_ = sum(map(size, s.anteroom + s.context)) + size(s.succedent)
    if s.stoup is not None:
        nodes_ += size(s.stoup)
    return (nodes_, int(s.stoup is None), PHASES[::-1].index(s.phase), len(s.anteroom))


def _steps(flags: NormalityFlags, s: FocSequent):
    """Applicable rules in canonical order, as (builder, premise sequents) pairs."""
    st, om, g, c = s.stoup, s.anteroom, s.context, s.succedent
    if s.phase == "C":
        if om:
            d = om[-1]
            if _deletable(flags, d):
                yield ICF, (FocSequent("C", st, om[:-1], g, c),)
            elif _decomposable(flags, d):
                yield OtLctxF, (FocSequent("C", st, om[:-1] + (d.left, d.right), g, c),)
            else:
                yield ActF, (FocSequent("C", st, om[:-1], (d,) + g, c),)
        else:
            yield SwLC, (FocSequent("L", st, (), g, c),)
    elif s.phase == "L":
        if st is None and g:
            yield PassF, (FocSequent("L", g[0], (), g[1:], c),)
        if isinstance(st, Unit):
            yield ILF, (FocSequent("L", None, (), g, c),)
        if isinstance(st, Tensor):
            yield OtLF, (FocSequent("C", st.left, (st.right,), g, c),)
        if _irreducible(st) and not (flags.ln and st is None and g):
            yield SwRL, (FocSequent("R", st, (), g, c),)
    else:
        if isinstance(st, Atom) and not g and c == st:
            yield (lambda: AxF(st)), ()
        if st is None and not g and isinstance(c, Unit):
            yield IRF, ()
        if isinstance(c, Tensor):
            fa, fb = frontier(c.left), frontier(c.right)
            head = frontier(st)
            for k in range(len(g) + 1):
                if head + frontier(g[:k]) == fa and frontier(g[k:]) == fb:
                    yield ((lambda k: lambda x, y: OtRF(x, y, k))(k),
                           (FocSequent("R", st, (), g[:k], c.left), FocSequent("L", None, (), g[k:], c.right)))
            if flags.ln and isinstance(st, Atom) and not fa:
                yield OtRemF, (FocSequent("R", None, (), (), c.left), FocSequent("R", st, (), g, c.right))


def _viable(s: FocSequent) -> bool:
    return frontier(s.stoup) + frontier(s.anteroom + s.context) == frontier(s.succedent)


def _premises(flags, s):
    for build, prem in _steps(flags, s):
        if __debug__:
            m = _measure(s)
            for p in prem:
                assert _measure(p) < m, f"search measure does not decrease: {s} -> {p}"
        yield build, prem


@lru_cache(maxsize=None)
def _search(flags: NormalityFlags, s: FocSequent) -> tuple:
    if not _viable(s):
        return ()
    out = []
    for build, prem in _premises(flags, s):
        subs = [_search(flags, p) for p in prem]
        out.extend(build(*ds) for ds in product(*subs))
    return tuple(out)


@lru_cache(maxsize=None)
def _count(flags: NormalityFlags, s: FocSequent) -> int:
    if not _viable(s):
        return 0
    total = 0
    for _, prem in _premises(flags, s):
        n = 1
        for p in prem:
            n *= _count(flags, p)
            if not n:
                break
        total += n
    return total


def search(flags: NormalityFlags, seq: FocSequent) -> list:
    """All focused derivations of ``seq`` in canonical order."""
    return list(_search(flags, seq))


def count_derivations(flags: NormalityFlags, stoup, ctx, succ) -> int:
    """Number of focused derivations of the root sequent  S | G ; |- C."""
    return _count(flags, root(stoup, ctx, succ))


def clear_caches():
    _search.cache_clear()
    _count.cache_clear()


# ---------------------------------------------------------------------------
# normalisation

def c_wrap(flags: NormalityFlags, anteroom, l_deriv: FocDeriv) -> FocDeriv:
    """C-phase derivation of  S | O ; G  from an L-phase one of  S | P(O), G."""
    om = tuple(anteroom)
    if not om:
        return SwLC(l_deriv)
    d = om[-1]
    if _deletable(flags, d):
        return ICF(c_wrap(flags, om[:-1], l_deriv))
    if _decomposable(flags, d):
        return OtLctxF(c_wrap(flags, om[:-1] + (d.left, d.right), l_deriv))
    return ActF(c_wrap(flags, om[:-1], l_deriv))


def c_unwrap(d: FocDeriv) -> FocDeriv:
    """Inverse of ``c_wrap``: the L-phase derivation under the C-phase prefix."""
    while isinstance(d, (ICF, OtLctxF, ActF)):
        d = d.f
    if not isinstance(d, SwLC):
        raise TypeMismatch("expected a C-phase derivation")
    return d.f


def focus(f: sc.SeqDeriv, flags: NormalityFlags = NormalityFlags()) -> FocDeriv:
    """Canonical focused derivation of the C-phase root for ``f``'s conclusion."""
    s = sc.check_seq(f, flags)
    return c_wrap(flags, s.context, _Focuser(flags).l(f))


class _Focuser:
    """Admissible focused counterparts of the unfocused rules, on L-phase derivations.

    Helpers take each derivation together with its L-phase sequent, written as
    a (stoup, context, succedent) triple, so no conclusions are recomputed.
    """

    def __init__(self, flags: NormalityFlags):
        self.flags = flags

    def lseq(self, f) -> tuple:
        s = sc.conclusion(f)
        return s.stoup, passive_ctx(self.flags, s.context), s.succedent

    def l(self, f) -> FocDeriv:
        match f:
            case sc.Ax(a):
                return self.ax(a)
            case sc.IR():
                return SwRL(IRF())
            case sc.Pass(f1):
                return self.pass_(sc.conclusion(f1).stoup, self.l(f1))
            case sc.IL(f1):
                return ILF(self.l(f1))
            case sc.OtL(f1):
                return OtLF(c_wrap(self.flags, sc.conclusion(f1).context[:1], self.l(f1)))
            case sc.OtR(f1, f2, _):
                return self.otr(self.l(f1), self.lseq(f1), self.l(f2), self.lseq(f2))
            case sc.OtRem(f1, f2):
                return self.otrem(self.l(f1).f, self.l(f2), self.lseq(f2))
            case sc.IC(_, f1) | sc.JJC(_, f1) | sc.OtLctx(_, f1):
                return self.l(f1)
        raise TypeMismatch(f"not a sequent derivation: {f!r}")

    def ax(self, a) -> FocDeriv:
        match a:
            case Atom():
                return SwRL(AxF(a))
            case Unit():
                return ILF(SwRL(IRF()))
            case Tensor(x, y):
                py = passive(self.flags, y)
                body = self.otr(self.ax(x), (x, (), x), self.pass_(y, self.ax(y)), (None, py, y))
                return OtLF(c_wrap(self.flags, (y,), body))
        raise TypeMismatch(f"not a formula: {a!r}")

    def pass_(self, a, h) -> FocDeriv:
        # from  A | P(G) |-L C  to  - | P(A), P(G) |-L C
        if _deletable(self.flags, a):
            return h.f                          # h = ILF(h')
        if _decomposable(self.flags, a):
            return self.pass_(a.left, c_unwrap(h.f))   # h = OtLF(c)
        return PassF(h)

    def otr(self, h1, q1, h2, q2) -> FocDeriv:
        st, ctx, c = q1
        match h1:
            case PassF(h):
                return PassF(self.otr(h, (ctx[0], ctx[1:], c), h2, q2))
            case ILF(h):
                return ILF(self.otr(h, (None, ctx, c), h2, q2))
            case OtLF(cd):
                a, b = st.left, st.right
                inner = self.otr(c_unwrap(cd), (a, passive(self.flags, b) + ctx, c), h2, q2)
                return OtLF(c_wrap(self.flags, (b,), inner))
            case SwRL(r):
                if self.flags.ln and st is None and q2[1]:
                    # h2 = PassF(h2')
                    return PassF(self.otrem(r, h2.f, (q2[1][0], q2[1][1:], q2[2])))
                return SwRL(OtRF(r, h2, len(ctx)))
        raise TypeMismatch("otr: expected an L-phase derivation")

    def otrem(self, r, h, q) -> FocDeriv:
        # r : - |  |-R A,   h : D | G |-L B   give   D | G |-L A * B
        st, ctx, c = q
        match h:
            case ILF(h1):
                a = conclusion(r).succedent
                return ILF(self.otr(SwRL(r), (None, (), a), h1, (None, ctx, c)))
            case OtLF(cd):
                a, b = st.left, st.right
                inner = self.otrem(r, c_unwrap(cd), (a, passive(self.flags, b) + ctx, c))
                return OtLF(c_wrap(self.flags, (b,), inner))
            case SwRL(r2):
                return SwRL(OtRemF(r, r2))
        raise TypeMismatch("otrem: expected an L-phase derivation with a stoup formula")


# ---------------------------------------------------------------------------
# embedding

def emb(d: FocDeriv, flags: Optional[NormalityFlags] = None) -> sc.SeqDeriv:
    """Erase phases.  ``OtLctxF`` becomes ``OtLctx`` when ``flags.an`` holds and
    ``JJC`` otherwise; with ``flags=None`` the choice is JJC exactly for closed
    tensors."""
    return _emb(d, flags, _anteroom_len(d))


def _anteroom_len(d) -> int:
    # anteroom length of a C-phase conclusion, read off its deterministic prefix
    n = 0
    while True:
        t = type(d)
        if t is ActF or t is ICF:
            n += 1
        elif t is OtLctxF:
            n -= 1
        else:
            return n
        d = d.f


def _emb(d, flags, n):
    # n: anteroom length of d's conclusion when d is in phase C
    match d:
        case SwLC(f) | SwRL(f):
            return _emb(f, flags, 0)
        case ActF(f):
            return _emb(f, flags, n - 1)
        case ICF(f):
            return sc.IC(n - 1, _emb(f, flags, n - 1))
        case OtLctxF(f):
            if flags is not None:
                use_ctx = flags.an
            else:
                s = conclusion(f)
                use_ctx = not (is_closed(s.anteroom[-2]) and is_closed(s.anteroom[-1]))
            return (sc.OtLctx if use_ctx else sc.JJC)(n - 1, _emb(f, flags, n + 1))
        case PassF(f):
            return sc.Pass(_emb(f, flags, 0))
        case ILF(f):
            return sc.IL(_emb(f, flags, 0))
        case OtLF(f):
            return sc.OtL(_emb(f, flags, 1))
        case AxF(a):
            return sc.Ax(a)
        case IRF():
            return sc.IR()
        case OtRF(f, g, k):
            return sc.OtR(_emb(f, flags, 0), _emb(g, flags, 0), k)
        case OtRemF(f, g):
            return sc.OtRem(_emb(f, flags, 0), _emb(g, flags, 0))
    raise TypeMismatch(f"not a focused derivation: {d!r}")


# ---------------------------------------------------------------------------
# audits

def purity_violations(d: FocDeriv, flags: NormalityFlags) -> list[tuple[FocSequent, Formula]]:
    """Nodes whose passive context holds a closed formula (rn) or a tensor (an)."""
    bad = []
    for node in nodes(d):
        s = conclusion(node)
        for x in s.context:
            if (flags.rn and is_closed(x)) or (flags.an and isinstance(x, Tensor)):
                bad.append((s, x))
    return bad


# ---------------------------------------------------------------------------
# s-expressions

_TAGS = {ICF: "ic", OtLctxF: "otlctx", ActF: "act", SwLC: "swlc", PassF: "pass", ILF: "il",
         OtLF: "otl", SwRL: "swrl", AxF: "ax", IRF: "ir", OtRF: "otr", OtRemF: "otrem"}
_BY_TAG = {v: k for k, v in _TAGS.items()}


def to_sexpr(d: FocDeriv) -> list:
    tag = Symbol(_TAGS[type(d)])
    match d:
        case AxF(a):
            return [tag, print_formula(a)]
        case IRF():
            return [tag]
        case OtRF(f, g, k):
            return [tag, k, to_sexpr(f), to_sexpr(g)]
        case OtRemF(f, g):
            return [tag, to_sexpr(f), to_sexpr(g)]
    return [tag, to_sexpr(d.f)]


def from_sexpr(x) -> FocDeriv:
    if not isinstance(x, list) or not x or not isinstance(x[0], Symbol):
        raise TypeMismatch(f"malformed focused derivation: {sexpr.dumps(x)}")
    tag, args = str(x[0]), x[1:]
    cls = _BY_TAG.get(tag)
    if cls is None:
        raise TypeMismatch(f"unknown tag {tag!r}")
    if cls is AxF:
        if len(args) != 1 or not isinstance(args[0], str) or isinstance(args[0], Symbol):
            raise TypeMismatch("(ax ...) expects one quoted atom")
        return AxF(parse_formula(args[0]))
    if cls is IRF:
        if args:
            raise TypeMismatch("(ir) takes no arguments")
        return IRF()
    if cls is OtRF:
        if len(args) != 3 or not isinstance(args[0], int):
            raise TypeMismatch("(otr k f g) expects a split index and two derivations")
        return OtRF(from_sexpr(args[1]), from_sexpr(args[2]), args[0])
    if cls is OtRemF:
        if len(args) != 2:
            raise TypeMismatch("(otrem f g) takes two derivations")
        return OtRemF(from_sexpr(args[0]), from_sexpr(args[1]))
    if len(args) != 1:
        raise TypeMismatch(f"({tag} f) takes one derivation")
    return cls(from_sexpr(args[0]))


def dumps(d: FocDeriv) -> str:
    return sexpr.dumps(to_sexpr(d))


def loads(text: str) -> FocDeriv:
    return from_sexpr(sexpr.loads(text))
