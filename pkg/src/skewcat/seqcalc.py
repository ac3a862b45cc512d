"""Sequent calculus derivations  S | G --> C  and the admissible rules on them.

Primitive rules (flag in brackets when guarded)::

    Pass(f)        -| A,G --> C       from  A | G --> C
    IL(f)          I | G --> C        from  - | G --> C
    OtL(f)         A*B | G --> C      from  A | B,G --> C
    Ax(A)          A |  --> A
    IR()           - |  --> I
    OtR(f, g, k)   S | G,D --> A*B    from  S | G --> A  and  - | D --> B    (k = |G|)
    OtRem(f, g)    A' | D --> A*B     from  - |  --> A  and  A' | D --> B    [ln]
    IC(p, f)       S | G0,I,G1 --> C  from  S | G0,G1 --> C                [rn]  (p = |G0|)
    JJC(p, f)      S | G0,J*J',G1     from  S | G0,J,J',G1  (J, J' closed) [rn]
    OtLctx(p, f)   S | G0,A*B,G1      from  S | G0,A,B,G1                  [an]

There is no primitive cut; ``scut``, ``ccut``, ``ccut_fma`` and ``ccut_stp``
are computed by structural recursion and always return cut-free terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import sexpr
from .core import (Formula, FlagViolation, NormalityFlags, Sequent, SkewError, Tensor, TypeMismatch,
                   Unit, I, is_closed, parse_formula, print_formula, print_sequent)
from .sexpr import Symbol


@dataclass(frozen=True)
class _Node:
    # conclusion cache, filled lazily by conclusion(); flag settings already checked
    _concl: Optional[Sequent] = field(default=None, init=False, repr=False, compare=False)
    _checked: tuple = field(default=(), init=False, repr=False, compare=False)


@dataclass(frozen=True)
class Pass(_Node):
    f: "SeqDeriv"


@dataclass(frozen=True)
class IL(_Node):
    f: "SeqDeriv"


@dataclass(frozen=True)
class OtL(_Node):
    f: "SeqDeriv"


@dataclass(frozen=True)
class Ax(_Node):
    a: Formula


@dataclass(frozen=True)
class IR(_Node):
    pass


@dataclass(frozen=True)
class OtR(_Node):
    f: "SeqDeriv"
    g: "SeqDeriv"
    split: Optional[int] = None

    def __post_init__(self):
        if self.split is None:
            object.__setattr__(self, "split", len(conclusion(self.f).context))


@dataclass(frozen=True)
class OtRem(_Node):
    f: "SeqDeriv"
    g: "SeqDeriv"


@dataclass(frozen=True)
class IC(_Node):
    pos: int
    f: "SeqDeriv"


@dataclass(frozen=True)
class JJC(_Node):
    pos: int
    f: "SeqDeriv"


@dataclass(frozen=True)
class OtLctx(_Node):
    pos: int
    f: "SeqDeriv"


SeqDeriv = Union[Pass, IL, OtL, Ax, IR, OtR, OtRem, IC, JJC, OtLctx]
CTX_RULES = (IC, JJC, OtLctx)


# ---------------------------------------------------------------------------
# typing

def _need(d, flags, flag: str, path):
    if flags is not None and not getattr(flags, flag):
        raise FlagViolation(f"{type(d).__name__} requires {flag}", path)


def _t_ax(d, prem, flags, path):
    return Sequent(d.a, (), d.a)


def _t_ir(d, prem, flags, path):
    return Sequent(None, (), I)


def _t_pass(d, prem, flags, path):
    (s,) = prem
    if s.stoup is None:
        raise TypeMismatch("pass: premise stoup is empty", path)
    return Sequent(None, (s.stoup,) + s.context, s.succedent)


def _t_il(d, prem, flags, path):
    (s,) = prem
    if s.stoup is not None:
        raise TypeMismatch("IL: premise stoup must be empty", path)
    return Sequent(I, s.context, s.succedent)


def _t_otl(d, prem, flags, path):
    (s,) = prem
    if s.stoup is None or not s.context:
        raise TypeMismatch("OtL: premise needs a stoup formula and a nonempty context", path)
    return Sequent(Tensor(s.stoup, s.context[0]), s.context[1:], s.succedent)


def _t_otr(d, prem, flags, path):
    s, t = prem
    if t.stoup is not None:
        raise TypeMismatch("OtR: second premise stoup must be empty", path)
    if d.split != len(s.context):
        raise TypeMismatch(f"OtR: recorded split {d.split} but first premise context has "
                           f"{len(s.context)} formulas", path)
    return Sequent(s.stoup, s.context + t.context, Tensor(s.succedent, t.succedent))


def _t_otrem(d, prem, flags, path):
    _need(d, flags, "ln", path)
    s, t = prem
    if s.stoup is not None or s.context:
        raise TypeMismatch("OtRem: first premise antecedent must be empty", path)
    if t.stoup is None:
        raise TypeMismatch("OtRem: second premise needs a stoup formula", path)
    return Sequent(t.stoup, t.context, Tensor(s.succedent, t.succedent))


def _t_ic(d, prem, flags, path):
    _need(d, flags, "rn", path)
    (s,) = prem
    p = d.pos
    if not 0 <= p <= len(s.context):
        raise TypeMismatch(f"IC: position {p} out of range", path)
    return Sequent(s.stoup, s.context[:p] + (I,) + s.context[p:], s.succedent)


def _t_pair(d, prem, flags, path):
    jjc = isinstance(d, JJC)
    _need(d, flags, "rn" if jjc else "an", path)
    (s,) = prem
    p = d.pos
    if not 0 <= p < len(s.context) - 1:
        raise TypeMismatch(f"{type(d).__name__}: position {p} out of range", path)
    a, b = s.context[p], s.context[p + 1]
    if jjc and not (is_closed(a) and is_closed(b)):
        raise TypeMismatch("JJC: both formulas must be closed", path)
    return Sequent(s.stoup, s.context[:p] + (Tensor(a, b),) + s.context[p + 2:], s.succedent)


_TYPING = {Ax: _t_ax, IR: _t_ir, Pass: _t_pass, IL: _t_il, OtL: _t_otl, OtR: _t_otr, OtRem: _t_otrem,
           IC: _t_ic, JJC: _t_pair, OtLctx: _t_pair}


def _infer(d, flags: Optional[NormalityFlags], path: tuple[int, ...]) -> Sequent:
    concl = getattr(d, "_concl", None)
    if concl is not None and (flags is None or flags in d._checked):
        return concl
    rule = _TYPING.get(type(d))
    if rule is None:
        raise TypeMismatch(f"not a sequent derivation: {d!r}", path)
    prem = [_infer(x, flags, path + (i,)) for i, x in enumerate(children(d))]
    out = rule(d, prem, flags, path)
    object.__setattr__(d, "_concl", out)
    if flags is not None:
        object.__setattr__(d, "_checked", d._checked + (flags,))
    return out


def conclusion(d: SeqDeriv) -> Sequent:
    """Conclusion sequent, ignoring flag gating (cached on the node)."""
    return _infer(d, None, ())


def check_seq(d: SeqDeriv, flags: NormalityFlags = NormalityFlags()) -> Sequent:
    """Conclusion of ``d``, checking every rule against ``flags``."""
    return _infer(d, flags, ())


def size(d: SeqDeriv) -> int:
    return 1 + sum(size(x) for x in children(d))


def children(d: SeqDeriv) -> tuple:
    t = type(d)
    if t is OtR or t is OtRem:
        return (d.f, d.g)
    if t is Ax or t is IR:
        return ()
    return (d.f,)


def with_children(d: SeqDeriv, kids: tuple) -> SeqDeriv:
    match d:
        case Pass() | IL() | OtL():
            return type(d)(kids[0])
        case IC(p, _) | JJC(p, _) | OtLctx(p, _):
            return type(d)(p, kids[0])
        case OtR():
            return OtR(kids[0], kids[1])
        case OtRem():
            return OtRem(kids[0], kids[1])
    return d


# ---------------------------------------------------------------------------
# derived derivations

def ax(a: Formula) -> SeqDeriv:
    return Ax(a)


def closed_intro(j: Formula) -> SeqDeriv:
    """The derivation  - |  --> J  of a closed formula."""
    match j:
        case Unit():
            return IR()
        case Tensor(a, b):
            return OtR(closed_intro(a), closed_intro(b), 0)
    raise SkewError(f"{print_formula(j)} is not closed")


def unfold(stoup, ctx) -> SeqDeriv:
    """The derivation  S | G --> [[S|G]]."""
    d = IR() if stoup is None else Ax(stoup)
    for k, c in enumerate(ctx):
        d = OtR(d, Pass(Ax(c)), k)
    return d


def insert_closed(d: SeqDeriv, p: int, js) -> SeqDeriv:
    """Insert the closed formulas ``js`` at context position ``p`` (needs rn)."""
    for j in reversed(tuple(js)):
        d = _insert_one(d, p, j)
    return d


def _insert_one(d, p, j):
    match j:
        case Unit():
            return IC(p, d)
        case Tensor(a, b):
            return JJC(p, _insert_one(_insert_one(d, p, b), p, a))
    raise SkewError(f"cannot insert non-closed formula {print_formula(j)}")


# ---------------------------------------------------------------------------
# admissible rules

def act_admissible(f: SeqDeriv, flags: NormalityFlags) -> SeqDeriv:
    """From  - | A,G --> C  build  A | G --> C  (left-normal calculi only)."""
    if not flags.ln:
        raise FlagViolation("act is admissible only with ln")
    s = check_seq(f, flags)
    if s.stoup is not None or not s.context:
        raise SkewError("act needs an empty stoup and a nonempty context")
    return _act(f)


def _act(f):
    match f:
        case Pass(g):
            return g
        case OtR(g, h, k):
            if k > 0:
                return OtR(_act(g), h)
            return OtRem(g, _act(h))
        case IC(0, g):
            return IL(g)
        case JJC(0, g) | OtLctx(0, g):
            return OtL(_act(g))
        case IC(p, g) | JJC(p, g) | OtLctx(p, g):
            return type(f)(p - 1, _act(g))
    raise SkewError(f"act: unexpected derivation of {print_sequent(conclusion(f))}")


def ic_restricted(f: SeqDeriv, pos: int, flags: NormalityFlags) -> SeqDeriv:
    """From  S | G0,B,G1 --> C  build  S | G0,I,B,G1 --> C  (``pos`` = |G0|)."""
    s = check_seq(f, flags)
    if not 0 <= pos < len(s.context):
        raise SkewError("ic_restricted: no formula to the right of the insertion point")
    if flags.rn:
        return IC(pos, f)
    if not flags.an:
        raise FlagViolation("ic_restricted requires an (or rn)")
    return _icr(f, pos)


def _icr(f, p):
    match f:
        case Pass(g):
            return Pass(_icr(g, p - 1)) if p > 0 else Pass(IL(f))
        case IL(g):
            return IL(_icr(g, p))
        case OtL(g):
            return OtL(_icr(g, p + 1))
        case OtR(g, h, k):
            return OtR(_icr(g, p), h) if p < k else OtR(g, _icr(h, p - k))
        case OtRem(g, h):
            return OtRem(g, _icr(h, p))
        case OtLctx(q, g):
            if p <= q:
                return OtLctx(q + 1, _icr(g, p))
            return OtLctx(q, _icr(g, p + 1))
        case IC(q, g):
            if p == q:
                return IC(q, f)              # the new unit sits next to an existing one (rn)
            return IC(q + 1, _icr(g, p)) if p < q else IC(q, _icr(g, p - 1))
        case JJC(q, g):
            if p <= q:
                return JJC(q + 1, _icr(g, p))
            return JJC(q, _icr(g, p + 1))
    raise SkewError("ic_restricted: no formula to the right of the insertion point")


def scut(f: SeqDeriv, g: SeqDeriv, flags: Optional[NormalityFlags] = None) -> SeqDeriv:
    """Cut on the stoup:  S|G --> A  and  A|D --> C  give  S|G,D --> C."""
    sf, sg = _typed(f, flags), _typed(g, flags)
    if sg.stoup != sf.succedent:
        raise TypeMismatch(f"scut: {print_formula(sf.succedent)} does not match the stoup of the "
                           f"second premise")
    return _scut(f, g)


def ccut(f: SeqDeriv, g: SeqDeriv, pos: int, flags: Optional[NormalityFlags] = None) -> SeqDeriv:
    """Cut into the context:  -|G --> A  and  S|D0,A,D1 --> C  give  S|D0,G,D1 --> C."""
    sf = _typed(f, flags)
    if sf.stoup is not None:
        raise TypeMismatch("ccut: first premise must have an empty stoup")
    _check_ctx_cut(sf, _typed(g, flags), pos)
    return _cc(f, g, pos, "ccut")


def ccut_fma(f: SeqDeriv, g: SeqDeriv, pos: int, flags: Optional[NormalityFlags] = None) -> SeqDeriv:
    """A'|G --> A  and  S|D0,A,D1 --> C  give  S|D0,A',G,D1 --> C."""
    sf = _typed(f, flags)
    if sf.stoup is None:
        raise TypeMismatch("ccut_fma: first premise needs a stoup formula")
    _check_ctx_cut(sf, _typed(g, flags), pos)
    return _cc(f, g, pos, "stp")


def ccut_stp(f: SeqDeriv, g: SeqDeriv, pos: int, flags: Optional[NormalityFlags] = None) -> SeqDeriv:
    """S'|G --> A  and  S|D0,A,D1 --> C  give  S|D0,<S'>,G,D1 --> C  (<-> = I)."""
    _check_ctx_cut(_typed(f, flags), _typed(g, flags), pos)
    return _cc(f, g, pos, "stp")


def _typed(d, flags):
    return conclusion(d) if flags is None else check_seq(d, flags)


def _check_ctx_cut(sf: Sequent, sg: Sequent, pos: int):
    if not 0 <= pos < len(sg.context):
        raise TypeMismatch(f"cut position {pos} out of range")
    if sg.context[pos] != sf.succedent:
        raise TypeMismatch(f"cut formula mismatch: {print_formula(sf.succedent)} vs "
                           f"{print_formula(sg.context[pos])}")


def _scut(f, g):
    match f:
        case Ax():
            return g
        case Pass(f1) | IL(f1) | OtL(f1):
            return type(f)(_scut(f1, g))
        case IC(q, f1) | JJC(q, f1) | OtLctx(q, f1):
            return type(f)(q, _scut(f1, g))
    return _scut_right(f, g)


def _scut_right(f, g):
    # f ends in a right rule (IR, OtR, OtRem): recurse on g
    match g:
        case Ax():
            return f
        case OtR(g1, g2, _):
            return OtR(_scut_right(f, g1), g2)
        case OtRem(g1, g2):
            h = _scut_right(f, g2)
            return OtRem(g1, h) if conclusion(h).stoup is not None else OtR(g1, h, 0)
        case IC(q, g1) | JJC(q, g1) | OtLctx(q, g1):
            return type(g)(q + len(conclusion(f).context), _scut_right(f, g1))
        case IL(g1):
            return g1                        # f is IR
        case OtL(g1):
            match f:
                case OtR(f1, f2, _):
                    return _scut(f1, _cc(f2, g1, 0, "ccut"))
                case OtRem(f1, f2):
                    return _scut(f2, _act(_scut(f1, g1)))
    raise SkewError("scut: ill-typed premises")


def _cc(f, g, p, mode):
    """Cut ``f`` into context position ``p`` of ``g``.

    mode "ccut": f has an empty stoup which contributes nothing;
    mode "stp": f's stoup contributes <S'> (I when empty).
    """
    sf = conclusion(f)
    if sf.stoup is not None:
        pre = (sf.stoup,)
    else:
        pre = () if mode == "ccut" else (I,)
    ins = pre + sf.context
    match g:
        case Pass(g1):
            if p > 0:
                return Pass(_cc(f, g1, p - 1, mode))
            h = _scut(f, g1)
            if sf.stoup is not None:
                return Pass(h)
            return h if mode == "ccut" else Pass(IL(h))
        case IL(g1):
            return IL(_cc(f, g1, p, mode))
        case OtL(g1):
            return OtL(_cc(f, g1, p + 1, mode))
        case OtR(g1, g2, k):
            if p < k:
                return OtR(_cc(f, g1, p, mode), g2)
            return OtR(g1, _cc(f, g2, p - k, mode))
        case OtRem(g1, g2):
            return OtRem(g1, _cc(f, g2, p, mode))
        case IC(q, g1):
            if p < q:
                return IC(q + len(ins) - 1, _cc(f, g1, p, mode))
            if p > q:
                return IC(q, _cc(f, g1, p - 1, mode))
            return insert_closed(g1, p, ins)
        case JJC(q, g1):
            if p < q:
                return JJC(q + len(ins) - 1, _cc(f, g1, p, mode))
            if p > q:
                return JJC(q, _cc(f, g1, p + 1, mode))
            s1 = conclusion(g1)
            h = _cc(closed_intro(s1.context[q + 1]), g1, q + 1, "ccut")
            h = _cc(closed_intro(s1.context[q]), h, q, "ccut")
            return insert_closed(h, q, ins)
        case OtLctx(q, g1):
            if p < q:
                return OtLctx(q + len(ins) - 1, _cc(f, g1, p, mode))
            if p > q:
                return OtLctx(q, _cc(f, g1, p + 1, mode))
            return _cc_tensor(f, g, g1, p, mode)
    raise SkewError("context cut: ill-typed premises")


def _cc_tensor(f, g, g1, p, mode):
    # g = OtLctx(p, g1) and the cut formula A1*A2 is principal: recurse on f
    match f:
        case Ax():
            return g
        case Pass(f1):
            h = _cc(f1, g, p, "stp")
            return h if mode == "ccut" else _icr(h, p)
        case IL(f1):
            return _cc(f1, g, p, "stp")
        case OtL(f1):
            return OtLctx(p, _cc(f1, g, p, "stp"))
        case OtR(f1, f2, _):
            return _cc(f1, _cc(f2, g1, p + 1, "ccut"), p, mode)
        case OtRem(f1, f2):
            return _cc(f2, _cc(f1, g1, p, "ccut"), p, mode)
        case IC(q, f1) | JJC(q, f1) | OtLctx(q, f1):
            shift = 0 if (mode == "ccut" and conclusion(f).stoup is None) else 1
            return type(f)(p + shift + q, _cc(f1, g, p, mode))
    raise SkewError("context cut: ill-typed premises")


# ---------------------------------------------------------------------------
# s-expressions

_UNARY = {"pass": Pass, "il": IL, "otl": OtL}
_INDEXED = {"ic": IC, "jjc": JJC, "otlctx": OtLctx}
_TAG = {Pass: "pass", IL: "il", OtL: "otl", Ax: "ax", IR: "ir", OtR: "otr", OtRem: "otrem",
        IC: "ic", JJC: "jjc", OtLctx: "otlctx"}


def to_sexpr(d: SeqDeriv) -> list:
    tag = Symbol(_TAG[type(d)])
    match d:
        case Ax(a):
            return [tag, print_formula(a)]
        case IR():
            return [tag]
        case Pass(f) | IL(f) | OtL(f):
            return [tag, to_sexpr(f)]
        case OtR(f, g, k):
            return [tag, k, to_sexpr(f), to_sexpr(g)]
        case OtRem(f, g):
            return [tag, to_sexpr(f), to_sexpr(g)]
        case IC(p, f) | JJC(p, f) | OtLctx(p, f):
            return [tag, p, to_sexpr(f)]
    raise TypeMismatch(f"not a sequent derivation: {d!r}")


def from_sexpr(x) -> SeqDeriv:
    if not isinstance(x, list) or not x or not isinstance(x[0], Symbol):
        raise TypeMismatch(f"malformed sequent derivation: {sexpr.dumps(x)}")
    tag, args = str(x[0]), x[1:]

    def arity(n):
        if len(args) != n:
            raise TypeMismatch(f"({tag} ...) takes {n} arguments, got {len(args)}")

    def index(v):
        if not isinstance(v, int):
            raise TypeMismatch(f"({tag} ...) expects an integer index, got {sexpr.dumps(v)}")
        return v

    if tag == "ax":
        arity(1)
        if not isinstance(args[0], str) or isinstance(args[0], Symbol):
            raise TypeMismatch("(ax ...) expects a quoted formula")
        return Ax(parse_formula(args[0]))
    if tag == "ir":
        arity(0)
        return IR()
    if tag in _UNARY:
        arity(1)
        return _UNARY[tag](from_sexpr(args[0]))
    if tag == "otr":
        if len(args) == 2:
            return OtR(from_sexpr(args[0]), from_sexpr(args[1]))
        arity(3)
        return OtR(from_sexpr(args[1]), from_sexpr(args[2]), index(args[0]))
    if tag == "otrem":
        arity(2)
        return OtRem(from_sexpr(args[0]), from_sexpr(args[1]))
    if tag in _INDEXED:
        arity(2)
        return _INDEXED[tag](index(args[0]), from_sexpr(args[1]))
    raise TypeMismatch(f"unknown tag {tag!r}")


def dumps(d: SeqDeriv) -> str:
    return sexpr.dumps(to_sexpr(d))


def loads(text: str) -> SeqDeriv:
    return from_sexpr(sexpr.loads(text))


def seq_equal(f: SeqDeriv, g: SeqDeriv, flags: NormalityFlags = NormalityFlags()) -> bool:
    """Decide the congruence by comparing focused normal forms."""
    from .focused import focus

    sf, sg = check_seq(f, flags), check_seq(g, flags)
    if sf != sg:
        raise TypeMismatch(f"seq_equal: conclusions differ: {print_sequent(sf)} vs {print_sequent(sg)}")
    return focus(f, flags) == focus(g, flags)


from .rewrite import is_normal, one_step_rewrites, redexes, rewrite_nf  # noqa: E402,F401
