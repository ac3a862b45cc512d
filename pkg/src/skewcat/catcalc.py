"""Categorical calculus: maps A ==> C of the free (partially normal) skew
monoidal category, as explicit derivation terms.

Every constructor carries the formulas fixing its endpoints, so typing is
pure synthesis.  ``Comp(g, f)`` is ``g . f`` (first ``f``, then ``g``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import sexpr
from .core import (Formula, FlagViolation, NormalityFlags, SkewError, Tensor, TypeMismatch, I,
                   is_closed, parse_formula, print_formula)
from .sexpr import Symbol


@dataclass(frozen=True)
class Id:
    a: Formula


@dataclass(frozen=True)
class Comp:
    g: "CatDeriv"
    f: "CatDeriv"


@dataclass(frozen=True)
class TensorMap:
    f: "CatDeriv"
    g: "CatDeriv"


@dataclass(frozen=True)
class Lam:
    a: Formula


@dataclass(frozen=True)
class Rho:
    a: Formula


@dataclass(frozen=True)
class Alpha:
    a: Formula
    b: Formula
    c: Formula


@dataclass(frozen=True)
class LamInv:
    a: Formula


@dataclass(frozen=True)
class RhoInv:
    a: Formula


@dataclass(frozen=True)
class AlphaInv:
    a: Formula
    b: Formula
    c: Formula


CatDeriv = Union[Id, Comp, TensorMap, Lam, Rho, Alpha, LamInv, RhoInv, AlphaInv]


def check_cat(d: CatDeriv, flags: NormalityFlags = NormalityFlags(),
              path: tuple[int, ...] = ()) -> tuple[Formula, Formula]:
    """Return ``(source, target)`` of ``d``; raise ``TypeMismatch``/``FlagViolation``."""
    match d:
        case Id(a):
            return a, a
        case Comp(g, f):
            a, b = check_cat(f, flags, path + (1,))
            b2, c = check_cat(g, flags, path + (0,))
            if b != b2:
                raise TypeMismatch(f"cannot compose: {print_formula(b)} vs {print_formula(b2)}", path)
            return a, c
        case TensorMap(f, g):
            a, c = check_cat(f, flags, path + (0,))
            b, e = check_cat(g, flags, path + (1,))
            return Tensor(a, b), Tensor(c, e)
        case Lam(a):
            return Tensor(I, a), a
        case Rho(a):
            return a, Tensor(a, I)
        case Alpha(a, b, c):
            return Tensor(Tensor(a, b), c), Tensor(a, Tensor(b, c))
        case LamInv(a):
            if not flags.ln:
                raise FlagViolation("laminv requires ln", path)
            return a, Tensor(I, a)
        case RhoInv(a):
            if not flags.rn:
                raise FlagViolation("rhoinv requires rn", path)
            return Tensor(a, I), a
        case AlphaInv(a, b, c):
            if not flags.an:
                raise FlagViolation("alphainv requires an", path)
            return Tensor(a, Tensor(b, c)), Tensor(Tensor(a, b), c)
    raise TypeMismatch(f"not a categorical derivation: {d!r}", path)


def source(d: CatDeriv) -> Formula:
    return check_cat(d, NormalityFlags(True, True, True))[0]


def target(d: CatDeriv) -> Formula:
    return check_cat(d, NormalityFlags(True, True, True))[1]


def comp(*fs: CatDeriv) -> CatDeriv:
    """``comp(h, g, f)`` is ``h . g . f``."""
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = Comp(g, out)
    return out


def tensor_ctx(f: CatDeriv, g) -> CatDeriv:
    """The functorial action on antecedents: ``f`` tensored with identities on ``g``."""
    for c in g:
        f = TensorMap(f, Id(c))
    return f


def alpha_c_inv(a: Formula, j: Formula, j2: Formula) -> CatDeriv:
    """A * (J * J') ==> (A * J) * J' for closed J, J', using only rho^-1 beyond the skew structure."""
    if not (is_closed(j) and is_closed(j2)):
        raise SkewError("alpha_c_inv needs closed second and third arguments")
    match j2:
        case Tensor(k, k2):
            # A(J(KK')) -> A((JK)K') -> (A(JK))K' -> ((AJ)K)K' -> (AJ)(KK')
            return comp(Alpha(Tensor(a, j), k, k2),
                        TensorMap(alpha_c_inv(a, j, k), Id(k2)),
                        alpha_c_inv(a, Tensor(j, k), k2),
                        TensorMap(Id(a), alpha_c_inv(j, k, k2)))
        case _:
            return Comp(Rho(Tensor(a, j)), TensorMap(Id(a), RhoInv(j)))


def cat_equal(f: CatDeriv, g: CatDeriv, flags: NormalityFlags = NormalityFlags()) -> bool:
    """Decide equality of parallel maps by comparing focused normal forms."""
    from .bridge import cmplt
    from .focused import focus

    ef, eg = check_cat(f, flags), check_cat(g, flags)
    if ef != eg:
        raise TypeMismatch("cat_equal: endpoints differ: "
                           f"{print_formula(ef[0])} ==> {print_formula(ef[1])} vs "
                           f"{print_formula(eg[0])} ==> {print_formula(eg[1])}")
    return focus(cmplt(f, flags), flags) == focus(cmplt(g, flags), flags)


# ---------------------------------------------------------------------------
# s-expressions:  (id "A") (comp g f) (tensor f g) (lam "A") (rho "A")
# (alpha "A" "B" "C") (laminv "A") (rhoinv "A") (alphainv "A" "B" "C")

_FORMULA_TAGS = {"id": Id, "lam": Lam, "rho": Rho, "alpha": Alpha,
                 "laminv": LamInv, "rhoinv": RhoInv, "alphainv": AlphaInv}
_TAG_OF = {v: k for k, v in _FORMULA_TAGS.items()}


def to_sexpr(d: CatDeriv) -> list:
    match d:
        case Comp(g, f):
            return [Symbol("comp"), to_sexpr(g), to_sexpr(f)]
        case TensorMap(f, g):
            return [Symbol("tensor"), to_sexpr(f), to_sexpr(g)]
    fields = [getattr(d, k) for k in d.__dataclass_fields__]
    return [Symbol(_TAG_OF[type(d)])] + [print_formula(x) for x in fields]


def from_sexpr(x) -> CatDeriv:
    if not isinstance(x, list) or not x or not isinstance(x[0], Symbol):
        raise TypeMismatch(f"malformed categorical term: {sexpr.dumps(x)}")
    tag, args = str(x[0]), x[1:]
    if tag in ("comp", "tensor"):
        if len(args) != 2:
            raise TypeMismatch(f"({tag} ...) takes 2 arguments")
        cls = Comp if tag == "comp" else TensorMap
        return cls(from_sexpr(args[0]), from_sexpr(args[1]))
    cls = _FORMULA_TAGS.get(tag)
    if cls is None:
        raise TypeMismatch(f"unknown tag {tag!r}")
    if len(args) != len(cls.__dataclass_fields__) or not all(isinstance(a, str) and not isinstance(a, Symbol)
                                                           for a in args):
        raise TypeMismatch(f"({tag} ...) takes {len(cls.__dataclass_fields__)} quoted formulas")
    return cls(*map(parse_formula, args))


def dumps(d: CatDeriv) -> str:
    return sexpr.dumps(to_sexpr(d))


def loads(text: str) -> CatDeriv:
    return from_sexpr(sexpr.loads(text))
