"""Formulas, stoups, contexts and sequents, with their concrete syntax.

Grammar (whitespace insensitive)::

    formula  ::= factor (TENSOR factor)*        -- left associative
    factor   ::= "I" | IDENT | "(" formula ")"
    TENSOR   ::= "*" | "(x)" | "⊗"
    stoup    ::= "-" | "−" | formula
    context  ::= [formula ("," formula)*]
    sequent  ::= stoup "|" context TURNSTILE formula
               | formula TURNSTILE formula         -- sugar for  A | |- C
    TURNSTILE ::= "|-" | "⊢"

Every identifier other than ``I`` is an atom.  A stoup is ``None`` (empty)
or a formula; a context is a tuple of formulas.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Union


class SkewError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SkewError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class TypeMismatch(SkewError):
    """A derivation term does not typecheck; ``path`` locates the offending node."""

    def __init__(self, message: str, path: tuple[int, ...] = ()):
        self.path = path
        where = "/".join(map(str, path)) or "root"
        super().__init__(f"{message} (at {where})")


class FlagViolation(TypeMismatch):
    """A rule guarded by a normality flag was used while the flag is off."""


# ---------------------------------------------------------------------------
# formulas

@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unit:
    def __str__(self):
        return "I"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        # formulas are hashed constantly by the search memo tables
        object.__setattr__(self, "_hash", hash((self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return print_formula(self)


Formula = Union[Atom, Unit, Tensor]
Stoup = Optional[Formula]
Context = tuple  # tuple[Formula, ...]

I = Unit()


def tensor(*fs: Formula) -> Formula:
    """Left-nested tensor of one or more formulas."""
    return reduce(Tensor, fs)


@lru_cache(maxsize=None)
def size(f: Formula) -> int:
    if isinstance(f, Tensor):
        return 1 + size(f.left) + size(f.right)
    return 1


def is_closed(f: Formula) -> bool:
    """True iff ``f`` is built from I and tensor only."""
    match f:
        case Atom():
            return False
        case Unit():
            return True
        case Tensor(a, b):
            return is_closed(a) and is_closed(b)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def _frontier(f: Formula) -> tuple:
    match f:
        case Atom(name):
            return (name,)
        case Unit():
            return ()
        case Tensor(a, b):
            return _frontier(a) + _frontier(b)
    raise TypeError(f"not a formula: {f!r}")


def frontier(x) -> tuple[str, ...]:
    """In-order atom names of a formula, stoup (None = empty) or context."""
    if x is None:
        return ()
    if isinstance(x, (tuple, list)):
        return tuple(a for f in x for a in _frontier(f))
    return _frontier(x)


def stoup_formula(s: Stoup) -> Formula:
    """Reading of a stoup as a formula: the empty stoup means I."""
    return I if s is None else s


def interp_antecedent(s: Stoup, g: Iterable[Formula]) -> Formula:
    """(..((<s> * A1) * A2) ..) * An."""
    return reduce(Tensor, g, stoup_formula(s))


# ---------------------------------------------------------------------------
# normality flags and sequents

@dataclass(frozen=True)
class NormalityFlags:
    ln: bool = False
    rn: bool = False
    an: bool = False

    @classmethod
    def all_settings(cls) -> list["NormalityFlags"]:
        return [cls(ln, rn, an) for ln, rn, an in product((False, True), repeat=3)]

    def __str__(self):
        on = [n for n in ("ln", "rn", "an") if getattr(self, n)]
        return ",".join(on) or "skew"


@dataclass(frozen=True)
class Sequent:
    stoup: Stoup
    context: tuple
    succedent: Formula

    def __str__(self):
        return print_sequent(self)


# ---------------------------------------------------------------------------
# concrete syntax

_TOKEN = re.compile(
    r"""\s*(?:
      (?P<turnstile>\|-|⊢)
    | (?P<bar>\|)
    | (?P<otimes>\*|⊗)
    | (?P<lpar>\()
    | (?P<rpar>\))
    | (?P<comma>,)
    | (?P<dash>-|−)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                break
            col = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", text, col)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, what: str):
        kind, val, pos = self.peek()
        got = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"expected {what}, got {got}", self.text, pos)

    def expect(self, kind: str, what: str):
        if self.peek()[0] != kind:
            self.fail(what)
        tok = self.peek()
        self.i += 1
        return tok

    def at_tensor(self) -> bool:
        if self.peek()[0] == "otimes":
            return True
        # "(x)" in operator position is the ASCII tensor
        return (self.peek()[0] == "lpar" and self.peek(1)[:2] == ("ident", "x")
                and self.peek(2)[0] == "rpar")

    def skip_tensor(self):
        self.i += 1 if self.peek()[0] == "otimes" else 3

    def formula(self) -> Formula:
        f = self.factor()
        while self.at_tensor():
            self.skip_tensor()
            f = Tensor(f, self.factor())
        return f

    def factor(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "ident":
            self.i += 1
            return I if val == "I" else Atom(val)
        if kind == "lpar":
            self.i += 1
            f = self.formula()
            self.expect("rpar", "')'")
            return f
        self.fail("a formula")

    def starts_formula(self) -> bool:
        return self.peek()[0] in ("ident", "lpar")

    def sequent(self) -> Sequent:
        if self.peek()[0] == "dash":
            self.i += 1
            stoup = None
        else:
            stoup = self.formula()
            if self.peek()[0] == "turnstile":
                self.i += 1
                return Sequent(stoup, (), self.formula())
        self.expect("bar", "'|'")
        ctx = []
        if self.starts_formula():
            ctx.append(self.formula())
            while self.peek()[0] == "comma":
                self.i += 1
                ctx.append(self.formula())
        self.expect("turnstile", "'|-'")
        return Sequent(stoup, tuple(ctx), self.formula())

    def done(self):
        if self.peek()[0] != "eof":
            self.fail("end of input")


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.done()
    return f


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    s = p.sequent()
    p.done()
    return s


def print_formula(f: Formula) -> str:
    match f:
        case Atom(name):
            return name
        case Unit():
            return "I"
        case Tensor(a, b):
            return f"{_operand(a)} * {_operand(b)}"
    raise TypeError(f"not a formula: {f!r}")


def _operand(f: Formula) -> str:
    s = print_formula(f)
    return f"({s})" if isinstance(f, Tensor) else s


def print_stoup(s: Stoup) -> str:
    return "-" if s is None else print_formula(s)


def print_context(g: Iterable[Formula]) -> str:
    return ", ".join(map(print_formula, g))


def print_sequent(seq: Sequent) -> str:
    ctx = print_context(seq.context)
    mid = f" {ctx} " if ctx else " "
    return f"{print_stoup(seq.stoup)} |{mid}|- {print_formula(seq.succedent)}"


def formulas_upto(max_atoms: int, max_units: int, atoms: Iterable[str] = ("X", "Y", "Z"),
                  distinct_in_order: bool = True) -> Iterator[Formula]:
    """Every formula with at most ``max_atoms`` atom and ``max_units`` unit leaves.

    With ``distinct_in_order`` the atom leaves are labelled ``atoms[0], atoms[1], ...``
    from left to right; otherwise every labelling from ``atoms`` is produced.
    """
    atoms = list(atoms)

    def shapes(n: int):
        if n == 1:
            yield None
            return
        for k in range(1, n):
            for l in shapes(k):
                for r in shapes(n - k):
                    yield (l, r)

    def fill(shape, labels):
        it = iter(labels)

        def go(s):
            if s is None:
                return next(it)
            return Tensor(go(s[0]), go(s[1]))
        return go(shape)

    for a in range(max_atoms + 1):
        for u in range(max_units + 1):
            n = a + u
            if n == 0:
                continue
            if distinct_in_order:
                namings = [atoms[:a]]
            else:
                namings = [list(t) for t in product(atoms, repeat=a)]
            for shape in shapes(n):
                for unit_pos in map(frozenset, combinations(range(n), u)):
                    for names in namings:
                        names_it = iter(names)
                        labels = [I if i in unit_pos else Atom(next(names_it)) for i in range(n)]
                        yield fill(shape, labels)

