"""Minimal s-expression reader/printer used for derivation terms.

Values are nested Python lists whose leaves are ``Symbol`` (bare words),
``int`` or ``str`` (double-quoted, backslash escapes).
"""
from __future__ import annotations

import re

from .core import ParseError


class Symbol(str):
    __slots__ = ()

    def __repr__(self):
        return f"Symbol({str(self)!r})"


_TOK = re.compile(r'\s*(?:(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()"]+))')


def loads(text: str):
    pos = 0
    stack: list[list] = [[]]
    opened: list[int] = []
    while True:
        m = _TOK.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip():
                col = pos + len(rest) - len(rest.lstrip())
                raise ParseError("unterminated string or bad token", text, col)
            break
        pos = m.end()
        lpar, rpar, string, word = m.groups()
        if lpar:
            opened.append(m.start(1))
            stack.append([])
        elif rpar:
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", text, m.start(2))
            opened.pop()
            done = stack.pop()
            stack[-1].append(done)
        elif string is not None:
            stack[-1].append(re.sub(r"\\(.)", r"\1", string))
        else:
            stack[-1].append(int(word) if re.fullmatch(r"-?\d+", word) else Symbol(word))
    if len(stack) > 1:
        raise ParseError("missing ')'", text, opened[-1])
    top = stack[0]
    if len(top) != 1:
        raise ParseError(f"expected exactly one expression, got {len(top)}", text, 0)
    return top[0]


def dumps(x) -> str:
    if isinstance(x, list):
        return "(" + " ".join(dumps(y) for y in x) + ")"
    if isinstance(x, Symbol):
        return str(x)
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return str(x)
