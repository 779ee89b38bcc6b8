"""Twist words and their text syntax.

Grammar (whitespace ignored)::

    word   = [ factor { "*" factor } ] ;
    factor = atom [ "^" int ] ;
    atom   = name | "(" word ")" ;
    name   = letter { letter | digit | "_" } ;
    int    = [ "+" | "-" ] digit { digit } ;

Exponent zero is rejected.  Syllables are composed right to left: in
``a * b`` the twist about ``b`` is applied first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownGenerator(KeyError):
    def __init__(self, name: str, surface: str | None = None):
        where = f" on {surface}" if surface else ""
        super().__init__(f"unknown generator {name!r}{where}")
        self.name = name


Syllable = tuple[str, int]


def merge(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[list] = []
    for name, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == name:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([name, e])
    return tuple((n, e) for n, e in out)


@dataclass(frozen=True)
class TwistWord:
    """Product of Dehn twists; leftmost syllable applied last."""

    surface: str
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "syllables", merge(self.syllables))

    @classmethod
    def identity(cls, surface: str) -> "TwistWord":
        return cls(surface, ())

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        if other.surface != self.surface:
            raise ValueError(f"cannot compose words on {self.surface} and {other.surface}")
        return TwistWord(self.surface, self.syllables + other.syllables)

    def inverse(self) -> "TwistWord":
        return TwistWord(self.surface, tuple((n, -e) for n, e in reversed(self.syllables)))

    def power(self, k: int) -> "TwistWord":
        if k < 0:
            return self.inverse().power(-k)
        return TwistWord(self.surface, self.syllables * k)

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.syllables if n == name)

    def names(self) -> set[str]:
        return {n for n, _ in self.syllables}

    def units(self) -> list[Syllable]:
        """One syllable per single twist, in word order."""
        return [(n, 1 if e > 0 else -1) for n, e in self.syllables for _ in range(abs(e))]

    def text(self) -> str:
        return format_syllables(self.syllables)

    def __str__(self) -> str:
        return self.text()


def format_syllables(syllables: Sequence[Syllable]) -> str:
    return " * ".join(n if e == 1 else f"{n}^{e}" for n, e in syllables)


_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|([-+]?\d+)|(\S))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # only trailing whitespace left
                break
            if m.group(1):
                self.tokens.append(("name", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("int", m.group(2), m.start(2)))
            elif m.group(3):
                self.tokens.append(("sym", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        t = self.peek()
        return t[2] if t else len(self.text)

    def take(self) -> tuple[str, str, int]:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return t

    def expect(self, sym: str) -> None:
        t = self.take()
        if t[0] != "sym" or t[1] != sym:
            raise ParseError(f"expected {sym!r}, found {t[1]!r}", t[2])

    def word(self, closing: str | None) -> list[Syllable]:
        out: list[Syllable] = []
        t = self.peek()
        if t is None or (closing and t == ("sym", closing, t[2])):
            if closing:
                raise ParseError("empty group", self.pos())
            return out
        out.extend(self.factor())
        while True:
            t = self.peek()
            if t is None or (t[0] == "sym" and t[1] == closing):
                return out
            self.expect("*")
            out.extend(self.factor())

    def factor(self) -> list[Syllable]:
        t = self.take()
        if t[0] == "name":
            body: list[Syllable] = [(t[1], 1)]
        elif t == ("sym", "(", t[2]):
            body = self.word(")")
            self.expect(")")
        else:
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        nxt = self.peek()
        if nxt is not None and nxt[0] == "sym" and nxt[1] == "^":
            self.take()
            e_tok = self.take()
            if e_tok[0] != "int":
                raise ParseError(f"expected an integer exponent, found {e_tok[1]!r}", e_tok[2])
            e = int(e_tok[1])
            if e == 0:
                raise ParseError("zero exponent", e_tok[2])
            if e < 0:
                body = [(n, -x) for n, x in reversed(body)]
            body = body * abs(e)
        return body


def parse_syllables(text: str) -> tuple[Syllable, ...]:
    p = _Parser(text)
    syl = p.word(None)
    if p.peek() is not None:
        t = p.peek()
        raise ParseError(f"unexpected {t[1]!r}", t[2])
    return merge(syl)


def parse_word(text: str, surface: str, allowed: Iterable[str] | None = None) -> TwistWord:
    """Parse ``text`` into a TwistWord on ``surface``.

    ``allowed`` defaults to the twist curves named in the surface catalog.
    """
    syl = parse_syllables(text)
    if allowed is None:
        from .surface import load_surface

        allowed = load_surface(surface).twist_curves
    allowed = set(allowed)
    for name, _ in syl:
        if name not in allowed:
            raise UnknownGenerator(name, surface)
    return TwistWord(surface, syl)
