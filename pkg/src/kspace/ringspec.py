"""Parser for ring construction strings.

Grammar (whitespace ignored)::

    ring  := term (("x" | "×") term)*           left associative products
    term  := "(" ring ")" | atom
    atom  := "Z" INT | "Z" INT "[x]/(" poly ")"
    poly  := ["+"|"-"] mono (("+"|"-") mono)*
    mono  := INT | [INT] "x" ["^" INT]

Polynomial coefficients are reduced modulo the base; the modulus must be
monic after reduction.  ``@path.json`` loads a ring from its JSON dump.
"""

from __future__ import annotations

import json
from pathlib import Path

from .config import Caps
from .errors import RingSpecError, UnsupportedModulusError
from .rings import FiniteRing, make_poly_quotient, make_product, make_zmod

__all__ = ["parse_ring", "parse_poly"]


class _Parser:
    def __init__(self, text: str, caps: Caps | None):
        self.text = text
        self.pos = 0
        self.caps = caps

    def error(self, msg, pos=None):
        raise RingSpecError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, literal: str) -> bool:
        self.skip()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str):
        if not self.accept(literal):
            self.error(f"expected {literal!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def ring(self) -> FiniteRing:
        left = self.term()
        while self.peek() in ("x", "×"):
            self.pos += 1
            right = self.term()
            left = make_product(left, right, self.caps)
        return left

    def term(self) -> FiniteRing:
        if self.accept("("):
            inner = self.ring()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self) -> FiniteRing:
        if not self.accept("Z"):
            self.error("expected 'Z<n>'")
        n_pos = self.pos
        n = self.integer()
        if n < 2:
            self.error("modulus of Z<n> must be at least 2", n_pos)
        base = make_zmod(n, self.caps)
        if not self.accept("[x]"):
            return base
        self.expect("/")
        self.expect("(")
        poly_start = self.pos
        coeffs = self.poly(n)
        self.expect(")")
        try:
            return make_poly_quotient(base, coeffs, self.caps)
        except UnsupportedModulusError as exc:
            raise RingSpecError(str(exc), self.text, poly_start) from exc

    def poly(self, n: int) -> list[int]:
        terms: dict[int, int] = {}
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            coeff, degree = self.mono()
            terms[degree] = terms.get(degree, 0) + sign * coeff
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        top = max(terms)
        return [terms.get(k, 0) % n for k in range(top + 1)]

    def mono(self) -> tuple[int, int]:
        coeff = 1
        has_coeff = False
        if self.peek().isdigit():
            coeff = self.integer()
            has_coeff = True
        if self.accept("x"):
            degree = 1
            if self.accept("^"):
                degree = self.integer()
            return coeff, degree
        if not has_coeff:
            self.error("expected a coefficient or 'x'")
        return coeff, 0


def parse_poly(text: str, n: int) -> list[int]:
    """Coefficients (lowest degree first, reduced mod ``n``) of a polynomial string."""
    p = _Parser(text, None)
    coeffs = p.poly(n)
    if p.peek():
        p.error("unexpected trailing input")
    return coeffs


def parse_ring(text: str, caps: Caps | None = None) -> FiniteRing:
    """Build a ring from a construction string such as ``"Z2[x]/(x^2+x+1) x Z3"``."""
    stripped = text.strip()
    if stripped.startswith("@"):
        return FiniteRing.from_json(json.loads(Path(stripped[1:]).read_text()))
    p = _Parser(text, caps)
    if not p.peek():
        p.error("empty ring specification")
    ring = p.ring()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return ring
