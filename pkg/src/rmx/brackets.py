"""Generalized quantum integers over the half-power generators.

A ``BracketTriple`` stores half-integer exponents (a, b, c) as integers in
units of 1/2, so the monomial Q^a u^b q^c is exactly Qh^a2 uh^b2 qh^c2.

    bracket:  [a,b,c] = (Q^a u^b q^c - Q^-a u^-b q^-c) / (q - q^-1)
    brace:    {a,b,c} =  Q^a u^b q^c + Q^-a u^-b q^-c
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import DegeneratePoint
from .points import EvalPoint


@dataclass(frozen=True)
class BracketTriple:
    """Exponents of (Q, u, q) in half-integer units: a = a2/2 etc."""

    a2: int
    b2: int
    c2: int

    def negate(self) -> "BracketTriple":
        return BracketTriple(-self.a2, -self.b2, -self.c2)

    def double(self) -> "BracketTriple":
        return BracketTriple(2 * self.a2, 2 * self.b2, 2 * self.c2)

    def flip_u(self) -> "BracketTriple":
        """Substitute u -> u^-1 (x -> -x)."""
        return BracketTriple(self.a2, -self.b2, self.c2)

    def label(self) -> str:
        parts = []
        for coef2, sym in ((self.a2, "n"), (self.b2, "x"), (self.c2, "")):
            if coef2 == 0:
                continue
            mag, rem = divmod(abs(coef2), 2)
            txt = f"{mag}" if rem == 0 else (f"{mag}.5" if mag else "1/2")
            if sym:
                txt = ("" if txt == "1" else txt + "*") + sym
            sign = "-" if coef2 < 0 else ("+" if parts else "")
            parts.append(sign + txt)
        return "".join(parts) or "0"


def monomial(t: BracketTriple, p: EvalPoint):
    F = p.field
    return F.mul(F.pow(p.Qh, t.a2), F.mul(F.pow(p.uh, t.b2), F.pow(p.qh, t.c2)))


def bracket_eval(t: BracketTriple, p: EvalPoint):
    """[an + bx + c] at the point; error when q - q^-1 vanishes."""
    F = p.field
    den = p.q_minus_qinv
    if F.is_zero(den):
        raise DegeneratePoint("bracket undefined: q = ±1")
    m = monomial(t, p)
    return F.div(F.sub(m, F.inv(m)), den)


def brace_eval(t: BracketTriple, p: EvalPoint):
    """{an + bx + c} at the point."""
    F = p.field
    m = monomial(t, p)
    return F.add(m, F.inv(m))
