"""Symbolic expression trees over brackets/braces, with randomized identity
testing between expressions (Schwartz-Zippel style, exact arithmetic).

Expressions are small immutable trees; leaves are bracket/brace triples,
monomials in the half-power generators, or integer constants.  Universal
leaves carry integer coefficients on three substitutable parameters
(alpha, beta, gamma), each of which is itself a half-integer combination
of n and a constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

from .brackets import BracketTriple, bracket_eval, brace_eval, monomial
from .field import DegeneratePoint
from .points import EvalPoint, sample_admissible_point


@dataclass(frozen=True)
class UniversalParams:
    """Values of (alpha, beta, gamma) as (a2, c2) pairs: p = (a2/2)*n + c2/2."""

    alpha: tuple
    beta: tuple
    gamma: tuple


def universal_params_for(series: str, n: int) -> UniversalParams:
    """Parameter specialization for a classical series.

    For so(n): (alpha, beta, gamma) = (-1, 2, n/2 - 2).  No sp-side map is
    implemented (none is known in scope).
    """
    if series != "so":
        raise NotImplementedError("universal parameter map is available for the so series only")
    return UniversalParams(alpha=(0, -2), beta=(0, 4), gamma=(1, -4))


# --- expression nodes -------------------------------------------------------

@dataclass(frozen=True)
class Br:
    t: BracketTriple


@dataclass(frozen=True)
class Brc:
    t: BracketTriple


@dataclass(frozen=True)
class Mono:
    t: BracketTriple


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Quot:
    num: object
    den: object


@dataclass(frozen=True)
class Neg:
    inner: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class UBr:
    """Bracket whose triple includes k_alpha*alpha + k_beta*beta + k_gamma*gamma."""

    t: BracketTriple
    ka: int = 0
    kb: int = 0
    kg: int = 0


@dataclass(frozen=True)
class UBrc:
    t: BracketTriple
    ka: int = 0
    kb: int = 0
    kg: int = 0


def br(a2, b2, c2):
    return Br(BracketTriple(a2, b2, c2))


def brc(a2, b2, c2):
    return Brc(BracketTriple(a2, b2, c2))


def prod(*factors):
    return Prod(tuple(factors))


def ssum(*terms):
    return Sum(tuple(terms))


def const(v):
    return Const(Fraction(v))


def _subst(t: BracketTriple, ka, kb, kg, params: UniversalParams) -> BracketTriple:
    a2, c2 = t.a2, t.c2
    for k, (pa, pc) in ((ka, params.alpha), (kb, params.beta), (kg, params.gamma)):
        a2 += k * pa
        c2 += k * pc
    return BracketTriple(a2, t.b2, c2)


def substitute_params(e, params: UniversalParams):
    """Resolve universal leaves into plain bracket/brace leaves."""
    if isinstance(e, UBr):
        return Br(_subst(e.t, e.ka, e.kb, e.kg, params))
    if isinstance(e, UBrc):
        return Brc(_subst(e.t, e.ka, e.kb, e.kg, params))
    if isinstance(e, Sum):
        return Sum(tuple(substitute_params(x, params) for x in e.terms))
    if isinstance(e, Prod):
        return Prod(tuple(substitute_params(x, params) for x in e.factors))
    if isinstance(e, Quot):
        return Quot(substitute_params(e.num, params), substitute_params(e.den, params))
    if isinstance(e, Neg):
        return Neg(substitute_params(e.inner, params))
    if isinstance(e, Pow):
        return Pow(substitute_params(e.base, params), e.exp)
    return e


def is_universal(e) -> bool:
    if isinstance(e, (UBr, UBrc)):
        return True
    if isinstance(e, Sum):
        return any(is_universal(x) for x in e.terms)
    if isinstance(e, Prod):
        return any(is_universal(x) for x in e.factors)
    if isinstance(e, Quot):
        return is_universal(e.num) or is_universal(e.den)
    if isinstance(e, (Neg, Pow)):
        return is_universal(e.inner if isinstance(e, Neg) else e.base)
    return False


def flip_u(e):
    """Substitute u -> u^-1 throughout."""
    if isinstance(e, Br):
        return Br(e.t.flip_u())
    if isinstance(e, Brc):
        return Brc(e.t.flip_u())
    if isinstance(e, Mono):
        return Mono(e.t.flip_u())
    if isinstance(e, UBr):
        return UBr(e.t.flip_u(), e.ka, e.kb, e.kg)
    if isinstance(e, UBrc):
        return UBrc(e.t.flip_u(), e.ka, e.kb, e.kg)
    if isinstance(e, Sum):
        return Sum(tuple(flip_u(x) for x in e.terms))
    if isinstance(e, Prod):
        return Prod(tuple(flip_u(x) for x in e.factors))
    if isinstance(e, Quot):
        return Quot(flip_u(e.num), flip_u(e.den))
    if isinstance(e, Neg):
        return Neg(flip_u(e.inner))
    if isinstance(e, Pow):
        return Pow(flip_u(e.base), e.exp)
    return e


def eval_formula(e, p: EvalPoint, params: UniversalParams | None = None):
    """Evaluate an expression tree at a point.

    Universal leaves require params.  Raises DegeneratePoint if a quotient
    denominator vanishes at p.
    """
    F = p.field
    if isinstance(e, (UBr, UBrc)):
        if params is None:
            raise ValueError("universal expression requires parameter values")
        e = substitute_params(e, params)
    if isinstance(e, Br):
        return bracket_eval(e.t, p)
    if isinstance(e, Brc):
        return brace_eval(e.t, p)
    if isinstance(e, Mono):
        return monomial(e.t, p)
    if isinstance(e, Const):
        return F.from_fraction(e.value)
    if isinstance(e, Sum):
        acc = F.zero
        for x in e.terms:
            acc = F.add(acc, eval_formula(x, p, params))
        return acc
    if isinstance(e, Prod):
        acc = F.one
        for x in e.factors:
            acc = F.mul(acc, eval_formula(x, p, params))
        return acc
    if isinstance(e, Quot):
        den = eval_formula(e.den, p, params)
        if F.is_zero(den):
            raise DegeneratePoint("formula denominator vanishes at this point")
        return F.div(eval_formula(e.num, p, params), den)
    if isinstance(e, Neg):
        return F.neg(eval_formula(e.inner, p, params))
    if isinstance(e, Pow):
        return F.pow(eval_formula(e.base, p, params), e.exp)
    raise TypeError(f"not a formula node: {type(e).__name__}")


# --- randomized identity testing -------------------------------------------

PASS = "PASS"
FAIL = "FAIL"
DISCREPANCY = "DISCREPANCY"


@dataclass
class Verdict:
    status: str
    detail: dict

    def __bool__(self):
        return self.status == PASS


# candidate expressions tried when identifying the ratio between formulas;
# each is a function point -> field scalar
def _ratio_candidates():
    def mono_pow(a2, b):
        def ev(p):
            F = p.field
            return F.mul(F.pow(p.Qh, a2), F.pow(p.q_minus_qinv, b))
        return ev

    cands = {
        "[2]": lambda p: bracket_eval(BracketTriple(0, 0, 4), p),
        "-[2]": lambda p: p.field.neg(bracket_eval(BracketTriple(0, 0, 4), p)),
        "2": lambda p: p.field.from_int(2),
        "-1": lambda p: p.field.neg(p.field.one),
    }
    for a2 in range(-4, 5):
        for b in range(-8, 9, 2):
            if a2 == 0 and b == 0:
                continue
            ahalf = f"{a2 // 2}" if a2 % 2 == 0 else f"{a2}/2"
            name = f"Q^{ahalf}(q-q^-1)^{b}"
            cands[name] = mono_pow(a2, b)
    return cands


def identity_test(e1, e2, series: str, n: int, trials: int, field=None, seed: int = 0,
                  params: UniversalParams | None = None) -> Verdict:
    """Randomized equality test of two expressions at sampled admissible points.

    PASS  -- e1 - e2 vanished at every sampled point;
    DISCREPANCY -- e1/e2 is the same nonzero constant at every point
                   (the constant is reported, identified by name if small);
    FAIL  -- values differ non-proportionally (witness point included).

    Degenerate points (vanishing denominators) are resampled, never counted.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    from .field import PrimeField
    field = field or PrimeField()
    got = []
    attempt = 0
    while len(got) < trials and attempt < 8 * trials + 16:
        p = sample_admissible_point(series, n, field, seed=seed * 1009 + attempt)
        attempt += 1
        try:
            v1 = eval_formula(e1, p, params)
            v2 = eval_formula(e2, p, params)
        except DegeneratePoint:
            continue
        got.append((p, v1, v2))
    if len(got) < trials:
        raise DegeneratePoint("could not collect enough admissible sample points")
    F = field
    if all(F.eq(v1, v2) for _, v1, v2 in got):
        return Verdict(PASS, {"points": len(got)})
    ratios = []
    for p, v1, v2 in got:
        if F.is_zero(v2):
            return Verdict(FAIL, {"witness": p.describe(), "lhs": str(v1), "rhs": str(v2)})
        ratios.append((p, F.div(v1, v2)))
    # a known simple expression that equals the ratio at every sampled point?
    for cname, cfun in _ratio_candidates().items():
        if all(F.eq(cfun(p), r) for p, r in ratios):
            return Verdict(DISCREPANCY, {"ratio": str(ratios[0][1]), "ratio_name": cname,
                                         "points": len(got)})
    r0 = ratios[0][1]
    if all(F.eq(r, r0) for _, r in ratios):
        return Verdict(DISCREPANCY, {"ratio": str(r0), "ratio_name": None, "points": len(got)})
    p, _ = ratios[0]
    return Verdict(FAIL, {"witness": p.describe(), "lhs": str(got[0][1]), "rhs": str(got[0][2])})
