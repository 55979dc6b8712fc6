"""Evaluation points: concrete assignments of the half-power generators.

An ``EvalPoint`` fixes the series (so/sp), the rank parameter n, and exact
field values for q^(1/2), u^(1/2) and Q^(1/2).  Half powers are primitive
because the fused operator is naturally a function of u^(1/2) and the
closed-form spectra contain n/2 and x/2 exponents.

The series pins Q: for so(n) the specialization is Q = q^n; for sp(n) it is
Q = q^(-n) (the unique monomial choice for which the tangle-relation suite
and the rank conditions hold; see vectorrep).
"""

from __future__ import annotations

from dataclasses import dataclass
import random

from .field import DegeneratePoint, PrimeField

# Every denominator, idempotent and shifted spectral argument in scope is a
# product of plain quantum integers [m] with m below this bound (in half-power
# units it is doubled, see admissible()).
ADMISSIBILITY_MARGIN = 16


def guard_bound(n: int) -> int:
    return 4 * n + ADMISSIBILITY_MARGIN


@dataclass(frozen=True)
class EvalPoint:
    """A concrete evaluation point (series, n, q^(1/2), u^(1/2), Q^(1/2))."""

    series: str
    n: int
    field: object
    qh: object
    uh: object
    Qh: object = None

    def __post_init__(self):
        if self.series not in ("so", "sp"):
            raise ValueError(f"series must be 'so' or 'sp', got {self.series!r}")
        if self.n < 3:
            raise ValueError(f"n must be >= 3, got {self.n}")
        if self.series == "sp" and self.n % 2:
            raise ValueError("sp series requires even n")
        if self.field.is_zero(self.qh) or self.field.is_zero(self.uh):
            raise DegeneratePoint("half-power generators must be nonzero")
        if self.Qh is None:
            exp = self.n if self.series == "so" else -self.n
            object.__setattr__(self, "Qh", self.field.pow(self.qh, exp))
        if self.field.is_zero(self.Qh):
            raise DegeneratePoint("half-power generators must be nonzero")

    @property
    def q(self):
        return self.field.mul(self.qh, self.qh)

    @property
    def u(self):
        return self.field.mul(self.uh, self.uh)

    @property
    def Q(self):
        return self.field.mul(self.Qh, self.Qh)

    @property
    def q_minus_qinv(self):
        q = self.q
        return self.field.sub(q, self.field.inv(q))

    def with_uh(self, uh):
        """Same point, different spectral value."""
        return EvalPoint(self.series, self.n, self.field, self.qh, uh, self.Qh)

    def describe(self) -> dict:
        f = self.field
        def enc(v):
            return str(v) if f.kind == "rational" else int(v)
        return {
            "series": self.series,
            "n": self.n,
            "field": f.describe(),
            "qh": enc(self.qh),
            "uh": enc(self.uh),
            "Qh": enc(self.Qh),
        }


def quantum_int(F, qh, m2: int):
    """[m] in half-units: (qh^m2 - qh^-m2)/(q - q^-1) where q = qh^2."""
    q = F.mul(qh, qh)
    den = F.sub(q, F.inv(q))
    if F.is_zero(den):
        raise DegeneratePoint("q = ±1")
    num = F.sub(F.pow(qh, m2), F.pow(qh, -m2))
    return F.div(num, den)


def admissible(point: EvalPoint, bound: int | None = None) -> bool:
    """Strong admissibility guard used when sampling points.

    Requires q != ±1, all quantum integers [m/2] nonzero for 1 <= m <= 2*(4n+16)
    (half-units cover the n/2 and x/2 brackets), and a sweep of x-dependent
    brackets with small coefficients nonzero (guards every denominator, the
    fused normalizer and all shifted spectral arguments in scope).
    """
    F = point.field
    if bound is None:
        bound = guard_bound(point.n)
    q = point.q
    if F.is_zero(F.sub(q, F.one)) or F.is_zero(F.add(q, F.one)):
        return False
    qh = point.qh
    for m2 in range(1, 2 * bound + 1):
        if F.is_zero(F.sub(F.pow(qh, m2), F.pow(qh, -m2))):
            return False
    # x-dependent sweep: brackets Qh^a2 uh^b2 qh^c2 with small exponents
    uh, Qh = point.uh, point.Qh
    for a2 in (-2, -1, 0, 1, 2):
        for b2 in (-2, -1, 1, 2):
            for c2 in range(-ADMISSIBILITY_MARGIN, ADMISSIBILITY_MARGIN + 1):
                mono = F.mul(F.pow(Qh, a2), F.mul(F.pow(uh, b2), F.pow(qh, c2)))
                if F.is_zero(F.sub(mono, F.inv(mono))):
                    return False
    return True


MAX_SAMPLE_RETRIES = 64


class AdmissibleExhausted(RuntimeError):
    """No admissible point found within the retry budget (field too small)."""


def sample_admissible_point(series: str, n: int, field, seed: int,
                            bound: int | None = None) -> EvalPoint:
    """Deterministically sample an admissible point for (series, n).

    Prime backends must satisfy p > 4n+16.  Resamples until the admissibility
    guard passes; raises AdmissibleExhausted after a bounded retry count.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if isinstance(field, PrimeField) and field.p <= guard_bound(n):
        raise ValueError(f"prime field too small: need p > {guard_bound(n)}")
    rng = random.Random(seed)
    for _ in range(MAX_SAMPLE_RETRIES):
        if field.kind == "prime":
            qh = field.rand_nonzero(rng)
            uh = field.rand_nonzero(rng)
        else:
            # small rationals away from 0, ±1
            num = rng.randrange(2, 12)
            den = rng.randrange(2, 12)
            while num == den:
                den = rng.randrange(2, 12)
            qh = field.from_fraction(f"{num}/{den}")
            uh = field.rand_nonzero(rng)
            if abs(uh) == 1:
                continue
        try:
            point = EvalPoint(series, n, field, qh, uh)
        except DegeneratePoint:
            continue
        if admissible(point, bound):
            return point
    raise AdmissibleExhausted(
        f"no admissible point after {MAX_SAMPLE_RETRIES} draws for {series}({n}) over {field.describe()}")


def sample_spectral_value(point: EvalPoint, rng) -> object:
    """A fresh admissible u^(1/2) at an already-admissible point."""
    F = point.field
    for _ in range(MAX_SAMPLE_RETRIES):
        uh = F.rand_nonzero(rng)
        if F.kind == "rational" and abs(uh) == 1:
            continue
        cand = point.with_uh(uh)
        if admissible(cand, bound=1):  # q-part already vetted; sweep x-brackets
            return uh
    raise AdmissibleExhausted("no admissible spectral value found")
