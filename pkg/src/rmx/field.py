"""Exact scalar backends: arbitrary-precision rationals and 64-bit prime fields.

Two interchangeable backends implement the same small API:

* ``RationalField`` — elements are ``fractions.Fraction`` (ints accepted).
* ``PrimeField(p)``  — elements are ints in ``[0, p)``.

A backend also provides bulk array kernels (numpy) used by the tensor
machinery.  For the default Mersenne prime ``M61 = 2**61 - 1`` the kernels
run on int64 arrays with split-multiply reduction; any other prime falls
back to object-dtype arrays of Python ints (exact, slower).

Backends are fixed per computation session; mixing scalars from different
backends raises ``BackendMismatch``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

M61 = (1 << 61) - 1  # 2305843009213693951


class BackendMismatch(TypeError):
    """Raised when values from different scalar backends are combined."""


class DegeneratePoint(ArithmeticError):
    """Raised when an evaluation point makes a required denominator vanish."""


def _reduce63(x):
    """Fold int64 values in [0, 2^63) into [0, M61). Works on arrays and ints."""
    x = (x >> 61) + (x & M61)
    x = (x >> 61) + (x & M61)
    return np.where(x >= M61, x - M61, x) if isinstance(x, np.ndarray) else (x - M61 if x >= M61 else x)


_MASK31 = (1 << 31) - 1
_MASK30 = (1 << 30) - 1


def m61_mul(a, b):
    """Elementwise (a * b) mod M61 on int64 arrays with entries < 2^61."""
    a1 = a >> 31
    a0 = a & _MASK31
    b1 = b >> 31
    b0 = b & _MASK31
    hi = a1 * b1                      # < 2^60
    mid = a1 * b0 + a0 * b1           # < 2^62
    lo = a0 * b0                      # < 2^62
    m1 = mid >> 30
    m0 = mid & _MASK30
    # 2^62 == 2, 2^61 == 1, so hi*2^62 == 2*hi and mid*2^31 == m1 + m0*2^31
    total = _reduce63(hi << 1) + m1 + (m0 << 31) + _reduce63(lo)
    return _reduce63(total)


# 21-bit split lets numpy's integer matmul accumulate up to 2^13 terms in int64.
_CHUNK = 1 << 13


def m61_matmul(A, B):
    """Exact (A @ B) mod M61 for int64 matrices with entries < 2^61."""
    k = A.shape[-1]
    if k > _CHUNK:
        C = None
        for s in range(0, k, _CHUNK):
            part = m61_matmul(A[..., s:s + _CHUNK], B[s:s + _CHUNK])
            C = part if C is None else _reduce63(C + part)
        return C
    mask21 = (1 << 21) - 1
    a = [A & mask21, (A >> 21) & mask21, A >> 42]
    b = [B & mask21, (B >> 21) & mask21, B >> 42]
    groups = [None] * 5  # by total shift i+j
    for i in range(3):
        for j in range(3):
            part = a[i] @ b[j]
            t = i + j
            groups[t] = part if groups[t] is None else groups[t] + part
    # weights 2^(21t) mod M61
    weights = [1, 1 << 21, 1 << 42, 1 << 2, 1 << 23]
    C = None
    for t in range(5):
        g = m61_mul(_reduce63(groups[t]), np.int64(weights[t]))
        C = g if C is None else _reduce63(C + g)
    return C


class PrimeField:
    """Arithmetic mod a prime p (default M61). Scalars are ints in [0, p)."""

    kind = "prime"

    def __init__(self, p: int = M61):
        if p < 3 or pow(2, p - 1, p) != 1:
            raise ValueError(f"not an odd prime (Fermat base-2 check failed): {p}")
        self.p = p
        self._fast = p == M61

    # -- scalar ops ---------------------------------------------------------
    # inputs may be numpy integer scalars; coerce to Python ints so products
    # never wrap
    def add(self, a, b):
        return (int(a) + int(b)) % self.p

    def sub(self, a, b):
        return (int(a) - int(b)) % self.p

    def mul(self, a, b):
        return (int(a) * int(b)) % self.p

    def neg(self, a):
        return (-int(a)) % self.p

    def inv(self, a):
        a = int(a)
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(int(a), e, self.p)

    def from_int(self, i: int):
        return i % self.p

    def from_fraction(self, fr) -> int:
        """Canonical reduction map Q -> F_p (denominator must be a unit)."""
        fr = Fraction(fr)
        return self.mul(fr.numerator % self.p, self.inv(fr.denominator % self.p))

    def coerce(self, v):
        if isinstance(v, (int, np.integer)):
            return int(v) % self.p
        if isinstance(v, Fraction):
            return self.from_fraction(v)
        raise BackendMismatch(f"cannot coerce {type(v).__name__} into prime field")

    zero = 0

    @property
    def one(self):
        return 1

    def is_zero(self, a):
        return int(a) % self.p == 0

    def rand(self, rng):
        return rng.randrange(self.p)

    def rand_nonzero(self, rng):
        while True:
            v = rng.randrange(self.p)
            if v:
                return v

    def eq(self, a, b):
        return (int(a) - int(b)) % self.p == 0

    # -- array kernels ------------------------------------------------------
    @property
    def dtype(self):
        return np.int64 if self._fast else object

    def array(self, data):
        a = np.array(data, dtype=object) % self.p
        if self._fast:
            return a.astype(np.int64)
        return a

    def zeros(self, shape):
        if self._fast:
            return np.zeros(shape, dtype=np.int64)
        z = np.zeros(shape, dtype=object)
        z[...] = 0
        return z

    def eye(self, m):
        E = self.zeros((m, m))
        for i in range(m):
            E[i, i] = 1
        return E

    def arr_add(self, A, B):
        if self._fast:
            return _reduce63(A + B)
        return (A + B) % self.p

    def arr_sub(self, A, B):
        if self._fast:
            return _reduce63(A - B + M61)
        return (A - B) % self.p

    def arr_neg(self, A):
        if self._fast:
            return _reduce63(M61 - A)
        return (-A) % self.p

    def arr_mul(self, A, B):
        if self._fast:
            return m61_mul(A, B)
        return (A * B) % self.p

    def arr_scale(self, A, s):
        if self._fast:
            return m61_mul(A, np.int64(s))
        return (A * s) % self.p

    def matmul(self, A, B):
        if self._fast:
            return m61_matmul(A, B)
        return (A @ B) % self.p

    def arr_rand(self, rng, shape):
        total = int(np.prod(shape))
        vals = [rng.randrange(self.p) for _ in range(total)]
        return self.array(vals).reshape(shape)

    def describe(self):
        return f"prime:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """Exact rational arithmetic backed by fractions.Fraction."""

    kind = "rational"

    # -- scalar ops -------------------------------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def from_int(self, i: int):
        return Fraction(i)

    def from_fraction(self, fr):
        return Fraction(fr)

    def coerce(self, v):
        if isinstance(v, (int, np.integer, Fraction)):
            return Fraction(v)
        raise BackendMismatch(f"cannot coerce {type(v).__name__} into rational field")

    zero = Fraction(0)
    one = Fraction(1)

    def is_zero(self, a):
        return a == 0

    def rand(self, rng):
        return Fraction(rng.randrange(-12, 13), rng.randrange(1, 8))

    def rand_nonzero(self, rng):
        while True:
            v = self.rand(rng)
            if v:
                return v

    def eq(self, a, b):
        return a == b

    # -- array kernels ------------------------------------------------------
    dtype = object

    def array(self, data):
        a = np.array(data, dtype=object)
        out = np.empty(a.shape, dtype=object)
        for idx, v in np.ndenumerate(a):
            out[idx] = Fraction(v)
        return out

    def zeros(self, shape):
        z = np.empty(shape, dtype=object)
        z[...] = Fraction(0)
        return z

    def eye(self, m):
        E = self.zeros((m, m))
        for i in range(m):
            E[i, i] = Fraction(1)
        return E

    def arr_add(self, A, B):
        return A + B

    def arr_sub(self, A, B):
        return A - B

    def arr_neg(self, A):
        return -A

    def arr_mul(self, A, B):
        return A * B

    def arr_scale(self, A, s):
        return A * s

    def matmul(self, A, B):
        return A @ B

    def arr_rand(self, rng, shape):
        total = int(np.prod(shape))
        vals = [self.rand(rng) for _ in range(total)]
        return np.array(vals, dtype=object).reshape(shape)

    def describe(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


def check_same_field(f1, f2):
    if f1 != f2:
        raise BackendMismatch(f"mixed scalar backends: {f1!r} vs {f2!r}")


def parse_field(spec: str):
    """Parse a field description: 'rational' or 'prime:<p>'."""
    if spec == "rational":
        return RationalField()
    if spec.startswith("prime:"):
        return PrimeField(int(spec.split(":", 1)[1]))
    if spec == "prime":
        return PrimeField()
    raise ValueError(f"unknown field spec: {spec!r}")
