"""Sparse operators on tensor powers of the n-dimensional leg space.

A ``TwoLegOp`` is an n^2 x n^2 matrix acting on two adjacent legs.  It is
never embedded into the n^k x n^k ambient space; application to vectors (or
batches of column vectors) reshapes the operand and contracts the two-leg
axis, visiting only the stored nonzero rows.  This keeps Yang-Baxter checks
on six legs at memory ~n^6 scalars.
"""

from __future__ import annotations

import numpy as np

from .field import check_same_field


class TwoLegOp:
    """An operator on legs (i, i+1), stored as its small dense matrix plus a
    row-wise nonzero index for sparse application."""

    def __init__(self, field, n, mat):
        self.field = field
        self.n = n
        self.mat = mat
        n2 = n * n
        assert mat.shape == (n2, n2)
        self._rows = []
        for r in range(n2):
            cols = [c for c in range(n2) if not field.is_zero(mat[r, c])]
            if cols:
                self._rows.append((r, np.array(cols), mat[r, cols].copy()))

    @property
    def nnz(self):
        return sum(len(cols) for _, cols, _ in self._rows)

    def apply(self, vec, leg, k):
        """Apply on legs (leg, leg+1) of V^(x)k. vec: (n^k,) or (n^k, m)."""
        F = self.field
        n = self.n
        total = n ** k
        single = vec.ndim == 1
        v = vec.reshape(total, 1) if single else vec
        m = v.shape[1]
        left = n ** (leg - 1)
        right = n ** (k - leg - 1)
        # (left, n2, right*m) with the two-leg axis in the middle
        v3 = v.reshape(left, n * n, right * m)
        out = F.zeros((left, n * n, right * m))
        for r, cols, vals in self._rows:
            acc = None
            for c, val in zip(cols, vals):
                term = F.arr_scale(v3[:, c, :], val)
                acc = term if acc is None else F.arr_add(acc, term)
            out[:, r, :] = acc
        res = out.reshape(total, m)
        return res[:, 0] if single else res

    def compose_small(self, other):
        """Matrix product self @ other on the two-leg space."""
        check_same_field(self.field, other.field)
        return TwoLegOp(self.field, self.n, self.field.matmul(self.mat, other.mat))

    def scaled(self, s):
        return TwoLegOp(self.field, self.n, self.field.arr_scale(self.mat, s))


class OpChain:
    """A composition of two-leg factors with an optional scalar prefactor.

    ``factors`` are (TwoLegOp, leg) pairs listed in application order (the
    first entry acts first).
    """

    def __init__(self, field, factors, scalar=None):
        self.field = field
        self.factors = list(factors)
        self.scalar = scalar

    def apply(self, vec, k):
        v = vec
        for op, leg in self.factors:
            v = op.apply(v, leg, k)
        if self.scalar is not None:
            v = self.field.arr_scale(v, self.scalar)
        return v


def random_vectors(field, rng, size, count):
    """Batch of uniform random column vectors, shape (size, count)."""
    return field.arr_rand(rng, (size, count))


def vecs_equal(field, a, b):
    d = field.arr_sub(a, b)
    if field.kind == "prime" and d.dtype != object:
        return not d.any()
    return all(field.is_zero(x) for x in d.flat)


def vec_is_zero(field, a):
    if field.kind == "prime" and a.dtype != object:
        return not a.any()
    return all(field.is_zero(x) for x in a.flat)
