"""Exact linear algebra over a scalar backend.

Gaussian elimination (rank / RREF / solve / inverse), characteristic
polynomials via Hessenberg reduction, and the univariate polynomial
utilities needed for block-spectrum extraction (products, perfect-power
roots, and root finding over a prime field).

Row operations are expressed through the backend's vectorized kernels, so
the same code runs on int64 arrays (fast prime path) and object arrays
(rationals, other primes).
"""

from __future__ import annotations

import numpy as np


def rref(F, A):
    """Reduced row echelon form. Returns (R, pivot_columns). A is not modified."""
    R = A.copy()
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = R[r:, c]
        nz = None
        for i in range(m - r):
            if not F.is_zero(col[i]):
                nz = i
                break
        if nz is None:
            continue
        if nz != 0:
            R[[r, r + nz]] = R[[r + nz, r]]
        inv = F.inv(R[r, c])
        R[r] = F.arr_scale(R[r], inv)
        factors = R[:, c].copy()
        factors[r] = F.zero
        rows = [i for i in range(m) if i != r and not F.is_zero(factors[i])]
        if rows:
            upd = F.arr_mul(factors[rows].reshape(-1, 1), R[r].reshape(1, -1))
            R[rows] = F.arr_sub(R[rows], upd)
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, A):
    return len(rref(F, A)[1])


def inverse(F, A):
    m = A.shape[0]
    aug = np.concatenate([A, F.eye(m)], axis=1)
    R, pivots = rref(F, aug)
    if pivots[:m] != list(range(m)):
        raise ZeroDivisionError("matrix not invertible")
    return R[:, m:]


def solve_upper_basis(F, basis_rref, pivots, B):
    """Coordinates of columns of B in the row space basis (RREF rows).

    basis_rref: (k, n) RREF matrix with pivot columns `pivots`;
    B: (n, m) columns known to lie in the row span.  Because the basis is
    reduced, coordinates are just the pivot entries.
    """
    return B[pivots, :]


def nullspace(F, A):
    """Basis (columns) of the right nullspace of A."""
    m, n = A.shape
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = F.zeros((n, len(free)))
    for j, fc in enumerate(free):
        basis[fc, j] = F.one
        for i, pc in enumerate(pivots):
            basis[pc, j] = F.neg(R[i, fc])
    return basis


class SpanTracker:
    """Incrementally track the span of a growing set of vectors (RREF rows)."""

    def __init__(self, F, length):
        self.F = F
        self.length = length
        self.rows = []     # reduced rows
        self.pivots = []   # pivot index per row

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Reduce vec against the current basis; returns the residual."""
        F = self.F
        v = vec.copy()
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if not F.is_zero(c):
                v = F.arr_sub(v, F.arr_scale(row, c))
        return v

    def insert(self, vec):
        """Add vec to the span. Returns True if it enlarged the span."""
        F = self.F
        v = self.reduce(vec)
        piv = None
        for i in range(self.length):
            if not F.is_zero(v[i]):
                piv = i
                break
        if piv is None:
            return False
        v = F.arr_scale(v, F.inv(v[piv]))
        # back-substitute into existing rows to keep the basis reduced
        for i, row in enumerate(self.rows):
            c = row[piv]
            if not F.is_zero(c):
                self.rows[i] = F.arr_sub(row, F.arr_scale(v, c))
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    def coordinates(self, vec):
        """Coordinates of vec in the inserted-vector span; None if outside."""
        F = self.F
        v = vec.copy()
        coords = F.zeros((len(self.rows),))
        for i, (row, piv) in enumerate(zip(self.rows, self.pivots)):
            c = v[piv]
            coords[i] = c
            if not F.is_zero(c):
                v = F.arr_sub(v, F.arr_scale(row, c))
        for i in range(self.length):
            if not F.is_zero(v[i]):
                return None
        return coords


def charpoly(F, A):
    """Characteristic polynomial det(xI - A), ascending coefficient list.

    Hessenberg reduction with pivoting, then the standard recurrence.
    Returns a list c of length m+1 with c[i] the coefficient of x^i and
    c[m] == 1.
    """
    m = A.shape[0]
    H = A.copy()
    for j in range(m - 2):
        piv = None
        for i in range(j + 1, m):
            if not F.is_zero(H[i, j]):
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[[j + 1, piv]] = H[[piv, j + 1]]
            H[:, [j + 1, piv]] = H[:, [piv, j + 1]]
        inv = F.inv(H[j + 1, j])
        col = H[j + 2:, j].copy()
        nz = [i for i in range(len(col)) if not F.is_zero(col[i])]
        if nz:
            factors = F.arr_scale(col, inv)
            rows = [j + 2 + i for i in nz]
            upd = F.arr_mul(factors[nz].reshape(-1, 1), H[j + 1].reshape(1, -1))
            H[rows] = F.arr_sub(H[rows], upd)
            # inverse similarity: column update  H[:, j+1] += H[:, rows] @ factors
            colupd = F.matmul(H[:, rows], factors[nz].reshape(-1, 1))
            H[:, j + 1] = F.arr_add(H[:, j + 1], colupd[:, 0])
    # charpoly of the Hessenberg matrix: p_k = charpoly of the leading k x k
    # block.  Row k of P holds the coefficients of p_k (ascending).
    P = F.zeros((m + 1, m + 1))
    P[0, 0] = F.one
    for k in range(1, m + 1):
        hkk = H[k - 1, k - 1]
        prev = P[k - 1, :k]
        cur = F.zeros((m + 1,))
        cur[1:k + 1] = prev                                   # x * p_{k-1}
        cur[:k] = F.arr_sub(cur[:k], F.arr_scale(prev, hkk))  # - h_kk p_{k-1}
        # subtract sum over i < k of H[i-1,k-1] * (prod of subdiagonals) * p_{i-1}
        beta = F.one
        coeffs = []
        idxs = []
        for i in range(k - 1, 0, -1):
            beta = F.mul(beta, H[i, i - 1])
            if F.is_zero(beta):
                break
            c = F.mul(H[i - 1, k - 1], beta)
            if not F.is_zero(c):
                coeffs.append(c)
                idxs.append(i - 1)
        if coeffs:
            row = F.matmul(F.array(coeffs).reshape(1, -1), P[idxs, :k])
            cur[:k] = F.arr_sub(cur[:k], row[0])
        P[k] = cur
    return list(P[m])


# ---------------------------------------------------------------------------
# polynomial utilities (ascending coefficient lists over the backend)
# ---------------------------------------------------------------------------

def poly_trim(F, f):
    if not f:
        return [F.zero]
    while len(f) > 1 and F.is_zero(f[-1]):
        f = f[:-1]
    return f


def poly_mul(F, f, g):
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            if not F.is_zero(b):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return out


def poly_pow(F, f, e):
    one = F.one
    acc = [one]
    base = list(f)
    while e:
        if e & 1:
            acc = poly_mul(F, acc, base)
        e >>= 1
        if e:
            base = poly_mul(F, base, base)
    return acc


def poly_eval(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_monic_nth_root(F, f, d):
    """Monic g with g**d == f, or None.  deg f must be divisible by d."""
    n = len(f) - 1
    if n % d or not F.eq(f[-1], F.one):
        return None
    m = n // d
    # Work with the reversed series F(t) = f(x)/x^n at x=1/t: F(0)=1.
    rev = list(reversed(f))
    one = F.one
    g = [one]  # series coefficients of F^(1/d), to order m
    dinv = F.inv(F.from_int(d))
    for k in range(1, m + 1):
        # From d*F*H' = F'*H with H = F^(1/d):
        # d*k*H_k = sum_{i=1..k} i*F_i*H_{k-i} - d*sum_{i=1..k-1} i*H_i*F_{k-i}
        s = F.zero
        for i in range(1, k + 1):
            if i < len(rev) and not F.is_zero(rev[i]):
                s = F.add(s, F.mul(F.from_int(i), F.mul(rev[i], g[k - i])))
        for i in range(1, k):
            fi = rev[k - i] if k - i < len(rev) else (F.zero)
            if not F.is_zero(fi) and not F.is_zero(g[i]):
                s = F.sub(s, F.mul(F.from_int(d * i), F.mul(g[i], fi)))
        g.append(F.mul(s, F.mul(dinv, F.inv(F.from_int(k)))))
    root = list(reversed(g))  # monic degree-m candidate
    check = poly_sub(F, poly_pow(F, root, d), f)
    if any(not F.is_zero(c) for c in check):
        return None
    return root


def poly_sub(F, f, g):
    n = max(len(f), len(g))
    zero = F.zero
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else zero
        b = g[i] if i < len(g) else zero
        out.append(F.sub(a, b))
    return out


def poly_divmod(F, f, g):
    f = list(f)
    g = poly_trim(F, list(g))
    zero = F.zero
    if len(g) == 1 and F.is_zero(g[0]):
        raise ZeroDivisionError("poly division by zero")
    inv_lead = F.inv(g[-1])
    q = [zero] * max(1, len(f) - len(g) + 1)
    r = list(f)
    while r and len(r) >= len(g) and any(not F.is_zero(c) for c in r):
        r = poly_trim(F, r)
        if len(r) < len(g):
            break
        c = F.mul(r[-1], inv_lead)
        dshift = len(r) - len(g)
        q[dshift] = c
        for i in range(len(g)):
            r[dshift + i] = F.sub(r[dshift + i], F.mul(c, g[i]))
        r = r[:-1]
    return q, poly_trim(F, r)


def poly_gcd(F, f, g):
    a, b = poly_trim(F, list(f)), poly_trim(F, list(g))
    while not (len(b) == 1 and F.is_zero(b[0])):
        _, r = poly_divmod(F, a, b)
        a, b = b, r
    if not F.is_zero(a[-1]):
        a = [F.mul(c, F.inv(a[-1])) for c in a]
    return a


def poly_mulmod(F, f, g, mod):
    _, r = poly_divmod(F, poly_mul(F, f, g), mod)
    return r


def poly_powmod(F, f, e, mod):
    one = F.one
    acc = [one]
    base = poly_divmod(F, f, mod)[1]
    while e:
        if e & 1:
            acc = poly_mulmod(F, acc, base, mod)
        e >>= 1
        if e:
            base = poly_mulmod(F, base, base, mod)
    return acc


def fp_roots(F, f, rng):
    """All roots in F_p of a squarefree polynomial that splits into linears.

    Cantor-Zassenhaus splitting; returns None if f does not split completely
    (signals a degenerate evaluation point).
    """
    p = F.p
    f = poly_trim(F, [c % p for c in f])
    f = [F.mul(c, F.inv(f[-1])) for c in f]
    # keep only the part splitting over F_p: gcd(x^p - x, f)
    xp = poly_powmod(F, [0, 1], p, f)
    lin = poly_gcd(F, poly_sub(F, xp, [0, 1]), f)
    if len(lin) != len(f):
        return None
    roots = []

    def split(g):
        g = poly_trim(F, g)
        if len(g) == 2:
            roots.append(F.neg(F.mul(g[0], F.inv(g[1]))))
            return
        if len(g) == 1:
            return
        while True:
            b = rng.randrange(p)
            h = poly_powmod(F, [b, 1], (p - 1) // 2, g)
            h = poly_sub(F, h, [1])
            d = poly_gcd(F, h, g)
            if 1 < len(d) < len(g):
                split(d)
                split(poly_divmod(F, g, d)[0])
                return

    split(f)
    return sorted(roots)
