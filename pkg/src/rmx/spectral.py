"""Centralizer-algebra decomposition on the fused square and comparison of
the fused operator's block spectra against the catalogued closed forms.

Pipeline (all exact over the prime backend):

1. span the compressed algebra  E.rho(w).E  over tangle words w by a
   breadth-first closure on probe images (span dimensions are certified by
   random probes over the big field);
2. split the algebra into Wedderburn blocks: central idempotents come from
   factoring the minimal polynomial of a random central element;
3. restrict the fused operator to each block image and extract the
   multiplicity-space characteristic polynomial as a perfect d-th root;
4. compare, after ratio normalization by a single global scalar, against
   the catalogued eigenvalue table and the 2x2/3x3 block matrices,
   arbitrating the displayed variants that disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from math import comb, isqrt
import random

from .fusion import project_fused
from .linalg import (SpanTracker, charpoly, fp_roots, inverse, nullspace,
                     poly_monic_nth_root, rref)
from .tensorops import random_vectors, vecs_equal
from .vectorrep import RepFamily

import numpy as np


def _generators(fam: RepFamily):
    return [(fam.sigma, 1), (fam.sigma, 2), (fam.sigma, 3),
            (fam.u_op, 1), (fam.u_op, 2), (fam.u_op, 3)]


@dataclass
class Block:
    """One Wedderburn block of the compressed algebra."""

    index: int
    mult: int
    dim: int
    z_coords: object          # coordinates of the central idempotent in the word basis
    central_eigenvalue: object

    label: str | None = None  # partition tag, filled by assign_labels


@dataclass
class CentralizerAlgebra:
    fam: RepFamily
    seed: int
    words: list               # basis words (tuples of generator indices)
    dim: int
    probe_coords: object      # compressed basis-word images on the probe block
    struct: object            # struct[i][j] = coords of op_i . op_j
    center_dim: int = 0
    blocks: list = dfield(default_factory=list)
    closure_verified: bool = False
    # fused-space data, filled lazily
    _space: object = None

    @property
    def field(self):
        return self.fam.field


class ConsistencyFailure(RuntimeError):
    """Block data inconsistent (wrong split or degenerate point)."""


# --------------------------------------------------------------------------
# fused-space workspace
# --------------------------------------------------------------------------

class FusedSpace:
    """RREF basis of the fused module W inside V (x) V and the induced
    coordinates on W (x) W inside V^(x)4."""

    def __init__(self, fam: RepFamily):
        F = fam.field
        n = fam.n
        R, pivots = rref(F, fam.e_op.mat.T.copy())
        w = len(pivots)
        self.fam = fam
        self.dim_w = w
        self.rows = R[:w, :]              # (w, n^2) reduced basis of W
        self.pivots = list(pivots)
        n2 = n * n
        # embedded basis of W (x) W: columns b_{ij} = w_i (x) w_j
        cols = self.rows.T                # (n2, w)
        left = cols.reshape(n2, 1, w, 1)
        right = cols.reshape(1, n2, 1, w)
        B = F.arr_mul(np.broadcast_to(left, (n2, n2, w, w)).copy(),
                      np.broadcast_to(right, (n2, n2, w, w)).copy())
        self.basis = B.reshape(n2 * n2, w * w)
        self.pair_pivots = [pi * n2 + pj for pi in self.pivots for pj in self.pivots]
        self.dim = w * w

    def coords(self, vecs):
        """Coordinates of columns lying inside W (x) W (pivot-pair readout)."""
        return vecs[self.pair_pivots, :]

    def embed(self, coords):
        return self.fam.field.matmul(self.basis, coords)


def _space(alg: CentralizerAlgebra) -> FusedSpace:
    if alg._space is None:
        alg._space = FusedSpace(alg.fam)
    return alg._space


# --------------------------------------------------------------------------
# algebra construction
# --------------------------------------------------------------------------

def _apply_word(fam: RepFamily, word, vecs, k=4):
    gens = _generators(fam)
    v = vecs
    for g in word:
        op, leg = gens[g]
        v = op.apply(v, leg, k)
    return v


def _compress(fam: RepFamily, vecs, k=4):
    return project_fused(fam, vecs, (1, 3), k)


MAX_WORD_LENGTH = 8


def build_centralizer(fam: RepFamily, seed: int = 0, probes: int = 6,
                      verify: bool = True) -> CentralizerAlgebra:
    """Span of compressed tangle words on the fused square.

    Grows word length until the plain (uncompressed) word span closes, which
    certifies closure of the compressed span as well; the compressed span
    dimension is additionally required to be stable for two consecutive
    lengths.  Raises ConsistencyFailure if the span does not stabilize
    within the length budget.
    """
    F = fam.field
    if F.kind != "prime":
        raise ValueError("centralizer analysis requires the prime backend")
    n = fam.n
    rng = random.Random(seed)
    P = _compress(fam, random_vectors(F, rng, n ** 4, probes))
    P_raw = random_vectors(F, rng, n ** 4, 2)

    comp_tracker = SpanTracker(F, P.size)
    raw_tracker = SpanTracker(F, P_raw.size)

    words = []
    coords_list = []

    def offer(word, img_raw_probe, img_main):
        """Record the word's compressed image; returns True if the plain word
        operator extended the uncompressed span (then extensions matter)."""
        comp = _compress(fam, img_main)
        if comp_tracker.insert(comp.reshape(-1).copy()):
            words.append(word)
            coords_list.append(comp)
        return raw_tracker.insert(img_raw_probe.reshape(-1).copy())

    offer((), P_raw, P.copy())
    frontier = [((), P_raw, P.copy())]
    gens = _generators(fam)
    length = 0
    while frontier and length < MAX_WORD_LENGTH:
        length += 1
        new_frontier = []
        for word, raw, main in frontier:
            for gi in range(len(gens)):
                op, leg = gens[gi]
                nw = word + (gi,)
                raw2 = op.apply(raw, leg, 4)
                main2 = op.apply(main, leg, 4)
                if offer(nw, raw2, main2):
                    new_frontier.append((nw, raw2, main2))
        frontier = new_frontier
    if frontier:
        raise ConsistencyFailure(
            f"word span did not close within length {MAX_WORD_LENGTH} (dim so far {comp_tracker.dim})")

    dim = comp_tracker.dim
    # probe-coordinate matrix of the basis ops and its solve data
    M = np.stack([c.reshape(-1) for c in coords_list], axis=1)  # (P.size, dim)
    sel = _pivot_rows(F, M, dim)
    Minv = inverse(F, M[sel, :])

    def solve_coords(img_compressed):
        vec = img_compressed.reshape(-1)
        coords = F.matmul(Minv, vec[sel].reshape(-1, 1))[:, 0]
        if verify:
            recon = F.matmul(M, coords.reshape(-1, 1))[:, 0]
            if not vecs_equal(F, recon, vec):
                raise ConsistencyFailure("product escapes the algebra span")
        return coords

    # structure constants via probe images
    struct = [[None] * dim for _ in range(dim)]
    for j in range(dim):
        img_j = coords_list[j]
        for i in range(dim):
            prod = _compress(fam, _apply_word(fam, words[i], img_j))
            struct[i][j] = solve_coords(prod)

    alg = CentralizerAlgebra(fam=fam, seed=seed, words=words, dim=dim,
                             probe_coords=coords_list, struct=struct,
                             closure_verified=verify)
    return alg


def _pivot_rows(F, M, dim):
    """Row indices making M[rows, :] invertible (from RREF of M^T)."""
    _, piv = rref(F, M.T.copy())
    if len(piv) != dim:
        raise ConsistencyFailure("basis probe matrix is rank deficient")
    return list(piv)


def _left_mult_matrix(alg: CentralizerAlgebra, coords):
    """17x17 matrix of left multiplication by the element with given coords."""
    F = alg.field
    dim = alg.dim
    L = F.zeros((dim, dim))
    for i in range(dim):
        ci = coords[i]
        if F.is_zero(ci):
            continue
        for j in range(dim):
            L[:, j] = F.arr_add(L[:, j], F.arr_scale(alg.struct[i][j], ci))
    return L


# --------------------------------------------------------------------------
# Wedderburn split
# --------------------------------------------------------------------------

MAX_SPLIT_RETRIES = 12


def wedderburn_split(alg: CentralizerAlgebra, seed: int = 0) -> CentralizerAlgebra:
    """Find the central idempotents and per-block (mult, dim) data."""
    F = alg.field
    dim = alg.dim
    # center: x with x.a = a.x for all basis a
    rows = []
    for i in range(dim):
        for j in range(dim):
            # coefficient rows of (e_k -> struct[k][i][j] - struct[i][k][j])
            row = [F.sub(alg.struct[k][i][j], alg.struct[i][k][j]) for k in range(dim)]
            rows.append(row)
    center = nullspace(F, F.array(rows))
    alg.center_dim = center.shape[1]

    id_coords = F.zeros((dim,))
    id_coords[0] = 1  # empty word is the first basis element

    rng = random.Random(seed)
    for _ in range(MAX_SPLIT_RETRIES):
        mix = F.array([F.rand(rng) for _ in range(center.shape[1])]).reshape(-1, 1)
        zeta = F.matmul(center, mix)[:, 0]
        L = _left_mult_matrix(alg, zeta)
        # minimal polynomial of zeta: first dependence among Krylov iterates
        krylov = SpanTracker(F, dim)
        seq = [id_coords.copy()]
        while krylov.insert(seq[-1].copy()):
            seq.append(F.matmul(L, seq[-1].reshape(-1, 1))[:, 0])
        deg = krylov.dim
        mu = _krylov_minpoly(F, krylov, seq, deg)
        if mu is None:
            continue
        roots = fp_roots(F, mu, rng)
        if roots is None or len(roots) != deg or len(set(roots)) != deg:
            continue
        if deg != center.shape[1]:
            continue  # random central element failed to separate the blocks
        blocks = []
        ok = True
        for bi, r in enumerate(roots):
            # Lagrange idempotent at eigenvalue r
            zc = id_coords.copy()
            for r2 in roots:
                if r2 == r:
                    continue
                shifted = F.arr_sub(F.matmul(L, zc.reshape(-1, 1))[:, 0],
                                    F.arr_scale(zc, r2))
                zc = F.arr_scale(shifted, F.inv(F.sub(r, r2)))
            Lz = _left_mult_matrix(alg, zc)
            # idempotency in the algebra: Lz . z == z
            z2 = F.matmul(Lz, zc.reshape(-1, 1))[:, 0]
            if not vecs_equal(F, z2, zc):
                ok = False
                break
            m2 = len(rref(F, Lz)[1])
            m = isqrt(m2)
            if m * m != m2:
                ok = False
                break
            blocks.append(Block(index=bi, mult=m, dim=0, z_coords=zc, central_eigenvalue=r))
        if not ok:
            continue
        # orthogonality and completeness
        total = F.zeros((dim,))
        for b in blocks:
            total = F.arr_add(total, b.z_coords)
        if not vecs_equal(F, total, id_coords):
            continue
        if sum(b.mult ** 2 for b in blocks) != dim:
            continue
        alg.blocks = blocks
        return alg
    raise ConsistencyFailure("could not split the centre after bounded retries")


def _krylov_minpoly(F, krylov, seq, deg):
    """Minimal polynomial from the first linear dependence of the iterates."""
    M = np.stack(seq[:deg], axis=1)
    try:
        sel = _pivot_rows(F, M, deg)
    except ConsistencyFailure:
        return None
    x = F.matmul(inverse(F, M[sel, :]), seq[deg][sel].reshape(-1, 1))[:, 0]
    recon = F.matmul(M, x.reshape(-1, 1))[:, 0]
    if not vecs_equal(F, recon, seq[deg]):
        return None
    # zeta^deg = sum x_t zeta^t, so minpoly = x^deg - sum x_t x^t
    return [F.neg(x[t]) for t in range(deg)] + [F.one]


# --------------------------------------------------------------------------
# block spectra
# --------------------------------------------------------------------------

@dataclass
class BlockSpectrum:
    block: Block
    charpoly: list          # ascending coefficients, degree = mult
    restricted_degree: int
    label: str | None = None
    table_row: str | None = None


def compress_operator(alg: CentralizerAlgebra, chain) -> object:
    """Matrix of a fused-square-preserving operator in the W(x)W basis."""
    chain = getattr(chain, "chain", chain)
    sp = _space(alg)
    img = chain.apply(sp.basis, 4)
    return sp.coords(img)


def block_idempotent_matrices(alg: CentralizerAlgebra) -> dict:
    """Matrices of the central idempotents on W(x)W.

    One pass over the basis words: each word's compressed matrix is formed
    once and folded into every idempotent with its coordinate."""
    F = alg.field
    sp = _space(alg)
    zmats = {b.index: F.zeros((sp.dim, sp.dim)) for b in alg.blocks}
    for i in range(alg.dim):
        if all(F.is_zero(b.z_coords[i]) for b in alg.blocks):
            continue
        img = _compress(alg.fam, _apply_word(alg.fam, alg.words[i], sp.basis))
        Ci = sp.coords(img)
        for b in alg.blocks:
            ci = b.z_coords[i]
            if not F.is_zero(ci):
                zmats[b.index] = F.arr_add(zmats[b.index], F.arr_scale(Ci, ci))
    return zmats


def fill_block_dims(alg: CentralizerAlgebra, zmats: dict) -> None:
    """dim = rank(z)/mult with rank read off the idempotent trace."""
    F = alg.field
    for b in alg.blocks:
        Z = zmats[b.index]
        tr = 0
        for i in range(Z.shape[0]):
            tr = F.add(tr, Z[i, i])
        tr = int(tr)
        if tr % b.mult:
            raise ConsistencyFailure("idempotent trace not divisible by multiplicity")
        b.dim = tr // b.mult


def block_image_basis(alg: CentralizerAlgebra, block: Block, zmat, seed: int = 0):
    """Reduced basis (columns) of the block image on W(x)W, with pivot rows.

    The image of the central idempotent has dimension mult*dim; random
    vectors are pushed through the idempotent and row-reduced."""
    F = alg.field
    sp = _space(alg)
    rng = random.Random(seed + 101 * block.index)
    dm = block.mult * block.dim
    imgs = F.matmul(zmat, random_vectors(F, rng, sp.dim, dm + 6))
    R, piv = rref(F, imgs.T.copy())
    if len(piv) != dm:
        raise ConsistencyFailure(
            f"block image rank {len(piv)} != mult*dim {dm} (block {block.index})")
    return R[:dm].T.copy(), list(piv)


def restrict_chain(alg: CentralizerAlgebra, chain, basis, piv):
    """Matrix of a fused-square operator on the span of `basis` columns.

    Exactness is enforced: the image must lie in the span (pivot readout of
    a reduced basis), otherwise ConsistencyFailure."""
    F = alg.field
    sp = _space(alg)
    embedded = F.matmul(sp.basis, basis)
    img = sp.coords(chain.apply(embedded, 4))
    M_res = img[piv, :]
    recon = F.matmul(basis, M_res)
    if not vecs_equal(F, recon, img):
        raise ConsistencyFailure("fused operator leaks outside a block image")
    return M_res


def block_charpoly(alg: CentralizerAlgebra, chain, block: Block, zmat,
                   seed: int = 0, basis_piv=None) -> BlockSpectrum:
    """Characteristic polynomial of the fused operator on the block's
    multiplicity space, extracted as the d-th root of the restricted
    characteristic polynomial."""
    F = alg.field
    chain = getattr(chain, "chain", chain)  # accept FusedOperator directly
    if basis_piv is None:
        basis, piv = block_image_basis(alg, block, zmat, seed)
    else:
        basis, piv = basis_piv
    M_res = restrict_chain(alg, chain, basis, piv)
    cp = charpoly(F, M_res)
    root = poly_monic_nth_root(F, cp, block.dim)
    if root is None:
        raise ConsistencyFailure(
            f"restricted charpoly is not a perfect {block.dim}-th power (block {block.index})")
    return BlockSpectrum(block=block, charpoly=root, restricted_degree=len(piv))


def block_charpoly_fast(alg: CentralizerAlgebra, chain, block: Block, zmat,
                        seed: int = 0, witnesses: int = 2) -> BlockSpectrum:
    """Multiplicity-space characteristic polynomial via a Krylov orbit.

    On the block image the operator acts as (identity (x) A) with A of size
    mult; the orbit of a random image vector satisfies exactly the linear
    recurrence of A's characteristic polynomial (cyclic for generic draws).
    The polynomial is recomputed from independent draws and must agree."""
    F = alg.field
    chain = getattr(chain, "chain", chain)
    sp = _space(alg)
    m = block.mult
    rng = random.Random(seed + 31 * block.index)
    polys = []
    attempts = 0
    while len(polys) < witnesses and attempts < 8 * witnesses:
        attempts += 1
        w = F.matmul(zmat, random_vectors(F, rng, sp.dim, 1))[:, 0]
        seq = [w]
        for _ in range(m):
            emb = F.matmul(sp.basis, seq[-1].reshape(-1, 1))
            seq.append(sp.coords(chain.apply(emb, 4))[:, 0])
        M = np.stack(seq[:m], axis=1)
        try:
            sel = _pivot_rows(F, M, m)
        except ConsistencyFailure:
            continue  # non-cyclic draw
        x = F.matmul(inverse(F, M[sel, :]), seq[m][sel].reshape(-1, 1))[:, 0]
        if not vecs_equal(F, F.matmul(M, x.reshape(-1, 1))[:, 0], seq[m]):
            raise ConsistencyFailure("orbit leaves the multiplicity recurrence")
        polys.append([F.neg(x[t]) for t in range(m)] + [F.one])
    if len(polys) < witnesses:
        raise ConsistencyFailure("could not draw cyclic vectors for a block")
    first = polys[0]
    for other in polys[1:]:
        if any(not F.eq(a, b) for a, b in zip(first, other)):
            raise ConsistencyFailure("multiplicity charpoly differs between draws")
    return BlockSpectrum(block=block, charpoly=first, restricted_degree=m)


# --------------------------------------------------------------------------
# weight bookkeeping for labels
# --------------------------------------------------------------------------

def block_dimension_table(series: str, n: int) -> dict:
    """Classical dimensions of the six constituents of the fused square,
    keyed by partition label (series-specific notation row)."""
    if series == "so":
        g = n * (n - 1) // 2
        d11 = n * (n + 1) // 2 - 1
        d4 = comb(n, 4)
    else:
        g = n * (n + 1) // 2
        d11 = n * (n - 1) // 2 - 1
        d4 = comb(n + 3, 4)
    d31 = g * (g - 1) // 2 - g
    d22 = g * (g + 1) // 2 - 1 - d11 - d4
    return {"0": 1, "2": g, "1,1": d11, "4": d4, "3,1": d31, "2,2": d22}


def assign_labels(alg: CentralizerAlgebra) -> dict:
    """Partition labels for the blocks from (mult, dim) bookkeeping."""
    table = block_dimension_table(alg.fam.series, alg.fam.n)
    out = {}
    for b in alg.blocks:
        if b.mult == 2:
            b.label = "0"
        elif b.mult == 3:
            b.label = "2"
        else:
            matches = [k for k, v in table.items() if v == b.dim and k not in ("0", "2")]
            b.label = matches[0] if len(matches) == 1 else None
        out[b.index] = b.label
    return out
