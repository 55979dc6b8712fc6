"""Named catalog of the closed-form expressions used by the verifier.

Entries are stored structurally (no normalization) so each one can be
audited term by term.  The transcription convention is fixed by the
half-unit encoding of brackets.py: a bracket written [a*n + k*x + c] is the
triple (a2, b2, c2) = (2a, k, 2c) — the spectral variable x counts in
half-units of u because the fused operator is a function of u^(1/2).

Two denominators are stored with n/2 in place of x/2 ([n/2+x-1] and
[n/2-x-1]); the source display's quarter-power reading is not representable
in the half-power field extension, and the matching row/column entries pin
the n/2 form (the companion entries a21, c11 carry the same denominators).

Alongside the displayed expressions the catalog carries two machine-derived
entries: `unitarity_scalar_derived` (the scalar R(u)R(1/u) actually equals;
the displayed one is off by the constant Q^2 (q-q^-1)^-4) and `k_unitary`
(the normalizer under which the fused operator is exactly unitary; the
displayed `k_norm` is not, see fusion.py).  `universal.A.a22` is stored in
the form demanded by the u -> 1/u symmetry a22(u) = a11(1/u) that the 3x3
family satisfies; the variant as printed (leading sign differs) is kept
under `universal.A.a22_printed` and reported as a discrepancy.
"""

from __future__ import annotations

from .formulas import (Br, Brc, Mono, Neg, Pow, Quot, Sum, UBr, UBrc,
                       br, brc, const, flip_u, prod, ssum)
from .brackets import BracketTriple


def _ubr(a2, b2, c2, ka=0, kb=0, kg=0):
    return UBr(BracketTriple(a2, b2, c2), ka, kb, kg)


def _ubrc(a2, b2, c2, ka=0, kb=0, kg=0):
    return UBrc(BracketTriple(a2, b2, c2), ka, kb, kg)


Q_MINUS_QINV = Sum((Mono(BracketTriple(0, 0, 2)), Neg(Mono(BracketTriple(0, 0, -2)))))


def _build():
    cat = {}

    # scalars of the base R-matrix identities
    cat["unitarity_scalar"] = prod(
        Mono(BracketTriple(2, 0, 0)), br(1, 1, -2), br(1, -1, -2), br(0, 1, 2), br(0, -1, 2))
    cat["unitarity_scalar_derived"] = prod(
        Mono(BracketTriple(-2, 0, 0)), Pow(Q_MINUS_QINV, 4),
        br(1, 1, -2), br(1, -1, -2), br(0, 1, 2), br(0, -1, 2))
    cat["loop_delta"] = ssum(const(1), br(2, 0, -2))

    # fused normalizers
    k_norm = prod(br(0, 1, 0), br(0, 1, -2), br(1, 1, 0), Pow(br(1, 1, -2), 2))
    cat["k_norm"] = k_norm
    cat["k_unitary"] = prod(
        k_norm, br(0, 1, 2), br(0, 1, 4), br(1, 1, -4),
        Mono(BracketTriple(-4, 0, 0)), Pow(Q_MINUS_QINV, 8))

    # rank-one eigenvalue table (so-form; sp evaluates the same brackets at Q = q^-n)
    cat["table_so.p1111"] = prod(br(0, 1, -2), br(0, 1, -4), br(1, 1, -4))
    cat["table_so.p211"] = Neg(prod(br(0, 1, -2), br(0, 1, 4), br(1, 1, -4)))
    cat["table_so.p22"] = prod(br(0, 1, 2), br(0, 1, 4), br(1, 1, -4))
    cat["table_so.p2"] = prod(br(0, 1, -2), br(0, 1, 4), br(-1, 1, 4))

    # 2x2 multiplicity matrix A (trivial-component block)
    cat["propA.a11"] = ssum(
        Quot(prod(brc(0, 2, 0), brc(1, 0, -2), br(0, 0, 4), br(1, 0, -4), br(2, 1, -4)),
             br(1, 1, -2)),
        prod(br(0, 1, 4), br(0, 1, -2), br(1, 1, -4)))
    cat["propA.a22"] = ssum(
        Quot(prod(brc(0, -2, 0), brc(1, 0, -2), br(0, 0, 4), br(1, 0, -4), br(2, -1, -4)),
             br(1, -1, -2)),
        Neg(prod(br(0, 1, -4), br(0, 1, 2), br(-1, 1, 4))))
    cat["propA.a12"] = Quot(prod(br(0, 2, 0), br(0, 0, 4), Pow(br(1, 0, -4), 2)),
                            br(1, 1, -2))
    cat["propA.a21"] = Quot(prod(br(0, 2, 0), br(1, 0, 0), br(2, 0, -2), brc(1, 0, -4)),
                            prod(Pow(brc(1, 0, -2), 2), br(1, 1, -2)))

    # 3x3 multiplicity matrix entries (adjoint-component block); b12 = b21 is
    # blank in the source and is recovered numerically by spectral analysis
    cat["matB.b11"] = Quot(prod(br(0, 0, 4), br(1, 0, -4), brc(1, 1, -2)), brc(1, 0, -2))
    cat["matB.b13"] = prod(brc(1, 0, 0), brc(1, 0, -6), br(1, 0, -2), br(0, 1, 0))
    cat["matB.b31"] = prod(Pow(br(0, 0, 4), 2), br(0, 1, 0), br(1, 0, -4))
    cat["matP"] = ((1, 0, 1), (1, 0, -1), (0, 1, 0))

    # conjugated 3x3 block (block-triangular form)
    cat["propC.c11"] = ssum(
        prod(br(0, 1, 4), br(0, 1, -2), br(1, 1, -4)),
        prod(const(2), br(0, 0, 4), br(1, 0, -4), Quot(brc(1, 1, -2), brc(1, 0, -2))))
    cat["propC.c22"] = flip_u(cat["propC.c11"])
    cat["propC.c21"] = prod(Pow(br(0, 0, 4), 2), br(0, 1, 0), br(1, 0, -4))
    cat["propC.c12"] = prod(const(2), br(0, 1, 0), br(1, 0, -2), brc(1, 0, 0), brc(1, 0, -6))
    cat["propC.c33"] = Neg(prod(br(0, 1, 4), br(0, 1, -2), br(1, 1, -4)))

    # universal (alpha, beta, gamma) forms
    cat["universal.table.p1111"] = prod(
        _ubr(0, 1, 0, ka=1), _ubr(0, 1, 0, kb=-1), _ubr(0, 1, 0, kg=1))
    cat["universal.table.p211"] = Neg(prod(
        _ubr(0, 1, 0, ka=1), _ubr(0, 1, 0, kb=1), _ubr(0, 1, 0, kg=1)))
    cat["universal.table.p22"] = prod(
        _ubr(0, 1, 0, ka=-1), _ubr(0, 1, 0, kb=-1), _ubr(0, 1, 0, kg=1))
    cat["universal.table.p2"] = prod(
        _ubr(0, 1, 0, ka=1), _ubr(0, 1, 0, kb=-1), _ubr(0, 1, 0, kg=-1))

    cat["universal.A.a11"] = ssum(
        Neg(Quot(prod(brc(0, 2, 0), _ubrc(0, 0, 0, 1, 1, 1),
                      _ubr(0, 0, 0, ka=1), _ubr(0, 0, 0, kb=1), _ubr(0, 0, 0, kg=1),
                      br(2, 1, -4)),
                 br(1, 1, -2))),
        prod(_ubr(0, 1, 0, ka=1), _ubr(0, 1, 0, kb=1), _ubr(0, 1, 0, kg=1)))
    cat["universal.A.a22"] = flip_u(cat["universal.A.a11"])
    cat["universal.A.a22_printed"] = ssum(
        Quot(prod(brc(0, 2, 0), _ubrc(0, 0, 0, 1, 1, 1),
                  _ubr(0, 0, 0, ka=1), _ubr(0, 0, 0, kb=1), _ubr(0, 0, 0, kg=1),
                  br(2, -1, -4)),
             br(1, -1, -2)),
        prod(_ubr(0, -1, 0, ka=1), _ubr(0, -1, 0, kb=1), _ubr(0, -1, 0, kg=1)))

    cat["universal.C.c11"] = ssum(
        prod(_ubr(0, 1, 0, ka=1), _ubr(0, 1, 0, kb=1), _ubr(0, 1, 0, kg=1)),
        Neg(prod(const(2), _ubr(0, 0, 0, ka=1), _ubr(0, 0, 0, kb=1), _ubr(0, 0, 0, kg=1),
                 Quot(_ubrc(0, 1, 0, 1, 1, 1), _ubrc(0, 0, 0, 1, 1, 1)))))
    cat["universal.C.c22"] = flip_u(cat["universal.C.c11"])
    cat["universal.C.c21"] = prod(Pow(br(0, 0, 4), 2), br(0, 1, 0), _ubr(0, 0, -2, 1, 1, 1))
    cat["universal.C.c12"] = prod(
        const(2), br(0, 1, 0), _ubr(0, 0, 0, 1, 1, 1),
        _ubrc(0, 0, 0, 1, 1, 0), _ubrc(0, 0, 0, 1, 0, 1), _ubrc(0, 0, 0, 0, 1, 1))
    cat["universal.C.c33"] = Neg(prod(
        _ubr(0, 1, 0, ka=1), _ubr(0, 1, 0, kb=1), _ubr(0, 1, 0, kg=1)))

    # machine-derived invariants of the 2x2 block (the displayed entries are
    # inconsistent with the computed spectra at every sampled point; the
    # determinant below is exact with constant 1, reconstructed from the
    # computed block and verified on independent samples for two ranks):
    #   det = [x-2][x-1][x+1][x+2][n/2+x-2][n/2-x-2][n/2-x-1] / [n/2+x-1]
    # The trace has the exact shape (k0 {4x} + k1 {2x} + k2) / [n/2+x-1] with
    # u-independent constants; those are derived per run (see compare).
    cat["propA_derived.det"] = Quot(
        prod(br(0, 1, -4), br(0, 1, -2), br(0, 1, 2), br(0, 1, 4),
             br(1, 1, -4), br(1, -1, -4), br(1, -1, -2)),
        br(1, 1, -2))

    return cat


_CATALOG = _build()


class UnknownFormula(KeyError):
    pass


def catalog_get(name: str):
    """Fetch a catalog expression by name."""
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownFormula(name) from None


def catalog_names():
    return sorted(_CATALOG)
