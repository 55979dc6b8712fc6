"""Comparison of computed block spectra against the catalogued closed forms,
with machine arbitration of the displays that disagree.

All spectral comparisons are ratio-normalized: computed eigen-data and
catalogued formulas are matched up to one global scalar g (fixed by the
block whose eigenvalue matches the `table_so.p22` row), because the
catalogued eigenvalues and the unitary normalization of the fused operator
are not reconciled by any displayed convention.  The inferred g is reported.
"""

from __future__ import annotations

import itertools

from .brackets import BracketTriple, bracket_eval, brace_eval
from .catalog import catalog_get
from .formulas import eval_formula
from .linalg import inverse, poly_eval
from .report import DERIVED, DISCREPANCY, FAIL, PASS, check

TABLE_ROWS = ("p1111", "p211", "p22", "p2")


def _fmt(F, v):
    return str(v)


def table_match(alg, charpolys, pu):
    """Match the four multiplicity-one eigenvalues to the table rows by value,
    under a single scalar g. Returns (records, g, assignment)."""
    F = alg.field
    svals = {}
    for b in alg.blocks:
        if b.mult == 1:
            svals[b.index] = F.neg(charpolys[b.index].charpoly[0])
    rows = {r: eval_formula(catalog_get(f"table_so.{r}"), pu) for r in TABLE_ROWS}
    idxs = list(svals)
    consistent = []
    for perm in itertools.permutations(TABLE_ROWS):
        assign = dict(zip(idxs, perm))
        try:
            g = F.div(svals[idxs[0]], rows[assign[idxs[0]]])
        except ZeroDivisionError:
            continue
        if all(F.eq(svals[i], F.mul(g, rows[assign[i]])) for i in idxs):
            consistent.append((assign, g))
    records = []
    if len(consistent) != 1:
        records.append(check("table:rank-one-eigenvalues", "S3:table", FAIL,
                             witness={"consistent_assignments": len(consistent)}))
        return records, None, None
    assign, g = consistent[0]
    labels = {b.index: b.label for b in alg.blocks}
    assignment = {labels[i]: assign[i] for i in idxs}
    records.append(check("table:rank-one-eigenvalues", "S3:table", PASS,
                         method="ratio-normalized",
                         witness={"block_to_row": assignment,
                                  "note": "table rows carry the conjugate partition labels"}))
    records.append(check("table:inferred-global-scalar", "S3:table", DERIVED,
                         witness={"g": _fmt(F, g),
                                  "note": "computed eigenvalue / displayed p22 value"}))
    return records, g, assignment


def prop2_match(alg, charpolys, pu, g):
    """Compare the multiplicity-3 charpoly with the block-triangular 3x3 display.

    The diagonal data (decoupled eigenvalue and 2x2 trace) match as printed;
    the off-diagonal product requires the machine-derived correction
    1/{n/2-1}^2, recorded as a discrepancy with the derived factor.  The
    blank matrix entry of the symmetric display is recovered from the same
    data and reported."""
    F = alg.field
    b3 = next(b for b in alg.blocks if b.mult == 3)
    cp = charpolys[b3.index].charpoly  # ascending, degree 3
    c11 = eval_formula(catalog_get("propC.c11"), pu)
    c22 = eval_formula(catalog_get("propC.c22"), pu)
    c12 = eval_formula(catalog_get("propC.c12"), pu)
    c21 = eval_formula(catalog_get("propC.c21"), pu)
    c33 = eval_formula(catalog_get("propC.c33"), pu)
    records = []
    # the decoupled diagonal entry is an eigenvalue of the computed block
    root_ok = F.is_zero(poly_eval(F, cp, F.mul(g, c33)))
    records.append(check("prop2:decoupled-eigenvalue", "S3:matrixC", PASS if root_ok else FAIL,
                         method="charpoly-root"))
    s2 = F.neg(F.div(cp[2], g))
    trace_ok = F.eq(s2, F.add(c33, F.add(c11, c22)))
    records.append(check("prop2:trace", "S3:matrixC", PASS if trace_ok else FAIL,
                         method="ratio-normalized"))
    if not (root_ok and trace_ok):
        return records, None
    # solve the pair product c11*c22 - c12*c21 demanded by the computed cubic
    s1 = F.div(cp[1], F.mul(g, g))
    s0 = F.neg(F.div(cp[0], F.mul(F.mul(g, g), g)))
    pair_needed = F.sub(s1, F.mul(c33, F.add(c11, c22)))
    det_ok = F.eq(s0, F.mul(c33, pair_needed))
    records.append(check("prop2:determinant-consistency", "S3:matrixC",
                         PASS if det_ok else FAIL, method="ratio-normalized"))
    prod_needed = F.sub(F.mul(c11, c22), pair_needed)
    prod_displayed = F.mul(c12, c21)
    if F.eq(prod_needed, prod_displayed):
        records.append(check("prop2:offdiagonal-product", "S3:matrixC", PASS,
                             method="ratio-normalized"))
    else:
        ratio = F.div(prod_needed, prod_displayed)
        brace = brace_eval(BracketTriple(1, 0, -2), pu)  # {n/2-1}
        known = F.eq(ratio, F.inv(F.mul(brace, brace)))
        records.append(check(
            "prop2:offdiagonal-product", "S3:matrixC", DISCREPANCY,
            method="ratio-normalized",
            witness={"computed_over_displayed": "1/{n/2-1}^2" if known else _fmt(F, ratio),
                     "note": "displayed c12*c21 exceeds the machine value; "
                             "the corrected product restores the full charpoly"}))
    # blank-entry recovery: with the symmetric-display correspondence
    # c11 = b11+b12 and c33 = b11-b12, the blank entry is (c11-c33)/2
    half = F.inv(F.from_int(2))
    b12 = F.mul(half, F.sub(c11, c33))
    b11 = eval_formula(catalog_get("matB.b11"), pu)
    consistent = F.eq(F.mul(half, F.add(c11, c33)), b11)
    records.append(check(
        "prop2:blank-entry-derived", "S3:matrixB-blank", DERIVED,
        witness={
            "b12_value": _fmt(F, b12),
            "b12_times_b21": _fmt(F, F.mul(b12, b12)),
            "b12_closed_form": "[x+2][x-1][x+n/2-2] + [2][n/2-2]{x+n/2-1}/{n/2-1}",
            "b11_consistency": bool(consistent),
            "computed_cubic": [_fmt(F, c) for c in cp],
        }))
    return records, prod_needed


def compare_to_paper(alg, charpolys, pu, which=("table", "prop1", "prop2")):
    """All per-point comparisons at one spectral value.

    charpolys: block index -> BlockSpectrum.  Matching is ratio-normalized by
    the scalar fixed on the table rows; every record carries the arbitration
    outcome (PASS / DISCREPANCY with the derived correction / DERIVED ground
    truth)."""
    records, g, assignment = table_match(alg, charpolys, pu)
    if "table" not in which:
        records = []
    if g is None:
        return records, None
    if "prop1" in which:
        records += prop1_match(alg, charpolys, pu, g)
    if "prop2" in which:
        records += prop2_match(alg, charpolys, pu, g)[0]
    return records, g


DERIVED_TRACE_NOTE = ("trace = (k0 {4x} + k1 {2x} + k2)/[n/2+x-1] with u-independent "
                      "constants; determinant = "
                      "[x-2][x-1][x+1][x+2][n/2+x-2][n/2-x-2][n/2-x-1]/[n/2+x-1]")


def prop1_match(alg, charpolys, pu, g):
    """Compare the multiplicity-2 charpoly with the 2x2 display and with the
    machine-derived invariants.

    The displayed entries are inconsistent with the computed block at every
    sampled point (no scalar renormalization can repair them: the normalized
    trace is odd under u^(1/2) -> -u^(1/2) while the display is parity-mixed),
    so the displayed form is recorded as a discrepancy and the derived
    determinant/trace shape is the exact comparison target."""
    F = alg.field
    b2 = next(b for b in alg.blocks if b.mult == 2)
    cp = charpolys[b2.index].charpoly
    records = []
    t_comp = F.neg(F.div(cp[1], g))
    d_comp = F.div(cp[0], F.mul(g, g))

    def ad(name):
        return eval_formula(catalog_get(name), pu)

    det_ok = F.eq(d_comp, ad("propA_derived.det"))
    records.append(check("prop1:determinant-derived", "S3:matrixA",
                         PASS if det_ok else FAIL, method="ratio-normalized"))
    a11, a22, a12, a21 = ad("propA.a11"), ad("propA.a22"), ad("propA.a12"), ad("propA.a21")
    tr_disp = F.eq(t_comp, F.add(a11, a22))
    det_disp = F.eq(d_comp, F.sub(F.mul(a11, a22), F.mul(a12, a21)))
    if tr_disp and det_disp:
        records.append(check("prop1:charpoly-displayed-form", "S3:matrixA", PASS,
                             method="ratio-normalized"))
    else:
        records.append(check("prop1:charpoly-displayed-form", "S3:matrixA", DISCREPANCY,
                             method="ratio-normalized",
                             witness={"trace_matches": bool(tr_disp),
                                      "determinant_matches": bool(det_disp),
                                      "note": "displayed entries are overruled by the "
                                              "computed block; " + DERIVED_TRACE_NOTE}))
    return records


def prop1_trace_shape(alg, samples):
    """Fit and verify the derived trace shape over several spectral values.

    samples: list of (pu, g, quadratic charpoly).  Solves the three constants
    from the first three samples and verifies every remaining one exactly.
    Returns a DERIVED record (or FAIL if the shape does not hold)."""
    F = alg.field
    triples = []
    for pu, g, cp in samples:
        t_comp = F.neg(F.div(cp[1], g))
        den = bracket_eval(BracketTriple(1, 1, -2), pu)
        y4 = brace_eval(BracketTriple(0, 4, 0), pu)
        y2 = brace_eval(BracketTriple(0, 2, 0), pu)
        triples.append((y4, y2, F.mul(t_comp, den)))
    if len(triples) < 4:
        return check("prop1:trace-derived-shape", "S3:matrixA", FAIL,
                     witness="need at least four spectral samples")
    M = [[a, b, F.one] for a, b, _ in triples[:3]]
    rhs = [[t] for _, _, t in triples[:3]]
    try:
        sol = F.matmul(inverse(F, F.array(M)), F.array(rhs))[:, 0]
    except ZeroDivisionError:
        return check("prop1:trace-derived-shape", "S3:matrixA", FAIL,
                     witness="degenerate sample triple")
    k0, k1, k2 = sol
    ok = all(F.eq(F.add(F.add(F.mul(k0, a), F.mul(k1, b)), k2), t)
             for a, b, t in triples[3:])
    return check("prop1:trace-derived-shape", "S3:matrixA",
                 DERIVED if ok else FAIL, method=f"fit3-verify{len(triples) - 3}",
                 witness={"k0": str(k0), "k1": str(k1), "k2": str(k2),
                          "shape": DERIVED_TRACE_NOTE})
