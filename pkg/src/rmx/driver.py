"""End-to-end spectral analysis: decomposition, block spectra, comparisons."""

from __future__ import annotations

import random

from .catalog import catalog_get
from .compare import prop1_match, prop1_trace_shape, prop2_match, table_match
from .field import DegeneratePoint
from .formulas import (DISCREPANCY as ID_DISCREPANCY, PASS as ID_PASS,
                       eval_formula, flip_u, identity_test, universal_params_for)
from .fusion import fused_s
from .linalg import poly_mul, poly_pow, poly_trim
from .points import AdmissibleExhausted, sample_spectral_value
from .report import DERIVED, DISCREPANCY, FAIL, PASS, check
from . import spectral


def _table_scalar(alg, fam, zmats, pu, chain):
    """The inferred global scalar at a supplementary spectral value."""
    F = alg.field
    b22 = next((b for b in alg.blocks if b.label == "2,2"), None)
    if b22 is None:
        return None
    try:
        cp = spectral.block_charpoly_fast(alg, chain, b22, zmats[b22.index], seed=0)
    except spectral.ConsistencyFailure:
        return None
    f = eval_formula(catalog_get("table_so.p22"), pu)
    if F.is_zero(f):
        return None
    return F.div(F.neg(cp.charpoly[0]), f)


def structural_records(alg) -> list:
    mults = sorted(b.mult for b in alg.blocks)
    dims_ok = sum(b.mult * b.dim for b in alg.blocks) == spectral._space(alg).dim
    recs = [
        check("centralizer:dimension", "S3:A4-on-fused-square",
              PASS if alg.dim == 17 else FAIL,
              witness={"dim": alg.dim, "closure_verified": alg.closure_verified}),
        check("centralizer:multiplicities", "S3:A4-on-fused-square",
              PASS if mults == [1, 1, 1, 1, 2, 3] else FAIL,
              witness={"multiplicities": mults, "center_dim": alg.center_dim}),
        check("centralizer:dimension-bookkeeping", "S3:A4-on-fused-square",
              PASS if dims_ok else FAIL,
              witness={"blocks": sorted((b.mult, b.dim, b.label) for b in alg.blocks)}),
    ]
    return recs


def perfect_power_records(alg, chain, zmats, seed, full_product: bool = False) -> list:
    """Full restricted charpolys: each must be a perfect dim-th power, and
    their product must multiply out to the charpoly of the whole operator
    (the product identity itself is checked when full_product is set; it
    requires one dense charpoly on the fused square)."""
    recs = []
    F = alg.field
    full = [F.one]
    ok_all = True
    for b in sorted(alg.blocks, key=lambda b: b.mult * b.dim):
        try:
            bs = spectral.block_charpoly(alg, chain, b, zmats[b.index],
                                         seed=seed)
            recs.append(check(f"blocks:perfect-power[m={b.mult},d={b.dim}]",
                              "S3:multiplicity-spaces", PASS,
                              method="restricted-charpoly",
                              witness={"restricted_degree": bs.restricted_degree}))
            full = poly_mul(F, full, poly_pow(F, bs.charpoly, b.dim))
        except spectral.ConsistencyFailure as e:
            ok_all = False
            recs.append(check(f"blocks:perfect-power[m={b.mult},d={b.dim}]",
                              "S3:multiplicity-spaces", FAIL, witness=str(e)))
    recs.append(check("blocks:charpoly-degree-bookkeeping", "S3:multiplicity-spaces",
                      PASS if len(poly_trim(F, full)) - 1 == spectral._space(alg).dim else FAIL,
                      method="polynomial-product"))
    if full_product and ok_all:
        from .linalg import charpoly as dense_charpoly
        Smat = spectral.compress_operator(alg, chain)
        whole = dense_charpoly(F, Smat)
        same = len(whole) == len(full) and all(F.eq(a, b) for a, b in zip(whole, full))
        recs.append(check("blocks:charpoly-product-identity", "S3:multiplicity-spaces",
                          PASS if same else FAIL, method="dense-charpoly"))
    return recs


def universal_records(series: str, n: int, seed: int = 0, trials: int = 8) -> list:
    """Formula-level comparison of the parametrized family against the
    series-specific displays (so only)."""
    recs = []
    if series != "so":
        recs.append(check("universal:parameter-map", "S5:universal-forms", DERIVED,
                          witness="no parameter map is available for the sp series"))
        return recs
    params = universal_params_for(series, n)

    def idt(uni, ref, expect_note=None):
        v = identity_test(catalog_get(uni), catalog_get(ref), series, n,
                          trials=trials, seed=seed, params=params)
        if v.status == ID_PASS:
            recs.append(check(f"universal:{uni}=={ref}", "S5:specialization", PASS,
                              method=f"identity-test:{trials}"))
        elif v.status == ID_DISCREPANCY:
            recs.append(check(f"universal:{uni}=={ref}", "S5:specialization", DISCREPANCY,
                              method=f"identity-test:{trials}", witness=v.detail))
        else:
            recs.append(check(f"universal:{uni}=={ref}", "S5:specialization",
                              DISCREPANCY if expect_note else FAIL,
                              method=f"identity-test:{trials}",
                              witness={**v.detail, **({"note": expect_note} if expect_note else {})}))

    idt("universal.table.p1111", "table_so.p1111")
    idt("universal.table.p211", "table_so.p211")
    idt("universal.table.p22", "table_so.p22",
        expect_note="middle factor differs ([x-2] vs displayed [x+2]); "
                    "the computed spectrum matches the series display")
    idt("universal.table.p2", "table_so.p2",
        expect_note="middle factor differs ([x-2] vs displayed [x+2]); "
                    "the computed spectrum matches the series display")
    idt("universal.A.a11", "propA.a11")
    idt("universal.A.a22", "propA.a22")
    idt("universal.A.a22_printed", "propA.a22",
        expect_note="printed universal a22 deviates from the u->1/u symmetric form "
                    "by the sign of its leading term")
    idt("universal.C.c11", "propC.c11")
    idt("universal.C.c22", "propC.c22")
    idt("universal.C.c21", "propC.c21")
    idt("universal.C.c12", "propC.c12")  # expected DISCREPANCY: extra [2]
    idt("universal.C.c33", "propC.c33")
    # u -> 1/u symmetry of the conjugated block
    v = identity_test(catalog_get("propC.c11"), flip_u(catalog_get("propC.c22")),
                      series, n, trials=trials, seed=seed)
    recs.append(check("prop2:c11(u)==c22(1/u)", "S3:matrixC-symmetry",
                      PASS if v.status == ID_PASS else FAIL,
                      method=f"identity-test:{trials}"))
    return recs


def build_split_algebra(fam, seed: int = 0):
    """Convenience: centralizer + Wedderburn split + idempotent matrices."""
    alg = spectral.build_centralizer(fam, seed=seed)
    alg = spectral.wedderburn_split(alg, seed=seed)
    zmats = spectral.block_idempotent_matrices(alg)
    spectral.fill_block_dims(alg, zmats)
    spectral.assign_labels(alg)
    return alg, zmats


def spectrum_analysis(fam, seed: int = 0, u_points: int = 3,
                      compare=("table", "prop1", "prop2", "universal"),
                      deep: bool = False, prebuilt=None):
    """Run the full decomposition and comparison at sampled spectral values.

    Returns (checks, extra) for the report."""
    F = fam.field
    checks = []
    alg, zmats = prebuilt if prebuilt is not None else build_split_algebra(fam, seed)
    checks.extend(structural_records(alg))

    rng = random.Random(seed + 555)
    done = 0
    attempts = 0
    b2 = next(b for b in alg.blocks if b.mult == 2)
    trace_samples = []
    # one extra spectral value beyond the requested points so the derived
    # three-constant trace shape is verified, not merely fitted
    want = u_points + 1
    while done < want and attempts < 4 * want + 8:
        attempts += 1
        try:
            uh = sample_spectral_value(fam.point, rng)
            pu = fam.point.with_uh(uh)
            chain = fused_s(fam, pu.u, "unitary").chain
            if done >= u_points:
                cp2 = spectral.block_charpoly_fast(alg, chain, b2, zmats[b2.index],
                                                   seed=seed + done)
                cps = {b2.index: cp2}
            else:
                cps = {b.index: spectral.block_charpoly_fast(alg, chain, b, zmats[b.index],
                                                             seed=seed + done)
                       for b in alg.blocks}
        except (DegeneratePoint, spectral.ConsistencyFailure, AdmissibleExhausted):
            continue
        if done >= u_points:
            # supplementary sample for the trace-shape verification only
            g_extra = _table_scalar(alg, fam, zmats, pu, chain)
            if g_extra is not None:
                trace_samples.append((pu, g_extra, cps[b2.index].charpoly))
            done += 1
            continue
        recs, g, assignment = table_match(alg, cps, pu)
        if "table" in compare:
            for r in recs:
                r["spectral_sample"] = done
            checks.extend(recs)
        if g is None:
            done += 1
            continue
        trace_samples.append((pu, g, cps[b2.index].charpoly))
        if "prop1" in compare:
            recs = prop1_match(alg, cps, pu, g)
            for r in recs:
                r["spectral_sample"] = done
            checks.extend(recs)
        if "prop2" in compare:
            recs, _ = prop2_match(alg, cps, pu, g)
            for r in recs:
                r["spectral_sample"] = done
            checks.extend(recs)
        if deep and done == 0:
            checks.extend(perfect_power_records(alg, chain, zmats, seed,
                                                full_product=True))
        done += 1
    if done < want:
        checks.append(check("spectrum:sampling", "plumbing", FAIL,
                            witness="could not collect enough admissible spectral values"))
    if "prop1" in compare and len(trace_samples) >= 4:
        checks.append(prop1_trace_shape(alg, trace_samples))
    if "universal" in compare:
        checks.extend(universal_records(fam.series, fam.n, seed=seed))
    extra = {
        "blocks": sorted((b.mult, b.dim, b.label) for b in alg.blocks),
        "sp_specialization": "Q = q^-n" if fam.series == "sp" else None,
        "spectral_points": done,
    }
    return checks, extra
