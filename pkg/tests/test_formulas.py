import random
from fractions import Fraction

import pytest

from rmx.brackets import BracketTriple
from rmx.catalog import UnknownFormula, catalog_get, catalog_names
from rmx.field import DegeneratePoint, PrimeField, RationalField
from rmx.formulas import (DISCREPANCY, FAIL, PASS, Br, eval_formula, flip_u,
                          identity_test, is_universal, substitute_params,
                          universal_params_for)
from rmx.points import EvalPoint, sample_admissible_point


def test_catalog_names_present():
    names = set(catalog_names())
    required = {
        "unitarity_scalar", "loop_delta", "k_norm",
        "table_so.p1111", "table_so.p211", "table_so.p22", "table_so.p2",
        "propA.a11", "propA.a12", "propA.a21", "propA.a22",
        "matB.b11", "matB.b13", "matB.b31", "matP",
        "propC.c11", "propC.c12", "propC.c21", "propC.c22", "propC.c33",
        "universal.table.p1111", "universal.table.p211", "universal.table.p22",
        "universal.table.p2", "universal.A.a11", "universal.A.a22",
        "universal.C.c11", "universal.C.c12", "universal.C.c21",
        "universal.C.c22", "universal.C.c33",
    }
    assert required <= names
    with pytest.raises(UnknownFormula):
        catalog_get("nosuch")


def test_universal_params():
    p = universal_params_for("so", 9)
    assert p.alpha == (0, -2) and p.beta == (0, 4) and p.gamma == (1, -4)
    with pytest.raises(NotImplementedError):
        universal_params_for("sp", 8)


def test_table_p2_at_u_one():
    """Row `2` at x = 0 evaluates to [-1][2][-n/2+2] with [-1] = -1."""
    F = RationalField()
    pt = EvalPoint("so", 9, F, Fraction(3, 2), Fraction(1))
    from rmx.brackets import bracket_eval
    val = eval_formula(catalog_get("table_so.p2"), pt)
    byhand = -1 * bracket_eval(BracketTriple(0, 0, 4), pt) * \
        bracket_eval(BracketTriple(-1, 0, 4), pt)
    assert val == byhand


def test_c11_minus_c22_at_fixed_point():
    F = RationalField()
    pt = EvalPoint("so", 9, F, Fraction(4, 3), Fraction(1))  # u = 1, x = 0
    c11 = eval_formula(catalog_get("propC.c11"), pt)
    c22 = eval_formula(catalog_get("propC.c22"), pt)
    assert c11 == c22


def test_k_norm_nonzero_at_admissible():
    F = PrimeField()
    pt = sample_admissible_point("so", 9, F, seed=9)
    assert not F.is_zero(eval_formula(catalog_get("k_norm"), pt))


def test_every_catalog_entry_evaluates():
    """Every entry evaluates at random admissible points for both series
    (universal entries with so parameters only)."""
    F = PrimeField()
    count = {"so": [9, 11], "sp": [8, 10]}
    for series, ns in count.items():
        for n in ns:
            for i in range(25):
                pt = sample_admissible_point(series, n, F, seed=1000 * n + i)
                params = universal_params_for("so", n)
                for name in catalog_names():
                    if name == "matP":
                        continue
                    e = catalog_get(name)
                    if is_universal(e):
                        if series != "so":
                            continue
                        eval_formula(e, pt, params)
                    else:
                        eval_formula(e, pt)


def test_identity_brace_bracket():
    t = BracketTriple(1, 1, -2)
    e1 = catalog_get("table_so.p22")
    v = identity_test(e1, e1, "so", 9, trials=4, seed=0)
    assert v.status == PASS


def test_identity_c11_c22_flip():
    v = identity_test(catalog_get("propC.c11"),
                      flip_u(catalog_get("propC.c22")), "so", 9, trials=8, seed=1)
    assert v.status == PASS


def test_identity_discrepancy_c12():
    params = universal_params_for("so", 9)
    v = identity_test(catalog_get("universal.C.c12"), catalog_get("propC.c12"),
                      "so", 9, trials=8, seed=2, params=params)
    assert v.status == DISCREPANCY
    assert v.detail["ratio_name"] == "[2]"


def test_identity_fail_with_witness():
    v = identity_test(catalog_get("table_so.p22"), catalog_get("table_so.p2"),
                      "so", 9, trials=4, seed=3)
    assert v.status == FAIL
    assert "witness" in v.detail


def test_unitarity_scalar_constant_ratio():
    v = identity_test(catalog_get("unitarity_scalar"),
                      catalog_get("unitarity_scalar_derived"), "so", 9,
                      trials=6, seed=4)
    assert v.status == DISCREPANCY
    assert v.detail["ratio_name"] == "Q^2(q-q^-1)^-4"


def test_universal_substitution_matches_series_rows():
    params = universal_params_for("so", 11)
    for uni, ref, status in (
        ("universal.table.p1111", "table_so.p1111", PASS),
        ("universal.table.p211", "table_so.p211", PASS),
        ("universal.table.p22", "table_so.p22", FAIL),
        ("universal.A.a11", "propA.a11", PASS),
        ("universal.A.a22", "propA.a22", PASS),
        ("universal.C.c11", "propC.c11", PASS),
        ("universal.C.c21", "propC.c21", PASS),
        ("universal.C.c33", "propC.c33", PASS),
    ):
        v = identity_test(catalog_get(uni), catalog_get(ref), "so", 11,
                          trials=6, seed=5, params=params)
        assert v.status == status, (uni, ref, v.status, v.detail)
