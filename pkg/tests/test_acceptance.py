"""Acceptance gate: one test per shipped claim, all at exact equality.

Each test is a single pass/fail line under pytest -v.  The expensive
family pipelines are built once per process through the caches in
adjalex.fixtures and shared with the other suites.
"""

import io
import json
import random
from fractions import Fraction as Frac

import pytest
import sympy

from adjalex import fixtures
from adjalex.alexander import (
    GlobalCurve,
    LocalPoint,
    analyze_curve,
    assemble,
    dim_poly_space,
    generic_delta,
    normalize_kernel_poly,
    poly_text,
    sigma_matrix,
)
from adjalex.branches import intersection_multiplicity
from adjalex.cli import EXIT_OK, run
from adjalex.curves import five_conic_configuration
from adjalex.exactpoly import (
    BiPoly,
    InconsistencyError,
    poly_parse,
    resultant_order,
)
from adjalex.newton import brieskorn_mu, newton_number

DELTA_QUARTIC = "t^4-t^3+t^2-t+1"

RHO_ONE_BRANCH = (1, 3, 6, 10, 16, 21, 29)


def germ_table(name):
    return next(t for t in fixtures.GERM_TABLES if t.name == name)


def family_table(name):
    return next(t for t in fixtures.FAMILY_IDEAL_TABLES if t.family == name)


def rows_columns(table):
    ks = tuple(sorted(table.rows))
    rhos = tuple(table.rows[k][-2] for k in ks)
    iotas = tuple(table.rows[k][-1] for k in ks)
    return ks, rhos, iotas


def test_criterion_01_deep_composite_germ_table():
    table = germ_table("B15_2_B10_3")
    ks, rhos, iotas = rows_columns(table)
    assert ks == (3, 4, 5, 6, 7, 8, 9)
    assert rhos == RHO_ONE_BRANCH
    assert iotas == (5, 15, 23, 33, 43, 52, 63)
    assert fixtures.check_germ_table(table) == []


def test_criterion_02_four_fold_germ_table():
    table = germ_table("B25_4")
    ks, rhos, iotas = rows_columns(table)
    assert ks == (3, 4, 5, 6, 7, 8, 9)
    assert rhos == RHO_ONE_BRANCH
    assert iotas == (4, 12, 24, 32, 44, 52, 62)
    assert fixtures.check_germ_table(table) == []


def test_criterion_03_five_fold_germ_table_and_ell():
    table = germ_table("B20_5")
    ks, rhos, iotas = rows_columns(table)
    assert ks == (3, 4, 5, 6, 7, 8, 9)
    assert rhos == (2, 4, 8, 12, 18, 24, 32)
    assert iotas == (10, 20, 30, 40, 50, 60, 70)
    assert fixtures.check_germ_table(table) == []
    data, _ = analyze_curve(five_conic_configuration())
    assert data.vector()[2:] == fixtures.ELL_B20_5 == (1, 1, 2, 2, 3, 3, 4)


def test_criterion_04_one_point_degree_ten_curves():
    for name in ("B15_2_B10_3", "B25_4"):
        an = fixtures.germ_analyzer(name)
        curve = GlobalCurve(
            d=10, points=(LocalPoint(an),), r=1, f=an.f, irreducible=True
        )
        data, alex = analyze_curve(curve)
        assert {rec.path for rec in data.records} == {"trivial", "shortcut"}
        assert alex.reduced_text() == DELTA_QUARTIC


def test_criterion_05_five_conic_assembly():
    alex = assemble((0, 0, 1, 1, 2, 2, 3, 3, 4), 10, 5)
    assert alex.factored_text() == (
        "(t-1)^4*(t+1)^4*(t^4+t^3+t^2+t+1)^3*(t^4-t^3+t^2-t+1)^4"
    )
    t = sympy.Symbol("t")
    expanded = sympy.Poly(
        (t - 1) ** 4
        * (t + 1) ** 4
        * (t**4 + t**3 + t**2 + t + 1) ** 3
        * (t**4 - t**3 + t**2 - t + 1) ** 4,
        t,
    )
    assert list(alex.expanded_full) == list(reversed(expanded.all_coeffs()))


def test_criterion_06_contact5_ideal_list():
    table = family_table("B9sq_B52_B21")
    ks, rhos, iotas = rows_columns(table)
    assert ks == (3, 4, 5, 6, 7, 8, 9)
    assert rhos[5] == 21 and rhos[6] == 29
    assert table.rows[8][1] == (((2, 0), 0),)
    assert table.rows[9][1] == (((4, 0), 1),)
    assert all(iota > 10 * (k - 3) for k, iota in zip(ks, iotas))
    assert fixtures.check_family_table(table) == []


def test_criterion_07_contact7_ideal_list():
    table = family_table("B292_B21_B52")
    ks, rhos, _ = rows_columns(table)
    assert ks == (3, 4, 5, 6, 7, 8, 9)
    assert rhos[4] == 15 and rhos[5] == 20 and rhos[6] == 28
    assert table.rows[7][1] == (((1, 1), 0),)
    assert table.rows[8][1] == (((2, 1), 0), ((0, 2), 0))
    assert table.rows[9][1] == (((3, 1), 1), ((1, 2), 1), ((0, 3), 0))
    assert fixtures.check_family_table(table) == []


def test_criterion_08_contact7_kernels_and_polynomial():
    curve = fixtures.family_curve("B292_B21_B52")
    sigmas = {k: sigma_matrix(curve, k) for k in range(3, 10)}
    assert tuple(s.kernel_dim for s in sigmas.values()) == (
        0, 1, 2, 2, 1, 1, 1,
    )
    data, alex = analyze_curve(curve)
    assert data.vector() == (0, 0, 0, 0, 0, 0, 1, 0, 1)
    assert alex.reduced_text() == DELTA_QUARTIC
    recorded = poly_parse(
        "y*(675*y^5-(990*x+1458)*y^4-(1251*x^2+522*x+729)*y^3"
        "+(154*x^2-522*x+468)*x*y^2+(415*x^4+1144*x^3)*y+676*x^5)"
    )
    # the computed one-dimensional kernel is spanned by the normalization
    # of 27*y*f5 - 18*x*y*f2^2; the recorded sextic below differs from it
    # and this equality is expected to fail until the record is revised
    assert sigmas[9].kernel[0] == normalize_kernel_poly(recorded)


def test_criterion_09_resolution_ledgers():
    res5 = fixtures.family_analyzer("B9sq_B52_B21").res
    assert res5.m_vector(stage=1) == [5, 10, 14, 18, 40, 20]
    assert res5.m_vector(stage=2) == [42, 44, 90, 45]
    assert res5.k_vector(stage=1) == [1, 2, 3, 4, 10, 5]
    assert res5.k_vector(stage=2) == [11, 12, 26, 13]
    res7 = fixtures.family_analyzer("B292_B21_B52").res
    assert res7.m_vector(stage=1) == (
        [5] + list(range(10, 35, 2)) + [70, 35]
    )
    assert res7.m_vector(stage=2) == [12, 14, 30, 15]
    assert res7.k_vector(stage=1) == [1] + list(range(2, 15)) + [30, 15]
    assert res7.k_vector(stage=2) == [3, 4, 10, 5]


def test_criterion_10_canonical_subdivisions():
    assert fixtures.check_subdivisions() == []
    expected = {
        ((1, 2), (2, 9)): ((1, 1), (1, 2), (1, 3), (1, 4), (2, 9), (1, 5)),
        ((2, 5),): ((1, 1), (1, 2), (2, 5), (1, 3)),
    }
    assert dict(fixtures.SUBDIVISION_FIXTURES) == expected


def test_criterion_11_milnor_numbers():
    cases = {(15, 2): 14, (10, 3): 18, (29, 2): 28, (20, 5): 76, (6, 3): 10}
    for (p, q), mu in cases.items():
        assert brieskorn_mu(p, q) == mu
        germ = poly_parse(f"u^{p}+v^{q}", names=("u", "v"))
        assert newton_number(germ) == mu


def test_criterion_12_splitting_survivors():
    assert fixtures.check_pluecker() == []
    assert fixtures.PLUECKER_FIXTURES["B29_2_B6_3"][1] == ((10,), (9, 1))
    assert fixtures.PLUECKER_FIXTURES["B20_5"][1] == ((2, 2, 2, 2, 2),)


def test_criterion_13_generic_delta():
    assert poly_text(generic_delta(5, 2)) == DELTA_QUARTIC
    assert poly_text(generic_delta(3, 2)) == "t^2-t+1"


# -- criterion 14: the four property suites -----------------------------


def _random_reduced(rng):
    while True:
        factors = []
        for _ in range(rng.randrange(1, 4)):
            kind = rng.randrange(3)
            if kind == 0:
                terms = {(0, 1): Frac(1)}
                for e in range(1, rng.randrange(2, 5)):
                    c = rng.randrange(-2, 3)
                    if c:
                        terms[(e, 0)] = Frac(c)
                if len(terms) == 1:
                    terms[(1, 0)] = Frac(1)
                factors.append(BiPoly(terms))
            elif kind == 1:
                p, q = rng.choice(((2, 3), (2, 5), (3, 4), (3, 5), (2, 7)))
                factors.append(
                    BiPoly({(0, p): Frac(1), (q, 0): Frac(-rng.randrange(1, 4))})
                )
            else:
                factors.append(BiPoly({(0, 1): Frac(1)}))
        prod = BiPoly.const(Frac(1))
        seen = set()
        for f in factors:
            key = tuple(sorted(f.terms.items()))
            if key in seen:
                continue
            seen.add(key)
            prod = prod * f
        if prod.terms != {(0, 0): Frac(1)}:
            return prod


def test_criterion_14a_intersection_against_resultant():
    rng = random.Random(9091)
    checked = 0
    while checked < 100:
        f = _random_reduced(rng)
        g = _random_reduced(rng)
        try:
            im = intersection_multiplicity(f, g)
        except InconsistencyError:
            continue
        assert im == resultant_order(f, g)
        checked += 1


def test_criterion_14b_staircase_rho_equals_rank_rho():
    for table in fixtures.GERM_TABLES:
        an = fixtures.germ_analyzer(table.name)
        for k in table.rows:
            assert an.ideal(k).rho == an.rho_by_rank(k)


def test_criterion_14c_rank_nullity_on_every_sigma():
    conics = five_conic_configuration()
    for curve in (
        conics,
        fixtures.family_curve("B9sq_B52_B21"),
        fixtures.family_curve("B292_B21_B52"),
    ):
        for k in range(3, 10):
            sig = sigma_matrix(curve, k)
            assert sig.rank + sig.kernel_dim == dim_poly_space(k - 3)


def test_criterion_14d_parallel_json_determinism(tmp_path):
    cfg = tmp_path / "conics.json"
    cfg.write_text(json.dumps({"configuration": "five_conics"}))

    def once(extra=()):
        buf = io.StringIO()
        code = run(
            ["analyze", "--input", str(cfg), "--format", "json", *extra],
            out=buf,
        )
        assert code == EXIT_OK
        return buf.getvalue()

    first = once(("--parallel",))
    assert first == once(("--parallel",)) == once()
