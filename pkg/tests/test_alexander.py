"""Integer-polynomial helpers, the evaluation-map paths, and exact
assembly, pinned against closed-form values."""

import random

import pytest

from adjalex.adjunction import Analyzer
from adjalex.alexander import (
    EllData,
    GlobalCurve,
    LocalPoint,
    analyze_curve,
    assemble,
    cyclotomic,
    dim_poly_space,
    domain_monomials,
    ell_values,
    generic_delta,
    normalize_kernel_poly,
    poly_div_exact,
    poly_mul,
    poly_pow,
    poly_text,
    sigma_matrix,
    t_power_minus_one,
)
from adjalex.exactpoly import (
    BiPoly,
    Frac,
    InconsistencyError,
    TruncSeries,
    poly_parse,
    substitute_shift,
)

UV = ("u", "v")
PHI10 = (1, -1, 1, -1, 1)


def germ(text):
    return poly_parse(text, names=UV)


class TestIntPoly:
    def test_cyclotomic_values(self):
        assert cyclotomic(1) == (-1, 1)
        assert cyclotomic(2) == (1, 1)
        assert cyclotomic(5) == (1, 1, 1, 1, 1)
        assert cyclotomic(6) == (1, -1, 1)
        assert cyclotomic(10) == PHI10
        assert cyclotomic(12) == (1, 0, -1, 0, 1)

    def test_cyclotomic_product_recovers_t_n_minus_one(self):
        for n in (6, 10, 12, 30):
            prod = (1,)
            for d in range(1, n + 1):
                if n % d == 0:
                    prod = poly_mul(prod, cyclotomic(d))
            assert prod == t_power_minus_one(n)

    def test_inexact_division_raises(self):
        with pytest.raises(InconsistencyError):
            poly_div_exact((1, 1, 1), (1, 1))

    def test_poly_text(self):
        assert poly_text(PHI10) == "t^4-t^3+t^2-t+1"
        assert poly_text((1,)) == "1"
        assert poly_text((-1, 1)) == "t-1"


class TestGenericDelta:
    def test_known_values(self):
        assert generic_delta(5, 2) == PHI10
        assert generic_delta(3, 2) == (1, -1, 1)
        assert generic_delta(2, 2) == (-1, 1)
        # torus-knot value for (4,3): t^6 - t^5 + t^3 - t + 1
        assert generic_delta(4, 3) == (1, -1, 0, 1, 0, -1, 1)
        assert generic_delta(4, 2) == (-1, 1, -1, 1)

    def test_degree_formula(self):
        for p in range(2, 8):
            for q in range(2, 8):
                val = generic_delta(p, q)
                assert len(val) - 1 == p * q - p - q + 1

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            generic_delta(1, 5)


class TestAssemble:
    def test_single_orbit(self):
        ell = (0, 0, 0, 0, 0, 0, 1, 0, 1)
        out = assemble(ell, 10, 1)
        assert out.factored == ((10, 1),)
        assert out.expanded_reduced == PHI10
        assert out.expanded_full == PHI10
        assert out.reduced_text() == "t^4-t^3+t^2-t+1"

    def test_five_conic_weights(self):
        ell = (0, 0, 1, 1, 2, 2, 3, 3, 4)
        out = assemble(ell, 10, 5)
        assert out.factored == ((2, 4), (5, 3), (10, 4))
        check = poly_pow(cyclotomic(2), 4)
        check = poly_mul(check, poly_pow(cyclotomic(5), 3))
        check = poly_mul(check, poly_pow(cyclotomic(10), 4))
        assert out.expanded_reduced == check
        assert len(out.expanded_reduced) - 1 == 32
        # value at t=1 is an independent arithmetic route
        assert sum(out.expanded_reduced) == 2**4 * 5**3
        assert out.expanded_full == poly_mul(
            poly_pow((-1, 1), 4), out.expanded_reduced
        )
        assert out.factored_text().startswith("(t-1)^4*(t+1)^4")

    def test_orbit_inconsistency(self):
        ell = (0, 0, 0, 0, 0, 0, 1, 0, 0)
        with pytest.raises(InconsistencyError):
            assemble(ell, 10, 1)

    def test_trivial(self):
        out = assemble((0,) * 9, 10, 1)
        assert out.expanded_reduced == (1,)
        assert out.factored_text() == "1"
        out3 = assemble((0,) * 9, 10, 3)
        assert out3.expanded_full == poly_mul((-1, 1), (-1, 1))

    def test_dict_input(self):
        out = assemble({7: 1, 9: 1}, 10, 1)
        assert out.expanded_reduced == PHI10


def five_conics(ts=(1, 2, 3, 4, 5)):
    f = BiPoly.monomial(0, 0)
    for t in ts:
        f = f * BiPoly(
            {(0, 1): Frac(1), (2, 0): Frac(-1), (0, 2): Frac(-t)}
        )
    return f


@pytest.fixture(scope="module")
def conic_curve():
    f = five_conics()
    phi = TruncSeries.from_map({2: Frac(1)}, 30)
    local = substitute_shift(f, phi).known_part()
    point = LocalPoint(analyzer=Analyzer(local, 10), phi=phi)
    return GlobalCurve(d=10, points=(point,), r=5, f=f)


class TestSigma:
    def test_level_three_single_column(self, conic_curve):
        sig = sigma_matrix(conic_curve, 3)
        assert sig.columns == ((0, 0),)
        assert sig.rank == 1 and sig.kernel == ()

    def test_shift_restores_injectivity(self, conic_curve):
        sig = sigma_matrix(conic_curve, 4)
        assert sig.rank == 3 and sig.kernel_dim == 0

    def test_unshifted_model_has_kernel(self):
        point = LocalPoint(analyzer=Analyzer(germ("u^20+v^5"), 10))
        curve = GlobalCurve(d=10, points=(point,))
        sig = sigma_matrix(curve, 4)
        assert sig.kernel == (BiPoly.monomial(0, 1),)
        assert sig.rank == 2

    def test_domain_monomials(self):
        assert domain_monomials(3) == ((0, 0),)
        assert domain_monomials(2) == ()
        assert len(domain_monomials(9)) == dim_poly_space(6) == 28

    def test_normalize(self):
        g = BiPoly({(0, 1): Frac(-2, 3), (1, 0): Frac(4, 3)})
        n = normalize_kernel_poly(g)
        # sign fixed by making the grlex-largest monomial positive
        assert n == BiPoly({(0, 1): Frac(1), (1, 0): Frac(-2)})


class TestEllPaths:
    def test_shortcut_on_quasihomogeneous_models(self):
        for text in ("u^25+u^10*v^2+v^5", "u^25+v^4"):
            point = LocalPoint(analyzer=Analyzer(germ(text), 10))
            curve = GlobalCurve(d=10, points=(point,), r=1, irreducible=True)
            data, alex = analyze_curve(curve, mode="shortcut")
            assert data.vector() == (0, 0, 0, 0, 0, 0, 1, 0, 1)
            assert all(
                rec.path == ("trivial" if rec.k < 3 else "shortcut")
                for rec in data.records
            )
            assert alex.expanded_full == PHI10

    def test_shortcut_needs_irreducibility(self):
        point = LocalPoint(analyzer=Analyzer(germ("u^25+v^4"), 10))
        curve = GlobalCurve(d=10, points=(point,), r=1)
        with pytest.raises(InconsistencyError):
            ell_values(curve, mode="shortcut")

    def test_asserted_injectivity(self):
        point = LocalPoint(analyzer=Analyzer(germ("u^20+v^5"), 10))
        curve = GlobalCurve(
            d=10, points=(point,), r=5, injectivity_asserted=True
        )
        data = ell_values(curve)
        assert data.vector() == (0, 0, 1, 1, 2, 2, 3, 3, 4)
        assert any("asserted" in w for w in data.warnings)

    def test_matrix_path_on_conic_instance(self, conic_curve):
        data, alex = analyze_curve(conic_curve, mode="matrix")
        assert data.vector() == (0, 0, 1, 1, 2, 2, 3, 3, 4)
        assert all(
            rec.kernel_dim == 0 for rec in data.records if rec.k >= 3
        )
        expected = poly_mul(
            poly_pow((-1, 1), 4),
            poly_mul(
                poly_pow(cyclotomic(2), 4),
                poly_mul(
                    poly_pow(cyclotomic(5), 3), poly_pow(cyclotomic(10), 4)
                ),
            ),
        )
        assert alex.expanded_full == expected

    def test_conic_instance_table_match(self, conic_curve):
        an = conic_curve.points[0].analyzer
        rhos = tuple(an.ideal(k).rho for k in range(3, 10))
        assert rhos == (2, 4, 8, 12, 18, 24, 32)
        iotas = tuple(an.iota(an.ideal(k)) for k in range(3, 10))
        assert iotas == (10, 20, 30, 40, 50, 60, 70)


class TestRankNullity:
    def test_random_models(self):
        rng = random.Random(77)
        from math import gcd as _gcd

        done = 0
        while done < 8:
            picks = set()
            while len(picks) < 2:
                p, q = rng.randint(1, 3), rng.randint(2, 6)
                if _gcd(p, q) == 1:
                    picks.add((p, q, rng.choice([-2, -1, 1, 2])))
            f = BiPoly.monomial(0, 0)
            for p, q, g in picks:
                f = f * BiPoly({(0, p): Frac(1), (q, 0): Frac(-g)})
            an = Analyzer(f, f.total_degree() + 2)
            if an.res.sites:
                continue
            curve = GlobalCurve(d=an.degree, points=(LocalPoint(analyzer=an),))
            data = ell_values(curve, mode="matrix")
            for rec in data.records:
                assert rec.ell >= max(rec.rho_tilde, 0)
                if rec.path == "matrix":
                    assert rec.ell == rec.rho - (
                        dim_poly_space(rec.k - 3) - rec.kernel_dim
                    )
            done += 1
