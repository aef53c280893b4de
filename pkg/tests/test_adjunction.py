"""Membership thresholds, staircases, extra generators and the two rho
routes, pinned on germs whose quotient data is known in closed form."""

import random

import pytest

from adjalex.adjunction import Analyzer, ideal_to_json_dict
from adjalex.exactpoly import BiPoly, Frac, poly_parse

UV = ("u", "v")


def germ(text: str) -> BiPoly:
    return poly_parse(text, names=UV)


# quasihomogeneous-type germs of projective degree 10 whose level-k data
# follows from the staircase alone (nondegenerate boundary, no sites)
TABLE_PLAIN = {
    "u^25+u^10*v^2+v^5": {
        3: (((1, 0), (0, 1)), 1, 5),
        4: (((3, 0), (0, 1)), 3, 15),
        5: (((5, 0), (1, 1), (0, 2)), 6, 23),
        6: (((7, 0), (3, 1), (0, 2)), 10, 33),
        7: (((10, 0), (5, 1), (1, 2), (0, 3)), 16, 43),
        8: (((12, 0), (6, 1), (3, 2), (0, 3)), 21, 52),
        9: (((15, 0), (8, 1), (5, 2), (1, 3), (0, 4)), 29, 63),
    },
    "u^25+v^4": {
        3: (((1, 0), (0, 1)), 1, 4),
        4: (((3, 0), (0, 1)), 3, 12),
        5: (((6, 0), (0, 1)), 6, 24),
        6: (((8, 0), (2, 1), (0, 2)), 10, 32),
        7: (((11, 0), (5, 1), (0, 2)), 16, 44),
        8: (((13, 0), (7, 1), (1, 2), (0, 3)), 21, 52),
        9: (((16, 0), (10, 1), (3, 2), (0, 3)), 29, 62),
    },
    "u^20+v^5": {
        3: (((2, 0), (0, 1)), 2, 10),
        4: (((4, 0), (0, 1)), 4, 20),
        5: (((6, 0), (2, 1), (0, 2)), 8, 30),
        6: (((8, 0), (4, 1), (0, 2)), 12, 40),
        7: (((10, 0), (6, 1), (2, 2), (0, 3)), 18, 50),
        8: (((12, 0), (8, 1), (4, 2), (0, 3)), 24, 60),
        9: (((14, 0), (10, 1), (6, 2), (2, 3), (0, 4)), 32, 70),
    },
}

GERM_SITE = "v^5+u^2*(v^2+u^9)^2"
GERM_SITE_H = "v^5+u^2*(v^2+u^9)^2-2*u^16*v-2*u^7*v^3+u^12*v^2"

# shared staircase of the two degenerate fixtures (their ledgers agree)
SITE_MONO = {
    3: ((1, 0), (0, 1)),
    4: ((3, 0), (0, 1)),
    5: ((5, 0), (1, 1), (0, 2)),
    6: ((7, 0), (3, 1), (0, 2)),
    7: ((10, 0), (5, 1), (1, 2), (0, 3)),
    8: ((12, 0), (7, 1), (3, 2), (0, 3)),
    9: ((14, 0), (10, 1), (5, 2), (1, 3), (0, 4)),
}
SITE_RHO = {3: 1, 4: 3, 5: 6, 6: 10, 7: 16, 8: 21, 9: 29}
SITE_COUNT = {3: 1, 4: 3, 5: 6, 6: 10, 7: 16, 8: 22, 9: 30}
SITE_IOTA = {3: 5, 4: 14, 5: 23, 6: 32, 7: 43, 8: 52, 9: 63}


@pytest.fixture(scope="module")
def analyzers():
    cache = {}

    def get(text: str) -> Analyzer:
        if text not in cache:
            cache[text] = Analyzer(germ(text), 10)
        return cache[text]

    return get


class TestPlainTables:
    @pytest.mark.parametrize("text", sorted(TABLE_PLAIN))
    def test_no_sites_no_extras(self, analyzers, text):
        an = analyzers(text)
        assert an.chains == ()
        for k in range(3, 10):
            assert an.ideal(k).extras == ()

    @pytest.mark.parametrize("text", sorted(TABLE_PLAIN))
    @pytest.mark.parametrize("k", range(3, 10))
    def test_generators_rho_iota(self, analyzers, text, k):
        gens, rho, iota = TABLE_PLAIN[text][k]
        ideal = analyzers(text).ideal(k)
        assert ideal.monomial_gens == gens
        assert ideal.rho == rho
        assert ideal.staircase_count == rho
        assert analyzers(text).iota(ideal) == iota

    @pytest.mark.parametrize("text", sorted(TABLE_PLAIN))
    @pytest.mark.parametrize("k", range(3, 10))
    def test_rank_route_agrees(self, analyzers, text, k):
        an = analyzers(text)
        assert an.rho_by_rank(k) == TABLE_PLAIN[text][k][1]


class TestSiteFixture:
    def test_chain_stops_at_face_binomial(self, analyzers):
        an = analyzers(GERM_SITE)
        c0 = BiPoly({(0, 2): Frac(1), (9, 0): Frac(1)})
        assert an.chains == ((c0,),)

    def test_chain_refines_twice(self, analyzers):
        an = analyzers(GERM_SITE_H)
        c0 = BiPoly({(0, 2): Frac(1), (9, 0): Frac(1)})
        c1 = BiPoly({(0, 2): Frac(1), (5, 1): Frac(-1), (9, 0): Frac(1)})
        assert an.chains == ((c0, c1),)

    @pytest.mark.parametrize("text", [GERM_SITE, GERM_SITE_H])
    @pytest.mark.parametrize("k", range(3, 10))
    def test_staircase_and_rho(self, analyzers, text, k):
        ideal = analyzers(text).ideal(k)
        assert ideal.monomial_gens == SITE_MONO[k]
        assert ideal.staircase_count == SITE_COUNT[k]
        assert ideal.rho == SITE_RHO[k]
        if k < 8:
            assert ideal.extras == ()

    def test_extras_site(self, analyzers):
        an = analyzers(GERM_SITE)
        e8 = an.ideal(8).extras
        assert [(e.cofactor, e.level) for e in e8] == [((2, 0), 0)]
        assert e8[0].poly == germ("u^2*v^2+u^11")
        e9 = an.ideal(9).extras
        assert [(e.cofactor, e.level) for e in e9] == [((4, 0), 0)]

    def test_extras_site_h(self, analyzers):
        an = analyzers(GERM_SITE_H)
        e8 = an.ideal(8).extras
        assert [(e.cofactor, e.level) for e in e8] == [((2, 0), 0)]
        e9 = an.ideal(9).extras
        assert [(e.cofactor, e.level) for e in e9] == [((4, 0), 1)]
        assert e9[0].poly == germ("u^4*v^2-u^9*v+u^13")

    @pytest.mark.parametrize("text", [GERM_SITE, GERM_SITE_H])
    @pytest.mark.parametrize("k", range(3, 10))
    def test_rank_route_sees_extras(self, analyzers, text, k):
        assert analyzers(text).rho_by_rank(k) == SITE_RHO[k]

    @pytest.mark.parametrize("text", [GERM_SITE, GERM_SITE_H])
    @pytest.mark.parametrize("k", range(3, 10))
    def test_iota(self, analyzers, text, k):
        an = analyzers(text)
        assert an.iota(an.ideal(k)) == SITE_IOTA[k]


class TestMembership:
    def test_monomial_members(self, analyzers):
        an = analyzers(GERM_SITE)
        assert an.is_member(germ("u^14"), 9)
        assert not an.is_member(germ("u^13"), 9)
        assert an.is_member(germ("u*v^3"), 9)
        assert not an.is_member(germ("u^4*v^2"), 9)

    def test_refined_member(self, analyzers):
        an = analyzers(GERM_SITE_H)
        c0 = germ("v^2+u^9")
        c1 = germ("v^2-u^5*v+u^9")
        u4 = BiPoly.monomial(4, 0)
        assert an.is_member(u4 * c1, 9)
        assert not an.is_member(u4 * c0, 9)

    def test_every_generator_is_member(self, analyzers):
        for text in (GERM_SITE, GERM_SITE_H, "u^25+u^10*v^2+v^5"):
            an = analyzers(text)
            for k in range(3, 10):
                for g in an.ideal(k).generator_polys():
                    assert an.is_member(g, k)

    def test_reduce_window_vector(self, analyzers):
        ideal = analyzers(GERM_SITE).ideal(8)
        extra = ideal.extras[0].poly
        assert ideal.reduce_window_vector(dict(extra.terms)) == {}
        # half of the generator does not reduce to zero on its own
        rem = ideal.reduce_window_vector({(2, 2): Frac(1)})
        assert rem


class TestRandomNondegenerate:
    def test_routes_agree(self, analyzers):
        rng = random.Random(20260822)
        from math import gcd

        done = 0
        while done < 12:
            nf = rng.randint(2, 3)
            seen = set()
            factors = []
            for _ in range(nf):
                while True:
                    p = rng.randint(1, 3)
                    q = rng.randint(1, 7)
                    if gcd(p, q) != 1:
                        continue
                    g = rng.choice([-3, -2, -1, 1, 2, 3])
                    if (p, q, g) not in seen:
                        break
                seen.add((p, q, g))
                factors.append(
                    BiPoly({(0, p): Frac(1), (q, 0): Frac(-g)})
                )
            f = factors[0]
            for fac in factors[1:]:
                f = f * fac
            if any(
                sum(1 for (p2, q2, g2) in seen if (p2, q2) == (p, q)) > 2
                for (p, q, g) in seen
            ):
                continue
            an = Analyzer(f, f.total_degree() + rng.randint(1, 3))
            if an.res.sites:
                continue
            for k in (3, rng.randint(4, an.degree - 1)):
                ideal = an.ideal(k)
                assert ideal.extras == ()
                assert ideal.rho == ideal.staircase_count
                assert an.rho_by_rank(k) == ideal.rho
            done += 1


class TestJson:
    def test_ideal_json(self, analyzers):
        d = ideal_to_json_dict(analyzers(GERM_SITE).ideal(8))
        assert d["k"] == 8
        assert d["rho"] == 21
        assert [2, 0] in [e["cofactor"] for e in d["extras"]]
        assert d["extras"][0]["poly"] == "u^11+u^2*v^2"
        rays = [t["ray"] for t in d["thresholds"]]
        assert [2, 9] in rays and [2, 5] in rays
