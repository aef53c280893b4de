import random

import pytest

from adjalex.exactpoly import (
    BiPoly,
    Frac,
    InconsistencyError,
    TruncBiPoly,
    TruncationError,
    poly_parse,
)
from adjalex.newton import (
    E1,
    E2,
    Fan,
    WeightVector,
    brieskorn_mu,
    canonical_subdivision,
    face_function,
    fan_to_dot,
    fan_to_json,
    newton_boundary,
    newton_number,
    newton_to_json,
    weighted_order,
)


def _p(text):
    return poly_parse(text, names=("u", "v"))


GERM_2FACE = _p("u^25+u^10*v^2+v^5")


class TestBoundary:
    def test_two_face_germ(self):
        nd = newton_boundary(GERM_2FACE)
        assert nd.vertices == ((0, 5), (10, 2), (25, 0))
        assert [f.weight.as_pair() for f in nd.faces] == [(3, 10), (2, 15)]
        assert nd.faces[0].left == (0, 5) and nd.faces[0].right == (10, 2)
        assert nd.faces[1].left == (10, 2) and nd.faces[1].right == (25, 0)
        assert not nd.is_degenerate()

    def test_binomial_single_face(self):
        nd = newton_boundary(_p("u^20+v^5"))
        assert nd.vertices == ((0, 5), (20, 0))
        (face,) = nd.faces
        assert face.weight.as_pair() == (1, 4)
        assert face.steps == 5
        assert face.face_coeffs == (Frac(1), 0, 0, 0, 0, Frac(1))
        degs = sorted(ff.degree for ff in face.factors)
        assert degs == [1, 4]
        lin = face.factors[0]
        assert lin.gamma == Frac(-1) and lin.multiplicity == 1
        quart = face.factors[1]
        assert quart.gamma is None
        assert quart.coeffs == (Frac(1), Frac(-1), Frac(1), Frac(-1), Frac(1))
        assert not face.is_degenerate()

    def test_degenerate_double_root(self):
        # u^2 * (v^2 + u^9)^2 plus a transverse corner term to close the hull
        f = _p("u^2*v^4 + 2*u^11*v^2 + u^20 + v^7")
        nd = newton_boundary(f)
        face = [fc for fc in nd.faces if fc.weight.as_pair() == (2, 9)][0]
        assert face.steps == 2
        (root,) = face.factors
        assert root.gamma == Frac(-1) and root.multiplicity == 2
        assert face.is_degenerate() and nd.is_degenerate()

    def test_interior_points_ignored(self):
        nd = newton_boundary(_p("u^25+u^10*v^2+v^5+u^20*v^4+3*u^12*v^3"))
        assert nd.vertices == ((0, 5), (10, 2), (25, 0))

    def test_collinear_point_not_vertex(self):
        nd = newton_boundary(_p("v^4+u*v^2+u^2"))
        assert nd.vertices == ((0, 4), (2, 0))
        (face,) = nd.faces
        assert face.steps == 2
        assert face.lattice_points() == [(0, 4), (1, 2), (2, 0)]
        assert face.face_coeffs == (Frac(1), Frac(1), Frac(1))

    def test_monomial_has_no_faces(self):
        nd = newton_boundary(_p("u^3*v^2"))
        assert nd.vertices == ((3, 2),)
        assert nd.faces == ()

    def test_zero_rejected(self):
        with pytest.raises(InconsistencyError):
            newton_boundary(BiPoly.zero())

    def test_face_function(self):
        nd = newton_boundary(GERM_2FACE)
        assert face_function(GERM_2FACE, nd.faces[0]) == _p("u^10*v^2+v^5")
        assert face_function(GERM_2FACE, nd.faces[1]) == _p("u^25+u^10*v^2")

    def test_truncated_without_pure_u_term(self):
        f = TruncBiPoly(_p("v^5+u^10*v^2"), trunc=40)
        with pytest.raises(TruncationError):
            newton_boundary(f)

    def test_truncated_with_pure_u_vertex(self):
        f = TruncBiPoly(GERM_2FACE, trunc=30)
        nd = newton_boundary(f)
        assert nd.vertices == ((0, 5), (10, 2), (25, 0))

    def test_truncated_pure_u_out_of_reach(self):
        f = TruncBiPoly(GERM_2FACE, trunc=20)
        with pytest.raises(TruncationError):
            newton_boundary(f)


class TestWeightedOrder:
    def test_two_face_germ_multiplicities(self):
        assert weighted_order(GERM_2FACE, WeightVector(3, 10)) == 50
        assert weighted_order(GERM_2FACE, WeightVector(2, 15)) == 50
        assert weighted_order(GERM_2FACE, WeightVector(1, 1)) == 5
        assert weighted_order(GERM_2FACE, WeightVector(1, 4)) == 18

    def test_axis_weights(self):
        assert weighted_order(GERM_2FACE, E1) == 0
        assert weighted_order(_p("u^3*v+u^5*v^2"), E2) == 1

    def test_truncated_certification(self):
        f = TruncBiPoly(_p("u^9*v"), trunc=8)
        # known minimum is 9*p + q; for (1,1) that is 10 > 1*(8+1)
        with pytest.raises(TruncationError):
            weighted_order(f, WeightVector(1, 1))
        assert weighted_order(TruncBiPoly(_p("u^3*v"), trunc=8), WeightVector(1, 1)) == 4


class TestSubdivision:
    def test_two_face_fan(self):
        fan = canonical_subdivision(
            [E1, WeightVector(1, 2), WeightVector(2, 9), E2]
        )
        assert [w.as_pair() for w in fan.vectors] == [
            (1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (2, 9), (1, 5), (0, 1)
        ]
        assert fan.marks == (
            "axis", "inserted", "face", "inserted", "inserted", "face",
            "inserted", "axis",
        )
        assert fan.is_regular()

    def test_single_face_fan(self):
        fan = canonical_subdivision([E1, WeightVector(2, 5), E2])
        assert [w.as_pair() for w in fan.vectors] == [
            (1, 0), (1, 1), (1, 2), (2, 5), (1, 3), (0, 1)
        ]
        assert fan.marks == ("axis", "inserted", "inserted", "face", "inserted", "axis")

    def test_already_regular(self):
        fan = canonical_subdivision([E1, WeightVector(1, 1), E2])
        assert [w.as_pair() for w in fan.vectors] == [(1, 0), (1, 1), (0, 1)]
        assert "inserted" not in fan.marks

    def test_random_fans_regular(self):
        rng = random.Random(20260822)
        import math

        for _ in range(120):
            p = rng.randrange(1, 30)
            q = rng.randrange(1, 30)
            g = math.gcd(p, q)
            w = WeightVector(p // g, q // g)
            fan = canonical_subdivision([E1, w, E2])
            assert fan.is_regular()
            assert w in fan.vectors
            assert fan.vectors[0] == E1 and fan.vectors[-1] == E2
            # strictly increasing angles
            for a, b in zip(fan.vectors, fan.vectors[1:]):
                assert a.det(b) == 1

    def test_unsorted_input_ok(self):
        fan = canonical_subdivision([E2, WeightVector(2, 9), E1, WeightVector(1, 2)])
        assert fan.vectors[2].as_pair() == (1, 2)

    def test_duplicate_rays_collapse(self):
        fan = canonical_subdivision([E1, WeightVector(1, 2), WeightVector(1, 2), E2])
        assert [w.as_pair() for w in fan.vectors].count((1, 2)) == 1


class TestNumbers:
    def test_newton_numbers(self):
        assert newton_number(_p("u^15+v^2")) == 14
        assert newton_number(_p("u^20+v^5")) == 76
        assert newton_number(_p("u^25+v^4")) == 72
        assert newton_number(GERM_2FACE) == 71

    def test_newton_number_needs_convenient(self):
        with pytest.raises(InconsistencyError):
            newton_number(_p("u^3*v+v^5"))

    def test_brieskorn(self):
        assert brieskorn_mu(15, 2) == 14
        assert brieskorn_mu(10, 3) == 18
        assert brieskorn_mu(29, 2) == 28
        assert brieskorn_mu(20, 5) == 76
        assert brieskorn_mu(6, 3) == 10

    def test_brieskorn_matches_newton_number(self):
        rng = random.Random(7)
        for _ in range(40):
            p = rng.randrange(2, 25)
            q = rng.randrange(2, 25)
            f = BiPoly({(p, 0): Frac(1), (0, q): Frac(1)})
            assert newton_number(f) == brieskorn_mu(p, q)


class TestBoundaryProperties:
    def test_random_supports(self):
        rng = random.Random(424242)
        for _ in range(120):
            pts = set()
            for _ in range(rng.randrange(2, 9)):
                pts.add((rng.randrange(0, 18), rng.randrange(0, 12)))
            f = BiPoly({pt: Frac(rng.randrange(1, 5)) for pt in pts})
            nd = newton_boundary(f)
            verts = nd.vertices
            # vertices belong to the support, a strictly increasing,
            # b strictly decreasing
            for v in verts:
                assert v in pts
            assert all(x[0] < y[0] for x, y in zip(verts, verts[1:]))
            assert all(x[1] > y[1] for x, y in zip(verts, verts[1:]))
            # each face weight is minimized on its own lattice points
            for face in nd.faces:
                w = face.weight
                d = weighted_order(f, w)
                assert w.p * face.left[0] + w.q * face.left[1] == d
                assert w.p * face.right[0] + w.q * face.right[1] == d
                for a, b in pts:
                    assert w.p * a + w.q * b >= d
            # slopes strictly increase
            slopes = [fc.slope for fc in nd.faces]
            assert all(s < t for s, t in zip(slopes, slopes[1:]))

    def test_face_coeffs_match_product_expansion(self):
        rng = random.Random(99)
        for _ in range(60):
            # build (v^p - g1 u^q)(v^p - g2 u^q)... and read the roots back
            import math

            while True:
                p = rng.randrange(1, 5)
                q = rng.randrange(1, 7)
                if math.gcd(p, q) == 1:
                    break
            gammas = [Frac(rng.randrange(1, 6)) for _ in range(rng.randrange(1, 4))]
            f = BiPoly.const(Frac(1))
            for g in gammas:
                f = f * BiPoly(
                    {(0, p): Frac(1), (q, 0): -g}
                )
            nd = newton_boundary(f)
            (face,) = nd.faces
            assert face.weight.as_pair() == (p, q)
            got = sorted(
                [ff.gamma for ff in face.factors for _ in range(ff.multiplicity)]
            )
            assert got == sorted(gammas)


class TestSerialization:
    def test_fan_json_stable(self):
        fan = canonical_subdivision([E1, WeightVector(2, 5), E2])
        text = fan_to_json(fan)
        assert text == fan_to_json(fan)
        assert '"regular": true' in text
        assert "[2, 5]" in text

    def test_newton_json(self):
        text = newton_to_json(newton_boundary(GERM_2FACE))
        assert '"degenerate": false' in text
        assert "[3, 10]" in text and "[2, 15]" in text

    def test_dot_output(self):
        fan = canonical_subdivision([E1, WeightVector(2, 5), E2])
        dot = fan_to_dot(fan)
        assert dot.startswith("graph fan {")
        assert dot.count(" -- ") == len(fan.vectors) - 1
        assert "(2,5)" in dot
