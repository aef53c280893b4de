"""Newton boundaries, face functions, and regular fan subdivisions.

The boundary of a germ drives everything else: face weight vectors seed the
toric modification, face factorizations decide degeneracy, and the regular
subdivision of the face fan names the exceptional divisors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction as Frac

from .exactpoly import (
    AdjalexError,
    BiPoly,
    InconsistencyError,
    TruncBiPoly,
    TruncationError,
    grlex_key,
    poly_str,
)


@dataclass(frozen=True, order=True)
class WeightVector:
    """Primitive integer weight (p, q); the weighted degree of u^a v^b is
    p*a + q*b."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or (self.p == 0 and self.q == 0):
            raise ValueError(f"weight vector must be nonzero and nonnegative: {self}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"weight vector must be primitive: {self}")

    def det(self, other: WeightVector) -> int:
        return self.p * other.q - self.q * other.p

    def degree(self) -> int:
        """Sum of entries; the canonical divisor multiplicity is degree()-1."""
        return self.p + self.q

    def as_pair(self) -> tuple[int, int]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


E1 = WeightVector(1, 0)
E2 = WeightVector(0, 1)


@dataclass(frozen=True)
class FaceFactor:
    """One factor of a face polynomial G(z): either a rational root z=gamma
    (degree 1) or an irreducible block of higher degree, with multiplicity."""

    coeffs: tuple[Frac, ...]  # ascending, degree = len - 1
    multiplicity: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def gamma(self) -> Frac | None:
        if self.degree == 1:
            return -self.coeffs[0] / self.coeffs[1]
        return None


@dataclass(frozen=True)
class NewtonFace:
    """A compact face of the boundary, from the higher-v vertex to the
    lower-v vertex, carrying its primitive weight and factorization data."""

    left: tuple[int, int]   # vertex with the larger v-exponent
    right: tuple[int, int]  # vertex with the smaller v-exponent
    weight: WeightVector
    steps: int              # lattice points on the face minus one
    face_coeffs: tuple[Frac, ...]  # G(z), ascending in z
    factors: tuple[FaceFactor, ...]

    @property
    def slope(self) -> Frac:
        return Frac(self.weight.q, self.weight.p)

    def is_degenerate(self) -> bool:
        return any(f.multiplicity > 1 for f in self.factors)

    def lattice_points(self) -> list[tuple[int, int]]:
        q, p = self.weight.q, self.weight.p
        return [
            (self.left[0] + i * q, self.left[1] - i * p) for i in range(self.steps + 1)
        ]


@dataclass(frozen=True)
class NewtonData:
    """Boundary of a germ: vertices by increasing u-exponent and faces by
    increasing slope q/p of their weight vectors."""

    vertices: tuple[tuple[int, int], ...]
    faces: tuple[NewtonFace, ...]

    def is_degenerate(self) -> bool:
        return any(f.is_degenerate() for f in self.faces)

    def weights(self) -> list[WeightVector]:
        return [f.weight for f in self.faces]


@dataclass(frozen=True)
class Fan:
    """Ordered rays of a (subdivided) fan in the first quadrant, with a
    source mark per ray: axis, face, or inserted."""

    vectors: tuple[WeightVector, ...]
    marks: tuple[str, ...]

    def __post_init__(self):
        if len(self.vectors) != len(self.marks):
            raise ValueError("one mark per vector")

    def is_regular(self) -> bool:
        return all(
            self.vectors[i].det(self.vectors[i + 1]) == 1
            for i in range(len(self.vectors) - 1)
        )

    def index_of(self, w: WeightVector) -> int:
        return self.vectors.index(w)


def _min_support(f) -> tuple[dict[tuple[int, int], Frac], int | None]:
    if isinstance(f, TruncBiPoly):
        return f.known_part().terms, f.trunc
    if isinstance(f, BiPoly):
        return f.terms, None
    raise TypeError(f"expected BiPoly or TruncBiPoly, got {type(f).__name__}")


def newton_boundary(f) -> NewtonData:
    """Compact faces of the Newton polygon of f at the origin.

    For a TruncBiPoly the boundary is certified only when the pure-u vertex
    sits at or below the truncation bound; otherwise unknown terms could
    still cut the hull, and that is a TruncationError.
    """
    terms, trunc = _min_support(f)
    if not terms:
        raise InconsistencyError("the zero germ has no Newton boundary")
    support = sorted(terms)
    # keep only points minimal in the product order; enough for the hull
    minimal = []
    for a, b in support:
        if not any(a2 <= a and b2 <= b and (a2, b2) != (a, b) for a2, b2 in support):
            minimal.append((a, b))
    minimal.sort()  # ascending a; b is then strictly descending
    # lower-left hull by cross products: walk from the v-axis-most point
    hull: list[tuple[int, int]] = []
    for pt in minimal:
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            # drop hull[-1] unless the walk turns counterclockwise there
            cross = (a2 - a1) * (pt[1] - b1) - (b2 - b1) * (pt[0] - a1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    if trunc is not None:
        u_axis = [a for a, b in terms if b == 0]
        if not u_axis or min(u_axis) > trunc:
            raise TruncationError(
                "Newton boundary not certified: no pure-u vertex within the "
                f"truncation bound {trunc}"
            )
    faces = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        da, db = a2 - a1, b1 - b2
        g = math.gcd(da, db)
        q, p = da // g, db // g
        weight = WeightVector(p, q)
        coeffs_desc = []
        for i in range(g + 1):
            coeffs_desc.append(terms.get((a1 + i * q, b1 - i * p), Frac(0)))
        face_coeffs = tuple(coeffs_desc[::-1])  # ascending in z
        factors = _factor_face(face_coeffs)
        faces.append(
            NewtonFace(
                left=(a1, b1),
                right=(a2, b2),
                weight=weight,
                steps=g,
                face_coeffs=face_coeffs,
                factors=factors,
            )
        )
    faces.sort(key=lambda fc: fc.slope)
    return NewtonData(vertices=tuple(hull), faces=tuple(faces))


def _factor_face(coeffs: tuple[Frac, ...]) -> tuple[FaceFactor, ...]:
    """Factor G(z) into irreducibles over Q; z never divides G because both
    end coefficients sit on boundary vertices."""
    import sympy

    z = sympy.Symbol("z")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * z**i for i, c in enumerate(coeffs)
    )
    poly = sympy.Poly(expr, z)
    if poly.degree() == 0:
        return ()
    _, factor_list = poly.factor_list()
    out = []
    for fac, mult in factor_list:
        fc = fac.all_coeffs()[::-1]
        out.append(
            FaceFactor(
                coeffs=tuple(Frac(c.p, c.q) for c in fc),
                multiplicity=int(mult),
            )
        )
    out.sort(key=lambda ff: (ff.degree, ff.coeffs))
    return tuple(out)


def face_function(f, face: NewtonFace) -> BiPoly:
    """The part of f supported on the given face."""
    terms, _ = _min_support(f)
    pts = set(face.lattice_points())
    return BiPoly({k: c for k, c in terms.items() if k in pts})


def weighted_order(f, w: WeightVector) -> int:
    """min of p*a + q*b over the support; the multiplicity of the pulled-back
    function along the divisor named by w."""
    terms, trunc = _min_support(f)
    if not terms:
        if trunc is not None:
            raise TruncationError(
                f"all terms lie above the truncation bound {trunc}"
            )
        raise InconsistencyError("weighted order of the zero germ")
    val = min(w.p * a + w.q * b for a, b in terms)
    # dropped terms have u-exponent above trunc, hence weighted degree at
    # least p*(trunc+1); below that the minimum is exact
    if trunc is not None and val > 0 and val >= w.p * (trunc + 1):
        raise TruncationError(
            f"weighted order ({val}) not certified at truncation {trunc}"
        )
    return val


def canonical_subdivision(vectors: list[WeightVector]) -> Fan:
    """Insert the minimal rays making every consecutive determinant +1.

    Input rays are sorted counterclockwise; the axes count as axis rays and
    everything else is marked as a face ray.  The result is the canonical
    regular subdivision (the inserted rays are the lattice points on the
    compact boundary of the convex hulls of the subcones).
    """
    def ccw_key(w: WeightVector):
        return Frac(w.q, w.p) if w.p else None

    uniq = sorted(set(vectors), key=lambda w: (w.p == 0, ccw_key(w) or 0))
    for a, b in zip(uniq, uniq[1:]):
        if a.det(b) <= 0:
            raise InconsistencyError(f"rays not strictly ordered: {a}, {b}")
    out: list[WeightVector] = []
    marks: list[str] = []

    def mark_of(w: WeightVector) -> str:
        return "axis" if w in (E1, E2) else "face"

    for i, w in enumerate(uniq):
        out.append(w)
        marks.append(mark_of(w))
        if i + 1 < len(uniq):
            for ins in _between(w, uniq[i + 1]):
                out.append(ins)
                marks.append("inserted")
    fan = Fan(tuple(out), tuple(marks))
    if not fan.is_regular():
        raise InconsistencyError("subdivision failed to reach determinant 1 throughout")
    return fan


def _between(P: WeightVector, Q: WeightVector) -> list[WeightVector]:
    inserted = []
    while P.det(Q) > 1:
        D = P.det(Q)
        g, a, b = _egcd(P.p, P.q)
        # det(P, X0) = p*x2 - q*x1 = 1 with X0 = (-b, a)
        x0 = (-b, a)
        base = x0[0] * Q.q - x0[1] * Q.p  # det(X0, Q)
        r = base % D
        if r == 0:
            raise InconsistencyError("degenerate subdivision step")
        t = (r - base) // D
        X = WeightVector(x0[0] + t * P.p, x0[1] + t * P.q)
        inserted.append(X)
        P = X
    return inserted


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def newton_number(f) -> int:
    """2V - a - b + 1 for a convenient germ: V is the area between the
    boundary and the axes, a and b the axis intercepts.  Equals the Milnor
    number when the boundary is non-degenerate."""
    nd = newton_boundary(f)
    verts = list(nd.vertices)
    if verts[0][0] != 0 or verts[-1][1] != 0:
        raise InconsistencyError(
            "newton_number needs a convenient germ (boundary meeting both axes)"
        )
    b_top = verts[0][1]
    a_right = verts[-1][0]
    ring = [(0, 0)] + verts
    twice_area = 0
    for (x1, y1), (x2, y2) in zip(ring, ring[1:] + ring[:1]):
        twice_area += x1 * y2 - x2 * y1
    V2 = abs(twice_area)
    return V2 - a_right - b_top + 1


def brieskorn_mu(p: int, q: int) -> int:
    """Milnor number of u^p + v^q."""
    if p < 1 or q < 1:
        raise ValueError("exponents must be positive")
    return (p - 1) * (q - 1)


# -- serialization -----------------------------------------------------


def fan_to_json(fan: Fan) -> str:
    data = {
        "rays": [list(w.as_pair()) for w in fan.vectors],
        "marks": list(fan.marks),
        "regular": fan.is_regular(),
    }
    return json.dumps(data, sort_keys=True)


def newton_to_json(nd: NewtonData) -> str:
    data = {
        "vertices": [list(v) for v in nd.vertices],
        "faces": [
            {
                "endpoints": [list(fc.left), list(fc.right)],
                "weight": list(fc.weight.as_pair()),
                "degenerate": fc.is_degenerate(),
                "face_polynomial": [
                    [str(c) for c in ff.coeffs] + [f"^{ff.multiplicity}"]
                    for ff in fc.factors
                ],
            }
            for fc in nd.faces
        ],
        "degenerate": nd.is_degenerate(),
    }
    return json.dumps(data, sort_keys=True)


def fan_to_dot(fan: Fan, name: str = "fan") -> str:
    """Dual graph of the exceptional chain as DOT text: consecutive rays
    meet, axes drawn as boxes."""
    lines = [f"graph {name} {{"]
    ids = []
    for i, (w, mark) in enumerate(zip(fan.vectors, fan.marks)):
        node = f"n{i}"
        ids.append(node)
        shape = "box" if mark == "axis" else ("ellipse" if mark == "face" else "circle")
        lines.append(f'  {node} [label="{w}" shape={shape}];')
    for a, b in zip(ids, ids[1:]):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines)
