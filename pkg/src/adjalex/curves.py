"""Degree-10 curves of torus type f2^5 + f5^2 and their local models.

Two named families are built in.  Both compose a smooth conic f2 with a
quintic f5 tuned so that the only singular point is the origin, where the
conic branch has high contact with the quintic.  The families differ in how
far that contact goes: the first keeps the contact order at 5 and produces
a germ equisingular to v^5 + u^10 v^2 + u^25, the second pushes it to 7 and
produces a germ whose boundary carries a face of weight (2, 29).

The local model at the origin is computed by a coordinate change
v -> v + phi(u) along the conic branch.  phi can be supplied explicitly or
found automatically by a greedy contact search: at each degree m the search
reads off the candidate corrections from the (1, m)-weighted face of the
current germ, keeps the one that raises the pure-u valuation the most, and
stops once the boundary vertices survive three consecutive degrees
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Frac
from typing import Mapping

from .alexander import Analyzer, GlobalCurve, LocalPoint
from .branches import reduced_part
from .exactpoly import (
    DEFAULT_TRUNC,
    BiPoly,
    InconsistencyError,
    TruncBiPoly,
    TruncSeries,
    TruncationError,
    poly_str,
    substitute_shift,
)
from .newton import (
    NewtonData,
    WeightVector,
    _factor_face,
    newton_boundary,
    weighted_order,
)

__all__ = [
    "TorusCurveSpec",
    "LocalModel",
    "torus_compose",
    "family_instance",
    "family_names",
    "local_model",
    "global_curve",
    "five_conic_configuration",
    "spec_to_json_dict",
    "model_to_json_dict",
]


# -- coefficient tables -------------------------------------------------
#
# Each entry maps a monomial x^i y^j to a sum of terms
# (rational factor, ((parameter, exponent), ...)).

Terms = tuple[tuple[Frac, tuple[tuple[str, int], ...]], ...]

F2_TERMS: dict[tuple[int, int], Terms] = {
    (0, 1): ((Frac(1), ()),),
    (2, 0): ((Frac(1), (("a20", 1),)),),
    (1, 1): ((Frac(1), (("a11", 1),)),),
    (0, 2): ((Frac(1), (("a02", 1),)),),
}

# Contact order 5: the quintic follows the conic to order 5 and then breaks
# away with a fresh y^4-vertex (parameter b04).
F5_TERMS_CONTACT5: dict[tuple[int, int], Terms] = {
    (0, 5): ((Frac(1), (("b05", 1),)),),
    (1, 4): (
        (Frac(1), (("a02", 2), ("b12", 1))),
        (Frac(1), (("a11", 1), ("b04", 1))),
    ),
    (0, 4): ((Frac(1), (("b04", 1),)),),
    (2, 3): (
        (Frac(2), (("a02", 1), ("a11", 1), ("b12", 1))),
        (Frac(1), (("a20", 1), ("b04", 1))),
    ),
    (1, 3): ((Frac(2), (("a02", 1), ("b12", 1))),),
    (3, 2): (
        (Frac(2), (("a20", 1), ("a02", 1), ("b12", 1))),
        (Frac(1), (("a11", 2), ("b12", 1))),
    ),
    (2, 2): ((Frac(2), (("a11", 1), ("b12", 1))),),
    (1, 2): ((Frac(1), (("b12", 1),)),),
    (4, 1): ((Frac(2), (("a11", 1), ("a20", 1), ("b12", 1))),),
    (3, 1): ((Frac(2), (("a20", 1), ("b12", 1))),),
    (5, 0): ((Frac(1), (("a20", 2), ("b12", 1))),),
}

# Contact order 7: no b04 term; the y^2-row and lower rows pick up the
# 1/27-corrections that cancel the would-be order-5 and order-6 breaks.
F5_TERMS_CONTACT7: dict[tuple[int, int], Terms] = {
    (0, 5): ((Frac(1), (("b05", 1),)),),
    (1, 4): ((Frac(1), (("a02", 2), ("b12", 1))),),
    (2, 3): ((Frac(2), (("a02", 1), ("a11", 1), ("b12", 1))),),
    (1, 3): ((Frac(2), (("a02", 1), ("b12", 1))),),
    (3, 2): (
        (Frac(4, 27), (("a02", 1), ("b12", 3))),
        (Frac(2), (("a02", 1), ("a20", 1), ("b12", 1))),
        (Frac(1), (("a11", 2), ("b12", 1))),
    ),
    (2, 2): ((Frac(2), (("a11", 1), ("b12", 1))),),
    (1, 2): ((Frac(1), (("b12", 1),)),),
    (4, 1): (
        (Frac(4, 27), (("a11", 1), ("b12", 3))),
        (Frac(2), (("a11", 1), ("a20", 1), ("b12", 1))),
    ),
    (3, 1): (
        (Frac(4, 27), (("b12", 3),)),
        (Frac(2), (("a20", 1), ("b12", 1))),
    ),
    (5, 0): (
        (Frac(1), (("a20", 2), ("b12", 1))),
        (Frac(4, 27), (("a20", 1), ("b12", 3))),
    ),
}


@dataclass(frozen=True)
class Predicate:
    """A polynomial condition on the parameters.  severity "hard" means the
    construction is invalid on the zero locus (the composition degenerates);
    "stratum" means the curve stays in the family but acquires a line
    component, so the instance is only flagged as reducible."""

    name: str
    terms: Terms
    severity: str
    note: str

    def value(self, params: Mapping[str, Frac]) -> Frac:
        return _eval_terms(self.terms, params)


@dataclass(frozen=True)
class FamilyData:
    param_names: tuple[str, ...]
    f5_terms: dict[tuple[int, int], Terms]
    predicates: tuple[Predicate, ...]
    face_weights: tuple[tuple[int, int], ...]
    degenerate_faces: tuple[bool, ...]
    contact_order: int


FAMILIES: dict[str, FamilyData] = {
    "B9sq_B52_B21": FamilyData(
        param_names=("a20", "a11", "a02", "b05", "b04", "b12"),
        f5_terms=F5_TERMS_CONTACT5,
        predicates=(
            Predicate(
                "a20",
                ((Frac(1), (("a20", 1),)),),
                "hard",
                "the conic must have a genuine x^2 term",
            ),
            Predicate(
                "b12",
                ((Frac(1), (("b12", 1),)),),
                "hard",
                "the quintic must leave the conic at order 5 on the v^2 row",
            ),
            Predicate(
                "b05 - a02*b04",
                (
                    (Frac(1), (("b05", 1),)),
                    (Frac(-1), (("a02", 1), ("b04", 1))),
                ),
                "hard",
                "on this locus f2 divides f5, so f2^2 divides the "
                "composition and the curve is non-reduced",
            ),
            Predicate(
                "a20 + b12^2",
                (
                    (Frac(1), (("a20", 1),)),
                    (Frac(1), (("b12", 2),)),
                ),
                "stratum",
                "the line y = 0 splits off as a component",
            ),
        ),
        face_weights=((1, 2), (2, 9)),
        degenerate_faces=(False, True),
        contact_order=5,
    ),
    "B292_B21_B52": FamilyData(
        param_names=("a20", "a11", "a02", "b05", "b12"),
        f5_terms=F5_TERMS_CONTACT7,
        predicates=(
            Predicate(
                "a20",
                ((Frac(1), (("a20", 1),)),),
                "hard",
                "the conic must have a genuine x^2 term",
            ),
            Predicate(
                "b12",
                ((Frac(1), (("b12", 1),)),),
                "hard",
                "the quintic must leave the conic on the v^2 row",
            ),
            Predicate(
                "9*a20 + 4*b12^2",
                (
                    (Frac(9), (("a20", 1),)),
                    (Frac(4), (("b12", 2),)),
                ),
                "hard",
                "the double tangent factor collides with the conic and the "
                "composition is non-reduced",
            ),
            Predicate(
                "9*a20 + b12^2",
                (
                    (Frac(9), (("a20", 1),)),
                    (Frac(1), (("b12", 2),)),
                ),
                "stratum",
                "the line y = 0 splits off as a component",
            ),
        ),
        face_weights=((1, 2), (2, 29)),
        degenerate_faces=(True, False),
        contact_order=7,
    ),
}


def family_names() -> tuple[str, ...]:
    return tuple(FAMILIES)


def _eval_terms(terms: Terms, params: Mapping[str, Frac]) -> Frac:
    total = Frac(0)
    for factor, powers in terms:
        val = factor
        for name, exp in powers:
            val *= params[name] ** exp
        total += val
    return total


def _poly_from_table(
    table: dict[tuple[int, int], Terms], params: Mapping[str, Frac]
) -> BiPoly:
    return BiPoly(
        {
            mono: c
            for mono, terms in table.items()
            if (c := _eval_terms(terms, params)) != 0
        }
    )


# -- specs --------------------------------------------------------------


@dataclass(frozen=True)
class TorusCurveSpec:
    """A composed curve f = f2^5 + f5^2 with its building blocks.  family
    and params are None for ad-hoc compositions."""

    f2: BiPoly
    f5: BiPoly
    f: BiPoly
    family: str | None = None
    params: dict[str, Frac] | None = None
    reducible: bool = False
    notes: tuple[str, ...] = ()


def _poly_pow(f: BiPoly, n: int) -> BiPoly:
    out = BiPoly({(0, 0): Frac(1)})
    for _ in range(n):
        out = out * f
    return out


def torus_compose(f2: BiPoly, f5: BiPoly) -> BiPoly:
    """f2^5 + f5^2 with the degree and reducedness preconditions.  The
    square-free check catches hidden degenerations such as f2 dividing f5,
    which puts f2^2 in front of the composition."""
    if not f2.terms:
        raise ValueError("f2 = 0 makes the composition the non-reduced f5^2")
    if not f5.terms:
        raise ValueError("f5 = 0 makes the composition the non-reduced f2^5")
    if f2.total_degree() > 2:
        raise ValueError(f"f2 must have degree <= 2, got {f2.total_degree()}")
    if f5.total_degree() > 5:
        raise ValueError(f"f5 must have degree <= 5, got {f5.total_degree()}")
    f = _poly_pow(f2, 5) + _poly_pow(f5, 2)
    _, dropped = reduced_part(f)
    if dropped:
        raise ValueError(
            "the composition f2^5 + f5^2 has a repeated factor; "
            "these parameter values fall outside the reduced family"
        )
    return f


def family_instance(
    family: str, params: Mapping[str, object] | None = None
) -> TorusCurveSpec:
    """Instantiate a named family.  Unassigned parameters default to 1.
    Zero values of a hard predicate raise; zero values of a stratum
    predicate only mark the instance reducible."""
    try:
        data = FAMILIES[family]
    except KeyError:
        raise ValueError(
            f"unknown family {family!r}; choose from {', '.join(FAMILIES)}"
        ) from None
    values: dict[str, Frac] = {name: Frac(1) for name in data.param_names}
    for key, raw in (params or {}).items():
        if key not in values:
            raise ValueError(
                f"unknown parameter {key!r} for {family}; "
                f"valid names: {', '.join(data.param_names)}"
            )
        values[key] = Frac(raw)

    reducible = False
    notes: list[str] = []
    for pred in data.predicates:
        if pred.value(values) != 0:
            continue
        if pred.severity == "hard":
            raise ValueError(
                f"{family} needs {pred.name} != 0: {pred.note}"
            )
        reducible = True
        notes.append(f"{pred.name} = 0: {pred.note}")

    f2 = _poly_from_table(F2_TERMS, values)
    f5 = _poly_from_table(data.f5_terms, values)
    return TorusCurveSpec(
        f2=f2,
        f5=f5,
        f=torus_compose(f2, f5),
        family=family,
        params=values,
        reducible=reducible,
        notes=tuple(notes),
    )


# -- automatic contact search -------------------------------------------


def _pure_u_valuation(tb: TruncBiPoly) -> int | None:
    vals = [a for (a, b) in tb.known_part().terms if b == 0]
    return min(vals) if vals else None


def _shift_candidates(tb: TruncBiPoly, m: int) -> list[Frac]:
    """Nonzero rational roots of the (1, m)-weighted face slice of the
    germ: the corrections c u^m that can move the pure-u valuation."""
    level = weighted_order(tb, WeightVector(1, m))
    slice_coeffs: dict[int, Frac] = {}
    for (a, b), c in tb.known_part().terms.items():
        if a + m * b == level:
            slice_coeffs[b] = slice_coeffs.get(b, Frac(0)) + c
    top = max(slice_coeffs)
    if top == 0:
        return []
    coeffs = tuple(slice_coeffs.get(i, Frac(0)) for i in range(top + 1))
    return sorted(
        {
            fac.gamma
            for fac in _factor_face(coeffs)
            if fac.degree == 1 and fac.gamma != 0
        }
    )


def _contact_dfs(
    cur: TruncBiPoly, m: int, stall: int, bound: int
) -> tuple[int, dict[int, Frac]]:
    """Depth-first contact search from degree m on.  Among the corrections
    that raise the pure-u valuation the most at this degree, the one whose
    continuation reaches the deepest final contact wins.  Three consecutive
    degrees without an accepted correction end the branch."""
    if stall >= 3:
        v = _pure_u_valuation(cur)
        return (bound + 1 if v is None else v), {}
    if m > bound:
        raise TruncationError(
            f"contact search did not stabilize below degree {bound}; "
            "raise the order or supply phi explicitly"
        )
    v0 = _pure_u_valuation(cur)
    floor = bound + 1 if v0 is None else v0
    scored = []
    for c in _shift_candidates(cur, m):
        probe = substitute_shift(
            cur.known_part(), TruncSeries.from_map({m: c}, bound)
        )
        v = _pure_u_valuation(probe)
        val = bound + 1 if v is None else v
        if val > floor:
            scored.append((val, c, probe))
    if not scored:
        return _contact_dfs(cur, m + 1, stall + 1, bound)
    top = max(val for val, _, _ in scored)
    best: tuple[int, dict[int, Frac]] | None = None
    for val, c, probe in scored:
        if val != top:
            continue
        final, tail = _contact_dfs(probe, m + 1, 0, bound)
        if best is None or final > best[0]:
            best = (final, {m: c, **tail})
    return best


def _auto_phi(f: BiPoly, bound: int) -> TruncSeries:
    """Maximal-contact coordinate change for a germ tangent to v = 0,
    found degree by degree; see _contact_dfs for the acceptance rule."""
    _, phi_map = _contact_dfs(TruncBiPoly(f, bound), 2, 0, bound)
    return TruncSeries.from_map(phi_map, bound)


# -- local models -------------------------------------------------------


@dataclass(frozen=True)
class LocalModel:
    """The germ of the curve at the origin after v -> v + phi(u), together
    with the image psi of the conic factor along phi and the derived face
    constants."""

    spec: TorusCurveSpec
    phi: TruncSeries
    germ: TruncBiPoly
    psi: TruncSeries
    boundary: NewtonData
    constants: dict[str, Frac]


def _u_slice(tb: TruncBiPoly) -> TruncSeries:
    row = {a: c for (a, b), c in tb.known_part().terms.items() if b == 0}
    return TruncSeries.from_map(row, tb.trunc)


def _face_roots(face) -> list[tuple[Frac, int]]:
    out = []
    for fac in face.factors:
        if fac.degree != 1:
            raise InconsistencyError(
                "expected rational face roots, got an irreducible block "
                f"of degree {fac.degree}"
            )
        out.append((fac.gamma, fac.multiplicity))
    return out


def local_model(
    spec: TorusCurveSpec,
    phi: TruncSeries | None = None,
    order: int | None = None,
) -> LocalModel:
    """Local model at the origin.  phi defaults to the automatic contact
    search; for a named family the boundary is certified against the
    family's face data and the derived constants are extracted."""
    bound = DEFAULT_TRUNC if order is None else order
    if phi is None:
        phi = _auto_phi(spec.f, bound)
    germ = substitute_shift(spec.f, phi)
    if not any(b == 0 for _, b in germ.known_part().terms):
        raise InconsistencyError(
            "the maximal-contact branch v = phi(u) is a component of the "
            "curve within the truncation bound; a transverse local model "
            "needs the contact to stay finite"
        )
    psi = _u_slice(substitute_shift(spec.f2, phi))
    boundary = newton_boundary(germ)
    constants: dict[str, Frac] = {}

    if spec.family is not None:
        data = FAMILIES[spec.family]
        got = tuple(w.as_pair() for w in boundary.weights())
        if got != data.face_weights:
            raise InconsistencyError(
                f"{spec.family}: expected faces of weight "
                f"{data.face_weights}, got {got}"
            )
        flags = tuple(f.is_degenerate() for f in boundary.faces)
        if flags != data.degenerate_faces:
            raise InconsistencyError(
                f"{spec.family}: face degeneracy {flags} does not match "
                f"the family pattern {data.degenerate_faces}"
            )
        b12 = spec.params["b12"]
        if spec.family == "B9sq_B52_B21":
            constants["c1"] = psi.coeff(5) if psi.order >= 5 else Frac(0)
            f5_row = _u_slice(substitute_shift(spec.f5, phi))
            c2 = f5_row.coeff(10)
            if c2 == 0:
                raise InconsistencyError(
                    "the quintic image lost its u^10 term; the germ left "
                    "the family topology"
                )
            constants["c2"] = c2
            roots = _face_roots(boundary.faces[1])
            if roots != [(-c2 / b12, 2)]:
                raise InconsistencyError(
                    "the steep face does not carry the expected double "
                    "root -c2/b12"
                )
            shallow = _face_roots(boundary.faces[0])
            if shallow != [(-(b12**2), 1)]:
                raise InconsistencyError(
                    "the weight-(1,2) face does not carry the single root "
                    "-b12^2"
                )
        else:
            if psi.valuation() != 7:
                raise InconsistencyError(
                    "the conic image must have valuation 7, got "
                    f"{psi.valuation()}"
                )
            beta7 = psi.coeff(7)
            constants["beta7"] = beta7
            f5_row = _u_slice(substitute_shift(spec.f5, phi))
            constants["c4"] = f5_row.coeff(18)
            roots = dict()
            for gamma, mult in _face_roots(boundary.faces[0]):
                roots[mult] = gamma
            if set(roots) != {1, 2}:
                raise InconsistencyError(
                    "the weight-(1,2) face must factor into one simple and "
                    "one double tangent direction"
                )
            d1, d2 = -roots[1], -roots[2]
            if d2 != Frac(4, 9) * b12**2:
                raise InconsistencyError(
                    f"double tangent constant {d2} != 4*b12^2/9"
                )
            constants["d1"] = d1
            constants["d2"] = d2
            steep = _face_roots(boundary.faces[1])
            expect = -(beta7**5) / (d1 * d2**2)
            if steep != [(expect, 1)]:
                raise InconsistencyError(
                    "the weight-(2,29) face does not match the vertex "
                    "constants beta7^5 and d1*d2^2"
                )
    return LocalModel(
        spec=spec,
        phi=phi,
        germ=germ,
        psi=psi,
        boundary=boundary,
        constants=constants,
    )


# -- global curves ------------------------------------------------------


def global_curve(
    model: LocalModel,
    r: int | None = None,
    irreducible: bool = False,
    injectivity_asserted: bool = False,
) -> GlobalCurve:
    """Wrap a local model as a one-point degree-10 curve ready for level
    computations."""
    d = model.spec.f.total_degree()
    analyzer = Analyzer(model.germ, d)
    point = LocalPoint(analyzer, (Frac(0), Frac(0)), model.phi)
    return GlobalCurve(
        d=d,
        points=(point,),
        r=r,
        f=model.spec.f,
        irreducible=irreducible,
        injectivity_asserted=injectivity_asserted,
    )


def five_conic_configuration(
    ts: tuple[object, ...] = (1, 2, 3, 4, 5), order: int | None = None
) -> GlobalCurve:
    """The union of the conics y = x^2 + t y^2 for the given distinct
    nonzero values of t.  All of them touch the line y = 0 at the origin
    with contact 2, so after v -> v + u^2 the union has a single germ with
    one nondegenerate face of weight (1, 4)."""
    values = [Frac(t) for t in ts]
    if len(set(values)) != len(values):
        raise ValueError("the conic parameters must be distinct")
    if any(v == 0 for v in values):
        raise ValueError("t = 0 degenerates the conic to a parabola through "
                         "the line at infinity twice; choose t != 0")
    bound = DEFAULT_TRUNC if order is None else order
    f = BiPoly({(0, 0): Frac(1)})
    for t in values:
        f = f * BiPoly({(0, 1): Frac(1), (2, 0): Frac(-1), (0, 2): -t})
    phi = TruncSeries.from_map({2: Frac(1)}, bound)
    germ = substitute_shift(f, phi).known_part()
    analyzer = Analyzer(germ, 2 * len(values))
    point = LocalPoint(analyzer, (Frac(0), Frac(0)), phi)
    return GlobalCurve(
        d=2 * len(values),
        points=(point,),
        r=len(values),
        f=f,
        irreducible=False,
    )


# -- serialization ------------------------------------------------------


def spec_to_json_dict(spec: TorusCurveSpec) -> dict:
    out = {
        "f2": poly_str(spec.f2),
        "f5": poly_str(spec.f5),
        "f": poly_str(spec.f),
        "reducible": spec.reducible,
        "notes": list(spec.notes),
    }
    if spec.family is not None:
        out["family"] = spec.family
        out["params"] = {k: str(v) for k, v in sorted(spec.params.items())}
    return out


def model_to_json_dict(model: LocalModel) -> dict:
    phi_terms = {
        str(e): str(c)
        for e, c in enumerate(model.phi.coeffs)
        if c != 0
    }
    return {
        "phi": phi_terms,
        "phi_order": model.phi.order,
        "germ_vertices": [list(v) for v in model.boundary.vertices],
        "face_weights": [list(w.as_pair()) for w in model.boundary.weights()],
        "constants": {k: str(v) for k, v in sorted(model.constants.items())},
    }
