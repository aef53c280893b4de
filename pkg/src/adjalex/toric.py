"""Toric modifications adapted to a Newton boundary, in two stages.

Stage one subdivides the face fan of the germ; each divisor gets the
multiplicity of the pulled-back function (its weighted order) and the
canonical multiplicity p+q-1.  A face root of multiplicity two or more marks
a point on the corresponding divisor where the strict transform is still
singular; stage two restarts the construction there, in the adapted chart,
after a contact translation.  Multiplicities compose linearly through the
chart, which is what makes the second-stage ledger cheap to fill in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction as Frac

from .branches import shift_tangent
from .exactpoly import (
    BiPoly,
    InconsistencyError,
    TruncBiPoly,
)
from .newton import (
    E1,
    E2,
    Fan,
    WeightVector,
    canonical_subdivision,
    newton_boundary,
    weighted_order,
)


def canonical_k(w: WeightVector) -> int:
    """Multiplicity of the canonical divisor along the w-divisor."""
    return w.p + w.q - 1


def chart_pullback_pair(f: BiPoly, P: WeightVector, N: WeightVector) -> tuple[int, BiPoly]:
    """Pull back through u = u1^P.p v1^N.p, v = u1^P.q v1^N.q (the chart of
    the cone spanned by P and N, which must have determinant one) and strip
    the exceptional power: f(chart) = u1^d * ftilde."""
    if P.det(N) != 1:
        raise InconsistencyError(f"chart cone {P},{N} is not regular")
    terms: dict[tuple[int, int], Frac] = {}
    for (a, b), c in f.terms.items():
        key = (P.p * a + P.q * b, N.p * a + N.q * b)
        terms[key] = terms.get(key, Frac(0)) + c
    terms = {k: c for k, c in terms.items() if c != 0}
    if not terms:
        raise InconsistencyError("zero germ in chart pull-back")
    d = min(a for a, _ in terms)
    return d, BiPoly({(a - d, b): c for (a, b), c in terms.items()})


@dataclass(frozen=True)
class StageTwoSite:
    """One singular point of the strict transform on a stage-one divisor:
    the divisor's weight P, the neighbour ray N fixing the chart, the
    coordinate gamma of the point, the contact translation h, the prepared
    germ there, and the subdivided fan of its boundary."""

    parent: WeightVector
    neighbour: WeightVector
    gamma: Frac
    h_steps: tuple[tuple[int, Frac], ...]
    parent_mult: int  # multiplicity of the pulled-back germ along parent
    germ: BiPoly | TruncBiPoly
    fan: Fan

    def transform(self, g) -> BiPoly | TruncBiPoly:
        """Strict transform of g at the site, in the translated coordinates
        used by the prepared germ."""
        if isinstance(g, TruncBiPoly):
            bound = self.parent.p * (g.trunc + 1)
            d, gt = chart_pullback_pair(g.known_part(), self.parent, self.neighbour)
            out = shift_tangent(gt, self.gamma, 0)
            for s, c in self.h_steps:
                out = shift_tangent(out, c, s)
            t2 = bound - d - 1
            if t2 < 0:
                raise InconsistencyError("transform entirely above truncation")
            return TruncBiPoly(out, t2)
        d, gt = chart_pullback_pair(g, self.parent, self.neighbour)
        out = shift_tangent(gt, self.gamma, 0)
        for s, c in self.h_steps:
            out = shift_tangent(out, c, s)
        return out

    def multiplicity(self, g, T: WeightVector) -> int:
        """m(g, T) for a stage-two ray T: the chart is monomial in u1, so
        the multiplicity splits as T.p * m(g, parent) + the weighted order
        of the transformed germ."""
        d = weighted_order(g, self.parent)
        return T.p * d + weighted_order(self.transform(g), T)

    def k_value(self, T: WeightVector) -> int:
        return canonical_k(T) + T.p * canonical_k(self.parent)


@dataclass(frozen=True)
class DivisorRecord:
    ray: WeightVector
    stage: int
    mark: str  # face | inserted
    m: int
    k: int
    site: int | None  # index into Resolution.sites for stage-two rows


@dataclass(frozen=True)
class Resolution:
    fan: Fan
    sites: tuple[StageTwoSite, ...]
    ledger: tuple[DivisorRecord, ...]

    def m_vector(self, stage: int | None = None) -> list[int]:
        return [r.m for r in self.ledger if stage is None or r.stage == stage]

    def k_vector(self, stage: int | None = None) -> list[int]:
        return [r.k for r in self.ledger if stage is None or r.stage == stage]


def build_resolution(f, contact_cap: int = 64) -> Resolution:
    """Two-stage toric resolution data for a germ.

    Rational double directions on faces get a stage-two site each; a
    direction that is both repeated and irrational, or a site whose prepared
    germ is still degenerate, is out of scope and raises."""
    nd = newton_boundary(f)
    if not nd.faces:
        raise InconsistencyError("germ is a monomial; nothing to resolve")
    rays = [E1] + [face.weight for face in nd.faces] + [E2]
    fan = canonical_subdivision(rays)
    records: list[DivisorRecord] = []
    for ray, mark in zip(fan.vectors, fan.marks):
        if mark == "axis":
            continue
        records.append(
            DivisorRecord(
                ray=ray,
                stage=1,
                mark=mark,
                m=weighted_order(f, ray),
                k=canonical_k(ray),
                site=None,
            )
        )
    sites: list[StageTwoSite] = []
    base = f.known_part() if isinstance(f, TruncBiPoly) else f
    for face in nd.faces:
        repeated = [ff for ff in face.factors if ff.multiplicity > 1]
        for ff in repeated:
            if ff.gamma is None:
                raise InconsistencyError(
                    "repeated irrational face direction; resolution out of scope"
                )
            P = face.weight
            N = fan.vectors[fan.index_of(P) + 1]
            d, ft = chart_pullback_pair(base, P, N)
            germ0 = shift_tangent(ft, ff.gamma, 0)
            if isinstance(f, TruncBiPoly):
                t2 = P.p * (f.trunc + 1) - d - 1
                if t2 < 0:
                    raise InconsistencyError("site germ entirely above truncation")
                germ0 = TruncBiPoly(germ0, t2)
            germ = germ0
            h_steps: list[tuple[int, Frac]] = []
            for _ in range(contact_cap):
                sub_nd = newton_boundary(germ)
                if not sub_nd.faces:
                    raise InconsistencyError(
                        "site germ is carried by the translated axis; the "
                        "input is not reduced there"
                    )
                if not sub_nd.is_degenerate():
                    break
                bad = [
                    (sf, sff)
                    for sf in sub_nd.faces
                    for sff in sf.factors
                    if sff.multiplicity > 1
                ]
                sf, sff = bad[0]
                if len(bad) > 1 or sf is not sub_nd.faces[-1] or sf.weight.p != 1:
                    raise InconsistencyError(
                        "site germ keeps a singular direction the translation "
                        "cannot follow; a third stage would be needed"
                    )
                if sff.gamma is None:
                    raise InconsistencyError(
                        "irrational repeated direction at a stage-two site"
                    )
                h_steps.append((sf.weight.q, sff.gamma))
                germ = shift_tangent(germ, sff.gamma, sf.weight.q)
            else:
                raise InconsistencyError("site translation exceeded its step cap")
            sub_rays = [E1] + [fc.weight for fc in sub_nd.faces] + [E2]
            site = StageTwoSite(
                parent=P,
                neighbour=N,
                gamma=ff.gamma,
                h_steps=tuple(h_steps),
                parent_mult=weighted_order(f, P),
                germ=germ,
                fan=canonical_subdivision(sub_rays),
            )
            idx = len(sites)
            sites.append(site)
            for ray, mark in zip(site.fan.vectors, site.fan.marks):
                if mark == "axis":
                    continue
                records.append(
                    DivisorRecord(
                        ray=ray,
                        stage=2,
                        mark=mark,
                        m=site.multiplicity(f, ray),
                        k=site.k_value(ray),
                        site=idx,
                    )
                )
    return Resolution(fan=fan, sites=tuple(sites), ledger=tuple(records))


# -- serialization -----------------------------------------------------


def resolution_to_json(res: Resolution) -> str:
    data = {
        "fan": [list(w.as_pair()) for w in res.fan.vectors],
        "marks": list(res.fan.marks),
        "sites": [
            {
                "parent": list(s.parent.as_pair()),
                "gamma": str(s.gamma),
                "translation": [[e, str(c)] for e, c in s.h_steps],
                "fan": [list(w.as_pair()) for w in s.fan.vectors],
            }
            for s in res.sites
        ],
        "ledger": [
            {
                "ray": list(r.ray.as_pair()),
                "stage": r.stage,
                "mark": r.mark,
                "m": r.m,
                "k": r.k,
                "site": r.site,
            }
            for r in res.ledger
        ],
    }
    return json.dumps(data, sort_keys=True)


def resolution_to_dot(res: Resolution, name: str = "resolution") -> str:
    """Dual graph: the stage-one chain, with each stage-two chain hanging
    off its parent divisor."""
    lines = [f"graph {name} {{"]
    ids: dict[tuple[int, int, int], str] = {}
    chain: list[str] = []
    for i, (w, mark) in enumerate(zip(res.fan.vectors, res.fan.marks)):
        node = f"a{i}"
        chain.append(node)
        shape = "box" if mark == "axis" else "ellipse"
        rec = next(
            (r for r in res.ledger if r.stage == 1 and r.ray == w), None
        )
        label = f"{w}" if rec is None else f"{w} m={rec.m} k={rec.k}"
        lines.append(f'  {node} [label="{label}" shape={shape}];')
        ids[(1, 0, i)] = node
    for a, b in zip(chain, chain[1:]):
        lines.append(f"  {a} -- {b};")
    for si, site in enumerate(res.sites):
        parent_idx = res.fan.index_of(site.parent)
        sub: list[str] = []
        for j, (w, mark) in enumerate(zip(site.fan.vectors, site.fan.marks)):
            if mark == "axis":
                continue
            node = f"s{si}_{j}"
            sub.append(node)
            rec = next(
                r
                for r in res.ledger
                if r.stage == 2 and r.site == si and r.ray == w
            )
            lines.append(
                f'  {node} [label="{w} m={rec.m} k={rec.k}" shape=circle];'
            )
        for a, b in zip(sub, sub[1:]):
            lines.append(f"  {a} -- {b};")
        if sub:
            lines.append(f"  {ids[(1, 0, parent_idx)]} -- {sub[0]} [style=dashed];")
    lines.append("}")
    return "\n".join(lines)
