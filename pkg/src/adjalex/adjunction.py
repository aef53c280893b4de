"""Adjunction-type membership along a resolved germ, and the quotient data
the polynomial assembly needs.

A germ g belongs to the level-k ideal when, along every marked divisor W of
the two-stage resolution (the face rays, stage one and stage two), its
multiplicity clears

    m(g, W)  >=  floor(k * m(f, W) / degree) - k(W).

On monomials every such condition is linear in the exponents, so the
monomial members form a staircase ideal.  When the boundary is degenerate
the ideal picks up finitely many extra generators: multiples of the face
binomial of the repeated direction and of its refinements, each refinement
cancelling the lowest exceptional obstruction of the transform at the
stage-two site.  rho(k) is the codimension of the ideal in the local ring,
computed from an exact linear system over the monomial window below the
stability degree; rho_by_rank is a second, generator-free route to the
same number, used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Frac

from .branches import orders_along_branches, puiseux_branches, shift_tangent
from .exactpoly import (
    BiPoly,
    InconsistencyError,
    TruncBiPoly,
    grlex_key,
    poly_str,
)
from .newton import WeightVector, weighted_order
from .toric import Resolution, build_resolution, chart_pullback_pair

Mono = tuple[int, int]


@dataclass(frozen=True)
class Condition:
    """One membership inequality: the divisor's ray, the stage it lives on,
    m(f, ray) and the canonical multiplicity k(ray)."""

    stage: int
    ray: WeightVector
    site: int | None
    m_f: int
    k_can: int

    def required(self, k: int, degree: int) -> int:
        return (k * self.m_f) // degree - self.k_can


@dataclass(frozen=True)
class ExtraGenerator:
    """A non-monomial generator u^a v^b * chain[level]."""

    cofactor: Mono
    level: int
    poly: BiPoly


@dataclass(frozen=True)
class AdjunctionIdeal:
    k: int
    thresholds: tuple[tuple[Condition, int], ...]
    monomial_gens: tuple[Mono, ...]
    extras: tuple[ExtraGenerator, ...]
    staircase_count: int
    rho: int
    window: int  # every monomial of total degree >= window is a member
    window_monomials: tuple[Mono, ...]
    member_monomials: frozenset[Mono]
    # reduced rows of the non-monomial part of the ideal inside the window,
    # keyed by pivot monomial; the stored row omits its pivot
    rref_rows: tuple[tuple[Mono, dict], ...]

    def generator_polys(self) -> list[BiPoly]:
        out = [BiPoly.monomial(a, b) for a, b in self.monomial_gens]
        out.extend(e.poly for e in self.extras)
        return out

    def reduce_window_vector(self, vec: dict) -> dict:
        """Remainder of a window-supported coefficient vector modulo the
        ideal: member monomials drop, then the reduced rows eliminate."""
        out = {
            m: c for m, c in vec.items() if c and m not in self.member_monomials
        }
        for pivot, row in self.rref_rows:
            c = out.pop(pivot, Frac(0))
            if c:
                for m, rc in row.items():
                    nc = out.get(m, Frac(0)) - c * rc
                    if nc:
                        out[m] = nc
                    else:
                        out.pop(m, None)
        return out


def _eliminate(row: dict, rows: list[tuple], keyfn) -> dict:
    """Reduce a {coordinate: coeff} row by stored (pivot, row) pairs whose
    stored rows omit their pivots."""
    for pivot, other in rows:
        c = row.pop(pivot, Frac(0))
        if c:
            for m, rc in other.items():
                nc = row.get(m, Frac(0)) - c * rc
                if nc:
                    row[m] = nc
                else:
                    row.pop(m, None)
    return row


def _insert_row(row: dict, rows: list[tuple], keyfn=grlex_key) -> bool:
    """Gaussian step: reduce, pick the least coordinate as pivot, normalize,
    back-substitute.  Returns False when the row reduces to zero."""
    row = _eliminate(row, rows, keyfn)
    if not row:
        return False
    pivot = min(row, key=keyfn)
    lead = row.pop(pivot)
    row = {m: c / lead for m, c in row.items()}
    for _, other in rows:
        c = other.pop(pivot, Frac(0))
        if c:
            for m, rc in row.items():
                nc = other.get(m, Frac(0)) - c * rc
                if nc:
                    other[m] = nc
                else:
                    other.pop(m, None)
    rows.append((pivot, row))
    rows.sort(key=lambda pr: keyfn(pr[0]))
    return True


class Analyzer:
    """Membership, generators, rho and iota for one resolved germ of a
    projective curve of the given degree."""

    def __init__(self, f, degree: int, resolution: Resolution | None = None):
        self.f = f
        self.degree = degree
        self.res = resolution if resolution is not None else build_resolution(f)
        self.conditions: tuple[Condition, ...] = tuple(
            Condition(rec.stage, rec.ray, rec.site, rec.m, rec.k)
            for rec in self.res.ledger
            if rec.mark == "face"
        )
        self.chains: tuple[tuple[BiPoly, ...], ...] = tuple(
            self._refinement_chain(i) for i in range(len(self.res.sites))
        )

    # -- multiplicities and membership ---------------------------------

    def multiplicity(self, g, cond: Condition) -> int:
        if cond.stage == 1:
            return weighted_order(g, cond.ray)
        return self.res.sites[cond.site].multiplicity(g, cond.ray)

    def monomial_functional(self, cond: Condition) -> tuple[int, int]:
        """m(u^a v^b, cond) = cp*a + cq*b: the transform of a monomial is a
        unit at the site, so only the exceptional power contributes."""
        if cond.stage == 1:
            return (cond.ray.p, cond.ray.q)
        P = self.res.sites[cond.site].parent
        return (cond.ray.p * P.p, cond.ray.p * P.q)

    def is_member(self, g, k: int) -> bool:
        for cond in self.conditions:
            t = cond.required(k, self.degree)
            if t > 0 and self.multiplicity(g, cond) < t:
                return False
        return True

    def _alpha_min(self, beta: int, k: int) -> int:
        need = 0
        for cond in self.conditions:
            t = cond.required(k, self.degree)
            if t <= 0:
                continue
            cp, cq = self.monomial_functional(cond)
            rest = t - cq * beta
            if rest > 0:
                need = max(need, -(-rest // cp))
        return need

    def staircase(self, k: int) -> tuple[list[Mono], int, int]:
        """Minimal monomial generators, the count of non-member monomials,
        and the stability degree of the level-k staircase."""
        gens: list[Mono] = []
        count = 0
        window = 0
        beta = 0
        prev = None
        while True:
            a = self._alpha_min(beta, k)
            if prev is None or a < prev:
                gens.append((a, beta))
                prev = a
            count += a
            if a:
                window = max(window, a + beta)
            if a == 0:
                break
            beta += 1
        return gens, count, window

    # -- refinement chains at the stage-two sites -----------------------

    def _site_transform_full(self, g: BiPoly, site_idx: int) -> BiPoly:
        """Pull g through the site chart and translations WITHOUT stripping
        the exceptional power, so the map stays linear in g."""
        site = self.res.sites[site_idx]
        d, gt = chart_pullback_pair(g, site.parent, site.neighbour)
        out = gt * BiPoly.monomial(d, 0)
        out = shift_tangent(out, site.gamma, 0)
        for s, c in site.h_steps:
            out = shift_tangent(out, c, s)
        return out

    def _refinement_chain(self, site_idx: int) -> tuple[BiPoly, ...]:
        site = self.res.sites[site_idx]
        P = site.parent
        c = BiPoly({(0, P.p): Frac(1), (P.q, 0): -site.gamma})
        delta = P.p * P.q
        site_faces = [
            w for w, mark in zip(site.fan.vectors, site.fan.marks) if mark == "face"
        ]
        chain = [c]
        for _ in range(64):
            ct = site.transform(c)
            if isinstance(ct, TruncBiPoly):
                ct = ct.known_part()
            pure = sorted(a for (a, b) in ct.terms if b == 0)
            if not pure:
                break
            a0 = pure[0]
            mixed = [(a, b) for (a, b) in ct.terms if b > 0]
            if not mixed:
                raise InconsistencyError("site transform lost its transverse part")
            useful = any(
                S.p * a0 < min(S.p * a + S.q * b for a, b in mixed)
                for S in site_faces
            )
            if not useful:
                break
            # cancel the u1^a0 obstruction with a monomial of P-order
            # delta + a0, taking the least v-power that fits
            target = delta + a0
            beta = (target * pow(P.q, -1, P.p)) % P.p if P.p > 1 else 0
            if P.q * beta > target:
                break
            alpha = (target - P.q * beta) // P.p
            mono = BiPoly.monomial(alpha, beta)
            mt = site.transform(mono)
            if isinstance(mt, TruncBiPoly):
                mt = mt.known_part()
            # mono's transform is stripped by its own chart order, which
            # exceeds the chain's by exactly a0, so the matching
            # coefficient is its constant term
            tau = mt.coeff(0, 0)
            if tau == 0:
                raise InconsistencyError("obstruction monomial degenerated")
            c = c - mono.scale(ct.coeff(a0, 0) / tau)
            chain.append(c)
        return tuple(chain)

    # -- the ideal at one level -----------------------------------------

    def ideal(self, k: int) -> AdjunctionIdeal:
        thresholds = tuple(
            (cond, cond.required(k, self.degree)) for cond in self.conditions
        )
        mono_gens, count, window = self.staircase(k)
        window_monos = sorted(
            ((s - j, j) for s in range(window) for j in range(s + 1)),
            key=grlex_key,
        )
        funcs = [
            (self.monomial_functional(cond), t) for cond, t in thresholds if t > 0
        ]
        member = frozenset(
            (a, b)
            for a, b in window_monos
            if all(cp * a + cq * b >= t for (cp, cq), t in funcs)
        )
        if len(window_monos) - len(member) != count:
            raise InconsistencyError("staircase count disagrees with its window")

        rows: list[tuple[Mono, dict]] = []

        def project(poly: BiPoly) -> dict:
            return {
                m: c
                for m, c in poly.terms.items()
                if m[0] + m[1] < window and m not in member
            }

        def add_products(poly: BiPoly) -> None:
            low = poly.min_degree()
            for s in range(max(0, window - low)):
                for j in range(s + 1):
                    row = project(poly * BiPoly.monomial(s - j, j))
                    if row:
                        _insert_row(row, rows)

        extras: list[ExtraGenerator] = []
        candidates: list[tuple[Mono, Mono, int, int]] = []
        for si, chain in enumerate(self.chains):
            for level, cpoly in enumerate(chain):
                low = cpoly.min_degree()
                lead = min(cpoly.terms, key=grlex_key)
                for s in range(max(0, window - low)):
                    for j in range(s + 1):
                        m = (s - j, j)
                        candidates.append(
                            ((m[0] + lead[0], m[1] + lead[1]), m, si, level)
                        )
        candidates.sort(key=lambda t: (grlex_key(t[0]), t[2], t[3]))
        for _, cof, si, level in candidates:
            e = self.chains[si][level] * BiPoly.monomial(*cof)
            if not self.is_member(e, k):
                continue
            row = project(e)
            if not row:
                continue
            if _insert_row(row, rows):
                extras.append(ExtraGenerator(cof, level, e))
                add_products(e)

        rho = count - len(rows)
        extras.sort(key=lambda e: (e.cofactor[1], -e.cofactor[0], e.level))
        return AdjunctionIdeal(
            k=k,
            thresholds=thresholds,
            monomial_gens=tuple(mono_gens),
            extras=tuple(extras),
            staircase_count=count,
            rho=rho,
            window=window,
            window_monomials=tuple(window_monos),
            member_monomials=member,
            rref_rows=tuple(rows),
        )

    def rho_by_rank(self, k: int) -> int:
        """Generator-free route to rho: the rank of the linear system the
        membership conditions impose on the monomial window.  Stage-two
        conditions act through the full (non-stripped) chart pull-back,
        which is linear in the germ, so each condition kills a block of
        coefficient functionals of the transformed window monomials."""
        _, count, window = self.staircase(k)
        window_monos = [(s - j, j) for s in range(window) for j in range(s + 1)]
        if not window_monos:
            return 0
        index = {m: i for i, m in enumerate(window_monos)}
        func_rows: list[dict] = []
        for cond in self.conditions:
            t = cond.required(k, self.degree)
            if t <= 0:
                continue
            if cond.stage == 1:
                w = cond.ray
                for (a, b), i in index.items():
                    if w.p * a + w.q * b < t:
                        func_rows.append({i: Frac(1)})
            else:
                S = cond.ray
                images = {
                    m: self._site_transform_full(BiPoly.monomial(*m), cond.site)
                    for m in window_monos
                }
                low: set[Mono] = set()
                for img in images.values():
                    for a, b in img.terms:
                        if S.p * a + S.q * b < t:
                            low.add((a, b))
                for target in sorted(low):
                    row = {}
                    for m, img in images.items():
                        c = img.terms.get(target)
                        if c:
                            row[index[m]] = c
                    if row:
                        func_rows.append(row)
        reduced: list[tuple[int, dict]] = []
        for row in func_rows:
            if _insert_row(dict(row), reduced, keyfn=lambda i: i):
                pass
        return len(reduced)

    # -- orders along the branches --------------------------------------

    def iota(self, ideal: AdjunctionIdeal) -> int:
        """Sum over the branches of the least order of an ideal generator
        along the branch (what a generic member realizes)."""
        gens = ideal.generator_polys()
        total = 0
        for cls, orders in self._branch_orders(gens):
            finite = [o for o in orders if o is not None]
            if not finite:
                raise InconsistencyError(
                    "every generator vanishes along a branch; iota undefined"
                )
            total += cls.count * min(finite)
        return total

    def _branch_orders(self, gens: list[BiPoly]):
        try:
            return list(orders_along_branches(self.f, gens))
        except InconsistencyError:
            pass
        # some generator contains a branch; retry one generator at a time
        # (a vanishing generator is simply left out of that branch's choice)
        f = self.f.known_part() if isinstance(self.f, TruncBiPoly) else self.f
        classes = puiseux_branches(f)
        cols: list[list] = []
        for g in gens:
            try:
                rows = orders_along_branches(self.f, [g])
                cols.append([orders[0] for _, orders in rows])
            except InconsistencyError:
                cols.append([None] * len(classes))
        return [
            (cls, tuple(col[i] for col in cols)) for i, cls in enumerate(classes)
        ]


def ideal_to_json_dict(ideal: AdjunctionIdeal) -> dict:
    return {
        "k": ideal.k,
        "thresholds": [
            {
                "stage": cond.stage,
                "ray": list(cond.ray.as_pair()),
                "m": cond.m_f,
                "kcan": cond.k_can,
                "required": t,
            }
            for cond, t in ideal.thresholds
        ],
        "monomials": [list(m) for m in ideal.monomial_gens],
        "extras": [
            {
                "cofactor": list(e.cofactor),
                "level": e.level,
                "poly": poly_str(e.poly, names=("u", "v")),
            }
            for e in ideal.extras
        ],
        "rho": ideal.rho,
        "staircase": ideal.staircase_count,
        "window": ideal.window,
    }
