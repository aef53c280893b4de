"""Evaluation of degree-bounded polynomials against the level ideals, the
cokernel dimensions that weight each root class, and the exact cyclotomic
assembly of the characteristic polynomial.

Everything is integer- or rational-exact.  Univariate polynomials in t are
plain coefficient tuples (ascending powers); cyclotomic factors are
produced by exact division of t^n - 1 and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Frac
from functools import lru_cache
from math import gcd

from .adjunction import AdjunctionIdeal, Analyzer, Mono
from .exactpoly import (
    BiPoly,
    InconsistencyError,
    TruncBiPoly,
    TruncSeries,
    TruncationError,
    grlex_key,
    substitute_shift,
)

IntPoly = tuple[int, ...]

ONE: IntPoly = (1,)


# -- integer polynomial helpers -----------------------------------------


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return tuple(out)


def poly_pow(a: IntPoly, n: int) -> IntPoly:
    out = ONE
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def poly_div_exact(num: IntPoly, den: IntPoly) -> IntPoly:
    """Quotient of two integer polynomials; the division must come out
    with zero remainder and integer coefficients."""
    num_l = [Frac(c) for c in num]
    den_l = list(den)
    while den_l and den_l[-1] == 0:
        den_l.pop()
    if not den_l:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Frac(0)] * (len(num_l) - len(den_l) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num_l[i + len(den_l) - 1] / den_l[-1]
        q[i] = c
        if c:
            for j, dc in enumerate(den_l):
                num_l[i + j] -= c * dc
    if any(num_l):
        raise InconsistencyError("polynomial division left a remainder")
    if any(c.denominator != 1 for c in q):
        raise InconsistencyError("polynomial quotient is not integral")
    return tuple(int(c) for c in q)


def t_power_minus_one(n: int) -> IntPoly:
    return tuple([-1] + [0] * (n - 1) + [1])


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    """n-th cyclotomic polynomial by dividing t^n - 1 by the lower ones."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    num = t_power_minus_one(n)
    for d in range(1, n):
        if n % d == 0:
            num = poly_div_exact(num, cyclotomic(d))
    return num


def poly_text(p: IntPoly, var: str = "t") -> str:
    if not any(p):
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif e == 1:
            body = var if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{e}" if mag == 1 else f"{mag}*{var}^{e}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def generic_delta(p: int, q: int) -> IntPoly:
    """Characteristic polynomial of the one-point model u^p + v^q on a
    curve of degree p*q/gcd: (t^{pq/r} - 1)^r (t - 1) / ((t^p-1)(t^q-1))."""
    if p < 2 or q < 2:
        raise ValueError("both exponents must be at least 2")
    r = gcd(p, q)
    num = poly_mul(poly_pow(t_power_minus_one(p * q // r), r), t_power_minus_one(1))
    out = poly_div_exact(num, t_power_minus_one(p))
    return poly_div_exact(out, t_power_minus_one(q))


# -- the evaluation map into the level quotients ------------------------


def dim_poly_space(j: int) -> int:
    """Dimension of the space of bivariate polynomials of total degree <= j."""
    return (j + 1) * (j + 2) // 2 if j >= 0 else 0


def domain_monomials(k: int) -> tuple[Mono, ...]:
    return tuple(
        sorted(
            ((s - b, b) for s in range(max(0, k - 2)) for b in range(s + 1)),
            key=grlex_key,
        )
    )


def poly_translate(g: BiPoly, x0: Frac, y0: Frac) -> BiPoly:
    """g(x0 + u, y0 + v) by exact binomial expansion."""
    if x0 == 0 and y0 == 0:
        return g
    out = BiPoly()
    for (a, b), c in g.terms.items():
        part = BiPoly.monomial(0, 0, c)
        xb = BiPoly({(1, 0): Frac(1), (0, 0): x0})
        yb = BiPoly({(0, 1): Frac(1), (0, 0): y0})
        for _ in range(a):
            part = part * xb
        for _ in range(b):
            part = part * yb
        out = out + part
    return out


@dataclass(frozen=True)
class LocalPoint:
    """One singular point: its location in the affine chart, the local
    coordinate change v -> v + phi(u) that produced the germ, and the
    analyzer holding the germ's resolution and level ideals."""

    analyzer: Analyzer
    location: tuple[Frac, Frac] = (Frac(0), Frac(0))
    phi: TruncSeries | None = None

    def monomial_image(self, m: Mono, window: int) -> dict:
        """Window-truncated local expansion of x^a y^b at this point."""
        g = poly_translate(BiPoly.monomial(*m), *self.location)
        if self.phi is not None and not self.phi.is_zero_through_order():
            if self.phi.order < window - 1:
                raise TruncationError(
                    "coordinate-change series too short for the level window"
                )
            shifted = substitute_shift(g, self.phi)
            g = shifted.known_part()
        return {
            mono: c
            for mono, c in g.terms.items()
            if mono[0] + mono[1] < window
        }


@dataclass(frozen=True)
class GlobalCurve:
    """A degree-d curve carrying its singular points' local data.  The
    affine model f is optional: level data only needs the local germs."""

    d: int
    points: tuple[LocalPoint, ...]
    r: int | None = None
    f: BiPoly | None = None
    irreducible: bool = False
    injectivity_asserted: bool = False


@dataclass(frozen=True)
class SigmaMatrix:
    k: int
    columns: tuple[Mono, ...]
    coords: tuple[tuple[int, Mono], ...]  # (point index, quotient monomial)
    rows: tuple[tuple[Frac, ...], ...]
    rank: int
    kernel: tuple[BiPoly, ...]

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)


def _rref(rows: list[list[Frac]], ncols: int) -> tuple[list[int], list[list[Frac]]]:
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                ci = mat[i][c]
                mat[i] = [a - ci * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots, mat


def normalize_kernel_poly(g: BiPoly) -> BiPoly:
    """Integer coefficients, content one, positive at the graded-lex
    largest monomial: the canonical representative up to scale."""
    if g.is_zero():
        return g
    denom = 1
    for c in g.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = {m: int(c * denom) for m, c in g.terms.items()}
    content = 0
    for c in ints.values():
        content = gcd(content, c)
    lead = max(ints, key=grlex_key)
    sign = 1 if ints[lead] > 0 else -1
    return BiPoly({m: Frac(c, sign * content) for m, c in ints.items()})


def sigma_matrix(
    curve: GlobalCurve, k: int, ideals: list[AdjunctionIdeal] | None = None
) -> SigmaMatrix:
    """Exact matrix of the evaluation of degree <= k-3 monomials into the
    direct sum of the points' level-k quotients, with rank and kernel."""
    if ideals is None:
        ideals = [pt.analyzer.ideal(k) for pt in curve.points]
    cols = domain_monomials(k)
    coords: list[tuple[int, Mono]] = []
    rows: list[list[Frac]] = []
    images: list[list[dict]] = []
    for pi, (pt, ideal) in enumerate(zip(curve.points, ideals)):
        pivots = {pr[0] for pr in ideal.rref_rows}
        local_coords = sorted(
            (
                m
                for m in ideal.window_monomials
                if m not in ideal.member_monomials and m not in pivots
            ),
            key=grlex_key,
        )
        reduced = [
            ideal.reduce_window_vector(pt.monomial_image(m, ideal.window))
            for m in cols
        ]
        images.append(reduced)
        for m in local_coords:
            coords.append((pi, m))
            rows.append([vec.get(m, Frac(0)) for vec in reduced])
    for pi, ideal in enumerate(ideals):
        if len([c for c in coords if c[0] == pi]) != ideal.rho:
            raise InconsistencyError("quotient coordinate count is off")
    pivots, mat = _rref(rows, len(cols))
    pivset = set(pivots)
    kernel = []
    for free in range(len(cols)):
        if free in pivset:
            continue
        vec = {cols[free]: Frac(1)}
        for rr, pc in enumerate(pivots):
            if mat[rr][free]:
                vec[cols[pc]] = -mat[rr][free]
        kernel.append(normalize_kernel_poly(BiPoly(vec)))
    return SigmaMatrix(
        k=k,
        columns=cols,
        coords=tuple(coords),
        rows=tuple(tuple(r) for r in rows),
        rank=len(pivots),
        kernel=tuple(kernel),
    )


# -- weights of the root classes ----------------------------------------


@dataclass(frozen=True)
class EllRecord:
    k: int
    rho: int
    rho_tilde: int
    path: str  # trivial | shortcut | asserted | matrix
    kernel_dim: int | None
    ell: int


@dataclass(frozen=True)
class EllData:
    records: tuple[EllRecord, ...]
    warnings: tuple[str, ...]

    def ell(self, k: int) -> int:
        return self.records[k - 1].ell

    def vector(self) -> tuple[int, ...]:
        return tuple(rec.ell for rec in self.records)


def ell_values(curve: GlobalCurve, mode: str = "auto") -> EllData:
    """Cokernel dimension of the level-k evaluation for k = 1..d-1.

    Paths: a level with no domain monomials contributes its full quotient
    (trivial); an irreducible curve whose summed minimal contact orders
    exceed d(k-3) has an injective evaluation (shortcut); injectivity can
    also be asserted for a known configuration; otherwise the matrix is
    computed exactly.
    """
    if mode not in ("auto", "matrix", "shortcut"):
        raise ValueError(f"unknown mode {mode!r}")
    records = []
    warnings: list[str] = []
    d = curve.d
    for k in range(1, d):
        ideals = [pt.analyzer.ideal(k) for pt in curve.points]
        rho = sum(i.rho for i in ideals)
        dim_dom = dim_poly_space(k - 3)
        rho_t = rho - dim_dom
        if dim_dom == 0:
            records.append(EllRecord(k, rho, rho_t, "trivial", None, rho))
            continue
        use_asserted = curve.injectivity_asserted and mode != "matrix"
        use_shortcut = False
        if not use_asserted and mode != "matrix" and curve.irreducible:
            iota_sum = sum(
                pt.analyzer.iota(ideal)
                for pt, ideal in zip(curve.points, ideals)
            )
            use_shortcut = iota_sum > d * (k - 3)
        if mode == "shortcut" and not (use_shortcut or use_asserted):
            raise InconsistencyError(
                f"injectivity shortcut unavailable at level {k}: "
                "contact-order hypothesis fails or curve not irreducible"
            )
        if use_asserted or use_shortcut:
            if rho_t < 0:
                raise InconsistencyError(
                    f"negative reduced quotient dimension {rho_t} at level "
                    f"{k} under an injectivity assertion"
                )
            path = "asserted" if use_asserted else "shortcut"
            if path == "asserted":
                warnings.append(
                    f"level {k}: injectivity asserted, not verified"
                )
            else:
                warnings.append(
                    f"level {k}: irreducibility asserted by the input; "
                    "injectivity follows from the contact-order bound"
                )
            records.append(EllRecord(k, rho, rho_t, path, None, rho_t))
            continue
        sig = sigma_matrix(curve, k, ideals)
        if sig.rank + sig.kernel_dim != dim_dom:
            raise InconsistencyError("rank and kernel do not fill the domain")
        records.append(
            EllRecord(k, rho, rho_t, "matrix", sig.kernel_dim, rho - sig.rank)
        )
    return EllData(tuple(records), tuple(warnings))


# -- assembly ------------------------------------------------------------


@dataclass(frozen=True)
class AlexanderPolynomial:
    ell: tuple[int, ...]  # index k-1 holds the level-k weight
    d: int
    r: int
    factored: tuple[tuple[int, int], ...]  # (cyclotomic index, multiplicity)
    expanded_reduced: IntPoly
    expanded_full: IntPoly

    def reduced_text(self) -> str:
        return poly_text(self.expanded_reduced)

    def full_text(self) -> str:
        return poly_text(self.expanded_full)

    def factored_text(self) -> str:
        if not self.factored and self.r <= 1:
            return "1"
        parts = []
        if self.r > 1:
            e = self.r - 1
            parts.append("(t-1)" + (f"^{e}" if e > 1 else ""))
        for n, mult in self.factored:
            base = poly_text(cyclotomic(n))
            parts.append(f"({base})" + (f"^{mult}" if mult > 1 else ""))
        return "*".join(parts) if parts else "1"


def assemble(ell, d: int, r: int) -> AlexanderPolynomial:
    """Exact product over the root classes.  The weight of the class of
    primitive (d/g)-th roots must be constant on the class (the result is
    an integer polynomial); the full polynomial carries (t-1)^(r-1)."""
    if isinstance(ell, dict):
        ells = tuple(ell.get(k, 0) for k in range(1, d))
    else:
        ells = tuple(ell)
        if len(ells) != d - 1:
            raise ValueError(f"need weights for levels 1..{d - 1}")
    if any(e < 0 for e in ells):
        raise ValueError("negative level weight")
    if r < 1:
        raise ValueError("component count must be at least 1")
    mult = {m: ells[m - 1] + ells[d - m - 1] for m in range(1, d)}
    factored = []
    for g in sorted({gcd(m, d) for m in range(1, d)}):
        cls = [m for m in range(1, d) if gcd(m, d) == g]
        vals = {mult[m] for m in cls}
        if len(vals) != 1:
            raise InconsistencyError(
                f"root class of gcd {g} carries unequal multiplicities "
                f"{sorted(vals)}; the product would not have integer "
                "coefficients"
            )
        v = vals.pop()
        if v:
            factored.append((d // g, v))
    factored.sort()
    reduced = ONE
    for n, v in factored:
        reduced = poly_mul(reduced, poly_pow(cyclotomic(n), v))
    if len(reduced) - 1 != 2 * sum(ells):
        raise InconsistencyError("assembled degree disagrees with the weights")
    full = poly_mul(poly_pow(t_power_minus_one(1), r - 1), reduced)
    return AlexanderPolynomial(
        ell=ells,
        d=d,
        r=r,
        factored=tuple(factored),
        expanded_reduced=reduced,
        expanded_full=full,
    )


def analyze_curve(curve: GlobalCurve, mode: str = "auto") -> tuple[EllData, AlexanderPolynomial]:
    """ell computation and assembly in one step; r defaults to 1 plus the
    count the input asserted nothing about."""
    data = ell_values(curve, mode=mode)
    r = curve.r if curve.r is not None else 1
    return data, assemble(data.vector(), curve.d, r)
