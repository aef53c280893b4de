"""Branch structure of curve germs: contact shifts, Puiseux packets,
orders along branches, and intersection multiplicities.

Everything here stays inside rational arithmetic.  Conjugate families of
branches (irrational leading coefficients) are carried as one class with a
count; per-branch quantities are equal across a class by symmetry, so classes
are enough for every downstream sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Frac

from .exactpoly import (
    BiPoly,
    InconsistencyError,
    TruncBiPoly,
)
from .newton import NewtonData, WeightVector, newton_boundary

# -- elementary one-variable helpers (coefficient tuples, ascending) ----


def _tup_normalize(t):
    n = len(t)
    while n > 0 and t[n - 1] == 0:
        n -= 1
    return tuple(t[:n])


def _tup_divmod(num, den):
    num = list(num)
    den = _tup_normalize(den)
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Frac(0)] * max(0, len(num) - len(den) + 1)
    while len(_tup_normalize(num)) >= len(den):
        nn = _tup_normalize(num)
        shift = len(nn) - len(den)
        c = Frac(nn[-1]) / den[-1]
        q[shift] += c
        num = list(nn)
        for i, d in enumerate(den):
            num[shift + i] -= c * d
    return _tup_normalize(q), _tup_normalize(num)


def _tup_divides(den, num) -> bool:
    _, r = _tup_divmod(num, den)
    return not r


def _tup_eval(t, x: Frac) -> Frac:
    acc = Frac(0)
    for c in reversed(t):
        acc = acc * x + c
    return acc


# -- charts -------------------------------------------------------------


def chart_companion(w: WeightVector) -> tuple[int, int]:
    """(p', q') with p*q' - q*p' = 1 and 0 <= p' < p (p' = 0 when p = 1)."""
    p, q = w.p, w.q
    if p == 1:
        return (0, 1)
    pp = (-pow(q, -1, p)) % p
    return (pp, (1 + q * pp) // p)


def chart_pullback(f: BiPoly, w: WeightVector) -> tuple[int, BiPoly]:
    """Substitute u = u1^p v1^p', v = u1^q v1^q' and split off the u1 power:
    returns (d, ftilde) with f(chart) = u1^d * ftilde and u1 not dividing
    ftilde.  v1 factors are kept."""
    pp, qq = chart_companion(w)
    terms = {}
    for (a, b), c in f.terms.items():
        key = (w.p * a + w.q * b, pp * a + qq * b)
        terms[key] = terms.get(key, Frac(0)) + c
    terms = {k: c for k, c in terms.items() if c != 0}
    if not terms:
        raise InconsistencyError("zero germ in chart pull-back")
    d = min(a for a, _ in terms)
    return d, BiPoly({(a - d, b): c for (a, b), c in terms.items()})


def face_chart_poly(f, w: WeightVector) -> tuple[Frac, ...]:
    """The w-minimal part of f as a one-variable polynomial, ascending, with
    the convention that its roots are the face directions v^p = gamma u^q.
    A vertex gives a monomial; the zero exponent is the u-axis end."""
    if isinstance(f, TruncBiPoly):
        f = f.known_part()
    from .newton import weighted_order

    d = weighted_order(f, w)
    pts = [(a, b) for (a, b) in f.terms if w.p * a + w.q * b == d]
    bmin = min(b for _, b in pts)
    deg = max((b - bmin) // w.p for _, b in pts)
    out = [Frac(0)] * (deg + 1)
    for a, b in pts:
        out[(b - bmin) // w.p] = f.terms[(a, b)]
    return tuple(out)


def shift_tangent(f, gamma: Frac, s: int):
    """v -> v + gamma*u^s, exactly.  Truncation bounds survive because the
    substitution never lowers any u-exponent."""
    if isinstance(f, TruncBiPoly):
        return TruncBiPoly(shift_tangent(f.known_part(), gamma, s), f.trunc)
    out: dict[tuple[int, int], Frac] = {}
    for (a, b), c in f.terms.items():
        binom = 1
        power = Frac(1)
        for j in range(b + 1):
            key = (a + j * s, b - j)
            out[key] = out.get(key, Frac(0)) + c * binom * power
            binom = binom * (b - j) // (j + 1)
            power *= gamma
    return BiPoly({k: c for k, c in out.items() if c != 0})


# -- maximal contact shift ----------------------------------------------


@dataclass(frozen=True)
class ContactShift:
    """Outcome of the greedy contact search: the shift phi(u) as ascending
    (exponent, coefficient) steps, the pure-u order achieved (None when the
    arc lands on a component), and why the search stopped."""

    steps: tuple[tuple[int, Frac], ...]
    order: int | None
    reason: str  # component | ramified | irrational | cap | vertex

    def shift_poly(self) -> BiPoly:
        return BiPoly({(e, 0): c for e, c in self.steps})

    def degree(self) -> int:
        return self.steps[-1][0] if self.steps else 0


def _pure_u_order(f) -> int | None:
    """Order of f(u, 0); None when v divides f."""
    if isinstance(f, TruncBiPoly):
        f = f.known_part()
    us = [a for (a, b) in f.terms if b == 0]
    return min(us) if us else None


def maximal_contact_shift(f, cap: int = 64) -> ContactShift:
    """Greedy search for a polynomial arc v = phi(u) of maximal contact.

    At each step the face next to the u-axis is the only one that can raise
    the pure-u order; among its rational roots the greedy picks the largest
    resulting order, breaking ties by running the candidates to their final
    orders.  The search stops when that face is ramified (p > 1), has no
    rational root, would exceed the exponent cap, or the arc lands on a
    component of the curve.
    """
    order, steps, reason = _contact_walk(f, 0, cap)
    return ContactShift(steps=tuple(steps), order=order, reason=reason)


def _contact_walk(f, min_exp: int, cap: int):
    best: list[tuple[int, Frac]] = []
    while True:
        a0 = _pure_u_order(f)
        if a0 is None:
            return None, best, "component"
        nd = newton_boundary(f)
        if not nd.faces:
            return a0, best, "vertex"
        face = nd.faces[-1]
        if face.weight.p != 1:
            return a0, best, "ramified"
        s = face.weight.q
        if s <= min_exp:
            raise InconsistencyError("contact exponent failed to increase")
        if s > cap:
            return a0, best, "cap"
        roots = [ff.gamma for ff in face.factors if ff.gamma is not None]
        if not roots:
            return a0, best, "irrational"
        scored = []
        for g in roots:
            fg = shift_tangent(f, g, s)
            o = _pure_u_order(fg)
            scored.append((o if o is not None else None, g, fg))
        # None means a component: unbeatable
        comp = [t for t in scored if t[0] is None]
        if comp:
            comp.sort(key=lambda t: t[1])
            _, g, fg = comp[0]
            best.append((s, g))
            return None, best, "component"
        top = max(t[0] for t in scored)
        tied = [t for t in scored if t[0] == top]
        if len(tied) > 1:
            # run each tied candidate to the end and keep the deepest
            ranked = []
            for o, g, fg in sorted(tied, key=lambda t: t[1]):
                fo, fsteps, freason = _contact_walk(fg, s, cap)
                rank = Frac(10**9) if fo is None else fo
                ranked.append((rank, g, fg))
            ranked.sort(key=lambda t: (-t[0], t[1]))
            _, g, fg = ranked[0]
        else:
            _, g, fg = tied[0]
        best.append((s, g))
        f = fg
        min_exp = s


# -- branch classes and orders along them -------------------------------


@dataclass(frozen=True)
class BranchClass:
    """A conjugacy class of branches: count conjugate branches, each with
    the given ramification (order of u along the branch), entered through
    the top-level face of the given weight."""

    count: int
    ram: int
    weight: tuple[int, int] | None  # None for the axis branches
    label: str


def _require_reduced_axis(f: BiPoly, var: int) -> int:
    """Multiplicity of u (var=0) or v (var=1) dividing f; errors above 1."""
    m = min(k[var] for k in f.terms)
    if m > 1:
        raise InconsistencyError("non-reduced germ: repeated axis factor")
    return m


def _strip_axes(f: BiPoly) -> tuple[int, int, BiPoly]:
    au = min(k[0] for k in f.terms)
    av = min(k[1] for k in f.terms)
    if au or av:
        f = BiPoly({(a - au, b - av): c for (a, b), c in f.terms.items()})
    return au, av, f


def puiseux_branches(f, depth: int = 0, _label: str = "") -> list[BranchClass]:
    """Branch classes of a reduced germ.  Ramified packets recurse through
    the adapted chart; shared irrational directions are not supported and
    raise rather than approximate."""
    if isinstance(f, TruncBiPoly):
        f = f.known_part()
    if f.is_zero():
        raise InconsistencyError("zero germ has no branches")
    au, av, core = _strip_axes(f)
    if au > 1 or av > 1:
        raise InconsistencyError("non-reduced germ: repeated axis factor")
    out = []
    if av:
        out.append(BranchClass(1, 1, None, _label + "v-axis"))
    if au:
        out.append(BranchClass(1, 1, None, _label + "u-axis"))
    if core.total_degree() == 0:
        return out
    nd = newton_boundary(core)
    for face in nd.faces:
        w = face.weight
        for ff in face.factors:
            tag = (
                f"{_label}({w.p},{w.q}):"
                + (f"g={ff.gamma}" if ff.gamma is not None else f"deg{ff.degree}")
            )
            if ff.multiplicity == 1:
                out.append(BranchClass(ff.degree, w.p, w.as_pair(), tag))
                continue
            if ff.degree > 1:
                raise InconsistencyError(
                    "degenerate packet with irrational direction; unsupported"
                )
            if depth > 24:
                raise InconsistencyError("branch recursion too deep")
            d, ft = chart_pullback(core, w)
            sub = shift_tangent(ft, ff.gamma, 0)
            for cls in puiseux_branches(sub, depth + 1, tag + "->"):
                if cls.weight is None and cls.label.endswith("u-axis"):
                    raise InconsistencyError(
                        "exceptional factor survived strict transform"
                    )
                out.append(
                    BranchClass(cls.count, w.p * cls.ram, w.as_pair(), cls.label)
                )
    return out


def orders_along_branches(f, gens: list[BiPoly], depth: int = 0) -> list[
    tuple[BranchClass, tuple[int, ...]]
]:
    """For each branch class of the reduced germ f, the order of every g in
    gens along one branch of the class (equal across the class)."""
    if isinstance(f, TruncBiPoly):
        f = f.known_part()
    gens = [g.known_part() if isinstance(g, TruncBiPoly) else g for g in gens]
    au, av, core = _strip_axes(f)
    if au > 1 or av > 1:
        raise InconsistencyError("non-reduced germ: repeated axis factor")
    out: list[tuple[BranchClass, tuple[int, ...]]] = []

    def g_order_axis(g: BiPoly, var: int) -> int:
        # order of g restricted to the axis branch (v=0 for var 1)
        keep = [a for (a, b) in g.terms if (b == 0 if var == 1 else a == 0)]
        if not keep:
            raise InconsistencyError("generator vanishes on a branch")
        return min(keep)

    if av:
        out.append(
            (
                BranchClass(1, 1, None, "v-axis"),
                tuple(g_order_axis(g, 1) for g in gens),
            )
        )
    if au:
        out.append(
            (
                BranchClass(1, 1, None, "u-axis"),
                tuple(g_order_axis(g, 0) for g in gens),
            )
        )
    if core.total_degree() == 0:
        return out
    nd = newton_boundary(core)
    for face in nd.faces:
        w = face.weight
        dg = [_weighted(g, w) for g in gens]
        for ff in face.factors:
            tag = f"({w.p},{w.q}):" + (
                f"g={ff.gamma}" if ff.gamma is not None else f"deg{ff.degree}"
            )
            shared = [
                i
                for i, g in enumerate(gens)
                if _face_shares(g, w, ff)
            ]
            if ff.multiplicity == 1 and not shared:
                cls = BranchClass(ff.degree, w.p, w.as_pair(), tag)
                out.append((cls, tuple(dg)))
                continue
            if ff.degree > 1:
                raise InconsistencyError(
                    "shared or degenerate irrational direction; unsupported"
                )
            if depth > 24:
                raise InconsistencyError("branch recursion too deep")
            gamma = ff.gamma
            d, ft = chart_pullback(core, w)
            sub_f = shift_tangent(ft, gamma, 0)
            sub_gens = []
            for g in gens:
                dgg, gt = chart_pullback(g, w)
                sub_gens.append(shift_tangent(gt, gamma, 0))
            for cls, sub_ords in orders_along_branches(sub_f, sub_gens, depth + 1):
                if cls.weight is None and cls.label.endswith("u-axis"):
                    raise InconsistencyError(
                        "exceptional factor survived strict transform"
                    )
                lifted = BranchClass(
                    cls.count, w.p * cls.ram, w.as_pair(), tag + "->" + cls.label
                )
                out.append(
                    (
                        lifted,
                        tuple(
                            dg[i] * cls.ram + sub_ords[i] for i in range(len(gens))
                        ),
                    )
                )
    return out


def _weighted(g: BiPoly, w: WeightVector) -> int:
    if g.is_zero():
        raise InconsistencyError("zero generator")
    return min(w.p * a + w.q * b for a, b in g.terms)


def _face_shares(g: BiPoly, w: WeightVector, ff) -> bool:
    """Does g's w-face vanish in the direction of the factor ff?"""
    gp = face_chart_poly(g, w)
    if ff.gamma is not None:
        return _tup_eval(gp, ff.gamma) == 0
    return _tup_divides(ff.coeffs, gp)


# -- intersection multiplicity ------------------------------------------


def intersection_multiplicity(f, g) -> int:
    """Intersection number of two coprime germs at the origin, by Newton
    boundary reduction.  Multiplicities in f and g are respected."""
    if isinstance(f, TruncBiPoly):
        f = f.known_part()
    if isinstance(g, TruncBiPoly):
        g = g.known_part()
    if f.is_zero() or g.is_zero():
        raise InconsistencyError("intersection with the zero germ")
    if _common_factor(f, g):
        raise InconsistencyError("infinite intersection: germs share a component")
    return _int_walk(f, g, 0)


def _common_factor(f: BiPoly, g: BiPoly) -> bool:
    import sympy

    u, v = sympy.symbols("u v")

    def expr(p):
        return sympy.Add(
            *(
                sympy.Rational(c.numerator, c.denominator) * u**a * v**b
                for (a, b), c in p.terms.items()
            )
        )

    h = sympy.gcd(expr(f), expr(g))
    return not h.is_constant(u, v)


def _int_walk(f: BiPoly, g: BiPoly, depth: int) -> int:
    if depth > 64:
        raise InconsistencyError("intersection recursion too deep")
    if (0, 0) in f.terms or (0, 0) in g.terms:
        return 0
    total = 0
    # axis factors of f meet g along the axes
    au, av, f = _strip_axes(f)
    if au:
        vs = [b for (a, b) in g.terms if a == 0]
        if not vs:
            raise InconsistencyError("infinite intersection along an axis")
        total += au * min(vs)
    if av:
        us = [a for (a, b) in g.terms if b == 0]
        if not us:
            raise InconsistencyError("infinite intersection along an axis")
        total += av * min(us)
    if f.total_degree() == 0:
        return total
    nd = newton_boundary(f)
    for face in nd.faces:
        w = face.weight
        dwg = _weighted(g, w)
        for ff in face.factors:
            if not _face_shares(g, w, ff):
                total += ff.multiplicity * ff.degree * dwg
                continue
            if ff.degree > 1:
                raise InconsistencyError(
                    "shared irrational tangent direction; unsupported"
                )
            _, ftil = chart_pullback(f, w)
            _, gtil = chart_pullback(g, w)
            total += ff.multiplicity * dwg + _int_walk(
                shift_tangent(ftil, ff.gamma, 0),
                shift_tangent(gtil, ff.gamma, 0),
                depth + 1,
            )
    return total


# -- reduction ----------------------------------------------------------


def reduced_part(f: BiPoly) -> tuple[BiPoly, bool]:
    """(square-free part of f, whether anything was dropped).  Factorization
    runs through sympy; the result is renormalized to integer coprime
    coefficients."""
    import sympy

    u, v = sympy.symbols("u v")
    expr = sympy.Add(
        *(
            sympy.Rational(c.numerator, c.denominator) * u**a * v**b
            for (a, b), c in f.terms.items()
        )
    )
    _, factors = sympy.factor_list(expr, u, v)
    changed = any(m > 1 for _, m in factors)
    if not changed:
        return f, False
    prod = BiPoly.const(Frac(1))
    for fac, _ in factors:
        poly = sympy.Poly(fac, u, v)
        terms = {}
        for (a, b), c in poly.terms():
            cc = sympy.Rational(c)
            terms[(int(a), int(b))] = Frac(int(cc.p), int(cc.q))
        prod = prod * BiPoly(terms)
    return prod.normalized(), True
