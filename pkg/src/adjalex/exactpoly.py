"""Exact polynomial and truncated-series arithmetic over the rationals.

Everything downstream (Newton boundaries, toric pull-backs, adjunction
ideals) runs on the two carriers defined here: BiPoly, an exact polynomial
in two variables with Fraction coefficients, and TruncSeries, a univariate
series known exactly through a stated order.  Truncation is pessimistic:
reading at or past the stated bound is a hard error, never a guess.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

Frac = Fraction

DEFAULT_TRUNC = 40


class AdjalexError(Exception):
    """Base class for all library errors."""


class ParseError(AdjalexError):
    """Syntax or vocabulary error in polynomial text; carries a position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class TruncationError(AdjalexError):
    """A query needed coefficients at or beyond a truncation bound."""


class InconsistencyError(AdjalexError):
    """Two routes that must agree disagreed, or a structural check failed."""


def _as_frac(x) -> Frac:
    if isinstance(x, Frac):
        return x
    if isinstance(x, int):
        return Frac(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def grlex_key(ab: tuple[int, int]) -> tuple[int, int]:
    # graded lexicographic with u < v: compare total degree, then v-exponent
    return (ab[0] + ab[1], ab[1])


class BiPoly:
    """Polynomial in two variables (u, v) with exact rational coefficients.

    Treated as immutable; all operations return new instances.  Terms are
    stored sparsely as {(u_exp, v_exp): Fraction} with no zero entries.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Frac] | None = None):
        clean: dict[tuple[int, int], Frac] = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent in term {(a, b)}")
                c = _as_frac(c)
                if c != 0:
                    clean[(a, b)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> BiPoly:
        return cls()

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): _as_frac(c)})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> BiPoly:
        return cls({(a, b): _as_frac(c)})

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, a: int, b: int) -> Frac:
        return self.terms.get((a, b), Frac(0))

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self.terms), default=-1)

    def min_degree(self) -> int:
        """Order at the origin (min total degree of a term); -1 if zero."""
        return min((a + b for a, b in self.terms), default=-1)

    def u_degree(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def v_degree(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.terms, key=grlex_key)

    def v_slices(self) -> dict[int, dict[int, Frac]]:
        """Coefficients grouped by v-exponent: {b: {a: coeff}}."""
        out: dict[int, dict[int, Frac]] = {}
        for (a, b), c in self.terms.items():
            out.setdefault(b, {})[a] = c
        return out

    def pure_u_order(self) -> int | None:
        """Least a with a nonzero u^a v^0 term, or None if no such term."""
        rows = [a for (a, b) in self.terms if b == 0]
        return min(rows) if rows else None

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: BiPoly) -> BiPoly:
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Frac(0)) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        res = BiPoly.__new__(BiPoly)
        res.terms = out
        return res

    def __neg__(self) -> BiPoly:
        res = BiPoly.__new__(BiPoly)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other: BiPoly) -> BiPoly:
        out: dict[tuple[int, int], Frac] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, Frac(0)) + c1 * c2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        res = BiPoly.__new__(BiPoly)
        res.terms = out
        return res

    def scale(self, c) -> BiPoly:
        c = _as_frac(c)
        if c == 0:
            return BiPoly.zero()
        res = BiPoly.__new__(BiPoly)
        res.terms = {k: v * c for k, v in self.terms.items()}
        return res

    def __pow__(self, n: int) -> BiPoly:
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def dv(self) -> BiPoly:
        """Partial derivative with respect to the second variable."""
        return BiPoly({(a, b - 1): c * b for (a, b), c in self.terms.items() if b > 0})

    def du(self) -> BiPoly:
        return BiPoly({(a - 1, b): c * a for (a, b), c in self.terms.items() if a > 0})

    def drop_high_u(self, bound: int) -> BiPoly:
        """Discard terms with u-exponent strictly above bound."""
        return BiPoly({k: c for k, c in self.terms.items() if k[0] <= bound})

    def normalized(self) -> BiPoly:
        """Scale so coefficients are coprime integers, leading one positive.

        Leading means largest in graded-lex order with u < v.  The zero
        polynomial normalizes to itself.
        """
        if not self.terms:
            return self
        den = math.lcm(*(c.denominator for c in self.terms.values()))
        num = math.gcd(*(abs(c.numerator) for c in self.terms.values()))
        lead = max(self.terms, key=grlex_key)
        sign = -1 if self.terms[lead] < 0 else 1
        return self.scale(Frac(sign * den, num))

    def eval_series(self, u_series: TruncSeries, v_series: TruncSeries) -> TruncSeries:
        """Substitute univariate truncated series for both variables."""
        order = min(u_series.order, v_series.order)
        acc = TruncSeries.zeros(order)
        u_pows: dict[int, TruncSeries] = {0: TruncSeries.ones(order)}
        v_pows: dict[int, TruncSeries] = {0: TruncSeries.ones(order)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        for (a, b), c in sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0])):
            acc = acc + (power(u_pows, u_series, a) * power(v_pows, v_series, b)).scale(c)
        return acc

    def __repr__(self) -> str:
        return f"BiPoly({poly_str(self)})"


class TruncSeries:
    """Univariate series with exact coefficients for exponents 0..order.

    Coefficients beyond `order` are unknown; reading them raises
    TruncationError.  Arithmetic propagates the weaker bound.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(_as_frac(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zeros(cls, order: int) -> TruncSeries:
        return cls([Frac(0)] * (order + 1))

    @classmethod
    def ones(cls, order: int) -> TruncSeries:
        return cls([Frac(1)] + [Frac(0)] * order)

    @classmethod
    def from_map(cls, coeff_map: Mapping[int, Frac], order: int) -> TruncSeries:
        coeffs = [Frac(0)] * (order + 1)
        for e, c in coeff_map.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e <= order:
                coeffs[e] = _as_frac(c)
        return cls(coeffs)

    def coeff(self, e: int) -> Frac:
        if e > self.order:
            raise TruncationError(
                f"coefficient at exponent {e} requested, series known to order {self.order}"
            )
        return self.coeffs[e]

    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient, None if zero throughout."""
        for e, c in enumerate(self.coeffs):
            if c != 0:
                return e
        return None

    def is_zero_through_order(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1])

    def __add__(self, other: TruncSeries) -> TruncSeries:
        order = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(order + 1)])

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        order = min(self.order, other.order)
        return TruncSeries([self.coeffs[i] - other.coeffs[i] for i in range(order + 1)])

    def __neg__(self) -> TruncSeries:
        return TruncSeries([-c for c in self.coeffs])

    def scale(self, c) -> TruncSeries:
        c = _as_frac(c)
        return TruncSeries([x * c for x in self.coeffs])

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        order = min(self.order, other.order)
        out = [Frac(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out)

    def __pow__(self, n: int) -> TruncSeries:
        if n < 0:
            raise ValueError("negative power")
        result = TruncSeries.ones(self.order)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, e: int) -> TruncSeries:
        """Multiply by t^e.  The truncation bound rises with the valuation."""
        if e < 0:
            raise ValueError("negative shift")
        return TruncSeries([Frac(0)] * e + list(self.coeffs))

    def agrees_with(self, other: TruncSeries) -> bool:
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __eq__(self, other) -> bool:
        # exact comparison on the shared prefix; orders need not match
        return isinstance(other, TruncSeries) and self.agrees_with(other)

    def nonzero_items(self) -> list[tuple[int, Frac]]:
        return [(e, c) for e, c in enumerate(self.coeffs) if c != 0]

    def __repr__(self) -> str:
        parts = [f"{c}*t^{e}" for e, c in self.nonzero_items()] or ["0"]
        return f"TruncSeries({' + '.join(parts)} + O(t^{self.order + 1}))"


class TruncBiPoly:
    """A BiPoly whose coefficients are exact only for u-degree <= trunc.

    Produced by substitutions involving truncated series.  Shifting v by a
    u-series never lowers u-degrees, so exactness is per u-degree at every
    v-degree; terms above the bound are dropped and unreadable.
    """

    __slots__ = ("poly", "trunc")

    def __init__(self, poly: BiPoly, trunc: int):
        self.poly = poly.drop_high_u(trunc)
        self.trunc = trunc

    def coeff(self, a: int, b: int) -> Frac:
        if a > self.trunc:
            raise TruncationError(
                f"u-degree {a} requested, exact only through {self.trunc}"
            )
        return self.poly.coeff(a, b)

    def known_part(self) -> BiPoly:
        return self.poly

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncBiPoly):
            bound = min(self.trunc, other.trunc)
            return self.poly.drop_high_u(bound) == other.poly.drop_high_u(bound)
        if isinstance(other, BiPoly):
            return self.poly == other.drop_high_u(self.trunc)
        return NotImplemented

    def __repr__(self) -> str:
        return f"TruncBiPoly({poly_str(self.poly)}; u-exact<={self.trunc})"


# -- parsing and printing ----------------------------------------------


def poly_parse(text: str, names: tuple[str, str] = ("x", "y")) -> BiPoly:
    """Parse +, -, *, ^, parentheses, and integer or p/q coefficients.

    The two admissible variable names are given by `names`; any other
    identifier is an error.  Parse-then-print is idempotent.
    """
    tokens = _tokenize(text)
    parser = _Parser(tokens, names, text)
    poly = parser.parse_expr()
    parser.expect_end()
    return poly


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, names, text):
        self.tokens = tokens
        self.pos = 0
        self.names = names
        self.text = text

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_end(self):
        kind, val, p = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", p)

    def parse_expr(self) -> BiPoly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.advance()[0] == "-":
                sign = -sign
        acc = self.parse_term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            sign = 1
            while self.peek()[0] in ("+", "-"):
                if self.advance()[0] == "-":
                    sign = -sign
            acc = acc + self.parse_term().scale(sign)
        return acc

    def parse_term(self) -> BiPoly:
        acc = self.parse_factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.advance()
                acc = acc * self.parse_factor()
            elif kind == "/":
                _, _, p = self.advance()
                kind2, val, p2 = self.peek()
                if kind2 != "int":
                    raise ParseError("division only by an integer literal", p2)
                self.advance()
                d = int(val)
                if d == 0:
                    raise ParseError("division by zero", p2)
                acc = acc.scale(Frac(1, d))
            elif kind in ("name", "(", "int"):
                # implicit product, e.g. "2x" or "(x+1)y"
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> BiPoly:
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.advance()
            kind, val, p = self.advance()
            neg = False
            if kind == "-":
                neg = True
                kind, val, p = self.advance()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", p)
            if neg:
                raise ParseError("exponent must be a nonnegative integer", p)
            return base ** int(val)
        return base

    def parse_atom(self) -> BiPoly:
        kind, val, p = self.advance()
        if kind == "int":
            return BiPoly.const(int(val))
        if kind == "name":
            if val == self.names[0]:
                return BiPoly.monomial(1, 0)
            if val == self.names[1]:
                return BiPoly.monomial(0, 1)
            raise ParseError(
                f"unknown variable {val!r} (expected {self.names[0]!r} or {self.names[1]!r})", p
            )
        if kind == "(":
            inner = self.parse_expr()
            kind2, _, p2 = self.advance()
            if kind2 != ")":
                raise ParseError("unbalanced parenthesis", p2)
            return inner
        if kind == "-":
            return -self.parse_atom()
        raise ParseError(f"expected a term, found {val!r}", p)


def _frac_str(c: Frac) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_str(p: BiPoly, names: tuple[str, str] = ("x", "y")) -> str:
    """Canonical text form: graded-lex descending, explicit * and ^."""
    if p.is_zero():
        return "0"
    parts = []
    for a, b in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[(a, b)]
        factors = []
        if a:
            factors.append(names[0] if a == 1 else f"{names[0]}^{a}")
        if b:
            factors.append(names[1] if b == 1 else f"{names[1]}^{b}")
        mag = abs(c)
        if not factors or mag != 1:
            factors.insert(0, _frac_str(mag))
        body = "*".join(factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += sign + body
    return out


# -- series-level operations -------------------------------------------


def substitute_shift(f: BiPoly, phi: TruncSeries) -> TruncBiPoly:
    """Compute f(u, v + phi(u)), exact for u-degree <= phi.order.

    Shifting cannot lower u-degrees, so every kept coefficient is exact even
    though phi is only known through its truncation order.
    """
    D = phi.order
    out: dict[tuple[int, int], Frac] = {}
    slices = f.v_slices()
    max_b = max(slices, default=0)
    # phi powers as exact coefficient maps through u-degree D
    phi_pow: list[dict[int, Frac]] = [{0: Frac(1)}]
    for _ in range(max_b):
        prev = phi_pow[-1]
        nxt: dict[int, Frac] = {}
        for e1, c1 in prev.items():
            for e2, c2 in phi.nonzero_items():
                e = e1 + e2
                if e > D:
                    continue
                s = nxt.get(e, Frac(0)) + c1 * c2
                if s == 0:
                    nxt.pop(e, None)
                else:
                    nxt[e] = s
        phi_pow.append(nxt)
    for b, row in slices.items():
        for j in range(b + 1):
            binom = math.comb(b, j)
            for a, c in row.items():
                if a > D:
                    continue
                for e, pc in phi_pow[b - j].items():
                    ae = a + e
                    if ae > D:
                        continue
                    k = (ae, j)
                    s = out.get(k, Frac(0)) + c * binom * pc
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
    return TruncBiPoly(BiPoly(out), D)


def series_root(f: BiPoly, order: int) -> TruncSeries:
    """The unique series r with r(0)=0 and f(u, r(u)) = O(u^{order+1}).

    Requires f(0,0) = 0 and a unit v-linear part (classical lifting); a
    degenerate linear part is an error, not a branch search.
    """
    if f.coeff(0, 0) != 0:
        raise InconsistencyError("series_root needs f to vanish at the origin")
    fv0 = f.dv().coeff(0, 0)
    if fv0 == 0:
        raise InconsistencyError("series_root needs a nonzero v-linear part at the origin")
    coeffs = [Frac(0)] * (order + 1)
    for k in range(1, order + 1):
        # evaluate f at the current partial solution, exactly through u^k
        val = Frac(0)
        for (a, b), c in f.terms.items():
            if a > k:
                continue
            # coefficient of u^{k-a} in r(u)^b
            val += c * _series_pow_coeff(coeffs, b, k - a)
        coeffs[k] = -val / fv0
        # the recursion keeps lower coefficients fixed; val included the
        # contribution with coeffs[k] = 0 only
    return TruncSeries(coeffs)


def _series_pow_coeff(coeffs: list[Frac], power: int, target: int) -> Frac:
    """Coefficient of u^target in (sum coeffs[e] u^e)^power, coeffs[0]=0."""
    if power == 0:
        return Frac(1) if target == 0 else Frac(0)
    if target < power:  # valuation >= 1 per factor
        return Frac(0)
    acc = {0: Frac(1)}
    for _ in range(power):
        nxt: dict[int, Frac] = {}
        for e1, c1 in acc.items():
            for e2 in range(1, target - e1 + 1):
                c2 = coeffs[e2] if e2 < len(coeffs) else Frac(0)
                if c2 == 0:
                    continue
                e = e1 + e2
                if e > target:
                    continue
                nxt[e] = nxt.get(e, Frac(0)) + c1 * c2
        acc = nxt
    return acc.get(target, Frac(0))


def resultant_order(f: BiPoly, g: BiPoly) -> int:
    """Order in u of the resultant eliminating v.  Oracle for local
    intersection numbers when the origin is the only common zero on u=0.

    Raises InconsistencyError if the resultant vanishes identically
    (a common factor).
    """
    import sympy

    u, v = sympy.symbols("u v")

    def expr(p: BiPoly):
        return sympy.Add(*[
            sympy.Rational(c.numerator, c.denominator) * u**a * v**b
            for (a, b), c in p.terms.items()
        ])

    if f.is_zero() or g.is_zero():
        raise InconsistencyError("resultant of a zero polynomial")
    res = sympy.resultant(sympy.expand(expr(f)), sympy.expand(expr(g)), v)
    poly = sympy.Poly(res, u)
    if poly.is_zero:
        raise InconsistencyError("resultant vanishes identically: common factor")
    coeffs = poly.all_coeffs()[::-1]  # ascending
    for e, c in enumerate(coeffs):
        if c != 0:
            return e
    raise InconsistencyError("unreachable: nonzero polynomial with no nonzero coefficient")
