"""Feasibility screening of component splittings of a projective curve.

Given the curve degree and local data at its singular points, a candidate
decomposition into irreducible components is tested against two arithmetic
constraints: the normalization of each component must have Euler
characteristic at most 2, and two components can meet at the recorded
points at most as often as Bezout allows.  The screen refutes
decompositions; it never certifies one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactpoly import InconsistencyError


@dataclass(frozen=True)
class BranchSpec:
    """One local branch at a singular point: its delta invariant and the
    smallest degree a global component carrying it can have."""

    label: str = "smooth"
    delta: int = 0
    min_degree: int = 1

    def __post_init__(self):
        if self.delta < 0 or self.min_degree < 1:
            raise ValueError(f"branch data out of range: {self}")


@dataclass(frozen=True)
class SingularityRecord:
    """Local data of one singular point.

    `mu` and `r_loc` always describe the full germ.  When the splitting
    search should be allowed to distribute the point over several
    components, `branches` lists the individual local branches and `meets`
    their pairwise intersection numbers; the invariants of any sub-union
    then follow from that table.  Without a profile the point is assigned
    to a single component as a whole.
    """

    label: str
    mu: int
    r_loc: int
    branches: tuple[BranchSpec, ...] = ()
    meets: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.mu < 0 or self.r_loc < 1:
            raise ValueError("need mu >= 0 and r_loc >= 1")
        if not self.branches:
            if self.meets:
                raise ValueError("intersection table without a branch profile")
            return
        if len(self.branches) != self.r_loc:
            raise ValueError("branch profile size differs from r_loc")
        m = self.meets
        if len(m) != self.r_loc or any(len(row) != self.r_loc for row in m):
            raise ValueError("intersection table shape is off")
        for i in range(self.r_loc):
            if m[i][i] != 0:
                raise ValueError("intersection table diagonal must vanish")
            for j in range(i + 1, self.r_loc):
                if m[i][j] != m[j][i] or m[i][j] < 1:
                    raise ValueError(
                        "intersection table must be symmetric and positive"
                        " off the diagonal"
                    )
        if self.subgerm(range(self.r_loc))[0] != self.mu:
            raise InconsistencyError(
                f"declared mu of {self.label} disagrees with its branch profile"
            )

    def subgerm(self, picked: Iterable[int]) -> tuple[int, int]:
        """Milnor number and branch count of the union of the picked
        branches; (0, 0) for the empty pick."""
        idx = sorted(set(picked))
        if not idx:
            return (0, 0)
        if not self.branches:
            raise ValueError(f"{self.label} carries no branch profile")
        dsum = sum(self.branches[i].delta for i in idx)
        isum = sum(self.meets[i][j] for i, j in itertools.combinations(idx, 2))
        return (2 * (dsum + isum) - len(idx) + 1, len(idx))


@dataclass(frozen=True)
class EulerVerdict:
    chi: int
    feasible: bool

    def __bool__(self) -> bool:
        return self.feasible


def euler_check(degree: int, assigned: Sequence) -> EulerVerdict:
    """Euler characteristic of the normalization of one degree-n component
    whose singular-point contributions are listed in `assigned` (records or
    plain (mu, r) pairs).  A connected curve forces chi <= 2."""
    if degree < 1:
        raise ValueError("component degree must be positive")
    total = 0
    for item in assigned:
        if isinstance(item, SingularityRecord):
            mu, r = item.mu, item.r_loc
        else:
            mu, r = item
        total += mu + r - 1
    chi = degree * (3 - degree) + total
    return EulerVerdict(chi=chi, feasible=chi <= 2)


@dataclass(frozen=True)
class SplitHypothesis:
    """One candidate decomposition: component degrees (descending) plus,
    per record, the component index each branch slot is assigned to."""

    degrees: tuple[int, ...]
    assignment: tuple[tuple[int, ...], ...]
    chis: tuple[int, ...]
    feasible: bool
    reason: str = ""

    def profile(self) -> tuple[int, ...]:
        return self.degrees


def _partitions(n: int, cap: int | None = None):
    # descending partitions in reverse-lex order: (n), (n-1,1), ...
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def enumerate_splittings(
    d: int,
    records: Sequence[SingularityRecord],
    *,
    bezout: bool = True,
) -> tuple[SplitHypothesis, ...]:
    """Screen every decomposition of a degree-d curve compatible with the
    records.  Branch slots are distributed over the components in all ways,
    hypotheses equal up to permutation of equal-degree components are
    listed once, and each carries the per-component chi values plus the
    first violated constraint."""
    if d < 1:
        raise ValueError("curve degree must be positive")
    slots: list[tuple[int, int]] = []
    for ri, rec in enumerate(records):
        width = len(rec.branches) if rec.branches else 1
        slots.extend((ri, bi) for bi in range(width))

    sub_cache: dict[tuple[int, tuple[int, ...]], tuple[int, int]] = {}

    def sub(ri: int, picked: tuple[int, ...]) -> tuple[int, int]:
        key = (ri, picked)
        if key not in sub_cache:
            rec = records[ri]
            if rec.branches:
                sub_cache[key] = rec.subgerm(picked)
            else:
                sub_cache[key] = (rec.mu, rec.r_loc) if picked else (0, 0)
        return sub_cache[key]

    out: list[SplitHypothesis] = []
    for degrees in _partitions(d):
        ncomp = len(degrees)
        seen: set[tuple] = set()
        for vec in itertools.product(range(ncomp), repeat=len(slots)):
            groups: list[list[int]] = [[] for _ in range(ncomp)]
            for pos, comp in enumerate(vec):
                groups[comp].append(pos)
            # canonical order: equal-degree components sorted by their slot sets
            order = sorted(
                range(ncomp), key=lambda k: (-degrees[k], groups[k])
            )
            signature = tuple(
                (degrees[k], tuple(groups[k])) for k in order
            )
            if signature in seen:
                continue
            seen.add(signature)

            renumber = {old: new for new, old in enumerate(order)}
            picked: list[list[list[int]]] = [
                [[] for _ in records] for _ in range(ncomp)
            ]
            assignment: list[list[int]] = [
                [0] * (len(rec.branches) if rec.branches else 1)
                for rec in records
            ]
            for pos, comp in enumerate(vec):
                ri, bi = slots[pos]
                comp = renumber[comp]
                picked[comp][ri].append(bi)
                assignment[ri][bi] = comp

            reason = ""
            for pos, (ri, bi) in enumerate(slots):
                spec = records[ri].branches
                if not spec:
                    continue
                comp = assignment[ri][bi]
                if degrees[comp] < spec[bi].min_degree:
                    reason = (
                        f"branch {spec[bi].label} needs degree"
                        f" >= {spec[bi].min_degree}"
                    )
                    break

            chis = []
            for comp in range(ncomp):
                pairs = [
                    sub(ri, tuple(picked[comp][ri]))
                    for ri in range(len(records))
                    if picked[comp][ri]
                ]
                chis.append(euler_check(degrees[comp], pairs).chi)
            if not reason:
                for comp, chi in enumerate(chis):
                    if chi > 2:
                        reason = f"component of degree {degrees[comp]} has chi {chi}"
                        break
            if not reason and bezout:
                for a, b in itertools.combinations(range(ncomp), 2):
                    total = 0
                    for ri, rec in enumerate(records):
                        if not rec.branches:
                            continue
                        total += sum(
                            rec.meets[i][j]
                            for i in picked[a][ri]
                            for j in picked[b][ri]
                        )
                    if total > degrees[a] * degrees[b]:
                        reason = (
                            f"components of degrees {degrees[a]} and"
                            f" {degrees[b]} would meet {total} times"
                        )
                        break

            out.append(
                SplitHypothesis(
                    degrees=degrees,
                    assignment=tuple(tuple(row) for row in assignment),
                    chis=tuple(chis),
                    feasible=not reason,
                    reason=reason,
                )
            )
    return tuple(out)


def survivors(hypotheses: Iterable[SplitHypothesis]) -> tuple[tuple[int, ...], ...]:
    """Distinct degree profiles that admit at least one feasible
    assignment, in first-seen order."""
    out: list[tuple[int, ...]] = []
    for hyp in hypotheses:
        if hyp.feasible and hyp.degrees not in out:
            out.append(hyp.degrees)
    return tuple(out)


def hypothesis_to_dict(hyp: SplitHypothesis) -> dict:
    return {
        "degrees": list(hyp.degrees),
        "assignment": [list(row) for row in hyp.assignment],
        "chis": list(hyp.chis),
        "feasible": hyp.feasible,
        "reason": hyp.reason,
    }
