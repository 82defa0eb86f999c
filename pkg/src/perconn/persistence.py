"""Persistence functions on the critical grid and their diagrams.

The engine counts, for every grid cell (u, v) with u <= v, the maximal
components of the level at v that contain some maximal component of the
level at u.  That count is tabulated only on critical values: between
consecutive criticals the filtration is constant, so the grid determines
the function everywhere.  The value at (u, infinity) equals the value at
(u, last critical) because filtrations stabilize.

Diagram extraction is inclusion-exclusion over the grid: the multiplicity
of a proper cornerpoint (c_i, c_j) is

    p(c_i, c_{j-1}) - p(c_{i-1}, c_{j-1}) - p(c_i, c_j) + p(c_{i-1}, c_j)

with a zero row before the first critical value, and the multiplicity at
infinity for birth c_i is p(c_i, inf) - p(c_{i-1}, inf).  Every tabulated
function is reconstructed exactly from its diagram at off-critical points.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graphs import Filtration, FormatError, SimpleGraph, format_weight

WORKERS_ENV = "PERCONN_WORKERS"


class PersistenceAxiomError(ValueError):
    """A tabulated function violates the persistence axioms (provider bug)."""


@dataclass(frozen=True)
class Cornerpoint:
    """Birth-death pair with positive integer multiplicity; death may be inf."""

    birth: float
    death: float
    multiplicity: int = 1

    def __post_init__(self):
        if not math.isfinite(self.birth):
            raise ValueError(f"cornerpoint birth must be finite, got {self.birth!r}")
        if not self.birth < self.death:
            raise ValueError(f"cornerpoint needs birth < death, got ({self.birth!r}, {self.death!r})")
        if self.multiplicity < 1 or int(self.multiplicity) != self.multiplicity:
            raise ValueError(f"multiplicity must be a positive integer, got {self.multiplicity!r}")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class Diagram:
    """Finite multiset of cornerpoints, one entry per (birth, death) pair."""

    points: tuple[Cornerpoint, ...]

    def finite_points(self) -> list[Cornerpoint]:
        return [p for p in self.points if not p.is_infinite]

    def infinite_points(self) -> list[Cornerpoint]:
        return [p for p in self.points if p.is_infinite]

    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)

    def __iter__(self):
        return iter(self.points)


def diagram(points: Iterable[Cornerpoint]) -> Diagram:
    """Canonical diagram: multiplicities aggregated, sorted by (birth, death)."""
    acc: dict[tuple[float, float], int] = {}
    for p in points:
        key = (p.birth, p.death)
        acc[key] = acc.get(key, 0) + p.multiplicity
    pts = tuple(Cornerpoint(b, d, m) for (b, d), m in sorted(acc.items()))
    return Diagram(pts)


@dataclass(frozen=True)
class PersistenceFunction:
    """Integer persistence values tabulated on the critical grid.

    ``rows[i][j - i]`` holds p(c_i, c_j) for i <= j; ``inf_column[i]``
    holds p(c_i, inf).
    """

    criticals: tuple[float, ...]
    rows: tuple[tuple[int, ...], ...]
    inf_column: tuple[int, ...]

    @property
    def grid_size(self) -> int:
        return len(self.criticals)

    def value(self, i: int, j: int) -> int:
        """p(c_i, c_j) for grid indices i <= j; i == -1 means below the grid."""
        if i < 0 or j < 0:
            return 0
        return self.rows[i][j - i]

    def value_at_infinity(self, i: int) -> int:
        if i < 0:
            return 0
        return self.inf_column[i]

    def at(self, beta: float, gamma: float) -> int:
        """p(beta, gamma) for real arguments, beta <= gamma; constant between criticals."""
        if beta > gamma:
            raise ValueError("persistence queries need beta <= gamma")
        i = bisect_right(self.criticals, beta) - 1
        if i < 0:
            return 0
        j = bisect_right(self.criticals, gamma) - 1
        return self.value(i, j)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def tabulate_persistence(
    criticals: Sequence[float],
    level_components,
    contains: Callable,
) -> PersistenceFunction:
    """Tabulate p over the grid given per-level component lists.

    ``level_components[j]`` lists the maximal components of the level at
    ``criticals[j]``; ``contains(d, c)`` decides whether component ``d`` of
    an earlier level is included in component ``c`` of a later one.
    """
    m = len(criticals)
    if m == 0:
        raise ValueError("a filtration needs at least one critical value")
    rows = [[0] * (m - i) for i in range(m)]
    for j in range(m):
        comps_j = level_components[j]
        for i in range(j + 1):
            comps_i = level_components[i]
            count = 0
            for c in comps_j:
                if any(contains(d, c) for d in comps_i):
                    count += 1
            rows[i][j - i] = count
    inf_column = tuple(rows[i][m - 1 - i] for i in range(m))
    return PersistenceFunction(tuple(criticals), tuple(tuple(r) for r in rows), inf_column)


def persistence_function(filt: Filtration, spec, provider=None, workers: int | None = None) -> PersistenceFunction:
    """Tabulate the persistence function of a graph filtration under a property.

    ``provider`` maps a SimpleGraph to its list of maximal components; it
    defaults to the connectivity provider for ``spec``.  Levels are
    independent, so they may be computed by a small thread pool
    (``PERCONN_WORKERS``); the result does not depend on scheduling.
    """
    if provider is None:
        from .connectivity import property_components

        provider = lambda g: property_components(g, spec)
    levels = [filt.sublevel_at(i) for i in range(len(filt.criticals))]
    n = workers if workers is not None else worker_count()
    if n > 1 and len(levels) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            comps = list(pool.map(provider, levels))
    else:
        comps = [provider(g) for g in levels]
    return tabulate_persistence(filt.criticals, comps, lambda d, c: c.includes(d))


def check_axioms(pf: PersistenceFunction) -> str | None:
    """First violated persistence axiom as a message, or None if all hold.

    Checks nonnegativity, monotonicity in each argument, and the jump
    superadditivity p(u2,v1) - p(u1,v1) >= p(u2,v2) - p(u1,v2) over the
    grid including the infinity column.  The superadditivity direction is
    the one that makes every cornerpoint multiplicity nonnegative.
    """
    m = pf.grid_size

    def val(i: int, j: int) -> int:
        return pf.value_at_infinity(i) if j == m else pf.value(i, j)

    def label(j: int) -> str:
        return "inf" if j == m else format_weight(pf.criticals[j])

    for i in range(m):
        for j in range(i, m + 1):
            if val(i, j) < 0:
                return f"negative value p({format_weight(pf.criticals[i])}, {label(j)})"
    for i1 in range(m):
        for i2 in range(i1, m):
            for j1 in range(i2, m + 1):
                a, b = val(i1, j1), val(i2, j1)
                if a > b:
                    return (
                        "non-decreasing in the first argument violated: "
                        f"p({format_weight(pf.criticals[i1])}, {label(j1)}) = {a} > "
                        f"p({format_weight(pf.criticals[i2])}, {label(j1)}) = {b}"
                    )
                for j2 in range(j1, m + 1):
                    c, d = val(i1, j2), val(i2, j2)
                    if d > b:
                        return (
                            "non-increasing in the second argument violated: "
                            f"p({format_weight(pf.criticals[i2])}, {label(j2)}) = {d} > "
                            f"p({format_weight(pf.criticals[i2])}, {label(j1)}) = {b}"
                        )
                    if b - a > d - c:
                        return (
                            "jump superadditivity violated at "
                            f"u1={format_weight(pf.criticals[i1])}, u2={format_weight(pf.criticals[i2])}, "
                            f"v1={label(j1)}, v2={label(j2)}: {b}-{a} > {d}-{c}"
                        )
    return None


def extract_diagram(pf: PersistenceFunction) -> Diagram:
    """Cornerpoints with their multiplicities from the tabulated grid."""
    m = pf.grid_size
    pts: list[Cornerpoint] = []
    for i in range(m):
        for j in range(i + 1, m):
            mu = (
                pf.value(i, j - 1)
                - pf.value(i - 1, j - 1)
                - pf.value(i, j)
                + pf.value(i - 1, j)
            )
            if mu < 0:
                raise PersistenceAxiomError(
                    f"negative multiplicity {mu} at ({pf.criticals[i]!r}, {pf.criticals[j]!r})"
                )
            if mu > 0:
                pts.append(Cornerpoint(pf.criticals[i], pf.criticals[j], mu))
        mu_inf = pf.value_at_infinity(i) - pf.value_at_infinity(i - 1)
        if mu_inf < 0:
            raise PersistenceAxiomError(
                f"negative multiplicity {mu_inf} at ({pf.criticals[i]!r}, inf)"
            )
        if mu_inf > 0:
            pts.append(Cornerpoint(pf.criticals[i], math.inf, mu_inf))
    return diagram(pts)


def evaluate_diagram(d: Diagram, beta: float, gamma: float) -> int:
    """Sum of multiplicities with birth < beta and death > gamma.

    beta and gamma must avoid the coordinates of the diagram (these are the
    only possible discontinuity lines of the reconstructed function) and
    satisfy beta <= gamma, gamma finite.
    """
    if beta > gamma:
        raise ValueError("evaluation needs beta <= gamma")
    if math.isinf(gamma) or math.isinf(beta):
        raise ValueError("evaluation points must be finite")
    coords = {p.birth for p in d.points} | {p.death for p in d.points if not p.is_infinite}
    if beta in coords or gamma in coords:
        raise ValueError("evaluation at a discontinuity point is not defined")
    return sum(p.multiplicity for p in d.points if p.birth < beta and p.death > gamma)


def serialize_diagram(d: Diagram) -> str:
    """One 'birth death multiplicity' record per cornerpoint, 'inf' for infinity."""
    lines = []
    for p in d.points:
        death = "inf" if p.is_infinite else format_weight(p.death)
        lines.append(f"{format_weight(p.birth)} {death} {p.multiplicity}")
    return "".join(line + "\n" for line in lines)


def parse_diagram(text: str) -> Diagram:
    pts: list[Cornerpoint] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError("diagram record must be '<birth> <death> <multiplicity>'", ln)
        try:
            birth = float(parts[0])
            death = math.inf if parts[1] == "inf" else float(parts[1])
            mult = int(parts[2])
        except ValueError:
            raise FormatError(f"bad diagram record {line!r}", ln) from None
        try:
            pts.append(Cornerpoint(birth, death, mult))
        except ValueError as exc:
            raise FormatError(str(exc), ln) from None
    return diagram(pts)
