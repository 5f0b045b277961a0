"""Simultaneous hyperplane splits, their cell complexes, and the refinement poset.

A set of individually-good hyperplanes is accepted when cutting by all of
them at once creates no vertices beyond the permutations and every maximal
cell is a Bruhat interval polytope.  Accepted subdivisions are ordered by
refinement; single hyperplanes are the minimal (coarsest) elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DomainError
from .lpm import flag_of_interval
from .perm import BruhatInterval, Perm, bruhat_interval, perm_to_str
from .polytope import (
    LinearConstraint,
    affine_rank,
    as_permutation,
    enumerate_vertices,
    is_bip,
    is_permutation_point,
    permutahedron_facets,
    permutahedron_vertices,
)
from .splits import (
    SplitHyperplane,
    check_split,
    exhaustive_scan,
    hyperplane_text,
    hyperplane_to_json,
)


@dataclass(frozen=True)
class SubdivisionCell:
    """One maximal cell: its sign vector, Bruhat interval, and flag verdict."""

    signs: str  # "-" = below side, "+" = above side, per hyperplane
    interval: BruhatInterval
    lpfm: bool

    def points(self) -> tuple[Perm, ...]:
        return bruhat_interval(self.interval.lo, self.interval.hi)


@dataclass(frozen=True)
class Subdivision:
    n: int
    hyperplanes: tuple[SplitHyperplane, ...]
    cells: tuple[SubdivisionCell, ...]

    def cell_point_sets(self) -> frozenset[frozenset[Perm]]:
        return frozenset(frozenset(c.points()) for c in self.cells)


@dataclass(frozen=True)
class SubdivisionRejection:
    n: int
    hyperplanes: tuple[SplitHyperplane, ...]
    reason: str  # "new-vertex" | "non-bip-cell"
    signs: str
    witness: tuple  # offending vertex, or the offending cell's vertex tuple


def _ordered(hs) -> tuple[SplitHyperplane, ...]:
    return tuple(sorted(set(hs), key=SplitHyperplane.sort_key))


def _sign_feasible(hyps, signs) -> bool:
    # quick kill for contradictory parallel constraints on the same support
    lo: dict[frozenset, int] = {}
    hi: dict[frozenset, int] = {}
    for h, sign in zip(hyps, signs):
        if sign == "+":
            lo[h.support] = max(lo.get(h.support, h.level), h.level)
        else:
            hi[h.support] = min(hi.get(h.support, h.level), h.level)
    return all(lo[s] <= hi[s] for s in lo.keys() & hi.keys())


def subdivision_from_hyperplanes(n: int, hs):
    """Cut by every hyperplane at once; accept or reject with a witness.

    For each sign vector the constraint system (facets plus signed cuts) is
    enumerated exactly; full-dimensional cells must have only permutation
    vertices and interval point sets.
    """
    hyps = _ordered(hs)
    if not hyps:
        raise DomainError("need at least one hyperplane")
    if any(h.n != n for h in hyps):
        raise DomainError("hyperplane ground-set size differs from n")
    for h in hyps:
        report = check_split(h)
        if report.verdict != "good-split":
            raise DomainError(f"{h} is not a good split (verdict {report.verdict})")

    facets = permutahedron_facets(n)
    cells = []
    seen_point_sets = {}
    for bits in range(2 ** len(hyps)):
        signs = "".join("+" if bits & (1 << t) else "-" for t in range(len(hyps)))
        if not _sign_feasible(hyps, signs):
            continue
        cuts = [
            LinearConstraint(
                h.support, ">=" if sign == "+" else "<=", Fraction(h.level)
            )
            for h, sign in zip(hyps, signs)
        ]
        enum = enumerate_vertices(list(facets) + cuts, n)
        if not enum.points:
            continue
        if affine_rank(enum.points) < n - 1:
            continue
        strays = [p for p in enum.points if not is_permutation_point(p)]
        if strays:
            return SubdivisionRejection(
                n=n, hyperplanes=hyps, reason="new-vertex", signs=signs,
                witness=strays[0],
            )
        members = tuple(as_permutation(p) for p in enum.points)
        interval = is_bip(members)
        if interval is None:
            return SubdivisionRejection(
                n=n, hyperplanes=hyps, reason="non-bip-cell", signs=signs,
                witness=members,
            )
        key = frozenset(members)
        if key in seen_point_sets:
            continue
        _, lpfm_ok = flag_of_interval(interval)
        seen_point_sets[key] = True
        cells.append(SubdivisionCell(signs=signs, interval=interval, lpfm=lpfm_ok))

    covered = set().union(*(frozenset(c.points()) for c in cells))
    if covered != set(permutahedron_vertices(n)):
        raise RuntimeError("accepted cells do not tile the permutation set")
    return Subdivision(n=n, hyperplanes=hyps, cells=tuple(cells))


def refines(a: Subdivision, b: Subdivision) -> bool:
    """True when every cell of a sits inside some cell of b.

    Containment is tested on permutation vertex sets, which is exact for
    interval cells: the permutations inside a cell are precisely its
    vertices.
    """
    if a.n != b.n:
        raise DomainError("subdivisions on different ground sets")
    b_sets = [frozenset(c.points()) for c in b.cells]
    for cell in a.cells:
        pts = frozenset(cell.points())
        if not any(pts <= bs for bs in b_sets):
            return False
    return True


@dataclass(frozen=True)
class SubdivisionPoset:
    """Accepted subdivisions ordered by refinement (finer = higher)."""

    n: int
    elements: tuple[Subdivision, ...]
    leq: frozenset[tuple[int, int]]  # (i, j): element j refines element i
    covers: tuple[tuple[int, int], ...]

    def minimal_indices(self) -> tuple[int, ...]:
        below = {j for i, j in self.leq if i != j}
        return tuple(i for i in range(len(self.elements)) if i not in below)

    def maximal_indices(self) -> tuple[int, ...]:
        above = {i for i, j in self.leq if i != j}
        return tuple(i for i in range(len(self.elements)) if i not in above)


def build_poset(n: int) -> SubdivisionPoset:
    """Accepted subdivisions from every nonempty subset of the good splits.

    New-vertex rejections propagate to supersets (a coarse cell's vertex is a
    vertex of any refining cell), which prunes the enumeration.  Acceptance
    still requires the interval check per subset.
    """
    hyps = exhaustive_scan(n)
    rejected_minimal: list[frozenset[SplitHyperplane]] = []
    accepted: dict[frozenset, Subdivision] = {}
    for size in range(1, len(hyps) + 1):
        for combo in combinations(hyps, size):
            hset = frozenset(combo)
            if any(bad <= hset for bad in rejected_minimal):
                continue
            result = subdivision_from_hyperplanes(n, combo)
            if isinstance(result, SubdivisionRejection):
                if result.reason == "new-vertex":
                    rejected_minimal.append(hset)
                continue
            key = result.cell_point_sets()
            if key not in accepted:
                accepted[key] = result

    elements = tuple(
        sorted(
            accepted.values(),
            key=lambda s: (len(s.hyperplanes), [h.sort_key() for h in s.hyperplanes]),
        )
    )
    leq = set()
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if refines(b, a):
                leq.add((i, j))
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if set(a.hyperplanes) <= set(b.hyperplanes) and (i, j) not in leq:
                raise RuntimeError(
                    "hyperplane-subset inclusion disagrees with geometric refinement"
                )
    strict = {(i, j) for i, j in leq if i != j}
    covers = tuple(
        sorted(
            (i, j)
            for i, j in strict
            if not any((i, k) in strict and (k, j) in strict for k in range(len(elements)))
        )
    )
    return SubdivisionPoset(n=n, elements=elements, leq=frozenset(leq), covers=covers)


# --- serialization ----------------------------------------------------------


def subdivision_to_json(s: Subdivision) -> dict:
    return {
        "n": s.n,
        "hyperplanes": [hyperplane_to_json(h) for h in s.hyperplanes],
        "cells": [
            {
                "signs": c.signs,
                "lo": perm_to_str(c.interval.lo),
                "hi": perm_to_str(c.interval.hi),
                "lpfm": c.lpfm,
            }
            for c in s.cells
        ],
    }


def rejection_to_json(r: SubdivisionRejection) -> dict:
    if r.reason == "new-vertex":
        witness = [str(Fraction(x)) for x in r.witness]
    else:
        witness = [perm_to_str(p) for p in r.witness]
    return {
        "n": r.n,
        "hyperplanes": [hyperplane_to_json(h) for h in r.hyperplanes],
        "rejected": r.reason,
        "signs": r.signs,
        "witness": witness,
    }


def poset_to_json(p: SubdivisionPoset) -> dict:
    return {
        "n": p.n,
        "elements": [subdivision_to_json(s) for s in p.elements],
        "covers": [list(c) for c in p.covers],
    }


def _element_label(s: Subdivision) -> str:
    return " & ".join(hyperplane_text(h) for h in s.hyperplanes)


def export_poset(p: SubdivisionPoset, format: str) -> str:
    """DOT digraph of the cover relation, or the JSON document."""
    if format == "json":
        return json.dumps(poset_to_json(p), indent=2) + "\n"
    if format == "dot":
        lines = [f'digraph subdivisions_{p.n} {{', "  rankdir=BT;"]
        for s in p.elements:
            lines.append(f'  "{_element_label(s)}";')
        for i, j in p.covers:
            lines.append(
                f'  "{_element_label(p.elements[i])}" -> "{_element_label(p.elements[j])}";'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown export format {format!r}")
