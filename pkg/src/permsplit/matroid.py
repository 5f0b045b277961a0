"""Matroids on [n] stored extensionally by their bases.

Derived data (rank function, circuits, flats) is computed on demand and
memoized; everything stays exact and hashable.  Ground sets are canonical
[n] = {1, ..., n}; minors relabel by order-preserving shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import chain as _chain
from itertools import combinations

from .errors import DomainError, ExchangeAxiomError


@dataclass(frozen=True)
class SetMatroid:
    """Matroid given by its bases.  Build through :func:`matroid_from_bases`."""

    n: int
    bases: frozenset[frozenset[int]]
    rank: int

    def ground(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def sorted_bases(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(b)) for b in self.bases)


def powerset(iterable):
    s = list(iterable)
    return _chain.from_iterable(combinations(s, r) for r in range(len(s) + 1))


def exchange_violation(bases):
    """First (B1, B2, x) witnessing an exchange failure, or None.

    Iteration is over sorted bases so the witness is deterministic.
    """
    blist = sorted(bases, key=lambda b: tuple(sorted(b)))
    bset = set(bases)
    for b1 in blist:
        for b2 in blist:
            for x in sorted(b1 - b2):
                if not any((b1 - {x}) | {y} in bset for y in b2 - b1):
                    return b1, b2, x
    return None


def matroid_from_bases(n: int, bases) -> SetMatroid:
    """Validate the exchange axiom and equal cardinalities, then wrap."""
    bset = frozenset(frozenset(b) for b in bases)
    if not bset:
        raise DomainError("a matroid needs at least one basis")
    ground = frozenset(range(1, n + 1))
    for b in bset:
        if not b <= ground:
            raise DomainError(f"basis {sorted(b)} not a subset of [{n}]")
    sizes = {len(b) for b in bset}
    if len(sizes) != 1:
        raise DomainError(f"bases of unequal sizes: {sorted(sizes)}")
    witness = exchange_violation(bset)
    if witness is not None:
        raise ExchangeAxiomError(*witness)
    return SetMatroid(n=n, bases=bset, rank=sizes.pop())


def uniform_matroid(k: int, n: int) -> SetMatroid:
    if not 0 <= k <= n:
        raise DomainError(f"uniform matroid needs 0 <= k <= n, got k={k}, n={n}")
    return SetMatroid(
        n=n,
        bases=frozenset(frozenset(c) for c in combinations(range(1, n + 1), k)),
        rank=k,
    )


def matroid_rank(m: SetMatroid, subset) -> int:
    """rank(S) = max over bases of |B & S|."""
    s = frozenset(subset)
    return max(len(b & s) for b in m.bases)


def is_independent(m: SetMatroid, subset) -> bool:
    s = frozenset(subset)
    return any(s <= b for b in m.bases)


@lru_cache(maxsize=None)
def circuits(m: SetMatroid) -> frozenset[frozenset[int]]:
    """Minimal dependent subsets, by size-increasing sweep."""
    found: list[frozenset[int]] = []
    for size in range(1, m.n + 1):
        for c in combinations(range(1, m.n + 1), size):
            cs = frozenset(c)
            if is_independent(m, cs):
                continue
            if any(circ < cs for circ in found):
                continue
            found.append(cs)
    return frozenset(found)


@lru_cache(maxsize=None)
def flats(m: SetMatroid) -> frozenset[frozenset[int]]:
    """Subsets F with rank(F + e) > rank(F) for every e outside F."""
    out = []
    ground = range(1, m.n + 1)
    for s in powerset(ground):
        fs = frozenset(s)
        r = matroid_rank(m, fs)
        if all(matroid_rank(m, fs | {e}) > r for e in ground if e not in fs):
            out.append(fs)
    return frozenset(out)


def dual_matroid(m: SetMatroid) -> SetMatroid:
    ground = m.ground()
    return SetMatroid(
        n=m.n,
        bases=frozenset(ground - b for b in m.bases),
        rank=m.n - m.rank,
    )


def _relabel(bases, n: int, removed: int) -> frozenset[frozenset[int]]:
    # order-preserving shift of [n] \ {removed} onto [n-1]
    return frozenset(
        frozenset(x if x < removed else x - 1 for x in b) for b in bases
    )


def delete(m: SetMatroid, e: int) -> SetMatroid:
    if not 1 <= e <= m.n:
        raise DomainError(f"element {e} not in [{m.n}]")
    is_coloop = all(e in b for b in m.bases)
    if is_coloop:
        kept = frozenset(b - {e} for b in m.bases)
    else:
        kept = frozenset(b for b in m.bases if e not in b)
    return matroid_from_bases(m.n - 1, _relabel(kept, m.n, e))


def contract(m: SetMatroid, e: int) -> SetMatroid:
    if not 1 <= e <= m.n:
        raise DomainError(f"element {e} not in [{m.n}]")
    is_loop = all(e not in b for b in m.bases)
    if is_loop:
        kept = m.bases
    else:
        kept = frozenset(b - {e} for b in m.bases if e in b)
    return matroid_from_bases(m.n - 1, _relabel(kept, m.n, e))


def is_quotient(m: SetMatroid, n: SetMatroid, criterion: int = 1) -> bool:
    """Whether m is a quotient of n, under one of three equivalent criteria.

    1. every circuit of n is a union of circuits of m;
    2. every flat of m is a flat of n;
    3. basis-exchange transfer: for every basis B of n and p outside B there
       is a basis B' of m inside B such that whenever swapping some q in B'
       for p stays a basis of m, the same swap performed in B stays a basis
       of n.
    """
    if m.n != n.n:
        raise DomainError(f"mismatched ground sets: [{m.n}] vs [{n.n}]")
    if criterion == 1:
        cm = circuits(m)
        for circ in circuits(n):
            covered = frozenset().union(*(c for c in cm if c <= circ))
            if covered != circ:
                return False
        return True
    if criterion == 2:
        return flats(m) <= flats(n)
    if criterion == 3:
        ground = n.ground()
        mb = sorted(m.bases, key=lambda b: tuple(sorted(b)))
        for b in n.bases:
            for p in sorted(ground - b):
                ok = False
                for bp in mb:
                    if not bp <= b:
                        continue
                    if all(
                        (b - {q}) | {p} in n.bases
                        for q in bp
                        if (bp - {q}) | {p} in m.bases
                    ):
                        ok = True
                        break
                if not ok:
                    return False
        return True
    raise DomainError(f"unknown quotient criterion {criterion!r}")


# --- exact linear algebra over the rationals, for matrix ingestion ---------


def _as_fraction_rows(rows) -> tuple[tuple[Fraction, ...], ...]:
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if not mat:
        raise DomainError("empty matrix")
    width = {len(r) for r in mat}
    if len(width) != 1:
        raise DomainError("ragged matrix")
    return mat


def _rational_rank(rows) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    while rank < len(mat) and col < ncols:
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            f = mat[r][col] / pv
            if f:
                for c in range(col, ncols):
                    mat[r][c] -= f * mat[rank][c]
        rank += 1
        col += 1
    return rank


def matroid_from_rational_matrix(rows) -> SetMatroid:
    """Column matroid of an exact rational matrix.

    Bases are the r-subsets of columns of rank r, where r = rank of the whole
    matrix; entries may be Fractions, ints, or "p/q" strings.
    """
    mat = _as_fraction_rows(rows)
    ncols = len(mat[0])
    r = _rational_rank(mat)
    if r == 0:
        return SetMatroid(n=ncols, bases=frozenset([frozenset()]), rank=0)
    bases = []
    for cols in combinations(range(ncols), r):
        sub = [[row[c] for c in cols] for row in mat]
        if _rational_rank(sub) == r:
            bases.append(frozenset(c + 1 for c in cols))
    return matroid_from_bases(ncols, bases)


# --- JSON forms -------------------------------------------------------------


def matroid_to_json(m: SetMatroid) -> dict:
    return {"n": m.n, "bases": [list(b) for b in m.sorted_bases()]}


def matroid_from_json(doc: dict) -> SetMatroid:
    try:
        return matroid_from_bases(int(doc["n"]), doc["bases"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed matroid document: {exc}") from exc


def matrix_from_json(rows) -> tuple[tuple[Fraction, ...], ...]:
    return _as_fraction_rows(rows)


def matrix_to_json(rows) -> list[list[str]]:
    return [[str(Fraction(x)) for x in row] for row in rows]
