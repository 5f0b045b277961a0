"""Exact rational polytope kernel for the permutahedron and its subpolytopes.

No floating point anywhere: coordinates are ints or Fractions, linear systems
are solved by fraction-free (Bareiss) elimination over the integers with a
rational back-substitution at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, lcm

from .errors import DomainError
from .matroid import is_quotient
from .perm import BruhatInterval, Perm, bruhat_interval, bruhat_leq, perm

Point = tuple  # n exact rationals (ints or Fractions)


@dataclass(frozen=True)
class LinearConstraint:
    """sum of x_i over the support, compared to an exact rational level."""

    support: frozenset[int]
    sense: str  # ">=", "<=", "="
    level: Fraction

    def __post_init__(self):
        if not self.support:
            raise DomainError("constraint support must be nonempty")
        if self.sense not in (">=", "<=", "="):
            raise DomainError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "support", frozenset(int(i) for i in self.support))
        object.__setattr__(self, "level", Fraction(self.level))

    def satisfied_by(self, point: Point) -> bool:
        s = sum(point[i - 1] for i in self.support)
        if self.sense == ">=":
            return s >= self.level
        if self.sense == "<=":
            return s <= self.level
        return s == self.level


@dataclass(frozen=True)
class Face2D:
    """A 2-face of the permutahedron, given by an ordered set partition.

    Blocks are position sets; the first block carries the largest values.
    Exactly one block of size 3 gives a hexagon, two blocks of size 2 a
    square.  ``lo``/``hi`` are the Bruhat-least and -greatest vertices.
    """

    blocks: tuple[tuple[int, ...], ...]
    shape: str
    vertices: tuple[Perm, ...]
    lo: Perm
    hi: Perm


@dataclass(frozen=True)
class VertexEnumeration:
    points: tuple[Point, ...]
    diagnostic: str | None = None

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


@lru_cache(maxsize=None)
def permutahedron_vertices(n: int) -> tuple[Perm, ...]:
    if n < 1:
        raise DomainError("need n >= 1")
    return tuple(permutations(range(1, n + 1)))


def permutahedron_facets(n: int) -> tuple[LinearConstraint, ...]:
    """One >=-facet per nonempty proper subset, plus the ambient equality."""
    if n < 2:
        raise DomainError("need n >= 2")
    out = []
    for size in range(1, n):
        for s in combinations(range(1, n + 1), size):
            out.append(
                LinearConstraint(frozenset(s), ">=", Fraction(comb(size + 1, 2)))
            )
    out.append(
        LinearConstraint(frozenset(range(1, n + 1)), "=", Fraction(n * (n + 1) // 2))
    )
    return tuple(out)


@lru_cache(maxsize=None)
def permutahedron_edges(n: int) -> frozenset[frozenset[Perm]]:
    """Vertex pairs differing by a swap of two consecutive values k, k+1."""
    if n < 2:
        raise DomainError("need n >= 2")
    edges = set()
    for p in permutahedron_vertices(n):
        for k in range(1, n):
            i, j = p.index(k), p.index(k + 1)
            q = list(p)
            q[i], q[j] = q[j], q[i]
            edges.add(frozenset({p, tuple(q)}))
    return frozenset(edges)


def _ordered_partitions(positions, sizes):
    if not sizes:
        yield ()
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(sorted(positions), first):
        remaining = [p for p in positions if p not in block]
        for tail in _ordered_partitions(remaining, rest):
            yield (block,) + tail


def _face_vertices(blocks, n):
    # block t holds the next len(block) largest values, in every arrangement
    ranges = []
    top = n
    for block in blocks:
        ranges.append(tuple(range(top, top - len(block), -1)))  # descending
        top -= len(block)
    verts = []

    def rec(t, filled):
        if t == len(blocks):
            verts.append(perm(filled))
            return
        block, vals = blocks[t], ranges[t]
        for arrangement in permutations(vals):
            nxt = list(filled)
            for pos, val in zip(block, arrangement):
                nxt[pos - 1] = val
            rec(t + 1, nxt)

    rec(0, [0] * n)
    return tuple(sorted(verts))


def _block_extremes(blocks, n):
    # ascending values inside each block give the Bruhat-least vertex,
    # descending the greatest
    lo = [0] * n
    hi = [0] * n
    top = n
    for block in blocks:
        vals = list(range(top, top - len(block), -1))
        top -= len(block)
        for pos, val in zip(block, sorted(vals)):
            lo[pos - 1] = val
        for pos, val in zip(block, sorted(vals, reverse=True)):
            hi[pos - 1] = val
    return perm(lo), perm(hi)


@lru_cache(maxsize=None)
def faces_2d(n: int) -> tuple[Face2D, ...]:
    """All 2-faces: ordered set partitions of [n] into n - 2 blocks."""
    if n < 3:
        raise DomainError("need n >= 3")
    positions = tuple(range(1, n + 1))
    profiles = set()
    m = n - 2
    for spot in range(m):  # one block of size 3
        profiles.add(tuple(3 if t == spot else 1 for t in range(m)))
    for a, b in combinations(range(m), 2):  # two blocks of size 2
        profiles.add(tuple(2 if t in (a, b) else 1 for t in range(m)))
    faces = []
    for sizes in sorted(profiles):
        for blocks in _ordered_partitions(positions, sizes):
            shape = "hexagon" if 3 in sizes else "square"
            lo, hi = _block_extremes(blocks, n)
            faces.append(
                Face2D(
                    blocks=blocks,
                    shape=shape,
                    vertices=_face_vertices(blocks, n),
                    lo=lo,
                    hi=hi,
                )
            )
    return tuple(faces)


def flag_polytope_vertices(constituents) -> frozenset[Point]:
    """Indicator-vector sums over chains of bases, one basis per constituent."""
    parts = list(constituents)
    if not parts:
        raise DomainError("empty flag")
    n = parts[0].n
    for a, b in zip(parts, parts[1:]):
        if not is_quotient(a, b):
            raise DomainError("consecutive constituents are not quotients")
    base_lists = [sorted(m.bases, key=lambda s: tuple(sorted(s))) for m in parts]
    points = set()

    def rec(level, prev, acc):
        if level == len(parts):
            points.add(tuple(acc))
            return
        for b in base_lists[level]:
            if prev is not None and not prev <= b:
                continue
            nxt = list(acc)
            for i in b:
                nxt[i - 1] += 1
            rec(level + 1, b, nxt)

    rec(0, None, [0] * n)
    return frozenset(points)


def is_bip(points) -> BruhatInterval | None:
    """Recognize a point set as a full Bruhat interval.

    Needs a unique minimal and maximal element whose interval reproduces the
    set exactly; every point must be a permutation.
    """
    pts = sorted({perm(p) for p in points})
    if not pts:
        return None
    minimal = [
        p for p in pts if not any(q != p and bruhat_leq(q, p) for q in pts)
    ]
    maximal = [
        p for p in pts if not any(q != p and bruhat_leq(p, q) for q in pts)
    ]
    if len(minimal) != 1 or len(maximal) != 1:
        return None
    lo, hi = minimal[0], maximal[0]
    if not bruhat_leq(lo, hi):
        return None
    if set(bruhat_interval(lo, hi)) != set(pts):
        return None
    return BruhatInterval(lo, hi)


# --- exact vertex enumeration ------------------------------------------------


def _solve_square(rows, rhs, n):
    """Unique rational solution of an n x n integer system, or None.

    Bareiss fraction-free forward elimination, Fraction back-substitution.
    """
    a = [list(rows[i]) + [rhs[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return None
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        pk = a[k][k]
        for r in range(k + 1, n):
            ark = a[r][k]
            row_r, row_k = a[r], a[k]
            for c in range(k + 1, n + 1):
                row_r[c] = (row_r[c] * pk - ark * row_k[c]) // prev
            row_r[k] = 0
        prev = pk
    xs: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * xs[j]
        xs[i] = s / a[i][i]
    return tuple(xs)


def _matrix_rank_int(rows) -> int:
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank, col = 0, 0
    while rank < len(mat) and col < ncols:
        piv = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pk = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            f = mat[r][col]
            if f:
                mat[r] = [pk * x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def affine_rank(points) -> int:
    """Dimension of the affine span of exact points."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if len(pts) < 2:
        return 0
    base = pts[0]
    rows = []
    for p in pts[1:]:
        diff = [x - y for x, y in zip(p, base)]
        den = lcm(*(f.denominator for f in diff)) if diff else 1
        rows.append([int(f * den) for f in diff])
    return _matrix_rank_int(rows)


def enumerate_vertices(constraints, n: int) -> VertexEnumeration:
    """Exact vertex set of the polytope described by the constraints.

    Every equality is always tight; candidate vertices come from making
    (n - rank of equalities) inequalities tight and solving exactly.
    Singular selections are skipped; solutions violating any constraint are
    dropped; the surviving points are deduplicated and sorted.
    """
    cons = list(constraints)
    eq_rows, eq_rhs = [], []
    ineqs = []
    for c in cons:
        den = c.level.denominator
        row = [den if i in c.support else 0 for i in range(1, n + 1)]
        rhs = c.level.numerator
        if c.sense == "=":
            eq_rows.append(row)
            eq_rhs.append(rhs)
        else:
            ineqs.append((c, row, rhs))

    # (support, level) -> int comparisons for the feasibility filter
    checks = []
    for c in cons:
        idx = tuple(i - 1 for i in sorted(c.support))
        checks.append((idx, c.sense, c.level))

    # keep an independent subset of the equality rows so redundant copies of
    # the ambient equality cannot make every candidate system non-square
    kept_rows, kept_rhs = [], []
    for row, rhs in zip(eq_rows, eq_rhs):
        if _matrix_rank_int(kept_rows + [row]) > len(kept_rows):
            kept_rows.append(row)
            kept_rhs.append(rhs)
    eq_rows, eq_rhs = kept_rows, kept_rhs

    k = n - len(eq_rows)
    found = {}
    for chosen in combinations(range(len(ineqs)), k):
        supports = {ineqs[t][0].support for t in chosen}
        if len(supports) < k:
            continue  # same support twice can never be simultaneously tight
        rows = eq_rows + [ineqs[t][1] for t in chosen]
        rhs = eq_rhs + [ineqs[t][2] for t in chosen]
        if len(rows) != n:
            continue
        x = _solve_square(rows, rhs, n)
        if x is None:
            continue
        den = lcm(*(f.denominator for f in x))
        nums = [int(f * den) for f in x]
        ok = True
        for idx, sense, level in checks:
            lhs = sum(nums[i] for i in idx) * level.denominator
            rhs_v = level.numerator * den
            if sense == ">=":
                ok = lhs >= rhs_v
            elif sense == "<=":
                ok = lhs <= rhs_v
            else:
                ok = lhs == rhs_v
            if not ok:
                break
        if ok:
            key = tuple(int(f) if f.denominator == 1 else f for f in x)
            found.setdefault(key, key)
    points = tuple(sorted(found, key=lambda p: tuple(Fraction(x) for x in p)))
    if not points:
        return VertexEnumeration(points=(), diagnostic="empty-or-unbounded")
    return VertexEnumeration(points=points)


def is_permutation_point(p: Point) -> bool:
    vals = []
    for x in p:
        f = Fraction(x)
        if f.denominator != 1:
            return False
        vals.append(f.numerator)
    return sorted(vals) == list(range(1, len(vals) + 1))


def as_permutation(p: Point) -> Perm:
    if not is_permutation_point(p):
        raise DomainError(f"{p} is not a permutation point")
    return perm(int(x) for x in p)


# --- JSON forms -------------------------------------------------------------


def constraint_to_json(c: LinearConstraint) -> dict:
    return {"S": sorted(c.support), "sense": c.sense, "level": str(c.level)}


def constraint_from_json(doc: dict) -> LinearConstraint:
    try:
        return LinearConstraint(frozenset(doc["S"]), doc["sense"], Fraction(doc["level"]))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed constraint document: {exc}") from exc


def point_to_json(p: Point) -> list[str]:
    return [str(Fraction(x)) for x in p]


def point_from_json(doc) -> Point:
    vals = tuple(Fraction(x) for x in doc)
    return tuple(int(v) if v.denominator == 1 else v for v in vals)
