"""Permutations of [n] in one-line notation, Bruhat order, and duality.

A permutation is a tuple ``(u(1), ..., u(n))`` of the values 1..n; read as
coordinates, the same tuple is the corresponding lattice point of R^n.
Everything here is a pure function over immutable tuples.

>>> length((5, 1, 4, 2, 3))
6
>>> dual_permutation((3, 1, 6, 5, 4, 2))
(4, 6, 1, 2, 3, 5)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import DomainError

Perm = tuple[int, ...]

# a full chain of subsets B_1 c B_2 c ... c B_n = [n]
Chain = tuple[frozenset[int], ...]


def perm(values) -> Perm:
    """Validate and normalize one-line notation (a bijection of [n])."""
    p = tuple(int(v) for v in values)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise DomainError(f"not a permutation of [{len(p)}]: {p}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def longest(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def length(p: Perm) -> int:
    """Coxeter length = inversion count.

    >>> length((1, 2, 3, 4))
    0
    >>> length((4, 3, 2, 1))
    6
    """
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def bruhat_covers(p: Perm) -> frozenset[Perm]:
    """All covers of p: swap any two positions, keep results of length+1.

    >>> sorted(bruhat_covers((1, 3, 2)))
    [(2, 3, 1), (3, 1, 2)]
    """
    n = len(p)
    lp = length(p)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            q = list(p)
            q[i], q[j] = q[j], q[i]
            q = tuple(q)
            if length(q) == lp + 1:
                out.add(q)
    return frozenset(out)


@lru_cache(maxsize=262144)
def _sorted_prefixes(p: Perm) -> tuple[tuple[int, ...], ...]:
    # prefixes of length 1..n-1; the full prefix is always equal between perms
    return tuple(tuple(sorted(p[:k])) for k in range(1, len(p)))


def bruhat_leq(u: Perm, v: Perm) -> bool:
    """Strong Bruhat order via the sorted-prefix (tableau) criterion."""
    if len(u) != len(v):
        raise DomainError(f"mismatched sizes: {len(u)} vs {len(v)}")
    if u == v:
        return True
    for su, sv in zip(_sorted_prefixes(u), _sorted_prefixes(v)):
        for a, b in zip(su, sv):
            if a > b:
                return False
    return True


def bruhat_interval(u: Perm, v: Perm) -> tuple[Perm, ...]:
    """All z with u <= z <= v, sorted lexicographically."""
    if not bruhat_leq(u, v):
        raise DomainError(f"{u} is not <= {v} in Bruhat order")
    n = len(u)
    return tuple(
        z
        for z in permutations(range(1, n + 1))
        if bruhat_leq(u, z) and bruhat_leq(z, v)
    )


def dual_permutation(t: Perm) -> Perm:
    """Entrywise complement j -> n - t(j) + 1; an order-reversing involution."""
    n = len(t)
    return tuple(n - x + 1 for x in t)


@dataclass(frozen=True)
class BruhatInterval:
    lo: Perm
    hi: Perm

    def __post_init__(self):
        if not bruhat_leq(self.lo, self.hi):
            raise DomainError(f"{self.lo} is not <= {self.hi} in Bruhat order")

    @property
    def n(self) -> int:
        return len(self.lo)

    def members(self) -> tuple[Perm, ...]:
        return bruhat_interval(self.lo, self.hi)


def dual_interval(iv: BruhatInterval) -> BruhatInterval:
    """[lo, hi] -> [hi*, lo*]; an involution."""
    return BruhatInterval(dual_permutation(iv.hi), dual_permutation(iv.lo))


def set_sequences(a, n: int):
    """Four value sequences attached to a subset A of [n].

    Returns ``(inc, dec, e_rest, w_rest)`` where ``inc``/``dec`` list A
    increasingly/decreasingly and ``e_rest``/``w_rest`` are the identity and
    the longest permutation with the values of A deleted.  Concatenate with
    ``+`` to build permutations, e.g. ``inc + e_rest``.
    """
    aset = set(a)
    if not aset <= set(range(1, n + 1)):
        raise DomainError(f"{sorted(aset)} is not a subset of [{n}]")
    inc = tuple(sorted(aset))
    dec = tuple(reversed(inc))
    e_rest = tuple(x for x in identity(n) if x not in aset)
    w_rest = tuple(x for x in longest(n) if x not in aset)
    return inc, dec, e_rest, w_rest


def _validate_chain(chain: Chain) -> tuple[frozenset[int], ...]:
    sets = tuple(frozenset(b) for b in chain)
    n = len(sets)
    if n == 0:
        raise DomainError("empty chain")
    if sets[-1] != frozenset(range(1, n + 1)):
        raise DomainError(f"chain must end in [{n}], got {sorted(sets[-1])}")
    for i, b in enumerate(sets):
        if len(b) != i + 1:
            raise DomainError(f"chain step {i + 1} has size {len(b)}, expected {i + 1}")
        if i and not sets[i - 1] < b:
            raise DomainError(f"chain step {i + 1} does not contain step {i}")
    return sets


def bruhat_permutation_of_chain(chain: Chain) -> Perm:
    """Permutation whose point form is the indicator-vector sum of the chain.

    Position i receives coordinate n - k + 1 where k is the first chain step
    containing i.

    >>> bruhat_permutation_of_chain(({1}, {1, 3}, {1, 3, 5}, {1, 3, 4, 5}, {1, 2, 3, 4, 5}))
    (5, 1, 4, 2, 3)
    """
    sets = _validate_chain(chain)
    n = len(sets)
    coord = [0] * n
    for k, b in enumerate(sets):
        for i in b:
            if coord[i - 1] == 0:
                coord[i - 1] = n - k
    return perm(coord)


def chain_of_permutation(t: Perm) -> Chain:
    """Inverse of :func:`bruhat_permutation_of_chain`.

    Step i collects the positions holding the i largest values of t.
    """
    n = len(t)
    return tuple(
        frozenset(p + 1 for p in range(n) if t[p] >= n - i + 1) for i in range(1, n + 1)
    )


def perm_to_str(p: Perm) -> str:
    """Digit string for n <= 9, comma-separated values otherwise."""
    if len(p) <= 9:
        return "".join(map(str, p))
    return ",".join(map(str, p))


def perm_from_str(s: str) -> Perm:
    s = s.strip()
    if "," in s:
        return perm(int(t) for t in s.split(","))
    if not s.isdigit():
        raise DomainError(f"malformed permutation text: {s!r}")
    return perm(int(ch) for ch in s)
