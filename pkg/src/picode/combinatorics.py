"""Compositions, multinomials, falling factorials, Stirling numbers and orbit distances.

A weight vector ``n = (n_1, ..., n_q)`` is a composition of ``N`` into ``q``
non-negative parts.  It labels the orbit of length-``N`` strings over
``{1, ..., q}`` in which letter ``i`` occurs ``n_i`` times, and therefore the
Dicke state supported on that orbit.  Weight vectors are plain tuples of ints.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from functools import lru_cache

from picode.errors import PartitionMismatch, TooFewOrbits

WeightVector = tuple[int, ...]


def weight_vector(parts: Iterable[int], N: int | None = None, q: int | None = None) -> WeightVector:
    """Validate and normalize a composition.

    Raises:
        PartitionMismatch: a part is negative, or the sum/length disagree with ``N``/``q``.
    """
    n = tuple(int(x) for x in parts)
    if any(x < 0 for x in n):
        raise PartitionMismatch(f"negative part in {n}")
    if q is not None and len(n) != q:
        raise PartitionMismatch(f"{n} has {len(n)} parts, expected {q}")
    if N is not None and sum(n) != N:
        raise PartitionMismatch(f"{n} sums to {sum(n)}, expected {N}")
    return n


def multinomial(N: int, n: Sequence[int]) -> int:
    """``N! / (n_1! ... n_q!)`` as a product of binomials."""
    if any(x < 0 for x in n) or sum(n) != N:
        raise PartitionMismatch(f"{tuple(n)} is not a composition of {N}")
    result, running = 1, 0
    for part in n:
        running += part
        result *= math.comb(running, part)
    return result


def falling_factorial(z: int, j: int) -> int:
    """``(z)_j = z (z-1) ... (z-j+1)``; the empty product is 1."""
    if j < 0:
        raise ValueError("falling factorial order must be non-negative")
    out = 1
    for k in range(j):
        out *= z - k
    return out


@lru_cache(maxsize=None)
def stirling2(c: int, j: int) -> int:
    """Stirling number of the second kind via ``S(c,j) = j S(c-1,j) + S(c-1,j-1)``."""
    if c < 0 or j < 0:
        raise ValueError("Stirling indices must be non-negative")
    if c == 0 or j == 0:
        return 1 if c == j else 0
    if j > c:
        return 0
    return j * stirling2(c - 1, j) + stirling2(c - 1, j - 1)


def enumerate_compositions(w: int, q: int) -> list[WeightVector]:
    """All compositions of ``w`` into ``q`` parts, in lexicographic order."""
    if q < 1:
        raise ValueError("q must be positive")
    if q == 1:
        return [(w,)]
    out = []
    for first in range(w + 1):
        for rest in enumerate_compositions(w - first, q - 1):
            out.append((first,) + rest)
    return out


def _check_compatible(n: Sequence[int], u: Sequence[int]) -> None:
    if len(n) != len(u) or sum(n) != sum(u):
        raise PartitionMismatch(f"{tuple(n)} and {tuple(u)} are not compositions of the same N into the same q")


def orbit_min_distance(n: Sequence[int], u: Sequence[int]) -> int:
    """Minimum Hamming distance between the orbits labelled by ``n`` and ``u``.

    Uses the closed form ``sum_i |n_i - u_i| / 2``: align as many equal
    letters as the counts allow; each leftover position is a mismatch and is
    counted once from each side.
    """
    _check_compatible(n, u)
    return sum(abs(a - b) for a, b in zip(n, u)) // 2


def orbit_min_distance_bruteforce(n: Sequence[int], u: Sequence[int]) -> int:
    """Definitional minimum over all string pairs; exponential, for validation only."""
    _check_compatible(n, u)
    q = len(n)
    # Fixing x to one representative is enough: permuting positions preserves distance.
    x = [i for i in range(q) for _ in range(n[i])]
    ys = set(itertools.permutations([i for i in range(q) for _ in range(u[i])]))
    return min(sum(a != b for a, b in zip(x, y)) for y in ys)


def set_min_distance(T: Iterable[Sequence[int]]) -> int:
    """Minimum orbit distance over unordered pairs of distinct weight vectors in ``T``."""
    distinct = sorted({tuple(n) for n in T})
    if len(distinct) < 2:
        raise TooFewOrbits("need at least two distinct weight vectors")
    return min(orbit_min_distance(a, b) for a, b in itertools.combinations(distinct, 2))


def closest_pair(T: Iterable[Sequence[int]]) -> tuple[WeightVector, WeightVector, int]:
    """Like :func:`set_min_distance`, but also return a pair that attains the minimum."""
    distinct = sorted({tuple(n) for n in T})
    if len(distinct) < 2:
        raise TooFewOrbits("need at least two distinct weight vectors")
    best = min(itertools.combinations(distinct, 2), key=lambda pair: orbit_min_distance(*pair))
    return best[0], best[1], orbit_min_distance(*best)


@lru_cache(maxsize=None)
def primes_upto(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def factorial_prime_exponents(n: int) -> dict[int, int]:
    """Prime factorization of ``n!`` by Legendre's formula."""
    out = {}
    for p in primes_upto(n):
        e, pk = 0, p
        while pk <= n:
            e += n // pk
            pk *= p
        out[p] = e
    return out


def multinomial_prime_exponents(N: int, n: Sequence[int]) -> dict[int, int]:
    """Prime factorization of ``multinomial(N, n)``."""
    if any(x < 0 for x in n) or sum(n) != N:
        raise PartitionMismatch(f"{tuple(n)} is not a composition of {N}")
    out = factorial_prime_exponents(N)
    for part in n:
        for p, e in factorial_prime_exponents(part).items():
            out[p] -= e
    return {p: e for p, e in out.items() if e}
