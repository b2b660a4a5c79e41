"""Exact Knill-Laflamme certification in the Dicke basis.

For permutation-invariant states it is enough to test matrix units
``|s><s'|`` acting on the first ``w`` qudits:

* every operator of weight at most ``w`` is a sum of operators each supported
  on some ``w``-subset, and conjugating by a qudit permutation moves that
  subset to the front while fixing every code vector;
* ``|s><s'| (x) I`` spans all operators on the first ``w`` qudits (lower
  weights included, since ``I`` on a qudit is a sum of matrix units);
* ``<D_n| |s><s'| (x) I |D_m>`` depends on ``s`` and ``s'`` only through
  their letter counts ``a`` and ``a'``.

So a weight-``w`` check visits ``|T_{w,q}|**2`` classes ``(a, a')`` instead
of ``q**(2w)`` matrix units, and never touches a ``q**N`` dimensional vector.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from picode.codegen import PICode
from picode.combinatorics import (
    WeightVector,
    enumerate_compositions,
    multinomial,
    multinomial_prime_exponents,
    weight_vector,
)
from picode.errors import InsufficientPoints, PartitionMismatch
from picode.exactnum import ZERO, RadicalSum, format_rational, sqrt_of_prime_powers
from picode.polyid import PartitionPolynomialTuple, RationalPolynomial, validate_partition_tuple


@dataclass(frozen=True, order=True)
class MatrixUnitClass:
    """Matrix units ``|s><s'|`` on the first ``w`` qudits with ``wt(s) = a``, ``wt(s') = a_prime``."""

    w: int
    a: WeightVector
    a_prime: WeightVector

    def __post_init__(self) -> None:
        if len(self.a) != len(self.a_prime) or sum(self.a) != self.w or sum(self.a_prime) != self.w:
            raise PartitionMismatch(f"{self.a}, {self.a_prime} are not compositions of {self.w} into equal parts")

    @property
    def q(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {"a": list(self.a), "a_prime": list(self.a_prime)}


def matrix_unit_classes(w: int, q: int) -> list[MatrixUnitClass]:
    comps = enumerate_compositions(w, q)
    return [MatrixUnitClass(w, a, b) for a in comps for b in comps]


def identity_class(q: int) -> MatrixUnitClass:
    return MatrixUnitClass(0, (0,) * q, (0,) * q)


@lru_cache(maxsize=65536)
def _inv_sqrt_multinomial_pair(N: int, n: WeightVector, m: WeightVector) -> RadicalSum:
    exps = dict(multinomial_prime_exponents(N, n))
    for p, e in multinomial_prime_exponents(N, m).items():
        exps[p] = exps.get(p, 0) + e
    return sqrt_of_prime_powers({p: -e for p, e in exps.items()})


@lru_cache(maxsize=65536)
def _dicke_element(n: WeightVector, m: WeightVector, w: int, a: WeightVector, a_prime: WeightVector, N: int) -> RadicalSum:
    rest = tuple(x - y for x, y in zip(n, a))
    if any(x < 0 for x in rest) or rest != tuple(x - y for x, y in zip(m, a_prime)):
        return ZERO
    count = multinomial(N - w, rest)
    if n == m:
        return RadicalSum.from_rational(Fraction(count, multinomial(N, n)))
    return _inv_sqrt_multinomial_pair(N, n, m) * count


def dicke_matrix_element(n: WeightVector, m: WeightVector, cls: MatrixUnitClass, N: int) -> RadicalSum:
    """``<D_n| (|s><s'| (x) I) |D_m>`` for any ``s``, ``s'`` in the class.

    Nonzero only when ``n - a = m - a'`` is a composition of ``N - w``; then
    it is ``multinomial(N-w, n-a) / sqrt(multinomial(N,n) multinomial(N,m))``.
    """
    n = weight_vector(n, N=N)
    m = weight_vector(m, N=N, q=len(n))
    if cls.q != len(n):
        raise PartitionMismatch(f"class has q = {cls.q} but weight vectors have {len(n)} parts")
    if cls.w > N:
        raise PartitionMismatch(f"operator weight {cls.w} exceeds N = {N}")
    return _dicke_element(n, m, cls.w, cls.a, cls.a_prime, N)


def logical_matrix_element(code: PICode, a_idx: int, b_idx: int, cls: MatrixUnitClass) -> RadicalSum:
    """``<a_L| (|s><s'| (x) I) |b_L>`` summed over the Dicke supports."""
    if not (0 <= a_idx < code.d and 0 <= b_idx < code.d):
        raise IndexError(f"logical indices must be below d = {code.d}")
    total = ZERO
    for n, alpha in code.logical[a_idx]:
        for m, beta in code.logical[b_idx]:
            element = _dicke_element(n, m, cls.w, cls.a, cls.a_prime, code.N)
            if element:
                total = total + alpha * beta * element
    return total


@dataclass(frozen=True)
class Violation:
    cls: MatrixUnitClass
    pair: tuple[int, int]
    value: RadicalSum  # off-diagonal element, or diagonal minus the logical-zero diagonal

    def to_json(self) -> dict:
        return {"class": self.cls.to_json(), "pair": list(self.pair), "value": self.value.to_json()}


@dataclass(frozen=True)
class KLCertificate:
    code_id: str
    w: int
    classes: tuple[MatrixUnitClass, ...]
    gram: tuple[tuple[tuple[RadicalSum, ...], ...], ...]  # gram[class][a][b]
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def witness(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "w": self.w,
            "violations": [v.to_json() for v in self.violations],
            "gram_diag": [{**cls.to_json(), "value": g[0][0].to_json()} for cls, g in zip(self.classes, self.gram)],
        }


def _thread_count(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("PICODE_THREADS", "0") or 0) or (os.cpu_count() or 1)
    return max(1, threads)


def _class_table(code: PICode, cls: MatrixUnitClass) -> tuple[tuple[tuple[RadicalSum, ...], ...], list[Violation]]:
    d = code.d
    table = tuple(tuple(logical_matrix_element(code, i, j, cls) for j in range(d)) for i in range(d))
    violations = []
    for i, j in itertools.product(range(d), repeat=2):
        if i == j:
            if i and table[i][i] != table[0][0]:
                violations.append(Violation(cls, (i, i), table[i][i] - table[0][0]))
        elif table[i][j]:
            violations.append(Violation(cls, (i, j), table[i][j]))
    return table, violations


def check_weight(code: PICode, w: int, threads: int | None = None) -> KLCertificate:
    """Knill-Laflamme conditions for every matrix-unit class of weight ``w``."""
    if w > code.N:
        raise ValueError(f"weight {w} exceeds N = {code.N}")
    classes = matrix_unit_classes(w, code.q)
    workers = _thread_count(threads)
    if workers == 1:
        results = [_class_table(code, cls) for cls in classes]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _class_table(code, c), classes))
    gram = tuple(r[0] for r in results)
    violations = tuple(v for r in results for v in r[1])
    return KLCertificate(code.construction, w, tuple(classes), gram, violations)


def kl_certify(code: PICode, t: int, threads: int | None = None) -> KLCertificate:
    """Certify that ``code`` corrects ``t`` errors (all classes of weight ``2t``)."""
    if t < 1 or 2 * t > code.N:
        raise ValueError(f"need 1 <= t and 2t <= N = {code.N}")
    return check_weight(code, 2 * t, threads)


@dataclass(frozen=True)
class DistanceReport:
    w_max: int
    distance: int | None  # None: no violation up to w_max
    witness: Violation | None

    @property
    def lower_bound(self) -> int:
        return self.distance if self.distance is not None else self.w_max + 1

    def to_json(self) -> dict:
        return {
            "w_max": self.w_max,
            "distance": self.distance,
            "exact": self.distance is not None,
            "lower_bound": self.lower_bound,
            "statement": f"distance = {self.distance}" if self.distance is not None else f"distance > {self.w_max}",
            "witness": self.witness.to_json() if self.witness else None,
        }


def certify_distance(code: PICode, w_max: int, threads: int | None = None) -> DistanceReport:
    """Smallest weight ``w <= w_max`` carrying a Knill-Laflamme violation.

    A violating class is itself a weight-``w`` operator, so the first
    violating weight is the exact distance.
    """
    if not 1 <= w_max <= code.N:
        raise ValueError(f"w_max must lie in 1..{code.N}")
    for w in range(1, w_max + 1):
        cert = check_weight(code, w, threads)
        if not cert.ok:
            return DistanceReport(w_max, w, cert.witness)
    return DistanceReport(w_max, None, None)


# -- polynomiality of diagonal expectations -----------------------------------


def diagonal_expectation(n: WeightVector, cls: MatrixUnitClass, N: int) -> Fraction:
    """``<D_n| (|s><s'| (x) I) |D_n>`` as a rational."""
    return dicke_matrix_element(n, n, cls, N).rational_value()


def unit_weighted_expectation(n: WeightVector, w: int, N: int) -> Fraction:
    """``sum_a multinomial(N-w, n-a) / multinomial(N, n)`` over ``a`` in ``T_{w,q}``."""
    total = Fraction(0)
    for a in enumerate_compositions(w, len(n)):
        rest = tuple(x - y for x, y in zip(n, a))
        if all(x >= 0 for x in rest):
            total += Fraction(multinomial(N - w, rest), multinomial(N, n))
    return total


def lagrange_interpolate(xs: list[int], ys: list[Fraction]) -> RationalPolynomial:
    """Exact interpolating polynomial through ``(xs[i], ys[i])``."""
    result = RationalPolynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = RationalPolynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RationalPolynomial([-xj, 1])
                denom *= xi - xj
        result = result + basis * (yi / denom)
    return result


@dataclass(frozen=True)
class PolynomialityReport:
    degree_bound: int
    values: tuple[Fraction, ...]
    interpolant: RationalPolynomial
    mismatches: tuple[int, ...]  # z values off the interpolant

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "values": [format_rational(v) for v in self.values],
            "interpolant": self.interpolant.to_json(),
            "mismatches": list(self.mismatches),
            "pass": self.passed,
        }


def polynomiality_check(p: PartitionPolynomialTuple, w: int, cls: MatrixUnitClass | None = None) -> PolynomialityReport:
    """Check that ``z -> <D_p(z)| E |D_p(z)>`` is a polynomial of degree at most ``w * theta``.

    With ``cls`` the expectation of that matrix-unit class is used; without it
    the unit-weighted sum over all diagonal classes of weight ``w``.  The
    first ``w*theta + 1`` points fix the interpolant and every remaining
    point must lie on it.
    """
    vt = validate_partition_tuple(p)
    bound = w * vt.theta
    if p.n < bound + 1:
        raise InsufficientPoints(f"need z = 0..{bound + 1} at least, have 0..{p.n}")
    if cls is not None and cls.w != w:
        raise ValueError("class weight does not match w")
    if cls is None:
        values = [unit_weighted_expectation(n, w, p.N) for n in vt.weights]
    else:
        values = [diagonal_expectation(n, cls, p.N) for n in vt.weights]
    xs = list(range(bound + 1))
    interp = lagrange_interpolate(xs, values[: bound + 1])
    mismatches = tuple(z for z in range(bound + 1, len(values)) if interp(z) != values[z])
    return PolynomialityReport(bound, tuple(values), interp, mismatches)


def weighted_expectation_sums(code: PICode, w: int, modulus: int = 1) -> list[tuple[MatrixUnitClass, tuple[Fraction, ...]]]:
    """Per diagonal class, ``sum_z f_z <D_p(z)|E|D_p(z)>`` split by ``z mod modulus``.

    For a type-A code the single sum (``modulus=1``) is zero; for a type-B
    code the ``modulus=d`` sums are all equal.
    """
    p_values = {z: tuple(int(poly(z)) for poly in code.p_polys) for z in range(len(code.f.coeffs))}
    out = []
    for a in enumerate_compositions(w, code.q):
        cls = MatrixUnitClass(w, a, a)
        sums = [Fraction(0)] * modulus
        for z, fz in enumerate(code.f.coeffs):
            if fz:
                sums[z % modulus] += fz * diagonal_expectation(p_values[z], cls, code.N)
        out.append((cls, tuple(sums)))
    return out
