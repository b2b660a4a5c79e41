"""Permutation-invariant codes built from a coefficient polynomial and a partition tuple.

Every code here is a superposition of Dicke states ``|D_p(z)>`` where
``p(z)`` runs over the values of a partition tuple, with squared amplitudes
proportional to the coefficients ``f_z``:

* type A (``d = 2``): ``f = (x-1)**m g``; positive coefficients form the
  logical zero, negative ones the logical one.
* type B (any ``d``): ``f = (1+...+x**(d-1))**m g`` with non-negative
  coefficients; ``z mod d`` selects the logical state.
* theta family: type B with ``g = (1 - s) + s x`` for rational ``s = sin^2``.
* GNU: the older binomial family on qubits with orbits spaced ``g`` apart.

All amplitudes are exact :class:`~picode.exactnum.RadicalSum` values.
"""

from __future__ import annotations

import math
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction

from picode.combinatorics import WeightVector, closest_pair, weight_vector
from picode.errors import (
    ClassSumMismatch,
    DegreeBoundViolated,
    DimensionMismatch,
    DistanceTooSmall,
    NegativeCoefficient,
    NotDivisible,
    ParameterBoundViolated,
)
from picode.exactnum import RadicalSum, RationalLike, format_rational, parse_rational, sqrt_of_rational
from picode.polyid import (
    PartitionPolynomialTuple,
    RationalPolynomial,
    ValidatedTuple,
    repunit,
    residue_class_sums,
    validate_partition_tuple,
)

LogicalVector = tuple[tuple[WeightVector, RadicalSum], ...]


@dataclass(frozen=True)
class CodeSpec:
    """Inputs of a polynomial construction.

    ``construction`` is one of ``"TypeA"``, ``"TypeB"``; the theta and GNU
    families have their own builders.
    """

    q: int
    N: int
    d: int
    t: int
    m: int
    f: RationalPolynomial
    p: PartitionPolynomialTuple
    construction: str = "TypeA"

    def __post_init__(self) -> None:
        if self.q < 2 or self.N < 1 or self.d < 2 or self.t < 1 or self.m < 1:
            raise ValueError("need q >= 2, N >= 1, d >= 2, t >= 1, m >= 1")
        if self.p.q != self.q or self.p.N != self.N:
            raise DimensionMismatch("partition tuple does not match q and N")
        if self.p.n < self.f.degree:
            raise DimensionMismatch(f"partition tuple covers z <= {self.p.n} but deg f = {self.f.degree}")


@dataclass(frozen=True)
class PICode:
    q: int
    N: int
    d: int
    t: int
    construction: str
    f: RationalPolynomial
    p_polys: tuple[RationalPolynomial, ...]
    logical: tuple[LogicalVector, ...]
    meta: Mapping = field(default_factory=dict, compare=False)

    @property
    def support(self) -> tuple[WeightVector, ...]:
        return tuple(w for vec in self.logical for w, _ in vec)

    def amplitudes(self, k: int) -> dict[WeightVector, RadicalSum]:
        return dict(self.logical[k])

    def to_descriptor(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "d": self.d,
            "t": self.t,
            "construction": self.construction,
            "f_coeffs": self.f.to_json(),
            "p_polys": [p.to_json() for p in self.p_polys],
            "logical": [[{"weights": list(w), "amp": amp.to_json()} for w, amp in vec] for vec in self.logical],
        }

    @classmethod
    def from_descriptor(cls, data: Mapping) -> PICode:
        q, N, d, t = (int(data[k]) for k in ("q", "N", "d", "t"))
        logical = []
        for vec in data["logical"]:
            entries = []
            for item in vec:
                entries.append((weight_vector(item["weights"], N=N, q=q), RadicalSum.from_json(item["amp"])))
            if len({w for w, _ in entries}) != len(entries):
                raise ValueError("repeated weight vector inside one logical vector")
            logical.append(tuple(entries))
        if len(logical) != d:
            raise DimensionMismatch(f"descriptor declares d = {d} but lists {len(logical)} logical vectors")
        return cls(
            q=q,
            N=N,
            d=d,
            t=t,
            construction=str(data["construction"]),
            f=RationalPolynomial.from_json(data["f_coeffs"]),
            p_polys=tuple(RationalPolynomial.from_json(p) for p in data["p_polys"]),
            logical=tuple(logical),
        )


def _check_distance_and_degree(vt: ValidatedTuple, t: int, m: int) -> None:
    weights = vt.weights
    if len(set(weights)) < len(weights):
        z1 = next(i for i, w in enumerate(weights) if weights.index(w) != i)
        z0 = weights.index(weights[z1])
        raise DistanceTooSmall(
            f"p({z0}) = p({z1}) = {weights[z1]}",
            pair=[list(weights[z0]), list(weights[z1])],
            distance=0,
            required=2 * t + 1,
        )
    a, b, dist = closest_pair(weights)
    if dist < 2 * t + 1:
        raise DistanceTooSmall(
            f"orbits {a} and {b} are at distance {dist} < {2 * t + 1}",
            pair=[list(a), list(b)],
            distance=dist,
            required=2 * t + 1,
        )
    if 2 * t * vt.theta > m - 1:
        raise DegreeBoundViolated(
            f"partition degree {vt.theta} exceeds (m-1)/(2t) = {m - 1}/{2 * t}",
            theta=vt.theta,
            m=m,
            t=t,
        )


def build_type_a(spec: CodeSpec) -> PICode:
    """Two-dimensional code from ``f = (x-1)**m g`` split by coefficient sign.

    Amplitudes are ``sqrt(2 |f_z| / sum |f_z|)``; the sign classes balance
    because ``f(1) = 0``.
    """
    f = spec.f
    if f.is_zero():
        raise NotDivisible("f is the zero polynomial", m=spec.m)
    if f.exact_quotient(RationalPolynomial([-1, 1]) ** spec.m) is None:
        raise NotDivisible(f"f is not divisible by (x-1)^{spec.m}", m=spec.m)
    vt = validate_partition_tuple(spec.p)
    _check_distance_and_degree(vt, spec.t, spec.m)
    total = sum(abs(c) for c in f.coeffs)
    zero, one = [], []
    for z, fz in enumerate(f.coeffs):
        if fz > 0:
            zero.append((vt.weights[z], sqrt_of_rational(2 * fz / total)))
        elif fz < 0:
            one.append((vt.weights[z], sqrt_of_rational(-2 * fz / total)))
    return PICode(
        q=spec.q,
        N=spec.N,
        d=2,
        t=spec.t,
        construction="TypeA",
        f=f,
        p_polys=spec.p.polys,
        logical=(tuple(zero), tuple(one)),
        meta={"m": spec.m},
    )


def build_type_b(spec: CodeSpec, construction: str = "TypeB") -> PICode:
    """``d``-dimensional code from ``f = (1+...+x**(d-1))**m g`` split by ``z mod d``."""
    f, d = spec.f, spec.d
    if f.is_zero() or f.exact_quotient(repunit(d) ** spec.m) is None:
        raise NotDivisible(f"f is not divisible by (1+...+x^{d - 1})^{spec.m}", m=spec.m, d=d)
    for z, fz in enumerate(f.coeffs):
        if fz < 0:
            raise NegativeCoefficient(f"f_{z} = {fz} is negative", z=z, value=format_rational(fz))
    vt = validate_partition_tuple(spec.p)
    _check_distance_and_degree(vt, spec.t, spec.m)
    total = sum(f.coeffs)
    sums = residue_class_sums(f.coeffs, d)
    for k, s in enumerate(sums):
        if s * d != total:
            raise ClassSumMismatch(
                f"residue class {k} sums to {s}, expected {total / d}",
                k=k,
                value=format_rational(s),
                expected=format_rational(total / d),
            )
    logical = []
    for k in range(d):
        vec = []
        for z in range(k, len(f.coeffs), d):
            fz = f.coeffs[z]
            if fz:
                vec.append((vt.weights[z], sqrt_of_rational(d * fz / total)))
        logical.append(tuple(vec))
    return PICode(
        q=spec.q,
        N=spec.N,
        d=d,
        t=spec.t,
        construction=construction,
        f=f,
        p_polys=spec.p.polys,
        logical=tuple(logical),
        meta={"m": spec.m},
    )


def theta_polynomial(m: int, d: int, theta_sq: RationalLike) -> RationalPolynomial:
    """``(1+...+x**(d-1))**m * ((1 - s) + s x)`` with ``s = sin^2(theta)``."""
    s = parse_rational(theta_sq)
    if not 0 <= s <= 1:
        raise ParameterBoundViolated(f"sin^2 theta = {s} is outside [0, 1]", theta_sq=format_rational(s))
    return repunit(d) ** m * RationalPolynomial([1 - s, s])


def build_theta_family(
    m: int,
    d: int,
    theta_sq: RationalLike,
    p: PartitionPolynomialTuple,
    q: int,
    N: int,
    t: int,
) -> PICode:
    """Member of the one-parameter type-B family indexed by rational ``sin^2 theta``.

    ``p`` must cover ``z = 0..m(d-1)+1`` so every member shares one partition tuple.
    """
    s = parse_rational(theta_sq)
    f = theta_polynomial(m, d, s)
    if sum(f.coeffs) != d**m:
        raise ClassSumMismatch(f"f(1) = {sum(f.coeffs)} differs from d^m = {d**m}")
    spec = CodeSpec(q=q, N=N, d=d, t=t, m=m, f=f, p=p, construction="TypeB")
    code = build_type_b(spec, construction=f"Theta({format_rational(s)})")
    return replace(code, meta={"m": m, "theta_sq": s})


def build_gnu(g: int, n: int, N: int, t: int) -> PICode:
    """Binomial qubit code: ``|0_L>`` over even ``j``, ``|1_L>`` over odd ``j``.

    The Dicke state ``|D_(gj, N-gj)>`` carries amplitude
    ``sqrt(binom(n, j) / 2**(n-1))``.
    """
    if g < 2 * t + 1 or n < 2 * t + 1 or N < g * n:
        raise ParameterBoundViolated(
            f"need g, n >= {2 * t + 1} and N >= g n; got g={g}, n={n}, N={N}",
            g=g,
            n=n,
            N=N,
            t=t,
        )
    zero, one = [], []
    for j in range(n + 1):
        entry = ((g * j, N - g * j), sqrt_of_rational(Fraction(math.comb(n, j), 2 ** (n - 1))))
        (zero if j % 2 == 0 else one).append(entry)
    f = RationalPolynomial([(-1) ** j * math.comb(n, j) for j in range(n + 1)])
    p_polys = (RationalPolynomial([0, g]), RationalPolynomial([N, -g]))
    return PICode(
        q=2,
        N=N,
        d=2,
        t=t,
        construction=f"GNU({g},{n})",
        f=f,
        p_polys=p_polys,
        logical=(tuple(zero), tuple(one)),
        meta={"g": g, "n": n},
    )


def logical_overlap(v: Sequence[tuple[WeightVector, RadicalSum]], w: Sequence[tuple[WeightVector, RadicalSum]]) -> RadicalSum:
    """Exact inner product of two real Dicke-basis vectors."""
    dims = {(len(x), sum(x)) for x, _ in list(v) + list(w)}
    if len(dims) > 1:
        raise DimensionMismatch("logical vectors live on different (q, N)")
    wmap = dict(w)
    total = RadicalSum()
    for weights, amp in v:
        other = wmap.get(weights)
        if other is not None:
            total = total + amp * other
    return total


def perturb_amplitude(code: PICode, k: int = 0, index: int = 0, delta: RationalLike = Fraction(1, 100)) -> PICode:
    """Copy of ``code`` with one amplitude shifted by ``delta`` (not renormalized)."""
    vec = list(code.logical[k])
    w, amp = vec[index]
    vec[index] = (w, amp + parse_rational(delta))
    logical = list(code.logical)
    logical[k] = tuple(vec)
    return replace(code, construction=code.construction + "+perturbed", logical=tuple(logical))


def transpose_coordinates(code: PICode) -> PICode:
    """Reverse the letter order of every weight vector (the global relabelling ``i -> q+1-i``)."""
    logical = tuple(tuple((w[::-1], amp) for w, amp in vec) for vec in code.logical)
    return replace(code, logical=logical, p_polys=code.p_polys[::-1])


_CONSTRUCTION_RE = re.compile(r"^(TypeA|TypeB|Theta\((?P<theta>[^)]*)\)|GNU\((?P<g>\d+),(?P<n>\d+)\))(\+perturbed)?$")


def parse_construction(label: str) -> dict:
    """Decode a descriptor's ``construction`` label into its parameters."""
    match = _CONSTRUCTION_RE.match(label)
    if not match:
        raise ValueError(f"unknown construction label {label!r}")
    out: dict = {"kind": match.group(1).split("(")[0], "perturbed": label.endswith("+perturbed")}
    if match.group("theta") is not None:
        out["theta_sq"] = parse_rational(match.group("theta"))
    if match.group("g") is not None:
        out["g"], out["n"] = int(match.group("g")), int(match.group("n"))
    return out
