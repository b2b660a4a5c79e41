"""Dense floating-point simulator for small instances.

Builds Dicke states and code vectors in the full ``q**N`` dimensional space
(capped at ``2**20``), cross-checks the exact matrix elements of
:mod:`picode.klverify`, and runs the Knill-Laflamme recovery channel end to
end.  Basis index ``i`` encodes the string ``(c_1, ..., c_N)`` in base ``q``
with ``c_1`` most significant; letter ``k`` of the alphabet is digit ``k-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from picode import klverify
from picode.codegen import PICode
from picode.combinatorics import WeightVector, enumerate_compositions, multinomial
from picode.errors import DimensionCap

DIMENSION_CAP = 2**20

# tolerances
NORM_TOL = 1e-12
COMPLETENESS_TOL = 1e-12
AGREEMENT_TOL = 1e-9
FIDELITY_TOL = 1e-9
RANK_THRESHOLD = 1e-10
DEGRADED_FIDELITY_GAP = 1e-4


def check_dimension(q: int, N: int) -> int:
    dim = q**N
    if dim > DIMENSION_CAP:
        raise DimensionCap(f"q^N = {q}^{N} exceeds the dense cap of 2^20 basis states")
    return dim


@lru_cache(maxsize=16)
def _letter_counts(q: int, N: int) -> np.ndarray:
    dim = check_dimension(q, N)
    idx = np.arange(dim)
    counts = np.zeros((dim, q), dtype=np.int32)
    for k in range(N):
        digit = (idx // q ** (N - 1 - k)) % q
        counts[idx, digit] += 1
    counts.setflags(write=False)
    return counts


def dense_dicke(n: WeightVector, q: int, N: int) -> np.ndarray:
    """Normalized uniform superposition over all strings with letter counts ``n``."""
    counts = _letter_counts(q, N)
    mask = np.all(counts == np.asarray(n), axis=1)
    vec = np.zeros(len(counts), dtype=complex)
    vec[mask] = 1.0 / np.sqrt(multinomial(N, n))
    return vec


def dense_code_vector(code: PICode, k: int) -> np.ndarray:
    check_dimension(code.q, code.N)
    vec = np.zeros(code.q**code.N, dtype=complex)
    for weights, amp in code.logical[k]:
        vec += float(amp) * dense_dicke(weights, code.q, code.N)
    return vec


def dense_code_basis(code: PICode) -> np.ndarray:
    """``dim x d`` matrix whose columns are the logical vectors."""
    return np.stack([dense_code_vector(code, k) for k in range(code.d)], axis=1)


def permute_qudits(vec: np.ndarray, perm, q: int, N: int) -> np.ndarray:
    """Apply the qudit permutation sending position ``i`` to ``perm[i]``."""
    tensor = vec.reshape((q,) * N)
    return np.moveaxis(tensor, list(range(N)), list(perm)).reshape(-1)


def string_index(letters, q: int) -> int:
    """Base-``q`` index of a string of digits ``0..q-1``."""
    out = 0
    for c in letters:
        out = out * q + int(c)
    return out


def apply_local(op: np.ndarray, support, vecs: np.ndarray, q: int, N: int) -> np.ndarray:
    """Apply ``op`` (acting on the qudits in ``support``) to each column of ``vecs``."""
    support = list(support)
    if not support:
        return op[0, 0] * vecs
    cols = vecs.reshape(q**N, -1)
    ncol = cols.shape[1]
    tensor = cols.reshape((q,) * N + (ncol,))
    tensor = np.moveaxis(tensor, support, list(range(len(support))))
    moved_shape = tensor.shape
    out = op @ tensor.reshape(q ** len(support), -1)
    out = np.moveaxis(out.reshape(moved_shape), list(range(len(support))), support)
    return out.reshape(vecs.shape)


@dataclass(frozen=True)
class DenseChannel:
    """Kraus operators sharing one support of at most ``weight`` qudits."""

    q: int
    N: int
    support: tuple[int, ...]
    kraus: tuple[np.ndarray, ...]

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def completeness_residual(self) -> float:
        total = sum(k.conj().T @ k for k in self.kraus)
        return float(np.abs(total - np.eye(total.shape[0])).max())

    def apply(self, i: int, vecs: np.ndarray) -> np.ndarray:
        return apply_local(self.kraus[i], self.support, vecs, self.q, self.N)


def _inv_sqrt_psd(mat: np.ndarray, threshold: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    inv = np.array([1.0 / np.sqrt(v) if v > threshold else 0.0 for v in vals])
    return (vecs * inv) @ vecs.conj().T


def random_weight_t_channel(q: int, N: int, t: int, num_kraus: int, seed: int) -> DenseChannel:
    """Seeded random channel whose Kraus operators act on one random ``t``-qudit support.

    Random complex matrices ``A_i`` are rescaled by ``S**(-1/2)`` with
    ``S = sum A_i^* A_i`` so that the stacked block is an isometry.
    """
    if not 0 <= t <= N:
        raise ValueError("need 0 <= t <= N")
    if t == 0:
        return DenseChannel(q, N, (), (np.eye(1, dtype=complex),))
    rng = np.random.default_rng(seed)
    support = tuple(sorted(int(i) for i in rng.choice(N, size=t, replace=False)))
    dim = q**t
    mats = rng.normal(size=(num_kraus, dim, dim)) + 1j * rng.normal(size=(num_kraus, dim, dim))
    s = sum(a.conj().T @ a for a in mats)
    fix = _inv_sqrt_psd(s, 0.0)
    return DenseChannel(q, N, support, tuple(a @ fix for a in mats))


@dataclass(frozen=True)
class RecoveryChannel:
    """Recovery map with Kraus operators ``R_k = Psi V_k^*`` plus a completion projector.

    ``basis`` holds the orthonormal code basis ``Psi``; each ``V_k`` has
    orthonormal columns spanning the range of the ``k``-th error on the
    code space, and distinct blocks are orthogonal.  The completion Kraus
    operator is ``I - sum_k V_k V_k^*``.
    """

    basis: np.ndarray
    isometries: tuple[np.ndarray, ...]

    @property
    def stacked(self) -> np.ndarray:
        return np.concatenate(self.isometries, axis=1) if self.isometries else np.zeros((len(self.basis), 0))

    @property
    def completeness_residual(self) -> float:
        # sum_k R_k^* R_k = W W^* must be a projector, i.e. M = W^* W idempotent
        w = self.stacked
        if not w.shape[1]:
            return 0.0
        m = w.conj().T @ w
        return float(np.abs(m @ m - m).max())


def orthonormal_code_basis(code: PICode) -> np.ndarray:
    """Dense logical vectors orthonormalized by QR (a no-op up to roundoff for valid codes)."""
    psi = dense_code_basis(code)
    qmat, r = np.linalg.qr(psi)
    return qmat * np.sign(np.real(np.diag(r)))


def recovery_channel(code: PICode, channel: DenseChannel, threshold: float = RANK_THRESHOLD) -> RecoveryChannel:
    """Knill-Laflamme recovery for ``channel`` on ``code``.

    The Kraus operators are first rotated so that ``Psi^* F_k^* F_l Psi`` is
    diagonal in ``(k, l)``; each rotated error then gets the polar isometry
    ``V_k = F_k Psi G_k^{-1/2}`` with ``G_k = Psi^* F_k^* F_k Psi``
    (a ``d x d`` eigenproblem).  Directions below ``threshold`` are dropped.
    """
    psi = orthonormal_code_basis(code)
    d = psi.shape[1]
    images = [channel.apply(i, psi) for i in range(len(channel.kraus))]
    g = np.array([[np.trace(bi.conj().T @ bj) / d for bj in images] for bi in images])
    vals, rot = np.linalg.eigh(g)
    isometries = []
    for k, lam in enumerate(vals):
        if lam <= threshold:
            continue
        b = sum(rot[i, k] * images[i] for i in range(len(images)))
        gram = b.conj().T @ b
        isometries.append(b @ _inv_sqrt_psd(gram, threshold))
    if isometries:
        # For a correctable code the blocks are already mutually orthogonal and this is a
        # no-op; otherwise it keeps the recovery a channel so fidelities stay meaningful.
        w = np.concatenate(isometries, axis=1)
        w = w @ _inv_sqrt_psd(w.conj().T @ w, threshold)
        isometries = [w[:, k * d : (k + 1) * d] for k in range(len(isometries))]
    return RecoveryChannel(psi, tuple(isometries))


def recovery_fidelity(code_basis: np.ndarray, channel: DenseChannel, recovery: RecoveryChannel, coeffs: np.ndarray) -> float:
    """``<psi| R(N(psi psi^*)) |psi>`` for ``psi = basis @ coeffs``, using vectors only."""
    psi = code_basis @ coeffs
    w = recovery.stacked
    d = code_basis.shape[1]
    total = 0.0
    for i in range(len(channel.kraus)):
        err = channel.apply(i, psi)
        proj = w.conj().T @ err  # V^* A_i psi, one block of d per recovery operator
        lhs = w.conj().T @ psi
        for k in range(len(recovery.isometries)):
            block = slice(k * d, (k + 1) * d)
            # <psi| R_k = (V_k Psi^* psi)^*, and Psi^* psi = coeffs
            total += abs(np.vdot(coeffs, proj[block])) ** 2
        total += abs(np.vdot(psi, err) - np.vdot(lhs, proj)) ** 2
    return float(total)


def random_logical_coeffs(d: int, rng: np.random.Generator) -> np.ndarray:
    c = rng.normal(size=d) + 1j * rng.normal(size=d)
    return c / np.linalg.norm(c)


@dataclass(frozen=True)
class FidelityRow:
    seed: int
    support: tuple[int, ...]
    completeness_residual: float
    recovery_residual: float
    fidelities: tuple[float, ...]

    @property
    def min_fidelity(self) -> float:
        return min(self.fidelities)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "support": list(self.support),
            "completeness_residual": self.completeness_residual,
            "recovery_residual": self.recovery_residual,
            "min_fidelity": self.min_fidelity,
            "fidelities": list(self.fidelities),
        }


def fidelity_table(code: PICode, t: int, seeds, num_kraus: int = 4, states: int = 20) -> list[FidelityRow]:
    """Recovery fidelities for one seeded weight-``t`` channel per seed."""
    rows = []
    for seed in seeds:
        channel = random_weight_t_channel(code.q, code.N, t, num_kraus, seed)
        recovery = recovery_channel(code, channel)
        rng = np.random.default_rng([seed, 1])
        fids = tuple(
            recovery_fidelity(recovery.basis, channel, recovery, random_logical_coeffs(code.d, rng)) for _ in range(states)
        )
        rows.append(FidelityRow(seed, channel.support, channel.completeness_residual, recovery.completeness_residual, fids))
    return rows


# -- cross-checks ----------------------------------------------------------------


def _random_string(weights: WeightVector, rng: np.random.Generator) -> list[int]:
    letters = [i for i, c in enumerate(weights) for _ in range(c)]
    return list(rng.permutation(letters)) if letters else []


def dense_matrix_element(bra: np.ndarray, ket: np.ndarray, s, s_prime, q: int, N: int) -> complex:
    """``<bra| (|s><s'| (x) I) |ket>`` with ``s``, ``s'`` strings on the first qudits."""
    w = len(s)
    rows_bra = bra.reshape(q**w, q ** (N - w))
    rows_ket = ket.reshape(q**w, q ** (N - w))
    return complex(np.vdot(rows_bra[string_index(s, q)], rows_ket[string_index(s_prime, q)]))


@dataclass(frozen=True)
class CrosscheckReport:
    q: int
    N: int
    w: int
    trials: int
    seed: int
    max_abs_delta: float
    max_representative_delta: float
    nonzero_trials: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "N": self.N,
            "w": self.w,
            "trials": self.trials,
            "seed": self.seed,
            "max_abs_delta": self.max_abs_delta,
            "max_representative_delta": self.max_representative_delta,
            "nonzero_trials": self.nonzero_trials,
        }


def crosscheck_matrix_elements(q: int, N: int, w: int, trials: int, seed: int) -> CrosscheckReport:
    """Compare exact Dicke matrix elements with dense ones on random tuples.

    Half of the tuples are forced onto the selection rule ``m = n - a + a'``
    so that nonzero elements are well represented.  Each tuple is evaluated
    with a sorted representative pair of strings and with a random one.
    """
    check_dimension(q, N)
    if w > N:
        raise ValueError("w must not exceed N")
    rng = np.random.default_rng(seed)
    comps_n = enumerate_compositions(N, q)
    comps_a = enumerate_compositions(w, q)
    max_delta = max_rep = 0.0
    nonzero = 0
    for _ in range(trials):
        n = comps_n[rng.integers(len(comps_n))]
        a = comps_a[rng.integers(len(comps_a))]
        a_prime = comps_a[rng.integers(len(comps_a))]
        m = comps_n[rng.integers(len(comps_n))]
        if rng.random() < 0.5:
            cand = tuple(x - y + z for x, y, z in zip(n, a, a_prime))
            if all(c >= 0 for c in cand):
                m = cand
        cls = klverify.MatrixUnitClass(w, a, a_prime)
        exact = float(klverify.dicke_matrix_element(n, m, cls, N))
        nonzero += exact != 0.0
        bra, ket = dense_dicke(n, q, N), dense_dicke(m, q, N)
        sorted_s = [i for i, c in enumerate(a) for _ in range(c)]
        sorted_sp = [i for i, c in enumerate(a_prime) for _ in range(c)]
        v1 = dense_matrix_element(bra, ket, sorted_s, sorted_sp, q, N)
        v2 = dense_matrix_element(bra, ket, _random_string(a, rng), _random_string(a_prime, rng), q, N)
        max_delta = max(max_delta, abs(v1 - exact), abs(v2 - exact))
        max_rep = max(max_rep, abs(v1 - v2))
    return CrosscheckReport(q, N, w, trials, seed, max_delta, max_rep, nonzero)


def crosscheck_code(code: PICode, w: int, trials: int, seed: int) -> float:
    """Max deviation between exact and dense logical matrix elements on random classes."""
    check_dimension(code.q, code.N)
    rng = np.random.default_rng(seed)
    basis = dense_code_basis(code)
    classes = klverify.matrix_unit_classes(w, code.q)
    worst = 0.0
    for _ in range(trials):
        cls = classes[rng.integers(len(classes))]
        i, j = (int(x) for x in rng.integers(code.d, size=2))
        exact = float(klverify.logical_matrix_element(code, i, j, cls))
        dense = dense_matrix_element(
            basis[:, i], basis[:, j], _random_string(cls.a, rng), _random_string(cls.a_prime, rng), code.q, code.N
        )
        worst = max(worst, abs(dense - exact))
    return worst
