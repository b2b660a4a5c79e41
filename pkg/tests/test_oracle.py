import itertools

import numpy as np
import pytest

from picode.codegen import build_gnu, perturb_amplitude
from picode.combinatorics import enumerate_compositions
from picode.errors import DimensionCap
from picode.oracle import (
    DIMENSION_CAP,
    FIDELITY_TOL,
    apply_local,
    check_dimension,
    crosscheck_code,
    crosscheck_matrix_elements,
    dense_code_basis,
    dense_dicke,
    fidelity_table,
    permute_qudits,
    random_weight_t_channel,
    recovery_channel,
)


@pytest.mark.parametrize("q, N", [(q, N) for q in (2, 3) for N in range(1, 9) if q**N <= 6561])
def test_dicke_orthonormal(q, N):
    comps = enumerate_compositions(N, q)
    mat = np.stack([dense_dicke(n, q, N) for n in comps], axis=1)
    assert np.abs(mat.T @ mat - np.eye(len(comps))).max() < 1e-12


def test_dicke_permutation_invariant():
    rng = np.random.default_rng(3)
    for n in [(2, 3), (1, 2, 2), (4, 0, 1)]:
        q, N = len(n), sum(n)
        vec = dense_dicke(n, q, N)
        for _ in range(5):
            assert np.allclose(permute_qudits(vec, rng.permutation(N), q, N), vec, atol=1e-14)


def test_dense_dicke_values():
    vec = dense_dicke((1, 1), 2, 2)
    assert np.allclose(vec, [0, 2**-0.5, 2**-0.5, 0])


def test_dimension_cap():
    assert check_dimension(2, 20) == DIMENSION_CAP
    with pytest.raises(DimensionCap):
        check_dimension(2, 21)
    with pytest.raises(DimensionCap):
        check_dimension(3, 108)


def test_channel_seeded_and_complete():
    a = random_weight_t_channel(2, 9, 1, 4, seed=7)
    b = random_weight_t_channel(2, 9, 1, 4, seed=7)
    assert a.support == b.support and all(np.array_equal(x, y) for x, y in zip(a.kraus, b.kraus))
    assert a.completeness_residual < 1e-12
    c = random_weight_t_channel(3, 4, 2, 3, seed=1)
    assert c.weight == 2 and c.completeness_residual < 1e-12


def test_identity_channel():
    code = build_gnu(3, 3, 9, 1)
    rows = fidelity_table(code, 0, range(3))
    assert all(abs(r.min_fidelity - 1) < 1e-12 for r in rows)


def test_gnu_recovery():
    code = build_gnu(3, 3, 9, 1)
    rows = fidelity_table(code, 1, range(5), states=20)
    for row in rows:
        assert row.completeness_residual < 1e-12
        assert row.recovery_residual < 1e-12
        assert row.min_fidelity >= 1 - FIDELITY_TOL


def test_example1_recovery(example_codes):
    rows = fidelity_table(example_codes["example1"], 1, range(1), states=5)
    assert min(r.min_fidelity for r in rows) >= 1 - FIDELITY_TOL


def test_perturbed_code_degrades():
    code = perturb_amplitude(build_gnu(3, 3, 9, 1))
    rows = fidelity_table(code, 1, range(20), states=20)
    worst = min(r.min_fidelity for r in rows)
    # the perturbation moves the code space by O(1e-2), so the loss is O(1e-5) at most
    assert 1 - worst > 1e-7


def test_recovery_beyond_distance_fails():
    # a known support of d - 1 = 2 qudits is still recoverable; three is not
    code = build_gnu(3, 3, 9, 1)
    assert min(r.min_fidelity for r in fidelity_table(code, 2, range(5))) >= 1 - FIDELITY_TOL
    rows = fidelity_table(code, 3, range(5), states=20)
    assert min(r.min_fidelity for r in rows) < 1 - 1e-3


def test_crosscheck_elements():
    for q, N, w in [(2, 10, 2), (3, 6, 2), (2, 8, 3)]:
        report = crosscheck_matrix_elements(q, N, w, 300, seed=11)
        assert report.max_abs_delta < 1e-12
        assert report.max_representative_delta < 1e-12
        assert report.nonzero_trials > 50


def test_crosscheck_code():
    assert crosscheck_code(build_gnu(3, 3, 9, 1), 2, 200, seed=0) < 1e-12


def brute_force_kl(code, w):
    """Knill-Laflamme on every w-subset of qudits and every matrix unit there."""
    basis = dense_code_basis(code)
    q, N, d = code.q, code.N, code.d
    worst = 0.0
    for support in itertools.combinations(range(N), w):
        for r, c in itertools.product(range(q**w), repeat=2):
            op = np.zeros((q**w, q**w))
            op[r, c] = 1
            gram = basis.conj().T @ apply_local(op, support, basis, q, N)
            worst = max(worst, np.abs(gram - gram[0, 0] * np.eye(d)).max())
    return worst


def test_brute_force_kl_agrees():
    code = build_gnu(3, 3, 9, 1)
    assert brute_force_kl(code, 2) < 1e-12
    assert brute_force_kl(perturb_amplitude(code), 2) > 1e-4
    assert brute_force_kl(code, 3) > 1e-3
