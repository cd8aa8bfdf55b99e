import numpy as np
import pytest

from postselect.channel import (
    DensityMatrix,
    KrausChannel,
    apply_channel,
    build_kraus,
    postselect_branch,
)
from postselect.errors import DimensionMismatch, NotUnitary
from postselect.realize import apply_postselected, dilate_literal, exact_realize


def random_unitary(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_contraction(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a / (np.linalg.norm(a, ord=2) * (1.0 + rng.uniform(0.0, 1.0)))


def random_density(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m).real)


def test_build_kraus_scalar_identity():
    ch = build_kraus(np.eye(2))
    assert np.allclose(ch.kraus[0], [[1.0]])
    assert np.allclose(ch.kraus[1], [[0.0]])


def test_build_kraus_blocks_of_dilation():
    rng = np.random.default_rng(71)
    l = random_contraction(rng, 3)
    u = dilate_literal(l)
    ch = build_kraus(u)
    assert np.max(np.abs(ch.kraus[0] - l)) <= 1e-12


def test_build_kraus_completeness():
    rng = np.random.default_rng(72)
    for n in (1, 2, 3, 4):
        u = random_unitary(rng, 2 * n)
        ch = build_kraus(u)
        total = sum(k.conj().T @ k for k in ch.kraus)
        assert np.max(np.abs(total - np.eye(n))) <= 1e-10


def test_build_kraus_validation():
    with pytest.raises(NotUnitary):
        build_kraus(np.eye(4) * 1.01)
    with pytest.raises(ValueError):
        build_kraus(np.eye(3))


def test_kraus_channel_rejects_incomplete_family():
    with pytest.raises(ValueError):
        KrausChannel(kraus=(np.eye(2) * 0.5, np.eye(2) * 0.5))


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))
    rho = DensityMatrix.pure(np.array([1.0, 1.0j]) / np.sqrt(2))
    assert rho.dim == 2
    assert np.trace(rho.rho).real == pytest.approx(1.0, abs=1e-12)


def test_identity_channel_preserves_state():
    rng = np.random.default_rng(73)
    rho = random_density(rng, 2)
    ch = build_kraus(np.eye(4))
    out = apply_channel(ch, rho)
    assert np.max(np.abs(out.rho - rho.rho)) <= 1e-12


def test_channel_of_dilated_unitary_is_conjugation():
    rng = np.random.default_rng(74)
    v = random_unitary(rng, 3)
    ch = build_kraus(dilate_literal(v))
    rho = random_density(rng, 3)
    out = apply_channel(ch, rho)
    assert np.max(np.abs(out.rho - v @ rho.rho @ v.conj().T)) <= 1e-8


def test_channel_trace_preserving():
    rng = np.random.default_rng(75)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        ch = build_kraus(random_unitary(rng, 2 * n))
        rho = random_density(rng, n)
        out = apply_channel(ch, rho)
        assert np.trace(out.rho).real == pytest.approx(1.0, abs=1e-10)
        w = np.linalg.eigvalsh(out.rho)
        assert w.min() >= -1e-9


def test_channel_dimension_mismatch():
    ch = build_kraus(np.eye(4))
    rng = np.random.default_rng(76)
    with pytest.raises(DimensionMismatch):
        apply_channel(ch, random_density(rng, 3))


def test_postselect_branch_known_probability():
    res = dilate_literal(np.diag([0.5, 1.0]))
    ch = build_kraus(res)
    rho = DensityMatrix.pure(np.array([1.0, 0.0]))
    sub, prob = postselect_branch(ch, 0, rho)
    assert prob == pytest.approx(0.25, abs=1e-12)
    assert np.trace(sub).real == pytest.approx(prob, abs=1e-12)


def test_postselect_branch_probabilities_sum_to_one():
    rng = np.random.default_rng(77)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        ch = build_kraus(random_unitary(rng, 2 * n))
        rho = random_density(rng, n)
        _, p0 = postselect_branch(ch, 0, rho)
        _, p1 = postselect_branch(ch, 1, rho)
        assert p0 + p1 == pytest.approx(1.0, abs=1e-10)


def test_postselect_trivial_branch():
    ch = build_kraus(np.eye(4))
    rng = np.random.default_rng(78)
    _, p1 = postselect_branch(ch, 1, random_density(rng, 2))
    assert p1 == pytest.approx(0.0, abs=1e-12)


def test_postselect_branch_agrees_with_pure_state_path():
    rng = np.random.default_rng(79)
    for _ in range(50):
        n = int(rng.integers(1, 5))
        l = random_contraction(rng, n)
        u = dilate_literal(l)
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi /= np.linalg.norm(psi)
        _, prob = postselect_branch(build_kraus(u), 0, DensityMatrix.pure(psi))
        assert prob == pytest.approx(
            apply_postselected(u, psi).success_prob, abs=1e-8)


def test_postselect_branch_index_validation():
    ch = build_kraus(np.eye(4))
    rho = DensityMatrix.pure(np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        postselect_branch(ch, 2, rho)
