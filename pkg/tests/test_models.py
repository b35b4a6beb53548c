import math

import numpy as np
import pytest

from pseudobosons import biortho, fock, models
from pseudobosons.errors import InvalidInputError, TruncationUnsafeError, UnsupportedModelError
from pseudobosons.fock import TruncatedFockSpace
from pseudobosons.models import ModelKind, ModelSpec

from conftest import DEFAULT_SPECS


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(kind="extended-ho", beta=0.0),
        dict(kind="extended-ho", beta=1.0, theta=0.1),
        dict(kind="swanson", theta=0.0),
        dict(kind="swanson", theta=math.pi / 4),
        dict(kind="hyperbolic-squeeze", theta=-0.8),
        dict(kind="shifted-momentum"),
        dict(kind="swanson", theta=0.1, beta=1.0),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(InvalidInputError):
        ModelSpec(**kwargs)


def test_spec_accepts_strings_and_negative_theta():
    spec = ModelSpec("hyperbolic-squeeze", theta=-0.1)
    assert spec.kind is ModelKind.HYPERBOLIC_SQUEEZE
    assert spec.describe() == {"model": "hyperbolic-squeeze", "theta": -0.1}
    with pytest.raises(ValueError):
        ModelSpec("harmonic", beta=1.0)


def test_position_and_momentum():
    s2 = TruncatedFockSpace(2)
    r = 1 / math.sqrt(2)
    assert np.abs(models.make_q(s2) - np.array([[0, r], [r, 0]])).max() <= 1e-16
    s = TruncatedFockSpace(12)
    q, p = models.make_q(s), models.make_p(s)
    assert np.array_equal(q, q.conj().T) and np.array_equal(p, p.conj().T)
    a = fock.make_lowering(s)
    assert np.array_equal(q, (a + fock.adjoint(a)) / math.sqrt(2))
    ccr = fock.block(fock.commutator(q, p), 11)
    assert np.abs(ccr - 1j * np.eye(11)).max() <= 1e-14


def test_closed_form_entries():
    s = TruncatedFockSpace(64)
    A, B = models.closed_forms(ModelSpec("extended-ho", beta=1.0), s)
    assert np.array_equal(A, fock.make_lowering(s) - np.eye(64))
    assert np.array_equal(B, fock.make_raising(s) + np.eye(64))
    A, _ = models.closed_forms(ModelSpec("swanson", theta=0.1), s)
    assert A[0, 1] == math.cos(0.1) and A[1, 0] == 1j * math.sin(0.1)
    assert A[3, 4] == pytest.approx(2 * math.cos(0.1))
    A, _ = models.closed_forms(ModelSpec("shifted-momentum", beta=2.0), s)
    assert A[5, 5] == 0.5j


@pytest.mark.parametrize("spec", DEFAULT_SPECS, ids=lambda s: s.kind.value)
def test_closed_forms_commute_to_identity(spec):
    s = TruncatedFockSpace(32)
    A, B = models.closed_forms(spec, s)
    assert np.abs(fock.block(fock.commutator(A, B), 31) - np.eye(31)).max() <= 1e-13


def test_intertwiner_symmetry_classes():
    s = TruncatedFockSpace(48)
    for kind, kw in [("extended-ho", {"beta": 2.0}), ("shifted-momentum", {"beta": 2.0})]:
        T = models.make_model(ModelSpec(kind, **kw), s).T
        assert np.abs(T - T.conj().T).max() <= 1e-10
    # the squeeze generator i*theta/2*(a^2 - a^dag^2) is Hermitian, so T is Hermitian positive
    T = models.make_model(ModelSpec("swanson", theta=0.1), s).T
    assert np.abs(T - T.conj().T).max() <= 1e-10
    assert np.linalg.eigvalsh((T + T.conj().T) / 2).min() > 0
    # a real antisymmetric generator gives a real orthogonal, non-symmetric T
    T = models.make_model(ModelSpec("hyperbolic-squeeze", theta=0.1), s).T
    assert not np.any(T.imag)
    assert np.abs(T - T.T).max() > 1e-3
    assert np.abs(T.conj().T @ T - np.eye(48)).max() <= 1e-10


def test_make_model_records_inverse():
    s = TruncatedFockSpace(64)
    for spec in DEFAULT_SPECS:
        real = models.make_model(spec, s)
        assert real.inversion_residual <= 1e-12
        assert np.abs(real.T @ real.Tinv - np.eye(64)).max() <= 1e-10
        with pytest.raises(ValueError):
            real.T[0, 0] = 0


def test_generator_norm_guard():
    with pytest.raises(TruncationUnsafeError):
        models.make_model(ModelSpec("swanson", theta=0.7), TruncatedFockSpace(128))
    # the largest squeeze used in acceptance runs stays under the guard
    models.make_model(ModelSpec("swanson", theta=math.pi / 8), TruncatedFockSpace(128))


def test_hamiltonian_constants():
    scale, shift = models.hamiltonian_constants(ModelSpec("extended-ho", beta=math.sqrt(2)))
    assert scale == pytest.approx(math.sqrt(2)) and shift == pytest.approx(1.0)
    scale, shift = models.hamiltonian_constants(ModelSpec("swanson", theta=math.pi / 8))
    assert scale == pytest.approx(math.sqrt(2)) and shift == 0.5
    with pytest.raises(UnsupportedModelError):
        models.hamiltonian_constants(ModelSpec("shifted-momentum", beta=1.0))


def test_make_hamiltonians_unsupported():
    real = models.make_model(ModelSpec("hyperbolic-squeeze", theta=0.1), TruncatedFockSpace(16))
    with pytest.raises(UnsupportedModelError):
        models.make_hamiltonians(real)
    with pytest.raises(UnsupportedModelError):
        models.check_hamiltonian_forms(real)


def test_spectrum_of_number_operator():
    s = TruncatedFockSpace(16)
    ev = models.spectrum(fock.number_diagonal(s), 4, s)
    assert np.array_equal(ev, np.arange(4))
    with pytest.raises(InvalidInputError):
        models.spectrum(fock.number_diagonal(s), 5, s)


def test_spectrum_tie_break_by_imaginary_part():
    H = np.diag([1 + 1j, 0.0, 1 - 1j])
    assert list(models.spectrum(H, 3)) == [0, 1 - 1j, 1 + 1j]


@pytest.mark.parametrize(
    "spec", [ModelSpec("extended-ho", beta=2.0), ModelSpec("swanson", theta=0.1)], ids=["ho", "swanson"]
)
def test_hamiltonian_forms_and_similarity(spec):
    s = TruncatedFockSpace(96)
    real = models.make_hamiltonians(models.make_model(spec, s))
    assert models.check_hamiltonian_forms(real).passed
    k = s.trusted_count
    sim = models.similarity_form(real)
    assert np.abs(fock.block(sim - real.H_factored, k)).max() <= 1e-8
    ev = models.spectrum(real.H_quadratic, 5, s)
    assert np.abs(ev.imag).max() <= 1e-6
    assert np.abs(ev - models.analytic_levels(spec, 5)).max() <= 1e-6


@pytest.mark.parametrize("spec", DEFAULT_SPECS, ids=lambda s: s.kind.value)
def test_check_closed_forms_default_params(spec):
    s = TruncatedFockSpace(64)
    real = models.make_model(spec, s)
    sys = biortho.build_system(real.T, real.Tinv, s)
    assert models.check_closed_forms(real, sys).passed
