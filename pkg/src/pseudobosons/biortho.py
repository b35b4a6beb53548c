r"""Biorthogonal pairs and pseudo-bosonic operator systems.

Given an invertible ``T`` on the truncated space the construction is

* :math:`\varphi_n = T e_n`, :math:`\psi_n = (T^{-1})^\dagger e_n`,
* :math:`A = T S_- T^{-1}`, :math:`B = T S_+ T^{-1}`,
* :math:`A^\dagger`, :math:`B^\dagger` as entrywise adjoints,
* :math:`N = BA`, :math:`N^\dagger = A^\dagger B^\dagger`.

The ``check_*`` functions measure how well these objects satisfy the
ladder, power, number-operator and commutation identities, each returning
a :class:`~pseudobosons.report.VerificationReport` of max-abs residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import (
    AmbiguousVacuumError,
    InvalidInputError,
    NonInvertiblePairError,
    NoVacuumError,
    ShapeError,
    TrustedBlockError,
)
from .fock import FockOperator, FockVector, TruncatedFockSpace, max_abs
from .report import VerificationReport
from .tolerances import DEFAULT_TOLERANCES

#: relative singular-value floor below which a recovered T is declared singular
SINGULAR_RTOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


def _space_for(M: np.ndarray, space=None) -> TruncatedFockSpace:
    if space is None:
        return TruncatedFockSpace(M.shape[0])
    if space.dim != M.shape[0]:
        raise ShapeError(f"operator dimension {M.shape[0]} != space dimension {space.dim}")
    return space


@dataclass(frozen=True)
class BiorthogonalPair:
    """Finite families ``phis[n]`` and ``psis[n]``, ``n < count``.

    ``count`` may reach ``dim`` so that a full basis image can be handed
    to :func:`recover_T`; the identity checks only use what they need.
    """

    phis: np.ndarray
    psis: np.ndarray
    space: TruncatedFockSpace

    def __post_init__(self):
        phis = _frozen(self.phis)
        psis = _frozen(self.psis)
        if phis.ndim != 2 or phis.shape != psis.shape:
            raise ShapeError(f"phis {phis.shape} and psis {psis.shape} must be equal (m, dim) arrays")
        if phis.shape[1] != self.space.dim:
            raise ShapeError(f"vectors have length {phis.shape[1]}, space has dim {self.space.dim}")
        if not 1 <= phis.shape[0] <= self.space.dim:
            raise InvalidInputError(f"count must lie in [1, {self.space.dim}]")
        object.__setattr__(self, "phis", phis)
        object.__setattr__(self, "psis", psis)

    @property
    def count(self) -> int:
        return self.phis.shape[0]

    def gram(self) -> np.ndarray:
        """``G[n, m] = (phi_n | psi_m)``."""
        return self.phis @ self.psis.conj().T

    def vacuum_normalization(self) -> complex:
        return fock.inner(self.phis[0], self.psis[0])


@dataclass(frozen=True)
class PseudoBosonSystem:
    A: FockOperator
    B: FockOperator
    Adag: FockOperator
    Bdag: FockOperator
    N: FockOperator
    Ndag: FockOperator
    T: FockOperator
    Tinv: FockOperator
    space: TruncatedFockSpace

    def __post_init__(self):
        for name in ("A", "B", "Adag", "Bdag", "N", "Ndag", "T", "Tinv"):
            M = _frozen(getattr(self, name))
            if M.shape != (self.space.dim, self.space.dim):
                raise ShapeError(f"{name} has shape {M.shape}, expected dim {self.space.dim}")
            object.__setattr__(self, name, M)


def construct_pair(
    T: FockOperator,
    Tinv: FockOperator,
    count: int,
    space: TruncatedFockSpace = None,
    inversion_tol: float = fock.INVERSION_TOL,
) -> BiorthogonalPair:
    """Images ``phi_n = T e_n`` and ``psi_n = Tinv^dagger e_n`` for ``n < count``."""
    T = fock._as_operator(T, "T")
    Tinv = fock._as_operator(Tinv, "Tinv")
    space = _space_for(T, space)
    fock.check_inverse(T, Tinv, inversion_tol)
    if not 1 <= count <= space.dim:
        raise InvalidInputError(f"count {count} outside [1, {space.dim}]")
    phis = T[:, :count].T
    psis = Tinv.conj()[:count, :]
    return BiorthogonalPair(phis, psis, space)


def build_system(
    T: FockOperator,
    Tinv: FockOperator,
    space: TruncatedFockSpace = None,
    inversion_tol: float = fock.INVERSION_TOL,
) -> PseudoBosonSystem:
    """Conjugate the standard shifts by ``T`` to obtain ``A, B`` and companions."""
    T = fock._as_operator(T, "T")
    Tinv = fock._as_operator(Tinv, "Tinv")
    space = _space_for(T, space)
    lower = fock.make_lowering(space)
    raise_ = fock.make_raising(space)
    A = fock.conjugate(T, lower, Tinv, inversion_tol)
    B = fock.conjugate(T, raise_, Tinv, inversion_tol)
    Adag = fock.adjoint(A)
    Bdag = fock.adjoint(B)
    return PseudoBosonSystem(
        A=A, B=B, Adag=Adag, Bdag=Bdag, N=B @ A, Ndag=Adag @ Bdag, T=T, Tinv=Tinv, space=space
    )


def ladder_from_vacuum(b: FockOperator, phi0: FockVector, count: int) -> list:
    """``[phi_0, ..., phi_{count-1}]`` with ``phi_n = b phi_{n-1} / sqrt(n)``."""
    b = fock._as_operator(b, "b")
    phi0 = fock._as_vector(phi0, "phi0")
    fock._same_dim(b, phi0)
    if not np.any(phi0):
        raise InvalidInputError("vacuum vector is zero")
    if count < 1:
        raise InvalidInputError("count must be positive")
    out = [phi0]
    for n in range(1, count):
        out.append(b @ out[-1] / math.sqrt(n))
    return out


def find_vacuum(a: FockOperator, rtol: float = 1e-8, gap: float = 10.0) -> FockVector:
    """Unit vector spanning the numerical kernel of ``a``.

    The right singular vector of the smallest singular value is accepted
    when that value is at most ``rtol * ||a||_2`` and the next one exceeds
    ``gap`` times the same threshold. The phase is fixed so that the
    largest-magnitude component is real and positive.
    """
    a = fock._as_operator(a, "a")
    _, s, vh = np.linalg.svd(a)
    threshold = rtol * s[0] if s[0] > 0 else rtol
    if s[-1] > threshold:
        raise NoVacuumError(f"smallest singular value {s[-1]:.3e} exceeds {threshold:.3e}")
    if a.shape[0] > 1 and s[-2] <= gap * threshold:
        raise AmbiguousVacuumError(
            f"near-kernel is not one-dimensional: singular values {s[-2]:.3e}, {s[-1]:.3e}"
        )
    x = vh[-1].conj()
    k = int(np.argmax(np.abs(x)))
    x = x * (abs(x[k]) / x[k])
    return x / np.linalg.norm(x)


def vacuum_in_trusted_block(x: FockVector, space: TruncatedFockSpace, weight: float = 0.5) -> bool:
    """False when most of ``x`` lies beyond the trusted block (a truncation artifact)."""
    x = fock._as_vector(x)
    tc = space.trusted_count
    return np.linalg.norm(x[:tc]) ** 2 >= weight * np.linalg.norm(x) ** 2


# -- verification ----------------------------------------------------------

def _tol(name, tol):
    return DEFAULT_TOLERANCES[name] if tol is None else tol


def check_biorthogonality(pair: BiorthogonalPair, tol: float = None) -> VerificationReport:
    """Residual ``max |(phi_n | psi_m) - delta_nm|``."""
    report = VerificationReport(params={"count": pair.count, "dim": pair.space.dim})
    G = pair.gram()
    report.add("biorthogonality", max_abs(G - np.eye(pair.count)), _tol("biorthogonality", tol))
    return report


def check_ladder_action(
    sys: PseudoBosonSystem, pair: BiorthogonalPair, tol: float = None
) -> VerificationReport:
    """Lowering/raising residuals of ``A, B`` on ``phi`` and ``Adag, Bdag`` on ``psi``."""
    tol = _tol("ladder", tol)
    phis, psis = pair.phis, pair.psis
    zero = np.zeros(pair.space.dim, dtype=complex)
    res = {"A_phi": 0.0, "B_phi": 0.0, "Adag_psi": 0.0, "Bdag_psi": 0.0}
    for n in range(pair.count - 1):
        up = math.sqrt(n + 1)
        down = math.sqrt(n)
        phi_prev = phis[n - 1] if n else zero
        psi_prev = psis[n - 1] if n else zero
        res["A_phi"] = max(res["A_phi"], max_abs(sys.A @ phis[n] - down * phi_prev))
        res["B_phi"] = max(res["B_phi"], max_abs(sys.B @ phis[n] - up * phis[n + 1]))
        res["Adag_psi"] = max(res["Adag_psi"], max_abs(sys.Adag @ psis[n] - up * psis[n + 1]))
        res["Bdag_psi"] = max(res["Bdag_psi"], max_abs(sys.Bdag @ psis[n] - down * psi_prev))
    report = VerificationReport(params={"count": pair.count})
    for key, value in res.items():
        report.add(f"ladder_{key}", value, tol)
    return report


def check_power_formula(
    a: FockOperator,
    b: FockOperator,
    phi0: FockVector,
    max_n: int,
    max_m: int,
    space: TruncatedFockSpace = None,
    tol: float = None,
) -> VerificationReport:
    r"""Residual of :math:`a^m b^n \varphi_0 = {}_nP_m\, b^{n-m} \varphi_0` (zero for ``m > n``)."""
    a = fock._as_operator(a, "a")
    b = fock._as_operator(b, "b")
    phi0 = fock._as_vector(phi0, "phi0")
    fock._same_dim(a, b, phi0)
    space = _space_for(a, space)
    if max_n < 0 or max_m < 0:
        raise InvalidInputError("max_n and max_m must be non-negative")
    if max_n + max_m > space.trusted_count:
        raise TrustedBlockError(
            f"max_n + max_m = {max_n + max_m} exceeds trusted_count {space.trusted_count}"
        )
    raised = [phi0]
    for _ in range(max_n):
        raised.append(b @ raised[-1])
    worst = 0.0
    for n in range(max_n + 1):
        v = raised[n]
        for m in range(max_m + 1):
            if m:
                v = a @ v
            expected = math.perm(n, m) * raised[n - m] if m <= n else 0.0
            worst = max(worst, max_abs(v - expected))
    report = VerificationReport(params={"max_n": max_n, "max_m": max_m})
    report.add("power_formula", worst, _tol("power_formula", tol))
    return report


def check_number_operator(
    sys: PseudoBosonSystem, pair: BiorthogonalPair, max_power: int, tol: float = None
) -> VerificationReport:
    """Residuals of ``N^p phi_n = n^p phi_n`` and ``Ndag^p psi_n = n^p psi_n``."""
    tol = _tol("number_operator", tol)
    if max_power < 1:
        raise InvalidInputError("max_power must be at least 1")
    worst_phi = worst_psi = 0.0
    for n in range(pair.count):
        v, w = pair.phis[n], pair.psis[n]
        for p in range(1, max_power + 1):
            v = sys.N @ v
            w = sys.Ndag @ w
            worst_phi = max(worst_phi, max_abs(v - n**p * pair.phis[n]))
            worst_psi = max(worst_psi, max_abs(w - n**p * pair.psis[n]))
    report = VerificationReport(params={"count": pair.count, "max_power": max_power})
    report.add("number_N_phi", worst_phi, tol)
    report.add("number_Ndag_psi", worst_psi, tol)
    return report


def check_commutation(sys: PseudoBosonSystem, tol: float = None) -> VerificationReport:
    """Trusted-block residuals of ``[A, B] = I`` and ``[Bdag, Adag] = I``."""
    tol = _tol("commutator", tol)
    k = sys.space.trusted_count
    eye = np.eye(k)
    report = VerificationReport(params={"trusted_count": k})
    report.add("commutator_AB", max_abs(fock.block(fock.commutator(sys.A, sys.B), k) - eye), tol)
    report.add(
        "commutator_BdagAdag", max_abs(fock.block(fock.commutator(sys.Bdag, sys.Adag), k) - eye), tol
    )
    return report


def check_span_invariance(
    sys: PseudoBosonSystem, pair: BiorthogonalPair, tol: float = None
) -> VerificationReport:
    """Least-squares distance of ``A phi_n`` from span{phi_k : k < n} and ``B phi_n`` from span{phi_k : k <= n+1}.

    Distances are measured in the coordinates of the ``phi`` family, so a
    residual is the max-abs misfit of the best combination.
    """
    tol = _tol("ladder", tol)
    m = pair.count
    Phi = pair.phis.T
    worst_a = worst_b = 0.0
    for n in range(m - 1):
        if n:
            basis = Phi[:, :n]
            target = sys.A @ Phi[:, n]
            c, *_ = np.linalg.lstsq(basis, target, rcond=None)
            worst_a = max(worst_a, max_abs(basis @ c - target))
        else:
            worst_a = max(worst_a, max_abs(sys.A @ Phi[:, 0]))
        basis = Phi[:, : n + 2]
        target = sys.B @ Phi[:, n]
        c, *_ = np.linalg.lstsq(basis, target, rcond=None)
        worst_b = max(worst_b, max_abs(basis @ c - target))
    report = VerificationReport(params={"count": m})
    report.add("span_A", worst_a, tol)
    report.add("span_B", worst_b, tol)
    return report


# -- recovery of the intertwiner ---------------------------------------------

def recover_T(
    pair: BiorthogonalPair, inversion_tol: float = fock.INVERSION_TOL
) -> tuple:
    """Rebuild ``(T, Tinv)`` with ``T e_n = phi_n``.

    With a full family (``count == dim``) ``T`` has the ``phi_n`` as
    columns and ``Tinv`` is read off the ``psi_n`` directly, since
    ``Tinv^dagger e_n = psi_n``. With fewer vectors, ``T`` acts as the
    identity on the unseen basis directions and ``Tinv`` is a numerical
    inverse.
    """
    d, m = pair.space.dim, pair.count
    T = np.eye(d, dtype=complex)
    T[:, :m] = pair.phis.T
    s = np.linalg.svd(T, compute_uv=False)
    if s[-1] < SINGULAR_RTOL * s[0]:
        raise NonInvertiblePairError(
            f"recovered T is numerically singular: sigma_min/sigma_max = {s[-1] / s[0]:.3e}"
        )
    if m == d:
        Tinv = pair.psis.conj().copy()
    else:
        Tinv = np.linalg.solve(T, np.eye(d, dtype=complex))
    fock.check_inverse(T, Tinv, inversion_tol)
    return T, Tinv


def positive_form(T: FockOperator) -> tuple:
    """Polar form ``T = P U`` with ``P`` positive definite and ``U`` unitary.

    Returns ``(P, f)`` where ``f[n] = U e_n``, so that ``P f[n] = T e_n``.
    Computed from the SVD ``T = W diag(s) V^dagger`` as ``P = W diag(s) W^dagger``
    and ``U = W V^dagger``.
    """
    T = fock._as_operator(T, "T")
    W, s, Vh = np.linalg.svd(T)
    if s[-1] <= SINGULAR_RTOL * s[0]:
        raise NonInvertiblePairError(f"T is numerically singular: sigma_min/sigma_max = {s[-1] / s[0]:.3e}")
    P = (W * s) @ W.conj().T
    P = (P + P.conj().T) / 2
    U = W @ Vh
    return P, U.T.copy()


def metric_operator(
    T: FockOperator, Tinv: FockOperator, inversion_tol: float = fock.INVERSION_TOL
) -> FockOperator:
    """``G = (T T^dagger)^{-1} = Tinv^dagger Tinv``, mapping ``phi_n`` to ``psi_n``."""
    T = fock._as_operator(T, "T")
    Tinv = fock._as_operator(Tinv, "Tinv")
    fock.check_inverse(T, Tinv, inversion_tol)
    G = Tinv.conj().T @ Tinv
    return (G + G.conj().T) / 2
