r"""The four intertwiner families built from the standard boson.

With :math:`a = S_-` and :math:`a^\dagger = S_+`:

======================  ==================================================  ====================================
kind                    T                                                   closed form of A
======================  ==================================================  ====================================
``extended-ho``         :math:`e^{-1/\beta^2}\exp((a+a^\dagger)/\beta)`      :math:`a - 1/\beta`
``swanson``             :math:`\exp(i\theta(a^2-a^{\dagger 2})/2)`           :math:`\cos\theta\,a + i\sin\theta\,a^\dagger`
``shifted-momentum``    :math:`e^{1/\beta^2}\exp(i(a-a^\dagger)/\beta)`      :math:`a + i/\beta`
``hyperbolic-squeeze``  :math:`\exp(\theta(a^2-a^{\dagger 2})/2)`            :math:`\cosh\theta\,a + \sinh\theta\,a^\dagger`
======================  ==================================================  ====================================

The first two also carry non-self-adjoint Hamiltonians, written both as a
quadratic form in ``p, q`` and factored through ``B A``.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import fock
from .errors import (
    InvalidInputError,
    NumericError,
    TruncationUnsafeError,
    UnsupportedModelError,
)
from .fock import FockOperator, TruncatedFockSpace
from .report import VerificationReport
from .tolerances import DEFAULT_TOLERANCES

#: largest generator 1-norm for which the matrix exponential is trusted
MAX_GENERATOR_NORM = 50.0


class ModelKind(str, enum.Enum):
    EXTENDED_HO = "extended-ho"
    SWANSON = "swanson"
    SHIFTED_MOMENTUM = "shifted-momentum"
    HYPERBOLIC_SQUEEZE = "hyperbolic-squeeze"

    @property
    def uses_beta(self) -> bool:
        return self in (ModelKind.EXTENDED_HO, ModelKind.SHIFTED_MOMENTUM)

    @property
    def has_hamiltonian(self) -> bool:
        return self in (ModelKind.EXTENDED_HO, ModelKind.SWANSON)


@dataclass(frozen=True)
class ModelSpec:
    """Model kind plus its single real parameter.

    ``beta > 0`` for the displacement-type models, ``theta`` in
    ``(-pi/4, pi/4)`` excluding 0 for the squeeze-type models.
    """

    kind: ModelKind
    beta: Optional[float] = None
    theta: Optional[float] = None

    def __post_init__(self):
        kind = ModelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.uses_beta:
            if self.beta is None or not math.isfinite(self.beta) or self.beta <= 0:
                raise InvalidInputError(f"{kind.value} needs beta > 0, got {self.beta!r}")
            if self.theta is not None:
                raise InvalidInputError(f"{kind.value} takes beta, not theta")
            object.__setattr__(self, "beta", float(self.beta))
        else:
            th = self.theta
            if th is None or not math.isfinite(th) or not (-math.pi / 4 < th < math.pi / 4) or th == 0:
                raise InvalidInputError(f"{kind.value} needs theta in (-pi/4, pi/4) \\ {{0}}, got {th!r}")
            if self.beta is not None:
                raise InvalidInputError(f"{kind.value} takes theta, not beta")
            object.__setattr__(self, "theta", float(th))

    @property
    def parameter(self) -> float:
        return self.beta if self.kind.uses_beta else self.theta

    def describe(self) -> dict:
        key = "beta" if self.kind.uses_beta else "theta"
        return {"model": self.kind.value, key: self.parameter}


@dataclass(frozen=True)
class ModelRealization:
    T: FockOperator
    Tinv: FockOperator
    A_closed: FockOperator
    B_closed: FockOperator
    spec: ModelSpec
    space: TruncatedFockSpace
    generator: FockOperator
    scalar: float
    inversion_residual: float
    H_quadratic: Optional[FockOperator] = None
    H_factored: Optional[FockOperator] = None

    def __post_init__(self):
        for name in ("T", "Tinv", "A_closed", "B_closed", "generator", "H_quadratic", "H_factored"):
            M = getattr(self, name)
            if M is not None:
                M = np.array(M, dtype=complex)
                M.flags.writeable = False
                object.__setattr__(self, name, M)


def make_q(space: TruncatedFockSpace) -> FockOperator:
    """Position operator ``(S_- + S_+) / sqrt(2)``."""
    return (fock.make_lowering(space) + fock.make_raising(space)) / math.sqrt(2)


def make_p(space: TruncatedFockSpace) -> FockOperator:
    """Momentum operator ``(S_- - S_+) / (i sqrt(2))``."""
    return (fock.make_lowering(space) - fock.make_raising(space)) / (1j * math.sqrt(2))


def generator(spec: ModelSpec, space: TruncatedFockSpace) -> tuple:
    """Return ``(X, c)`` with ``T = c * exp(X)``."""
    a = fock.make_lowering(space)
    ad = fock.make_raising(space)
    kind = spec.kind
    if kind is ModelKind.EXTENDED_HO:
        return (a + ad) / spec.beta, math.exp(-1.0 / spec.beta**2)
    if kind is ModelKind.SWANSON:
        return 0.5j * spec.theta * (a @ a - ad @ ad), 1.0
    if kind is ModelKind.SHIFTED_MOMENTUM:
        return 1j * (a - ad) / spec.beta, math.exp(1.0 / spec.beta**2)
    return 0.5 * spec.theta * (a @ a - ad @ ad), 1.0


def closed_forms(spec: ModelSpec, space: TruncatedFockSpace) -> tuple:
    """``(A, B)`` as linear combinations of ``a``, ``a^dagger`` and ``I``."""
    a = fock.make_lowering(space)
    ad = fock.make_raising(space)
    eye = space.identity()
    kind = spec.kind
    if kind is ModelKind.EXTENDED_HO:
        return a - eye / spec.beta, ad + eye / spec.beta
    if kind is ModelKind.SHIFTED_MOMENTUM:
        return a + 1j * eye / spec.beta, ad + 1j * eye / spec.beta
    th = spec.theta
    if kind is ModelKind.SWANSON:
        c, s = math.cos(th), 1j * math.sin(th)
    else:
        c, s = math.cosh(th), math.sinh(th)
    return c * a + s * ad, c * ad + s * a


def make_model(
    spec: ModelSpec, space: TruncatedFockSpace, max_generator_norm: float = MAX_GENERATOR_NORM
) -> ModelRealization:
    """Exponentiate the model generator and attach the closed-form ladder pair.

    ``Tinv`` is the exponential of the negated generator divided by the
    scalar prefactor. The scaled inversion residual is recorded rather than
    enforced; conjugations performed later apply the guard themselves.
    """
    X, c = generator(spec, space)
    norm = float(np.linalg.norm(X, 1))
    if norm > max_generator_norm:
        raise TruncationUnsafeError(
            f"generator 1-norm {norm:.2f} exceeds {max_generator_norm}; lower dim or |parameter|"
        )
    T = c * fock.mat_exp(X)
    Tinv = fock.mat_exp(-X) / c
    A, B = closed_forms(spec, space)
    return ModelRealization(
        T=T,
        Tinv=Tinv,
        A_closed=A,
        B_closed=B,
        spec=spec,
        space=space,
        generator=X,
        scalar=c,
        inversion_residual=fock.inversion_residual(T, Tinv),
    )


def hamiltonian_constants(spec: ModelSpec) -> tuple:
    """``(scale, shift)`` with ``H = scale * (B A + shift * I)``."""
    if spec.kind is ModelKind.EXTENDED_HO:
        b = spec.beta
        return b, (2 + b * b) / (2 * b * b)
    if spec.kind is ModelKind.SWANSON:
        return 1.0 / math.cos(2 * spec.theta), 0.5
    raise UnsupportedModelError(f"no Hamiltonian defined for {spec.kind.value}")


def analytic_levels(spec: ModelSpec, k: int) -> np.ndarray:
    """Exact eigenvalues ``scale * (n + shift)`` for ``n < k``."""
    scale, shift = hamiltonian_constants(spec)
    return scale * (np.arange(k) + shift)


def make_hamiltonians(real: ModelRealization) -> ModelRealization:
    """Attach ``H_quadratic`` (from ``p, q``) and ``H_factored`` (from ``B A``)."""
    spec, space = real.spec, real.space
    scale, shift = hamiltonian_constants(spec)
    p, q = make_p(space), make_q(space)
    p2, q2 = p @ p, q @ q
    if spec.kind is ModelKind.EXTENDED_HO:
        H_quad = spec.beta / 2 * (p2 + q2) + math.sqrt(2) * 1j * p
    else:
        H_quad = 0.5 * (p2 + q2) - 0.5j * math.tan(2 * spec.theta) * (p2 - q2)
    H_fact = scale * (real.B_closed @ real.A_closed + shift * space.identity())
    return dataclasses.replace(real, H_quadratic=H_quad, H_factored=H_fact)


def spectrum(H: FockOperator, k: int, space: TruncatedFockSpace = None) -> np.ndarray:
    """The ``k`` eigenvalues of smallest real part, ties broken by imaginary part."""
    H = fock._as_operator(H, "H")
    if space is not None and k > space.trusted_count:
        raise InvalidInputError(f"k = {k} exceeds trusted_count {space.trusted_count}")
    if not 1 <= k <= H.shape[0]:
        raise InvalidInputError(f"k = {k} outside [1, {H.shape[0]}]")
    try:
        ev = np.linalg.eigvals(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed: {exc}") from exc
    order = np.lexsort((ev.imag, ev.real))
    return ev[order][:k]


# -- model-level checks ----------------------------------------------------

def check_closed_forms(real: ModelRealization, sys, k: int = None, tol: float = None):
    """Compare conjugation-built ``A, B`` with the closed forms on the leading ``k x k`` block."""
    tol = DEFAULT_TOLERANCES["closed_form"] if tol is None else tol
    k = real.space.trusted_count if k is None else k
    report = VerificationReport(params={"block": k})
    report.add("closed_form_A", fock.max_abs(fock.block(sys.A - real.A_closed, k)), tol)
    report.add("closed_form_B", fock.max_abs(fock.block(sys.B - real.B_closed, k)), tol)
    return report


def check_hamiltonian_forms(real: ModelRealization, k: int = None, tol: float = None):
    """Trusted-block deviation between the quadratic and factored Hamiltonians."""
    if real.H_quadratic is None:
        raise UnsupportedModelError("call make_hamiltonians first")
    tol = DEFAULT_TOLERANCES["hamiltonian_forms"] if tol is None else tol
    k = real.space.trusted_count if k is None else k
    report = VerificationReport(params={"block": k})
    report.add(
        "hamiltonian_forms", fock.max_abs(fock.block(real.H_quadratic - real.H_factored, k)), tol
    )
    return report


def similarity_form(real: ModelRealization) -> FockOperator:
    """``scale * (T S_+ S_- T^-1 + shift * I)``: the Hamiltonian as a dressed oscillator."""
    scale, shift = hamiltonian_constants(real.spec)
    N0 = fock.number_diagonal(real.space)
    return scale * (fock.conjugate(real.T, N0, real.Tinv) + shift * real.space.identity())
