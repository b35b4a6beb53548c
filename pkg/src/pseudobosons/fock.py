r"""Dense operator algebra on a truncated Fock space.

Vectors and operators are plain complex numpy arrays expressed in the
truncated orthonormal basis :math:`e_0, \dots, e_{d-1}`. An operator ``M``
stores :math:`M_{jk} = (M e_k | e_j)`, so ``M @ x`` is the usual action.

The inner product :math:`(x|y)` is linear in the first slot and
conjugate-linear in the second, and the rank-one operator
:math:`x \otimes \bar y` acts as :math:`\xi \mapsto (\xi|y)\, x`.

Truncation forces :math:`S_+ e_{d-1} = 0`, hence
:math:`[S_-, S_+] = I - d\, e_{d-1} \otimes \bar e_{d-1}`. Identities are
therefore only asserted on the leading ``trusted_count`` indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from os import PathLike
from typing import Union

import numpy as np
import scipy.linalg

from .errors import (
    IllConditionedError,
    InvalidInputError,
    InvalidSpaceError,
    NumericError,
    ShapeError,
)

FockVector = np.ndarray
FockOperator = np.ndarray

#: default bound on the scaled inversion residual, see :func:`inversion_residual`
INVERSION_TOL = 1e-8


@dataclass(frozen=True)
class TruncatedFockSpace:
    """Span of the first ``dim`` number states.

    Parameters
    ----------
    dim:
        Truncation dimension, at least 2.
    trusted_count:
        Number of low basis indices on which identities are asserted.
        Defaults to ``dim // 4`` (at least 1) so that a handful of ladder
        steps never reaches the indices polluted by the truncation edge.
    """

    dim: int
    trusted_count: int = field(default=None)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise InvalidSpaceError(f"dim must be an integer >= 2, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        if self.trusted_count is None:
            object.__setattr__(self, "trusted_count", max(1, self.dim // 4))
        tc = self.trusted_count
        if int(tc) != tc or not 1 <= tc <= self.dim - 1:
            raise InvalidSpaceError(
                f"trusted_count must lie in [1, {self.dim - 1}], got {tc!r}"
            )
        object.__setattr__(self, "trusted_count", int(tc))

    def basis(self, n: int) -> FockVector:
        """Return the basis vector ``e_n``."""
        if not 0 <= n < self.dim:
            raise InvalidInputError(f"basis index {n} outside [0, {self.dim})")
        v = np.zeros(self.dim, dtype=complex)
        v[n] = 1.0
        return v

    def identity(self) -> FockOperator:
        return np.eye(self.dim, dtype=complex)

    def zeros(self) -> FockOperator:
        return np.zeros((self.dim, self.dim), dtype=complex)


def _as_operator(M, name="operator") -> FockOperator:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be a square matrix, got shape {M.shape}")
    return M


def _as_vector(x, name="vector") -> FockVector:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1:
        raise ShapeError(f"{name} must be one-dimensional, got shape {x.shape}")
    return x


def _same_dim(*arrays):
    dims = {a.shape[0] for a in arrays}
    if len(dims) != 1:
        raise ShapeError(f"dimension mismatch: {sorted(dims)}")


def make_lowering(space: TruncatedFockSpace) -> FockOperator:
    r"""Truncated lowering shift :math:`\sum_k \sqrt{k+1}\, e_k \otimes \bar e_{k+1}`."""
    if not isinstance(space, TruncatedFockSpace):
        space = TruncatedFockSpace(space)
    return np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), 1).astype(complex)


def make_raising(space: TruncatedFockSpace) -> FockOperator:
    r"""Truncated raising shift; annihilates ``e_{dim-1}``."""
    if not isinstance(space, TruncatedFockSpace):
        space = TruncatedFockSpace(space)
    return np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), -1).astype(complex)


def number_diagonal(space: TruncatedFockSpace) -> FockOperator:
    """``diag(0, 1, ..., dim-1)``, equal to ``S_+ @ S_-`` exactly."""
    return np.diag(np.arange(space.dim, dtype=float)).astype(complex)


def outer(x: FockVector, y: FockVector) -> FockOperator:
    r"""Rank-one operator :math:`x \otimes \bar y`, i.e. ``xi -> inner(xi, y) * x``."""
    x = _as_vector(x, "x")
    y = _as_vector(y, "y")
    _same_dim(x, y)
    return np.outer(x, y.conj())


def inner(x: FockVector, y: FockVector) -> complex:
    """Inner product ``(x|y) = sum_n x_n conj(y_n)``."""
    x = _as_vector(x, "x")
    y = _as_vector(y, "y")
    _same_dim(x, y)
    return complex(np.vdot(y, x))


def adjoint(M: FockOperator) -> FockOperator:
    return _as_operator(M).conj().T


def apply(M: FockOperator, x: FockVector) -> FockVector:
    M = _as_operator(M)
    x = _as_vector(x)
    _same_dim(M, x)
    return M @ x


def block(M: FockOperator, k: int) -> FockOperator:
    """Leading principal ``k x k`` submatrix."""
    M = _as_operator(M)
    if not 1 <= k <= M.shape[0]:
        raise InvalidInputError(f"block size {k} outside [1, {M.shape[0]}]")
    return M[:k, :k]


def commutator(A: FockOperator, B: FockOperator) -> FockOperator:
    A = _as_operator(A, "A")
    B = _as_operator(B, "B")
    _same_dim(A, B)
    return A @ B - B @ A


def inversion_residual(T: FockOperator, Tinv: FockOperator) -> float:
    """Scaled deviation of ``T @ Tinv`` from the identity.

    Returns ``max|T @ Tinv - I| / max(1, ||T||_1 ||Tinv||_1)``. For a
    well-conditioned ``T`` this is the plain max-abs residual; for the
    exponentially ill-conditioned truncated generators it is the backward
    error of the product, which is what a mismatched inverse would blow up.
    """
    T = _as_operator(T, "T")
    Tinv = _as_operator(Tinv, "Tinv")
    _same_dim(T, Tinv)
    raw = np.abs(T @ Tinv - np.eye(T.shape[0])).max()
    scale = max(1.0, np.linalg.norm(T, 1) * np.linalg.norm(Tinv, 1))
    return float(raw / scale)


def check_inverse(T: FockOperator, Tinv: FockOperator, tol: float = INVERSION_TOL) -> float:
    """Raise :class:`IllConditionedError` unless ``Tinv`` inverts ``T``."""
    r = inversion_residual(T, Tinv)
    if not np.isfinite(r) or r > tol:
        raise IllConditionedError(
            f"T @ Tinv deviates from I: scaled residual {r:.3e} > {tol:.1e}", residual=r
        )
    return r


def conjugate(
    T: FockOperator, S: FockOperator, Tinv: FockOperator, tol: float = INVERSION_TOL
) -> FockOperator:
    """Similarity transform ``T @ S @ Tinv`` guarded by :func:`check_inverse`."""
    T = _as_operator(T, "T")
    S = _as_operator(S, "S")
    Tinv = _as_operator(Tinv, "Tinv")
    _same_dim(T, S, Tinv)
    check_inverse(T, Tinv, tol)
    return T @ S @ Tinv


def mat_exp(M: FockOperator) -> FockOperator:
    """Matrix exponential (scaling and squaring with Pade approximants)."""
    M = _as_operator(M)
    if not np.all(np.isfinite(M)):
        raise NumericError("matrix exponential of a matrix with non-finite entries")
    E = scipy.linalg.expm(M)
    if not np.all(np.isfinite(E)):
        raise NumericError("matrix exponential overflowed")
    return E


def max_abs(x) -> float:
    """Max-abs norm, the residual measure used throughout the package."""
    x = np.asarray(x)
    return float(np.abs(x).max()) if x.size else 0.0


# -- JSON interchange ------------------------------------------------------

def operator_to_json(M: FockOperator) -> dict:
    """``{"dim": d, "entries": [[re, im], ...]}`` with entries in row-major order."""
    M = _as_operator(M)
    flat = M.reshape(-1)
    return {
        "dim": int(M.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def operator_from_json(data: dict) -> FockOperator:
    try:
        d = data["dim"]
        entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"operator JSON needs 'dim' and 'entries': {exc}") from exc
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InvalidInputError(f"'dim' must be a positive integer, got {d!r}")
    arr = np.asarray(entries, dtype=float)
    if arr.shape != (d * d, 2):
        raise InvalidInputError(
            f"'entries' must hold {d * d} [re, im] pairs, got array of shape {arr.shape}"
        )
    M = (arr[:, 0] + 1j * arr[:, 1]).reshape(d, d)
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("operator JSON contains non-finite entries")
    return M


def save_operator(M: FockOperator, path: Union[str, PathLike]) -> None:
    with open(path, "w") as fh:
        json.dump(operator_to_json(M), fh)


def load_operator(path: Union[str, PathLike]) -> FockOperator:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: malformed JSON ({exc})") from exc
    return operator_from_json(data)
