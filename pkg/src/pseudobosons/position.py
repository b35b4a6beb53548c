r"""Hermite functions, Gauss-Hermite quadrature and Fock <-> position transforms.

The abstract basis vector :math:`e_n` is identified with the orthonormal
Hermite function

.. math:: f_n(x) = (2^n n! \sqrt{\pi})^{-1/2} H_n(x) e^{-x^2/2},

so that :math:`q = (a + a^\dagger)/\sqrt 2` acts as multiplication by ``x``.
Values are produced by the three-term recurrence for :math:`f_n` itself,
which never forms :math:`H_n` and so stays finite for large ``n``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss

from . import fock
from .errors import InvalidInputError, QuadratureAccuracyError, UnsupportedModelError
from .report import VerificationReport
from .tolerances import DEFAULT_TOLERANCES


def hermite_functions(order: int, xs) -> np.ndarray:
    """Array ``F`` of shape ``(order + 1, len(xs))`` with ``F[n] = f_n(xs)``."""
    if order < 0:
        raise InvalidInputError(f"order must be non-negative, got {order}")
    xs = np.asarray(xs, dtype=float)
    F = np.empty((order + 1,) + xs.shape)
    F[0] = np.pi**-0.25 * np.exp(-0.5 * xs**2)
    if order >= 1:
        F[1] = math.sqrt(2.0) * xs * F[0]
    for n in range(2, order + 1):
        F[n] = xs * math.sqrt(2.0 / n) * F[n - 1] - math.sqrt((n - 1) / n) * F[n - 2]
    return F


def hermite_function(n: int, xs) -> np.ndarray:
    if n < 0:
        raise InvalidInputError(f"Hermite index must be non-negative, got {n}")
    return hermite_functions(n, xs)[n]


@dataclass(frozen=True)
class HermiteBasis:
    """Orthonormal Hermite functions ``f_0 .. f_order``."""

    order: int

    def __post_init__(self):
        if self.order < 0:
            raise InvalidInputError("order must be non-negative")

    def __call__(self, xs) -> np.ndarray:
        return hermite_functions(self.order, xs)

    def gram(self, rule: "QuadratureRule") -> np.ndarray:
        """Quadrature approximation of ``int f_n f_m dx``."""
        F = self(rule.nodes)
        return (F * rule.weights) @ F.T


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite nodes with the Gaussian weight folded into ``weights``.

    ``sum(weights * g(nodes))`` approximates ``int g(x) dx`` for ``g`` of
    Gaussian decay, exactly when ``g`` is a polynomial of degree below
    ``2 * size`` times ``exp(-x^2)``.
    """

    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def gauss_hermite(cls, n: int) -> "QuadratureRule":
        if n < 1:
            raise InvalidInputError("need at least one quadrature node")
        x, w = hermgauss(n)
        # log-space keeps exp(x^2) from overflowing at large n
        return cls(nodes=x, weights=np.exp(np.log(w) + x**2))

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def hull(self) -> float:
        return float(np.abs(self.nodes).max())

    def integrate(self, values) -> complex:
        return np.sum(self.weights * np.asarray(values), axis=-1)

    def moment_errors(self, max_degree: int = None) -> np.ndarray:
        """Absolute errors of ``int x^k exp(-x^2) dx`` for ``k <= max_degree``."""
        max_degree = 2 * self.size - 1 if max_degree is None else max_degree
        errs = []
        x = self.nodes
        g = np.exp(-x**2)
        for k in range(max_degree + 1):
            exact = 0.0 if k % 2 else math.gamma((k + 1) / 2)
            errs.append(abs(self.integrate(x**k * g) - exact))
        return np.asarray(errs)


def synthesize(coeffs, xs) -> np.ndarray:
    """Evaluate ``sum_n coeffs[n] f_n(xs)``."""
    coeffs = fock._as_vector(coeffs, "coeffs")
    F = hermite_functions(len(coeffs) - 1, xs)
    return np.tensordot(coeffs, F, axes=1)


def project(samples, rule: QuadratureRule, dim: int) -> np.ndarray:
    """Fock coefficients ``c_n = int f_n(x) g(x) dx`` for ``n < dim`` from samples at ``rule.nodes``."""
    samples = np.asarray(samples)
    if samples.shape != rule.nodes.shape:
        raise InvalidInputError(f"expected {rule.size} samples, got shape {samples.shape}")
    if rule.size < 2 * dim:
        raise QuadratureAccuracyError(
            f"{rule.size} nodes cannot resolve {dim} Hermite functions; need at least {2 * dim}"
        )
    F = hermite_functions(dim - 1, rule.nodes)
    return (F * rule.weights) @ samples.astype(complex)


def verify_multiplication_action(
    model,
    xs=None,
    n_quad: int = 128,
    x_max: float = 3.0,
    tol: float = None,
    scalar_tol: float = 1e-8,
) -> VerificationReport:
    r"""Compare :math:`(T f_0)(x)` with :math:`e^{-1/\beta^2} e^{\sqrt2 x/\beta} f_0(x)`.

    Valid for the extended oscillator, whose generator :math:`(a+a^\dagger)/\beta`
    equals :math:`\sqrt2\, q/\beta`. The relative error is taken over the
    sample points with ``|x| <= x_max``; the scalar prefactor is checked
    separately at ``x = 0``.
    """
    from .models import ModelKind

    if model.spec.kind is not ModelKind.EXTENDED_HO:
        raise UnsupportedModelError(
            f"multiplication action is defined for extended-ho, not {model.spec.kind.value}"
        )
    tol = DEFAULT_TOLERANCES["multiplication_action"] if tol is None else tol
    hull = QuadratureRule.gauss_hermite(n_quad).hull
    if xs is None:
        xs = np.linspace(-x_max, x_max, 241)
    xs = np.asarray(xs, dtype=float)
    if np.abs(xs).max() > hull:
        raise InvalidInputError(f"sample points leave the quadrature hull |x| <= {hull:.3f}")
    beta = model.spec.beta
    coeffs = model.T[:, 0]
    inside = np.abs(xs) <= x_max
    got = synthesize(coeffs, xs[inside])
    expected = model.scalar * np.exp(math.sqrt(2.0) * xs[inside] / beta) * hermite_function(0, xs[inside])
    rel = np.abs(got - expected) / np.abs(expected)
    at_zero = synthesize(coeffs, np.array([0.0]))[0] / hermite_function(0, np.array([0.0]))[0]
    report = VerificationReport(params={"beta": beta, "dim": model.space.dim, "x_max": x_max})
    report.add("multiplication_action", float(rel.max()) if rel.size else 0.0, tol)
    report.add("vacuum_scalar", abs(at_zero - math.exp(-1.0 / beta**2)), scalar_tol)
    return report


def write_samples_csv(path, xs, values) -> None:
    """Write rows ``x, re, im`` for external plotting."""
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=complex)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "re", "im"])
        for x, v in zip(xs, values):
            w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])
