"""Versioned table of default residual tolerances.

Every identity verified here is exact in infinite dimension, so the
finite-precision targets below are an artifact choice. They can be
overridden per run, or by pointing ``PSEUDOBOSON_DEFAULTS`` at a JSON file
of the form ``{"tolerances": {"ladder": 1e-7, ...}}``.
"""

from __future__ import annotations

import json
import os

from .errors import InvalidInputError

DEFAULTS_VERSION = 1

DEFAULT_TOLERANCES = {
    "biorthogonality": 1e-8,
    "ladder": 1e-8,
    "power_formula": 1e-7,
    "number_operator": 1e-7,
    "commutator": 1e-9,
    "closed_form": 1e-6,
    "hamiltonian_forms": 1e-8,
    "inversion": 1e-8,
    "spectrum": 1e-4,
    "spectrum_imag": 1e-6,
    "multiplication_action": 1e-6,
}

ENV_VAR = "PSEUDOBOSON_DEFAULTS"


def load_defaults(environ=None) -> dict:
    """Return the default table merged with the file named by ``PSEUDOBOSON_DEFAULTS``."""
    environ = os.environ if environ is None else environ
    table = dict(DEFAULT_TOLERANCES)
    path = environ.get(ENV_VAR)
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"cannot read {ENV_VAR}={path}: {exc}") from exc
        table = merge(table, data.get("tolerances", {}))
    return table


def merge(table: dict, overrides: dict) -> dict:
    out = dict(table)
    for name, value in overrides.items():
        if name not in DEFAULT_TOLERANCES:
            raise InvalidInputError(
                f"unknown tolerance {name!r}; known: {', '.join(sorted(DEFAULT_TOLERANCES))}"
            )
        value = float(value)
        if not value > 0:
            raise InvalidInputError(f"tolerance {name} must be positive, got {value}")
        out[name] = value
    return out
