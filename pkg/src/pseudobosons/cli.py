"""Command-line driver.

Subcommands::

    verify    build one model and run the full identity suite
    spectrum  lowest eigenvalues of a model Hamiltonian next to the exact levels
    pair      run the identity suite on a user-supplied T read from JSON
    all       verify every model, merged in model-name order

Exit status is 0 when every check passes, 1 when a check fails and 2 for
configuration or construction errors. A report is written in the first two
cases.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import biortho, fock, models
from .errors import InvalidInputError, PseudoBosonError
from .fock import TruncatedFockSpace
from .models import ModelKind, ModelSpec
from .report import SCHEMA_VERSION, VerificationReport
from .tolerances import DEFAULTS_VERSION, load_defaults, merge

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

DEFAULT_DIM = 64
DEFAULT_COUNT = 12
DEFAULT_K = 5
DEFAULT_BETA = 2.0
DEFAULT_THETA = 0.1
POWER_MAX = 5
NUMBER_MAX_POWER = 2


@dataclass
class RunConfig:
    command: str
    model: Optional[str] = None
    beta: Optional[float] = None
    theta: Optional[float] = None
    dim: int = DEFAULT_DIM
    count: Optional[int] = None
    k: int = DEFAULT_K
    tolerances: dict = field(default_factory=load_defaults)
    fmt: str = "json"
    out: Optional[str] = None
    t_matrix: Optional[str] = None

    def __post_init__(self):
        if self.command == "pair":
            if not self.t_matrix:
                raise InvalidInputError("pair needs --t-matrix PATH")
            return
        if self.count is None:
            self.count = DEFAULT_COUNT
        self.check_sizes(self.dim, self.count)
        if self.command in ("verify", "spectrum") and self.model is None:
            raise InvalidInputError(f"{self.command} needs --model")

    @staticmethod
    def check_sizes(dim: int, count: int) -> None:
        if count < 1:
            raise InvalidInputError(f"count must be positive, got {count}")
        if dim < 4 * count:
            raise InvalidInputError(
                f"dim = {dim} is below 4 * count = {4 * count}; raise --dim or lower --count"
            )

    def spec_for(self, kind: ModelKind) -> ModelSpec:
        if kind.uses_beta:
            beta = DEFAULT_BETA if self.beta is None else self.beta
            return ModelSpec(kind, beta=beta)
        theta = DEFAULT_THETA if self.theta is None else self.theta
        return ModelSpec(kind, theta=theta)


# -- suites ----------------------------------------------------------------

def identity_suite(
    T, Tinv, space: TruncatedFockSpace, count: int, tolerances: dict
) -> tuple:
    """Run the model-independent checks; return ``(report, system)``."""
    tol = tolerances
    pair = biortho.construct_pair(T, Tinv, count, space, inversion_tol=tol["inversion"])
    system = biortho.build_system(T, Tinv, space, inversion_tol=tol["inversion"])
    report = VerificationReport()
    report.add("inversion", fock.inversion_residual(T, Tinv), tol["inversion"])
    report.extend(biortho.check_biorthogonality(pair, tol["biorthogonality"]))
    report.extend(biortho.check_ladder_action(system, pair, tol["ladder"]))
    half = min(POWER_MAX, space.trusted_count // 2)
    report.extend(
        biortho.check_power_formula(
            system.A, system.B, pair.phis[0], half, half, space, tol["power_formula"]
        )
    )
    report.extend(biortho.check_number_operator(system, pair, NUMBER_MAX_POWER, tol["number_operator"]))
    report.extend(biortho.check_commutation(system, tol["commutator"]))
    return report, system


def verify_model(spec: ModelSpec, dim: int, count: int, tolerances: dict) -> VerificationReport:
    space = TruncatedFockSpace(dim)
    real = models.make_model(spec, space)
    report, system = identity_suite(real.T, real.Tinv, space, count, tolerances)
    report.extend(models.check_closed_forms(real, system, tol=tolerances["closed_form"]))
    if spec.kind.has_hamiltonian:
        real = models.make_hamiltonians(real)
        report.extend(models.check_hamiltonian_forms(real, tol=tolerances["hamiltonian_forms"]))
    report.params = {
        **spec.describe(),
        "dim": dim,
        "count": count,
        "trusted_count": space.trusted_count,
        "defaults_version": DEFAULTS_VERSION,
    }
    return report


def spectrum_rows(spec: ModelSpec, dim: int, k: int) -> list:
    space = TruncatedFockSpace(dim)
    models.hamiltonian_constants(spec)  # fail early for models without a Hamiltonian
    real = models.make_hamiltonians(models.make_model(spec, space))
    ev = models.spectrum(real.H_quadratic, k, space)
    exact = models.analytic_levels(spec, k)
    return [
        {"n": n, "re": float(e.real), "im": float(e.imag), "analytic": float(x), "abs_err": float(abs(e - x))}
        for n, (e, x) in enumerate(zip(ev, exact))
    ]


# -- output ----------------------------------------------------------------

def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_text(report: VerificationReport, fmt: str) -> str:
    return report.to_csv() if fmt == "csv" else report.to_json()


def _spectrum_text(rows: list, params: dict, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "re", "im", "analytic", "abs_err"])
        for r in rows:
            w.writerow([r["n"], repr(r["re"]), repr(r["im"]), repr(r["analytic"]), repr(r["abs_err"])])
        return buf.getvalue()
    return json.dumps({"schema": SCHEMA_VERSION, "params": params, "rows": rows}, indent=2, sort_keys=True) + "\n"


# -- commands --------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    report = verify_model(cfg.spec_for(ModelKind(cfg.model)), cfg.dim, cfg.count, cfg.tolerances)
    _emit(_report_text(report, cfg.fmt), cfg.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_all(cfg: RunConfig) -> int:
    merged = VerificationReport(params={"dim": cfg.dim, "count": cfg.count, "models": {}})
    for kind in sorted(ModelKind, key=lambda m: m.value):
        sub = verify_model(cfg.spec_for(kind), cfg.dim, cfg.count, cfg.tolerances)
        merged.extend(sub, prefix=f"{kind.value}/")
        merged.params["models"][kind.value] = sub.params
    _emit(_report_text(merged, cfg.fmt), cfg.out)
    return EXIT_OK if merged.passed else EXIT_FAIL


def cmd_spectrum(cfg: RunConfig) -> int:
    spec = cfg.spec_for(ModelKind(cfg.model))
    rows = spectrum_rows(spec, cfg.dim, cfg.k)
    params = {**spec.describe(), "dim": cfg.dim, "k": cfg.k}
    _emit(_spectrum_text(rows, params, cfg.fmt), cfg.out)
    ok = all(
        r["abs_err"] <= cfg.tolerances["spectrum"] and abs(r["im"]) <= cfg.tolerances["spectrum_imag"]
        for r in rows
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_pair(cfg: RunConfig) -> int:
    T = fock.load_operator(cfg.t_matrix)
    dim = T.shape[0]
    count = max(1, dim // 4) if cfg.count is None else cfg.count
    RunConfig.check_sizes(dim, count)
    try:
        Tinv = np.linalg.inv(T)
    except np.linalg.LinAlgError as exc:
        raise InvalidInputError(f"T is singular: {exc}") from exc
    space = TruncatedFockSpace(dim)
    report, _ = identity_suite(T, Tinv, space, count, cfg.tolerances)
    report.params = {"source": "t-matrix", "dim": dim, "count": count, "defaults_version": DEFAULTS_VERSION}
    _emit(_report_text(report, cfg.fmt), cfg.out)
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "spectrum": cmd_spectrum, "pair": cmd_pair, "all": cmd_all}


# -- argument parsing ------------------------------------------------------

def _tol_pair(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance value {value!r} is not a number") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=[m.value for m in ModelKind])
    common.add_argument("--beta", type=float)
    common.add_argument("--theta", type=float)
    common.add_argument("--dim", type=int, default=DEFAULT_DIM)
    common.add_argument("--count", type=int)
    common.add_argument("--k", type=int, default=DEFAULT_K)
    common.add_argument("--tol", type=_tol_pair, action="append", default=[], metavar="NAME=R")
    common.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--t-matrix", dest="t_matrix", metavar="PATH")

    parser = argparse.ArgumentParser(
        prog="pseudobosons", description="Build and verify pseudo-bosonic ladder systems."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("verify", "run the identity suite for one model"),
        ("spectrum", "lowest eigenvalues of a model Hamiltonian"),
        ("pair", "run the identity suite on T read from JSON"),
        ("all", "verify every model"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    tolerances = merge(load_defaults(), dict(args.tol))
    return RunConfig(
        command=args.command,
        model=args.model,
        beta=args.beta,
        theta=args.theta,
        dim=args.dim,
        count=args.count,
        k=args.k,
        tolerances=tolerances,
        fmt=args.fmt,
        out=args.out,
        t_matrix=args.t_matrix,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (PseudoBosonError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
