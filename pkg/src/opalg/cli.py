"""``opalg`` command-line experiments.

    opalg <experiment> --config <file> [--seed N] [--out <path>] [--format json|csv]

Verdicts are reported as data; the exit status is 0 when the experiment ran,
2 for an invalid configuration, 1 when a witness failed to re-verify.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import io
from .algebra import MatrixAlgebra, is_commutative
from .chsh import TSIRELSON, chsh_value, seesaw_global
from .embeddings import bell_witness, is_separated
from .errors import OpalgError
from .gns import (identity_representation, irreducible_representations, separated_in_representation,
                  tensor_factorization_report)
from .separability import certify_state, ppt_check
from .states import is_product_state, random_state, tensor_product

EXPERIMENTS = ("separation", "max-chsh", "certify", "counterexample", "representation-check")
DEFAULT_BUDGETS = {"restarts": 20, "max_iter": 500, "max_terms": 200, "tol": 1e-6, "seesaw_tol": 1e-10}
VERIFY_TOL = 1e-10


class ConfigError(OpalgError, ValueError):
    pass


class WitnessError(OpalgError, RuntimeError):
    """A witness did not reproduce from its serialized form."""


@dataclass
class ExperimentConfig:
    experiment: str
    left: MatrixAlgebra
    right: MatrixAlgebra
    seed: int = 0
    budgets: dict = field(default_factory=lambda: dict(DEFAULT_BUDGETS))
    state: dict | None = None
    out: str | None = None
    format: str = "json"

    @classmethod
    def from_dict(cls, obj: dict, experiment: str, seed=None, out=None, fmt="json") -> "ExperimentConfig":
        if experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        if "experiment" in obj and obj["experiment"] != experiment:
            raise ConfigError(f"config is for {obj['experiment']!r}, not {experiment!r}")
        for key in ("left", "right"):
            if key not in obj:
                raise ConfigError(f"config is missing {key!r}")
        try:
            left, right = io.algebra_from_json(obj["left"]), io.algebra_from_json(obj["right"])
        except OpalgError as exc:
            raise ConfigError(str(exc)) from exc
        budgets = dict(DEFAULT_BUDGETS)
        extra = obj.get("budgets", {})
        unknown = set(extra) - set(budgets)
        if unknown:
            raise ConfigError(f"unknown budget keys: {sorted(unknown)}")
        budgets.update(extra)
        for key in ("restarts", "max_iter", "max_terms"):
            if not isinstance(budgets[key], int) or isinstance(budgets[key], bool) or budgets[key] <= 0:
                raise ConfigError(f"budget {key} must be a positive integer")
        for key in ("tol", "seesaw_tol"):
            if not isinstance(budgets[key], (int, float)) or not 0 < budgets[key] < 1:
                raise ConfigError(f"tolerance {key} must lie in (0, 1)")
        seed = obj.get("seed", 0) if seed is None else seed
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        if fmt not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        return cls(experiment, left, right, seed, budgets, obj.get("state"), out, fmt)


def _reverify_chsh(T, payload: dict, expected: float):
    # rebuild from the serialized text exactly as an external checker would
    data = json.loads(io.dumps(payload))
    state = io.state_from_json(data["state"], T.product)
    obs = io.observables_from_json(data["observables"], T)
    value = chsh_value(state, T, obs)
    if abs(value - expected) > VERIFY_TOL:
        raise WitnessError(f"CHSH witness recomputes to {value}, reported {expected}")
    return value


def _witness_json(T, w) -> dict:
    payload = {"state": io.state_to_json(w.state), "observables": io.observables_to_json(w.observables)}
    recomputed = _reverify_chsh(T, payload, w.value)
    payload.update({"value": w.value, "recomputed_value": recomputed, "tsirelson": TSIRELSON,
                    "product_block": list(T.pairs[w.state.support()[0]])})
    return payload


def _separation(cfg: ExperimentConfig, T) -> dict:
    verdict = is_separated(cfg.left, cfg.right)
    return {"separated": verdict.separated, "left_commutative": verdict.left_commutative,
            "right_commutative": verdict.right_commutative,
            "witness": None if verdict.witness is None else _witness_json(T, verdict.witness)}


def _counterexample(cfg: ExperimentConfig, T) -> dict:
    if is_commutative(T.left) or is_commutative(T.right):
        return {"constructed": False,
                "reason": "a commutative factor contains no copy of M_2; every state satisfies the CHSH bound"}
    w = bell_witness(T)
    out = {"constructed": True, **_witness_json(T, w)}
    out["is_product_state"] = is_product_state(w.state, T)
    out["ppt_min_eigenvalue"] = ppt_check(w.state, T)[1]
    out["value_minus_tsirelson"] = w.value - TSIRELSON
    return out


def _max_chsh(cfg: ExperimentConfig, T) -> dict:
    b = cfg.budgets
    r = seesaw_global(T, seed=cfg.seed, restarts=b["restarts"], max_iter=b["max_iter"], tol=b["seesaw_tol"])
    payload = io.chsh_report_to_json(r)
    payload["recomputed_value"] = _reverify_chsh(T, payload, r.value)
    payload["value"] = r.value
    payload["exceeds_classical_bound"] = bool(r.value > 2 + 1e-8)
    payload["classical_bound"] = 2.0
    return payload


def _certify(cfg: ExperimentConfig, T) -> dict:
    b = cfg.budgets
    if cfg.state is not None:
        try:
            omega = io.state_from_json(cfg.state, T.product)
        except OpalgError as exc:
            raise ConfigError(f"invalid state: {exc}") from exc
        source = "config"
    else:
        omega = random_state(T.product, cfg.seed)
        source = "sampled"
    cert = certify_state(omega, T, seed=cfg.seed, restarts=b["restarts"], max_iter=b["max_iter"],
                         max_terms=b["max_terms"], tol=b["tol"])
    out = io.certificate_to_json(cert)
    out["state"] = io.state_to_json(omega)
    out["state_source"] = source
    if cert.decomposition is not None:
        dec = io.decomposition_from_json(json.loads(io.dumps(out["decomposition"])), T)
        resid = dec.remix_residual(omega)
        if abs(resid - cert.decomposition.residual) > VERIFY_TOL:
            raise WitnessError(f"decomposition re-mixes to residual {resid}, reported {cert.decomposition.residual}")
        out["remixed_residual"] = resid
    if cert.chsh is not None:
        payload = {"state": out["state"], "observables": out["chsh"]["observables"]}
        out["chsh"]["recomputed_value"] = _reverify_chsh(T, payload, cert.chsh.value)
    return out


def _representation_check(cfg: ExperimentConfig, T) -> dict:
    rows = []
    for pos, pi in enumerate(irreducible_representations(T.product)):
        fact = tensor_factorization_report(pi, T)
        rows.append({"block": pos, "pair": list(T.pairs[pos]), "carrier_dim": pi.carrier_dim,
                     "separated_in_representation": separated_in_representation(pi, T),
                     "factorization_holds": fact.holds, "double_commutant_dim": fact.lhs_dim})
    ident = tensor_factorization_report(identity_representation(T.product), T)
    separated = is_separated(cfg.left, cfg.right).separated
    all_sep = all(r["separated_in_representation"] for r in rows)
    return {"separated": separated, "irreducibles": rows, "all_irreducibles_separated": all_sep,
            "equivalence_holds": separated == all_sep,
            "identity_factorization": {"holds": ident.holds, "lhs_dim": ident.lhs_dim, "rhs_dim": ident.rhs_dim}}


_DISPATCH = {"separation": _separation, "max-chsh": _max_chsh, "certify": _certify,
             "counterexample": _counterexample, "representation-check": _representation_check}


def run(cfg: ExperimentConfig) -> dict:
    """Run one experiment and return its report (a JSON-ready dict)."""
    T = tensor_product(cfg.left, cfg.right, seed=cfg.seed)
    body = _DISPATCH[cfg.experiment](cfg, T)
    return {"schema_version": io.report_schema_version(), "experiment": cfg.experiment, "seed": cfg.seed,
            "left": io.algebra_to_json(cfg.left), "right": io.algebra_to_json(cfg.right),
            "tensor": io.tensor_to_json(T), "budgets": cfg.budgets, "result": body}


def to_csv(report: dict) -> str:
    """One header row and one value row of the scalar fields."""
    row = {"schema_version": report["schema_version"], "experiment": report["experiment"], "seed": report["seed"]}
    for k, v in sorted(report["result"].items()):
        if isinstance(v, (bool, int, float, str, np.floating)) or v is None:
            row[k] = "" if v is None else (io._fmt(v) if isinstance(v, (float, np.floating)) else v)
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
    writer.writeheader()
    writer.writerow(row)
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opalg", description="Separation and Bell-inequality experiments "
                                "on finite-dimensional operator algebras.")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--config", required=True, help="JSON config with 'left' and 'right' algebra presentations")
    p.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"opalg: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"opalg: {args.config}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    try:
        cfg = ExperimentConfig.from_dict(obj, args.experiment, seed=args.seed, out=args.out, fmt=args.format)
        report = run(cfg)
    except ConfigError as exc:
        print(f"opalg: invalid config: {exc}", file=sys.stderr)
        return 2
    except WitnessError as exc:
        print(f"opalg: refusing to emit report: {exc}", file=sys.stderr)
        return 1
    text = io.dumps(report) if cfg.format == "json" else to_csv(report)
    if cfg.out:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"opalg: cannot write report: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
