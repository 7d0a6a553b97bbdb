"""JSON forms of algebras, states, witnesses and reports.

Complex matrices are nested row-major arrays of ``[re, im]`` pairs. Reports
are written by :func:`dumps`, which fixes floats to 17 significant digits and
sorts keys so equal inputs give byte-identical text.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .algebra import MatrixAlgebra, generated_star_algebra, make_algebra
from .chsh import ChshObservables, ChshReport
from .errors import InvalidPresentationError, ReportVersionError
from .gns import Representation
from .separability import Certificate, Decomposition
from .states import State, TensorAlgebra

SCHEMA_VERSION = "1.0.0"


def report_schema_version() -> str:
    return SCHEMA_VERSION


# --- primitives ---------------------------------------------------------------

def matrix_to_json(m) -> list:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(obj) -> np.ndarray:
    try:
        arr = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidPresentationError(f"malformed complex matrix: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidPresentationError(f"complex matrix must be n x n x 2, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def vector_to_json(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).reshape(-1)]


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "null"
        if x == 0:
            return "0.0"
        s = format(x, ".17g")
        return s if any(c in s for c in ".en") else s + ".0"
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        items = sorted(x.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in items) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text; floats carry 17 significant digits."""
    return _fmt(obj) + "\n"


# --- algebras and states -------------------------------------------------------

def algebra_to_json(A: MatrixAlgebra) -> dict:
    if A.is_canonical:
        return {"label": A.label, "blocks": list(A.block_dims)}
    return {"label": A.label, "ambient": A.ambient_dim, "generators": [matrix_to_json(b) for b in A.basis]}


def algebra_from_json(obj) -> MatrixAlgebra:
    if not isinstance(obj, dict):
        raise InvalidPresentationError("algebra presentation must be an object")
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise InvalidPresentationError("label must be a string")
    if "blocks" in obj:
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in blocks):
            raise InvalidPresentationError("blocks must be a list of integers")
        return make_algebra(blocks, label=label)
    if "ambient" in obj:
        n = obj["ambient"]
        if not isinstance(n, int) or n < 1:
            raise InvalidPresentationError("ambient must be a positive integer")
        gens = [matrix_from_json(g) for g in obj.get("generators", [])]
        return generated_star_algebra(n, gens, label=label)
    raise InvalidPresentationError("algebra presentation needs 'blocks' or 'ambient'")


def element_to_json(x) -> list:
    return [matrix_to_json(b) for b in x.blocks]


def element_from_json(obj, A: MatrixAlgebra):
    return A.element([matrix_from_json(b) for b in obj])


def state_to_json(omega: State) -> dict:
    return {"weights": [float(w) for w in omega.weights],
            "densities": [None if r is None else matrix_to_json(r) for r in omega.densities]}


def state_from_json(obj, A: MatrixAlgebra) -> State:
    if not isinstance(obj, dict) or "weights" not in obj or "densities" not in obj:
        raise InvalidPresentationError("state needs 'weights' and 'densities'")
    dens = tuple(None if d is None else matrix_from_json(d) for d in obj["densities"])
    return State(A, np.array(obj["weights"], dtype=float), dens)


def tensor_to_json(T: TensorAlgebra) -> dict:
    return {"left": algebra_to_json(T.left), "right": algebra_to_json(T.right),
            "pair_index": [[i, j, k] for (i, j), k in sorted(T.pair_index.items(), key=lambda t: t[1])]}


def observables_to_json(obs: ChshObservables) -> dict:
    return {"A": element_to_json(obs.a), "A_prime": element_to_json(obs.a_prime),
            "B": element_to_json(obs.b), "B_prime": element_to_json(obs.b_prime)}


def observables_from_json(obj, T: TensorAlgebra) -> ChshObservables:
    return ChshObservables(element_from_json(obj["A"], T.left), element_from_json(obj["A_prime"], T.left),
                           element_from_json(obj["B"], T.right), element_from_json(obj["B_prime"], T.right))


def chsh_report_to_json(r: ChshReport) -> dict:
    out = {"value": r.value, "signs": list(r.signs), "iterations": r.iterations,
           "restarts_used": r.restarts_used, "converged": r.converged, "history": list(r.history),
           "observables": observables_to_json(r.observables)}
    if r.state is not None:
        out["state"] = state_to_json(r.state)
    return out


def decomposition_to_json(d: Decomposition) -> dict:
    return {"success": d.success, "residual": d.residual, "iterations": d.iterations,
            "terms": [{"weight": w, "left": state_to_json(l), "right": state_to_json(r)} for w, l, r in d.terms]}


def decomposition_from_json(obj, T: TensorAlgebra) -> Decomposition:
    terms = [(float(t["weight"]), state_from_json(t["left"], T.left), state_from_json(t["right"], T.right))
             for t in obj["terms"]]
    return Decomposition(T, terms, residual=obj["residual"] if obj["residual"] is not None else np.inf,
                         success=obj["success"], iterations=obj["iterations"])


def certificate_to_json(c: Certificate) -> dict:
    return {"verdict": c.verdict, "ppt_passes": c.ppt_passes, "ppt_min_eigenvalue": c.ppt_min_eigenvalue,
            "decomposition": None if c.decomposition is None else decomposition_to_json(c.decomposition),
            "chsh": None if c.chsh is None else chsh_report_to_json(c.chsh)}


def representation_to_json(pi: Representation) -> dict:
    return {"source": algebra_to_json(pi.source), "carrier_dim": pi.carrier_dim,
            "images": [matrix_to_json(m) for m in pi.images],
            "cyclic_vector": None if pi.cyclic_vector is None else vector_to_json(pi.cyclic_vector)}


def representation_from_json(obj) -> Representation:
    src = algebra_from_json(obj["source"])
    images = np.array([matrix_from_json(m) for m in obj["images"]])
    cv = obj.get("cyclic_vector")
    if cv is not None:
        cv = np.array([complex(re, im) for re, im in cv])
    return Representation(src, int(obj["carrier_dim"]), images, cv)


def parse_report(text: str) -> dict:
    """Load a report, rejecting a different major schema version."""
    obj = json.loads(text)
    version = obj.get("schema_version") if isinstance(obj, dict) else None
    if not isinstance(version, str):
        raise ReportVersionError("report has no schema_version")
    if version.split(".")[0] != SCHEMA_VERSION.split(".")[0]:
        raise ReportVersionError(f"report schema {version} is incompatible with {SCHEMA_VERSION}")
    return obj

