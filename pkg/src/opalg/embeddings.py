"""Copies of M_2 inside noncommutative algebras and the Bohm-Bell witness.

A noncommutative factor on each side contains 2x2 matrix units; in the
corner they span, the singlet vector and the rotated Pauli observables give
the CHSH value ``2 sqrt 2``. A commutative factor admits no such units, and
then every state satisfies the CHSH bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (DEFAULT_TOL, AlgebraElement, MatrixAlgebra, _check_owner, conditional_expectation,
                      generated_star_algebra, is_commutative, wedderburn_decompose)
from .chsh import SQRT2, ChshObservables, chsh_value
from .errors import ContractViolation, NoEmbeddingError, ProjectionPairError
from .states import State, TensorAlgebra, tensor_product, vector_state


@dataclass(frozen=True, eq=False)
class MatrixUnits:
    e11: AlgebraElement
    e12: AlgebraElement
    e21: AlgebraElement
    e22: AlgebraElement

    @property
    def owner(self) -> MatrixAlgebra:
        return self.e11.owner

    def unit(self, k: int, l: int) -> AlgebraElement:
        return getattr(self, f"e{k}{l}")

    def relations_defect(self) -> float:
        """Largest Frobenius error in ``e_kl e_mn = delta_lm e_kn`` over all 16 products."""
        worst = 0.0
        zero = self.e11.owner.zero()
        for k in (1, 2):
            for l in (1, 2):
                for m in (1, 2):
                    for n in (1, 2):
                        lhs = self.unit(k, l) @ self.unit(m, n)
                        rhs = self.unit(k, n) if l == m else zero
                        worst = max(worst, float(np.linalg.norm(lhs.dense() - rhs.dense())))
        worst = max(worst, float(np.linalg.norm(self.e12.H.dense() - self.e21.dense())))
        return worst

    def check(self, tol: float = 1e-9):
        defect = self.relations_defect()
        if defect > tol:
            raise ContractViolation(f"matrix-unit relations violated by {defect:.3e}")


def embed_m2(A: MatrixAlgebra, tol: float = DEFAULT_TOL, seed=None) -> MatrixUnits:
    """Corner matrix units of the largest matrix block of ``A``.

    Raises :class:`NoEmbeddingError` if ``A`` is commutative.
    """
    if is_commutative(A, tol):
        raise NoEmbeddingError(f"{A!r} is commutative and contains no copy of M_2")
    wd = wedderburn_decompose(A, tol=tol, seed=seed)
    n, m = wd.block_dims[0], wd.multiplicities[0]
    Ub = wd.change_of_basis[:, : n * m]
    units = {}
    for k in (1, 2):
        for l in (1, 2):
            e = np.zeros((n, n))
            e[k - 1, l - 1] = 1.0
            units[f"e{k}{l}"] = A.from_dense(Ub @ np.kron(e, np.eye(m)) @ Ub.conj().T)
    return MatrixUnits(**units)


def _is_projection(x: np.ndarray, tol: float) -> bool:
    return np.linalg.norm(x - x.conj().T) <= tol and np.linalg.norm(x @ x - x) <= tol


def two_projection_units(P: AlgebraElement, Q: AlgebraElement, tol: float = 1e-6) -> MatrixUnits:
    """Matrix units inside the algebra generated by two noncommuting projections.

    Picks the eigenvalue ``lam`` of ``PQP`` in ``(tol, 1 - tol)`` closest to
    1/2, lets ``E`` be its spectral projection (rank one in the generic case)
    and sets ``e11 = E``, ``e21 = (Q - lam) E / sqrt(lam (1 - lam))``. All four
    units are polynomials in ``P`` and ``Q``; membership in the generated
    algebra is verified before returning.
    """
    _check_owner(P.owner, Q)
    A = P.owner
    p, q = P.dense(), Q.dense()
    if not (_is_projection(p, 1e-8) and _is_projection(q, 1e-8)):
        raise ProjectionPairError("inputs must be self-adjoint idempotents")
    if np.linalg.norm(p @ q - q @ p, 2) <= tol:
        raise ProjectionPairError("projections commute; they generate a commutative algebra")
    w, V = np.linalg.eigh(p @ q @ p)
    window = (w > tol) & (w < 1 - tol)
    if not window.any():
        raise ProjectionPairError(f"PQP has no eigenvalue in ({tol}, {1 - tol}); spectrum {np.round(w, 12)}")
    lam = w[window][np.argmin(np.abs(w[window] - 0.5))]
    cluster = np.abs(w - lam) <= max(tol, 1e-9)
    Vc = V[:, cluster]
    E = Vc @ Vc.conj().T
    n = p.shape[0]
    e21 = (q - lam * np.eye(n)) @ E / np.sqrt(lam * (1 - lam))
    e12 = e21.conj().T
    mats = {"e11": E, "e12": e12, "e21": e21, "e22": e21 @ e12}
    gen = generated_star_algebra(n, [p, q])
    for name, mat in mats.items():
        resid = np.linalg.norm(mat - conditional_expectation(mat, gen).dense())
        if resid > tol:
            raise ProjectionPairError(f"unit {name} is not in the algebra generated by P, Q (residual {resid:.2e})")
    units = MatrixUnits(**{k: A.from_dense(v) for k, v in mats.items()})
    units.check(max(1e-9, 10 * tol))
    return units


def tsirelson_observables(L: MatrixUnits, R: MatrixUnits) -> ChshObservables:
    """Optimal CHSH observables built from Pauli-type elements of each corner.

    With ``Z = e11 - e22`` and ``X = e12 + e21`` on each side:
    ``A = X_L``, ``A' = Z_L``, ``B = (Z_R + X_R)/sqrt 2``, ``B' = (Z_R - X_R)/sqrt 2``.
    Then ``B - B' = sqrt 2 X_R`` pairs with ``A`` and ``B + B' = sqrt 2 Z_R``
    with ``A'``.
    """
    zl, xl = L.e11 - L.e22, L.e12 + L.e21
    zr, xr = R.e11 - R.e22, R.e12 + R.e21
    obs = ChshObservables(xl, zl, (zr + xr) / SQRT2, (zr - xr) / SQRT2)
    obs.check()
    return obs


def _corner(units: MatrixUnits) -> tuple[int, np.ndarray, np.ndarray]:
    # block carrying the corner, a unit vector u1 in range(e11) and u2 = e21 u1
    traces = [np.trace(b).real for b in units.e11.blocks]
    b = int(np.argmax(traces))
    w, V = np.linalg.eigh(units.e11.blocks[b])
    if w[-1] < 0.5:
        raise ContractViolation("e11 has no unit eigenvalue; cannot extract a corner")
    u1 = V[:, -1]
    u2 = units.e21.blocks[b] @ u1
    if abs(np.linalg.norm(u2) - 1) > 1e-8:
        raise ContractViolation("e21 does not map range(e11) isometrically")
    return b, u1, u2


def bohm_bell_state(T: TensorAlgebra, L: MatrixUnits, R: MatrixUnits) -> State:
    """Singlet ``(u1 (x) v2 - u2 (x) v1)/sqrt 2`` in the corner spanned by ``L`` and ``R``."""
    _check_owner(T.left, L.e11)
    _check_owner(T.right, R.e11)
    i, u1, u2 = _corner(L)
    j, v1, v2 = _corner(R)
    v = (np.kron(u1, v2) - np.kron(u2, v1)) / SQRT2
    return vector_state(T, T.pair_index[(i, j)], v / np.linalg.norm(v))


@dataclass(eq=False)
class BellWitness:
    tensor: TensorAlgebra
    left_units: MatrixUnits
    right_units: MatrixUnits
    state: State
    observables: ChshObservables
    value: float


@dataclass(eq=False)
class SeparationVerdict:
    separated: bool
    left_commutative: bool
    right_commutative: bool
    witness: BellWitness | None = None


def bell_witness(T: TensorAlgebra, tol: float = DEFAULT_TOL) -> BellWitness:
    L = embed_m2(T.left, tol)
    R = embed_m2(T.right, tol)
    state = bohm_bell_state(T, L, R)
    obs = tsirelson_observables(L, R)
    return BellWitness(T, L, R, state, obs, chsh_value(state, T, obs))


def is_separated(A1: MatrixAlgebra, A2: MatrixAlgebra, tol: float = DEFAULT_TOL) -> SeparationVerdict:
    """Separated iff a factor is commutative; otherwise attach a CHSH-violating witness."""
    c1, c2 = is_commutative(A1, tol), is_commutative(A2, tol)
    if c1 or c2:
        return SeparationVerdict(True, c1, c2)
    T = tensor_product(A1, A2, tol)
    return SeparationVerdict(False, c1, c2, bell_witness(T, tol))
