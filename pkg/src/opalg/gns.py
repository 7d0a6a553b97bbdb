"""Representations of multi-matrix algebras: GNS, irreducibles, double commutants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (DEFAULT_TOL, AlgebraElement, MatrixAlgebra, _commutant_of,
                      generated_star_algebra, is_commutative, same_algebra)
from .errors import DomainError
from .states import State, TensorAlgebra


@dataclass(frozen=True, eq=False)
class Representation:
    """A *-homomorphism ``source -> M_{carrier_dim}``.

    ``images[k]`` is the image of ``source.basis_matrices()[k]``.
    """

    source: MatrixAlgebra
    carrier_dim: int
    images: np.ndarray
    cyclic_vector: np.ndarray | None = None

    def image(self, x: AlgebraElement) -> np.ndarray:
        c = self.source.coefficients(x)
        return np.einsum("k,kij->ij", c, self.images)

    def homomorphism_defect(self, seed=0) -> float:
        """Largest error in multiplicativity, *-preservation and unitality (random elements)."""
        rng = np.random.default_rng(seed)
        A = self.source
        worst = float(np.linalg.norm(self.image(A.identity()) - np.eye(self.carrier_dim)))
        for _ in range(4):
            x, y = A.random_element(rng), A.random_element(rng)
            worst = max(worst, float(np.linalg.norm(self.image(x @ y) - self.image(x) @ self.image(y))))
            worst = max(worst, float(np.linalg.norm(self.image(x.H) - self.image(x).conj().T)))
        return worst


def identity_representation(A: MatrixAlgebra) -> Representation:
    return Representation(A, A.ambient_dim, A.basis_matrices())


def irreducible_representations(A: MatrixAlgebra) -> list[Representation]:
    """One irreducible representation per block: the compression ``x -> x_b``."""
    if not A.is_canonical:
        raise DomainError("irreducible representations are enumerated for canonical algebras")
    basis = A.basis_matrices()
    reps = []
    for b, n in enumerate(A.block_dims):
        sl = A.block_slice(b)
        reps.append(Representation(A, n, basis[:, sl, sl].copy()))
    return reps


def direct_sum(reps: list[Representation]) -> Representation:
    src = reps[0].source
    total = sum(r.carrier_dim for r in reps)
    images = np.zeros((src.dim, total, total), dtype=complex)
    start = 0
    for r in reps:
        if not same_algebra(r.source, src):
            raise DomainError("direct sum of representations of different algebras")
        images[:, start:start + r.carrier_dim, start:start + r.carrier_dim] = r.images
        start += r.carrier_dim
    return Representation(src, total, images)


def gns_construct(omega: State, A: MatrixAlgebra | None = None, tol: float = 1e-10) -> Representation:
    """GNS representation of ``omega``.

    The Gram matrix ``G_ab = omega(B_a^* B_b)`` on an orthonormal basis is
    diagonalized, eigenvalues at most ``tol * max eigenvalue`` are treated as
    the null space, and left multiplication is transported to the quotient.
    """
    A = omega.owner if A is None else A
    if not same_algebra(omega.owner, A):
        raise DomainError("state does not live on the given algebra")
    B = A.basis_matrices()
    rho = omega.ambient_density()
    G = np.einsum("aji,bji->ab", B.conj(), B @ rho)  # tr(B_a^* B_b rho)
    G = (G + G.conj().T) / 2
    w, V = np.linalg.eigh(G)
    keep = w > tol * w.max()
    w, V = w[keep], V[:, keep]
    J = np.sqrt(w)[:, None] * V.conj().T  # coordinates -> carrier
    Jp = V / np.sqrt(w)[None, :]  # carrier -> coordinates
    d, n = B.shape[0], B.shape[1]
    prods = (B[:, None] @ B[None]).reshape(d, d, n * n)  # B_c B_b
    mult = prods @ B.reshape(d, n * n).conj().T  # mult[c, b, a] = <B_a, B_c B_b>
    images = J @ mult.transpose(0, 2, 1) @ Jp
    unit = np.einsum("aii->a", B.conj())  # identity in basis coordinates
    omega_vec = J @ unit
    return Representation(A, int(keep.sum()), images, omega_vec)


def is_irreducible(pi: Representation, tol: float = DEFAULT_TOL) -> bool:
    """Trivial commutant test (commutant dimension exactly 1)."""
    return _commutant_of(pi.images, pi.carrier_dim, tol).shape[0] == 1


def image_double_commutant(pi: Representation, tol: float = DEFAULT_TOL) -> MatrixAlgebra:
    """``pi(A)''``, computed as the *-algebra generated by the images."""
    return generated_star_algebra(pi.carrier_dim, list(pi.images), tol, label=f"pi({pi.source.label})''")


def induced_representation(pi: Representation, T: TensorAlgebra, side: str) -> Representation:
    """``pi_1(x) = pi(x (x) 1)`` or ``pi_2(y) = pi(1 (x) y)``."""
    if not same_algebra(pi.source, T.product):
        raise DomainError("representation is not of the tensor product")
    factor = T.left if side == "left" else T.right
    embed = T.embed_left if side == "left" else T.embed_right
    images = np.array([pi.image(embed(factor.from_dense(E))) for E in factor.basis_matrices()])
    return Representation(factor, pi.carrier_dim, images)


@dataclass
class FactorizationReport:
    lhs_dim: int
    rhs_dim: int
    lhs_in_rhs: float
    rhs_in_lhs: float
    holds: bool


def _span_residual(src: MatrixAlgebra, dst: MatrixAlgebra) -> float:
    """Largest distance from an orthonormal basis element of ``src`` to ``span(dst)``."""
    S = src.basis.reshape(src.dim, -1)
    D = dst.basis.reshape(dst.dim, -1)
    resid = S - (S @ D.conj().T) @ D
    return float(np.linalg.norm(resid, axis=1).max(initial=0.0))


def tensor_factorization_report(pi: Representation, T: TensorAlgebra, tol: float = 1e-8) -> FactorizationReport:
    """Compare ``pi(A1 (x) A2)''`` with the algebra generated by ``pi_1(A1)`` and ``pi_2(A2)``.

    The two sides are computed independently: the left from the images of a
    basis of the product, the right from the induced representations of the
    factors (their products ``pi_1(x) pi_2(y)`` include both since each
    factor contains the unit).
    """
    lhs = image_double_commutant(pi)
    pi1 = induced_representation(pi, T, "left")
    pi2 = induced_representation(pi, T, "right")
    rhs = generated_star_algebra(pi.carrier_dim, list(pi1.images) + list(pi2.images))
    r1, r2 = _span_residual(lhs, rhs), _span_residual(rhs, lhs)
    return FactorizationReport(lhs.dim, rhs.dim, r1, r2, lhs.dim == rhs.dim and r1 <= tol and r2 <= tol)


def check_tensor_factorization(pi: Representation, T: TensorAlgebra, tol: float = 1e-8) -> bool:
    return tensor_factorization_report(pi, T, tol).holds


def separated_in_representation(pi: Representation, T: TensorAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``pi_1(A1)''`` or ``pi_2(A2)''`` is commutative."""
    for side in ("left", "right"):
        induced = induced_representation(pi, T, side)
        if is_commutative(image_double_commutant(induced, tol), tol):
            return True
    return False


def separated_in_all_irreducibles(T: TensorAlgebra, tol: float = DEFAULT_TOL) -> bool:
    return all(separated_in_representation(pi, T, tol) for pi in irreducible_representations(T.product))
