"""Tensor products of multi-matrix algebras and states on them."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import (AlgebraElement, MatrixAlgebra, WedderburnData, _check_owner, _frozen, _rng,
                      make_algebra, same_algebra, wedderburn_decompose)
from .errors import DomainError

STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class TensorAlgebra:
    """``left (x) right`` for canonical factors.

    The product block for the pair ``(i, j)`` has dimension ``n_i * m_j``,
    blocks are ordered lexicographically in ``(i, j)`` and each block uses
    the Kronecker ordering ``C^{n_i} (x) C^{m_j}``.
    """

    left: MatrixAlgebra
    right: MatrixAlgebra
    product: MatrixAlgebra = field(init=False)
    pair_index: dict = field(init=False)
    pairs: tuple = field(init=False)
    left_wedderburn: WedderburnData | None = None
    right_wedderburn: WedderburnData | None = None

    def __post_init__(self):
        pairs = tuple((i, j) for i in range(len(self.left.block_dims))
                      for j in range(len(self.right.block_dims)))
        dims = [self.left.block_dims[i] * self.right.block_dims[j] for i, j in pairs]
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "pair_index", {p: k for k, p in enumerate(pairs)})
        object.__setattr__(self, "product", make_algebra(dims, label=f"({self.left.label})(x)({self.right.label})"))

    def factor_dims(self, pos: int) -> tuple[int, int]:
        i, j = self.pairs[pos]
        return self.left.block_dims[i], self.right.block_dims[j]

    def kron(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """``x (x) y`` as an element of the product algebra."""
        _check_owner(self.left, x)
        _check_owner(self.right, y)
        return self.product.element([np.kron(x.blocks[i], y.blocks[j]) for i, j in self.pairs])

    def embed_left(self, x: AlgebraElement) -> AlgebraElement:
        return self.kron(x, self.right.identity())

    def embed_right(self, y: AlgebraElement) -> AlgebraElement:
        return self.kron(self.left.identity(), y)


def tensor_product(A1: MatrixAlgebra, A2: MatrixAlgebra, tol: float = 1e-9, seed=None) -> TensorAlgebra:
    """Tensor product; subalgebra-form factors are canonicalized first."""
    w1 = w2 = None
    if not A1.is_canonical:
        w1 = wedderburn_decompose(A1, tol=tol, seed=seed)
        A1 = w1.canonical
    if not A2.is_canonical:
        w2 = wedderburn_decompose(A2, tol=tol, seed=seed)
        A2 = w2.canonical
    return TensorAlgebra(A1, A2, left_wedderburn=w1, right_wedderburn=w2)


@dataclass(frozen=True, eq=False)
class State:
    """Positive normalized functional ``x -> sum_i w_i tr(rho_i x_i)``.

    ``densities[i]`` is ``None`` exactly when ``weights[i] == 0``.
    """

    owner: MatrixAlgebra
    weights: np.ndarray
    densities: tuple

    def __post_init__(self):
        A = self.owner
        if not A.is_canonical:
            raise DomainError("states live on canonical algebras; canonicalize first")
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(A.block_dims),):
            raise DomainError(f"need {len(A.block_dims)} weights, got {w.shape}")
        if np.any(w < -STATE_TOL) or abs(w.sum() - 1) > STATE_TOL:
            raise DomainError(f"weights must be a probability vector, got {w}")
        w = np.clip(w, 0, None)
        dens = []
        for wi, rho, n in zip(w, self.densities, A.block_dims):
            if wi == 0:
                dens.append(None)
                continue
            if rho is None:
                raise DomainError("a block with positive weight needs a density")
            rho = np.asarray(rho, dtype=complex)
            if rho.shape != (n, n):
                raise DomainError(f"density shape {rho.shape}, expected {(n, n)}")
            if np.linalg.norm(rho - rho.conj().T) > STATE_TOL:
                raise DomainError("density is not self-adjoint")
            if abs(np.trace(rho).real - 1) > STATE_TOL:
                raise DomainError(f"density trace {np.trace(rho).real} != 1")
            if np.linalg.eigvalsh(rho)[0] < -STATE_TOL:
                raise DomainError("density is not positive semidefinite")
            dens.append(_frozen(rho))
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "densities", tuple(dens))

    @classmethod
    def from_ambient(cls, owner: MatrixAlgebra, rho: np.ndarray, tol: float = 0.0) -> "State":
        """State whose ambient density (block diagonal of ``w_i rho_i``) is ``rho``.

        Blocks with trace at most ``tol`` are dropped and the rest renormalized.
        """
        weights, dens = [], []
        for b in range(len(owner.block_dims)):
            sl = owner.block_slice(b)
            blk = rho[sl, sl]
            blk = (blk + blk.conj().T) / 2
            t = float(np.trace(blk).real)
            if t <= tol:
                weights.append(0.0)
                dens.append(None)
            else:
                weights.append(t)
                dens.append(blk / t)
        weights = np.array(weights)
        return cls(owner, weights / weights.sum(), tuple(dens))

    def ambient_density(self) -> np.ndarray:
        """Block-diagonal ``(+)_i w_i rho_i``; ``evaluate(x) = tr(rho x)``."""
        n = self.owner.ambient_dim
        out = np.zeros((n, n), dtype=complex)
        for b, (w, rho) in enumerate(zip(self.weights, self.densities)):
            if rho is not None:
                sl = self.owner.block_slice(b)
                out[sl, sl] = w * rho
        return out

    def support(self):
        """Indices of blocks with positive weight."""
        return [b for b, rho in enumerate(self.densities) if rho is not None]


def evaluate(omega: State, x: AlgebraElement) -> complex:
    if not same_algebra(omega.owner, x.owner):
        raise DomainError(f"state on {omega.owner!r} evaluated at an element of {x.owner!r}")
    total = 0j
    for w, rho, blk in zip(omega.weights, omega.densities, x.blocks):
        if rho is not None:
            total += w * np.trace(rho @ blk)
    return complex(total)


def _owner_of(T) -> MatrixAlgebra:
    return T.product if isinstance(T, TensorAlgebra) else T


def vector_state(T, block: int, v) -> State:
    """Point mass on ``block`` with the rank-one density ``|v><v|``.

    A vector within 1e-6 of unit norm is normalized with a warning.
    """
    A = _owner_of(T)
    v = np.asarray(v, dtype=complex).reshape(-1)
    if not 0 <= block < len(A.block_dims):
        raise DomainError(f"block index {block} out of range")
    if v.size != A.block_dims[block]:
        raise DomainError(f"vector of length {v.size} in block of dimension {A.block_dims[block]}")
    norm = np.linalg.norm(v)
    if abs(norm - 1) > 1e-6:
        raise DomainError(f"vector norm {norm} is not 1")
    if abs(norm - 1) > 1e-14:
        warnings.warn(f"normalizing vector of norm {norm:.12f}", stacklevel=2)
        v = v / norm
    weights = np.zeros(len(A.block_dims))
    weights[block] = 1.0
    dens = [None] * len(A.block_dims)
    dens[block] = np.outer(v, v.conj())
    return State(A, weights, tuple(dens))


def _partial_trace(rho: np.ndarray, n: int, m: int, keep: str) -> np.ndarray:
    r = rho.reshape(n, m, n, m)
    if keep == "left":
        return np.einsum("ajbj->ab", r)
    return np.einsum("iaib->ab", r)


def reduced_state(omega: State, T: TensorAlgebra, side: str) -> State:
    """Restriction of ``omega`` to ``left (x) 1`` or ``1 (x) right``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not same_algebra(omega.owner, T.product):
        raise DomainError("state does not live on the tensor product")
    factor = T.left if side == "left" else T.right
    acc = [np.zeros((n, n), dtype=complex) for n in factor.block_dims]
    for pos, (i, j) in enumerate(T.pairs):
        rho = omega.densities[pos]
        if rho is None:
            continue
        n, m = T.factor_dims(pos)
        k = i if side == "left" else j
        acc[k] += omega.weights[pos] * _partial_trace(rho, n, m, side)
    weights = np.array([np.trace(a).real for a in acc])
    weights = np.where(weights > 0, weights, 0.0)
    dens = tuple(a / w if w > 0 else None for a, w in zip(acc, weights))
    return State(factor, weights / weights.sum(), dens)


def is_pure(omega: State, tol: float = 1e-9) -> bool:
    """Extreme point test: one block carries all weight, with a rank-one density."""
    heavy = [b for b, w in enumerate(omega.weights) if w >= 1 - tol]
    if len(heavy) != 1:
        return False
    ev = np.linalg.eigvalsh(omega.densities[heavy[0]])
    return ev.size < 2 or ev[-2] <= tol


def _moments(omega: State, T: TensorAlgebra, side: str) -> list:
    # omega(E_kl) for matrix units E_kl of each factor block, as n x n arrays
    red = reduced_state(omega, T, side)
    factor = T.left if side == "left" else T.right
    out = []
    for w, rho, n in zip(red.weights, red.densities, factor.block_dims):
        out.append(np.zeros((n, n), dtype=complex) if rho is None else w * rho.T)
    return out


def is_product_state(omega: State, T: TensorAlgebra, tol: float = 1e-8) -> bool:
    """Check ``omega(E (x) F) = omega(E (x) 1) omega(1 (x) F)`` on matrix-unit bases."""
    return product_defect(omega, T) <= tol


def product_defect(omega: State, T: TensorAlgebra) -> float:
    """Largest entrywise violation of the product-state identity over basis pairs."""
    if not same_algebra(omega.owner, T.product):
        raise DomainError("state does not live on the tensor product")
    a = _moments(omega, T, "left")
    b = _moments(omega, T, "right")
    worst = 0.0
    for pos, (i, j) in enumerate(T.pairs):
        n, m = T.factor_dims(pos)
        rho = omega.densities[pos]
        if rho is None:
            joint = np.zeros((n, n, m, m), dtype=complex)
        else:
            # tr(rho (E_kl (x) F_pq)) = rho[(l,q),(k,p)]
            joint = omega.weights[pos] * rho.reshape(n, m, n, m).transpose(2, 0, 3, 1)
        prod = np.einsum("kl,pq->klpq", a[i], b[j])
        worst = max(worst, float(np.abs(joint - prod).max()))
    return worst


def product_state(T: TensorAlgebra, left: State, right: State) -> State:
    """``left (x) right`` on ``T.product``."""
    _check_state_owner(left, T.left)
    _check_state_owner(right, T.right)
    weights, dens = [], []
    for i, j in T.pairs:
        w = left.weights[i] * right.weights[j]
        if left.densities[i] is None or right.densities[j] is None:
            weights.append(0.0)
            dens.append(None)
        else:
            weights.append(w)
            dens.append(np.kron(left.densities[i], right.densities[j]))
    return State(T.product, np.array(weights), tuple(dens))


def _check_state_owner(omega: State, A: MatrixAlgebra):
    if not same_algebra(omega.owner, A):
        raise DomainError(f"state on {omega.owner!r} where {A!r} was expected")


def random_state(A, seed=None) -> State:
    """Flat-simplex block weights and normalized complex Wishart densities."""
    A = _owner_of(A)
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(len(A.block_dims)))
    dens = []
    for n in A.block_dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = g @ g.conj().T
        rho = (rho + rho.conj().T) / 2
        dens.append(rho / np.trace(rho).real)
    return State(A, weights / weights.sum(), tuple(dens))


def random_pure_state(A, seed=None) -> State:
    """Vector state in a block drawn proportionally to its dimension."""
    A = _owner_of(A)
    rng = _rng(seed)
    dims = np.array(A.block_dims, dtype=float)
    block = int(rng.choice(len(dims), p=dims / dims.sum()))
    n = A.block_dims[block]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return vector_state(A, block, v / np.linalg.norm(v))


def random_product_state(T: TensorAlgebra, seed=None) -> State:
    rng = _rng(seed)
    return product_state(T, random_state(T.left, rng), random_state(T.right, rng))


def mix(states, probs) -> State:
    """Convex combination of states on a common algebra."""
    states = list(states)
    A = states[0].owner
    rho = sum(p * s.ambient_density() for p, s in zip(probs, states))
    for s in states:
        _check_state_owner(s, A)
    return State.from_ambient(A, rho)
