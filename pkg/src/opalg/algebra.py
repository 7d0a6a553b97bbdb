"""Finite-dimensional C*-algebras presented as multi-matrix algebras.

Two presentations are supported:

* canonical form: the block-diagonal matrices ``M_{n_1} + ... + M_{n_k}``,
  stored block by block;
* subalgebra form: a trace-orthonormal basis of a unital *-subalgebra of
  ``M_n``, with elements stored as full ambient matrices.

Every finite-dimensional C*-algebra is isomorphic to a canonical one, and
:func:`wedderburn_decompose` produces the isomorphism for a subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, InvalidPresentationError

DEFAULT_TOL = 1e-9
# commutant, Wedderburn and the CHSH/decomposition searches refuse larger ambient spaces
MAX_AMBIENT_DIM = 64


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, eq=False)
class MatrixAlgebra:
    """A unital *-algebra of ``ambient_dim x ambient_dim`` complex matrices.

    ``block_dims`` is set for canonical algebras and ``None`` for the
    subalgebra form, whose block structure is found by
    :func:`wedderburn_decompose`. ``basis`` holds a trace-orthonormal basis
    of shape ``(dim, ambient_dim, ambient_dim)`` in the subalgebra form.
    """

    block_dims: tuple[int, ...] | None
    ambient_dim: int
    basis: np.ndarray | None = None
    label: str = ""

    @property
    def is_canonical(self) -> bool:
        return self.block_dims is not None

    @property
    def dim(self) -> int:
        """Linear (complex) dimension."""
        if self.is_canonical:
            return sum(n * n for n in self.block_dims)
        return self.basis.shape[0]

    @property
    def offsets(self) -> tuple[int, ...]:
        if not self.is_canonical:
            raise DomainError("offsets are only defined for canonical algebras")
        return tuple(np.concatenate([[0], np.cumsum(self.block_dims)[:-1]]).astype(int))

    def block_slice(self, b: int) -> slice:
        o = self.offsets[b]
        return slice(o, o + self.block_dims[b])

    def basis_matrices(self) -> np.ndarray:
        """Trace-orthonormal basis as ambient matrices, shape ``(dim, n, n)``.

        For canonical algebras these are the matrix units ``E_kl`` of each
        block, ordered by (block, k, l).
        """
        if not self.is_canonical:
            return self.basis
        out = np.zeros((self.dim, self.ambient_dim, self.ambient_dim), dtype=complex)
        idx = 0
        for off, n in zip(self.offsets, self.block_dims):
            for k in range(n):
                for l in range(n):
                    out[idx, off + k, off + l] = 1.0
                    idx += 1
        return out

    def element(self, blocks) -> "AlgebraElement":
        if self.is_canonical:
            blocks = tuple(_frozen(np.atleast_2d(b)) for b in blocks)
        else:
            if isinstance(blocks, np.ndarray) and blocks.ndim == 2:
                blocks = (blocks,)
            blocks = tuple(_frozen(b) for b in blocks)
        return AlgebraElement(self, blocks)

    def identity(self) -> "AlgebraElement":
        if self.is_canonical:
            return self.element([np.eye(n) for n in self.block_dims])
        return self.element(np.eye(self.ambient_dim))

    def zero(self) -> "AlgebraElement":
        if self.is_canonical:
            return self.element([np.zeros((n, n)) for n in self.block_dims])
        return self.element(np.zeros((self.ambient_dim, self.ambient_dim)))

    def from_dense(self, mat, tol: float | None = None) -> "AlgebraElement":
        """Wrap an ambient matrix as an element.

        With ``tol`` set, membership is checked: the conditional-expectation
        residual must not exceed ``tol`` times ``max(1, ||mat||_F)``.
        """
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (self.ambient_dim, self.ambient_dim):
            raise DomainError(f"expected shape {(self.ambient_dim,) * 2}, got {mat.shape}")
        if tol is not None:
            resid = np.linalg.norm(mat - conditional_expectation(mat, self).dense())
            if resid > tol * max(1.0, np.linalg.norm(mat)):
                raise DomainError(f"matrix is not in the algebra (residual {resid:.3e})")
        if self.is_canonical:
            return self.element([mat[self.block_slice(b), self.block_slice(b)]
                                 for b in range(len(self.block_dims))])
        return self.element(mat)

    def coefficients(self, x: "AlgebraElement") -> np.ndarray:
        """Coordinates of ``x`` in :meth:`basis_matrices` (trace pairing)."""
        _check_owner(self, x)
        if self.is_canonical:
            return np.concatenate([b.reshape(-1) for b in x.blocks])
        return np.einsum("kij,ij->k", self.basis.conj(), x.blocks[0])

    def random_element(self, seed=None, hermitian: bool = False) -> "AlgebraElement":
        rng = _rng(seed)
        if self.is_canonical:
            blocks = []
            for n in self.block_dims:
                g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                blocks.append((g + g.conj().T) / 2 if hermitian else g)
            return self.element(blocks)
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        g = np.einsum("k,kij->ij", c, self.basis)
        return self.element((g + g.conj().T) / 2 if hermitian else g)

    def __repr__(self):
        if self.is_canonical:
            return f"MatrixAlgebra(blocks={list(self.block_dims)}, label={self.label!r})"
        return f"MatrixAlgebra(ambient={self.ambient_dim}, dim={self.dim}, label={self.label!r})"


def same_algebra(a: MatrixAlgebra, b: MatrixAlgebra, tol: float = DEFAULT_TOL) -> bool:
    if a is b:
        return True
    if a.is_canonical != b.is_canonical or a.ambient_dim != b.ambient_dim:
        return False
    if a.is_canonical:
        return a.block_dims == b.block_dims
    if a.dim != b.dim:
        return False
    # equal spans iff projecting one orthonormal basis onto the other is lossless
    qa = a.basis.reshape(a.dim, -1)
    qb = b.basis.reshape(b.dim, -1)
    return np.linalg.norm(qa - (qa @ qb.conj().T) @ qb) <= tol * max(1, a.dim)


def _check_owner(owner: MatrixAlgebra, x: "AlgebraElement"):
    if not same_algebra(owner, x.owner):
        raise DomainError(f"element of {x.owner!r} used in {owner!r}")


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element of a :class:`MatrixAlgebra`, stored block by block."""

    owner: MatrixAlgebra
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        A = self.owner
        if A.is_canonical:
            shapes = tuple(b.shape for b in self.blocks)
            expected = tuple((n, n) for n in A.block_dims)
            if shapes != expected:
                raise DomainError(f"block shapes {shapes} do not match {expected}")
        elif len(self.blocks) != 1 or self.blocks[0].shape != (A.ambient_dim,) * 2:
            raise DomainError("subalgebra elements are single ambient matrices")

    def dense(self) -> np.ndarray:
        """Ambient matrix (block diagonal for canonical algebras)."""
        if not self.owner.is_canonical:
            return np.array(self.blocks[0])
        n = self.owner.ambient_dim
        out = np.zeros((n, n), dtype=complex)
        for b, blk in enumerate(self.blocks):
            sl = self.owner.block_slice(b)
            out[sl, sl] = blk
        return out

    def _zip(self, other, op):
        _check_owner(self.owner, other)
        return AlgebraElement(self.owner, tuple(_frozen(op(a, b)) for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other):
        return self._zip(other, np.add)

    def __sub__(self, other):
        return self._zip(other, np.subtract)

    def __matmul__(self, other):
        return self._zip(other, np.matmul)

    def __mul__(self, c):
        if isinstance(c, AlgebraElement):
            return self @ c
        return AlgebraElement(self.owner, tuple(_frozen(c * a) for a in self.blocks))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / c)

    def __neg__(self):
        return self * -1.0

    @property
    def H(self) -> "AlgebraElement":
        """Adjoint."""
        return AlgebraElement(self.owner, tuple(_frozen(a.conj().T) for a in self.blocks))

    def is_self_adjoint(self, tol: float = 1e-10) -> bool:
        return all(np.linalg.norm(a - a.conj().T, 2) <= tol for a in self.blocks)

    def __repr__(self):
        return f"AlgebraElement(owner={self.owner!r}, blocks={[b.shape for b in self.blocks]})"


def make_algebra(block_dims: Sequence[int], label: str = "") -> MatrixAlgebra:
    """Canonical algebra ``M_{n_1} + ... + M_{n_k}``.

    >>> make_algebra([1, 2]).dim
    5
    """
    dims = tuple(int(n) for n in block_dims)
    if not dims or any(n < 1 for n in dims):
        raise InvalidPresentationError(f"block dimensions must be a nonempty list of positive ints, got {list(block_dims)}")
    if not label:
        label = "+".join("C" if n == 1 else f"M{n}" for n in dims)
    return MatrixAlgebra(dims, sum(dims), None, label)


def _orthonormal_rows(vectors: np.ndarray, tol: float) -> np.ndarray:
    if vectors.shape[0] == 0:
        return vectors
    k, N = vectors.shape
    if k < N:
        # thin QR of the transpose, then an SVD of the small triangular factor
        q, r = np.linalg.qr(vectors.T)
        u, s, _ = np.linalg.svd(r)
        rank = int(np.sum(s > tol))
        return np.ascontiguousarray((q @ u[:, :rank]).T)
    u, s, vh = np.linalg.svd(vectors, full_matrices=False)
    rank = int(np.sum(s > tol))
    return vh[:rank]


def _extend_basis(Q: np.ndarray, cands: np.ndarray, tol: float) -> np.ndarray:
    """Rows orthonormal to ``Q`` spanning what ``cands`` adds to ``span(Q)``."""
    norms = np.linalg.norm(cands, axis=1)
    cands = cands[norms > tol]
    if cands.shape[0] == 0:
        return cands
    cands = cands / np.linalg.norm(cands, axis=1, keepdims=True)
    Qh = Q.conj().T
    for _ in range(2):
        cands = cands - (cands @ Qh) @ Q
        cands = cands[np.linalg.norm(cands, axis=1) > tol]
    if cands.shape[0] > cands.shape[1]:
        # same row space and singular values, on a square factor
        cands = np.linalg.qr(cands, mode="r")
    return _orthonormal_rows(cands, tol)


def subalgebra(ambient_dim: int, matrices, label: str = "") -> MatrixAlgebra:
    """Subalgebra-form algebra spanned by ``matrices`` (orthonormalized, not closed).

    Use :func:`generated_star_algebra` to close a generating set.
    """
    mats = np.asarray(matrices, dtype=complex).reshape(-1, ambient_dim, ambient_dim)
    Q = _orthonormal_rows(mats.reshape(mats.shape[0], -1), DEFAULT_TOL)
    return MatrixAlgebra(None, ambient_dim, _frozen(Q.reshape(-1, ambient_dim, ambient_dim)), label)


def generated_star_algebra(ambient_dim: int, generators, tol: float = DEFAULT_TOL,
                           label: str = "") -> MatrixAlgebra:
    """Smallest unital *-algebra containing ``generators``.

    At finite dimension this is also the double commutant of the generators.
    Starting from the span of the identity, the generators and their
    adjoints, each pass multiplies the newest basis directions on both sides
    by a few random elements of the current span and adjoins adjoints. When
    a pass adds nothing, the product of two random elements of the span
    certifies closure (a nonzero bilinear defect is missed with probability
    zero); otherwise its new directions restart the passes.
    """
    n = int(ambient_dim)
    gens = [np.asarray(g, dtype=complex) for g in generators]
    for g in gens:
        if g.shape != (n, n):
            raise InvalidPresentationError(f"generator of shape {g.shape} in ambient {n}")
    rng = np.random.default_rng(0)  # fixed so the returned basis is reproducible
    Q = (np.eye(n, dtype=complex) / np.sqrt(n)).reshape(1, -1)
    cands = [g.reshape(-1) for g in gens] + [g.conj().T.reshape(-1) for g in gens]
    frontier = _extend_basis(Q, np.array(cands), tol) if cands else Q[:0]
    Q = np.vstack([Q, frontier])

    def random_elements(k):
        c = rng.standard_normal((k, Q.shape[0])) + 1j * rng.standard_normal((k, Q.shape[0]))
        return (c @ Q).reshape(k, n, n)

    while True:
        while frontier.shape[0]:
            F = frontier.reshape(-1, n, n)
            R = random_elements(2)
            cands = np.concatenate([(F[:, None] @ R[None]).reshape(-1, n * n),
                                    (R[None] @ F[:, None]).reshape(-1, n * n),
                                    F.conj().transpose(0, 2, 1).reshape(-1, n * n)])
            frontier = _extend_basis(Q, cands, tol)
            Q = np.vstack([Q, frontier])
        x, y = random_elements(2)
        frontier = _extend_basis(Q, np.array([(x @ y).reshape(-1), x.conj().T.reshape(-1)]), tol)
        if not frontier.shape[0]:
            break
        Q = np.vstack([Q, frontier])
    return MatrixAlgebra(None, n, _frozen(Q.reshape(-1, n, n)), label)


def op_norm(x: AlgebraElement) -> float:
    """C*-norm: the largest singular value over all blocks."""
    return max(float(np.linalg.norm(b, 2)) if b.size else 0.0 for b in x.blocks)


def is_commutative(A: MatrixAlgebra, tol: float = DEFAULT_TOL) -> bool:
    if A.is_canonical:
        return all(n == 1 for n in A.block_dims)
    B = A.basis
    prod = np.einsum("aij,bjk->abik", B, B)
    comm = prod - prod.transpose(1, 0, 2, 3)
    return float(np.max(np.linalg.norm(comm, axis=(2, 3)))) <= tol


def _commutant_of(mats: np.ndarray, n: int, tol: float) -> np.ndarray:
    # null space of X -> [X, M] for all M, via the PSD sum of L_M^* L_M
    eye = np.eye(n)
    H = np.zeros((n * n, n * n), dtype=complex)
    for M in mats:
        L = np.kron(eye, M.T) - np.kron(M, eye)
        H += L.conj().T @ L
    w, V = np.linalg.eigh(H)
    scale = max(1.0, float(w[-1])) if w.size else 1.0
    null = V[:, w <= tol * scale]
    return null.T.reshape(-1, n, n)


def commutant(A: MatrixAlgebra, tol: float = DEFAULT_TOL, label: str = "") -> MatrixAlgebra:
    """All ambient matrices commuting with ``A``, as a subalgebra-form algebra."""
    n = A.ambient_dim
    if n > MAX_AMBIENT_DIM:
        raise InvalidPresentationError(f"ambient dimension {n} exceeds cap {MAX_AMBIENT_DIM}")
    null = _commutant_of(A.basis_matrices(), n, tol)
    return subalgebra(n, null, label or f"({A.label})'")


def conditional_expectation(x, A: MatrixAlgebra) -> AlgebraElement:
    """Trace-orthogonal projection of an ambient matrix onto ``A``."""
    if isinstance(x, AlgebraElement):
        x = x.dense()
    x = np.asarray(x, dtype=complex)
    if x.shape != (A.ambient_dim, A.ambient_dim):
        raise DomainError(f"expected ambient shape {(A.ambient_dim,) * 2}, got {x.shape}")
    if A.is_canonical:
        return A.element([x[A.block_slice(b), A.block_slice(b)] for b in range(len(A.block_dims))])
    c = np.einsum("kij,ij->k", A.basis.conj(), x)
    return A.element(np.einsum("k,kij->ij", c, A.basis))


@dataclass(frozen=True, eq=False)
class WedderburnData:
    """Block structure of a subalgebra: ``U^* a U = (+)_i a_i (x) 1_{m_i}``.

    Blocks are ordered by descending ``block_dims``, ties by first occurrence
    in the ambient index order.
    """

    algebra: MatrixAlgebra
    central_projections: tuple[AlgebraElement, ...]
    block_dims: tuple[int, ...]
    multiplicities: tuple[int, ...]
    change_of_basis: np.ndarray
    canonical: MatrixAlgebra = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "canonical", make_algebra(self.block_dims, label=self.algebra.label))

    def _slices(self):
        start = 0
        for n, m in zip(self.block_dims, self.multiplicities):
            yield slice(start, start + n * m), m
            start += n * m

    def to_canonical(self, x: AlgebraElement) -> AlgebraElement:
        """Image of ``x`` under the isomorphism onto the canonical form."""
        _check_owner(self.algebra, x)
        U = self.change_of_basis
        M = U.conj().T @ x.dense() @ U
        return self.canonical.element([M[sl, sl][::m, ::m] for sl, m in self._slices()])

    def from_canonical(self, y: AlgebraElement) -> AlgebraElement:
        _check_owner(self.canonical, y)
        U = self.change_of_basis
        n = self.algebra.ambient_dim
        D = np.zeros((n, n), dtype=complex)
        for (sl, m), blk in zip(self._slices(), y.blocks):
            D[sl, sl] = np.kron(blk, np.eye(m))
        return self.algebra.element(U @ D @ U.conj().T)


def _clusters(evals: np.ndarray, tol: float) -> list[np.ndarray]:
    order = np.argsort(evals)
    groups, current = [], [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if evals[b] - evals[a] > tol:
            groups.append(np.array(current))
            current = [b]
        else:
            current.append(b)
    groups.append(np.array(current))
    return groups


def _check_closed(A: MatrixAlgebra, tol: float, rng: np.random.Generator):
    B = A.basis
    n = A.ambient_dim
    Q = B.reshape(B.shape[0], -1)

    def resid(m):
        v = m.reshape(-1)
        return np.linalg.norm(v - Q.T @ (Q.conj() @ v)) / max(1.0, np.linalg.norm(v))

    if resid(np.eye(n)) > tol:
        raise InvalidPresentationError("basis does not contain the identity")
    # random elements detect any non-closed basis pair almost surely
    for _ in range(3):
        x = A.random_element(rng).blocks[0]
        y = A.random_element(rng).blocks[0]
        if resid(x @ y) > 10 * tol * max(1, A.dim):
            raise InvalidPresentationError("basis is not closed under multiplication")
        if resid(x.conj().T) > 10 * tol * max(1, A.dim):
            raise InvalidPresentationError("basis is not closed under the adjoint")


def _center(A: MatrixAlgebra, tol: float) -> np.ndarray:
    B = A.basis
    d, n = B.shape[0], A.ambient_dim
    prod = np.einsum("kij,ljm->klim", B, B)
    C = prod - prod.transpose(1, 0, 2, 3)  # C[k, l] = [B_k, B_l]
    M = C.transpose(1, 2, 3, 0).reshape(d * n * n, d)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    s = np.concatenate([s, np.zeros(d - s.size)])
    coeffs = vh[s <= tol * max(1.0, s[0] if s.size else 1.0)].conj()
    return np.einsum("ck,kij->cij", coeffs, B)


def wedderburn_decompose(A: MatrixAlgebra, tol: float = DEFAULT_TOL, seed=None,
                         retries: int = 5) -> WedderburnData:
    """Artin-Wedderburn structure of a finite-dimensional *-algebra.

    Minimal central projections come from the spectral decomposition of a
    random self-adjoint central element; inside each central summand a
    random self-adjoint element supplies minimal projections, and
    compressions of a random element supply the off-diagonal matrix units.
    Eigenvalue collisions trigger a retry with fresh randomness.
    """
    if A.is_canonical:
        order = sorted(range(len(A.block_dims)), key=lambda b: (-A.block_dims[b], b))
        U = np.zeros((A.ambient_dim, A.ambient_dim), dtype=complex)
        col = 0
        for b in order:
            for r in range(A.block_slice(b).start, A.block_slice(b).stop):
                U[r, col] = 1.0
                col += 1
        projs = []
        for b in order:
            blocks = [np.eye(n) if c == b else np.zeros((n, n)) for c, n in enumerate(A.block_dims)]
            projs.append(A.element(blocks))
        dims = tuple(A.block_dims[b] for b in order)
        return WedderburnData(A, tuple(projs), dims, (1,) * len(dims), _frozen(U))

    if A.ambient_dim > MAX_AMBIENT_DIM:
        raise InvalidPresentationError(f"ambient dimension exceeds cap {MAX_AMBIENT_DIM}")
    rng = _rng(seed)
    _check_closed(A, tol, rng)
    center = _center(A, tol)
    for _ in range(retries):
        result = _try_decompose(A, center, tol, rng)
        if result is not None:
            return result
    raise InvalidPresentationError(f"Wedderburn decomposition failed after {retries} attempts "
                                   "(degenerate random elements or non-semisimple input)")


def _spectral_groups(h: np.ndarray, count: int):
    w, V = np.linalg.eigh(h)
    spread = max(float(w[-1] - w[0]), 1e-300)
    groups = _clusters(w, 1e-7 * max(1.0, np.abs(w).max()))
    if len(groups) != count:
        return None
    means = sorted(float(np.mean(w[g])) for g in groups)
    if count > 1 and min(np.diff(means)) < 1e-4 * spread:
        return None
    groups.sort(key=lambda g: float(np.mean(w[g])))
    return [V[:, g] for g in groups]


def _try_decompose(A: MatrixAlgebra, center: np.ndarray, tol: float, rng) -> WedderburnData | None:
    n = A.ambient_dim
    c = center.shape[0]
    z = np.einsum("c,cij->ij", rng.standard_normal(c), center)
    z = (z + z.conj().T) / 2
    cols = _spectral_groups(z, c)
    if cols is None:
        return None
    summands = []
    for W in cols:
        P = W @ W.conj().T
        rank = W.shape[1]
        S = _orthonormal_rows(np.einsum("kij,jl->kil", A.basis, P).reshape(A.dim, -1), tol)
        d = S.shape[0]
        nb = int(round(np.sqrt(d)))
        if nb * nb != d or rank % nb:
            raise InvalidPresentationError(f"central summand of dimension {d} and rank {rank} is not a full matrix factor")
        m = rank // nb
        S = S.reshape(d, n, n)
        g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        h = np.einsum("k,kij->ij", g, S)
        h = (h + h.conj().T) / 2
        sub = _spectral_groups(W.conj().T @ h @ W, nb)
        if sub is None or any(s.shape[1] != m for s in sub):
            return None
        F = [W @ s for s in sub]  # orthonormal bases of the minimal projections
        x = np.einsum("k,kij->ij", rng.standard_normal(d) + 1j * rng.standard_normal(d), S)
        columns = [F[0]]
        for k in range(1, nb):
            y = F[0].conj().T @ x @ F[k]  # E_1 x E_k in local coordinates, a scaled unitary
            scale = np.sqrt(np.trace(y @ y.conj().T).real / m)
            if scale < 1e-8:
                return None
            e1k = F[0] @ (y / scale) @ F[k].conj().T
            columns.append(e1k.conj().T @ F[0])
        Ublock = np.hstack(columns)  # column index k*m + j, i.e. a (x) 1_m
        first = int(np.argmax(np.abs(np.diag(P)) > 1e-6))
        summands.append((nb, m, first, P, Ublock))
    summands.sort(key=lambda s: (-s[0], s[2]))
    U = np.hstack([s[4] for s in summands])
    if np.linalg.norm(U.conj().T @ U - np.eye(n)) > 1e3 * tol * n:
        return None
    projs = tuple(A.element(s[3]) for s in summands)
    wd = WedderburnData(A, projs, tuple(s[0] for s in summands), tuple(s[1] for s in summands), _frozen(U))
    # the change of basis must carry every basis element to block form
    for Bk in A.basis[: min(A.dim, 8)]:
        x = A.element(Bk)
        if np.linalg.norm(wd.from_canonical(wd.to_canonical(x)).dense() - Bk) > 1e3 * tol * max(1, n):
            return None
    return wd


def canonical_form(A: MatrixAlgebra, tol: float = DEFAULT_TOL, seed=None) -> tuple[MatrixAlgebra, WedderburnData]:
    wd = wedderburn_decompose(A, tol=tol, seed=seed)
    return wd.canonical, wd


def find_noncommuting_projections(A: MatrixAlgebra, tol: float = DEFAULT_TOL, seed=None):
    """Two projections in ``A`` with nonzero commutator, or ``None`` if ``A`` is commutative.

    Inside the largest matrix block these are ``|0><0|`` and ``|+><+|``,
    whose commutator has norm 1/2.
    """
    if is_commutative(A, tol):
        return None
    wd = wedderburn_decompose(A, tol=tol, seed=seed)
    n, m = wd.block_dims[0], wd.multiplicities[0]
    Ub = wd.change_of_basis[:, : n * m]
    p = np.zeros((n, n))
    p[0, 0] = 1.0
    plus = np.zeros(n)
    plus[:2] = 1 / np.sqrt(2)
    q = np.outer(plus, plus)
    P = Ub @ np.kron(p, np.eye(m)) @ Ub.conj().T
    Q = Ub @ np.kron(q, np.eye(m)) @ Ub.conj().T
    return A.from_dense(P), A.from_dense(Q)
