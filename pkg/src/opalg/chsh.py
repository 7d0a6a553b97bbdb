"""The CHSH functional and its maximization by alternating ascent.

For self-adjoint contractions ``A, A'`` on the left and ``B, B'`` on the
right the quantity

    |w(A (x) (B - B'))| + |w(A' (x) (B + B'))|

is at most 2 whenever ``w`` is a product state, or whenever either factor is
commutative; it reaches ``2 sqrt 2`` when both factors contain a copy of
``M_2``.

Contractions are restricted to self-adjoint ones. With arbitrary complex
contractions a product state already reaches ``2 sqrt 2`` (take
``w(B) = 1`` and ``w(B') = i``), so the bound of 2 only holds in the
self-adjoint setting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import MAX_AMBIENT_DIM, AlgebraElement, _check_owner, op_norm, same_algebra
from .errors import ContractViolation, DomainError
from .states import State, TensorAlgebra, evaluate, random_pure_state, vector_state

SQRT2 = float(np.sqrt(2.0))
TSIRELSON = 2 * SQRT2


@dataclass(frozen=True, eq=False)
class ChshObservables:
    """``a, a_prime`` in the left factor, ``b, b_prime`` in the right factor."""

    a: AlgebraElement
    a_prime: AlgebraElement
    b: AlgebraElement
    b_prime: AlgebraElement

    def check(self, T: TensorAlgebra | None = None, tol: float = 1e-10):
        """Raise :class:`ContractViolation` unless all four are self-adjoint contractions."""
        for name in ("a", "a_prime", "b", "b_prime"):
            x = getattr(self, name)
            if not x.is_self_adjoint(tol):
                raise ContractViolation(f"observable {name} is not self-adjoint")
            if op_norm(x) > 1 + tol:
                raise ContractViolation(f"observable {name} has norm {op_norm(x)} > 1")
        if T is not None:
            try:
                for x in (self.a, self.a_prime):
                    _check_owner(T.left, x)
                for x in (self.b, self.b_prime):
                    _check_owner(T.right, x)
            except DomainError as exc:
                raise ContractViolation(str(exc)) from exc


@dataclass(eq=False)
class ChshReport:
    observables: ChshObservables
    signs: tuple[int, int]
    value: float
    iterations: int
    restarts_used: int
    converged: bool
    history: list[float] = field(default_factory=list)
    state: State | None = None


def chsh_terms(omega: State, T: TensorAlgebra, obs: ChshObservables) -> tuple[float, float]:
    """The two real expectations ``w(A (x) (B - B'))`` and ``w(A' (x) (B + B'))``."""
    e1 = evaluate(omega, T.kron(obs.a, obs.b - obs.b_prime))
    e2 = evaluate(omega, T.kron(obs.a_prime, obs.b + obs.b_prime))
    return e1.real, e2.real


def chsh_value(omega: State, T: TensorAlgebra, obs: ChshObservables) -> float:
    obs.check(T)
    if not same_algebra(omega.owner, T.product):
        raise DomainError("state does not live on the tensor product")
    e1, e2 = chsh_terms(omega, T, obs)
    return abs(e1) + abs(e2)


def chsh_operator(T: TensorAlgebra, obs: ChshObservables, signs=(1, 1)) -> AlgebraElement:
    """``s1 A (x) (B - B') + s2 A' (x) (B + B')``, a self-adjoint element of the product."""
    s1, s2 = signs
    return s1 * T.kron(obs.a, obs.b - obs.b_prime) + s2 * T.kron(obs.a_prime, obs.b + obs.b_prime)


# --- alternating ascent -------------------------------------------------------
#
# Observables are handled as lists of numpy blocks; the state as a list of
# weighted block densities reshaped to (n, m, n, m).


def _sgn(h: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(h)
    s = np.sign(w)
    s[np.abs(w) <= 1e-12 * max(1.0, np.abs(w).max())] = 0.0
    return (V * s) @ V.conj().T


def _update(prev: list, grads: list) -> list:
    out = []
    for old, g in zip(prev, grads):
        h = (g + g.conj().T) / 2
        if np.abs(h).max() <= 1e-14:
            out.append(old)
        else:
            out.append(_sgn(h))
    return out


class _Ascent:
    def __init__(self, T: TensorAlgebra):
        self.T = T
        self.R = [None] * len(T.pairs)

    def set_state(self, omega: State):
        self.R = []
        for pos, rho in enumerate(omega.densities):
            if rho is None:
                self.R.append(None)
            else:
                n, m = self.T.factor_dims(pos)
                self.R.append(omega.weights[pos] * rho.reshape(n, m, n, m))

    def left_grad(self, C):
        # g_i with tr(A_i g_i) = sum_j w tr(rho (A_i (x) C_j))
        g = [np.zeros((n, n), dtype=complex) for n in self.T.left.block_dims]
        for pos, (i, j) in enumerate(self.T.pairs):
            if self.R[pos] is not None:
                g[i] += np.einsum("kplq,qp->kl", self.R[pos], C[j])
        return g

    def right_grad(self, D):
        g = [np.zeros((m, m), dtype=complex) for m in self.T.right.block_dims]
        for pos, (i, j) in enumerate(self.T.pairs):
            if self.R[pos] is not None:
                g[j] += np.einsum("kplq,lk->pq", self.R[pos], D[i])
        return g

    def expect(self, X, Y) -> float:
        total = 0.0
        for pos, (i, j) in enumerate(self.T.pairs):
            if self.R[pos] is not None:
                total += np.einsum("kplq,lk,qp->", self.R[pos], X[i], Y[j]).real
        return total

    def terms(self, obs):
        a, ap, b, bp = obs
        diff = [x - y for x, y in zip(b, bp)]
        summ = [x + y for x, y in zip(b, bp)]
        return self.expect(a, diff), self.expect(ap, summ)

    def sweep(self, obs):
        a, ap, b, bp = obs
        e1, e2 = self.terms(obs)
        s1 = 1 if e1 >= 0 else -1
        s2 = 1 if e2 >= 0 else -1
        diff = [s1 * (x - y) for x, y in zip(b, bp)]
        summ = [s2 * (x + y) for x, y in zip(b, bp)]
        a = _update(a, self.left_grad(diff))
        ap = _update(ap, self.left_grad(summ))
        b = _update(b, self.right_grad([s1 * x + s2 * y for x, y in zip(a, ap)]))
        bp = _update(bp, self.right_grad([-s1 * x + s2 * y for x, y in zip(a, ap)]))
        return [a, ap, b, bp]


def _signs(e1, e2):
    return (1 if e1 >= 0 else -1, 1 if e2 >= 0 else -1)


def _random_contraction(dims, rng) -> list:
    blocks = []
    for n in dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append((g + g.conj().T) / 2)
    norm = max(np.linalg.norm(b, 2) for b in blocks)
    return [b / norm for b in blocks]


def random_observables(T: TensorAlgebra, seed=None) -> ChshObservables:
    """Gaussian self-adjoint observables rescaled to unit norm."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    return _to_observables(T, _random_init(T, rng))


def _random_init(T, rng):
    return [_random_contraction(T.left.block_dims, rng), _random_contraction(T.left.block_dims, rng),
            _random_contraction(T.right.block_dims, rng), _random_contraction(T.right.block_dims, rng)]


def _herm(blocks):
    return [(b + b.conj().T) / 2 for b in blocks]


def _to_observables(T, obs) -> ChshObservables:
    a, ap, b, bp = (_herm(x) for x in obs)
    return ChshObservables(T.left.element(a), T.left.element(ap), T.right.element(b), T.right.element(bp))


def _check_size(T: TensorAlgebra):
    if T.product.ambient_dim > MAX_AMBIENT_DIM:
        raise DomainError(f"product ambient dimension {T.product.ambient_dim} exceeds cap {MAX_AMBIENT_DIM}")


def _restart_seeds(seed, restarts):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(restarts)]


def seesaw_observables(omega: State, T: TensorAlgebra, seed=None, restarts: int = 20,
                       max_iter: int = 500, tol: float = 1e-10) -> ChshReport:
    """Maximize the CHSH value over observables for a fixed state.

    Each sweep re-chooses the two signs greedily and then replaces each
    observable by the sign of its (self-adjoint part of the) gradient, the
    exact maximizer with the other three fixed, so the value never
    decreases. The best of ``restarts`` random starts is returned; ties go
    to the earliest restart.
    """
    if not same_algebra(omega.owner, T.product):
        raise DomainError("state does not live on the tensor product")
    asc = _Ascent(T)
    asc.set_state(omega)
    _check_size(T)
    best = None
    for rng in _restart_seeds(seed, restarts):
        obs = _random_init(T, rng)
        history = [sum(map(abs, asc.terms(obs)))]
        converged = False
        it = 0
        for it in range(1, max_iter + 1):
            obs = asc.sweep(obs)
            history.append(sum(map(abs, asc.terms(obs))))
            if history[-1] - history[-2] < tol:
                converged = True
                break
        if best is None or history[-1] > best[0]:
            best = (history[-1], obs, history, it, converged)
    value, obs, history, it, converged = best
    observables = _to_observables(T, obs)
    e1, e2 = chsh_terms(omega, T, observables)
    return ChshReport(observables, _signs(e1, e2), abs(e1) + abs(e2), it, restarts, converged, history)


def _top_vector_state(T: TensorAlgebra, W: list) -> tuple[State, float]:
    best = None
    for pos, blk in enumerate(W):
        w, V = np.linalg.eigh((blk + blk.conj().T) / 2)
        if best is None or w[-1] > best[0]:
            best = (w[-1], pos, V[:, -1])
    lam, pos, v = best
    return vector_state(T, pos, v / np.linalg.norm(v)), float(lam)


def seesaw_global(T: TensorAlgebra, seed=None, restarts: int = 20, max_iter: int = 500,
                  tol: float = 1e-10) -> ChshReport:
    """Maximize the CHSH value jointly over states and observables.

    Alternates one observable sweep with a state update: for fixed
    observables and signs, the best state is the vector state of a top
    eigenvector of the CHSH operator.
    """
    _check_size(T)
    best = None
    for rng in _restart_seeds(seed, restarts):
        obs = _random_init(T, rng)
        omega = random_pure_state(T.product, rng)
        asc = _Ascent(T)
        asc.set_state(omega)
        history = [sum(map(abs, asc.terms(obs)))]
        converged = False
        it = 0
        for it in range(1, max_iter + 1):
            obs = asc.sweep(obs)
            s1, s2 = _signs(*asc.terms(obs))
            a, ap, b, bp = obs
            W = [s1 * np.kron(a[i], b[j] - bp[j]) + s2 * np.kron(ap[i], b[j] + bp[j]) for i, j in T.pairs]
            omega, _ = _top_vector_state(T, W)
            asc.set_state(omega)
            history.append(sum(map(abs, asc.terms(obs))))
            if history[-1] - history[-2] < tol:
                converged = True
                break
        if best is None or history[-1] > best[0]:
            best = (history[-1], obs, omega, history, it, converged)
    value, obs, omega, history, it, converged = best
    observables = _to_observables(T, obs)
    e1, e2 = chsh_terms(omega, T, observables)
    return ChshReport(observables, _signs(e1, e2), abs(e1) + abs(e2), it, restarts, converged, history, omega)
