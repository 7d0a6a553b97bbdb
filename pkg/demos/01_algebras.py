"""Multi-matrix algebras: presentations, closure, commutants, Wedderburn blocks."""

# %%
import numpy as np

from opalg import (canonical_form, commutant, find_noncommuting_projections, generated_star_algebra,
                   is_commutative, make_algebra, subalgebra)

X = np.array([[0, 1], [1, 0]])
Z = np.diag([1, -1])

# %% Canonical presentations are lists of block sizes.
for dims in ([1, 1], [2], [1, 2]):
    A = make_algebra(dims)
    print(f"{A.label:8s} dim={A.dim:2d} ambient={A.ambient_dim} commutative={is_commutative(A)}")

# %% Closing generators under products and adjoints.
print("span{I, X}   :", generated_star_algebra(2, [X]).dim)
print("span{X, Z}'' :", generated_star_algebra(2, [X, Z]).dim)

# %% The commutant of the full matrix algebra is the scalars, and vice versa.
M2 = generated_star_algebra(2, [X, Z])
print("commutant of M2:", commutant(M2).dim, " commutant of scalars in M3:", commutant(generated_star_algebra(3, [])).dim)

# %% Hide C + M2 behind a random unitary and recover its block structure.
rng = np.random.default_rng(0)
q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
hidden = subalgebra(3, [q @ b @ q.conj().T for b in make_algebra([1, 2]).basis_matrices()])
canon, wd = canonical_form(hidden, seed=0)
print("recovered blocks:", canon.block_dims, "multiplicities:", wd.multiplicities)

# %% Noncommutative algebras contain two noncommuting projections.
P, Q = find_noncommuting_projections(make_algebra([1, 3]))
comm = P.dense() @ Q.dense() - Q.dense() @ P.dense()
print("||[P, Q]|| =", np.linalg.norm(comm, 2))
