"""Decomposability certificates: PPT, product-state mixtures, CHSH witnesses."""

# %%
import numpy as np

from opalg import certify_state, make_algebra, mix, random_state, tensor_product, vector_state

T = tensor_product(make_algebra([2]), make_algebra([2]))
bell = vector_state(T, 0, np.array([1, 0, 0, 1]) / np.sqrt(2))
noise = random_state(T.product, seed=0)

for p in (1.0, 0.8, 0.3):
    omega = mix([bell, noise], [p, 1 - p])
    c = certify_state(omega, T, seed=0)
    extra = ""
    if c.decomposition is not None:
        extra = f", {len(c.decomposition.terms)} product terms, residual {c.decomposition.residual:.1e}"
    if c.chsh is not None:
        extra = f", CHSH witness {c.chsh.value:.6f}"
    print(f"Bell weight {p}: {c.verdict} (PPT min eig {c.ppt_min_eigenvalue:+.4f}{extra})")

# %% Every state is decomposable once a factor is commutative.
Tc = tensor_product(make_algebra([1, 1]), make_algebra([2]))
c = certify_state(random_state(Tc.product, seed=5), Tc, seed=0)
print("commutative factor:", c.verdict, "with", len(c.decomposition.terms), "terms")
