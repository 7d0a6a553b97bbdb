"""States on tensor products: reduction, purity and the product-state test."""

# %%
import numpy as np

from opalg import is_product_state, is_pure, make_algebra, random_pure_state, reduced_state, tensor_product, vector_state

T = tensor_product(make_algebra([2]), make_algebra([2]))
print("product blocks:", T.product.block_dims)

# %% A superposition of two product vectors reduces to a mixture on each side.
psi1, phi1 = np.array([1, 0]), np.array([0, 1])
psi2, phi2 = np.array([0.6, 0.8]), np.array([-0.8, 0.6])
c1, c2 = 0.6, 0.8
omega = vector_state(T, 0, c1 * np.kron(psi1, psi2) + c2 * np.kron(phi1, phi2))
print("left reduced density:\n", reduced_state(omega, T, "left").densities[0].real.round(12))
print("pure:", is_pure(omega), " product:", is_product_state(omega, T))

# %% With a commutative factor every pure state is a product state.
Tc = tensor_product(make_algebra([1, 1, 1]), make_algebra([3]))
rng = np.random.default_rng(1)
print("pure states that are products:",
      sum(is_product_state(random_pure_state(Tc.product, seed=rng), Tc) for _ in range(200)), "/ 200")
