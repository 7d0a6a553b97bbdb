"""GNS representations, irreducibility and factorization of double commutants."""

# %%
import numpy as np

from opalg import (State, gns_construct, irreducible_representations, is_irreducible, make_algebra, random_state,
                   separated_in_representation, tensor_factorization_report, tensor_product, vector_state)

M2 = make_algebra([2])
pure = gns_construct(vector_state(M2, 0, [0.6, 0.8]))
trace = gns_construct(State(M2, np.array([1.0]), (np.eye(2) / 2,)))
print("pure state : carrier", pure.carrier_dim, "irreducible", is_irreducible(pure))
print("trace state: carrier", trace.carrier_dim, "irreducible", is_irreducible(trace))

# %% The image algebra of a tensor product factors through the two induced representations.
T = tensor_product(make_algebra([1, 2]), make_algebra([2]))
rep = tensor_factorization_report(gns_construct(random_state(T.product, seed=3)), T)
print("factorization holds:", rep.holds, "dims", rep.lhs_dim, rep.rhs_dim)

# %% Separation in every irreducible representation.
for pos, pi in enumerate(irreducible_representations(T.product)):
    print(f"block pair {T.pairs[pos]} dim {pi.carrier_dim}: separated {separated_in_representation(pi, T)}")
