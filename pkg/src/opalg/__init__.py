"""Finite-dimensional operator algebras, tensor-product states and Bell-type separation tests."""

from .algebra import (AlgebraElement, MatrixAlgebra, WedderburnData, canonical_form, commutant,
                      conditional_expectation, find_noncommuting_projections, generated_star_algebra,
                      is_commutative, make_algebra, op_norm, subalgebra, wedderburn_decompose)
from .chsh import (TSIRELSON, ChshObservables, ChshReport, chsh_operator, chsh_value, random_observables,
                   seesaw_global, seesaw_observables)
from .embeddings import (BellWitness, MatrixUnits, SeparationVerdict, bell_witness, bohm_bell_state, embed_m2,
                         is_separated, tsirelson_observables, two_projection_units)
from .errors import (ContractViolation, DomainError, InvalidPresentationError, NoEmbeddingError, OpalgError,
                     ProjectionPairError, ReportVersionError)
from .gns import (Representation, check_tensor_factorization, direct_sum, gns_construct, identity_representation,
                  irreducible_representations, is_irreducible, separated_in_all_irreducibles,
                  separated_in_representation, tensor_factorization_report)
from .io import report_schema_version
from .separability import Certificate, Decomposition, certify_state, decompose_product_states, ppt_check
from .states import (State, TensorAlgebra, evaluate, is_product_state, is_pure, mix, product_state,
                     random_pure_state, random_product_state, random_state, reduced_state, tensor_product,
                     vector_state)

__version__ = "0.1.0"
