from .symtensor import (JetSignature, SymTensor, delta_spencer, jet_dim,
                        multi_indices, spencer_sequence_audit,
                        symbol_layer_dim)
from .metasymplectic import (CovectorSlot, IntegralPlaneModel, ModelVector,
                             lambda_basis, lambda_dim, max_isotropic,
                             meta_orthogonal, meta_orthogonal_frame,
                             metasymplectic_eval, model_dim,
                             singularity_condition, span_matrix,
                             vectors_from_matrix)
from .pde_audit import lagrangian_pde_dims, legendrian_pde_dims
