"""Weight modules, simple modules L(chi), tensor products and the Casimir."""

from .modules import (DecompositionReport, HighestWeightModule, WeightModule, component_factorization_check,
                      decompose, direct_sum, dominant_character, is_dominant, is_integrable, lowering_span,
                      simple_module, simple_module_from_m, singular_vectors, tensor, verma_truncated)

__all__ = [
    "DecompositionReport", "HighestWeightModule", "WeightModule", "component_factorization_check",
    "decompose", "direct_sum", "dominant_character", "is_dominant", "is_integrable", "lowering_span",
    "simple_module", "simple_module_from_m", "singular_vectors", "tensor", "verma_truncated",
]

from .casimir import (GFunction, casimir_apply, omega_commutation_check, g_eval, g_function, omega_matrix, q_alpha,
                      summand_eigenvalues)

__all__ += ["GFunction", "casimir_apply", "omega_commutation_check", "g_eval", "g_function", "omega_matrix", "q_alpha",
            "summand_eigenvalues"]
