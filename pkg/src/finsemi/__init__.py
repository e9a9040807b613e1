"""Exact finite algebra for semirings, semimodules and their cancellative tensor product."""

import types as _types

from .congruence import (
    cancellation_witness,
    cancellative_reflection,
    congruence_closure,
    is_cancellative,
    quotient,
    zero_congruence,
)
from .core import (
    FiniteCommutativeMonoid,
    FiniteSemimodule,
    FiniteSemiring,
    LawReport,
    StructureMap,
    boolean_semiring,
    builtin_structure,
    chain_lattice,
    compose,
    enumerate_maps,
    hom_space,
    identity_map,
    is_isomorphic,
    product_semiring,
    regular_module,
    restrict_scalars,
    truncated_nat,
    validate_map,
    validate_structure,
    zero_module,
    zmod,
)
from .errors import FinsemiError
from .jstructures import (
    JActData,
    JComonadData,
    JMonadData,
    check_jact,
    check_jcomonad,
    check_jmonad,
    godement,
    induced_monad_from_adjunction,
    jcomonad_to_semicomonoid,
    jmonad_to_semimonoid,
    semicomonoid_to_jcomonad,
    semimonoid_to_jmonad,
)
from .semistructures import (
    check_semicounital_semicoring,
    check_semiunital_semiring,
    convolution_monoid,
    enumerate_structures,
    sweedler_semicoring,
)
from .tensor import associator, oracle_tensor, takahashi_tensor, tensor_product, theta_iso
from .variety import coherence_check, dual_check, semiunit_components, tensor_hom_adjunction

__all__ = [name for name, value in globals().items()
           if not name.startswith("_") and not isinstance(value, _types.ModuleType)]
