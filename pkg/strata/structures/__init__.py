from .algebra import FDAlgebra, IdempotentIdealQuotient, logger
from .modules import (
    Module, ModuleMap, DirectSum, ProjectiveSum, QuotientMap, HomSpace,
    submodule, generated_submodule, quotient, direct_sum, map_spaces,
    radical, socle, top_lifts, radical_layers, socle_layers, signature,
    structural_filtration, projective_cover_map, is_projective, presentation,
    hom_space, trace, dualize, dualize_map, canonical_module, inflate,
    random_module
)
from .decomposition import (
    maximize_rank, grid_search, find_epimorphism, find_monomorphism,
    is_isomorphic, is_local, split, summand_projections, decompose,
    is_indecomposable
)
