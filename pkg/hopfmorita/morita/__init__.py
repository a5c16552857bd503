# flake8: noqa

from .bimodules import (
    AlgebraMorphism,
    Bimodule,
    CanonicalBimodule,
    ConjugateBimodule,
    GradedBimodule,
    ModuleElement,
    ModuleMap,
    StandardModule,
    TensorBimodule,
    TwistedBimodule,
    associator,
    block_dimensions,
    ell,
    find_intertwiner,
    tensor_over,
    unit_isomorphism,
)
from .products import (
    InnerProductPair,
    complete_positivity_check,
    gram_map,
    is_isometric,
    isometry_check,
    morita_axiom_check,
    rieffel_tensor,
    standard_products,
)
from .picard import PicardGroup, candidate_matrices, norm_root, picard_enumerate, picard_oracle, positive_pairings
from .covariance import (
    Certification,
    CovariantStructure,
    certify,
    covariance_check,
    forget,
)
