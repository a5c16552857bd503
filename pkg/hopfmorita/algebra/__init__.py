# flake8: noqa

from .scalar import Scalar, ZERO, ONE, I
from .models import (
    AlgebraElement,
    BasedStarAlgebra,
    FiniteFunctions,
    FiniteFunctionsSpec,
    Laurent,
    LaurentSpec,
    MatrixAlgebra,
    MatrixSpec,
    ModelSpec,
    ProductAlgebra,
    ProductSpec,
    TruncatedPoly,
    TruncatedPolySpec,
    build_model,
)
from .structure import (
    PhasedElement,
    anti_hermitian_central_basis,
    center_basis,
    exp_central,
    hermitian_central_basis,
    is_anti_hermitian,
    is_central,
    is_hermitian,
    is_invariant,
    is_positive_element,
    is_unitary,
    nilpotency_index,
)
from .lie import (
    Derivation,
    GeneratorDerivation,
    InnerDerivation,
    LieAction,
    LieAlgebra,
    TableDerivation,
    check_lie_action,
    rotation_action,
)
