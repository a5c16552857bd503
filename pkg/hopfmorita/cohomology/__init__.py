# flake8: noqa

from .ce import (
    CECochain,
    CoefficientSpace,
    CohomologyResult,
    CohomologySummary,
    ce_d0,
    ce_d1,
    cochain_from_mapping,
    h1,
    lie_action_of,
)
from .oracle import dense_h1_dimension
