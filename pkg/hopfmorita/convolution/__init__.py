# flake8: noqa

from .maps import ConvolutionMap, convolve, inverse_candidate, unit_map
from .membership import (
    UMembershipReport,
    centrality_of_values_check,
    convolution_inverse,
    group_membership_oracle,
    require_member,
    u_membership,
)
from .hat import exact_sequence_check, hat
