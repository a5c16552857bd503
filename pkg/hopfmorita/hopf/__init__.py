# flake8: noqa

from .base import HopfAlgebra, HopfElement, SweedlerExpansion, hopf_axiom_report
from .uea import EnvelopingAlgebra, antipode, coproduct, counit, hopf_star, uea_mul
from .group import GroupHopf
from .action import (
    GroupAutomorphismAction,
    HopfAction,
    LieHopfAction,
    extend_action,
    star_action_report,
)
