# flake8: noqa

from .cocycles import LiftTwist, extend, hat_exp_relation_check, restrict
from .quotient import ClassReduction, U0Presentation, U0Summary, WindingSet, u0_quotient
from .equivalence import (
    lift_action,
    lift_action_check,
    lift_equivalence_check,
    twisted_structure,
)
