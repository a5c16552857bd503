"""
Brute-force H^1 dimension from dense sympy matrices: independent of the sparse
kernel/image bookkeeping in ce.py, only the coefficient basis is shared.

  dim Z^1 = dim C^1 - rank(d1)
  dim B^1 = dim U + dim C^1 - dim(U + C^1),  U = d0(C^0)
"""
from typing import Optional

import sympy

from hopfmorita.algebra.models import BasedStarAlgebra

from .ce import CoefficientSpace, lie_action_of


def _rational(x) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def dense_h1_dimension(action, alg: Optional[BasedStarAlgebra] = None, window: Optional[int] = None) -> int:
    lie_action = lie_action_of(action)
    alg = lie_action.algebra if alg is None else alg
    space = CoefficientSpace(alg, window)
    lie = lie_action.lie
    d, m = lie.dim, space.dim
    keyed = alg.index_key

    def column(values):
        # values: {slot: element}
        return {
            (slot, keyed(i), part): getattr(c, part)
            for slot, v in values.items()
            for i, c in v.items()
            for part in ("re", "im")
            if getattr(c, part)
        }

    def matrix(columns):
        keys = sorted({k for col in columns for k in col})
        if not keys or not columns:
            return sympy.zeros(max(len(keys), 1), max(len(columns), 1))
        return sympy.Matrix(
            len(keys), len(columns), lambda r, c: _rational(columns[c].get(keys[r], 0))
        )

    # d1 on the C^1 basis: alpha = b_k placed on generator g
    d1_columns = []
    for g in range(d):
        for b in space.basis:
            values = {}
            for i in range(d):
                for j in range(i + 1, d):
                    value = alg.zero()
                    if j == g:
                        value = value + lie_action.apply(i, b)
                    if i == g:
                        value = value - lie_action.apply(j, b)
                    coeff = lie.bracket(i, j)[g]
                    if not coeff.is_zero():
                        value = value - b * coeff
                    values[(i, j)] = value
            d1_columns.append(column(values))
    z1 = d * m - (matrix(d1_columns).rank() if d1_columns else 0)

    c1_columns = [column({g: b}) for g in range(d) for b in space.basis]
    d0_columns = [column({g: lie_action.apply(g, b) for g in range(d)}) for b in space.basis]
    rank_u = matrix(d0_columns).rank() if d0_columns else 0
    rank_sum = matrix(d0_columns + c1_columns).rank() if c1_columns else 0
    b1 = rank_u + d * m - rank_sum
    return z1 - b1
