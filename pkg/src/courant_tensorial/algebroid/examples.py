"""Ready-made algebroids and endomorphisms."""
from __future__ import annotations

from ..exact import RatMatrix
from ..poly import Poly3
from .core import AlgebroidData, Endomorphism, Section, build_algebroid, classify_endomorphism, from_lie_algebra
from .scalar import ScalarExpr

__all__ = [
    "abelian_complex_structure",
    "abelian_tangent",
    "heisenberg_eps",
    "heisenberg_example",
    "heisenberg_expected_defect",
]

# [X_1, X_2] = X_3 on the Heisenberg group, 0-based.
heisenberg_eps = {(0, 1): {2: 1}, (1, 0): {2: -1}}


def abelian_tangent(n: int = 2) -> AlgebroidData:
    return from_lie_algebra({}, n)


def abelian_complex_structure() -> RatMatrix:
    """X_1 -> X_2, X_2 -> -X_1, a_1 -> a_2, a_2 -> -a_1 on rank-4 abelian data."""
    images = {0: {1: 1}, 1: {0: -1}, 2: {3: 1}, 3: {2: -1}}
    return RatMatrix(4, 4, [images[j].get(i, 0) for i in range(4) for j in range(4)])


def _heisenberg_J() -> RatMatrix:
    # columns are images of X1, X2, X3, a1, a2, a3
    images = {
        0: {1: 1},           # J X1 = X2
        1: {2: 1, 5: 1},     # J X2 = X3 + a3
        2: {4: -1},          # J X3 = -a2
        3: {},               # J a1 = 0
        4: {3: -1},          # J a2 = -a1
        5: {4: -1},          # J a3 = -a2
    }
    return RatMatrix(6, 6, [images[j].get(i, 0) for i in range(6) for j in range(6)])


def heisenberg_example():
    """(data, J, x, y) for the Heisenberg counterexample.

    x = X3 + a3 and y = X3 - a3.  The torsion defect T(f x, y) - f T(x, y)
    is 2 D3(f) a1, so the Courant-Nijenhuis polynomial is not tensorial.
    """
    data = from_lie_algebra(heisenberg_eps, 3)
    alg = build_algebroid(data)
    J = classify_endomorphism(alg, _heisenberg_J())
    x = Section.from_values([0, 0, 1, 0, 0, 1])
    y = Section.from_values([0, 0, 1, 0, 0, -1])
    return data, J, x, y


def heisenberg_expected_defect() -> Section:
    """2 D3(f) a1."""
    return Section.frame(6, 3, ScalarExpr.symbol("f", (2,)) * 2)
