"""Deciding whether a polynomial in x, y, z is tensorial.

A polynomial P acts on the Courant element through an endomorphism J, with
x, y, z inserting J into the three slots.  P is *tensorial* when the result is
function-linear for every admissible J.  Three equivalent tests are provided:

* ``coefficient_criterion``: alternating sums of coefficients along the
  three families of anti-diagonals vanish;
* ``variety_criterion``: P vanishes on three planes, tested by restricting P
  to each plane;
* ``divisibility_criterion``: P is a multiple of the generator, the product
  of the three linear forms cutting out those planes.

``Variant`` selects skew endomorphisms (planes y+z, z+x, x+y; alternating
signs) or symmetric ones (planes y-z, z-x, x-y; all signs +1).
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .exact import RatMatrix, format_rational, kernel_basis
from .poly import (
    Poly3,
    UniPoly,
    divide,
    exact_divide,
    monomials_of_degree,
    substitute,
)

__all__ = [
    "CriterionReport",
    "Variant",
    "Violation",
    "check_all",
    "coefficient_criterion",
    "divisibility_criterion",
    "graded_dimension",
    "minimality_polynomial",
    "polynomially_tensorial",
    "reduce_mod_minimal",
    "shifted_generator",
    "variety_criterion",
]


class Variant(enum.Enum):
    SKEW = "skew"
    SYMMETRIC = "symmetric"

    @property
    def sign(self) -> int:
        return -1 if self is Variant.SKEW else 1


@dataclass(frozen=True)
class Violation:
    family: int
    i: int
    t: int
    residual: Fraction

    def to_json(self) -> dict:
        return {"family": self.family, "i": self.i, "t": self.t,
                "residual": format_rational(self.residual)}


@dataclass(frozen=True)
class CriterionReport:
    tensorial: bool
    violated_equations: tuple[Violation, ...] = ()
    quotient: Optional[Poly3] = None

    def to_json(self) -> dict:
        return {
            "tensorial": self.tensorial,
            "violations": [v.to_json() for v in self.violated_equations],
            "quotient": None if self.quotient is None else self.quotient.to_str(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


_X, _Y, _Z = Poly3.var(0), Poly3.var(1), Poly3.var(2)


def _as_variant(variant) -> Variant:
    return variant if isinstance(variant, Variant) else Variant(variant)


def shifted_generator(variant=Variant.SKEW) -> Poly3:
    """(x+y)(y+z)(z+x) for skew J, (x-y)(y-z)(x-z) for symmetric J."""
    if _as_variant(variant) is Variant.SKEW:
        return (_X + _Y) * (_Y + _Z) * (_Z + _X)
    return (_X - _Y) * (_Y - _Z) * (_X - _Z)


# Family f at (i, t) sums sign^j * a[e] over j, where e places i, j, t-j as:
#   family 1: (i, j, t-j)    family 2: (j, t-j, i)    family 3: (t-j, i, j)
def _family_index(family: int, e) -> tuple[int, int, int]:
    """(i, t, j) such that exponent ``e`` appears in ``family`` at (i, t) with index j."""
    a, b, c = e
    if family == 1:
        return a, b + c, b
    if family == 2:
        return c, a + b, a
    return b, a + c, c


def _residuals(p: Poly3, sign: int) -> dict[tuple[int, int, int], Fraction]:
    sums: dict[tuple[int, int, int], Fraction] = {}
    for e, c in p.terms.items():
        for family in (1, 2, 3):
            i, t, j = _family_index(family, e)
            key = (family, i, t)
            sums[key] = sums.get(key, 0) + (sign**j) * c
    return sums


def coefficient_criterion(p: Poly3, variant=Variant.SKEW) -> CriterionReport:
    """Check every coefficient equation touched by a term of ``p``.

    Residuals use the sign convention sign**j where j indexes the middle
    position of each family, and are reported sorted by (family, i, t).
    """
    sign = _as_variant(variant).sign
    violations = tuple(
        Violation(f, i, t, r)
        for (f, i, t), r in sorted(_residuals(p, sign).items())
        if r
    )
    return CriterionReport(not violations, violations)


def restrictions(p: Poly3, variant=Variant.SKEW) -> tuple[Poly3, Poly3, Poly3]:
    """Restrict ``p`` to the three planes, as polynomials in (u, v) = (x, y).

    Skew:      A = P(v, -u, u), B = P(-u, v, u), C = P(-u, u, v).
    Symmetric: A = P(v, u, u),  B = P(u, v, u),  C = P(u, u, v).
    """
    u, v = _X, _Y
    w = -u if _as_variant(variant) is Variant.SKEW else u
    a = substitute(p, (v, w, u))
    b = substitute(p, (w, v, u))
    c = substitute(p, (w, u, v))
    return a, b, c


def variety_criterion(p: Poly3, variant=Variant.SKEW) -> tuple[Poly3, Poly3, Poly3, bool]:
    a, b, c = restrictions(p, variant)
    return a, b, c, not (a or b or c)


def divisibility_criterion(p: Poly3, variant=Variant.SKEW) -> CriterionReport:
    q = exact_divide(p, shifted_generator(variant))
    return CriterionReport(q is not None, quotient=q)


@dataclass(frozen=True)
class Verdicts:
    """All three criteria applied to one polynomial."""

    coefficient: CriterionReport
    variety: tuple[Poly3, Poly3, Poly3, bool]
    divisibility: CriterionReport

    @property
    def agree(self) -> bool:
        return self.coefficient.tensorial == self.variety[3] == self.divisibility.tensorial

    @property
    def tensorial(self) -> bool:
        if not self.agree:
            raise CriteriaDisagree(self)
        return self.coefficient.tensorial

    def report(self) -> CriterionReport:
        """Coefficient report merged with the quotient from divisibility."""
        return CriterionReport(self.tensorial, self.coefficient.violated_equations,
                               self.divisibility.quotient)


class CriteriaDisagree(RuntimeError):
    def __init__(self, verdicts: Verdicts):
        super().__init__(
            "criteria disagree: coefficient=%s variety=%s divisibility=%s"
            % (verdicts.coefficient.tensorial, verdicts.variety[3], verdicts.divisibility.tensorial)
        )
        self.verdicts = verdicts


def check_all(p: Poly3, variant=Variant.SKEW) -> Verdicts:
    return Verdicts(coefficient_criterion(p, variant), variety_criterion(p, variant),
                    divisibility_criterion(p, variant))


def _equation_matrix(degree: int, variant: Variant) -> tuple[RatMatrix, list]:
    monos = monomials_of_degree(degree)
    col = {e: n for n, e in enumerate(monos)}
    rows = {}
    for e in monos:
        for family in (1, 2, 3):
            i, t, j = _family_index(family, e)
            rows.setdefault((family, i, t), [0] * len(monos))[col[e]] = variant.sign**j
    return RatMatrix.from_rows([rows[k] for k in sorted(rows)]), monos


def graded_dimension(degree: int, variant=Variant.SKEW) -> tuple[int, list[Poly3]]:
    """Dimension and canonical basis of the degree-``degree`` tensorial polynomials.

    The basis is the reduced row echelon form of the kernel, with monomials
    ordered by descending graded lex, so each element has leading coefficient 1.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    variant = _as_variant(variant)
    matrix, monos = _equation_matrix(degree, variant)
    kernel = kernel_basis(matrix)
    if not kernel:
        return 0, []
    echelon, pivots = RatMatrix.from_rows([v.column(0) for v in kernel]).rref()
    basis = [
        Poly3({e: c for e, c in zip(monos, echelon.row(r))})
        for r in range(len(pivots))
    ]
    return len(basis), basis


def expected_graded_dimension(degree: int) -> int:
    """Dimension of the degree part of a principal ideal with a cubic generator."""
    return comb(degree - 1, 2) if degree >= 3 else 0


def minimality_polynomial(P: UniPoly) -> Poly3:
    """Q(x, y, z) = P(x + y + z), fully expanded."""
    return P(_X + _Y + _Z)


def _power_residues(m: UniPoly, top: int) -> list[UniPoly]:
    out = [UniPoly([1])]
    t = UniPoly([0, 1])
    for _ in range(top):
        out.append((out[-1] * t).divmod(m)[1])
    return out


def reduce_mod_minimal(p: Poly3, m: UniPoly) -> Poly3:
    """Reduce every variable's powers modulo m, independently in x, y, z."""
    if m.is_zero() or m.degree < 1:
        raise ValueError("reduction needs a polynomial of degree at least 1")
    top = max((max(e) for e in p.terms), default=0)
    res = _power_residues(m, top)
    lifted = [[r.to_poly3(var) for r in res] for var in range(3)]
    out = Poly3()
    for (i, j, k), c in p.terms.items():
        out = out + lifted[0][i] * lifted[1][j] * lifted[2][k] * c
    return out


@dataclass(frozen=True)
class PolyTensorialResult:
    tensorial: bool
    mode: str
    witness: Optional[Poly3] = None
    # which check produced the witness: "A", "B", "C", "coefficients" or "restrictions"
    failed: Optional[str] = None

    def __bool__(self) -> bool:
        return self.tensorial


def polynomially_tensorial(p: Poly3, m: UniPoly, mode: str = "modular") -> PolyTensorialResult:
    """Is (p, J) tensorial for every skew J annihilated by ``m``?

    ``modular`` reduces the three plane restrictions A, B, C modulo m(u), m(v).
    ``literal`` requires the coefficient equations verbatim plus pairwise
    congruence of p(t,0,0), p(0,t,0), p(0,0,t) modulo m; its witness is the
    first nonzero reduced difference.  Witnesses of the modular mode are in
    (u, v) and should be printed with ``poly.UV``.
    """
    if m.is_zero():
        raise ValueError("annihilating polynomial must be nonzero")
    if mode == "modular":
        for name, r in zip("ABC", restrictions(p, Variant.SKEW)):
            red = reduce_mod_minimal(r, m)
            if red:
                return PolyTensorialResult(False, mode, red, name)
        return PolyTensorialResult(True, mode)
    if mode == "literal":
        rep = coefficient_criterion(p, Variant.SKEW)
        if not rep.tensorial:
            return PolyTensorialResult(False, mode, None, "coefficients")
        zero = Poly3()
        t = _X
        ones = [
            substitute(p, (t, zero, zero)),
            substitute(p, (zero, t, zero)),
            substitute(p, (zero, zero, t)),
        ]
        for a, b in ((0, 1), (1, 2), (0, 2)):
            diff = reduce_mod_minimal(ones[a] - ones[b], m)
            if diff:
                return PolyTensorialResult(False, mode, diff, "restrictions")
        return PolyTensorialResult(True, mode)
    raise ValueError(f"unknown mode {mode!r}")


def remainder(p: Poly3, variant=Variant.SKEW) -> Poly3:
    """Remainder of ``p`` after reduction by the generator."""
    return divide(p, shifted_generator(variant))[1]
