"""Trilinear forms built from the bracket and the polynomial action on them.

``tau_C(x, y, z) = <[[x, y]], z>`` is the Courant element and
``theta(x, y, z) = pi(x)<y, z>``.  A polynomial P = sum a_ijk x^i y^j z^k acts
through an endomorphism J by

    (P . form)(x, y, z) = sum a_ijk form(J^i x, J^j y, J^k z).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exact import RatMatrix, RationalLike, as_rational
from ..poly import Poly3, UniPoly, evaluate
from ..tensorial import minimality_polynomial, restrictions
from .core import Algebroid, Endomorphism, Section, from_lie_algebra, build_algebroid
from .scalar import ScalarExpr, accumulate

__all__ = [
    "AlternatingReport",
    "EigenNecessity",
    "act",
    "alternating_check",
    "eigen_necessity",
    "minimality_report",
    "minimality_tensor",
    "nijenhuis_torsion",
    "shifted_torsion",
    "tau_C",
    "tensoriality_defect",
    "theta",
    "torsion_defect",
]


def _matrix(J) -> RatMatrix:
    return J.matrix if isinstance(J, Endomorphism) else J


def tau_C(alg: Algebroid, x: Section, y: Section, z: Section) -> ScalarExpr:
    return alg.inner(alg.bracket(x, y), z)


def theta(alg: Algebroid, x: Section, y: Section, z: Section) -> ScalarExpr:
    return alg.anchor_act(x, alg.inner(y, z))


class _Powers:
    """Lazily computed J^k s for one section."""

    def __init__(self, J: RatMatrix, s: Section):
        self.J = J
        self.cache = [s]

    def __getitem__(self, k: int) -> Section:
        while len(self.cache) <= k:
            self.cache.append(self.cache[-1].apply(self.J))
        return self.cache[k]


def act(alg: Algebroid, P: Poly3, J, form: str, x: Section, y: Section, z: Section) -> ScalarExpr:
    """(P acting through J on ``form``)(x, y, z); ``form`` is "tauC" or "theta"."""
    J = _matrix(J)
    if J.shape != (alg.rank, alg.rank):
        raise ValueError(f"endomorphism must be {alg.rank}x{alg.rank}")
    px, py, pz = _Powers(J, x), _Powers(J, y), _Powers(J, z)
    out: dict = {}
    if form == "tauC":
        # group by (i, j) so each bracket is computed once
        groups: dict[tuple[int, int], list] = {}
        for (i, j, k), a in P.terms.items():
            groups.setdefault((i, j), []).append((k, a))
        for (i, j), ks in sorted(groups.items()):
            zsum = Section.zero(alg.rank)
            for k, a in ks:
                zsum = zsum + pz[k].scale(a)
            if zsum.is_zero():
                continue
            accumulate(out, alg.inner(alg.bracket(px[i], py[j]), zsum))
        return ScalarExpr.from_accumulator(out)
    if form == "theta":
        groups = {}
        for (i, j, k), a in P.terms.items():
            groups.setdefault(i, []).append((j, k, a))
        for i, jks in sorted(groups.items()):
            acc: dict = {}
            for j, k, a in jks:
                accumulate(acc, alg.inner(py[j], pz[k]), a)
            pairing = ScalarExpr.from_accumulator(acc)
            if pairing:
                accumulate(out, alg.anchor_act(px[i], pairing))
        return ScalarExpr.from_accumulator(out)
    raise ValueError(f"unknown form {form!r}; expected 'tauC' or 'theta'")


def nijenhuis_torsion(alg: Algebroid, J, x: Section, y: Section) -> Section:
    """[[Jx, Jy]] + J^2 [[x, y]] - J([[Jx, y]] + [[x, Jy]])."""
    J = _matrix(J)
    Jx, Jy = x.apply(J), y.apply(J)
    mixed = alg.bracket(Jx, y) + alg.bracket(x, Jy)
    return alg.bracket(Jx, Jy) + alg.bracket(x, y).apply(J).apply(J) - mixed.apply(J)


def shifted_torsion(alg: Algebroid, J, x: Section, y: Section) -> Section:
    """T_J(Jx, y) + T_J(x, Jy)."""
    J = _matrix(J)
    return nijenhuis_torsion(alg, J, x.apply(J), y) + nijenhuis_torsion(alg, J, x, y.apply(J))


def _fresh(name: str, *sections: Section) -> ScalarExpr:
    used = set().union(*(s.symbols() for s in sections))
    if name in used:
        raise ValueError(f"function symbol {name!r} already occurs in the sections")
    return ScalarExpr.symbol(name)


def tensoriality_defect(alg: Algebroid, P: Poly3, J, x: Section, y: Section, z: Section,
                        slot: int, f: str = "f") -> ScalarExpr:
    """act(P)(.., f * slot argument, ..) - f * act(P)(x, y, z)."""
    if slot not in (1, 2, 3):
        raise ValueError("slot must be 1, 2 or 3")
    fn = _fresh(f, x, y, z)
    args = [x, y, z]
    base = act(alg, P, J, "tauC", *args)
    args[slot - 1] = args[slot - 1].scale(fn)
    return act(alg, P, J, "tauC", *args) - fn * base


def torsion_defect(alg: Algebroid, J, x: Section, y: Section, f: str = "f", shifted: bool = False) -> Section:
    """T(f x, y) - f T(x, y) for the Courant-Nijenhuis torsion (or its shifted form)."""
    fn = _fresh(f, x, y)
    torsion = shifted_torsion if shifted else nijenhuis_torsion
    return torsion(alg, J, x.scale(fn), y) - torsion(alg, J, x, y).scale(fn)


def minimality_tensor(alg: Algebroid, J, P: UniPoly, x: Section, y: Section, z: Section) -> ScalarExpr:
    """Q acting on the Courant element, Q(x, y, z) = P(x + y + z)."""
    return act(alg, minimality_polynomial(P), J, "tauC", x, y, z)


def minimality_report(alg: Algebroid, J, P: UniPoly, x: Section, y: Section, z: Section) -> dict:
    """The minimality tensor next to its (-1)^i-weighted multinomial variant.

    The weighted sum equals P(-(x + y + z)) acting; ``signs_agree`` records
    whether the two conventions give the same value on these sections.
    """
    value = minimality_tensor(alg, J, P, x, y, z)
    flipped = UniPoly(c * (-1) ** i for i, c in enumerate(P.coeffs))
    weighted = minimality_tensor(alg, J, flipped, x, y, z)
    return {"value": value, "alternating_sign_value": weighted, "signs_agree": value == weighted}


@dataclass(frozen=True)
class AlternatingReport:
    ok: bool
    # name -> residual ScalarExpr, for every identity that failed
    residuals: dict

    def __bool__(self) -> bool:
        return self.ok


def alternating_check(alg: Algebroid, P: Poly3, J, x: Section, y: Section, z: Section) -> AlternatingReport:
    """Check act(P)(x,y,z) = -act(P)(x,z,y) = -act(P)(y,x,z) and the two theta identities."""
    base = act(alg, P, J, "tauC", x, y, z)
    checks = {
        "swap_yz": base + act(alg, P, J, "tauC", x, z, y),
        "swap_xy": base + act(alg, P, J, "tauC", y, x, z),
        "theta_xyz": act(alg, P, J, "theta", x, y, z),
        "theta_zxy": act(alg, P, J, "theta", z, x, y),
    }
    bad = {k: v for k, v in checks.items() if v}
    return AlternatingReport(not bad, bad)


@dataclass(frozen=True)
class EigenNecessity:
    symbolic: tuple[Fraction, Fraction, Fraction]
    evaluated: tuple[Fraction, Fraction, Fraction]

    @property
    def agree(self) -> bool:
        return self.symbolic == self.evaluated


def eigen_endomorphism(n: int, eigenvalues: Sequence[RationalLike]) -> RatMatrix:
    """Diagonal J on the generalized tangent frame: X_i -> l_i X_i, a_i -> -l_i a_i."""
    lam = [as_rational(v) for v in eigenvalues] + [Fraction(0)] * (n - len(eigenvalues))
    diag = lam + [-v for v in lam]
    r = 2 * n
    return RatMatrix(r, r, [diag[i] if i == j else 0 for i in range(r) for j in range(r)])


def _multiplier(expr: ScalarExpr, f: str, a: int) -> Fraction:
    """Coefficient of D_a(f) in ``expr``, which must be a multiple of that atom."""
    atom = ((f, (a,)),)
    c = expr.coefficient(atom)
    rest = expr - ScalarExpr({atom: c})
    if rest:
        raise AssertionError(f"unexpected terms in defect: {rest}")
    return c


def eigen_necessity(P: Poly3, lam: RationalLike, mu: RationalLike, alg: Algebroid | None = None) -> EigenNecessity:
    """Recover A(lam, mu), B(mu, lam), C(lam, mu) from tensoriality defects.

    On abelian generalized tangent data with J X_1 = lam X_1, J X_2 = mu X_2
    (and J a_i = -l_i a_i) the defects are single multiples of D_1(f) or D_2(f):

        slot 2 at (X_2, a_1, X_1):  A(lam, mu) D_2 f / 2
        slot 1 at (a_2, X_1, X_2): -B(mu, lam) D_1 f / 2
        slot 1 at (a_1, X_1, X_2):  C(lam, mu) D_2 f / 2
    """
    lam, mu = as_rational(lam), as_rational(mu)
    if alg is None:
        alg = build_algebroid(from_lie_algebra({}, 2))
    n = alg.rank // 2
    if alg.rank < 4 or alg.structure or alg.names[:2] != ("X1", "X2"):
        raise ValueError("eigen_necessity needs abelian generalized tangent data of rank >= 4")
    J = eigen_endomorphism(n, [lam, mu])
    X1, X2, a1, a2 = alg.frame(0), alg.frame(1), alg.frame(n), alg.frame(n + 1)
    dA = tensoriality_defect(alg, P, J, X2, a1, X1, slot=2)
    dB = tensoriality_defect(alg, P, J, a2, X1, X2, slot=1)
    dC = tensoriality_defect(alg, P, J, a1, X1, X2, slot=1)
    symbolic = (2 * _multiplier(dA, "f", 1), -2 * _multiplier(dB, "f", 0), 2 * _multiplier(dC, "f", 1))
    A, B, C = restrictions(P)
    evaluated = (evaluate(A, (lam, mu, 0)), evaluate(B, (mu, lam, 0)), evaluate(C, (lam, mu, 0)))
    return EigenNecessity(symbolic, evaluated)
