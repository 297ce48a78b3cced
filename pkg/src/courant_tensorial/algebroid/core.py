"""Constant-structure proto-Courant algebroids over a formal function ring.

An algebroid of rank r has a global frame e_1..e_r with

* constant brackets   [[e_i, e_j]] = sum_k c[i, j, k] e_k,
* a constant pairing   <e_i, e_j>  = g[i, j] (symmetric, invertible),
* an anchor            pi(e_i)     = sum_a A[i, a] D_a,

where D_1..D_n are formal derivations with constant commutators.  Brackets of
sections with function coefficients follow from the two Leibniz rules

    [[x, f y]] = f [[x, y]] + pi(x)(f) y
    [[f x, y]] = f [[x, y]] - pi(y)(f) x + 2 <x, y> Df

with Df the section characterized by <Df, z> = pi(z)(f) / 2.

All indices are 0-based in the Python API and 1-based in text and JSON.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from ..exact import RatMatrix, RationalLike, as_rational
from .scalar import DepthBoundExceeded, DerivationRing, ScalarExpr, accumulate, accumulate_product

__all__ = [
    "AlgebroidData",
    "Algebroid",
    "AlgebroidError",
    "AxiomReport",
    "Endomorphism",
    "Section",
    "build_algebroid",
    "classify_endomorphism",
    "annihilator_check",
    "from_lie_algebra",
    "jacobi_residuals",
]

PROTO_COURANT = "proto_courant"
ALMOST_LEIBNIZ = "almost_leibniz"


class AlgebroidError(ValueError):
    """Invalid algebroid data."""


# ---------------------------------------------------------------------------
# sections


class Section:
    """Frame coefficients of a section, one ScalarExpr per frame element."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(
            c if isinstance(c, ScalarExpr) else ScalarExpr.constant(c) for c in coeffs
        ))

    def __setattr__(self, name, value):
        raise AttributeError("Section is immutable")

    @classmethod
    def zero(cls, rank: int) -> "Section":
        return cls([ScalarExpr()] * rank)

    @classmethod
    def frame(cls, rank: int, i: int, coeff=1) -> "Section":
        cs = [ScalarExpr()] * rank
        cs[i] = coeff if isinstance(coeff, ScalarExpr) else ScalarExpr.constant(coeff)
        return cls(cs)

    @classmethod
    def from_values(cls, values: Sequence[RationalLike]) -> "Section":
        return cls(ScalarExpr.constant(as_rational(v)) for v in values)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> ScalarExpr:
        return self.coeffs[i]

    def _check(self, other: "Section"):
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError(f"rank mismatch {len(self.coeffs)} vs {len(other.coeffs)}")

    def __add__(self, other: "Section") -> "Section":
        self._check(other)
        return Section(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "Section") -> "Section":
        self._check(other)
        return Section(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "Section":
        return Section(-a for a in self.coeffs)

    def scale(self, f) -> "Section":
        """Multiply every coefficient by a function or rational ``f``."""
        return Section(f * a for a in self.coeffs)

    def __mul__(self, f) -> "Section":
        return self.scale(f)

    __rmul__ = __mul__

    def apply(self, matrix: RatMatrix) -> "Section":
        """Image under the bundle map whose column j is the image of e_j."""
        if matrix.cols != len(self.coeffs):
            raise ValueError(f"cannot apply {matrix.shape} matrix to a rank {len(self.coeffs)} section")
        out = []
        for k in range(matrix.rows):
            acc: dict = {}
            for m, c in zip(matrix.row(k), self.coeffs):
                if m and c:
                    accumulate(acc, c, m)
            out.append(ScalarExpr.from_accumulator(acc))
        return Section(out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def symbols(self) -> set[str]:
        return set().union(*(c.symbols() for c in self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Section) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"e{i + 1}" for i in range(len(self.coeffs))]
        parts = []
        for c, name in zip(self.coeffs, names):
            if not c:
                continue
            if len(c.terms) == 1:
                ((m, q),) = c.terms.items()
                text = str(c)
                sign = "-" if q < 0 else "+"
                body = text[1:] if q < 0 else text
                if body == "1":
                    piece = name
                else:
                    piece = f"{body}*{name}"
            else:
                sign, piece = "+", f"({c})*{name}"
            if parts:
                parts.append(f" {sign} {piece}")
            else:
                parts.append(piece if sign == "+" else f"-{piece}")
        return "".join(parts) or "0"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Section({self.to_str()!r})"


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class AlgebroidData:
    """Structure data of a constant-structure algebroid (0-based indices).

    ``structure`` holds (i, j, k, c) with [[e_i, e_j]] containing c e_k;
    ``commutators`` holds (a, b, c, e) with [D_a, D_b] containing e D_c.
    """

    rank: int
    derivations: int
    metric: RatMatrix
    anchor: RatMatrix
    structure: tuple = ()
    commutators: tuple = ()
    mode: str = PROTO_COURANT
    frame_names: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "structure", tuple(
            (i, j, k, as_rational(c)) for i, j, k, c in self.structure
        ))
        object.__setattr__(self, "commutators", tuple(
            (a, b, c, as_rational(e)) for a, b, c, e in self.commutators
        ))
        if self.frame_names is not None:
            object.__setattr__(self, "frame_names", tuple(self.frame_names))

    def names(self) -> tuple[str, ...]:
        return self.frame_names or tuple(f"e{i + 1}" for i in range(self.rank))

    def with_structure(self, structure, **changes) -> "AlgebroidData":
        fields = dict(rank=self.rank, derivations=self.derivations, metric=self.metric,
                      anchor=self.anchor, structure=tuple(structure),
                      commutators=self.commutators, mode=self.mode,
                      frame_names=self.frame_names)
        fields.update(changes)
        return AlgebroidData(**fields)


def _sparse3(entries, size_ij: int, size_k: int, what: str) -> dict:
    out: dict = {}
    for i, j, k, c in entries:
        for idx, bound in ((i, size_ij), (j, size_ij), (k, size_k)):
            if not 0 <= idx < bound:
                raise AlgebroidError(f"{what} index {idx + 1} out of range 1..{bound}")
        if c:
            slot = out.setdefault((i, j), {})
            slot[k] = slot.get(k, 0) + c
            if not slot[k]:
                del slot[k]
    return {ij: ks for ij, ks in out.items() if ks}


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    # (equality 1 or 2, (i, j, k), scaled?, residual)
    residuals: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


class Algebroid:
    """A validated algebroid handle; build it with :func:`build_algebroid`."""

    def __init__(self, data: AlgebroidData, depth_bound: int = 2, validate: bool = True):
        r, n = data.rank, data.derivations
        if data.metric.shape != (r, r):
            raise AlgebroidError(f"metric must be {r}x{r}, got {data.metric.shape}")
        if data.anchor.shape != (r, n):
            raise AlgebroidError(f"anchor must be {r}x{n}, got {data.anchor.shape}")
        if data.metric != data.metric.T:
            raise AlgebroidError("metric is not symmetric")
        if data.mode not in (PROTO_COURANT, ALMOST_LEIBNIZ):
            raise AlgebroidError(f"unknown mode {data.mode!r}")
        try:
            self.metric_inv = data.metric.inverse()
        except ZeroDivisionError:
            raise AlgebroidError("metric is singular") from None
        self.data = data
        self.rank = r
        self.n = n
        self.metric = data.metric
        self.names = data.names()
        self.structure = _sparse3(data.structure, r, r, "structure")
        eps = _sparse3(data.commutators, n, n, "commutator")
        for (a, b), cs in eps.items():
            if eps.get((b, a), {}) != {c: -e for c, e in cs.items()}:
                raise AlgebroidError(f"commutators are not antisymmetric in ({a + 1}, {b + 1})")
        self.eps = eps
        self.ring = DerivationRing(n, eps, depth_bound)
        self._anchor_rows = [data.anchor.row(i) for i in range(r)]
        self._g_rows = [data.metric.row(i) for i in range(r)]
        self._ginv_rows = [self.metric_inv.row(i) for i in range(r)]
        if validate and data.mode == PROTO_COURANT:
            report = self.check_courant_axiom()
            if not report.ok:
                eq, idx, scaled, res = report.residuals[0]
                raise AlgebroidError(
                    "axiom fails at equality %d for frame triple %s%s: residual %s"
                    % (eq, tuple(i + 1 for i in idx), " (scaled)" if scaled else "", res)
                )

    @property
    def depth_bound(self) -> int:
        return self.ring.depth_bound

    @property
    def mode(self) -> str:
        return self.data.mode

    def frame(self, i: int, coeff=1) -> Section:
        return Section.frame(self.rank, i, coeff)

    def frames(self) -> list[Section]:
        return [self.frame(i) for i in range(self.rank)]

    def section(self, values: Sequence) -> Section:
        s = Section(values)
        if len(s) != self.rank:
            raise ValueError(f"section has {len(s)} coefficients, algebroid rank is {self.rank}")
        return s

    def normalize(self, expr: ScalarExpr) -> ScalarExpr:
        """Rewrite every derivative word in non-decreasing order."""
        out = ScalarExpr()
        for m, c in expr.terms.items():
            term = ScalarExpr.constant(c)
            for name, word in m:
                if len(word) > self.depth_bound:
                    raise DepthBoundExceeded(f"atom of depth {len(word)} exceeds bound {self.depth_bound}")
                term = term * ScalarExpr({((name, w),): q for w, q in self.ring.normal_order(word).items()})
            out = out + term
        return out

    # -- structure maps ---------------------------------------------------
    def derivatives(self, f: ScalarExpr) -> list[ScalarExpr]:
        """[D_1 f, ..., D_n f]."""
        if f.is_constant():
            return [ScalarExpr()] * self.n
        return [self.ring.apply(a, f) for a in range(self.n)]

    def _anchor_frame(self, i: int, df: Sequence[ScalarExpr]) -> ScalarExpr:
        acc: dict = {}
        for w, d in zip(self._anchor_rows[i], df):
            if w and d:
                accumulate(acc, d, w)
        return ScalarExpr.from_accumulator(acc)

    def anchor_frame(self, i: int, f: ScalarExpr) -> ScalarExpr:
        """pi(e_i)(f)."""
        return self._anchor_frame(i, self.derivatives(f))

    def anchor_act(self, s: Section, f: ScalarExpr) -> ScalarExpr:
        """pi(s)(f) = sum_i s_i pi(e_i)(f)."""
        if not isinstance(f, ScalarExpr):
            f = ScalarExpr.constant(f)
        df = self.derivatives(f)
        if not any(df):
            return ScalarExpr()
        acc: dict = {}
        for i, c in enumerate(s.coeffs):
            if c:
                accumulate_product(acc, c, self._anchor_frame(i, df))
        return ScalarExpr.from_accumulator(acc)

    def inner(self, s: Section, t: Section) -> ScalarExpr:
        acc: dict = {}
        for i, a in enumerate(s.coeffs):
            if not a:
                continue
            for gij, b in zip(self._g_rows[i], t.coeffs):
                if gij and b:
                    accumulate_product(acc, a, b, gij)
        return ScalarExpr.from_accumulator(acc)

    def dee(self, f: ScalarExpr) -> Section:
        """The section Df with <Df, e_k> = pi(e_k)(f) / 2."""
        df = self.derivatives(f)
        pis = [self._anchor_frame(k, df) for k in range(self.rank)]
        out = []
        for k in range(self.rank):
            acc: dict = {}
            for w, p in zip(self._ginv_rows[k], pis):
                if w and p:
                    accumulate(acc, p, w / 2)
            out.append(ScalarExpr.from_accumulator(acc))
        return Section(out)

    def bracket(self, s: Section, t: Section) -> Section:
        """Courant-Dorfman-type bracket of two sections."""
        r = self.rank
        if len(s) != r or len(t) != r:
            raise ValueError("section rank does not match the algebroid")
        out: list[dict] = [{} for _ in range(r)]
        # constant part
        for (i, j), ks in self.structure.items():
            si, tj = s.coeffs[i], t.coeffs[j]
            if si and tj:
                prod = si * tj
                for k, c in ks.items():
                    accumulate(out[k], prod, c)
        # pi(e_i)(t_k) terms: sum_i s_i pi_i(t_k)
        for k, tk in enumerate(t.coeffs):
            if tk and not tk.is_constant():
                accumulate(out[k], self.anchor_act(s, tk))
        # -pi(e_j)(s_k) terms: -sum_j t_j pi_j(s_k), and 2 <e_i, t> D(s_i)
        for i, si in enumerate(s.coeffs):
            if not si or si.is_constant():
                continue
            accumulate(out[i], self.anchor_act(t, si), -1)
            gt = self.inner(self.frame(i), t)
            if gt:
                d = self.dee(si)
                for k in range(r):
                    if d.coeffs[k]:
                        accumulate_product(out[k], gt, d.coeffs[k], 2)
        return Section(ScalarExpr.from_accumulator(acc) for acc in out)

    def check_courant_axiom(self, scaled: bool = True) -> AxiomReport:
        """Verify both printed equalities on frame triples, then on f-, g-, h-scaled ones.

        pi(x)<y, z> = <[[x, y]], z> + <[[x, z]], y> = <[[y, z]], x> + <[[z, y]], x>
        """
        residuals = []
        r = self.rank
        variants = [(ScalarExpr.constant(1),) * 3]
        if scaled:
            variants.append((ScalarExpr.symbol("f"), ScalarExpr.symbol("g"), ScalarExpr.symbol("h")))
        for v, funcs in enumerate(variants):
            secs = [[self.frame(i, fn) for i in range(r)] for fn in funcs]
            brackets: dict = {}

            def br(a, i, b, j):
                key = (a, i, b, j)
                if key not in brackets:
                    brackets[key] = self.bracket(secs[a][i], secs[b][j])
                return brackets[key]

            for i, j, k in product(range(r), repeat=3):
                x, y, z = secs[0][i], secs[1][j], secs[2][k]
                lhs = self.anchor_act(x, self.inner(y, z))
                mid = self.inner(br(0, i, 1, j), z) + self.inner(br(0, i, 2, k), y)
                rhs = self.inner(br(1, j, 2, k), x) + self.inner(br(2, k, 1, j), x)
                for eq, res in ((1, lhs - mid), (2, lhs - rhs)):
                    if res:
                        residuals.append((eq, (i, j, k), bool(v), res))
        return AxiomReport(not residuals, tuple(residuals))


def build_algebroid(data: AlgebroidData, depth_bound: int = 2) -> Algebroid:
    """Validate ``data`` and return a handle.

    In proto_courant mode the compatibility axiom must hold; in almost_leibniz
    mode only the structural checks run.
    """
    return Algebroid(data, depth_bound=depth_bound)


# ---------------------------------------------------------------------------
# Lie algebras and the generalized tangent bundle


def _lie_table(eps, n: int) -> dict:
    if isinstance(eps, Mapping):
        entries = [(i, j, k, c) for (i, j), ks in eps.items() for k, c in ks.items()]
    else:
        entries = list(eps)
    entries = [(i, j, k, as_rational(c)) for i, j, k, c in entries]
    return _sparse3(entries, n, n, "Lie structure")


def jacobi_residuals(eps, n: int) -> list[tuple[tuple[int, int, int], dict]]:
    """Nonzero cyclic sums [X_i,[X_j,X_k]] + c.p. for i < j < k."""
    table = _lie_table(eps, n)

    def br(u: dict, v: dict) -> dict:
        out: dict = {}
        for a, p in u.items():
            for b, q in v.items():
                for c, e in table.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + p * q * e
        return {c: e for c, e in out.items() if e}

    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total: dict = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, e in br({a: 1}, br({b: 1}, {c: 1})).items():
                        total[m] = total.get(m, 0) + e
                total = {m: e for m, e in total.items() if e}
                if total:
                    bad.append(((i, j, k), total))
    return bad


def from_lie_algebra(eps, n: int, mode: str = PROTO_COURANT) -> AlgebroidData:
    """Generalized tangent data of an invariant frame X_1..X_n with [X_i, X_j] = eps_ij^k X_k.

    Frame order is X_1..X_n, a_1..a_n (the dual coframe).  The pairing is
    <X_i, a_j> = delta_ij / 2, the anchor sends X_i to D_i and kills a_i, and
    the brackets are

        [[X_i, X_j]] =  sum_k eps_ij^k X_k
        [[X_i, a_j]] = -sum_k eps_ik^j a_k      (Lie derivative)
        [[a_i, X_j]] =  sum_l eps_jl^i a_l      (minus interior of d a_i)
        [[a_i, a_j]] = 0

    ``eps`` is a mapping {(i, j): {k: c}} or a list of (i, j, k, c), 0-based.
    """
    table = _lie_table(eps, n)
    for (i, j), ks in table.items():
        if table.get((j, i), {}) != {k: -c for k, c in ks.items()}:
            raise AlgebroidError(f"structure constants not antisymmetric in ({i + 1}, {j + 1})")
    bad = jacobi_residuals(table, n)
    if bad:
        (i, j, k), _ = bad[0]
        raise AlgebroidError(f"Jacobi identity fails for ({i + 1}, {j + 1}, {k + 1})")
    structure = []
    for (i, k), ls in table.items():
        for l, c in ls.items():
            # c = eps_ik^l
            structure.append((i, k, l, c))              # [[X_i, X_k]] ∋ c X_l
            structure.append((i, n + l, n + k, -c))     # [[X_i, a_l]] ∋ -c a_k
            structure.append((n + l, i, n + k, c))      # [[a_l, X_i]] ∋ c a_k
    metric = RatMatrix(2 * n, 2 * n, [
        Fraction(1, 2) if abs(a - b) == n else 0 for a in range(2 * n) for b in range(2 * n)
    ])
    anchor = RatMatrix(2 * n, n, [1 if a == b else 0 for a in range(2 * n) for b in range(n)])
    commutators = tuple((i, j, k, c) for (i, j), ks in table.items() for k, c in ks.items())
    names = tuple(f"X{i + 1}" for i in range(n)) + tuple(f"a{i + 1}" for i in range(n))
    return AlgebroidData(2 * n, n, metric, anchor, tuple(structure), commutators, mode, names)


# ---------------------------------------------------------------------------
# endomorphisms


@dataclass(frozen=True)
class Endomorphism:
    matrix: RatMatrix
    is_skew: bool
    is_symmetric: bool

    @property
    def symmetry(self) -> str:
        if self.is_skew:
            return "skew"
        if self.is_symmetric:
            return "symmetric"
        return "none"

    @property
    def rank(self) -> int:
        return self.matrix.rows


def classify_endomorphism(alg: Algebroid, J: RatMatrix | Endomorphism) -> Endomorphism:
    """Skew: gJ + J^T g = 0.  Symmetric: gJ = J^T g.  Columns of J are images of the frame."""
    if isinstance(J, Endomorphism):
        J = J.matrix
    if J.shape != (alg.rank, alg.rank):
        raise ValueError(f"endomorphism must be {alg.rank}x{alg.rank}, got {J.shape}")
    gJ = alg.metric @ J
    Jtg = J.T @ alg.metric
    return Endomorphism(J, (gJ + Jtg).is_zero(), (gJ - Jtg).is_zero())


def annihilator_check(J: RatMatrix | Endomorphism, m) -> bool:
    """True when m(J) is the zero matrix."""
    if isinstance(J, Endomorphism):
        J = J.matrix
    if not J.is_square():
        raise ValueError("annihilator check needs a square matrix")
    return m(J).is_zero()


def minimal_polynomial(J: RatMatrix | Endomorphism):
    """Monic minimal polynomial of J, from the first linear dependency among its powers."""
    from ..exact import kernel_basis
    from ..poly import UniPoly

    if isinstance(J, Endomorphism):
        J = J.matrix
    n = J.rows
    powers = [RatMatrix.identity(n)]
    for d in range(1, n + 1):
        powers.append(powers[-1] @ J)
        M = RatMatrix(n * n, d + 1, [p.entries[e] for e in range(n * n) for p in powers])
        kernel = kernel_basis(M)
        if kernel:
            v = kernel[-1].column(0)
            top = max(k for k, c in enumerate(v) if c)
            return UniPoly(c / v[top] for c in v[: top + 1])
    raise AssertionError("Cayley-Hamilton guarantees a dependency")
