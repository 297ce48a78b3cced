"""Formal functions: polynomials over Q in derivatives of function symbols.

An *atom* is a pair ``(name, word)`` standing for ``D_{w0} D_{w1} ... name``
(``w0`` is applied last).  Words are kept non-decreasing; derivations need not
commute, and reordering uses ``[D_a, D_b] = sum_c eps[a, b, c] D_c``.
Indices are 0-based internally and printed 1-based (``D3(f)`` is index 2).

A ScalarExpr is a sparse map from monomials (sorted tuples of atoms, with
repetition) to rationals.  Coefficients are held as ``gmpy2.mpq`` internally,
which is much faster than Fraction in the bracket expansions; every public
accessor hands back Fractions.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq

from ..exact import RationalLike, as_rational, format_rational

Atom = tuple[str, tuple[int, ...]]
Monomial = tuple[Atom, ...]

__all__ = [
    "DepthBoundExceeded",
    "DerivationRing",
    "ScalarExpr",
    "ScalarSyntaxError",
    "parse_scalar",
]


def _q(c) -> mpq:
    if isinstance(c, str):
        c = as_rational(c)
    return mpq(c)


def accumulate(target: dict, expr: "ScalarExpr", scale=None) -> None:
    """target += scale * expr, in place on a monomial -> mpq dict."""
    get = target.get
    if scale is None:
        for m, c in expr._terms.items():
            target[m] = get(m, 0) + c
    else:
        scale = _q(scale)
        for m, c in expr._terms.items():
            target[m] = get(m, 0) + c * scale


def accumulate_product(target: dict, a: "ScalarExpr", b: "ScalarExpr", scale=None) -> None:
    """target += scale * a * b."""
    get = target.get
    scale = None if scale is None else _q(scale)
    for m1, c1 in a._terms.items():
        if scale is not None:
            c1 = c1 * scale
        for m2, c2 in b._terms.items():
            key = tuple(sorted(m1 + m2)) if m1 and m2 else m1 or m2
            target[key] = get(key, 0) + c1 * c2


class DepthBoundExceeded(ArithmeticError):
    """A derivative word grew past the configured depth bound."""


class ScalarExpr:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, RationalLike] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = _q(c)
            if c:
                key = tuple(sorted(m))
                clean[key] = clean.get(key, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "ScalarExpr":
        s = cls.__new__(cls)
        s._terms = terms
        return s

    @classmethod
    def from_accumulator(cls, acc: dict) -> "ScalarExpr":
        return cls._raw({m: c for m, c in acc.items() if c})

    @classmethod
    def constant(cls, c: RationalLike) -> "ScalarExpr":
        c = _q(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def symbol(cls, name: str, word: Iterable[int] = ()) -> "ScalarExpr":
        return cls._raw({(((name, tuple(word))),): mpq(1)})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in self._terms.items()}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        c = self._terms.get((), mpq(0))
        return Fraction(int(c.numerator), int(c.denominator))

    def atoms(self) -> set[Atom]:
        return {a for m in self._terms for a in m}

    def symbols(self) -> set[str]:
        return {a[0] for a in self.atoms()}

    def depth(self) -> int:
        return max((len(a[1]) for a in self.atoms()), default=0)

    def coefficient(self, monomial: Iterable[Atom]) -> Fraction:
        c = self._terms.get(tuple(sorted(monomial)), mpq(0))
        return Fraction(int(c.numerator), int(c.denominator))

    # -- ring -------------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, ScalarExpr):
            return other
        if isinstance(other, (int, Fraction, type(mpq(0)))) and not isinstance(other, bool):
            return ScalarExpr.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return ScalarExpr._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, type(mpq(0)))) and not isinstance(other, bool):
            if not other:
                return ScalarExpr()
            other = _q(other)
            return ScalarExpr._raw({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        accumulate_product(out, self, other)
        return ScalarExpr.from_accumulator(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda mc: _monomial_sort_key(mc[0])):
            mono = "*".join(_atom_str(a) for a in m)
            mag = Fraction(int(abs(c).numerator), int(abs(c).denominator))
            body = format_rational(mag) if not mono else mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if parts:
                parts.append((" - " if c < 0 else " + ") + body)
            else:
                parts.append(("-" if c < 0 else "") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ScalarExpr({str(self)!r})"


def _atom_str(atom: Atom) -> str:
    name, word = atom
    s = name
    for a in reversed(word):
        s = f"D{a + 1}({s})"
    return s


def _monomial_sort_key(m: Monomial):
    return (-len(m), [(n, len(w), w) for n, w in m])


class DerivationRing:
    """Applies derivations to ScalarExprs, given the derivation commutators.

    ``eps`` maps ``(a, b)`` to a dict ``{c: coefficient}`` with
    ``[D_a, D_b] = sum_c coefficient * D_c``.
    """

    def __init__(self, n: int, eps: Mapping[tuple[int, int], Mapping[int, Fraction]] | None = None,
                 depth_bound: int = 2):
        self.n = n
        self.depth_bound = depth_bound
        self.eps = {k: dict(v) for k, v in (eps or {}).items() if any(v.values())}
        self._normal = lru_cache(maxsize=None)(self._normal_order)
        self._cache: dict = {}

    def _normal_order(self, word: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
        """Expand a word into non-decreasing words."""
        for p in range(len(word) - 1):
            b, a = word[p], word[p + 1]
            if b > a:
                out: dict = {}
                swapped = word[:p] + (a, b) + word[p + 2:]
                for w, c in self._normal(swapped):
                    out[w] = out.get(w, 0) + c
                # D_b D_a = D_a D_b + [D_b, D_a]
                for c_idx, coef in self.eps.get((b, a), {}).items():
                    shorter = word[:p] + (c_idx,) + word[p + 2:]
                    for w, c in self._normal(shorter):
                        out[w] = out.get(w, 0) + coef * c
                return tuple((w, c) for w, c in out.items() if c)
        return ((word, Fraction(1)),)

    def normal_order(self, word: Iterable[int]) -> dict[tuple[int, ...], Fraction]:
        return dict(self._normal(tuple(word)))

    def apply_atom(self, a: int, atom: Atom) -> ScalarExpr:
        key = (a, atom)
        hit = self._cache.get(key)
        if hit is None:
            name, word = atom
            if len(word) + 1 > self.depth_bound:
                raise DepthBoundExceeded(
                    f"D{a + 1} applied to {_atom_str(atom)} exceeds depth bound {self.depth_bound}"
                )
            hit = ScalarExpr({((name, w),): c for w, c in self._normal((a,) + word)})
            self._cache[key] = hit
        return hit

    def apply(self, a: int, expr: ScalarExpr) -> ScalarExpr:
        """D_a(expr), using the product rule over each monomial."""
        if not 0 <= a < self.n:
            raise IndexError(f"derivation index {a + 1} out of range 1..{self.n}")
        out: dict = {}
        for m, c in expr._terms.items():
            for pos, atom in enumerate(m):
                if pos and m[pos - 1] == atom:
                    continue
                mult = m.count(atom)
                rest = ScalarExpr._raw({m[:pos] + m[pos + 1:]: c * mult})
                d = self.apply_atom(a, atom)
                if d:
                    accumulate_product(out, d, rest)
        return ScalarExpr.from_accumulator(out)

    def vector_field(self, weights, expr: ScalarExpr) -> ScalarExpr:
        """Apply sum_a weights[a] * D_a; ``weights`` is a sequence of Fractions."""
        out: dict = {}
        for a, w in enumerate(weights):
            if w:
                accumulate(out, self.apply(a, expr), w)
        return ScalarExpr.from_accumulator(out)


class ScalarSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<deriv>D(?P<didx>\d+))(?![A-Za-z0-9_])|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*()]))"
)


def parse_scalar(text: str) -> ScalarExpr:
    """Parse a rational-weighted sum of products of atoms.

    Atoms are written ``f``, ``D1 f`` or ``D2 D1 f`` (equivalently ``D1(f)``,
    ``D2(D1(f))``); the word is not reordered, so pass the result through
    ``Algebroid.normalize`` when the derivations do not commute.
    """
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarSyntaxError(f"unexpected {text[pos]!r}", pos)
        kind = m.lastgroup if m.lastgroup != "didx" else "deriv"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def atom() -> tuple[Atom, int]:
        word = []
        parens = 0
        while peek()[0] == "deriv":
            word.append(int(take()[1][1:]) - 1)
            if word[-1] < 0:
                raise ScalarSyntaxError("derivation indices start at 1", tokens[i - 1][2])
            if peek()[1] == "(":
                take()
                parens += 1
        kind, val, off = take()
        if kind != "name":
            raise ScalarSyntaxError("expected a function symbol", off)
        for _ in range(parens):
            kind, val2, off = take()
            if val2 != ")":
                raise ScalarSyntaxError("expected ')'", off)
        return (val, tuple(word)), off

    def factor() -> ScalarExpr:
        kind, val, off = peek()
        if kind == "num":
            take()
            return ScalarExpr.constant(Fraction(val))
        if kind in ("name", "deriv"):
            a, _ = atom()
            return ScalarExpr.symbol(*a)
        if val == "(":
            take()
            e = expr()
            if take()[1] != ")":
                raise ScalarSyntaxError("expected ')'", tokens[i - 1][2])
            return e
        raise ScalarSyntaxError(f"unexpected {val or 'end of input'!r}", off)

    def term() -> ScalarExpr:
        acc = factor()
        while peek()[1] == "*":
            take()
            acc = acc * factor()
        return acc

    def expr() -> ScalarExpr:
        sign = 1
        if peek()[1] in ("+", "-") and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
            acc = acc + term() * sign
        return acc

    result = expr()
    kind, val, off = peek()
    if kind != "end":
        raise ScalarSyntaxError(f"unexpected {val!r}", off)
    return result
