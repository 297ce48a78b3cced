"""Sparse exact polynomials in three variables, plus univariate polynomials.

``Poly3`` stores a map from exponent triples ``(i, j, k)`` to nonzero
Fractions; it doubles as the bivariate type for polynomials in ``(u, v)``,
which live in the first two slots with the third unused.  ``UniPoly`` is a
dense coefficient list indexed by power.

Text form, shared by the parser and the printer::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := rational | var | '(' expr ')'

A leading sign is accepted at the start of any ``expr``.  Implicit
multiplication is rejected, so ``2x`` is a syntax error.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exact import RationalLike, RatMatrix, as_rational, format_rational

Exponent = tuple[int, int, int]

XYZ = ("x", "y", "z")
UV = ("u", "v", "z")

__all__ = [
    "Poly3",
    "PolySyntaxError",
    "UniPoly",
    "XYZ",
    "UV",
    "evaluate",
    "exact_divide",
    "homogeneous_component",
    "parse_poly",
    "parse_poly3",
    "parse_unipoly",
    "substitute",
]


def _grlex_key(e: Exponent):
    return (sum(e), e)


class Poly3:
    """Immutable sparse polynomial in x, y, z over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, RationalLike] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != 3 or any(not isinstance(k, int) or k < 0 for k in e):
                raise ValueError(f"bad exponent {e!r}")
            c = as_rational(c)
            if c:
                clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly3":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: RationalLike) -> "Poly3":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, index: int) -> "Poly3":
        e = [0, 0, 0]
        e[index] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, e: Sequence[int], c: RationalLike = 1) -> "Poly3":
        return cls({tuple(e): c})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> float:
        """Total degree; -inf for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=float("-inf"))

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # -- ring operations --------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly3":
        if isinstance(other, Poly3):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly3.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly3._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly3":
        return Poly3._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (a, b, c), p in self._terms.items():
            for (d, e, f), q in other._terms.items():
                key = (a + d, b + e, c + f)
                out[key] = out.get(key, 0) + p * q
        return Poly3._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly3":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = Poly3.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: RationalLike) -> "Poly3":
        return self * as_rational(c)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- structure --------------------------------------------------------
    def permute(self, perm: Sequence[int]) -> "Poly3":
        """Rename variables: variable ``a`` becomes variable ``perm[a]``."""
        out = {}
        for e, c in self._terms.items():
            new = [0, 0, 0]
            for a, k in enumerate(e):
                new[perm[a]] += k
            out[tuple(new)] = c
        return Poly3._raw(out)

    def single_variable_terms(self) -> list[Exponent]:
        """Exponents of monomials involving exactly one variable."""
        return [e for e in self._terms if sum(1 for k in e if k) == 1]

    def to_str(self, names: Sequence[str] = XYZ) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly3({self.to_str()!r})"


class UniPoly:
    """Immutable univariate polynomial over the rationals; ``coeffs[i]`` multiplies t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, d: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = len(d.coeffs) - 1
        lead = d.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                q = c / lead
                quot[k - dd] = q
                for i, b in enumerate(d.coeffs):
                    rem[k - dd + i] -= q * b
        return UniPoly(quot), UniPoly(rem[:dd])

    def __call__(self, t):
        """Horner evaluation at a scalar, a Poly3 or a square RatMatrix."""
        if isinstance(t, RatMatrix):
            acc = RatMatrix.zeros(t.rows, t.cols)
            ident = RatMatrix.identity(t.rows)
            for c in reversed(self.coeffs):
                acc = acc @ t + ident.scale(c)
            return acc
        acc = t * 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_poly3(self, var: int = 0) -> Poly3:
        e = [0, 0, 0]
        out = {}
        for k, c in enumerate(self.coeffs):
            e[var] = k
            out[tuple(e)] = c
        return Poly3(out)

    def to_str(self, name: str = "t") -> str:
        return Poly3({(k, 0, 0): c for k, c in enumerate(self.coeffs)}).to_str((name, "", ""))

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"UniPoly({self.to_str()!r})"


# ---------------------------------------------------------------------------
# parsing


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.pos = 0
        self.names = tuple(names)
        self.nvars = len(self.names)

    def error(self, msg: str, pos: int | None = None):
        raise PolySyntaxError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer")
        return int(self.text[start:self.pos])

    # Polynomials are plain dicts keyed by exponent tuples of length nvars.
    def mul(self, p: dict, q: dict) -> dict:
        out: dict = {}
        for a, x in p.items():
            for b, y in q.items():
                key = tuple(i + j for i, j in zip(a, b))
                out[key] = out.get(key, 0) + x * y
        return {k: v for k, v in out.items() if v}

    def add(self, p: dict, q: dict, sign: int = 1) -> dict:
        out = dict(p)
        for k, v in q.items():
            out[k] = out.get(k, 0) + sign * v
        return {k: v for k, v in out.items() if v}

    def parse(self) -> dict:
        p = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return p

    def expr(self) -> dict:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.add({}, self.term(), sign)
        while self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            acc = self.add(acc, self.term(), sign)
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = self.mul(acc, self.factor())
        return acc

    def factor(self) -> dict:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            n = self.uint()
            result = {(0,) * self.nvars: Fraction(1)}
            for _ in range(n):
                result = self.mul(result, base)
            return result
        return base

    def base(self) -> dict:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            num = self.uint()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.uint()
                if den == 0:
                    self.error("zero denominator", start)
            c = Fraction(num, den)
            return {(0,) * self.nvars: c} if c else {}
        if ch.isalpha() or ch == "_":
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.names:
                raise PolySyntaxError(
                    f"unknown variable {name!r} (allowed: {', '.join(self.names)})", start
                )
            e = [0] * self.nvars
            e[self.names.index(name)] = 1
            return {tuple(e): Fraction(1)}
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_poly(text: str, vars: Sequence[str] = XYZ) -> Poly3 | UniPoly:
    """Parse ``text`` in the given variables.

    One variable yields a UniPoly; two or three yield a Poly3 (a two-variable
    polynomial occupies the first two slots).
    """
    vars = tuple(v for v in vars if v)
    if not 1 <= len(vars) <= 3 or len(set(vars)) != len(vars):
        raise ValueError(f"need one to three distinct variable names, got {vars!r}")
    raw = _Parser(text, vars).parse()
    if len(vars) == 1:
        deg = max((e[0] for e in raw), default=-1)
        cs = [Fraction(0)] * (deg + 1)
        for (k,), c in raw.items():
            cs[k] = c
        return UniPoly(cs)
    pad = (0,) * (3 - len(vars))
    return Poly3._raw({e + pad: c for e, c in raw.items()})


def parse_poly3(text: str) -> Poly3:
    return parse_poly(text, XYZ)


def parse_unipoly(text: str, var: str = "t") -> UniPoly:
    return parse_poly(text, (var,))


# ---------------------------------------------------------------------------
# algebra on Poly3


def substitute(p: Poly3, images: Sequence[Poly3]) -> Poly3:
    """Compose: replace x, y, z by ``images[0..2]`` and expand."""
    if len(images) != 3:
        raise ValueError("need one image per variable")
    powers: list[dict[int, Poly3]] = [{0: Poly3.constant(1)} for _ in range(3)]

    def power(v: int, k: int) -> Poly3:
        cache = powers[v]
        if k not in cache:
            cache[k] = power(v, k - 1) * images[v]
        return cache[k]

    out = Poly3()
    for (i, j, k), c in p._terms.items():
        out = out + power(0, i) * power(1, j) * power(2, k) * c
    return out


def evaluate(p: Poly3, point: Sequence[RationalLike]) -> Fraction:
    x, y, z = (as_rational(v) for v in point)
    return sum((c * x**i * y**j * z**k for (i, j, k), c in p._terms.items()), Fraction(0))


def homogeneous_component(p: Poly3, degree: int) -> Poly3:
    return Poly3._raw({e: c for e, c in p._terms.items() if sum(e) == degree})


def divide(p: Poly3, d: Poly3) -> tuple[Poly3, Poly3]:
    """Single-divisor reduction in graded-lex order; returns (quotient, remainder)."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    (dl, dc) = d.leading()
    quot: dict = {}
    rem: dict = {}
    work = dict(p._terms)
    while work:
        e = max(work, key=_grlex_key)
        c = work[e]
        if all(a >= b for a, b in zip(e, dl)):
            shift = tuple(a - b for a, b in zip(e, dl))
            q = c / dc
            quot[shift] = quot.get(shift, 0) + q
            for f, g in d._terms.items():
                key = (f[0] + shift[0], f[1] + shift[1], f[2] + shift[2])
                v = work.get(key, 0) - q * g
                if v:
                    work[key] = v
                else:
                    work.pop(key, None)
        else:
            rem[e] = c
            del work[e]
    return Poly3(quot), Poly3._raw(rem)


def exact_divide(p: Poly3, d: Poly3) -> Poly3 | None:
    """Quotient ``q`` with ``p == q * d``, or None if ``d`` does not divide ``p``."""
    q, r = divide(p, d)
    return None if r else q


def multinomial_terms(degree: int) -> Iterable[tuple[Exponent, int]]:
    """(exponent, multinomial coefficient) for every monomial of the given degree."""
    from math import factorial

    for i in range(degree + 1):
        for j in range(degree - i + 1):
            k = degree - i - j
            yield (i, j, k), factorial(degree) // (factorial(i) * factorial(j) * factorial(k))


def monomials_of_degree(degree: int) -> list[Exponent]:
    """All exponents of total degree ``degree`` in descending graded-lex order."""
    return sorted(
        ((i, j, degree - i - j) for i, j in product(range(degree + 1), repeat=2) if i + j <= degree),
        reverse=True,
    )
