"""Random exact test data: nilpotent Lie algebras and endomorphisms of given type."""
from __future__ import annotations

import random
from fractions import Fraction

from ..exact import RatMatrix
from .core import Algebroid, AlgebroidError, jacobi_residuals

__all__ = [
    "random_complex_structure",
    "random_nilpotent_eps",
    "random_orthogonal",
    "random_rational",
    "random_skew",
    "random_symmetric",
    "random_symmetric_involution",
]


def random_rational(rng: random.Random, size: int = 3, zero_weight: float = 0.0) -> Fraction:
    if zero_weight and rng.random() < zero_weight:
        return Fraction(0)
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_nilpotent_eps(n: int, rng: random.Random, density: float = 0.6) -> dict:
    """Strictly triangular structure constants: [X_i, X_j] only involves X_k with k > max(i, j).

    Jacobi is automatic for n <= 4; larger n is resampled until it holds.
    """
    for _ in range(1000):
        eps: dict = {}
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if rng.random() < density:
                        c = random_rational(rng)
                        if c:
                            eps.setdefault((i, j), {})[k] = c
                            eps.setdefault((j, i), {})[k] = -c
        if not jacobi_residuals(eps, n):
            return eps
    raise AlgebroidError("could not sample a Jacobi-satisfying algebra")


def _random_antisymmetric(r: int, rng: random.Random, size: int = 3) -> RatMatrix:
    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            v = random_rational(rng, size)
            rows[i][j], rows[j][i] = v, -v
    return RatMatrix.from_rows(rows)


def _random_symmetric_matrix(r: int, rng: random.Random, size: int = 3) -> RatMatrix:
    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            v = random_rational(rng, size)
            rows[i][j] = rows[j][i] = v
    return RatMatrix.from_rows(rows)


def random_skew(alg: Algebroid, rng: random.Random) -> RatMatrix:
    """g^{-1} B with B antisymmetric, so that gJ + J^T g = 0."""
    return alg.metric_inv @ _random_antisymmetric(alg.rank, rng)


def random_symmetric(alg: Algebroid, rng: random.Random) -> RatMatrix:
    return alg.metric_inv @ _random_symmetric_matrix(alg.rank, rng)


def random_orthogonal(alg: Algebroid, rng: random.Random) -> RatMatrix:
    """Cayley transform (I - K)^{-1}(I + K) of a random g-skew K; preserves the pairing."""
    ident = RatMatrix.identity(alg.rank)
    while True:
        K = random_skew(alg, rng).scale(Fraction(1, 2))
        try:
            return (ident - K).inverse() @ (ident + K)
        except ZeroDivisionError:
            continue


def _split_frame(alg: Algebroid) -> RatMatrix:
    """Columns X_i + a_i and X_i - a_i of tautological generalized tangent data."""
    n = alg.rank // 2
    if alg.names[:n] != tuple(f"X{i + 1}" for i in range(n)):
        raise ValueError("needs generalized tangent data built by from_lie_algebra")
    r = alg.rank
    cols = []
    for i in range(n):
        for s in (1, -1):
            col = [0] * r
            col[i], col[n + i] = 1, s
            cols.append(col)
    return RatMatrix.from_rows([[c[row] for c in cols] for row in range(r)])


def random_symmetric_involution(alg: Algebroid, rng: random.Random) -> RatMatrix:
    """A pairing-symmetric J with J^2 = id: random signs on X_i +- a_i, then conjugated."""
    basis = _split_frame(alg)
    signs = [rng.choice((1, -1)) for _ in range(alg.rank)]
    D = RatMatrix(alg.rank, alg.rank, [signs[i] if i == j else 0 for i in range(alg.rank) for j in range(alg.rank)])
    J0 = basis @ D @ basis.inverse()
    O = random_orthogonal(alg, rng)
    return O @ J0 @ O.inverse()


def random_complex_structure(alg: Algebroid, rng: random.Random) -> RatMatrix:
    """A skew J with J^2 = -id on generalized tangent data of even dimension n."""
    n = alg.rank // 2
    if n % 2:
        raise ValueError("needs an even number of tangent directions")
    r = alg.rank
    rows = [[0] * r for _ in range(r)]
    for p in range(0, n, 2):
        # X_p -> X_{p+1} -> -X_p and a_p -> a_{p+1} -> -a_p
        rows[p + 1][p], rows[p][p + 1] = 1, -1
        rows[n + p + 1][n + p], rows[n + p][n + p + 1] = 1, -1
    J0 = RatMatrix.from_rows(rows)
    O = random_orthogonal(alg, rng)
    return O @ J0 @ O.inverse()
