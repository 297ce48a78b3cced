"""Acceptance criteria 1-10, each at its stated exactness and time budget.

Run with ``pytest -v tests/test_acceptance.py``; the terminal summary prints
one pass/fail line per criterion.  Criterion 4 fails on the printed
Heisenberg sections; the analysis is in the decisions ledger, and
test_algebroid.py covers the corrected pair x = y = X3 + a3.
"""
import random
import time
from fractions import Fraction
from math import comb

from courant_tensorial.algebroid import (
    Algebroid,
    ScalarExpr,
    Section,
    abelian_tangent,
    act,
    alternating_check,
    annihilator_check,
    build_algebroid,
    eigen_necessity,
    from_lie_algebra,
    heisenberg_example,
    heisenberg_expected_defect,
    minimal_polynomial,
    tensoriality_defect,
    torsion_defect,
)
from courant_tensorial.algebroid.sampling import (
    random_complex_structure,
    random_nilpotent_eps,
    random_skew,
    random_symmetric_involution,
)
from courant_tensorial.poly import Poly3, UniPoly, evaluate, monomials_of_degree, parse_poly3
from courant_tensorial.tensorial import (
    Variant,
    check_all,
    graded_dimension,
    minimality_polynomial,
    polynomially_tensorial,
    reduce_mod_minimal,
    restrictions,
    shifted_generator,
)

S = shifted_generator(Variant.SKEW)
S_SYM = shifted_generator(Variant.SYMMETRIC)


class Budget:
    def __init__(self, seconds: float):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start

    def check(self):
        assert self.elapsed < self.seconds, f"took {self.elapsed:.3f} s, budget {self.seconds} s"


def rational(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def nonzero_rational(rng: random.Random, size: int = 5) -> Fraction:
    while True:
        q = rational(rng, size)
        if q:
            return q


def random_poly(rng: random.Random, max_degree: int, dense: bool) -> Poly3:
    monos = [e for d in range(max_degree + 1) for e in monomials_of_degree(d)]
    if dense:
        chosen = [e for e in monos if rng.random() < 0.5]
    else:
        chosen = rng.sample(monos, min(len(monos), rng.randint(1, 4)))
    return Poly3({e: rational(rng) for e in chosen})


def generic_section(prefix: str, rank: int) -> Section:
    return Section([ScalarExpr.symbol(f"{prefix}{i + 1}") for i in range(rank)])


def scaled_frames(alg: Algebroid, name: str) -> list[Section]:
    return [alg.frame(i, ScalarExpr.symbol(name)) for i in range(alg.rank)]


# -- 1 -------------------------------------------------------------------------

def test_criterion_1_shifted_polynomial():
    expected = Poly3({(2, 1, 0): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): 1,
                      (0, 2, 1): 1, (0, 1, 2): 1, (1, 1, 1): 2})
    shifted_generator(Variant.SKEW)  # warm caches and imports
    with Budget(0.001) as b:
        got = shifted_generator(Variant.SKEW)
    assert got.terms == expected.terms and len(got) == 7 and got.coeff((1, 1, 1)) == 2
    b.check()


# -- 2 -------------------------------------------------------------------------

def test_criterion_2_graded_dimensions():
    with Budget(5.0) as b:
        results = {D: graded_dimension(D, Variant.SKEW) for D in range(13)}
    for D in (0, 1, 2):
        assert results[D] == (0, [])
    assert results[3] == (1, [S])
    for D in range(4, 13):
        assert results[D][0] == comb(D - 1, 2), D
    b.check()


# -- 3 and 7 (polynomial half) --------------------------------------------------

def criterion_equivalence(variant: Variant, seed: int, samples: int = 1000):
    rng = random.Random(seed)
    gen = shifted_generator(variant)
    for n in range(samples):
        p = random_poly(rng, rng.randint(0, 8), dense=n % 2 == 1)
        assert check_all(p, variant).agree, p
        q = random_poly(rng, rng.randint(0, 5), dense=n % 3 == 0)
        product_ = gen * q
        v = check_all(product_, variant)
        assert v.agree and v.tensorial, product_
        k = rng.randint(0, 8)
        spoiled = product_ + Poly3.monomial([k if i == n % 3 else 0 for i in range(3)], nonzero_rational(rng))
        v = check_all(spoiled, variant)
        assert v.agree and not v.tensorial, spoiled


def test_criterion_3_criterion_equivalence():
    with Budget(30.0) as b:
        criterion_equivalence(Variant.SKEW, seed=3)
        criterion_equivalence(Variant.SYMMETRIC, seed=33)
    b.check()


# -- 4 -------------------------------------------------------------------------

def test_criterion_4_heisenberg_golden():
    with Budget(1.0) as b:
        data, J, x, y = heisenberg_example()
        alg = build_algebroid(data)
        expected = heisenberg_expected_defect()
        defect = torsion_defect(alg, J, x, y)
        P = parse_poly3("(x+z)*(y+z)")
        pairings = [(tensoriality_defect(alg, P, J, x, y, z, slot=1), alg.inner(expected, z))
                    for z in alg.frames()]
    assert defect == expected, f"defect {defect.to_str(alg.names)} != {expected.to_str(alg.names)}"
    assert all(got == want for got, want in pairings)
    b.check()


# -- 5 -------------------------------------------------------------------------

def test_criterion_5_x_plus_y_slot_two():
    with Budget(1.0) as b:
        data, J, x0, y0 = heisenberg_example()
        alg = build_algebroid(data)
        Jm = J.matrix
        f = ScalarExpr.symbol("f")
        P = parse_poly3("x + y")
        frames = alg.frames()
        pairs = [(x0, y0)] + [(s, t) for s in frames for t in frames]
        pairs.append((generic_section("h", 6), generic_section("k", 6)))
        zs = frames + [generic_section("l", 6)]
        mismatches = []
        for x, y in pairs:
            formula = y.apply(Jm).scale(alg.anchor_act(x, f)) + y.scale(alg.anchor_act(x.apply(Jm), f))
            for z in zs:
                if tensoriality_defect(alg, P, J, x, y, z, slot=2) != alg.inner(formula, z):
                    mismatches.append((x, y, z))
        nonzero = any(tensoriality_defect(alg, P, J, s, t, z, 2) for s in frames[:3] for t in frames for z in frames)
    assert not mismatches
    assert nonzero
    b.check()


# -- 6 -------------------------------------------------------------------------

def test_criterion_6_universal_tensoriality_of_S():
    rng = random.Random(6)
    with Budget(60.0) as b:
        checked = 0
        for k in range(20):
            n = (2, 3, 4)[k % 3]
            alg = build_algebroid(from_lie_algebra(random_nilpotent_eps(n, rng), n))
            sections = [generic_section(p, alg.rank) for p in "hkl"]
            for _ in range(5):
                J = random_skew(alg, rng)
                for slot in (1, 2, 3):
                    assert tensoriality_defect(alg, S, J, *sections, slot).is_zero()
                    checked += 1
    assert checked == 300
    b.check()


# -- 7 -------------------------------------------------------------------------

def test_criterion_7_symmetric_variant():
    with Budget(30.0) as b:
        for D in range(13):
            dim, basis = graded_dimension(D, Variant.SYMMETRIC)
            assert dim == (comb(D - 1, 2) if D >= 3 else 0)
            assert all(check_all(p, Variant.SYMMETRIC).tensorial for p in basis)
        criterion_equivalence(Variant.SYMMETRIC, seed=7)
        rng = random.Random(77)
        for k in range(12):
            n = 2 if k % 2 == 0 else 3
            alg = build_algebroid(from_lie_algebra(random_nilpotent_eps(n, rng), n))
            J = random_symmetric_involution(alg, rng)
            assert J @ J == type(J).identity(alg.rank)
            sections = [generic_section(p, alg.rank) for p in "hkl"]
            assert act(alg, S_SYM, J, "tauC", *sections).is_zero()
            f, g, h = (scaled_frames(alg, s) for s in "fgh")
            for i in range(alg.rank):
                for j in range(alg.rank):
                    for l in range(0, alg.rank, 2):
                        assert act(alg, S_SYM, J, "tauC", f[i], g[j], h[l]).is_zero()
    b.check()


# -- 8 -------------------------------------------------------------------------

def oracle_reduce_square_plus_one(p: Poly3) -> Poly3:
    """Replace x^2, y^2, z^2 by -1 one exponent pair at a time."""
    out: dict = {}
    for e, c in p.terms.items():
        sign = 1
        reduced = []
        for k in e:
            sign *= (-1) ** (k // 2)
            reduced.append(k % 2)
        key = tuple(reduced)
        out[key] = out.get(key, 0) + sign * c
    return Poly3(out)


def test_criterion_8_minimality_and_alternating():
    rng = random.Random(8)
    with Budget(30.0) as b:
        # polynomial tensoriality of Q = m(x + y + z) modulo m
        for _ in range(40):
            deg = rng.randint(1, 4)
            m = UniPoly([rational(rng) for _ in range(deg)] + [nonzero_rational(rng)])
            assert polynomially_tensorial(minimality_polynomial(m), m, "modular").tensorial

        # alternating checks on abelian data with J^2 = -1
        flat = build_algebroid(abelian_tangent(2))
        t2p1 = UniPoly([1, 0, 1])
        candidates = [t2p1, t2p1 * UniPoly([rational(rng), 1]), t2p1 * UniPoly([rational(rng), rational(rng), 1])]
        Jc = random_complex_structure(flat, rng)
        fs, gs, hs = (scaled_frames(flat, s) for s in "fgh")
        used = 0
        for m in candidates + [UniPoly([1, 1])]:
            if not annihilator_check(Jc, m):
                continue
            used += 1
            Q = minimality_polynomial(m)
            for i in range(4):
                for j in range(4):
                    for k in range(4):
                        assert alternating_check(flat, S, Jc, fs[i], gs[j], hs[k]).ok
                        assert alternating_check(flat, Q, Jc, fs[i], gs[j], hs[k]).ok
        assert used == 3

        # the same on Heisenberg data, with multiples of the minimal polynomial
        data, J, *_ = heisenberg_example()
        heis = build_algebroid(data)
        mJ = minimal_polynomial(J)
        sections = [generic_section(p, 6) for p in "hkl"]
        for m in (mJ, mJ * UniPoly([rational(rng), 1])):
            assert annihilator_check(J, m)
            assert alternating_check(heis, S, J, *sections).ok
            assert alternating_check(heis, minimality_polynomial(m), J, *sections).ok

        # J^2 = -1: Q for t^2 + 1 acts as twice the Courant-Nijenhuis polynomial
        Q = minimality_polynomial(t2p1)
        CN = parse_poly3("(x+z)*(y+z)")
        assert reduce_mod_minimal(Q, t2p1) == oracle_reduce_square_plus_one(Q)
        assert oracle_reduce_square_plus_one(Q) == oracle_reduce_square_plus_one(CN * 2)
        gen4 = [generic_section(p, 4) for p in "hkl"]
        for _ in range(3):
            J4 = random_complex_structure(flat, rng)
            assert act(flat, Q, J4, "tauC", *gen4) == act(flat, CN, J4, "tauC", *gen4) * 2
    b.check()


# -- 9 -------------------------------------------------------------------------

def test_criterion_9_axiom_validation():
    rng = random.Random(9)
    with Budget(30.0) as b:
        for k in range(20):
            n = 2 + k % 3
            data = from_lie_algebra(random_nilpotent_eps(n, rng), n)
            alg = Algebroid(data, validate=False)
            assert alg.check_courant_axiom(scaled=True).ok
            if data.structure:
                pos = rng.randrange(len(data.structure))
                i, j, l, c = data.structure[pos]
                mutated = list(data.structure)
                mutated[pos] = (i, j, l, c + 1)
            else:
                mutated = [(0, 1, 2 * n - 1, Fraction(1))]
            report = Algebroid(data.with_structure(mutated), validate=False).check_courant_axiom()
            assert not report.ok and any(not res.is_zero() for *_, res in report.residuals)
    b.check()


# -- 10 ------------------------------------------------------------------------

def test_criterion_10_eigen_necessity():
    rng = random.Random(10)
    flat = build_algebroid(abelian_tangent(2))
    with Budget(30.0) as b:
        for _ in range(60):
            P = random_poly(rng, rng.randint(1, 5), dense=rng.random() < 0.3)
            lam, mu = rational(rng), rational(rng)
            res = eigen_necessity(P, lam, mu, alg=flat)
            A, B, C = restrictions(P)
            oracle = (evaluate(A, (lam, mu, 0)), evaluate(B, (mu, lam, 0)), evaluate(C, (lam, mu, 0)))
            assert res.symbolic == res.evaluated == oracle
    b.check()


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-v"]))
