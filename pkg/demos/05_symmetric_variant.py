# %% [markdown]
# # Symmetric endomorphisms
#
# For J symmetric with respect to the pairing the generator becomes
# S' = (x-y)(y-z)(x-z).  For an involution built from a +-1 diagonal, S'
# acts as zero, so the symmetric theory has no nontrivial analogue.

# %%
import random

from courant_tensorial import Poly3, Variant, check_all, graded_dimension, shifted_generator
from courant_tensorial.algebroid import ScalarExpr, Section, act, build_algebroid, from_lie_algebra
from courant_tensorial.algebroid.sampling import random_nilpotent_eps, random_symmetric_involution

S_sym = shifted_generator(Variant.SYMMETRIC)
print("S' =", S_sym)
print([graded_dimension(D, Variant.SYMMETRIC)[0] for D in range(8)])

# %%
rng = random.Random(5)
alg = build_algebroid(from_lie_algebra(random_nilpotent_eps(3, rng), 3))
J = random_symmetric_involution(alg, rng)
secs = [Section([ScalarExpr.symbol(f"{p}{i + 1}") for i in range(alg.rank)]) for p in "hkl"]
print("S' acting on generic sections:", act(alg, S_sym, J, "tauC", *secs))
print("S' * x tensorial (symmetric):", check_all(S_sym * Poly3.var(0), Variant.SYMMETRIC).tensorial)
