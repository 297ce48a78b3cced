# %% [markdown]
# # The graded pieces of the tensorial ideal
#
# Restricting the coefficient equations to homogeneous degree D gives a
# finite linear system.  Its kernel dimension should be C(D-1, 2), the
# dimension of degree-(D-3) polynomials, because the ideal is generated by
# the cubic S.

# %%
from math import comb

from courant_tensorial import Variant, divisibility_criterion, graded_dimension

for D in range(0, 9):
    dim, basis = graded_dimension(D)
    expected = comb(D - 1, 2) if D >= 3 else 0
    print(f"D={D}: dim {dim:2d} (expected {expected:2d})")

# %% [markdown]
# Every basis element is divisible by S and contains no monomial in a single
# variable.

# %%
dim, basis = graded_dimension(5)
for b in basis:
    rep = divisibility_criterion(b)
    print(f"{str(rep.quotient):28s} single-variable terms: {b.single_variable_terms()}")
