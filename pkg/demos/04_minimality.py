# %% [markdown]
# # Minimality and polynomial tensoriality
#
# If m(J) = 0 then Q(x, y, z) = m(x + y + z) acts tensorially, even though Q
# is not divisible by S.  The modular check reduces the plane restrictions
# modulo m(u), m(v).

# %%
from courant_tensorial import minimality_polynomial, parse_unipoly, polynomially_tensorial, reduce_mod_minimal
from courant_tensorial.algebroid import (
    abelian_complex_structure,
    abelian_tangent,
    act,
    build_algebroid,
    classify_endomorphism,
    ScalarExpr,
    Section,
)
from courant_tensorial import parse_poly3

m = parse_unipoly("t^2 + 1")
Q = minimality_polynomial(m)
print("Q =", Q)
print("reduced mod m:", reduce_mod_minimal(Q, m))
print("modular:", polynomially_tensorial(Q, m).tensorial,
      " literal:", polynomially_tensorial(Q, m, "literal").tensorial)

# %% [markdown]
# For a complex structure on flat data, Q acts as twice the Courant-Nijenhuis
# polynomial, which is what the reduction above predicts.

# %%
alg = build_algebroid(abelian_tangent(2))
J = classify_endomorphism(alg, abelian_complex_structure())
secs = [Section([ScalarExpr.symbol(f"{p}{i + 1}") for i in range(4)]) for p in "hkl"]
lhs = act(alg, Q, J, "tauC", *secs)
rhs = act(alg, parse_poly3("(x+z)*(y+z)"), J, "tauC", *secs) * 2
print("identity holds:", lhs == rhs)
