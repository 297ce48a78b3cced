# %% [markdown]
# # Three ways to decide tensoriality
#
# A polynomial P(x, y, z) acts on the Courant element through a skew
# endomorphism J.  Whether the result is a tensor can be decided from the
# coefficients alone, from the restrictions of P to three planes, or by
# dividing by S = (x+y)(y+z)(z+x).  All three answers must agree.

# %%
from courant_tensorial import check_all, parse_poly3, restrictions, shifted_generator
from courant_tensorial.poly import UV

S = shifted_generator()
print("S =", S)

# %%
for text in ["(x+y)*(y+z)*(z+x)", "(x+z)*(y+z)", "x + y", "(x+y)*(y+z)*(z+x)*(x^2 - 3*y*z + 1)"]:
    p = parse_poly3(text)
    v = check_all(p)
    report = v.report()
    print(f"{text:40s} tensorial={report.tensorial} quotient={report.quotient}")
    for viol in report.violated_equations[:3]:
        print(f"    family {viol.family} at (i={viol.i}, t={viol.t}) residual {viol.residual}")

# %% [markdown]
# The plane restrictions of the Courant-Nijenhuis polynomial (x+z)(y+z)
# show where it fails: only the third one, C(u, v) = v^2 - u^2, survives.

# %%
A, B, C = restrictions(parse_poly3("(x+z)*(y+z)"))
print("A =", A.to_str(UV), " B =", B.to_str(UV), " C =", C.to_str(UV))
