# %% [markdown]
# # The Heisenberg counterexample
#
# On the Heisenberg nilmanifold, with the skew J below, the Courant-Nijenhuis
# torsion fails to be tensorial.  We compute T(f x, y) - f T(x, y) exactly.

# %%
from courant_tensorial.algebroid import (
    build_algebroid,
    heisenberg_example,
    heisenberg_expected_defect,
    tensoriality_defect,
    torsion_defect,
)
from courant_tensorial import parse_poly3, shifted_generator

data, J, x, y = heisenberg_example()
alg = build_algebroid(data)
names = alg.names
print("J is", J.symmetry)
for j, name in enumerate(names):
    image = alg.frame(j).apply(J.matrix)
    print(f"  J {name} = {image.to_str(names)}")

# %% [markdown]
# With x = X3 + a3 and y = X3 - a3 the pairing <x, y> and <Jx, Jy> both
# vanish, and the Leibniz rules force the defect
# 2 <Jx, Jy> Df + 2 <x, y> J^2 Df to be zero.

# %%
print("x =", x.to_str(names), " y =", y.to_str(names))
print("defect:", torsion_defect(alg, J, x, y).to_str(names))

# %% [markdown]
# Taking y = x = X3 + a3 gives <x, x> = 1 and the nonzero defect 2 D3(f) a1.

# %%
d = torsion_defect(alg, J, x, x)
print("defect:", d.to_str(names), "| equals 2*D3(f)*a1:", d == heisenberg_expected_defect())

# %% [markdown]
# The shifted polynomial S stays tensorial on the same data.

# %%
S = shifted_generator()
print([str(tensoriality_defect(alg, S, J, x, x, z, slot=1)) for z in alg.frames()])
print([str(tensoriality_defect(alg, parse_poly3("(x+z)*(y+z)"), J, x, x, z, slot=1)) for z in alg.frames()])
