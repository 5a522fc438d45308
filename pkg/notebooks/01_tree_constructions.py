# %% [markdown]
# # Closing a tree into a Tanner graph
#
# Every family in `treeldpc` starts from a d-regular tree grown from a single
# variable node and then closes the last layer with a fixed connection rule.
# This walk-through builds one instance of each family and looks at the
# resulting parity-check matrices.

# %%
import numpy as np

from treeldpc import build_mols, make_field, validate_mols
from treeldpc.constructions import build_type1a, build_type1b, build_type2_l3, build_type2_l3_eg, build_type2_l4
from treeldpc.tanner import degree_profile, girth, to_check_matrix

# %% [markdown]
# ## Latin squares over GF(4)
# The closing rules for the prime-power families read off entries of
# mutually orthogonal Latin squares.  Square k is M_k(j, t) = j + k*t in the
# field; square 0 is constant along rows.

# %%
gf4 = make_field(2, 2)
mols = build_mols(gf4)
for k, sq in enumerate(mols.squares):
    print(f"M{k}\n{sq}")
print("problems:", validate_mols(mols))

# %% [markdown]
# ## One instance per family

# %%
instances = {
    "Type I-A, g=8": build_type1a(8),
    "Type I-B, q=4": build_type1b(2, 2),
    "Type II l=3, q=3 (projective plane)": build_type2_l3(3),
    "Type II l=3 -> EG, q=4": build_type2_l3_eg(2, 2),
    "Type II l=4, q=2": build_type2_l4(2),
}
for name, G in instances.items():
    prof = degree_profile(G)
    print(f"{name:38s} n={G.num_vars:3d} m={G.num_checks:3d} "
          f"var deg={list(prof['variables'])} girth={girth(G)}")

# %% [markdown]
# Node labels keep the tree structure around: the root variable comes first,
# followed by layer 1, layer 2 and so on.  Looking at H for the Fano plane
# (Type II l=3 with q=2) shows the block structure this produces.

# %%
fano = build_type2_l3(2)
H = to_check_matrix(fano).to_dense()
print(H)
print([lab.layer for lab in fano.var_labels])

# %% [markdown]
# Each pair of columns of the projective-plane matrix overlaps in exactly one
# row, which is why no 4-cycles exist.

# %%
overlap = H.T.astype(int) @ H
print(overlap)
