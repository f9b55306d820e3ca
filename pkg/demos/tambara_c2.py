"""
Norms in the Burnside ring of C2
================================

Over a finite group G, a bispan of G-sets acts on Burnside-ring values:
restrict along ``p``, norm along ``f``, transfer along ``l``. Here we look
at C2, whose Burnside ring has basis ``[C2/C2]`` (a fixed point) and
``[C2/e]`` (a free orbit).
"""
import random

from bispans.bispan import compose_bispans
from bispans.checks import random_tambara_value
from bispans.generate import random_bispan, random_object
from bispans.gset import builtin_group, double_coset_decomposition, parse_subgroup, quotient_map
from bispans.tambara import burnside_basis_names, c2_norm_closed_form, evaluate_tambara, norm, orbit_value

C2 = builtin_group("C2")
print("basis:", burnside_basis_names(C2.whole))

# %%
# norming n points from the free orbit to the fixed point gives the C2-set
# of maps C2 -> n: n constant maps are fixed, the rest pair up
q = quotient_map(C2.trivial, C2.whole)
for n in range(7):
    got = norm(orbit_value(C2.trivial, (n,)), q)
    assert got.parts[0].counts == c2_norm_closed_form(n)
    print(f"N({n}) = {got}")

# %%
# double cosets: pulling back two orbits of S3 over a third splits into
# orbits indexed by H \ L / K
S3 = builtin_group("S3")
H, K = parse_subgroup(S3, "C2"), parse_subgroup(S3, "C2")
dec = double_coset_decomposition(H, K, S3.whole)
for block in dec.blocks:
    print("representative", S3.perms[block.representative], "stabilizer order", block.stabilizer.order)

# %%
# evaluation respects composition of bispans
rng = random.Random(11)
I, J, K = (random_object(rng, C2, 4, min_size=1) for _ in range(3))
b1, b2 = random_bispan(rng, I, J, 3), random_bispan(rng, J, K, 3)
x = random_tambara_value(rng, I, 1)
lhs = evaluate_tambara(compose_bispans(b2, b1), x)
rhs = evaluate_tambara(b2, evaluate_tambara(b1, x))
print("composite:", lhs)
print("stepwise: ", rhs)
assert lhs == rhs
