"""
Distributivity diagrams
=======================

Given ``l: x -> y`` and ``f: y -> z``, the dependent product ``w -> z``
has, over each ``z``, the sections of ``l`` over the fiber ``f^-1(z)``.
This is the set-level shadow of expanding a product of sums.
"""
import math

from bispans import check_universal_property, dependent_product, finite_set
from bispans.bispan import fold_distributivity
from bispans.evaluation import INT, check_binomial_splitting, middle_term_count
from bispans.finset import fmap

# %%
# (a0 + a1)(b0 + b1 + b2) has 2 * 3 = 6 terms
l = fmap([0, 0, 1, 1, 1], 2)
f = fmap([0, 0], 1)
d = dependent_product(l, f)
print("sections:", len(d.w), "=", math.prod(len(fib) for fib in l.fibers))
for token in d.w.carrier:
    print("  ", token)

# %%
# the diagram is universal among diagrams of the same shape; the checker
# runs every probe map into z of at most 3 elements
print("universal property:", bool(check_universal_property(d, probe_bound=3)))

# %%
# folding x + x -> x and multiplying along p expands prod(E + F) as
# prod E + (mixed terms) + prod F; there are 2^n - 2 mixed terms over a
# fiber of size n
p = fmap([0, 0, 0, 1, 1], 2)
print("mixed terms per point:", dict(middle_term_count(p)))
probes = [((1, 2, 3, 4, 5), (2, 0, 1, 3, 1)), ((0, 0, 0, 0, 0), (1, 1, 1, 1, 1))]
print("splitting holds:", bool(check_binomial_splitting(p, INT, probes)))

# %%
# an empty fiber breaks the count: the all-left and all-right sections
# coincide (the empty section), so the three-term split counts it twice
q = fmap([0, 0], 2)
data = fold_distributivity(q)
print("mixed terms:", dict(middle_term_count(q)), "sections over the empty fiber:", len(data.diagram.g.fibers[1]))
print(check_binomial_splitting(q, INT, [((1, 1), (1, 1))]).reason)
