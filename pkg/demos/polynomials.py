"""
Bispans as polynomials
======================

A bispan ``I <- E -> B -> J`` of finite sets reads as a tuple of
polynomials: output ``j`` sums over ``b`` in ``B_j`` the monomial that
multiplies the variables ``x_p(e)`` for ``e`` over ``b``. Composition of
bispans is substitution of polynomials.
"""
from bispans import Mor, compose_bispans, finite_set
from bispans.bispan import Bispan, canonical_form, from_norm
from bispans.evaluation import (
    BOOL,
    NAT,
    TROPICAL,
    compile,
    evaluate,
    finite_difference_degree,
    polynomial_oracle,
)

one, two = finite_set(1), finite_set(2)

# %%
# x -> 2x: two points of B over the output, each with one point of E
doubling = Bispan(one, one, two, two, Mor(two, one, (0, 0)), Mor(two, two, (0, 1)), Mor(two, one, (0, 0)))
print("doubling:", polynomial_oracle(doubling))

# x -> x^2: one point of B with two points of E above it
squaring = Bispan(one, one, two, one, Mor(two, one, (0, 0)), Mor(two, one, (0, 0)), Mor(one, one, (0,)))
print("squaring:", polynomial_oracle(squaring))

# %%
# composing bispans substitutes one polynomial into the other
both = compose_bispans(squaring, doubling)
print("squaring after doubling:", polynomial_oracle(both))
print("circuit:\n" + str(compile(both)))

# canonical forms do not care how the middle sets are labelled
print("canonical form:", canonical_form(both))

# %%
# the same circuit runs in any commutative semiring
c = compile(both)
for R, x in ((NAT, 3), (BOOL, True), (TROPICAL, 2)):
    print(f"{R.name:>8}: {evaluate(c, R, [x])[0]}")

# %%
# degree from finite differences: a norm along a fiber of size n is a
# polynomial of degree n
p = Mor(finite_set(5), two, (0, 0, 0, 1, 1))
for j, d in enumerate(finite_difference_degree(compile(from_norm(p)), bound=5)):
    print(f"output {j}: degree {d.total}, per variable {d.per_variable}")
