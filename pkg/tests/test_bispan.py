import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bispans.bispan import (
    Bispan,
    BispanMor,
    bispan_isomorphic,
    canonical_form,
    check_fold_structure,
    check_pasting,
    compose_bispans,
    compose_bispans_alt,
    coproduct_bispans,
    empty_bispan,
    fold_distributivity,
    from_norm,
    from_sum,
    identity_bispan,
    identity_bispan_mor,
    paste_distributivity,
    validate_bispan_mor,
)
from bispans.context import CompositionError, Mor, SearchLimitExceeded, dependent_product, finite_set, identity
from bispans.evaluation import NAT, evaluate_direct, polynomial_oracle
from bispans.finset import fmap
from bispans.generate import bispans_up_to_iso, finset_bispans, objects_up_to_iso, random_bispan, random_object
from bispans.gset import builtin_group


def bispan(src, tgt, p, f, l, nb):
    S, T, E, B = finite_set(src), finite_set(tgt), finite_set(len(p)), finite_set(nb)
    return Bispan(S, T, E, B, Mor(E, S, p), Mor(E, B, f), Mor(B, T, l))


DOUBLING = bispan(1, 1, [0, 0], [0, 1], [0, 0], 2)
SQUARING = bispan(1, 1, [0, 0], [0, 0], [0], 1)


def brute_force_isomorphic(a, b):
    if len(a.E) != len(b.E) or len(a.B) != len(b.B):
        return False
    for pb in itertools.permutations(range(len(b.B))):
        if any(b.l.table[pb[k]] != a.l.table[k] for k in range(len(a.B))):
            continue
        for pe in itertools.permutations(range(len(b.E))):
            if all(b.p.table[pe[e]] == a.p.table[e] and b.f.table[pe[e]] == pb[a.f.table[e]] for e in range(len(a.E))):
                return True
    return False


@st.composite
def small_bispans(draw, src, tgt, max_size=3):
    nb = draw(st.integers(0 if tgt == 0 else 0, max_size)) if tgt else 0
    ne = draw(st.integers(0, max_size)) if (nb and src) else 0
    p = draw(st.lists(st.integers(0, src - 1), min_size=ne, max_size=ne)) if ne else []
    f = draw(st.lists(st.integers(0, nb - 1), min_size=ne, max_size=ne)) if ne else []
    l = draw(st.lists(st.integers(0, tgt - 1), min_size=nb, max_size=nb)) if nb else []
    return bispan(src, tgt, p, f, l, nb)


def test_validation():
    with pytest.raises(CompositionError):
        bispan(1, 1, [0], [0], [0, 0], 1)
    S = finite_set(1)
    with pytest.raises(CompositionError):
        Bispan(S, S, S, S, identity(S), Mor(S, S, (0,), F=False), identity(S))


def test_doubling_then_squaring():
    c = compose_bispans(SQUARING, DOUBLING)
    assert len(c.E) == 8 and len(c.B) == 4
    assert all(len(fib) == 2 for fib in c.f.fibers)
    assert str(polynomial_oracle(c)) == "4*x^2"
    assert bispan_isomorphic(c, compose_bispans_alt(SQUARING, DOUBLING)) is not None


def test_unit_law():
    b = bispan(2, 1, [0, 0, 1], [0, 0, 1], [0, 0], 2)
    assert bispan_isomorphic(compose_bispans(identity_bispan(b.tgt), b), b) is not None
    assert bispan_isomorphic(compose_bispans(b, identity_bispan(b.src)), b) is not None


def test_empty_E_gives_constant():
    b1 = bispan(1, 1, [], [], [0, 0], 2)  # constant 2
    b2 = bispan(1, 1, [0, 0, 0], [0, 0, 1], [0, 0], 2)  # x^2 + x
    c = compose_bispans(b2, b1)
    for x in range(4):
        assert evaluate_direct(c, NAT, [x]) == evaluate_direct(b2, NAT, [2]) == (6,)


def test_isomorphism_examples():
    assert validate_bispan_mor(bispan_isomorphic(DOUBLING, DOUBLING))
    assert bispan_isomorphic(SQUARING, DOUBLING) is None
    shuffled = bispan(2, 1, [1, 0, 0], [1, 0, 1], [0, 0], 2)
    b = bispan(2, 1, [0, 0, 1], [0, 1, 0], [0, 0], 2)
    m = bispan_isomorphic(b, shuffled)
    assert m is not None and validate_bispan_mor(m)


@settings(max_examples=150)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_isomorphism_matches_brute_force(n, m, data):
    a = data.draw(small_bispans(n, m))
    b = data.draw(small_bispans(n, m))
    assert (bispan_isomorphic(a, b) is not None) == brute_force_isomorphic(a, b)


def test_mor_validation_examples():
    assert validate_bispan_mor(identity_bispan_mor(DOUBLING))
    b = bispan(1, 1, [0, 0], [0, 0], [0], 1)
    t = bispan(1, 1, [0], [0], [0], 1)
    m = BispanMor(b, t, Mor(b.E, t.E, (0, 0)), identity(b.B))
    rep = validate_bispan_mor(m)
    assert not rep and "cartesian" in rep.reason
    b = bispan(2, 1, [0, 1], [0, 1], [0, 0], 2)
    m = BispanMor(b, b, Mor(b.E, b.E, (1, 0)), Mor(b.B, b.B, (1, 0)))
    rep = validate_bispan_mor(m)
    assert not rep and "left triangle" in rep.reason


def test_coproducts():
    assert canonical_form(coproduct_bispans(DOUBLING, empty_bispan())) == canonical_form(DOUBLING)
    c = coproduct_bispans(DOUBLING, SQUARING)
    assert evaluate_direct(c, NAT, [3, 5]) == (6, 25)
    assert str(polynomial_oracle(c)) == "2*x0, x1^2"
    x, y = finite_set(2), finite_set(1)
    c = coproduct_bispans(identity_bispan(x), identity_bispan(y))
    assert c == identity_bispan(c.src)


def test_associativity_exhaustive_small():
    objs = [finite_set(k) for k in range(2)]
    homs = {(a, b): list(finset_bispans(objs[a], objs[b], 2, 2)) for a in range(2) for b in range(2)}
    for a, b, c, d in itertools.product(range(2), repeat=4):
        for b1, b2, b3 in itertools.product(homs[(a, b)], homs[(b, c)], homs[(c, d)]):
            left = compose_bispans(compose_bispans(b3, b2), b1)
            right = compose_bispans(b3, compose_bispans(b2, b1))
            assert bispan_isomorphic(left, right) is not None


@pytest.mark.parametrize("group", ["C2", "S3"])
def test_associativity_random_equivariant(group):
    G = builtin_group(group)
    rng = random.Random(11)
    for _ in range(25):
        I, J, K, L = (random_object(rng, G, 4) for _ in range(4))
        b1, b2, b3 = random_bispan(rng, I, J, 4), random_bispan(rng, J, K, 4), random_bispan(rng, K, L, 4)
        left = compose_bispans(compose_bispans(b3, b2), b1)
        right = compose_bispans(b3, compose_bispans(b2, b1))
        assert bispan_isomorphic(left, right) is not None
        assert bispan_isomorphic(compose_bispans_alt(b2, b1), compose_bispans(b2, b1)) is not None


def test_search_budget_is_reported():
    G = builtin_group("C2")
    x = G.coset_space(G.whole)
    E = type(x)(tuple(range(6)), G, ((0, 1, 2, 3, 4, 5),) * 2)
    b = Bispan(x, x, E, x, Mor(E, x, (0,) * 6), Mor(E, x, (0,) * 6), identity(x))
    with pytest.raises(SearchLimitExceeded):
        bispan_isomorphic(b, b, budget=2)


def test_canonical_form_is_complete():
    objs = [finite_set(k) for k in range(3)]
    for a, b in itertools.product(range(3), repeat=2):
        forms = [canonical_form(x) for x in finset_bispans(objs[a], objs[b], 3, 2)]
        assert len(forms) == len(set(forms))


def test_up_to_iso_enumeration_covers():
    G = builtin_group("C2")
    objs = list(objects_up_to_iso(G, 2))
    from bispans.generate import all_bispans

    for I, J in itertools.product(objs[:3], repeat=2):
        reps = list(bispans_up_to_iso(I, J, objs))
        for b in all_bispans(I, J, objs):
            assert any(bispan_isomorphic(b, r) is not None for r in reps)


# pasting and the fold construction


def test_pasting_examples():
    l2, f = fmap([0, 0, 1, 1], 2), fmap([0, 0], 1)
    l1 = identity(l2.dom)
    assert check_pasting(l1, l2, f)
    outer = paste_distributivity(fmap([0, 0, 1, 1, 2, 2, 3, 3], 4), l2, f)
    assert len(outer.w) == 16
    direct = dependent_product(fmap([0, 0, 0, 0, 1, 1, 1, 1], 2), f)
    assert len(direct.w) == 16
    assert check_pasting(fmap([0, 0], 1), fmap([0], 1), identity(finite_set(1)))


@pytest.mark.parametrize("sizes, expected_c", [((2,), 2), ((1,), 0), ((3,), 6), ((2, 1), 2)])
def test_fold_examples(sizes, expected_c):
    p = fmap([z for z, n in enumerate(sizes) for _ in range(n)], len(sizes))
    data = fold_distributivity(p)
    assert len(data.c) == expected_c
    assert len(data.w) == sum(2 ** n for n in sizes)
    assert check_fold_structure(data)


def test_fold_fiber_three_degrees():
    data = fold_distributivity(fmap([0, 0, 0], 1))
    assert sorted({len(f) for f in data.pt_L.fibers}) == [1, 2]
    assert sorted({len(f) for f in data.pt_R.fibers}) == [1, 2]


def test_fold_fiber_two_sides_are_bijections():
    data = fold_distributivity(fmap([0, 0], 1))
    assert data.pt_L.is_bijection and data.pt_R.is_bijection


def test_fold_at_empty_fiber():
    # an empty fiber has one section, which is both all-left and all-right
    data = fold_distributivity(fmap([0, 0], 2))
    assert len(data.diagram.g.fibers[1]) == 1
    assert len(data.k.fibers[1]) == 0
    assert not data.splitting.is_bijection
    rep = check_fold_structure(data)
    assert not rep and rep.reason == "|c_z| = 0, expected 2^0 - 2"
