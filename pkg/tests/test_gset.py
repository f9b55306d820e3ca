import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bispans.context import Mor, Obj, check_universal_property, orbits, point, trivial_gset
from bispans.generate import objects_up_to_iso, random_map, random_object
from bispans.gset import (
    builtin_group,
    double_coset_decomposition,
    double_cosets,
    equivariant_dependent_product,
    gset_isomorphic,
    orbit_decomposition,
    parse_subgroup,
    quotient_map,
    stabilizer,
    subgroup_name,
)

GROUPS = ("C2", "C3", "C4", "C2xC2", "S3", "D4")


def orbit_count_burnside(G, x):
    """Number of orbits by Burnside's lemma."""
    fixed = sum(sum(1 for i in range(len(x)) if x.act(g, i) == i) for g in range(G.order))
    assert fixed % G.order == 0
    return fixed // G.order


@pytest.mark.parametrize("name, order", [("C1", 1), ("C6", 6), ("C2xC2", 4), ("S3", 6), ("S4", 24), ("D4", 8)])
def test_builtin_orders(name, order):
    G = builtin_group(name)
    assert G.order == order
    for g, h, k in itertools.product(range(order), repeat=3):
        assert G.mul[G.mul[g][h]][k] == G.mul[g][G.mul[h][k]]


@pytest.mark.parametrize("name, classes", [("C2", 2), ("C4", 3), ("C2xC2", 5), ("S3", 4), ("S4", 11), ("D4", 8)])
def test_subgroup_class_counts(name, classes):
    assert len(builtin_group(name).subgroup_classes) == classes


def test_orbit_examples():
    G = builtin_group("C2")
    swap = Obj(("a", "b"), G, ((0, 1), (1, 0)))
    assert [(r, s) for r, _, s in orbits(swap)] == [(0, (0,))]
    assert len(orbits(trivial_gset(3, G))) == 3
    S3 = builtin_group("S3")
    reg = S3.coset_space(S3.trivial)
    assert len(orbits(reg)) == 1 and stabilizer(reg, 0).order == 1


def test_quotient_map_examples():
    G = builtin_group("C4")
    C2 = parse_subgroup(G, "C2")
    q = quotient_map(G.trivial, C2)
    assert len(q.dom) == 4 and len(q.cod) == 2 and all(len(f) == 2 for f in q.fibers)
    assert quotient_map(C2, C2).is_bijection
    assert len(quotient_map(C2, G.whole).cod) == 1


def test_s3_double_cosets():
    G = builtin_group("S3")
    H = parse_subgroup(G, "C2")
    dec = double_coset_decomposition(H, H, G.whole)
    rows = [(subgroup_name(b.stabilizer), len(b.orbit)) for b in dec.blocks]
    assert rows == [("C2", 3), ("e", 6)]
    assert len(dec.pullback.apex) == 9


@pytest.mark.parametrize("name", GROUPS)
def test_double_cosets_against_counts(name):
    G = builtin_group(name)
    for L in G.subgroups:
        subs = [H for H in G.subgroups if H <= L]
        for H, K in itertools.product(subs, repeat=2):
            dec = double_coset_decomposition(H, K, L)
            # independent counts: double cosets by brute force, orbits by Burnside's lemma
            brute = {frozenset(G.mul[G.mul[h][g]][k] for h in H.members for k in K.members) for g in L.members}
            assert len(dec.blocks) == len(brute) == orbit_count_burnside(G, dec.pullback.apex)
            assert sum(len(b.orbit) for b in dec.blocks) == len(dec.pullback.apex)
            for b in dec.blocks:
                assert len(b.orbit) * b.stabilizer.order == G.order


def test_double_cosets_identity_case():
    G = builtin_group("S3")
    H = parse_subgroup(G, "C3")
    dec = double_coset_decomposition(H, H, H)
    assert len(dec.blocks) == 1 and dec.blocks[0].stabilizer == H


def test_trivial_H_gives_cosets_of_K():
    G = builtin_group("S3")
    K = parse_subgroup(G, "C2")
    dec = double_coset_decomposition(G.trivial, K, G.whole)
    assert len(dec.blocks) == 3 and all(b.stabilizer.order == 1 for b in dec.blocks)
    assert len(double_cosets(G.trivial, G.whole, K)) == 3


def test_isomorphism_examples():
    G = builtin_group("C2")
    assert gset_isomorphic(G.coset_space(G.trivial), trivial_gset(2, G)) is None
    S3 = builtin_group("S3")
    a = S3.coset_space(parse_subgroup(S3, "C2"))
    assert gset_isomorphic(a, a) is not None
    x = random_object(__import__("random").Random(1), S3, 9)
    assert gset_isomorphic(x, x) is not None


@given(st.sampled_from(("C2", "C3", "S3", "C2xC2")), st.integers(0, 2 ** 16))
def test_isomorphism_iff_orbit_types(name, seed):
    import random

    G = builtin_group(name)
    rng = random.Random(seed)
    a, b = random_object(rng, G, 7), random_object(rng, G, 7)
    key = lambda x: sorted(G.class_index(H) for _, H in orbit_decomposition(x))
    iso = gset_isomorphic(a, b)
    assert (iso is not None) == (key(a) == key(b))
    if iso is not None:
        assert iso.is_bijection


def test_c2_norm_of_two_points():
    G = builtin_group("C2")
    free = G.coset_space(G.trivial)
    X = Obj(tuple(range(4)), G, ((0, 1, 2, 3), (2, 3, 0, 1)))
    d = equivariant_dependent_product(Mor(X, free, (0, 0, 1, 1)), Mor(free, point(G), (0, 0)))
    stabs = sorted(len(s) for _, _, s in orbits(d.w))
    assert stabs == [1, 2, 2]


@pytest.mark.parametrize("name", ["C2", "S3"])
def test_equivariant_universal_property(name):
    import random

    G = builtin_group(name)
    rng = random.Random(7)
    for _ in range(15):
        z = random_object(rng, G, 3)
        f = random_map(rng, random_object(rng, G, 3), z)
        if f is None:
            continue
        l = random_map(rng, random_object(rng, G, 4), f.dom)
        if l is None:
            continue
        assert check_universal_property(equivariant_dependent_product(l, f), 2)


def test_subgroup_names_round_trip():
    for name in GROUPS:
        G = builtin_group(name)
        for cls in G.subgroup_classes:
            assert parse_subgroup(G, subgroup_name(cls[0])) == cls[0]


def test_objects_up_to_iso_are_distinct():
    G = builtin_group("S3")
    objs = list(objects_up_to_iso(G, 6))
    for a, b in itertools.combinations(objs, 2):
        assert gset_isomorphic(a, b) is None
