import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bispans.context import (
    CompositionError,
    DistributivityDiagram,
    Mor,
    are_isomorphic,
    base_change_diagram,
    check_universal_property,
    compose,
    coproduct,
    coproduct_comparison,
    coproduct_diagrams,
    dependent_product,
    empty,
    finite_set,
    identity,
    point,
    pullback,
    trivial_gset,
)
from bispans.finset import fmap
from bispans.gset import builtin_group


def maps(n, m):
    return st.lists(st.integers(0, m - 1), min_size=n, max_size=n).map(lambda t: fmap(t, m))


@st.composite
def composable(draw, max_size=4):
    x, y, z = (draw(st.integers(0, max_size)) for _ in range(3))
    if y == 0:
        x = 0
    if z == 0:
        y = x = 0
    l = draw(maps(x, y)) if y else Mor(finite_set(0), finite_set(y), ())
    f = draw(maps(y, z)) if z else Mor(finite_set(0), finite_set(z), ())
    return l, f


# morphisms


def test_composition_examples():
    f = fmap([0, 0], 1)
    assert compose(identity(f.cod), f) == f
    assert compose(fmap([0, 0], 1), fmap([0, 0, 1], 2)).table == (0, 0, 0)


def test_flags_propagate():
    f = fmap([0, 1], 2)
    g = Mor(f.cod, finite_set(1), (0, 0), F=True, L=False)
    h = compose(g, f)
    assert h.F and not h.L


@pytest.mark.parametrize("table, cod", [((0,), 1), ((0, 2), 2), ((0, -1), 2)])
def test_invalid_maps_rejected(table, cod):
    with pytest.raises(CompositionError):
        Mor(finite_set(2), finite_set(cod), table)


def test_equivariance_enforced():
    G = builtin_group("C2")
    free = G.coset_space(G.trivial)
    with pytest.raises(CompositionError):
        Mor(free, trivial_gset(2, G), (0, 1))


def test_compose_mismatch():
    with pytest.raises(CompositionError):
        compose(fmap([0], 1), fmap([0, 1], 3))


# pullbacks


def test_pullback_examples():
    f = fmap([0, 0, 1], 2)
    sq = pullback(f, identity(f.cod))
    assert len(sq.apex) == 3 and sq.proj_f.table == f.table
    sq = pullback(f, fmap([0, 1], 2))
    assert sq.pairs == ((0, 0), (1, 0), (2, 1))
    assert len(pullback(fmap([0, 0], 1), fmap([0, 0], 1)).apex) == 4


@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 3), st.data())
def test_pullback_matches_brute_force(a, b, m, data):
    f, g = data.draw(maps(a, m)), data.draw(maps(b, m))
    sq = pullback(f, g)
    expected = sorted((i, j) for i in range(a) for j in range(b) if f.table[i] == g.table[j])
    assert sorted(sq.pairs) == expected
    assert compose(f, sq.proj_g).table == compose(g, sq.proj_f).table


# coproducts


def test_coproduct_examples():
    s, i, j = coproduct(finite_set(2), finite_set(3))
    assert len(s) == 5
    assert len(pullback(i, j).apex) == 0
    x = finite_set(["a", "b"])
    assert are_isomorphic(coproduct(x, empty())[0], x) is not None


def test_isomorphism_examples():
    assert are_isomorphic(finite_set(3), finite_set(["u", "v", "w"])) is not None
    assert are_isomorphic(finite_set(2), finite_set(3)) is None
    G = builtin_group("C2")
    assert are_isomorphic(G.coset_space(G.trivial), trivial_gset(2, G)) is None


# dependent products


def sections_brute_force(l, f):
    out = []
    for k in range(len(f.cod)):
        ys = f.fibers[k]
        for s in itertools.product(range(len(l.dom)), repeat=len(ys)):
            if all(l.table[s[t]] == y for t, y in enumerate(ys)):
                out.append((k, s))
    return out


def test_section_count_example():
    l = fmap([0, 0, 1, 1, 1], 2)
    d = dependent_product(l, fmap([0, 0], 1))
    assert len(d.w) == 6


def test_dependent_product_of_identity_is_cod():
    f = fmap([0, 1, 1], 3)
    d = dependent_product(identity(f.dom), f)
    assert len(d.w) == 3 and d.g.is_bijection


def test_no_sections_over_nonempty_fiber():
    y = finite_set(2)
    d = dependent_product(Mor(empty(), y, ()), fmap([0, 0], 1))
    assert len(d.w) == 0


@given(composable())
def test_sections_match_brute_force(lf):
    l, f = lf
    d = dependent_product(l, f)
    assert len(d.w) == len(sections_brute_force(l, f))
    for k in range(len(f.cod)):
        assert len(d.g.fibers[k]) == math.prod(len(l.fibers[j]) for j in f.fibers[k])


@settings(max_examples=60)
@given(composable(3))
def test_universal_property_random(lf):
    assert check_universal_property(dependent_product(*lf), probe_bound=2)


def test_corrupted_diagram_fails_at_identity_probe():
    l = fmap([0, 0, 1, 1, 1], 2)
    d = dependent_product(l, fmap([0, 0], 1))
    assert check_universal_property(d, 3)
    eps = list(d.eps.table)
    for i, v in enumerate(eps):
        alt = [a for a in l.fibers[l.table[v]] if a != v]
        if alt:
            eps[i] = alt[0]
            break
    bad = DistributivityDiagram(d.l, d.f, d.g, d.pb, Mor(d.eps.dom, d.eps.cod, tuple(eps)))
    rep = check_universal_property(bad, 3)
    assert not rep
    assert rep.witness == identity(d.f.cod)


def test_identity_diagram_passes():
    x = finite_set(3)
    assert check_universal_property(dependent_product(identity(x), identity(x)))


def test_equivariant_norm_example():
    G = builtin_group("C2")
    free = G.coset_space(G.trivial)
    X = type(free)(tuple(range(4)), G, ((0, 1, 2, 3), (2, 3, 0, 1)))
    l = Mor(X, free, (0, 0, 1, 1))
    d = dependent_product(l, Mor(free, point(G), (0, 0)))
    fixed = [m for m in range(len(d.w)) if d.w.act(1, m) == m]
    assert len(d.w) == 4 and len(fixed) == 2
    assert check_universal_property(d, 2)


def test_trivial_group_matches_plain_sets():
    G = builtin_group("C1")
    l = fmap([0, 0, 1], 2)
    f = fmap([0, 0], 1)
    lg = Mor(trivial_gset(3, G), trivial_gset(2, G), l.table)
    fg = Mor(trivial_gset(2, G), trivial_gset(1, G), f.table)
    plain, eq = dependent_product(l, f), dependent_product(lg, fg)
    assert plain.w.carrier == eq.w.carrier and plain.eps.table == eq.eps.table


def test_base_change_is_distributivity_diagram():
    d = dependent_product(fmap([0, 0, 1, 2], 3), fmap([0, 0, 1], 2))
    zeta = fmap([1, 0, 1], 2)
    assert check_universal_property(base_change_diagram(d, zeta), 2)


def test_coproduct_of_diagrams():
    d1 = dependent_product(fmap([0, 0, 1], 2), fmap([0, 0], 1))
    d2 = dependent_product(fmap([0, 1, 1], 2), fmap([0, 1], 2))
    assert check_universal_property(coproduct_diagrams(d1, d2), 2)
    assert coproduct_comparison(d1, d2).is_bijection
