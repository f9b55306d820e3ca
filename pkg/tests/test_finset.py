import pytest
from hypothesis import given
from hypothesis import strategies as st

from bispans.context import Mor, finite_set
from bispans.finset import (
    canonical_form_object,
    check_degree_axioms,
    degree_decomposition,
    fiber,
    fmap,
    fold_degree_decomposition,
    has_degree,
)


def tables(max_dom=6, max_cod=4):
    return st.integers(1, max_cod).flatmap(
        lambda m: st.lists(st.integers(0, m - 1), max_size=max_dom).map(lambda t: fmap(t, m)))


def test_fiber_examples():
    f = fmap([0, 0, 2, 2, 2], 3)
    assert fiber(f, 2).carrier == (2, 3, 4)
    assert len(fiber(f, 1)) == 0
    assert all(len(fiber(fmap([0, 1, 2]), y)) == 1 for y in range(3))


def test_degree_decomposition_examples():
    f = fmap([0, 0, 2, 2, 2], 3)
    assert degree_decomposition(f).parts() == {0: (1,), 2: (0,), 3: (2,)}
    assert degree_decomposition(fmap([0, 1, 2])).parts() == {1: (0, 1, 2)}
    empty = Mor(finite_set(0), finite_set(3), ())
    assert degree_decomposition(empty).parts() == {0: (0, 1, 2)}


def test_fold_examples():
    y = finite_set(1)
    f, g = fmap([0], y), fmap([0, 0], y)
    assert fold_degree_decomposition(f, g).parts() == {3: (0,)}
    none = Mor(finite_set(0), y, ())
    assert fold_degree_decomposition(f, none).parts() == degree_decomposition(f).parts()
    f = fmap([0, 1, 1], 2)
    g = fmap([0, 0, 1], 2)
    assert sorted(fold_degree_decomposition(f, g).parts()) == [3]
    g = fmap([0, 1, 1], 2)
    assert fold_degree_decomposition(f, g).parts() == {2: (0,), 4: (1,)}


def test_mixed_degrees_give_four_blocks():
    y = finite_set(4)
    f = fmap([0, 1, 2, 2, 3, 3], y)
    g = fmap([0, 1, 1, 2, 3, 3], y)
    d = fold_degree_decomposition(f, g)
    assert d.parts() == {2: (0,), 3: (1, 2), 4: (3,)}


def test_canonical_form_object():
    assert [canonical_form_object(finite_set(n)) for n in (0, 5)] == [0, 5]


@given(tables())
def test_degree_axioms_hold(f):
    probes = [fmap(t, f.cod) for t in ([], [0] * 2) if len(f.cod)]
    assert check_degree_axioms(f, probes)


@given(tables(), st.data())
def test_fold_matches_direct(f, data):
    m = len(f.cod)
    g = fmap(data.draw(st.lists(st.integers(0, m - 1), max_size=5)), m)
    d = fold_degree_decomposition(f, g)
    for c in d.components:
        for j in c.incl.table:
            assert len(f.fibers[j]) + len(g.fibers[j]) == c.degree


@pytest.mark.parametrize("n", range(4))
def test_has_degree(n):
    f = fmap([j for j in range(3) for _ in range(n)], 3)
    assert has_degree(f, n) and not has_degree(f, n + 1)
