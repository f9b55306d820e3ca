"""Finite sets: fibers, degree decompositions and their interaction with
coproducts.

The degree of a map is the cardinality of its fibers. Everything here
also works verbatim for equivariant maps of G-sets, since fiber sizes are
constant along orbits and the degree pieces are therefore G-stable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .context import (
    CompositionError,
    Mor,
    Obj,
    Report,
    base_change,
    compose,
    coproduct_mor,
    copair,
    dependent_product,  # noqa: F401  (re-exported: the FinSet instance)
    finite_set,
    fold,
    pullback,
    restrict_over,
    subobject,
)


def fset(n_or_tokens) -> Obj:
    return finite_set(n_or_tokens)


def fmap(table, cod=None) -> Mor:
    """A map of plain finite sets from an index table.

    ``cod`` is a size or an :class:`Obj`; by default ``max(table) + 1``.
    """
    table = tuple(table)
    if cod is None:
        cod = max(table) + 1 if table else 0
    if isinstance(cod, int):
        cod = finite_set(cod)
    return Mor(finite_set(len(table)), cod, table)


def fiber(f: Mor, y: int) -> Obj:
    """The fiber ``{x : f(x) = y}`` as a sub-object of ``f.dom``."""
    if not 0 <= y < len(f.cod):
        raise CompositionError(f"{y} is not an element of the codomain")
    return Obj(tuple(f.dom.carrier[i] for i in f.fibers[y]), check=False)


def has_degree(f: Mor, n: int) -> bool:
    """All fibers of ``f`` have cardinality exactly ``n``."""
    return all(len(fib) == n for fib in f.fibers)


@dataclass(frozen=True)
class DegreeComponent:
    degree: int
    incl: Mor  # y_n -> cod
    part: Mor  # f_n : x_n -> y_n
    incl_dom: Mor  # x_n -> dom


@dataclass(frozen=True)
class DegreeDecomposition:
    f: Mor
    components: tuple  # DegreeComponent, ascending degree, nonempty y_n only

    @property
    def max_degree(self) -> int:
        return self.components[-1].degree if self.components else -1

    def __getitem__(self, n: int) -> DegreeComponent:
        for c in self.components:
            if c.degree == n:
                return c
        raise KeyError(n)

    def degrees(self) -> tuple:
        return tuple(c.degree for c in self.components)

    def parts(self) -> dict:
        """``degree -> indices of cod`` in that piece."""
        return {c.degree: c.incl.table for c in self.components}


def degree_decomposition(f: Mor) -> DegreeDecomposition:
    """Split ``f.cod`` by fiber cardinality."""
    sizes = [len(fib) for fib in f.fibers]
    comps = []
    for n in sorted(set(sizes)):
        sub, incl = subobject(f.cod, [j for j, s in enumerate(sizes) if s == n])
        part, incl_dom = restrict_over(f, incl)
        comps.append(DegreeComponent(n, incl, part, incl_dom))
    return DegreeDecomposition(f, tuple(comps))


def canonical_form_object(x: Obj) -> int:
    """Cardinality: a complete isomorphism invariant for plain finite sets."""
    return len(x)


def fold_degree_decomposition(f: Mor, g: Mor) -> DegreeDecomposition:
    """Degree decomposition of ``fold . (f + g)``, computed directly and
    from the pieces ``y_mn = y_n(f) x_y y_m(g)``; the two must agree."""
    if f.cod != g.cod:
        raise CompositionError("f and g need a common codomain")
    y = f.cod
    direct = degree_decomposition(compose(fold(y), coproduct_mor(f, g)))
    df, dg = degree_decomposition(f), degree_decomposition(g)
    by_k: dict = {}
    for cf in df.components:
        for cg in dg.components:
            sq = pullback(cf.incl, cg.incl)
            if len(sq.apex) == 0:
                continue
            n, m = cf.degree, cg.degree
            y_mn = compose(cf.incl, sq.proj_g)
            x_mn, _ = restrict_over(f, y_mn)
            z_mn, _ = restrict_over(g, y_mn)
            if not has_degree(x_mn, n) or not has_degree(z_mn, m):
                raise AssertionError("base change changed the degree of a piece")
            if not has_degree(copair(x_mn, z_mn), n + m):
                raise AssertionError("fold of degree n and m pieces is not of degree n+m")
            by_k.setdefault(n + m, []).append((y_mn, x_mn, z_mn))
    parts = direct.parts()
    if set(by_k) != set(parts):
        raise AssertionError(f"degrees differ: {sorted(by_k)} vs {sorted(parts)}")
    for k, pieces in by_k.items():
        image = sorted(j for y_mn, _, _ in pieces for j in y_mn.table)
        if image != sorted(parts[k]):
            raise AssertionError(f"degree-{k} piece differs from the direct computation")
        n_dom = sum(len(x.dom) + len(z.dom) for _, x, z in pieces)
        if n_dom != len(direct[k].part.dom):
            raise AssertionError(f"degree-{k} domain has the wrong size")
    return direct


def check_degree_axioms(f: Mor, probes: Iterable[Mor] = ()) -> Report:
    """Axioms of a degree structure for ``f``: the decomposition exists and
    partitions the codomain, degree 0 means empty domain, and the
    decomposition is stable under base change along every probe."""
    d = degree_decomposition(f)
    seen = []
    for c in d.components:
        if not has_degree(c.part, c.degree):
            return Report(False, f"component {c.degree} has the wrong fiber sizes", f)
        if (c.degree == 0) != (len(c.part.dom) == 0):
            return Report(False, "degree-0 pieces must be exactly the maps out of the empty set", f)
        seen.extend(c.incl.table)
    if sorted(seen) != list(range(len(f.cod))):
        return Report(False, "degree pieces do not partition the codomain", f)
    if sum(c.degree * len(c.part.cod) for c in d.components) != len(f.dom):
        return Report(False, "sum of n |y_n| differs from |dom f|", f)
    n = 0
    for g in probes:
        n += 1
        fg = base_change(f, g)
        dg = degree_decomposition(fg)
        expected = {}
        for c in d.components:
            pre = tuple(w for w in range(len(g.dom)) if g.table[w] in set(c.incl.table))
            if pre:
                expected[c.degree] = pre
        if dg.parts() != expected:
            return Report(False, "degree decomposition is not stable under base change", (f, g))
    return Report(True, cases=n)
