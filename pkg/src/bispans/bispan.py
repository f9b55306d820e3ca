"""Bispans ``src <-p- E -f-> B -l-> tgt``: composition through a
distributivity diagram, isomorphism, 2-cells, coproducts, pasting of
distributivity diagrams and the fold construction behind degree counting.
"""
from __future__ import annotations

from dataclasses import dataclass

from .context import (
    CompositionError,
    DistributivityDiagram,
    Mor,
    Obj,
    Report,
    SearchLimitExceeded,  # noqa: F401  (raised by bispan_isomorphic)
    check_universal_property,
    compose,
    compose_all,
    coproduct,
    coproduct_mor,
    dependent_product,
    equivariant_bijections,
    fold,
    identity,
    pullback,
    subobject,
)


@dataclass(frozen=True)
class Bispan:
    src: Obj
    tgt: Obj
    E: Obj
    B: Obj
    p: Mor  # E -> src
    f: Mor  # E -> B, F flag
    l: Mor  # B -> tgt, L flag

    def __post_init__(self):
        if (self.p.dom, self.p.cod) != (self.E, self.src):
            raise CompositionError("p must go from E to src")
        if (self.f.dom, self.f.cod) != (self.E, self.B):
            raise CompositionError("f must go from E to B")
        if (self.l.dom, self.l.cod) != (self.B, self.tgt):
            raise CompositionError("l must go from B to tgt")
        if not self.f.F:
            raise CompositionError("the middle leg must carry the F flag")
        if not self.l.L:
            raise CompositionError("the right leg must carry the L flag")

    def __repr__(self):
        return f"Bispan({len(self.src)} <- {len(self.E)} -> {len(self.B)} -> {len(self.tgt)})"


def identity_bispan(x: Obj) -> Bispan:
    i = identity(x)
    return Bispan(x, x, x, x, i, i, i)


def from_span_backward(p: Mor) -> Bispan:
    """``p^*`` as the bispan ``cod p <- dom p = dom p = dom p``."""
    i = identity(p.dom)
    return Bispan(p.cod, p.dom, p.dom, p.dom, p, i, i)


def from_norm(f: Mor) -> Bispan:
    """``f_*`` (multiplicative pushforward) as a bispan."""
    return Bispan(f.dom, f.cod, f.dom, f.cod, identity(f.dom), f, identity(f.cod))


def from_sum(l: Mor) -> Bispan:
    """``l_!`` (additive pushforward) as a bispan."""
    return Bispan(l.dom, l.cod, l.dom, l.dom, identity(l.dom), identity(l.dom), l)


# composition


@dataclass(frozen=True)
class CompositeDiagram:
    """Intermediate data of ``b2 . b1``."""

    pi: object  # pullback of b1.l and b2.p: pairs (b, e2)
    dist: DistributivityDiagram  # for (pi -> E2, b2.f)
    y: object  # pullback of b1.f and pi -> B1: pairs (e1, k)
    g: object  # pullback of y -> pi and eps: pairs (y, x)
    result: Bispan


def composite_diagram(b2: Bispan, b1: Bispan) -> CompositeDiagram:
    if b1.tgt != b2.src:
        raise CompositionError("bispans are not composable: tgt(b1) != src(b2)")
    pi = pullback(b1.l, b2.p)
    d = dependent_product(pi.proj_f, b2.f)
    y = pullback(b1.f, pi.proj_g)
    g = pullback(y.proj_f, d.eps)
    E = g.apex
    p = compose_all(b1.p, y.proj_g, g.proj_g)
    f = compose(d.f_tilde, g.proj_f)
    l = compose(b2.l, d.g)
    return CompositeDiagram(pi, d, y, g, Bispan(b1.src, b2.tgt, E, d.w, p, f, l))


def compose_bispans(b2: Bispan, b1: Bispan) -> Bispan:
    """``b2 . b1``: pull ``l1`` back against ``p2``, take the dependent
    product along ``f2``, and pull ``E1`` back to the new exponent."""
    return composite_diagram(b2, b1).result


def compose_bispans_alt(b2: Bispan, b1: Bispan) -> Bispan:
    """Same composite, but ``E1`` is pulled back in one step along
    ``X -> pi -> B1``. Agrees with :func:`compose_bispans` up to iso."""
    if b1.tgt != b2.src:
        raise CompositionError("bispans are not composable: tgt(b1) != src(b2)")
    pi = pullback(b1.l, b2.p)
    d = dependent_product(pi.proj_f, b2.f)
    sq = pullback(b1.f, compose(pi.proj_g, d.eps))  # pairs (e1, x)
    p = compose(b1.p, sq.proj_g)
    f = compose(d.f_tilde, sq.proj_f)
    return Bispan(b1.src, b2.tgt, sq.apex, d.w, p, f, compose(b2.l, d.g))


# isomorphism


def canonical_form(b: Bispan) -> tuple:
    """Per target element, the sorted multiset over ``B_j`` of sorted
    ``p``-value multisets. Complete for plain finite sets."""
    mono = [tuple(sorted(b.p.table[e] for e in fib)) for fib in b.f.fibers]
    return (len(b.src), len(b.tgt)) + tuple(
        tuple(sorted(mono[k] for k in fib)) for fib in b.l.fibers
    )


@dataclass(frozen=True)
class BispanMor:
    source: Bispan
    target: Bispan
    e_map: Mor
    b_map: Mor


def validate_bispan_mor(m: BispanMor) -> Report:
    s, t, a, b = m.source, m.target, m.e_map, m.b_map
    if s.src != t.src or s.tgt != t.tgt:
        return Report(False, "bispans have different ends")
    if (a.dom, a.cod) != (s.E, t.E) or (b.dom, b.cod) != (s.B, t.B):
        return Report(False, "vertical maps have the wrong domain or codomain")
    if compose(t.p, a).table != s.p.table:
        return Report(False, "left triangle does not commute")
    if compose(t.f, a).table != compose(b, s.f).table:
        return Report(False, "middle square does not commute")
    if compose(t.l, b).table != s.l.table:
        return Report(False, "right triangle does not commute")
    sq = pullback(b, t.f)  # pairs (b, e')
    into = [sq.lookup.get((s.f.table[e], a.table[e])) for e in range(len(s.E))]
    if len(sq.apex) != len(s.E) or len(set(into)) != len(into):
        return Report(False, "middle square is not cartesian")
    return Report(True)


def identity_bispan_mor(b: Bispan) -> BispanMor:
    return BispanMor(b, b, identity(b.E), identity(b.B))


def bispan_isomorphic(a: Bispan, b: Bispan, budget: int = 200_000) -> BispanMor | None:
    """An invertible 2-cell ``a => b``, or ``None``.

    Plain sets: decided by :func:`canonical_form`. G-sets: bounded search,
    raising :class:`SearchLimitExceeded` when the budget runs out.
    """
    if a.src != b.src or a.tgt != b.tgt or len(a.E) != len(b.E) or len(a.B) != len(b.B):
        return None
    if canonical_form(a) != canonical_form(b):
        return None
    mono_a = [tuple(sorted(a.p.table[e] for e in fib)) for fib in a.f.fibers]
    mono_b = [tuple(sorted(b.p.table[e] for e in fib)) for fib in b.f.fibers]
    if a.B.group is None:
        bt = [None] * len(a.B)
        for fa, fb in zip(a.l.fibers, b.l.fibers):
            for x, y in zip(sorted(fa, key=lambda k: mono_a[k]), sorted(fb, key=lambda k: mono_b[k])):
                bt[x] = y
        et = [None] * len(a.E)
        for x in range(len(a.B)):
            ea = sorted(a.f.fibers[x], key=lambda e: a.p.table[e])
            eb = sorted(b.f.fibers[bt[x]], key=lambda e: b.p.table[e])
            for u, v in zip(ea, eb):
                et[u] = v
        return BispanMor(a, b, Mor(a.E, b.E, tuple(et), check=False), Mor(a.B, b.B, tuple(bt), check=False))
    nodes = [budget]
    for bt in equivariant_bijections(
        a.B, b.B,
        lambda k: (a.l.table[k], mono_a[k]),
        lambda k: (b.l.table[k], mono_b[k]),
        budget,
    ):
        for et in equivariant_bijections(
            a.E, b.E,
            lambda e: (a.p.table[e], bt[a.f.table[e]]),
            lambda e: (b.p.table[e], b.f.table[e]),
            budget,
        ):
            return BispanMor(a, b, Mor(a.E, b.E, et), Mor(a.B, b.B, bt))
        nodes[0] -= 1
        if nodes[0] <= 0:
            raise SearchLimitExceeded("bispan isomorphism search exceeded its budget")
    return None


def is_invertible_bispan(b: Bispan) -> bool:
    """Iso to a bispan ``x <- y = y = y`` with ``p`` a bijection, i.e. ``f``
    and ``l`` bijections and ``p`` a bijection."""
    return b.p.is_bijection and b.f.is_bijection and b.l.is_bijection


# coproducts


def coproduct_bispans(a: Bispan, b: Bispan) -> Bispan:
    src = coproduct(a.src, b.src)[0]
    tgt = coproduct(a.tgt, b.tgt)[0]
    p, f, l = coproduct_mor(a.p, b.p), coproduct_mor(a.f, b.f), coproduct_mor(a.l, b.l)
    return Bispan(src, tgt, p.dom, f.cod, p, f, l)


def empty_bispan(group=None) -> Bispan:
    from .context import empty

    return identity_bispan(empty(group))


# pasting


def _diagram(l: Mor, f: Mor, g: Mor, eps_of) -> DistributivityDiagram:
    pb = pullback(f, g)
    eps = Mor(pb.apex, l.dom, tuple(eps_of(j, m) for j, m in pb.pairs), check=False)
    return DistributivityDiagram(l, f, g, pb, eps)


def paste_distributivity(l1: Mor, l2: Mor, f: Mor) -> DistributivityDiagram:
    """Diagram for ``(l2 . l1, f)`` pasted from the diagram for ``(l2, f)``
    and the diagram for ``l1`` (pulled back along its ``eps``) along ``f~``."""
    d2 = dependent_product(l2, f)
    xb = pullback(l1, d2.eps)  # pairs (x, k2)
    d1 = dependent_product(xb.proj_f, d2.f_tilde)
    g = compose(d2.g, d1.g)

    def eps_of(j, m1):
        k2 = d2.pb.lookup[(j, d1.g.table[m1])]
        return xb.proj_g.table[d1.eps.table[d1.pb.lookup[(k2, m1)]]]

    return _diagram(compose(l2, l1), f, g, eps_of)


def paste_distributivity_F(l: Mor, f1: Mor, f2: Mor) -> DistributivityDiagram:
    """Diagram for ``(l, f2 . f1)`` pasted from ``(l, f1)`` and ``(g1, f2)``."""
    d1 = dependent_product(l, f1)
    d2 = dependent_product(d1.g, f2)

    def eps_of(j, m2):
        m1 = d2.eps.table[d2.pb.lookup[(f1.table[j], m2)]]
        return d1.eps.table[d1.pb.lookup[(j, m1)]]

    return _diagram(l, compose(f2, f1), d2.g, eps_of)


def check_pasting(l1: Mor, l2: Mor, f: Mor, probe_bound: int = 3) -> Report:
    d = paste_distributivity(l1, l2, f)
    rep = check_universal_property(d, probe_bound)
    if not rep:
        return rep
    direct = dependent_product(compose(l2, l1), f)
    if sorted(direct.g.table) != sorted(d.g.table):
        return Report(False, "pasted w differs from the direct dependent product over z")
    return rep


# the fold construction


@dataclass(frozen=True)
class FoldDistributivityData:
    p: Mor  # x -> y
    diagram: DistributivityDiagram  # for fold: x + x -> x, then p
    s0: Mor  # y -> w, all sections to the left copy
    s1: Mor  # y -> w, all to the right copy
    c: Obj  # the remaining sections
    c_incl: Mor  # c -> w
    k: Mor  # c -> y
    c_L: Obj
    c_R: Obj
    eps_L: Mor  # c_L -> x
    eps_R: Mor  # c_R -> x
    pt_L: Mor  # c_L -> c
    pt_R: Mor  # c_R -> c
    splitting: Mor  # y + c + y -> w

    @property
    def w(self) -> Obj:
        return self.diagram.w


def fold_distributivity(p: Mor) -> FoldDistributivityData:
    if not p.F:
        raise CompositionError("p must carry the F flag")
    x, y = p.dom, p.cod
    d = dependent_product(fold(x), p)
    w = d.w
    tags = [tuple(tag for tag, _ in sec) for _, sec in w.carrier]
    s0 = [None] * len(y)
    s1 = [None] * len(y)
    rest = []
    for m, t in enumerate(tags):
        z = d.g.table[m]
        if all(v == 0 for v in t):
            s0[z] = m
        if all(v == 1 for v in t):
            s1[z] = m
        if not (all(v == 0 for v in t) or all(v == 1 for v in t)):
            rest.append(m)
    s0m = Mor(y, w, tuple(s0))
    s1m = Mor(y, w, tuple(s1))
    c, c_incl = subobject(w, rest)
    k = compose(d.g, c_incl)
    pc = pullback(p, k)  # pairs (x, c)
    side = [d.eps.table[d.pb.lookup[(a, c_incl.table[m])]] >= len(x) for a, m in pc.pairs]
    c_L, inc_L = subobject(pc.apex, [i for i, s in enumerate(side) if not s])
    c_R, inc_R = subobject(pc.apex, [i for i, s in enumerate(side) if s])
    eps_L, eps_R = compose(pc.proj_g, inc_L), compose(pc.proj_g, inc_R)
    pt_L, pt_R = compose(pc.proj_f, inc_L), compose(pc.proj_f, inc_R)
    yc, _, _ = coproduct(y, c)
    ycy, _, _ = coproduct(yc, y)
    splitting = Mor(ycy, w, tuple(s0) + c_incl.table + tuple(s1), check=False)
    return FoldDistributivityData(p, d, s0m, s1m, c, c_incl, k, c_L, c_R, eps_L, eps_R, pt_L, pt_R, splitting)


def check_fold_structure(data: FoldDistributivityData, over=None) -> Report:
    """Section counts ``|w_z| = 2^n``, ``|c_z| = 2^n - 2`` for ``n = |p^-1(z)|``
    at every ``z`` in ``over`` (default: all of ``y``), the splitting of
    ``w``, and absence of degree 0 in ``p~_L`` and ``p~_R`` when ``p`` has
    no empty fibers."""
    p = data.p
    zs = range(len(p.cod)) if over is None else over
    wf, kf = data.diagram.g.fibers, data.k.fibers
    for z in zs:
        n = len(p.fibers[z])
        if len(wf[z]) != 2 ** n:
            return Report(False, f"|w_z| = {len(wf[z])}, expected 2^{n}", z)
        if len(kf[z]) != 2 ** n - 2:
            return Report(False, f"|c_z| = {len(kf[z])}, expected 2^{n} - 2", z)
    if not data.splitting.is_bijection:
        return Report(False, "y + c + y -> w is not a bijection")
    if all(p.fibers):
        for name, pt in (("L", data.pt_L), ("R", data.pt_R)):
            if any(len(fib) == 0 for fib in pt.fibers):
                return Report(False, f"p~_{name} has a degree-0 part")
    return Report(True, cases=len(zs))
