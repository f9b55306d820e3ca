"""Ambient categories of finite sets and finite G-sets.

Both concrete instances share one representation: an :class:`Obj` is an
ordered carrier of hashable tokens, optionally equipped with a group and
an action table, and a :class:`Mor` is an index table between carriers.
A finite set is simply an object without a group.

Every construction here (pullbacks, coproducts, dependent products) is
deterministic: carriers are enumerated in lexicographic order of the
indices they are built from, so equal inputs give equal outputs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence


class CompositionError(ValueError):
    """Morphisms or diagrams that do not fit together."""


@dataclass(frozen=True)
class Obj:
    """A finite set, or a finite G-set when ``group`` is given.

    ``action[g][i]`` is the index of ``g . carrier[i]``.
    """

    carrier: tuple
    group: object = None
    action: tuple | None = None
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        if self.action is not None:
            object.__setattr__(self, "action", tuple(tuple(row) for row in self.action))
        if not self.check:
            return
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier tokens must be pairwise distinct")
        if (self.group is None) != (self.action is None):
            raise ValueError("a G-set needs both a group and an action")
        if self.group is not None:
            _validate_action(self.group, self.action, len(self.carrier))

    def __len__(self):
        return len(self.carrier)

    @cached_property
    def index(self) -> dict:
        return {t: i for i, t in enumerate(self.carrier)}

    @property
    def is_gset(self) -> bool:
        return self.group is not None

    def act(self, g: int, i: int) -> int:
        if self.action is None:
            return i
        return self.action[g][i]

    def __repr__(self):
        if self.group is None:
            return f"Obj({len(self)})"
        return f"Obj({len(self)}, group={getattr(self.group, 'name', '?')})"


def _validate_action(group, action, n):
    if len(action) != group.order:
        raise ValueError("action table must have one row per group element")
    rng = list(range(n))
    for row in action:
        if len(row) != n or sorted(row) != rng:
            raise ValueError("each group element must act by a permutation")
    if list(action[group.identity]) != rng:
        raise ValueError("the identity must act trivially")
    for g in range(group.order):
        for h in range(group.order):
            gh = action[group.mul[g][h]]
            ag, ah = action[g], action[h]
            if any(gh[i] != ag[ah[i]] for i in rng):
                raise ValueError("action does not respect multiplication")


def finite_set(n_or_tokens) -> Obj:
    if isinstance(n_or_tokens, int):
        return Obj(tuple(range(n_or_tokens)))
    return Obj(tuple(n_or_tokens))


def trivial_gset(n_or_tokens, group) -> Obj:
    """A set with trivial action (points fixed by all of ``group``)."""
    base = finite_set(n_or_tokens)
    if group is None:
        return base
    row = tuple(range(len(base)))
    return Obj(base.carrier, group, (row,) * group.order)


@dataclass(frozen=True)
class Mor:
    """A map of finite (G-)sets with explicit element-level assignment.

    ``F`` and ``L`` record membership in the multiplicative and additive
    morphism classes. In both concrete instances every map is in both.
    """

    dom: Obj
    cod: Obj
    table: tuple
    F: bool = True
    L: bool = True
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if not self.check:
            return
        if len(self.table) != len(self.dom):
            raise CompositionError("assignment must be total on the domain")
        n = len(self.cod)
        if any(not (0 <= j < n) for j in self.table):
            raise CompositionError("assignment must land in the codomain")
        if self.dom.group != self.cod.group:
            raise CompositionError("domain and codomain live over different groups")
        if self.dom.group is not None:
            for g in range(self.dom.group.order):
                if any(self.table[self.dom.act(g, i)] != self.cod.act(g, self.table[i])
                       for i in range(len(self.dom))):
                    raise CompositionError("map is not equivariant")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __len__(self):
        return len(self.table)

    @cached_property
    def fibers(self) -> tuple:
        out = [[] for _ in range(len(self.cod))]
        for i, j in enumerate(self.table):
            out[j].append(i)
        return tuple(tuple(f) for f in out)

    def fiber(self, j: int) -> tuple:
        return self.fibers[j]

    @property
    def is_bijection(self) -> bool:
        return len(self.dom) == len(self.cod) and len(set(self.table)) == len(self.table)

    def __repr__(self):
        flags = ("F" if self.F else "") + ("L" if self.L else "")
        return f"Mor({len(self.dom)}->{len(self.cod)}, {list(self.table)}, {flags or '-'})"


def identity(x: Obj) -> Mor:
    return Mor(x, x, tuple(range(len(x))), True, True, check=False)


def compose(g: Mor, f: Mor) -> Mor:
    """``g . f``; class flags are kept only when both factors carry them."""
    if f.cod != g.dom:
        raise CompositionError(f"cannot compose {g!r} after {f!r}: codomain/domain mismatch")
    table = tuple(g.table[j] for j in f.table)
    return Mor(f.dom, g.cod, table, f.F and g.F, f.L and g.L, check=False)


def compose_all(*maps: Mor) -> Mor:
    """Right-to-left composite of several maps."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


# pullbacks


@dataclass(frozen=True)
class PullbackSquare:
    """Pullback of ``f: x -> y`` and ``g: z -> y``.

    ``pairs[k] = (a, b)`` identifies apex element ``k`` with the
    compatible pair ``f(a) = g(b)``. ``proj_f`` (apex -> z) is the base
    change of ``f`` and ``proj_g`` (apex -> x) the base change of ``g``.
    """

    f: Mor
    g: Mor
    apex: Obj
    proj_f: Mor
    proj_g: Mor
    pairs: tuple

    @cached_property
    def lookup(self) -> dict:
        return {p: k for k, p in enumerate(self.pairs)}


def pullback(f: Mor, g: Mor) -> PullbackSquare:
    if f.cod != g.cod:
        raise CompositionError("pullback needs a common codomain")
    x, z = f.dom, g.dom
    gf = g.fibers
    pairs = tuple((a, b) for a in range(len(x)) for b in gf[f.table[a]])
    carrier = tuple((x.carrier[a], z.carrier[b]) for a, b in pairs)
    group, action = x.group, None
    if group is not None:
        lookup = {p: k for k, p in enumerate(pairs)}
        rows = []
        for h in range(group.order):
            xa, za = x.action[h], z.action[h]
            rows.append(tuple([lookup[(xa[a], za[b])] for a, b in pairs]))
        action = tuple(rows)
    apex = Obj(carrier, group, action, check=False)
    proj_f = Mor(apex, z, tuple(b for _, b in pairs), f.F, f.L, check=False)
    proj_g = Mor(apex, x, tuple(a for a, _ in pairs), g.F, g.L, check=False)
    return PullbackSquare(f, g, apex, proj_f, proj_g, pairs)


def base_change(f: Mor, along: Mor) -> Mor:
    """The pullback of ``f`` along ``along``, as a map to ``along.dom``."""
    return pullback(f, along).proj_f


# coproducts and sub-objects


def empty(group=None) -> Obj:
    return trivial_gset(0, group)


def point(group=None) -> Obj:
    return trivial_gset(1, group)


def coproduct(a: Obj, b: Obj) -> tuple[Obj, Mor, Mor]:
    """Disjoint union with tagged tokens ``(0, t)`` and ``(1, t)``."""
    if a.group != b.group:
        raise CompositionError("coproduct of G-sets over different groups")
    na = len(a)
    carrier = tuple((0, t) for t in a.carrier) + tuple((1, t) for t in b.carrier)
    action = None
    if a.group is not None:
        action = tuple(
            tuple(a.act(h, i) for i in range(na)) + tuple(na + b.act(h, i) for i in range(len(b)))
            for h in range(a.group.order)
        )
    s = Obj(carrier, a.group, action, check=False)
    inl = Mor(a, s, tuple(range(na)), check=False)
    inr = Mor(b, s, tuple(range(na, na + len(b))), check=False)
    return s, inl, inr


def coproduct_many(objs: Sequence[Obj], group=None) -> tuple[Obj, list[Mor]]:
    """Iterated binary coproduct, re-tagged as ``(k, t)`` for the k-th summand."""
    carrier, rows, offsets = [], None, []
    if objs:
        group = objs[0].group
    if group is not None:
        rows = [[] for _ in range(group.order)]
    off = 0
    for k, o in enumerate(objs):
        if o.group != group:
            raise CompositionError("coproduct of G-sets over different groups")
        offsets.append(off)
        carrier.extend((k, t) for t in o.carrier)
        if group is not None:
            for h in range(group.order):
                rows[h].extend(off + o.act(h, i) for i in range(len(o)))
        off += len(o)
    s = Obj(tuple(carrier), group, None if rows is None else tuple(map(tuple, rows)), check=False)
    injs = [Mor(o, s, tuple(range(offsets[k], offsets[k] + len(o))), check=False)
            for k, o in enumerate(objs)]
    return s, injs


def coproduct_mor(f: Mor, g: Mor) -> Mor:
    """``f + g`` between the coproducts of domains and codomains."""
    dom, _, _ = coproduct(f.dom, g.dom)
    cod, _, _ = coproduct(f.cod, g.cod)
    n = len(f.cod)
    table = f.table + tuple(n + j for j in g.table)
    return Mor(dom, cod, table, f.F and g.F, f.L and g.L, check=False)


def copair(f: Mor, g: Mor) -> Mor:
    """``[f, g]: dom f + dom g -> cod``."""
    if f.cod != g.cod:
        raise CompositionError("copairing needs a common codomain")
    dom, _, _ = coproduct(f.dom, g.dom)
    return Mor(dom, f.cod, f.table + g.table, f.F and g.F, f.L and g.L, check=False)


def fold(x: Obj) -> Mor:
    """The fold map ``x + x -> x``."""
    return copair(identity(x), identity(x))


def subobject(x: Obj, indices) -> tuple[Obj, Mor]:
    """Sub-object on ``indices`` (kept in carrier order) and its inclusion."""
    idx = sorted(set(indices))
    pos = {i: k for k, i in enumerate(idx)}
    action = None
    if x.group is not None:
        try:
            action = tuple(tuple(pos[x.act(h, i)] for i in idx) for h in range(x.group.order))
        except KeyError:
            raise CompositionError("sub-object is not stable under the action") from None
    sub = Obj(tuple(x.carrier[i] for i in idx), x.group, action, check=False)
    return sub, Mor(sub, x, tuple(idx), check=False)


def restrict_over(f: Mor, incl: Mor) -> tuple[Mor, Mor]:
    """Restriction of ``f`` over a sub-object ``incl`` of its codomain.

    Returns ``(f_restricted, incl_dom)`` where ``incl_dom`` includes the
    preimage into ``f.dom``. Tokens are kept, unlike :func:`pullback`.
    """
    if incl.cod != f.cod:
        raise CompositionError("inclusion must land in the codomain")
    pos = {j: k for k, j in enumerate(incl.table)}
    dom_idx = [i for i in range(len(f.dom)) if f.table[i] in pos]
    sub, inc = subobject(f.dom, dom_idx)
    table = tuple(pos[f.table[i]] for i in inc.table)
    return Mor(sub, incl.dom, table, f.F, f.L, check=False), inc


# orbits (trivial for plain sets)


def orbits(x: Obj) -> list[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """``(representative, orbit, stabilizer elements)`` in first-appearance order."""
    if x.group is None:
        return [(i, (i,), (0,)) for i in range(len(x))]
    seen, out = set(), []
    order = x.group.order
    for i in range(len(x)):
        if i in seen:
            continue
        orb = sorted({x.action[g][i] for g in range(order)})
        seen.update(orb)
        stab = tuple(g for g in range(order) if x.action[g][i] == i)
        out.append((i, tuple(orb), stab))
    return out


def equivariant_lifts(dom: Obj, allowed: Sequence[Sequence[int]], cod: Obj) -> Iterator[tuple]:
    """All equivariant tables ``a: dom -> cod`` with ``a[i] in allowed[i]``.

    Determined orbit by orbit: the representative's image must be fixed by
    its stabilizer, and then every translate must stay allowed.
    """
    choices = []
    allowed_sets = [set(s) for s in allowed]
    for rep, orb, stab in orbits(dom):
        opts = []
        for c in allowed[rep]:
            if any(cod.act(h, c) != c for h in stab):
                continue
            if dom.group is not None and any(
                cod.act(g, c) not in allowed_sets[dom.act(g, rep)] for g in range(dom.group.order)
            ):
                continue
            opts.append(c)
        choices.append((rep, opts))
    n = len(dom)
    for pick in itertools.product(*(opts for _, opts in choices)):
        table = [None] * n
        for (rep, _), c in zip(choices, pick):
            if dom.group is None:
                table[rep] = c
            else:
                for g in range(dom.group.order):
                    table[dom.act(g, rep)] = cod.act(g, c)
        yield tuple(table)


def count_equivariant_lifts(dom: Obj, allowed: Sequence[Sequence[int]], cod: Obj) -> int:
    total = 1
    allowed_sets = [set(s) for s in allowed]
    for rep, _, stab in orbits(dom):
        n = 0
        for c in allowed[rep]:
            if any(cod.act(h, c) != c for h in stab):
                continue
            if dom.group is not None and any(
                cod.act(g, c) not in allowed_sets[dom.act(g, rep)] for g in range(dom.group.order)
            ):
                continue
            n += 1
        total *= n
        if total == 0:
            return 0
    return total


def are_isomorphic(a: Obj, b: Obj) -> Mor | None:
    """A structure-preserving bijection ``a -> b`` if one exists."""
    if a.group is not None or b.group is not None:
        from .gset import gset_isomorphic

        return gset_isomorphic(a, b)
    if len(a) != len(b):
        return None
    return Mor(a, b, tuple(range(len(a))), check=False)


# distributivity diagrams


@dataclass(frozen=True)
class DistributivityDiagram:
    """The diagram ``x <-eps- w x_z y -f~-> w``, ``g: w -> z`` over ``x -l-> y -f-> z``.

    ``pb`` is the pullback of ``f`` and ``g``: its apex enumerates pairs
    ``(y_j, w_m)``, ``pb.proj_f`` is ``f_tilde`` and ``pb.proj_g`` is ``g_tilde``.
    """

    l: Mor
    f: Mor
    g: Mor
    pb: PullbackSquare
    eps: Mor

    @property
    def w(self) -> Obj:
        return self.g.dom

    @property
    def f_tilde(self) -> Mor:
        return self.pb.proj_f

    @property
    def g_tilde(self) -> Mor:
        return self.pb.proj_g


def dependent_product(l: Mor, f: Mor) -> DistributivityDiagram:
    """Distributivity diagram for ``l`` then ``f``: ``w_z`` is the set of
    sections of ``l`` over ``f^-1(z)``, enumerated in lexicographic order.

    For G-sets the action on sections is ``(g.s)(y) = g.s(g^-1 y)``.
    """
    if not l.L:
        raise CompositionError("the additive leg l must carry the L flag")
    if not f.F:
        raise CompositionError("the multiplicative leg f must carry the F flag")
    if l.cod != f.dom:
        raise CompositionError("l and f are not composable")
    x, y, z = l.dom, l.cod, f.cod
    lf, ff = l.fibers, f.fibers
    tokens, over, sections = [], [], []
    for k in range(len(z)):
        ys = ff[k]
        for choice in itertools.product(*(lf[j] for j in ys)):
            tokens.append((z.carrier[k], tuple(x.carrier[i] for i in choice)))
            over.append(k)
            sections.append(choice)
    group, action = z.group, None
    if group is not None:
        lookup = {(over[m], sections[m]): m for m in range(len(over))}
        pos = [{j: t for t, j in enumerate(ff[k])} for k in range(len(z))]
        rows = []
        for h in range(group.order):
            xa, ya, za = x.action[h], y.action[group.inv[h]], z.action[h]
            moved = [[ya[j2] for j2 in ff[za[k]]] for k in range(len(z))]
            row = []
            for m in range(len(over)):
                k = over[m]
                sec, p = sections[m], pos[k]
                new = tuple([xa[sec[p[j]]] for j in moved[k]])
                row.append(lookup[(za[k], new)])
            rows.append(tuple(row))
        action = tuple(rows)
    w = Obj(tuple(tokens), group, action, check=False)
    g = Mor(w, z, tuple(over), l.F, True, check=False)
    pb = pullback(f, g)
    pos = [{j: t for t, j in enumerate(ff[k])} for k in range(len(z))]
    eps_table = tuple(sections[m][pos[over[m]][j]] for j, m in pb.pairs)
    eps = Mor(pb.apex, x, eps_table, check=False)
    return DistributivityDiagram(l, f, g, pb, eps)


@dataclass
class Report:
    """Outcome of a verification: ``ok`` plus the first failure, if any."""

    ok: bool
    reason: str = ""
    witness: object = None
    cases: int = 0

    def __bool__(self):
        return self.ok


def _probe_maps(z: Obj, probe_bound: int) -> Iterator[Mor]:
    from .generate import objects_up_to_iso, maps_up_to_dom_iso

    yield identity(z)
    for u in objects_up_to_iso(z.group, probe_bound):
        yield from maps_up_to_dom_iso(u, z)


def check_structure(d: DistributivityDiagram) -> Report:
    """Flags, commutativity and cartesianness of a distributivity diagram."""
    l, f, g, pb, eps = d.l, d.f, d.g, d.pb, d.eps
    if not (l.L and f.F and g.L):
        return Report(False, "missing class flag on l, f or g")
    if l.cod != f.dom or g.cod != f.cod or pb.f != f or pb.g != g:
        return Report(False, "diagram legs do not match")
    if eps.dom != pb.apex or eps.cod != l.dom:
        return Report(False, "eps has the wrong domain or codomain")
    expected = {(a, b) for a in range(len(f.dom)) for b in g.fibers[f.table[a]]}
    got = list(zip(pb.proj_g.table, pb.proj_f.table))
    if len(set(got)) != len(got) or set(got) != expected:
        return Report(False, "square is not cartesian")
    if compose(l, eps).table != pb.proj_g.table:
        return Report(False, "l . eps differs from g_tilde")
    return Report(True)


def hom_set_map_report(d: DistributivityDiagram, phi: Mor) -> Report:
    """Check that ``Hom_/z(phi, g) -> Hom_/y(f* phi, l)`` is a bijection."""
    f, g, l = d.f, d.g, d.l
    u, w, x = phi.dom, g.dom, l.dom
    P = pullback(f, phi)  # pairs (y_j, u_i)
    to_y = P.proj_g
    # Hom_/z(phi, g): equivariant a: u -> w with g a = phi
    source = list(equivariant_lifts(u, [g.fibers[phi.table[i]] for i in range(len(u))], w))
    target_size = count_equivariant_lifts(P.apex, [l.fibers[to_y.table[k]] for k in range(len(P.apex))], x)
    if len(source) != target_size:
        return Report(False, f"hom-set sizes differ: {len(source)} vs {target_size}", phi)
    images = set()
    lookup = d.pb.lookup
    for a in source:
        b = tuple(d.eps.table[lookup[(j, a[i])]] for j, i in P.pairs)
        if any(l.table[b[k]] != to_y.table[k] for k in range(len(b))):
            return Report(False, "image does not lie over y", phi)
        images.add(b)
    if len(images) != len(source):
        return Report(False, "hom-set map is not injective", phi)
    return Report(True)


def check_universal_property(d: DistributivityDiagram, probe_bound: int = 3) -> Report:
    """Exhaustive check of the universal property of ``d``.

    Probes are ``id_z`` first, then every ``phi: u -> z`` with
    ``|u| <= probe_bound`` up to isomorphism of ``u``.
    """
    rep = check_structure(d)
    if not rep:
        return rep
    n = 0
    for phi in _probe_maps(d.f.cod, probe_bound):
        n += 1
        r = hom_set_map_report(d, phi)
        if not r:
            r.cases = n
            return r
    return Report(True, cases=n)


def base_change_diagram(d: DistributivityDiagram, zeta: Mor) -> DistributivityDiagram:
    """Pull ``d`` back along ``zeta: z' -> z``, giving a diagram for ``(l', f')``."""
    if zeta.cod != d.f.cod:
        raise CompositionError("zeta must land in z")
    ysq = pullback(d.f, zeta)  # pairs (y, z')
    f2, eta = ysq.proj_f, ysq.proj_g
    xsq = pullback(d.l, eta)  # pairs (x, y')
    l2 = xsq.proj_f
    wsq = pullback(d.g, zeta)  # pairs (w, z')
    g2, omega = wsq.proj_f, wsq.proj_g
    pb2 = pullback(f2, g2)  # pairs (y', w')
    eps = []
    for yp, wp in pb2.pairs:
        xi = d.eps.table[d.pb.lookup[(eta.table[yp], omega.table[wp])]]
        eps.append(xsq.lookup[(xi, yp)])
    return DistributivityDiagram(l2, f2, g2, pb2, Mor(pb2.apex, l2.dom, tuple(eps), check=False))


def coproduct_diagrams(d1: DistributivityDiagram, d2: DistributivityDiagram) -> DistributivityDiagram:
    """Component-wise coproduct of two distributivity diagrams."""
    l = coproduct_mor(d1.l, d2.l)
    f = coproduct_mor(d1.f, d2.f)
    g = coproduct_mor(d1.g, d2.g)
    pb = pullback(f, g)
    ny, nw, nx = len(d1.f.dom), len(d1.w), len(d1.l.dom)
    eps = []
    for j, m in pb.pairs:
        if j < ny:
            eps.append(d1.eps.table[d1.pb.lookup[(j, m)]])
        else:
            eps.append(nx + d2.eps.table[d2.pb.lookup[(j - ny, m - nw)]])
    return DistributivityDiagram(l, f, g, pb, Mor(pb.apex, l.dom, tuple(eps), check=False))


def coproduct_comparison(d1: DistributivityDiagram, d2: DistributivityDiagram) -> Mor:
    """The natural map ``f1_* l1 + f2_* l2 -> (f1 + f2)_* (l1 + l2)`` on carriers."""
    direct = dependent_product(coproduct_mor(d1.l, d2.l), coproduct_mor(d1.f, d2.f))
    glued = coproduct_diagrams(d1, d2)
    idx = direct.w.index
    table = []
    for tag, (zt, xs) in glued.w.carrier:
        table.append(idx[((tag, zt), tuple((tag, t) for t in xs))])
    return Mor(glued.w, direct.w, tuple(table), check=False)


class SearchLimitExceeded(RuntimeError):
    """A bounded isomorphism search ran out of budget: the answer is unknown."""


def equivariant_bijections(a: Obj, b: Obj, key_a, key_b, budget: int = 200_000) -> Iterator[tuple]:
    """Equivariant bijections ``a -> b`` matching ``key_a(i) == key_b(t)``.

    Keys must be equivariant (built from equivariant maps), so they are
    compared at orbit representatives only. Raises
    :class:`SearchLimitExceeded` after ``budget`` search nodes.
    """
    if len(a) != len(b) or a.group != b.group:
        return
    a_orbs = orbits(a)
    b_orbs = orbits(b)
    b_orbit_of = {}
    for k, (_, orb, _) in enumerate(b_orbs):
        for t in orb:
            b_orbit_of[t] = k
    b_stab = {}
    for rep, orb, stab in b_orbs:
        for t in orb:
            b_stab[t] = frozenset(h for h in range(a.group.order) if b.act(h, t) == t) if a.group else frozenset([0])
    cands = []
    for rep, orb, stab in a_orbs:
        s, k = frozenset(stab), key_a(rep)
        cands.append([t for t in range(len(b)) if b_stab[t] == s and key_b(t) == k
                      and len(b_orbs[b_orbit_of[t]][1]) == len(orb)])
    order = sorted(range(len(a_orbs)), key=lambda i: len(cands[i]))
    used = set()
    table = [None] * len(a)
    nodes = [0]

    def rec(pos):
        if pos == len(order):
            yield tuple(table)
            return
        i = order[pos]
        rep = a_orbs[i][0]
        for t in cands[i]:
            nodes[0] += 1
            if nodes[0] > budget:
                raise SearchLimitExceeded(f"isomorphism search exceeded {budget} nodes")
            ob = b_orbit_of[t]
            if ob in used:
                continue
            used.add(ob)
            if a.group is None:
                table[rep] = t
            else:
                for g in range(a.group.order):
                    table[a.act(g, rep)] = b.act(g, t)
            yield from rec(pos + 1)
            used.discard(ob)

    yield from rec(0)
