"""Enumeration (exhaustive, up to isomorphism) and random generation of
objects, maps, spans and bispans, for probes and property tests."""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from .context import Mor, Obj, coproduct_many, equivariant_lifts, finite_set, orbits


def orbit_types(group, bound: int) -> list:
    """One canonical orbit ``G/H`` per conjugacy class with ``[G:H] <= bound``."""
    out = []
    for cls in group.subgroup_classes:
        H = cls[0]
        if group.order // H.order <= bound:
            out.append(group.coset_space(H))
    return out


def gset_from_orbits(orbs, group) -> Obj:
    x, _ = coproduct_many(list(orbs), group)
    return x


def objects_up_to_iso(group, bound: int) -> Iterator[Obj]:
    """Every object with at most ``bound`` elements, once per iso class."""
    if group is None:
        for n in range(bound + 1):
            yield finite_set(n)
        return
    types = orbit_types(group, bound)
    sizes = [len(o) for o in types]

    def rec(start, left, acc):
        yield acc
        for k in range(start, len(types)):
            if sizes[k] <= left:
                yield from rec(k, left - sizes[k], acc + [k])

    for combo in rec(0, bound, []):
        yield gset_from_orbits([types[k] for k in combo], group)


def all_maps(dom: Obj, cod: Obj) -> Iterator[Mor]:
    full = [range(len(cod))] * len(dom)
    for t in equivariant_lifts(dom, full, cod):
        yield Mor(dom, cod, t, check=False)


def maps_up_to_dom_iso(u: Obj, z: Obj) -> Iterator[Mor]:
    """One map ``u -> z`` per isomorphism class of objects over ``z``
    (with ``u`` fixed up to isomorphism).

    Plain sets: the nondecreasing tables. G-sets: each orbit is moved to a
    representative with the canonical stabilizer ``K``; its image is then a
    ``K``-fixed point of ``z`` taken up to the normalizer of ``K``, and
    orbits of one type receive a multiset of such images.
    """
    if u.group is None:
        for t in itertools.combinations_with_replacement(range(len(z)), len(u)):
            yield Mor(u, z, t, check=False)
        return
    from .gset import Subgroup

    G = u.group
    by_type: dict = {}
    for rep, orb, stab in orbits(u):
        cls = G.subgroup_classes[G.class_index(Subgroup(G, frozenset(stab)))]
        K = cls[0]
        r = next(u.act(g, rep) for g in range(G.order)
                 if all(u.act(h, u.act(g, rep)) == u.act(g, rep) for h in K.members))
        by_type.setdefault(K.members, []).append(r)
    slots = []
    for members, reps in by_type.items():
        K = Subgroup(G, members)
        normalizer = [g for g in range(G.order) if K.conjugate(g).members == members]
        fixed = [c for c in range(len(z)) if all(z.act(h, c) == c for h in members)]
        classes, seen = [], set()
        for c in fixed:
            if c not in seen:
                orb = {z.act(g, c) for g in normalizer}
                seen |= orb
                classes.append(c)
        slots.append((reps, list(itertools.combinations_with_replacement(classes, len(reps)))))
    for pick in itertools.product(*(opts for _, opts in slots)):
        table = [None] * len(u)
        for (reps, _), images in zip(slots, pick):
            for r, c in zip(reps, images):
                for g in range(G.order):
                    table[u.act(g, r)] = z.act(g, c)
        yield Mor(u, z, tuple(table), check=False)


# random generation


def random_object(rng: random.Random, group, max_size: int, min_size: int = 0) -> Obj:
    if group is None:
        return finite_set(rng.randint(min_size, max_size))
    types = orbit_types(group, max_size)
    while True:
        orbs, size = [], 0
        target = rng.randint(min_size, max_size)
        while size < target:
            fits = [o for o in types if size + len(o) <= max_size]
            if not fits:
                break
            o = rng.choice(fits)
            orbs.append(o)
            size += len(o)
        if size >= min_size:
            return gset_from_orbits(orbs, group)


def random_map(rng: random.Random, dom: Obj, cod: Obj) -> Mor | None:
    """A uniformly chosen image per orbit; ``None`` if no map exists."""
    if dom.group is None:
        if len(cod) == 0 and len(dom) > 0:
            return None
        return Mor(dom, cod, tuple(rng.randrange(len(cod)) for _ in range(len(dom))), check=False)
    table = [None] * len(dom)
    for rep, _, stab in orbits(dom):
        opts = [c for c in range(len(cod)) if all(cod.act(h, c) == c for h in stab)]
        if not opts:
            return None
        c = rng.choice(opts)
        for g in range(dom.group.order):
            table[dom.act(g, rep)] = cod.act(g, c)
    return Mor(dom, cod, tuple(table), check=False)


def random_map_into(rng: random.Random, cod: Obj, max_size: int, min_size: int = 0, tries: int = 50) -> Mor:
    """A random object over ``cod``; the empty map when nothing else fits."""
    for _ in range(tries):
        dom = random_object(rng, cod.group, max_size, min_size)
        m = random_map(rng, dom, cod)
        if m is not None:
            return m
    e = gset_from_orbits([], cod.group) if cod.group is not None else finite_set(0)
    return Mor(e, cod, (), check=False)


def random_span(rng: random.Random, src: Obj, tgt: Obj, max_size: int):
    from .span import Span

    for _ in range(100):
        apex = random_object(rng, src.group, max_size)
        back, fwd = random_map(rng, apex, src), random_map(rng, apex, tgt)
        if back is not None and fwd is not None:
            return Span(src, tgt, apex, back, fwd)
    e = gset_from_orbits([], src.group) if src.group is not None else finite_set(0)
    return Span(src, tgt, e, Mor(e, src, ()), Mor(e, tgt, ()))


def random_bispan(rng: random.Random, src: Obj, tgt: Obj, max_size: int):
    """Random ``src <- E -> B -> tgt`` with ``|E|, |B| <= max_size``."""
    from .bispan import Bispan

    l = random_map_into(rng, tgt, max_size)
    B = l.dom
    for _ in range(100):
        E = random_object(rng, src.group, max_size)
        f, p = random_map(rng, E, B), random_map(rng, E, src)
        if f is not None and p is not None:
            return Bispan(src, tgt, E, B, p, f, l)
    E = gset_from_orbits([], src.group) if src.group is not None else finite_set(0)
    return Bispan(src, tgt, E, B, Mor(E, src, ()), Mor(E, B, ()), l)


# exhaustive bispans


def finset_bispans(src: Obj, tgt: Obj, max_e: int, max_b: int) -> Iterator:
    """Every plain bispan ``src <- E -> B -> tgt`` with ``|E| <= max_e`` and
    ``|B| <= max_b``, once per isomorphism class.

    A class is a multiset of pairs ``(j, monomial)`` where the monomial is
    the multiset of ``p``-values over one fiber of ``E -> B``.
    """
    from .bispan import Bispan

    monos = [m for d in range(max_e + 1) for m in itertools.combinations_with_replacement(range(len(src)), d)]
    kinds = [(j, m) for j in range(len(tgt)) for m in monos]
    for nb in range(max_b + 1):
        for combo in itertools.combinations_with_replacement(range(len(kinds)), nb):
            if sum(len(kinds[k][1]) for k in combo) > max_e:
                continue
            p, f, l = [], [], []
            for b, k in enumerate(combo):
                j, m = kinds[k]
                l.append(j)
                for i in m:
                    p.append(i)
                    f.append(b)
            E, B = finite_set(len(p)), finite_set(nb)
            yield Bispan(src, tgt, E, B, Mor(E, src, tuple(p)), Mor(E, B, tuple(f)), Mor(B, tgt, tuple(l)))


def all_bispans(src: Obj, tgt: Obj, objects) -> Iterator:
    """Every bispan with ``E`` and ``B`` drawn from ``objects`` (any group);
    not deduplicated beyond the listed objects."""
    from .bispan import Bispan

    objects = list(objects)
    for B in objects:
        for l in all_maps(B, tgt):
            for E in objects:
                for f in all_maps(E, B):
                    for p in all_maps(E, src):
                        yield Bispan(src, tgt, E, B, p, f, l)


def bispans_up_to_iso(src: Obj, tgt: Obj, objects) -> Iterator:
    """Every bispan with ``E`` and ``B`` drawn from ``objects`` up to
    isomorphism: ``B`` over ``tgt``, then ``E`` over ``B x src``, each up to
    isomorphism of the domain. A class may appear more than once when
    ``B`` has automorphisms over ``tgt``, but none is missed."""
    from .bispan import Bispan
    from .context import compose, point, pullback

    objects = list(objects)
    pt = point(src.group)
    to_pt = Mor(src, pt, (0,) * len(src), check=False)
    for B in objects:
        for l in maps_up_to_dom_iso(B, tgt):
            sq = pullback(Mor(B, pt, (0,) * len(B), check=False), to_pt)
            for E in objects:
                for m in maps_up_to_dom_iso(E, sq.apex):
                    yield Bispan(src, tgt, E, B, compose(sq.proj_f, m), compose(sq.proj_g, m), l)
