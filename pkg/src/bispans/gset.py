"""Finite groups given by multiplication tables, and finite G-sets.

Groups are small (at most a few dozen elements), so everything here is
brute force: subgroups are found by closure, conjugacy is tested against
every group element.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .context import (
    CompositionError,
    DistributivityDiagram,
    Mor,
    Obj,
    PullbackSquare,
    coproduct_many,
    dependent_product,
    orbits,
    pullback,
    subobject,
)

MAX_ORDER = 48


class Group:
    """A finite group on ``range(order)`` with ``mul[a][b] = a*b``."""

    def __init__(self, mul, name=None, perms=None, generators=None, parent=None):
        self.mul = tuple(tuple(r) for r in mul)
        self.order = n = len(self.mul)
        if n == 0 or n > MAX_ORDER:
            raise ValueError(f"group order must be between 1 and {MAX_ORDER}")
        self.name = name or f"G{n}"
        self.perms = perms
        self.generators = generators  # indices of generating elements
        self._bfs_parent = parent  # element -> (generator position, predecessor)
        ids = [e for e in range(n) if all(self.mul[e][g] == g and self.mul[g][e] == g for g in range(n))]
        if len(ids) != 1:
            raise ValueError("multiplication table has no unique identity")
        self.identity = e = ids[0]
        inv = []
        for a in range(n):
            bs = [b for b in range(n) if self.mul[a][b] == e]
            if len(bs) != 1 or self.mul[bs[0]][a] != e:
                raise ValueError("element without a two-sided inverse")
            inv.append(bs[0])
        self.inv = tuple(inv)
        self._hash = hash(self.mul)
        m = self.mul
        for a in range(n):
            for b in range(n):
                ab = m[a][b]
                for c in range(n):
                    if m[ab][c] != m[a][m[b][c]]:
                        raise ValueError("multiplication is not associative")

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name=None) -> "Group":
        """Closure of permutation generators; ``(a*b)(i) = a[b[i]]``."""
        gens = [tuple(g) for g in gens]
        degree = len(gens[0]) if gens else 1
        if any(sorted(g) != list(range(degree)) for g in gens):
            raise ValueError("generators must be permutations of one common degree")
        ident = tuple(range(degree))
        elems, index, parent = [ident], {ident: 0}, {0: None}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for k, g in enumerate(gens):
                new = tuple(g[elems[i][p]] for p in range(degree))
                if new not in index:
                    if len(elems) >= MAX_ORDER:
                        raise ValueError(f"group order exceeds {MAX_ORDER}")
                    index[new] = len(elems)
                    parent[len(elems)] = (k, i)
                    elems.append(new)
                    queue.append(index[new])
        mul = [[index[tuple(a[b[p]] for p in range(degree))] for b in elems] for a in elems]
        gen_idx = tuple(index[g] for g in gens)
        return cls(mul, name=name, perms=tuple(elems), generators=gen_idx, parent=parent)

    def __eq__(self, other):
        return self is other or (isinstance(other, Group) and self.mul == other.mul)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    def conj(self, g: int, h: int) -> int:
        return self.mul[self.mul[g][h]][self.inv[g]]

    def expand_action(self, gen_actions: Sequence[Sequence[int]]) -> tuple:
        """Full action table from the action of each generator."""
        if self._bfs_parent is None or self.generators is None:
            raise ValueError("group was not built from generators")
        if len(gen_actions) != len(self.generators):
            raise ValueError("need one action per generator")
        size = len(gen_actions[0]) if gen_actions else 0
        table = [None] * self.order
        table[self.identity] = tuple(range(size))
        for el in range(self.order):
            if el == self.identity:
                continue
            k, prev = self._bfs_parent[el]
            a, b = gen_actions[k], table[prev]
            table[el] = tuple(a[b[i]] for i in range(size))
        return tuple(table)

    def closure(self, elements) -> "Subgroup":
        members = {self.identity}
        frontier = list(set(elements))
        gens = list(set(elements))
        members.update(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for b in gens:
                    c = self.mul[a][b]
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
            frontier = nxt
        return Subgroup(self, frozenset(members))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))

    @cached_property
    def subgroups(self) -> tuple:
        """All subgroups, by closure of (known subgroup + one element)."""
        found = {self.trivial.members: self.trivial}
        queue = deque([self.trivial])
        while queue:
            H = queue.popleft()
            for g in range(self.order):
                if g in H.members:
                    continue
                K = self.closure(set(H.members) | {g})
                if K.members not in found:
                    found[K.members] = K
                    queue.append(K)
        return tuple(sorted(found.values(), key=Subgroup.sort_key))

    @cached_property
    def subgroup_classes(self) -> tuple:
        """Conjugacy classes of subgroups, each a tuple sorted by ``sort_key``."""
        classes, seen = [], set()
        for H in self.subgroups:
            if H.members in seen:
                continue
            cls = {H.conjugate(g).members for g in range(self.order)}
            seen |= cls
            classes.append(tuple(sorted((Subgroup(self, m) for m in cls), key=Subgroup.sort_key)))
        return tuple(classes)

    @cached_property
    def _class_of(self) -> dict:
        return {H.members: k for k, cls in enumerate(self.subgroup_classes) for H in cls}

    def class_index(self, H: "Subgroup") -> int:
        return self._class_of[H.members]

    def coset_space(self, H: "Subgroup") -> Obj:
        """``G/H`` on left cosets; a coset's token is its least element."""
        return _coset_data(self, H.members)[0]

    def coset_of(self, H: "Subgroup", g: int) -> int:
        """Index in ``coset_space(H)`` of the coset ``gH``."""
        return _coset_data(self, H.members)[1][g]


_COSETS: dict = {}


def _coset_data(G: Group, members: frozenset):
    key = (id(G), members)
    hit = _COSETS.get(key)
    if hit is not None and hit[2] is G:
        return hit[0], hit[1]
    coset_of, reps = [None] * G.order, []
    for a in range(G.order):
        if coset_of[a] is None:
            k = len(reps)
            reps.append(a)
            for h in members:
                coset_of[G.mul[a][h]] = k
    action = tuple(tuple(coset_of[G.mul[g][r]] for r in reps) for g in range(G.order))
    obj = Obj(tuple(reps), G, action, check=False)
    _COSETS[key] = (obj, tuple(coset_of), G)
    return obj, tuple(coset_of)


@dataclass(frozen=True)
class Subgroup:
    parent: Group = field(compare=True)
    members: frozenset

    def __post_init__(self):
        G = self.parent
        m = self.members
        if G.identity not in m:
            raise ValueError("subgroup must contain the identity")
        for a in m:
            if G.inv[a] not in m or any(G.mul[a][b] not in m for b in m):
                raise ValueError("subset is not closed under multiplication and inverses")

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def elements(self) -> tuple:
        return tuple(sorted(self.members))

    def sort_key(self):
        return (self.order, self.elements)

    def __contains__(self, g):
        return g in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def conjugate(self, g: int) -> "Subgroup":
        """``g H g^-1``."""
        return Subgroup(self.parent, frozenset(self.parent.conj(g, h) for h in self.members))

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)

    def is_conjugate(self, other: "Subgroup", within: "Subgroup | None" = None) -> bool:
        pool = range(self.parent.order) if within is None else within.elements
        return any(self.conjugate(g).members == other.members for g in pool)

    def __repr__(self):
        return f"Subgroup({subgroup_name(self)} <= {self.parent.name})"


# builtin groups


def cyclic(n: int) -> Group:
    if n == 1:
        return Group.from_permutations([[0]], name="C1")
    return Group.from_permutations([[(i + 1) % n for i in range(n)]], name=f"C{n}")


def klein() -> Group:
    return Group.from_permutations([[1, 0, 3, 2], [2, 3, 0, 1]], name="C2xC2")


def symmetric(n: int) -> Group:
    if n < 2:
        return Group.from_permutations([[0]], name="S1")
    swap = [1, 0] + list(range(2, n))
    cycle = [(i + 1) % n for i in range(n)]
    return Group.from_permutations([swap, cycle] if n > 2 else [swap], name=f"S{n}")


def dihedral(n: int) -> Group:
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return Group.from_permutations([rot, ref], name=f"D{n}")


_BUILTIN: dict = {}


def builtin_group(name: str) -> Group:
    """``C1..C12``, ``C2xC2``, ``S2..S4``, ``D3..D6``; memoized."""
    if name not in _BUILTIN:
        if name == "C2xC2":
            G = klein()
        elif name[0] == "C" and name[1:].isdigit():
            G = cyclic(int(name[1:]))
        elif name[0] == "S" and name[1:].isdigit():
            G = symmetric(int(name[1:]))
        elif name[0] == "D" and name[1:].isdigit():
            G = dihedral(int(name[1:]))
        else:
            raise KeyError(f"unknown group {name!r}")
        _BUILTIN[name] = G
    return _BUILTIN[name]


def _is_cyclic(H: Subgroup) -> bool:
    G = H.parent
    for g in H.members:
        if G.closure([g]).members == H.members:
            return True
    return False


def subgroup_name(H: Subgroup) -> str:
    """Readable name: ``e``, the group's own name, ``C<n>`` for cyclic
    subgroups, ``H<n>`` otherwise; non-conjugate namesakes get a, b, c..."""
    G = H.parent
    if H.order == 1:
        return "e"
    if H.order == G.order:
        return G.name
    names = _class_names(G)
    return names[G.class_index(H)]


_NAMES: dict = {}


def _class_names(G: Group) -> list:
    key = id(G)
    if key in _NAMES and _NAMES[key][1] is G:
        return _NAMES[key][0]
    base = []
    for cls in G.subgroup_classes:
        H = cls[0]
        if H.order == 1:
            base.append("e")
        elif H.order == G.order:
            base.append(G.name)
        elif _is_cyclic(H):
            base.append(f"C{H.order}")
        elif H.order == 4:
            base.append("C2xC2")
        elif H.order == 6:
            base.append("S3")
        else:
            base.append(f"H{H.order}")
    out = []
    for k, b in enumerate(base):
        same = [i for i, c in enumerate(base) if c == b]
        out.append(b if len(same) == 1 else b + "abcdefghijklmnop"[same.index(k)])
    _NAMES[key] = (out, G)
    return out


def parse_subgroup(G: Group, spec) -> Subgroup:
    """A subgroup from a class name (canonical representative) or from a
    list of generating permutations."""
    if isinstance(spec, Subgroup):
        return spec
    if isinstance(spec, str):
        if spec == "e":
            return G.trivial
        if spec == G.name:
            return G.whole
        names = _class_names(G)
        if spec in names:
            return G.subgroup_classes[names.index(spec)][0]
        raise KeyError(f"no subgroup named {spec!r} in {G.name}")
    if G.perms is None:
        return G.closure(spec)
    index = {p: i for i, p in enumerate(G.perms)}
    try:
        return G.closure(index[tuple(p)] for p in spec)
    except KeyError:
        raise KeyError("generator is not an element of the group") from None


# G-sets


def gset(carrier, group: Group, action) -> Obj:
    """A validated G-set from a full action table."""
    return Obj(tuple(carrier), group, action)


def gset_from_generators(carrier, group: Group, gen_actions) -> Obj:
    return Obj(tuple(carrier), group, group.expand_action(gen_actions))


def stabilizer(x: Obj, i: int) -> Subgroup:
    G = x.group
    return Subgroup(G, frozenset(g for g in range(G.order) if x.act(g, i) == i))


def orbit_decomposition(x: Obj) -> list[tuple[int, Subgroup]]:
    """``(representative, stabilizer)`` per orbit, ordered by stabilizer
    order and then by representative index."""
    out = [(rep, Subgroup(x.group, frozenset(stab))) for rep, _, stab in orbits(x)]
    return sorted(out, key=lambda t: (t[1].order, t[0]))


def orbit_of(x: Obj, i: int) -> tuple:
    return tuple(sorted({x.act(g, i) for g in range(x.group.order)}))


def quotient_map(H: Subgroup, K: Subgroup) -> Mor:
    """The projection ``G/H -> G/K`` for ``H <= K``."""
    if not H <= K:
        raise CompositionError("quotient map needs H contained in K")
    G = H.parent
    src, tgt = G.coset_space(H), G.coset_space(K)
    return Mor(src, tgt, tuple(G.coset_of(K, a) for a in src.carrier))


def conjugation_iso(K: Subgroup, g: int) -> Mor:
    """``c_g: G/K -> G/gKg^-1``, ``aK -> a g^-1 (gKg^-1)``."""
    G = K.parent
    Kg = K.conjugate(g)
    src, tgt = G.coset_space(K), G.coset_space(Kg)
    ginv = G.inv[g]
    return Mor(src, tgt, tuple(G.coset_of(Kg, G.mul[a][ginv]) for a in src.carrier))


def gset_isomorphic(a: Obj, b: Obj) -> Mor | None:
    """An equivariant bijection ``a -> b`` if the stabilizer classes of the
    orbits agree as multisets."""
    if a.group != b.group or len(a) != len(b):
        return None
    G = a.group
    if G is None:
        return Mor(a, b, tuple(range(len(a))))
    a_orbs = [(rep, stab) for rep, _, stab in orbits(a)]
    b_orbs = [(rep, stab) for rep, _, stab in orbits(b)]
    pool: dict = {}
    for rep, stab in b_orbs:
        pool.setdefault(G.class_index(Subgroup(G, frozenset(stab))), []).append(rep)
    table = [None] * len(a)
    for rep, stab in a_orbs:
        S = Subgroup(G, frozenset(stab))
        cands = pool.get(G.class_index(S))
        if not cands:
            return None
        t = cands.pop()
        # move t inside its orbit to a point with stabilizer exactly S
        target = None
        for g in range(G.order):
            u = b.act(g, t)
            if all(b.act(h, u) == u for h in S.members) and stabilizer(b, u).order == S.order:
                target = u
                break
        for g in range(G.order):
            table[a.act(g, rep)] = b.act(g, target)
    return Mor(a, b, tuple(table))


def equivariant_dependent_product(l: Mor, f: Mor) -> DistributivityDiagram:
    """Dependent product of G-maps; sections carry the conjugation action."""
    if l.dom.group is None or f.dom.group is None:
        raise CompositionError("equivariant dependent product needs G-sets")
    if l.dom.group != f.dom.group:
        raise CompositionError("maps live over different groups")
    Mor(l.dom, l.cod, l.table)  # re-validates equivariance
    Mor(f.dom, f.cod, f.table)
    return dependent_product(l, f)


def underlying(x: Obj) -> Obj:
    return Obj(x.carrier, check=False)


def underlying_map(m: Mor) -> Mor:
    return Mor(underlying(m.dom), underlying(m.cod), m.table, m.F, m.L, check=False)


# double cosets


@dataclass(frozen=True)
class DoubleCosetBlock:
    representative: int
    stabilizer: Subgroup  # H & gKg^-1
    orbit: tuple  # indices into the pullback apex


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    H: Subgroup
    K: Subgroup
    L: Subgroup
    pullback: PullbackSquare
    blocks: tuple
    model: Obj  # coproduct of G/(H & K_g) over representatives
    iso: Mor  # pullback apex -> model

    @property
    def representatives(self) -> tuple:
        return tuple(b.representative for b in self.blocks)


def double_cosets(H: Subgroup, L: Subgroup, K: Subgroup) -> list[frozenset]:
    """``H \\ L / K`` as sets, in order of least element."""
    G = L.parent
    seen, out = set(), []
    for g in L.elements:
        if g in seen:
            continue
        d = frozenset(G.mul[G.mul[h][g]][k] for h in H.members for k in K.members)
        seen |= d
        out.append(d)
    return out


def double_coset_decomposition(H: Subgroup, K: Subgroup, L: Subgroup) -> DoubleCosetDecomposition:
    """Decompose ``G/H x_{G/L} G/K`` into orbits indexed by ``H \\ L / K``."""
    if not (H <= L and K <= L):
        raise CompositionError("double coset formula needs H and K contained in L")
    G = L.parent
    pb = pullback(quotient_map(H, L), quotient_map(K, L))
    apex = pb.apex
    blocks, covered = [], set()
    for d in double_cosets(H, L, K):
        g = min(d)
        k = pb.lookup[(G.coset_of(H, G.identity), G.coset_of(K, g))]
        orb = orbit_of(apex, k)
        if covered & set(orb):
            raise AssertionError("two double cosets share an orbit")
        covered |= set(orb)
        expected = H & K.conjugate(g)
        if stabilizer(apex, k) != expected:
            raise AssertionError("orbit stabilizer differs from H & gKg^-1")
        sub, _ = subobject(apex, orb)
        if gset_isomorphic(sub, G.coset_space(expected)) is None:
            raise AssertionError("block is not isomorphic to its model orbit")
        blocks.append(DoubleCosetBlock(g, expected, orb))
    if len(covered) != len(apex):
        raise AssertionError("double cosets do not exhaust the pullback")
    model, _ = coproduct_many([G.coset_space(b.stabilizer) for b in blocks], G)
    iso = gset_isomorphic(apex, model)
    if iso is None:
        raise AssertionError("pullback is not isomorphic to the double coset model")
    return DoubleCosetDecomposition(H, K, L, pb, tuple(blocks), model, iso)
