"""Burnside semirings and the slice Tambara functor of a finite group.

A value over a G-set ``X`` is an isomorphism class of G-sets over ``X``.
Over an orbit ``G/H`` that is an isomorphism class of ``H``-sets, stored as
orbit counts per ``H``-conjugacy class of subgroups of ``H``. Restriction
is pullback, additive transfer is composition, and the norm is the
equivariant dependent product.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .bispan import Bispan
from .context import (
    CompositionError,
    Mor,
    Obj,
    Report,
    base_change,
    compose,
    coproduct_many,
    dependent_product,
)
from .gset import (
    Subgroup,
    double_cosets,
    orbit_decomposition,
    quotient_map,
    subgroup_name,
)


@lru_cache(maxsize=None)
def subgroup_classes_in(H: Subgroup) -> tuple:
    """Subgroups of ``H`` up to ``H``-conjugacy, largest first; each class
    is a tuple of member sets with its canonical representative first."""
    G = H.parent
    subs = [K for K in G.subgroups if K <= H]
    seen, classes = set(), []
    for K in sorted(subs, key=lambda K: (-K.order, K.sort_key())):
        if K.members in seen:
            continue
        cls = {K.conjugate(h).members for h in H.members}
        seen |= cls
        members = sorted((Subgroup(G, m) for m in cls), key=Subgroup.sort_key)
        classes.append(tuple(m.members for m in members))
    return tuple(classes)


def _class_in(H: Subgroup, K: Subgroup) -> int:
    for k, cls in enumerate(subgroup_classes_in(H)):
        if K.members in cls:
            return k
    raise CompositionError("subgroup is not contained in H")


@dataclass(frozen=True)
class BurnsideElement:
    """An ``H``-set up to isomorphism: ``counts[k]`` copies of ``H/K_k``."""

    H: Subgroup
    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != len(subgroup_classes_in(self.H)):
            raise ValueError("one count per conjugacy class of subgroups of H")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        if other.H != self.H:
            raise CompositionError("elements live over different orbits")
        return BurnsideElement(self.H, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __mul__(self, other: "BurnsideElement") -> "BurnsideElement":
        if other.H != self.H:
            raise CompositionError("elements live over different orbits")
        table = burnside_table(self.H)
        out = [0] * len(self.counts)
        for i, a in enumerate(self.counts):
            if a:
                for j, b in enumerate(other.counts):
                    if b:
                        for k, c in enumerate(table[i][j]):
                            out[k] += a * b * c
        return BurnsideElement(self.H, tuple(out))

    def cardinality(self) -> int:
        """Size of the underlying ``H``-set."""
        classes = subgroup_classes_in(self.H)
        return sum(c * (self.H.order // len(cls[0])) for c, cls in zip(self.counts, classes))

    def __str__(self):
        names = burnside_basis_names(self.H)
        parts = [f"{c}·{n}" for c, n in zip(self.counts, names) if c]
        return " + ".join(parts) if parts else "0"


def burnside_basis(H: Subgroup) -> tuple:
    """The orbit basis ``[H/K]``, one element per class."""
    n = len(subgroup_classes_in(H))
    return tuple(BurnsideElement(H, tuple(int(i == k) for i in range(n))) for k in range(n))


def burnside_zero(H: Subgroup) -> BurnsideElement:
    return BurnsideElement(H, (0,) * len(subgroup_classes_in(H)))


def burnside_one(H: Subgroup) -> BurnsideElement:
    return burnside_basis(H)[0]  # [H/H]


def burnside_basis_names(H: Subgroup) -> tuple:
    G = H.parent
    hn = subgroup_name(H)
    return tuple(f"[{hn}/{subgroup_name(Subgroup(G, cls[0]))}]" for cls in subgroup_classes_in(H))


def burnside_from_names(H: Subgroup, terms: dict) -> BurnsideElement:
    names = burnside_basis_names(H)
    counts = [0] * len(names)
    for name, c in terms.items():
        if name not in names:
            raise KeyError(f"{name} is not a basis element over {subgroup_name(H)}")
        counts[names.index(name)] += c
    return BurnsideElement(H, tuple(counts))


@lru_cache(maxsize=None)
def burnside_table(H: Subgroup) -> tuple:
    """``table[i][j]`` = counts of ``[H/K_i] x [H/K_j]``, by fiber product over ``G/H``."""
    basis = burnside_basis(H)
    orbit = H.parent.coset_space(H)
    maps = [realize(SliceValue(orbit, (b,))) for b in basis]
    return tuple(
        tuple(slice_value(_fiber_product(maps[i], maps[j])).parts[0].counts for j in range(len(basis)))
        for i in range(len(basis))
    )


def _fiber_product(a: Mor, b: Mor) -> Mor:
    from .context import pullback

    sq = pullback(a, b)
    return compose(a, sq.proj_g)


# values over arbitrary G-sets


@dataclass(frozen=True)
class SliceValue:
    """A G-set over ``base``, up to isomorphism: one Burnside element per
    orbit of ``base`` (orbits in :func:`orbit_decomposition` order)."""

    base: Obj
    parts: tuple

    def __post_init__(self):
        orbs = orbit_decomposition(self.base)
        if len(orbs) != len(self.parts):
            raise ValueError("one Burnside element per orbit of the base")
        for (_, H), part in zip(orbs, self.parts):
            if part.H != H:
                raise ValueError("Burnside element lives over the wrong stabilizer")

    def __add__(self, other: "SliceValue") -> "SliceValue":
        self._same_base(other)
        return SliceValue(self.base, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __mul__(self, other: "SliceValue") -> "SliceValue":
        self._same_base(other)
        return SliceValue(self.base, tuple(a * b for a, b in zip(self.parts, other.parts)))

    def _same_base(self, other):
        if other.base != self.base:
            raise CompositionError("values live over different G-sets")

    def __str__(self):
        if len(self.parts) == 1:
            return str(self.parts[0])
        return "(" + "; ".join(str(p) for p in self.parts) + ")"


def zero_value(base: Obj) -> SliceValue:
    return SliceValue(base, tuple(burnside_zero(H) for _, H in orbit_decomposition(base)))


def one_value(base: Obj) -> SliceValue:
    return SliceValue(base, tuple(burnside_one(H) for _, H in orbit_decomposition(base)))


def orbit_value(H: Subgroup, counts) -> SliceValue:
    """A value over the orbit ``G/H``."""
    return SliceValue(H.parent.coset_space(H), (BurnsideElement(H, tuple(counts)),))


def slice_value(m: Mor) -> SliceValue:
    """The isomorphism class of ``m: X -> base``, read off fiberwise."""
    base = m.cod
    G = base.group
    parts = []
    for rep, H in orbit_decomposition(base):
        counts = [0] * len(subgroup_classes_in(H))
        fib = set(m.fibers[rep])
        seen = set()
        for i in sorted(fib):
            if i in seen:
                continue
            orb = {m.dom.act(h, i) for h in H.members}
            seen |= orb
            stab = Subgroup(G, frozenset(g for g in range(G.order) if m.dom.act(g, i) == i))
            counts[_class_in(H, stab)] += 1
        parts.append(BurnsideElement(H, tuple(counts)))
    return SliceValue(base, tuple(parts))


def realize(v: SliceValue) -> Mor:
    """A G-map representing ``v``: ``n`` copies of ``G/K -> base``,
    ``aK -> a . rep``, per basis term."""
    base = v.base
    G = base.group
    orbs, images = [], []
    for (rep, H), part in zip(orbit_decomposition(base), v.parts):
        for cls, n in zip(subgroup_classes_in(H), part.counts):
            K = Subgroup(G, cls[0])
            space = G.coset_space(K)
            for _ in range(n):
                orbs.append(space)
                images.append(tuple(base.act(a, rep) for a in space.carrier))
    X, _ = coproduct_many(orbs, G)
    return Mor(X, base, tuple(itertools.chain.from_iterable(images)))


def restriction(v: SliceValue, q: Mor) -> SliceValue:
    """Pull back along ``q: Y -> base``."""
    if q.cod != v.base:
        raise CompositionError("restriction map must land in the base")
    return slice_value(base_change(realize(v), q))


def additive_transfer(v: SliceValue, l: Mor) -> SliceValue:
    """Compose with ``l: base -> Z``."""
    if l.dom != v.base:
        raise CompositionError("transfer map must start at the base")
    return slice_value(compose(l, realize(v)))


def norm(v: SliceValue, f: Mor) -> SliceValue:
    """Equivariant dependent product along ``f: base -> Z``."""
    if f.dom != v.base:
        raise CompositionError("norm map must start at the base")
    return slice_value(dependent_product(realize(v), f).g)


def evaluate_tambara(b: Bispan, v: SliceValue) -> SliceValue:
    """Restrict along ``p``, norm along ``f``, transfer along ``l``."""
    if v.base != b.src:
        raise CompositionError("value must live over the source of the bispan")
    return additive_transfer(norm(restriction(v, b.p), b.f), b.l)


def evaluate_tambara_direct(b: Bispan, v: SliceValue) -> SliceValue:
    """The G-set of pairs ``(b, s)``, ``s`` a section of the representing
    set over ``E_b`` through ``p``, built in one pass."""
    if v.base != b.src:
        raise CompositionError("value must live over the source of the bispan")
    t = realize(v)
    G = b.src.group
    T = t.dom
    tokens, over, index = [], [], {}
    fibers = b.f.fibers
    for k, fib in enumerate(fibers):
        for s in itertools.product(*(t.fibers[b.p.table[e]] for e in fib)):
            index[(k, s)] = len(tokens)
            tokens.append((k, s))
            over.append(b.l.table[k])
    pos = [{e: i for i, e in enumerate(fib)} for fib in fibers]
    rows = []
    for g in range(G.order):
        ginv = G.inv[g]
        row = []
        for k, s in tokens:
            k2 = b.B.act(g, k)
            s2 = tuple(T.act(g, s[pos[k][b.E.act(ginv, e)]]) for e in fibers[k2])
            row.append(index[(k2, s2)])
        rows.append(tuple(row))
    W = Obj(tuple(tokens), G, tuple(rows))
    return slice_value(Mor(W, b.tgt, tuple(over)))


# structural checks


def mackey_sides(x: SliceValue, H: Subgroup, K: Subgroup, L: Subgroup, pick=min) -> tuple[SliceValue, SliceValue]:
    """``res^L_K tr^L_H x`` and the double coset sum
    ``sum_g tr^K_{K & H_g} c_g res^H x`` as values over ``G/K``.

    ``pick`` chooses the representative ``g`` of each double coset; the
    result does not depend on it.
    """
    G = L.parent
    lhs = restriction(additive_transfer(x, quotient_map(H, L)), quotient_map(K, L))
    GK, GH = G.coset_space(K), G.coset_space(H)
    rhs = zero_value(GK)
    for d in double_cosets(K, L, H):
        g = pick(d)
        S = K & H.conjugate(g)
        GS = G.coset_space(S)
        to_K = Mor(GS, GK, tuple(G.coset_of(K, a) for a in GS.carrier))
        to_H = Mor(GS, GH, tuple(G.coset_of(H, G.mul[a][g]) for a in GS.carrier))
        rhs = rhs + additive_transfer(restriction(x, to_H), to_K)
    return lhs, rhs


def distributivity_sides(x: SliceValue, phi: Mor, psi: Mor) -> tuple[SliceValue, SliceValue]:
    """``psi_* phi_! x`` and ``g_! f~_* eps^* x`` for the distributivity
    diagram of ``(phi, psi)``."""
    lhs = norm(additive_transfer(x, phi), psi)
    d = dependent_product(phi, psi)
    rhs = additive_transfer(norm(restriction(x, d.eps), d.f_tilde), d.g)
    return lhs, rhs


def c2_norm_closed_form(n: int) -> tuple:
    """Counts ``([C2/C2], [C2/e])`` of the norm of ``n`` points."""
    return (n, (n * n - n) // 2)


def check_burnside_axioms(H: Subgroup, elements) -> Report:
    els = list(elements)
    zero, one = burnside_zero(H), burnside_one(H)
    n = 0
    for a, b, c in itertools.product(els, repeat=3):
        n += 1
        if (a + b) + c != a + (b + c) or (a * b) * c != a * (b * c):
            return Report(False, "associativity", (a, b, c), n)
        if a + b != b + a or a * b != b * a:
            return Report(False, "commutativity", (a, b), n)
        if a * (b + c) != a * b + a * c:
            return Report(False, "distributivity", (a, b, c), n)
        if a + zero != a or a * one != a or a * zero != zero:
            return Report(False, "units", a, n)
    return Report(True, cases=n)
