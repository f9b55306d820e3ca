"""Invariant suites shared by the command line and the test battery.

Each suite returns a :class:`SuiteResult` with a case count and the first
counterexample, if any.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .bispan import (
    Bispan,
    bispan_isomorphic,
    check_fold_structure,
    check_pasting,
    compose_bispans,
    fold_distributivity,
    from_norm,
)
from .context import Mor, Report, check_universal_property, dependent_product, finite_set
from .evaluation import (
    BOOL,
    INT,
    NAT,
    TROPICAL,
    check_binomial_splitting,
    check_functoriality,
    compile,
    finite_difference_degree,
    polynomial_oracle,
    probe_vectors,
)
from .finset import check_degree_axioms, fold_degree_decomposition
from .generate import (
    all_maps,
    bispans_up_to_iso,
    finset_bispans,
    maps_up_to_dom_iso,
    objects_up_to_iso,
    random_bispan,
    random_map,
    random_object,
)
from .gset import builtin_group, double_coset_decomposition, gset_isomorphic
from .tambara import c2_norm_closed_form, evaluate_tambara, norm, orbit_value


@dataclass
class SuiteResult:
    name: str
    ok: bool
    cases: int
    counterexample: object = None
    reason: str = ""

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        tail = "" if self.ok else f": {self.reason}"
        return f"{self.name}: {status} ({self.cases} cases){tail}"


def _fail(name, n, witness, reason):
    return SuiteResult(name, False, n, witness, reason)


def _group(group):
    if group is None or group == "trivial":
        return None
    return builtin_group(group) if isinstance(group, str) else group


def maps_up_to_iso_pairs(n: int, group=None):
    """``(l, f)`` covering every iso class of composable pairs with carriers <= n."""
    objs = list(objects_up_to_iso(group, n))
    for z in objs:
        for y in objs:
            for f in maps_up_to_dom_iso(y, z):
                for x in objs:
                    for l in maps_up_to_dom_iso(x, y):
                        yield l, f


def universal_property_suite(max_size: int = 3, probe_bound: int = 3, group=None) -> SuiteResult:
    G = _group(group)
    n = 0
    for l, f in maps_up_to_iso_pairs(max_size, G):
        n += 1
        rep = check_universal_property(dependent_product(l, f), probe_bound)
        if not rep:
            return _fail("universal-property", n, (l, f), rep.reason)
    return SuiteResult("universal-property", True, n)


def section_count_suite(trials: int = 1000, max_size: int = 6, seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    for n in range(1, trials + 1):
        x, y, z = (finite_set(rng.randint(0, max_size)) for _ in range(3))
        if len(y) and not len(z):
            z = finite_set(1)
        if len(x) and not len(y):
            y = finite_set(1)
            if not len(z):
                z = finite_set(1)
        l, f = random_map(rng, x, y), random_map(rng, y, z)
        d = dependent_product(l, f)
        for k, fib in enumerate(f.fibers):
            if len(d.g.fibers[k]) != math.prod(len(l.fibers[j]) for j in fib):
                return _fail("section-count", n, (l, f), f"wrong count over {k}")
    return SuiteResult("section-count", True, trials)


def _assoc_case(b1, b2, b3):
    left = compose_bispans(compose_bispans(b3, b2), b1)
    right = compose_bispans(b3, compose_bispans(b2, b1))
    return bispan_isomorphic(left, right) is not None


def exhaustive_bispans(src, tgt, max_size: int, group=None):
    if group is None:
        return list(finset_bispans(src, tgt, max_size, max_size))
    return list(bispans_up_to_iso(src, tgt, objects_up_to_iso(group, max_size)))


def associativity_suite(max_size: int = 2, trials: int = 500, random_max: int = 4, group=None,
                        seed: int = 0, boundary_max: int | None = None) -> SuiteResult:
    """Exhaustive over boundaries and middles of at most ``max_size``
    elements (``boundary_max`` caps the four boundary objects), then
    ``trials`` random triples with carriers ``<= random_max``."""
    G = _group(group)
    bmax = max_size if boundary_max is None else boundary_max
    objs = list(objects_up_to_iso(G, bmax))
    cache = {}

    def hom(a, b):
        key = (objs.index(a), objs.index(b))
        if key not in cache:
            cache[key] = exhaustive_bispans(a, b, max_size, G)
        return cache[key]

    n = 0
    for I, J, K, L in itertools.product(objs, repeat=4):
        h1, h2, h3 = hom(I, J), hom(J, K), hom(K, L)
        c21 = [[compose_bispans(b2, b1) for b1 in h1] for b2 in h2]
        c32 = [[compose_bispans(b3, b2) for b2 in h2] for b3 in h3]
        for k, b3 in enumerate(h3):
            for j, b2 in enumerate(h2):
                for i, b1 in enumerate(h1):
                    n += 1
                    left = compose_bispans(c32[k][j], b1)
                    right = compose_bispans(b3, c21[j][i])
                    if bispan_isomorphic(left, right) is None:
                        return _fail("associativity", n, (b1, b2, b3), "composites are not isomorphic")
    rng = random.Random(seed)
    for _ in range(trials):
        I, J, K, L = (random_object(rng, G, random_max) for _ in range(4))
        b1 = random_bispan(rng, I, J, random_max)
        b2 = random_bispan(rng, J, K, random_max)
        b3 = random_bispan(rng, K, L, random_max)
        n += 1
        if not _assoc_case(b1, b2, b3):
            return _fail("associativity", n, (b1, b2, b3), "composites are not isomorphic")
    return SuiteResult("associativity", True, n)


SEMIRING_BATTERY = (NAT, INT, BOOL, TROPICAL)


def functoriality_suite(max_size: int = 3, semirings=SEMIRING_BATTERY, limit: int = 200) -> SuiteResult:
    """All composable plain pairs with ``|E|, |B| <= max_size`` and
    boundaries ``<= 2``, on probe grids ``{0..5}^arity``."""
    n = 0
    objs = [finite_set(k) for k in range(3)]
    homs = {(a, b): list(finset_bispans(objs[a], objs[b], max_size, max_size)) for a in range(3) for b in range(3)}
    probes = {R.name: {k: probe_vectors(R, k, limit=limit) for k in range(3)} for R in semirings}
    for a, b, c in itertools.product(range(3), repeat=3):
        for b1 in homs[(a, b)]:
            for b2 in homs[(b, c)]:
                for R in semirings:
                    n += 1
                    rep = check_functoriality(b1, b2, R, probes[R.name][a])
                    if not rep:
                        return _fail("functoriality", n, (b1, b2), f"{R.name}: {rep.reason}")
    return SuiteResult("functoriality", True, n)


def oracle_completeness_suite(max_size: int = 3, boundary_max: int = 2) -> SuiteResult:
    """Distinct iso classes have distinct polynomials, and polynomial
    equality coincides with iso on every pair (including relabelled copies)."""
    n = 0
    for a, b in itertools.product(range(boundary_max + 1), repeat=2):
        src, tgt = finite_set(a), finite_set(b)
        seen = {}
        for bs in finset_bispans(src, tgt, max_size, max_size):
            n += 1
            key = polynomial_oracle(bs)
            if key in seen:
                return _fail("oracle-completeness", n, (seen[key], bs), "non-isomorphic bispans share a polynomial")
            seen[key] = bs
            shuffled = _relabel(bs, random.Random(n))
            if polynomial_oracle(shuffled) != key or bispan_isomorphic(bs, shuffled) is None:
                return _fail("oracle-completeness", n, bs, "relabelled copy not recognised")
    return SuiteResult("oracle-completeness", True, n)


def _relabel(b: Bispan, rng) -> Bispan:
    pe = list(range(len(b.E)))
    pb = list(range(len(b.B)))
    rng.shuffle(pe)
    rng.shuffle(pb)
    inv_e = {v: k for k, v in enumerate(pe)}
    E, B = finite_set(len(b.E)), finite_set(len(b.B))
    p = Mor(E, b.src, tuple(b.p.table[inv_e[i]] for i in range(len(E))))
    f = Mor(E, B, tuple(pb[b.f.table[inv_e[i]]] for i in range(len(E))))
    inv_b = {v: k for k, v in enumerate(pb)}
    l = Mor(B, b.tgt, tuple(b.l.table[inv_b[i]] for i in range(len(B))))
    return Bispan(b.src, b.tgt, E, B, p, f, l)


DOUBLE_COSET_GROUPS = ("C2", "C3", "C4", "C2xC2", "S3")


def double_coset_suite(groups=DOUBLE_COSET_GROUPS) -> SuiteResult:
    n = 0
    for name in groups:
        G = _group(name)
        for L in G.subgroups:
            subs = [H for H in G.subgroups if H <= L]
            for H, K in itertools.product(subs, repeat=2):
                n += 1
                try:
                    dec = double_coset_decomposition(H, K, L)
                except AssertionError as exc:
                    return _fail("double-coset", n, (name, H, K, L), str(exc))
                if gset_isomorphic(dec.pullback.apex, dec.model) is None:
                    return _fail("double-coset", n, (name, H, K, L), "sides are not isomorphic")
    return SuiteResult("double-coset", True, n)


def c2_norm_suite(max_n: int = 6) -> SuiteResult:
    G = builtin_group("C2")
    q = Mor(G.coset_space(G.trivial), G.coset_space(G.whole), (0, 0))
    for n in range(max_n + 1):
        got = norm(orbit_value(G.trivial, (n,)), q).parts[0].counts
        if got != c2_norm_closed_form(n):
            return _fail("norm", n + 1, n, f"norm({n}) = {got}, expected {c2_norm_closed_form(n)}")
    return SuiteResult("norm", True, max_n + 1)


def tambara_values(base, max_count: int = 1):
    """Values over ``base`` with every orbit-basis count at most ``max_count``."""
    from .gset import orbit_decomposition
    from .tambara import BurnsideElement, SliceValue, subgroup_classes_in

    per = []
    for _, H in orbit_decomposition(base):
        k = len(subgroup_classes_in(H))
        per.append([BurnsideElement(H, c) for c in itertools.product(range(max_count + 1), repeat=k)])
    for parts in itertools.product(*per):
        yield SliceValue(base, parts)


def tambara_probe_values(base):
    """Per orbit of ``base``: zero, each basis orbit, and the sum of all
    basis orbits; every combination across orbits."""
    from .gset import orbit_decomposition
    from .tambara import BurnsideElement, SliceValue, burnside_basis, burnside_zero

    per = []
    for _, H in orbit_decomposition(base):
        basis = burnside_basis(H)
        per.append([burnside_zero(H), *basis, BurnsideElement(H, (1,) * len(basis))])
    for parts in itertools.product(*per):
        yield SliceValue(base, parts)


def tambara_case(b1, b2, values) -> Report:
    comp = compose_bispans(b2, b1)
    n = 0
    for v in values:
        n += 1
        lhs = evaluate_tambara(comp, v)
        rhs = evaluate_tambara(b2, evaluate_tambara(b1, v))
        if lhs != rhs:
            return Report(False, f"{lhs} != {rhs}", v, n)
    return Report(True, cases=n)


def random_tambara_value(rng, base, max_count: int = 2):
    from .gset import orbit_decomposition
    from .tambara import BurnsideElement, SliceValue, subgroup_classes_in

    parts = []
    for _, H in orbit_decomposition(base):
        k = len(subgroup_classes_in(H))
        parts.append(BurnsideElement(H, tuple(rng.randint(0, max_count) for _ in range(k))))
    return SliceValue(base, tuple(parts))


def tambara_functoriality_suite(group="C2", max_size: int = 2, boundary_max: int = 1, trials: int = 200,
                                random_max: int = 6, random_middle: int | None = None, seed: int = 0) -> SuiteResult:
    """Exhaustive over boundaries of at most ``boundary_max`` elements and
    middles of at most ``max_size``, on the values of
    :func:`tambara_probe_values`; then ``trials`` random pairs with boundaries ``<= random_max``
    and middles ``<= random_middle`` (default 4 for C2, else 2: values grow
    through the first norm and the second norm is exponential in them)."""
    G = _group(group)
    if random_middle is None:
        random_middle = 4 if G.order <= 2 else 2
    objs = list(objects_up_to_iso(G, boundary_max))
    middles = list(objects_up_to_iso(G, max_size))
    hom = {(a, b): list(bispans_up_to_iso(objs[a], objs[b], middles)) for a in range(len(objs)) for b in range(len(objs))}
    vals = [list(tambara_probe_values(x)) for x in objs]
    n = 0
    for a, b, c in itertools.product(range(len(objs)), repeat=3):
        for b1 in hom[(a, b)]:
            for b2 in hom[(b, c)]:
                n += 1
                rep = tambara_case(b1, b2, vals[a])
                if not rep:
                    return _fail("tambara", n, (b1, b2), rep.reason)
    rng = random.Random(seed)
    for _ in range(trials):
        I, J, K = (random_object(rng, G, random_max) for _ in range(3))
        b1 = random_bispan(rng, I, J, random_middle)
        b2 = random_bispan(rng, J, K, random_middle)
        n += 1
        rep = tambara_case(b1, b2, [random_tambara_value(rng, I, 1) for _ in range(3)])
        if not rep:
            return _fail("tambara", n, (b1, b2), rep.reason)
    return SuiteResult("tambara", True, n)


def degree_suite(max_size: int = 4, group=None, probe_size: int = 3) -> SuiteResult:
    """Degree axioms for every map, and the fold decomposition for every
    pair of maps ``x -> y``, ``x' -> y`` whose coproduct ``x + x'`` has at
    most ``max_size`` elements. Domains are taken up to isomorphism;
    codomains keep their labels."""
    G = _group(group)
    objs = list(objects_up_to_iso(G, max_size))
    n = 0
    for y in objs:
        probes = [g for w in objects_up_to_iso(G, probe_size) for g in maps_up_to_dom_iso(w, y)]
        over_y = [f for x in objs for f in maps_up_to_dom_iso(x, y)]
        for f in over_y:
            n += 1
            rep = check_degree_axioms(f, probes)
            if not rep:
                return _fail("degree", n, f, rep.reason)
        for f, g in itertools.product(over_y, repeat=2):
            if len(f.dom) + len(g.dom) > max_size:
                continue
            n += 1
            try:
                fold_degree_decomposition(f, g)
            except AssertionError as exc:
                return _fail("degree", n, (f, g), str(exc))
    return SuiteResult("degree", True, n)


def finite_difference_suite(max_size: int = 5) -> SuiteResult:
    """Pure-norm bispans of every ``p`` (up to relabelling) with carriers <= max_size."""
    n = 0
    for y in range(max_size + 1):
        for x in range(max_size + 1):
            for t in itertools.combinations_with_replacement(range(y), x):
                p = Mor(finite_set(x), finite_set(y), t)
                n += 1
                mx = max((len(fib) for fib in p.fibers), default=-1)
                bound = max(mx, 0) + 2
                got = finite_difference_degree(compile(from_norm(p)), bound)
                for z, fib in enumerate(p.fibers):
                    if got[z].total != len(fib):
                        return _fail("finite-difference", n, p, f"degree {got[z].total} at {z}, fiber {len(fib)}")
    return SuiteResult("finite-difference", True, n)


def maps_with_fibers(max_fiber: int, max_cod: int, surjective: bool = False):
    """Every ``p`` up to relabelling whose fibers have at most ``max_fiber`` elements."""
    for y in range(max_cod + 1):
        lo = 1 if surjective else 0
        for sizes in itertools.combinations_with_replacement(range(lo, max_fiber + 1), y):
            table = tuple(z for z, s in enumerate(sizes) for _ in range(s))
            yield Mor(finite_set(len(table)), finite_set(y), table)


def splitting_suite(max_fiber: int = 4, max_cod: int = 2, values=range(5), surjective: bool = False) -> SuiteResult:
    """The three-term splitting over N and Z, probes ``E, F`` with entries in ``values``."""
    n = 0
    for p in maps_with_fibers(max_fiber, max_cod, surjective):
        k = len(p.dom)
        vecs = list(itertools.product(values, repeat=k)) if k <= 2 else _sample_vectors(values, k, 25)
        probes = list(itertools.product(vecs, repeat=2))
        for R in (NAT, INT):
            n += 1
            rep = check_binomial_splitting(p, R, probes)
            if not rep:
                return _fail("splitting", n, p, f"{R.name}: {rep.reason}")
    return SuiteResult("splitting", True, n)


def _sample_vectors(values, k, count):
    rng = random.Random(k)
    vals = list(values)
    out = {tuple(vals[0] for _ in range(k)), tuple(vals[-1] for _ in range(k))}
    while len(out) < count:
        out.add(tuple(rng.choice(vals) for _ in range(k)))
    return sorted(out)


def fold_structure_suite(max_size: int = 5, surjective: bool = False) -> SuiteResult:
    """Section counts and the degree-0 conclusion for every ``p`` up to relabelling."""
    n = 0
    for y in range(max_size + 1):
        for x in range(max_size + 1):
            for t in itertools.combinations_with_replacement(range(y), x):
                p = Mor(finite_set(x), finite_set(y), t)
                if surjective and not all(p.fibers):
                    continue
                n += 1
                rep = check_fold_structure(fold_distributivity(p))
                if not rep:
                    return _fail("fold-structure", n, p, rep.reason)
    return SuiteResult("fold-structure", True, n)


def pasting_suite(max_size: int = 3, probe_bound: int = 3) -> SuiteResult:
    n = 0
    objs = list(objects_up_to_iso(None, max_size))
    for z in objs:
        for y2 in objs:
            for f in maps_up_to_dom_iso(y2, z):
                for y1 in objs:
                    for l2 in maps_up_to_dom_iso(y1, y2):
                        for x in objs:
                            for l1 in maps_up_to_dom_iso(x, y1):
                                n += 1
                                rep = check_pasting(l1, l2, f, probe_bound)
                                if not rep:
                                    return _fail("pasting", n, (l1, l2, f), rep.reason)
    return SuiteResult("pasting", True, n)


def _or(v, default):
    return default if v is None else v


SUITES = {
    "universal-property": lambda a: universal_property_suite(_or(a.max_size, 3), group=a.group),
    "section-count": lambda a: section_count_suite(_or(a.trials, 1000), _or(a.max_size, 6), a.seed),
    "associativity": lambda a: associativity_suite(
        min(_or(a.max_size, 2), 2), trials=_or(a.trials, 500), random_max=_or(a.max_size, 4), group=a.group,
        seed=a.seed, boundary_max=1 if a.group else 2),
    "functoriality": lambda a: functoriality_suite(_or(a.max_size, 3)),
    "oracle-completeness": lambda a: oracle_completeness_suite(_or(a.max_size, 3)),
    "double-coset": lambda a: double_coset_suite((a.group,) if a.group else DOUBLE_COSET_GROUPS),
    "norm": lambda a: c2_norm_suite(_or(a.max_size, 6)),
    "tambara": lambda a: tambara_functoriality_suite(
        a.group or "C2", trials=_or(a.trials, 200), random_max=_or(a.max_size, 6), seed=a.seed),
    "degree": lambda a: degree_suite(_or(a.max_size, 6 if a.group else 4), group=a.group,
                                     probe_size=2 if a.group else 3),
    "finite-difference": lambda a: finite_difference_suite(_or(a.max_size, 5)),
    "splitting": lambda a: splitting_suite(_or(a.max_size, 4)),
    "splitting-surjective": lambda a: splitting_suite(_or(a.max_size, 4), surjective=True),
    "fold-structure": lambda a: fold_structure_suite(_or(a.max_size, 5)),
    "fold-structure-surjective": lambda a: fold_structure_suite(_or(a.max_size, 5), surjective=True),
    "pasting": lambda a: pasting_suite(_or(a.max_size, 3)),
}
