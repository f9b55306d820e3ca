"""Semiring evaluation of bispans, ``out_j = sum_{b in B_j} prod_{e in E_b} x_{p(e)}``.

A bispan compiles to a :class:`SemiringCircuit` (a sum-of-products
program); evaluating that circuit in the polynomial semiring gives the
canonical polynomial tuple, and over the integers its finite differences
measure the degree.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bispan import Bispan, compose_bispans, fold_distributivity
from .context import Mor, Obj, Report, dependent_product


@dataclass(frozen=True)
class Semiring:
    name: str
    zero: object
    one: object
    add: Callable
    mul: Callable
    eq: Callable = field(default=lambda a, b: a == b)
    sample: Callable | None = None  # rng -> element, for axiom spot checks

    def sum(self, xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs):
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc


NAT = Semiring("nat", 0, 1, lambda a, b: a + b, lambda a, b: a * b, sample=lambda r: r.randint(0, 9))
INT = Semiring("int", 0, 1, lambda a, b: a + b, lambda a, b: a * b, sample=lambda r: r.randint(-9, 9))
BOOL = Semiring("bool", False, True, lambda a, b: a or b, lambda a, b: a and b,
                sample=lambda r: r.random() < 0.5)
TROPICAL = Semiring("tropical", math.inf, 0, min, lambda a, b: a + b,
                    sample=lambda r: r.choice([math.inf, 0, 1, 2, 3, 7]))


def check_semiring_axioms(R: Semiring, rng, n: int = 200) -> Report:
    eq = R.eq
    for _ in range(n):
        a, b, c = R.sample(rng), R.sample(rng), R.sample(rng)
        laws = [
            (R.add(R.add(a, b), c), R.add(a, R.add(b, c)), "additive associativity"),
            (R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)), "multiplicative associativity"),
            (R.add(a, b), R.add(b, a), "additive commutativity"),
            (R.mul(a, b), R.mul(b, a), "multiplicative commutativity"),
            (R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)), "distributivity"),
            (R.add(a, R.zero), a, "additive unit"),
            (R.mul(a, R.one), a, "multiplicative unit"),
            (R.mul(a, R.zero), R.zero, "absorbing zero"),
        ]
        for lhs, rhs, name in laws:
            if not eq(lhs, rhs):
                return Report(False, name, (a, b, c))
    return Report(True, cases=n)


# polynomials


class Poly:
    """Sparse polynomial with integer coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent vector has the wrong length")
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def __call__(self, values: Sequence, R: Semiring = NAT):
        """Evaluate in ``R``; coefficients act by repeated addition."""
        acc = R.zero
        for e, c in self.sorted_terms():
            mono = R.prod(R.prod([values[i]] * k) for i, k in enumerate(e))
            if R is NAT or R is INT:
                acc = R.add(acc, c * mono)
            else:
                if c < 0:
                    raise ValueError("negative coefficient outside a ring")
                acc = R.add(acc, R.sum([mono] * c))
        return acc

    def substitute(self, polys: Sequence["Poly"], nvars: int | None = None) -> "Poly":
        nv = nvars if nvars is not None else (polys[0].nvars if polys else 0)
        out = Poly(nv)
        for e, c in self.terms.items():
            t = Poly.const(c, nv)
            for i, k in enumerate(e):
                for _ in range(k):
                    t = t * polys[i]
            out = out + t
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["x"] if self.nvars == 1 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def poly_semiring(nvars: int) -> Semiring:
    return Semiring(f"poly{nvars}", Poly(nvars), Poly.const(1, nvars),
                    lambda a, b: a + b, lambda a, b: a * b)


SEMIRINGS = {"nat": NAT, "int": INT, "bool": BOOL, "tropical": TROPICAL}


def get_semiring(name: str, nvars: int = 1) -> Semiring:
    if name == "poly":
        return poly_semiring(nvars)
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise KeyError(f"unknown semiring {name!r}; choose from nat, int, bool, tropical, poly") from None


@dataclass(frozen=True)
class PolyTuple:
    """Target-indexed tuple of polynomials in the source variables."""

    nvars: int
    polys: tuple

    def __post_init__(self):
        if any(p.nvars != self.nvars for p in self.polys):
            raise ValueError("all entries need the same variables")

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, j):
        return self.polys[j]

    def then(self, other: "PolyTuple") -> "PolyTuple":
        """``other . self``: substitute this tuple into ``other``."""
        if other.nvars != len(self.polys):
            raise ValueError("arity mismatch in substitution")
        return PolyTuple(self.nvars, tuple(q.substitute(self.polys, self.nvars) for q in other.polys))

    def __call__(self, values, R: Semiring = NAT):
        return tuple(p(values, R) for p in self.polys)

    def __str__(self):
        return ", ".join(str(p) for p in self.polys)


def identity_polys(n: int) -> PolyTuple:
    return PolyTuple(n, tuple(Poly.var(i, n) for i in range(n)))


# circuits


@dataclass(frozen=True)
class SemiringCircuit:
    """``terms[j]`` lists monomials (sorted tuples of source indices)."""

    src_arity: int
    tgt_arity: int
    terms: tuple

    def __str__(self):
        lines = []
        for j, monos in enumerate(self.terms):
            body = " + ".join("*".join(f"r{i}" for i in m) or "1" for m in monos) or "0"
            lines.append(f"out{j} = {body}")
        return "\n".join(lines)


def compile(b: Bispan) -> SemiringCircuit:  # noqa: A001
    """G-set bispans compile through their underlying sets."""
    mono = [tuple(sorted(b.p.table[e] for e in fib)) for fib in b.f.fibers]
    terms = tuple(tuple(sorted(mono[k] for k in fib)) for fib in b.l.fibers)
    return SemiringCircuit(len(b.src), len(b.tgt), terms)


def evaluate(c: SemiringCircuit, R: Semiring, x: Sequence) -> tuple:
    if len(x) != c.src_arity:
        raise ValueError(f"input has length {len(x)}, circuit expects {c.src_arity}")
    return tuple(R.sum(R.prod(x[i] for i in m) for m in monos) for monos in c.terms)


def evaluate_direct(b: Bispan, R: Semiring, x: Sequence) -> tuple:
    """Restrict along ``p``, multiply along ``f``, add along ``l``."""
    if len(x) != len(b.src):
        raise ValueError(f"input has length {len(x)}, bispan expects {len(b.src)}")
    on_e = [x[i] for i in b.p.table]
    on_b = [R.prod(on_e[e] for e in fib) for fib in b.f.fibers]
    return tuple(R.sum(on_b[k] for k in fib) for fib in b.l.fibers)


def polynomial_oracle(b: Bispan) -> PolyTuple:
    n = len(b.src)
    P = poly_semiring(n)
    return PolyTuple(n, evaluate(compile(b), P, [Poly.var(i, n) for i in range(n)]))


def probe_vectors(R: Semiring, arity: int, values=range(6), limit: int = 200) -> list:
    """The grid ``values^arity`` truncated to ``limit`` vectors."""
    vals = list(values)
    if R is BOOL:
        vals = [False, True]
    elif R is TROPICAL:
        vals = vals + [math.inf]
    return list(itertools.islice(itertools.product(vals, repeat=arity), limit))


def check_functoriality(b1: Bispan, b2: Bispan, R: Semiring, probes=None) -> Report:
    c = compile(compose_bispans(b2, b1))
    c1, c2 = compile(b1), compile(b2)
    if probes is None:
        probes = probe_vectors(R, len(b1.src))
    n = 0
    for x in probes:
        n += 1
        lhs = evaluate(c, R, x)
        rhs = evaluate(c2, R, evaluate(c1, R, x))
        if len(lhs) != len(rhs) or not all(R.eq(a, b) for a, b in zip(lhs, rhs)):
            return Report(False, f"{lhs} != {rhs}", x, n)
    return Report(True, cases=n)


def distributivity_polys(u: Mor, v: Mor) -> tuple[PolyTuple, PolyTuple]:
    """Both sides of ``v_* u_! = g_! f~_* eps^*`` as polynomial tuples,
    the left computed directly as products of sums."""
    n = len(u.dom)
    x = [Poly.var(i, n) for i in range(n)]
    P = poly_semiring(n)
    sums = [P.sum(x[i] for i in fib) for fib in u.fibers]
    lhs = PolyTuple(n, tuple(P.prod(sums[j] for j in fib) for fib in v.fibers))
    d = dependent_product(u, v)
    rhs = polynomial_oracle(Bispan(u.dom, v.cod, d.pb.apex, d.w, d.eps, d.f_tilde, d.g))
    return lhs, rhs


# set-level polynomial functors


@dataclass(frozen=True)
class Family:
    """A finite set ``T`` over ``X``."""

    T: Obj
    structure: Mor

    @property
    def base(self) -> Obj:
        return self.structure.cod

    def sizes(self) -> tuple:
        return tuple(len(fib) for fib in self.structure.fibers)


def family(sizes: Sequence[int]) -> Family:
    """The family with ``sizes[i]`` elements over ``i``."""
    from .finset import fmap

    table = [i for i, n in enumerate(sizes) for _ in range(n)]
    m = fmap(table, len(sizes))
    return Family(m.dom, m)


def eval_polyfunctor(b: Bispan, t: Family) -> Family:
    """Pairs ``(b, s)`` with ``s`` a section of ``t`` over ``E_b`` through
    ``p``, lying over ``l(b)``."""
    if t.base != b.src:
        raise ValueError("family must live over the source of the bispan")
    tf = t.structure.fibers
    tokens, over = [], []
    for k, fib in enumerate(b.f.fibers):
        for s in itertools.product(*(tf[b.p.table[e]] for e in fib)):
            tokens.append((b.B.carrier[k], tuple(t.T.carrier[i] for i in s)))
            over.append(b.l.table[k])
    T = Obj(tuple(tokens), check=False)
    return Family(T, Mor(T, Obj(b.tgt.carrier, check=False), tuple(over)))


# degrees


class BoundTooSmall(ValueError):
    """The difference grid cannot certify the degree."""


@dataclass(frozen=True)
class MeasuredDegree:
    total: int  # -1 for the zero function
    per_variable: tuple


def newton_coefficients(values: np.ndarray) -> np.ndarray:
    """``D^a f(0)`` for every multi-index ``a`` on the grid ``{0..B}^k``."""
    a = np.array(values, dtype=object)
    for axis in range(a.ndim):
        a = np.moveaxis(a, axis, 0)
        for s in range(1, a.shape[0]):
            a[s:] = a[s:] - a[s - 1:-1]
        a = np.moveaxis(a, 0, axis)
    return a


def grid_values(c: SemiringCircuit, bound: int) -> list:
    """Each output of ``c`` over ``Z`` on ``{0..bound}^src_arity``, as arrays."""
    k = c.src_arity
    axes = []
    for i in range(k):
        shape = [1] * k
        shape[i] = bound + 1
        axes.append(np.array(list(range(bound + 1)), dtype=object).reshape(shape))
    full = (bound + 1,) * k
    out = []
    for monos in c.terms:
        acc = np.zeros(full, dtype=object)
        for m in monos:
            term = np.ones(full, dtype=object)
            for i in m:
                term = term * axes[i]
            acc = acc + term
        out.append(acc)
    return out


def finite_difference_degree(c: SemiringCircuit, bound: int) -> list[MeasuredDegree]:
    """Degree of each output from its forward differences on ``{0..bound}^k``.

    Raises :class:`BoundTooSmall` when some nonzero difference sits on the
    edge of the grid, since a larger degree could then alias it.
    """
    if bound < 1:
        raise BoundTooSmall("bound must be at least 1")
    k = c.src_arity
    out = []
    for j, vals in enumerate(grid_values(c, bound)):
        coef = newton_coefficients(vals)
        total, per = -1, [-1] * k
        if k:
            nonzero = [tuple(int(i) for i in idx) for idx in np.argwhere(coef.astype(bool))]
        else:
            nonzero = [()] if coef.item() != 0 else []
        for idx in nonzero:
            if any(i == bound for i in idx):
                raise BoundTooSmall(f"output {j}: bound {bound} is too small to certify the degree")
            total = max(total, sum(idx))
            for i, a in enumerate(idx):
                per[i] = max(per[i], a)
        out.append(MeasuredDegree(total, tuple(per)))
    return out


def max_fiber_degree(b: Bispan) -> tuple:
    """``max |E_b|`` over ``B_j`` per target (``-1`` when ``B_j`` is empty)."""
    sizes = [len(fib) for fib in b.f.fibers]
    return tuple(max((sizes[k] for k in fib), default=-1) for fib in b.l.fibers)


# the three-term splitting


def splitting_terms(p: Mor, R: Semiring, E: Sequence, F: Sequence, data=None) -> tuple:
    """``(lhs, (pE, middle, pF))`` per point of ``y`` for ``p_*(E + F)``."""
    data = data or fold_distributivity(p)
    lhs = [R.prod(R.add(E[a], F[a]) for a in fib) for fib in p.fibers]
    pE = [R.prod(E[a] for a in fib) for fib in p.fibers]
    pF = [R.prod(F[a] for a in fib) for fib in p.fibers]
    left = [R.prod(E[data.eps_L.table[i]] for i in fib) for fib in data.pt_L.fibers]
    right = [R.prod(F[data.eps_R.table[i]] for i in fib) for fib in data.pt_R.fibers]
    on_c = [R.mul(a, b) for a, b in zip(left, right)]
    middle = [R.sum(on_c[m] for m in fib) for fib in data.k.fibers]
    return lhs, (pE, middle, pF)


def check_binomial_splitting(p: Mor, R: Semiring, probes, over=None) -> Report:
    """``prod(E + F) = prod E + (terms through c) + prod F`` at every point
    of ``over`` (default: all of ``y``) for each probe pair ``(E, F)``."""
    data = fold_distributivity(p)
    zs = range(len(p.cod)) if over is None else list(over)
    n = 0
    for E, F in probes:
        n += 1
        lhs, (a, m, b) = splitting_terms(p, R, E, F, data)
        for z in zs:
            rhs = R.add(R.add(a[z], m[z]), b[z])
            if not R.eq(lhs[z], rhs):
                return Report(False, f"at z={z}: {lhs[z]} != {a[z]} + {m[z]} + {b[z]}", (E, F), n)
    return Report(True, cases=n)


def middle_term_count(p: Mor) -> Counter:
    """How many summands each point's middle term has (``|c_z|``)."""
    data = fold_distributivity(p)
    return Counter({z: len(fib) for z, fib in enumerate(data.k.fibers)})
