"""Spans ``src <- apex -> tgt`` composed by pullback, their 2-cells, and
the two kinds of pullback square in the span category.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .context import (
    CompositionError,
    DistributivityDiagram,
    Mor,
    Obj,
    PullbackSquare,
    Report,
    compose,
    dependent_product,
    equivariant_bijections,
    equivariant_lifts,
    identity,
    pullback,
)


@dataclass(frozen=True)
class Span:
    src: Obj
    tgt: Obj
    apex: Obj
    back: Mor  # apex -> src
    fwd: Mor  # apex -> tgt

    def __post_init__(self):
        if self.back.dom != self.apex or self.fwd.dom != self.apex:
            raise CompositionError("both legs must start at the apex")
        if self.back.cod != self.src or self.fwd.cod != self.tgt:
            raise CompositionError("legs must end at src and tgt")
        if not self.fwd.F:
            raise CompositionError("the forward leg must carry the F flag")

    def __repr__(self):
        return f"Span({len(self.src)} <- {len(self.apex)} -> {len(self.tgt)})"


@dataclass(frozen=True)
class SpanMor:
    """A 2-cell ``source => target``: a map of apexes over both ends."""

    source: Span
    target: Span
    mediating: Mor

    def __post_init__(self):
        rep = validate_span_mor(self)
        if not rep:
            raise CompositionError(rep.reason)


def validate_span_mor(m: SpanMor) -> Report:
    s, t, a = m.source, m.target, m.mediating
    if s.src != t.src or s.tgt != t.tgt:
        return Report(False, "source and target spans have different ends")
    if a.dom != s.apex or a.cod != t.apex:
        return Report(False, "mediating map has the wrong domain or codomain")
    if compose(t.back, a).table != s.back.table:
        return Report(False, "backward triangle does not commute")
    if compose(t.fwd, a).table != s.fwd.table:
        return Report(False, "forward triangle does not commute")
    return Report(True)


def identity_span(x: Obj) -> Span:
    i = identity(x)
    return Span(x, x, x, i, i)


def embed_backward(f: Mor) -> Span:
    """``[f]_B``: the span ``cod f <- dom f -> dom f``."""
    return Span(f.cod, f.dom, f.dom, f, identity(f.dom))


def embed_forward(f: Mor) -> Span:
    """``[f]_F``: the span ``dom f <- dom f -> cod f``."""
    if not f.F:
        raise CompositionError("embed_forward needs a map carrying the F flag")
    return Span(f.dom, f.cod, f.dom, identity(f.dom), f)


def compose_with_square(s2: Span, s1: Span) -> tuple[Span, PullbackSquare]:
    if s1.tgt != s2.src:
        raise CompositionError("spans are not composable: tgt(s1) != src(s2)")
    sq = pullback(s1.fwd, s2.back)  # pairs (e1, e2)
    back = compose(s1.back, sq.proj_g)
    fwd = compose(s2.fwd, sq.proj_f)
    return Span(s1.src, s2.tgt, sq.apex, back, fwd), sq


def compose_spans(s2: Span, s1: Span) -> Span:
    """``s2 . s1``; the apex is ``apex(s1) x_mid apex(s2)``."""
    return compose_with_square(s2, s1)[0]


# isomorphism


def counting_matrix(s: Span) -> tuple:
    """``M[i][j]`` = number of apex elements over ``(i, j)``."""
    c = Counter(zip(s.back.table, s.fwd.table))
    return tuple(tuple(c[(i, j)] for j in range(len(s.tgt))) for i in range(len(s.src)))


def span_isomorphic(a: Span, b: Span, budget: int = 200_000) -> SpanMor | None:
    if a.src != b.src or a.tgt != b.tgt or len(a.apex) != len(b.apex):
        return None
    if counting_matrix(a) != counting_matrix(b):
        return None
    if a.apex.group is None:
        ka = sorted(range(len(a.apex)), key=lambda e: (a.back.table[e], a.fwd.table[e]))
        kb = sorted(range(len(b.apex)), key=lambda e: (b.back.table[e], b.fwd.table[e]))
        table = [None] * len(ka)
        for x, y in zip(ka, kb):
            table[x] = y
        return SpanMor(a, b, Mor(a.apex, b.apex, tuple(table), check=False))
    for table in equivariant_bijections(
        a.apex, b.apex,
        lambda e: (a.back.table[e], a.fwd.table[e]),
        lambda e: (b.back.table[e], b.fwd.table[e]),
        budget,
    ):
        return SpanMor(a, b, Mor(a.apex, b.apex, table))
    return None


def is_invertible_span(s: Span) -> bool:
    """Both legs bijective; see :func:`inverse_span`."""
    return s.back.is_bijection and s.fwd.is_bijection


def inverse_span(s: Span) -> Span:
    """The reversed span; a two-sided inverse when both legs are bijections."""
    return Span(s.tgt, s.src, s.apex, s.fwd, s.back)


# 2-cells


def identity_2cell(s: Span) -> SpanMor:
    return SpanMor(s, s, identity(s.apex))


def vcompose(beta: SpanMor, alpha: SpanMor) -> SpanMor:
    if alpha.target != beta.source:
        raise CompositionError("2-cells are not vertically composable")
    return SpanMor(alpha.source, beta.target, compose(beta.mediating, alpha.mediating))


def invert_2cell(alpha: SpanMor) -> SpanMor:
    m = alpha.mediating
    if not m.is_bijection:
        raise CompositionError("2-cell is not invertible")
    inv = [None] * len(m.table)
    for i, j in enumerate(m.table):
        inv[j] = i
    return SpanMor(alpha.target, alpha.source, Mor(m.cod, m.dom, tuple(inv), check=False))


def whisker_left(t: Span, alpha: SpanMor) -> SpanMor:
    """``t . alpha : t . s => t . s'``."""
    src, sq = compose_with_square(t, alpha.source)
    tgt, sq2 = compose_with_square(t, alpha.target)
    a = alpha.mediating.table
    table = tuple(sq2.lookup[(a[e1], e2)] for e1, e2 in sq.pairs)
    return SpanMor(src, tgt, Mor(src.apex, tgt.apex, table, check=False))


def whisker_right(alpha: SpanMor, t: Span) -> SpanMor:
    """``alpha . t : s . t => s' . t``."""
    src, sq = compose_with_square(alpha.source, t)
    tgt, sq2 = compose_with_square(alpha.target, t)
    a = alpha.mediating.table
    table = tuple(sq2.lookup[(e1, a[e2])] for e1, e2 in sq.pairs)
    return SpanMor(src, tgt, Mor(src.apex, tgt.apex, table, check=False))


def associator(s3: Span, s2: Span, s1: Span) -> SpanMor:
    """``(s3 . s2) . s1 => s3 . (s2 . s1)``, regrouping ``(e1, (e2, e3))``."""
    s32, sq32 = compose_with_square(s3, s2)
    left, sql = compose_with_square(s32, s1)
    s21, sq21 = compose_with_square(s2, s1)
    right, sqr = compose_with_square(s3, s21)
    table = []
    for e1, k23 in sql.pairs:
        e2, e3 = sq32.pairs[k23]
        table.append(sqr.lookup[(sq21.lookup[(e1, e2)], e3)])
    return SpanMor(left, right, Mor(left.apex, right.apex, tuple(table), check=False))


def left_unitor(s: Span) -> SpanMor:
    """``id . s => s``."""
    src, sq = compose_with_square(identity_span(s.tgt), s)
    return SpanMor(src, s, Mor(src.apex, s.apex, tuple(e for e, _ in sq.pairs), check=False))


def right_unitor(s: Span) -> SpanMor:
    """``s . id => s``."""
    src, sq = compose_with_square(s, identity_span(s.src))
    return SpanMor(src, s, Mor(src.apex, s.apex, tuple(e for _, e in sq.pairs), check=False))


def adjunction_unit(f: Mor) -> SpanMor:
    """``id_x => [f]_B . [f]_F``, the diagonal ``x -> x x_y x``."""
    comp, sq = compose_with_square(embed_backward(f), embed_forward(f))
    table = tuple(sq.lookup[(a, a)] for a in range(len(f.dom)))
    return SpanMor(identity_span(f.dom), comp, Mor(f.dom, comp.apex, table, check=False))


def adjunction_counit(f: Mor) -> SpanMor:
    """``[f]_F . [f]_B => id_y``, given by ``f`` itself."""
    comp, sq = compose_with_square(embed_forward(f), embed_backward(f))
    table = tuple(f.table[a] for a, _ in sq.pairs)
    return SpanMor(comp, identity_span(f.cod), Mor(comp.apex, f.cod, table, check=False))


def check_triangle_identities(f: Mor) -> Report:
    """Both zig-zag composites for ``[f]_F -| [f]_B`` are identities."""
    fF, fB = embed_forward(f), embed_backward(f)
    eta, eps = adjunction_unit(f), adjunction_counit(f)
    # [f]_F => [f]_F id => [f]_F ([f]_B [f]_F) => ([f]_F [f]_B) [f]_F => id [f]_F => [f]_F
    z1 = invert_2cell(right_unitor(fF))
    z1 = vcompose(whisker_left(fF, eta), z1)
    z1 = vcompose(invert_2cell(associator(fF, fB, fF)), z1)
    z1 = vcompose(whisker_right(eps, fF), z1)
    z1 = vcompose(left_unitor(fF), z1)
    if z1.mediating.table != tuple(range(len(fF.apex))):
        return Report(False, "first triangle identity fails", f)
    # [f]_B => id [f]_B => ([f]_B [f]_F) [f]_B => [f]_B ([f]_F [f]_B) => [f]_B id => [f]_B
    z2 = invert_2cell(left_unitor(fB))
    z2 = vcompose(whisker_right(eta, fB), z2)
    z2 = vcompose(associator(fB, fF, fB), z2)
    z2 = vcompose(whisker_left(fB, eps), z2)
    z2 = vcompose(right_unitor(fB), z2)
    if z2.mediating.table != tuple(range(len(fB.apex))):
        return Report(False, "second triangle identity fails", f)
    return Report(True, cases=2)


# pullbacks in the span category


@dataclass(frozen=True)
class FFPullback:
    """The square of forward spans over ``[f]_F`` and ``[g]_F``."""

    square: PullbackSquare
    leg_x: Span  # [proj_g]_F : apex -> dom f
    leg_z: Span  # [proj_f]_F : apex -> dom g


def pullback_FF(f: Mor, g: Mor) -> FFPullback:
    sq = pullback(f, g)
    return FFPullback(sq, embed_forward(sq.proj_g), embed_forward(sq.proj_f))


def check_FF_terminal(d: FFPullback, probe_bound: int = 3) -> Report:
    """Every commuting cone ``x <- u -> z`` with ``|u| <= probe_bound``
    factors through the apex in exactly one way."""
    from .generate import all_maps, objects_up_to_iso

    sq = d.square
    f, g = sq.f, sq.g
    n = 0
    for u in objects_up_to_iso(f.dom.group, probe_bound):
        for a in all_maps(u, f.dom):
            for b in all_maps(u, g.dom):
                if any(f.table[a.table[i]] != g.table[b.table[i]] for i in range(len(u))):
                    continue
                n += 1
                fac = [m for m in all_maps(u, sq.apex)
                       if compose(sq.proj_g, m).table == a.table and compose(sq.proj_f, m).table == b.table]
                if len(fac) != 1:
                    return Report(False, f"cone factors {len(fac)} times", (a, b), n)
    return Report(True, cases=n)


@dataclass(frozen=True)
class BFPullback:
    """Pullback of ``[f]_B`` and ``[g]_F`` for ``g: a -> b``, ``f: b -> c``:
    the distributivity diagram ``f_* g`` with its two legs as spans."""

    diagram: DistributivityDiagram
    leg_a: Span  # [eps]_B then [g~]_F : from a to w
    leg_c: Span  # the forward span [g]_F for g: w -> c, read as a span from c


def pullback_BF(f: Mor, g: Mor) -> BFPullback:
    if not f.F:
        raise CompositionError("pullback_BF needs f to carry the F flag")
    d = dependent_product(g, f)
    leg_a = compose_spans(embed_forward(d.f_tilde), embed_backward(d.eps))
    leg_c = embed_backward(d.g)
    return BFPullback(d, leg_a, leg_c)


def span_2cell_count(s: Span, t: Span) -> int:
    """Number of 2-cells ``s => t``, by brute force."""
    allowed = [
        [k for k in range(len(t.apex)) if t.back.table[k] == s.back.table[e] and t.fwd.table[k] == s.fwd.table[e]]
        for e in range(len(s.apex))
    ]
    return sum(1 for _ in equivariant_lifts(s.apex, allowed, t.apex))
