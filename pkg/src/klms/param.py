"""
Parametrization of multisegment posets by (double) coset representatives.

For a baseline Delta_1, ..., Delta_n with nondecreasing begins and ends,
`phi(w) = sum_i [b(Delta_i), e(Delta_{w(i)})]`. Begins repeat exactly at the
positions of J2 and ends exactly at the positions of J1, which makes `phi`
constant on the double cosets S_{J1} w S_{J2}; restricted to the minimal
representatives it is an order-reversing bijection onto S(baseline).

>>> from klms.symgroup import GenSet, Permutation
>>> ctx = ParamContext.from_baseline(
...     Multisegment.parse("[1,3]+[1,4]+[2,5]+[2,6]"), GenSet(4), GenSet(4, {1, 3}))
>>> str(phi(ctx, Permutation.parse("2314")))
'[1,4]+[1,5]+[2,3]+[2,6]'
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import InvariantError, PreconditionError
from .kl import double_parabolic_kl
from .multiseg import Multisegment, Segment, enumerate_poset
from .polynomial import HalfExpPoly
from .report import Report
from .symgroup import (
    GenSet, Permutation, all_gensets, bruhat_leq, is_min_double_coset_rep,
    min_double_coset_rep, min_double_coset_reps,
)

__all__ = [
    "ParamContext", "canonical_baseline", "phi", "phi_inverse",
    "match_permutation", "verify_order_translation", "verify_param_suite",
    "kl_via_param",
]


@dataclass(frozen=True)
class ParamContext:
    n: int
    J1: GenSet
    J2: GenSet
    baseline: Multisegment

    def __post_init__(self):
        _validate_baseline(self)

    @classmethod
    def from_baseline(cls, baseline: Multisegment, J1: GenSet | None = None,
                      J2: GenSet | None = None) -> ParamContext:
        """Wrap a user baseline; masks default to the ones the baseline forces."""
        n = len(baseline)
        b, e = baseline.begins(), baseline.ends()
        if J1 is None:
            J1 = GenSet(n, frozenset(i for i in range(1, n) if e[i - 1] == e[i]))
        if J2 is None:
            J2 = GenSet(n, frozenset(i for i in range(1, n) if b[i - 1] == b[i]))
        return cls(n, J1, J2, baseline)

    @property
    def deltas(self) -> tuple[Segment, ...]:
        return self.baseline.segments

    @property
    def begin_seq(self) -> list[int]:
        return [d.b for d in self.deltas]

    @property
    def end_seq(self) -> list[int]:
        return [d.e for d in self.deltas]

    def reps(self) -> list[Permutation]:
        return min_double_coset_reps(self.J1, self.J2)

    def poset(self):
        return enumerate_poset(self.baseline)


def _validate_baseline(ctx: ParamContext):
    n, J1, J2 = ctx.n, ctx.J1, ctx.J2
    if J1.n != n or J2.n != n:
        raise PreconditionError(f"generator sets must live in S_{n}")
    if len(ctx.baseline) != n:
        raise PreconditionError(f"baseline has {len(ctx.baseline)} segments, expected {n}")
    b = [d.b for d in ctx.baseline.segments]
    e = [d.e for d in ctx.baseline.segments]
    problems = []
    for i in range(1, n):
        if e[i - 1] > e[i]:
            problems.append(f"ends decrease at {i}")
        if (e[i - 1] == e[i]) != (i in J1):
            problems.append(f"e(D_{i}) == e(D_{i + 1}) must hold iff s_{i} in J1")
        if (b[i - 1] == b[i]) != (i in J2):
            problems.append(f"b(D_{i}) == b(D_{i + 1}) must hold iff s_{i} in J2")
    if n and b[-1] > e[0]:
        problems.append(f"b(D_n) = {b[-1]} > e(D_1) = {e[0]}")
    if problems:
        raise PreconditionError(f"invalid baseline {ctx.baseline}: " + "; ".join(problems))


def canonical_baseline(n: int, J1: GenSet, J2: GenSet) -> ParamContext:
    """b(D_1) = 1 and e(D_1) = n, stepping by one except at J2 (begins) / J1 (ends)."""
    b, e = [1], [n]
    for i in range(1, n):
        b.append(b[-1] + (0 if i in J2 else 1))
        e.append(e[-1] + (0 if i in J1 else 1))
    baseline = Multisegment(tuple(Segment(bi, ei) for bi, ei in zip(b, e)))
    return ParamContext(n, J1, J2, baseline)


def phi(ctx: ParamContext, w: Permutation, check: bool = True) -> Multisegment:
    """sum_i [b(Delta_i), e(Delta_{w(i)})] for w a minimal double coset rep."""
    if w.n != ctx.n:
        raise PreconditionError(f"rank mismatch: {w.n} != {ctx.n}")
    if not is_min_double_coset_rep(w, ctx.J1, ctx.J2):
        raise PreconditionError(f"{w} is not in S_{ctx.n}^{{J1,J2}} for J1={{{ctx.J1}}}, J2={{{ctx.J2}}}")
    d = ctx.deltas
    out = Multisegment(tuple(Segment(d[i].b, d[w(i + 1) - 1].e) for i in range(ctx.n)))
    if check and out not in ctx.poset():
        raise InvariantError(f"phi({w}) = {out} is not in S({ctx.baseline})")
    return out


def match_permutation(begin_seq: list[int], end_seq: list[int], b: Multisegment) -> Permutation:
    """
    Some w' with b = sum_j [begin_seq[j], end_seq[w'(j)]].

    Each segment claims the next free position carrying its begin and the
    next free position carrying its end.
    """
    n = len(begin_seq)
    if len(b) != n:
        raise PreconditionError(f"{b} has {len(b)} segments, expected {n}")
    free_b, free_e = defaultdict(list), defaultdict(list)
    for i in reversed(range(n)):
        free_b[begin_seq[i]].append(i)
        free_e[end_seq[i]].append(i)
    images = [0] * n
    for seg in b.segments:
        if not free_b[seg.b] or not free_e[seg.e]:
            raise PreconditionError(f"{b} does not have the begins {begin_seq} and ends {end_seq}")
        images[free_b[seg.b].pop()] = free_e[seg.e].pop() + 1
    return Permutation(tuple(images))


def phi_inverse(ctx: ParamContext, b: Multisegment) -> Permutation:
    """The unique w in S_n^{J1,J2} with phi(w) = b."""
    if b not in ctx.poset():
        raise PreconditionError(f"{b} is not in S({ctx.baseline})")
    w = match_permutation(ctx.begin_seq, ctx.end_seq, b)
    w = min_double_coset_rep(w, ctx.J1, ctx.J2)
    if phi(ctx, w, check=False) != b:
        raise InvariantError(f"phi_inverse({b}) = {w} does not round-trip")
    return w


def verify_order_translation(ctx: ParamContext) -> Report:
    """Check |S(baseline)| = |reps|, bijectivity, and w <= w' iff phi(w') <= phi(w)."""
    rep = Report("param", {"n": ctx.n, "J1": ctx.J1.to_json(), "J2": ctx.J2.to_json(),
                           "baseline": str(ctx.baseline)})
    reps = ctx.reps()
    poset = ctx.poset()
    rep.count("size")
    if len(poset) != len(reps):
        rep.fail(check="size", poset=len(poset), reps=len(reps))
    images = {}
    for w in reps:
        rep.count("roundtrip")
        b = phi(ctx, w)
        images[w] = b
        if phi_inverse(ctx, b) != w:
            rep.fail(check="roundtrip", w=str(w), phi=str(b))
    rep.count("injective")
    if len(set(images.values())) != len(reps):
        rep.fail(check="injective")
    for w in reps:
        for w2 in reps:
            rep.count("order")
            if bruhat_leq(w, w2) != poset.leq(images[w2], images[w]):
                rep.fail(check="order", w=str(w), w2=str(w2),
                         bruhat=bruhat_leq(w, w2), ms=poset.leq(images[w2], images[w]))
    return rep


def verify_param_suite(n: int) -> Report:
    """verify_order_translation on the canonical baseline of every (J1, J2) in S_n."""
    rep = Report("param", {"n": n})
    for J1 in all_gensets(n):
        for J2 in all_gensets(n):
            sub = verify_order_translation(canonical_baseline(n, J1, J2))
            rep.count("contexts")
            rep.merge(sub)
    return rep


def kl_via_param(ctx: ParamContext, b: Multisegment, c: Multisegment) -> HalfExpPoly:
    """P_{b,c} for b <= c in S(baseline), read off the double parabolic KL polynomial."""
    poset = ctx.poset()
    for x in (b, c):
        if x not in poset:
            raise PreconditionError(f"{x} is not in S({ctx.baseline})")
    if not poset.leq(b, c):
        raise PreconditionError(f"{b} <= {c} fails")
    # order reversal: the smaller multisegment is the larger permutation
    return double_parabolic_kl(phi_inverse(ctx, c), phi_inverse(ctx, b), ctx.J1, ctx.J2)
