"""
Reduction of an arbitrary multisegment to parabolic type, and realization of
S(a) as an upper interval of the poset of the reduced multisegment.

The reduction repeatedly raises the run of ends starting at the minimal
end by one; undoing the raises is a sequence of end truncations, and the
truncation map identifies S(a) with an upper set of S(a^s).

>>> w = reduce_to_parabolic(Multisegment.parse("[1,2]+[3,4]"))
>>> str(w.parabolic), [str(d) for d in w.chain], list(w.ksequence)
('[1,3]+[3,4]', ['[3,3]'], [3])
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvariantError, PreconditionError, RealizationError
from .kl import double_parabolic_kl
from .multiseg import MsPoset, Multisegment, Segment, enumerate_poset
from .param import ParamContext, match_permutation, phi_inverse
from .polynomial import HalfExpPoly
from .report import Report
from .symgroup import GenSet, Permutation, min_double_coset_rep

__all__ = [
    "ReductionWitness", "Realization", "masks", "recover_rep", "is_parabolic_type",
    "raise_ends", "reduce_to_parabolic", "truncate_end", "truncate_all",
    "interval_realization", "kl_multisegment", "multisegment_corpus",
    "check_realization", "verify_realization_corpus",
]

MAX_ITERATIONS = 10_000


def masks(a: Multisegment) -> tuple[GenSet, GenSet]:
    """(J1(a), J2(a)): s_i in J1 iff the i-th and (i+1)-th sorted ends agree; J2 likewise for begins."""
    if not len(a):
        raise PreconditionError("masks of the empty multisegment are undefined")
    r = len(a)
    b, e = a.begins(), a.ends()
    J1 = GenSet(r, frozenset(i for i in range(1, r) if e[i - 1] == e[i]))
    J2 = GenSet(r, frozenset(i for i in range(1, r) if b[i - 1] == b[i]))
    return J1, J2


def recover_rep(a: Multisegment) -> Permutation:
    """The unique w in S_r^{J1(a),J2(a)} with a = sum_j [k_j, l_{w(j)}] (k, l sorted begins/ends)."""
    if not len(a):
        raise PreconditionError("recover_rep of the empty multisegment is undefined")
    J1, J2 = masks(a)
    k, l = a.begins(), a.ends()
    w = min_double_coset_rep(match_permutation(k, l, a), J1, J2)
    back = Multisegment(tuple(Segment(k[j], l[w(j + 1) - 1]) for j in range(len(a))))
    if back != a:
        raise InvariantError(f"recover_rep({a}) = {w} does not reproduce the multisegment")
    return w


def is_parabolic_type(a: Multisegment) -> bool:
    """min end >= max begin (vacuously true for the empty multisegment)."""
    if not len(a):
        return True
    return min(a.ends()) >= max(a.begins())


def raise_ends(a: Multisegment) -> tuple[Multisegment, Segment]:
    """
    One reduction step: with m0 the minimal end and l maximal such that every
    m in [m0, l-1] is an end of a, raise every segment ending in [m0, l-1] by
    one. Returns the new multisegment and the chain segment [m0+1, l].
    """
    ends = set(a.ends())
    m0 = min(ends)
    top = m0
    while top in ends:
        top += 1
    segs = tuple(s.end_plus() if m0 <= s.e < top else s for s in a.segments)
    return Multisegment(segs), Segment(m0 + 1, top)


def truncate_end(a: Multisegment, k: int) -> Multisegment:
    """a^{(k)}: every segment ending at k loses its end; [k,k] disappears."""
    segs = []
    for s in a.segments:
        if s.e != k:
            segs.append(s)
        elif s.b < k:
            segs.append(Segment(s.b, k - 1))
    return Multisegment(tuple(segs))


def truncate_all(a: Multisegment, ksequence: list[int]) -> Multisegment:
    """Apply truncate_end for k_r first, down to k_1 last."""
    for k in reversed(ksequence):
        a = truncate_end(a, k)
    return a


@dataclass(frozen=True)
class ReductionWitness:
    original: Multisegment
    parabolic: Multisegment
    chain: tuple[Segment, ...]
    ksequence: tuple[int, ...]
    anchor: Multisegment | None
    rep: Permutation
    masks: tuple[GenSet, GenSet]

    def to_json(self) -> dict:
        return {
            "original": str(self.original),
            "parabolic": str(self.parabolic),
            "chain": [str(d) for d in self.chain],
            "ksequence": list(self.ksequence),
            "anchor": None if self.anchor is None else str(self.anchor),
            "rep": str(self.rep),
            "masks": {"J1": self.masks[0].to_json(), "J2": self.masks[1].to_json()},
        }


def reduce_to_parabolic(a: Multisegment, extra_steps: int = 0) -> ReductionWitness:
    """
    Raise ends until a is of parabolic type; `extra_steps` keeps going that
    many more times, producing an alternative (longer) chain.

    The anchor is left unset here; `interval_realization` fills it in.
    """
    if not len(a):
        raise PreconditionError("cannot reduce the empty multisegment")
    J = masks(a)
    cur, chain = a, []
    extra = extra_steps
    for _ in range(MAX_ITERATIONS):
        if is_parabolic_type(cur):
            if extra <= 0:
                break
            extra -= 1
        cur, delta = raise_ends(cur)
        chain.append(delta)
        if masks(cur) != J:
            raise InvariantError(f"masks changed while reducing {a}: {masks(cur)} != {J}")
    else:
        raise InvariantError(f"reduction of {a} did not terminate in {MAX_ITERATIONS} steps")
    # undoing step i means truncating its points in ascending order, the last step first
    ksequence = [k for d in chain for k in range(d.e, d.b - 1, -1)]
    if truncate_all(cur, ksequence) != a:
        raise InvariantError(f"truncating {cur} along {ksequence} does not give back {a}")
    return ReductionWitness(a, cur, tuple(chain), tuple(ksequence), None, recover_rep(cur), J)


@dataclass(frozen=True)
class Realization:
    witness: ReductionWitness
    poset: MsPoset          # S(original)
    upper: MsPoset          # S(parabolic)
    embedding: dict         # element of S(original) -> its preimage in S(parabolic)

    @property
    def domain(self) -> list[Multisegment]:
        return sorted(self.embedding.values(), key=Multisegment.key)


@lru_cache(maxsize=4096)
def interval_realization(a: Multisegment, extra_steps: int = 0) -> Realization:
    """
    Realize S(a) inside S(a^s): D = {c in S(a^s) : t(c) in S(a)} for the
    composite truncation t. Verifies that D is the upper set of its minimum
    (the anchor) and that t restricted to D is an order isomorphism onto S(a).
    Raises RealizationError with a counterexample otherwise.
    """
    wit = reduce_to_parabolic(a, extra_steps)
    target = enumerate_poset(a)
    upper = enumerate_poset(wit.parabolic)
    ks = list(wit.ksequence)

    def fail(msg, **detail):
        raise RealizationError(f"realization of {a} failed: {msg}",
                               {"multisegment": str(a), "reason": msg, **detail})

    image = {}
    for c in upper:
        t = truncate_all(c, ks)
        if t in target:
            if t in image:
                fail("truncation not injective on D", c1=str(image[t]), c2=str(c), image=str(t))
            image[t] = c
    if len(image) != len(target):
        missing = [str(x) for x in target if x not in image]
        fail("truncation not onto S(a)", missing=missing[:5])
    D = list(image.values())
    mins = [c for c in D if not any(d != c and upper.leq(d, c) for d in D)]
    if len(mins) != 1:
        fail("D has no unique minimum", minima=[str(c) for c in mins])
    anchor = mins[0]
    up = set(upper.up_set(anchor))
    if up != set(D):
        extra = sorted(map(str, up - set(D)))
        fail("D is not the upper set of its minimum", anchor=str(anchor), outside_D=extra[:5])
    for x in target:
        for y in target:
            if target.leq(x, y) != upper.leq(image[x], image[y]):
                fail("truncation is not an order isomorphism", x=str(x), y=str(y),
                     in_target=target.leq(x, y), in_upper=upper.leq(image[x], image[y]))
    wit = ReductionWitness(wit.original, wit.parabolic, wit.chain, wit.ksequence,
                           anchor, wit.rep, wit.masks)
    return Realization(wit, target, upper, image)


def kl_multisegment(b: Multisegment, c: Multisegment, extra_steps: int = 0) -> HalfExpPoly:
    """
    P_{b,c} for b <= c: pull b and c back into S(c^s), invert the
    parametrization against the parabolic baseline of c^s and evaluate the
    double parabolic KL polynomial.
    """
    real = interval_realization(c, extra_steps)
    if b not in real.poset:
        raise PreconditionError(f"{b} <= {c} fails")
    wit = real.witness
    J1, J2 = wit.masks
    k, l = wit.parabolic.begins(), wit.parabolic.ends()
    base = Multisegment(tuple(Segment(x, y) for x, y in zip(k, l)))
    ctx = ParamContext(len(base), J1, J2, base)
    v_c = phi_inverse(ctx, real.embedding[c])
    v_b = phi_inverse(ctx, real.embedding[b])
    return double_parabolic_kl(v_c, v_b, J1, J2)


def multisegment_corpus(max_segments: int, lo: int, hi: int) -> list[Multisegment]:
    """All multisegments with 1..max_segments segments inside [lo, hi], one per translation class."""
    segs = [Segment(b, e) for b in range(lo, hi + 1) for e in range(b, hi + 1)]
    seen, out = set(), []
    for r in range(1, max_segments + 1):
        for combo in itertools.combinations_with_replacement(segs, r):
            a = Multisegment(combo)
            key = a.translate(-a.segments[0].b).key()
            if key not in seen:
                seen.add(key)
                out.append(a)
    return out


def check_realization(a: Multisegment) -> dict | None:
    """None if a reduces and realizes cleanly, otherwise the counterexample."""
    try:
        interval_realization(a)
    except RealizationError as exc:
        return exc.counterexample
    except (InvariantError, PreconditionError) as exc:
        return {"multisegment": str(a), "reason": str(exc)}
    return None


def verify_realization_corpus(max_segments: int = 4, lo: int = 0, hi: int = 6, jobs: int = 1) -> Report:
    """Run `check_realization` over `multisegment_corpus`; results do not depend on `jobs`."""
    corpus = multisegment_corpus(max_segments, lo, hi)
    rep = Report("realization", {"max_segments": max_segments, "span": [lo, hi]})
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(check_realization, corpus, chunksize=256))
    else:
        results = [check_realization(a) for a in corpus]
    for res in results:
        rep.count("multisegments")
        if res is not None:
            rep.fail(**res)
    return rep
