"""
Kazhdan-Lusztig polynomials of S_n, their mu-coefficients, and the
(double) parabolic variants obtained from maximal coset elements.

The engine evaluates P_{x,y} by the descent recursion: with s a descent of y,

* s x > x                     ->  P_{x,y} = P_{sx,y}
* s x < x, x not <= sy        ->  P_{x,y} = P_{sx,sy}
* s x < x, x <= sy            ->  P_{x,y} = P_{sx,sy} + q P_{x,sy}
                                   - sum_{x <= z < sy, sz < z} mu(z,sy) q^{(l(y)-l(z))/2} P_{x,z}

>>> from klms.symgroup import Permutation
>>> e, y = Permutation.parse("1234"), Permutation.parse("3412")
>>> str(kl_poly(e, y))
'1 + q'
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError
from .polynomial import ONE, ZERO, HalfExpPoly
from .report import Report
from .symgroup import (
    GenSet, Permutation, all_perms, bruhat_leq, is_min_double_coset_rep,
    longest_element, max_double_coset_element,
)

__all__ = [
    "KLEngine", "SummandTriple", "get_engine", "kl_poly", "mu",
    "parabolic_kl", "left_parabolic_kl", "double_parabolic_kl",
    "decomposition_summands", "summand_residual", "verify_relations",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class KLEngine:
    """
    Memoized KL polynomials for a fixed rank n.

    Permutations are handled internally as indices into `all_perms(n)`.
    `side` selects left descents (relations (2),(4),(5)) or right descents
    (their mirror images) for the recursion; `interval=False` sums over all
    of S_n instead of the Bruhat interval [x, sy]. Both switches exist so the
    variants can be checked against each other.

    Not thread-safe while computing; a fully populated engine can be read
    concurrently.
    """

    def __init__(self, n: int, side: str = "left", interval: bool = True):
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        self.n = n
        self.side = side
        self.interval = interval
        self.perms = all_perms(n)
        self.index = {w: i for i, w in enumerate(self.perms)}
        self.lengths = [w.length for w in self.perms]
        gens = range(1, n)
        self.lmul = {s: [self.index[w.left_mult(s)] for w in self.perms] for s in gens}
        self.rmul = {s: [self.index[w.right_mult(s)] for w in self.perms] for s in gens}
        self._build_bruhat()
        self.memo: dict[tuple[int, int], HalfExpPoly] = {}
        # the recursion nests through mu(z, sy) -> P_{z,sy}
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

    def _build_bruhat(self):
        # down-sets via lifting: if sy < y then [e,y] = [e,sy] ∪ s[e,sy]
        N = len(self.perms)
        L = self.lengths
        below = [0] * N
        below[0] = 1
        for y in range(1, N):
            s = next(s for s in self.lmul if L[self.lmul[s][y]] < L[y])
            sy = self.lmul[s][y]
            mask = below[sy]
            img = 0
            for x in _bits(mask):
                img |= 1 << self.lmul[s][x]
            below[y] = mask | img
        above = [0] * N
        for y in range(N):
            for x in _bits(below[y]):
                above[x] |= 1 << y
        self.below, self.above = below, above
        self.ldesc = {s: sum(1 << w for w in range(N) if L[self.lmul[s][w]] < L[w]) for s in self.lmul}
        self.rdesc = {s: sum(1 << w for w in range(N) if L[self.rmul[s][w]] < L[w]) for s in self.rmul}

    def leq(self, x: int, y: int) -> bool:
        return bool((self.below[y] >> x) & 1)

    def _descent(self, y: int) -> int:
        desc = self.ldesc if self.side == "left" else self.rdesc
        return next(s for s in desc if (desc[s] >> y) & 1)

    def poly_index(self, x: int, y: int) -> HalfExpPoly:
        key = (x, y)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if x == y:
            res = ONE
        elif not self.leq(x, y):
            res = ZERO
        else:
            res = self._recurse(x, y)
        self.memo[key] = res
        return res

    def _recurse(self, x: int, y: int) -> HalfExpPoly:
        L = self.lengths
        s = self._descent(y)
        mul = self.lmul[s] if self.side == "left" else self.rmul[s]
        desc = self.ldesc[s] if self.side == "left" else self.rdesc[s]
        sx, sy = mul[x], mul[y]
        if L[sx] > L[x]:
            return self.poly_index(sx, y)
        if not self.leq(x, sy):
            return self.poly_index(sx, sy)
        res = self.poly_index(sx, sy) + self.poly_index(x, sy).shift(2)
        if self.interval:
            candidates = _bits(self.above[x] & self.below[sy] & desc & ~(1 << sy))
        else:
            candidates = (z for z in range(len(self.perms))
                          if z != sy and (desc >> z) & 1 and self.leq(x, z) and self.leq(z, sy))
        for z in candidates:
            m = self.mu_index(z, sy)
            if m:
                res = res - self.poly_index(x, z).shift(L[y] - L[z]) * m
        return res

    def mu_index(self, x: int, y: int) -> int:
        d = self.lengths[y] - self.lengths[x]
        if d <= 0 or d % 2 == 0 or not self.leq(x, y):
            return 0
        return self.poly_index(x, y).coeff(d - 1)

    def _idx(self, w: Permutation) -> int:
        if w.n != self.n:
            raise ValueError(f"rank mismatch: permutation in S_{w.n}, engine for S_{self.n}")
        return self.index[w]

    def kl_poly(self, x: Permutation, y: Permutation) -> HalfExpPoly:
        return self.poly_index(self._idx(x), self._idx(y))

    def mu(self, x: Permutation, y: Permutation) -> int:
        return self.mu_index(self._idx(x), self._idx(y))

    def bruhat_leq(self, x: Permutation, y: Permutation) -> bool:
        return self.leq(self._idx(x), self._idx(y))


@lru_cache(maxsize=None)
def get_engine(n: int) -> KLEngine:
    return KLEngine(n)


def kl_poly(x: Permutation, y: Permutation) -> HalfExpPoly:
    """P_{x,y}(q); zero unless x <= y in Bruhat order."""
    if x.n != y.n:
        raise ValueError(f"rank mismatch: {x.n} != {y.n}")
    return get_engine(x.n).kl_poly(x, y)


def mu(x: Permutation, y: Permutation) -> int:
    """Coefficient of q^{(l(y)-l(x)-1)/2} in P_{x,y}; zero if x < y fails or the gap is even."""
    if x.n != y.n:
        raise ValueError(f"rank mismatch: {x.n} != {y.n}")
    return get_engine(x.n).mu(x, y)


def parabolic_kl(v1: Permutation, v2: Permutation, J: GenSet) -> HalfExpPoly:
    """P^J_{v1,v2} = P_{v1 w_J, v2 w_J} for minimal representatives of v S_J."""
    for v in (v1, v2):
        if not is_min_double_coset_rep(v, GenSet(J.n), J):
            raise PreconditionError(f"{v} is not a minimal representative of its coset v S_J, J={{{J}}}")
    wJ = longest_element(J)
    return kl_poly(v1 * wJ, v2 * wJ)


def left_parabolic_kl(v1: Permutation, v2: Permutation, J: GenSet) -> HalfExpPoly:
    """Mirror of `parabolic_kl` for cosets S_J v: P_{w_J v1, w_J v2}."""
    for v in (v1, v2):
        if not is_min_double_coset_rep(v, J, GenSet(J.n)):
            raise PreconditionError(f"{v} is not a minimal representative of its coset S_J v, J={{{J}}}")
    wJ = longest_element(J)
    return kl_poly(wJ * v1, wJ * v2)


def double_parabolic_kl(v1: Permutation, v2: Permutation, J1: GenSet, J2: GenSet) -> HalfExpPoly:
    """P^{J1,J2}_{v1,v2} = P_{w1,w2}, w_i the longest element of S_{J1} v_i S_{J2}."""
    if not bruhat_leq(v1, v2):
        raise PreconditionError(f"double parabolic KL needs v1 <= v2, got {v1}, {v2}")
    w1 = max_double_coset_element(v1, J1, J2)
    w2 = max_double_coset_element(v2, J1, J2)
    return kl_poly(w1, w2)


@dataclass(frozen=True)
class SummandTriple:
    """Non-principal summand datum: z, its multiplicity mu(z, s v) and shift l(v) - l(z)."""

    z: Permutation
    multiplicity: int
    shift: int

    def to_json(self) -> dict:
        return {"z": str(self.z), "multiplicity": self.multiplicity, "shift": self.shift}


def _summand_setup(w: Permutation, v: Permutation, k1: int):
    if w.n != v.n:
        raise PreconditionError(f"rank mismatch: {w.n} != {v.n}")
    n = v.n
    if not 2 <= k1 <= n:
        raise PreconditionError(f"k1 must lie in 2..{n}, got {k1}")
    eng = get_engine(n)
    s = k1 - 1
    sv, sw = v.left_mult(s), w.left_mult(s)
    clauses = [
        ("s v < v", sv.length < v.length),
        ("s w < w", sw.length < w.length),
        ("w < v", w != v and eng.bruhat_leq(w, v)),
        ("w < s v", w != sv and eng.bruhat_leq(w, sv)),
    ]
    failed = [name for name, ok in clauses if not ok]
    if failed:
        raise PreconditionError(f"decomposition_summands precondition failed: {', '.join(failed)} "
                                f"(w={w}, v={v}, s=s_{s})")
    return eng, s, sv, sw


def decomposition_summands(w: Permutation, v: Permutation, k1: int) -> list[SummandTriple]:
    """
    The triples (z, mu(z, sv), l(v) - l(z)) for z in
    R(w,v)_{k1} = {z : w <= z < sv, sz < z} with mu(z, sv) != 0,
    where s = s_{k1-1}.
    """
    eng, s, sv, _ = _summand_setup(w, v, k1)
    out = []
    for z in eng.perms:
        if z == sv or z.left_mult(s).length > z.length:
            continue
        if not (eng.bruhat_leq(w, z) and eng.bruhat_leq(z, sv)):
            continue
        m = eng.mu(z, sv)
        if m:
            out.append(SummandTriple(z, m, v.length - z.length))
    return out


def summand_residual(w: Permutation, v: Permutation, k1: int) -> HalfExpPoly:
    """P_{w,v} - P_{sw,sv} - q P_{w,sv} + sum q^{shift/2} mult P_{w,z}; zero when the triples are right."""
    eng, s, sv, sw = _summand_setup(w, v, k1)
    res = eng.kl_poly(w, v) - eng.kl_poly(sw, sv) - eng.kl_poly(w, sv).shift(2)
    for t in decomposition_summands(w, v, k1):
        res = res + eng.kl_poly(w, t.z).shift(t.shift) * t.multiplicity
    return res


def verify_relations(n: int, engine: KLEngine | None = None) -> Report:
    """
    Check the defining relations on every applicable (x, y, s) in S_n:

    * ``diagonal``:   P_{x,x} = 1
    * ``left``:       P_{x,y} = P_{sx,y} when sy < y and sx > x
    * ``right``:      P_{x,y} = P_{xs,y} when ys < y and xs > x
    * ``off-interval``: P_{x,y} = P_{sx,sy} when sy < y, sx < x and x is not <= sy
    * ``recursion``:  the three-term recursion with the mu-correction otherwise
    """
    if n < 2:
        raise PreconditionError(f"verify_relations needs n >= 2, got {n}")
    eng = engine or get_engine(n)
    rep = Report("relations", {"n": n})
    N, L, P = len(eng.perms), eng.lengths, eng.poly_index

    def check(name, x, y, s, lhs, rhs):
        rep.count(name)
        if lhs != rhs:
            rep.fail(relation=name, x=str(eng.perms[x]), y=str(eng.perms[y]), s=s,
                     lhs=str(lhs), rhs=str(rhs))

    for x in range(N):
        check("diagonal", x, x, None, P(x, x), ONE)
    for y in range(N):
        for x in _bits(eng.below[y] & ~(1 << y)):
            for s in range(1, n):
                sx, sy = eng.lmul[s][x], eng.lmul[s][y]
                if L[sy] < L[y]:
                    if L[sx] > L[x]:
                        check("left", x, y, s, P(x, y), P(sx, y))
                    elif not eng.leq(x, sy):
                        check("off-interval", x, y, s, P(x, y), P(sx, sy))
                    else:
                        rhs = P(sx, sy) + P(x, sy).shift(2)
                        for z in _bits(eng.above[x] & eng.below[sy] & eng.ldesc[s] & ~(1 << sy)):
                            m = eng.mu_index(z, sy)
                            if m:
                                rhs = rhs - P(x, z).shift(L[y] - L[z]) * m
                        check("recursion", x, y, s, P(x, y), rhs)
                xs, ys = eng.rmul[s][x], eng.rmul[s][y]
                if L[ys] < L[y] and L[xs] > L[x]:
                    check("right", x, y, s, P(x, y), P(xs, y))
    return rep
