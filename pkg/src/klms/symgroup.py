"""
The symmetric group S_n in one-line notation, with Bruhat order and
(double) parabolic coset representatives.

Composition convention: `(u * v)(i) == u(v(i))`. Under this convention
`s_1 * s_2` in S_3 is the one-line permutation 231, i.e. left multiplication
by `s_i` swaps the *values* i and i+1 and right multiplication swaps the
*positions* i and i+1.

>>> s1, s2 = simple(1, 3), simple(2, 3)
>>> str(s1 * s2), (s1 * s2).length
('231', 2)
>>> bruhat_leq(Permutation.parse("213"), Permutation.parse("312"))
True
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import PreconditionError

__all__ = [
    "Permutation", "GenSet", "simple", "identity", "all_perms", "compose",
    "length", "bruhat_leq", "descents_left", "descents_right",
    "parabolic_subgroup", "min_coset_reps", "min_left_coset_reps",
    "double_coset", "min_double_coset_reps", "is_min_double_coset_rep",
    "min_double_coset_rep", "max_double_coset_element", "relative_reps",
    "longest_element", "coset_ladder", "all_gensets",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; `images[i-1] == w(i)`."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse "2314" (n <= 9) or "2,3,1,4" (any n)."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self):
        if self.n <= 9:
            return "".join(map(str, self.images))
        return ",".join(map(str, self.images))

    def __repr__(self):
        return f"Permutation({str(self)!r})"

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    @property
    def n(self) -> int:
        return len(self.images)

    @cached_property
    def length(self) -> int:
        w = self.images
        return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])

    @cached_property
    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, wi in enumerate(self.images, start=1):
            inv[wi - 1] = i
        return Permutation(tuple(inv))

    def left_mult(self, i: int) -> Permutation:
        """`s_i * self`: swap the values i and i+1."""
        swap = {i: i + 1, i + 1: i}
        return Permutation(tuple(swap.get(x, x) for x in self.images))

    def right_mult(self, i: int) -> Permutation:
        """`self * s_i`: swap the entries in positions i and i+1."""
        w = list(self.images)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def is_identity(self) -> bool:
        return all(w == i for i, w in enumerate(self.images, start=1))


@dataclass(frozen=True)
class GenSet:
    """A subset J of the simple generators s_1..s_{n-1} of S_n."""

    n: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        bad = [i for i in members if not 1 <= i < self.n]
        if bad:
            raise ValueError(f"generator indices {sorted(bad)} outside 1..{self.n - 1}")
        object.__setattr__(self, "members", members)

    @classmethod
    def parse(cls, n: int, text: str | None) -> GenSet:
        """Parse "1,3"; empty text or None gives the empty set."""
        if text is None or not text.strip():
            return cls(n)
        return cls(n, frozenset(int(t) for t in text.split(",") if t.strip()))

    @classmethod
    def full(cls, n: int) -> GenSet:
        return cls(n, frozenset(range(1, n)))

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __str__(self):
        return ",".join(map(str, sorted(self.members)))

    def to_json(self) -> list[int]:
        return sorted(self.members)


def all_gensets(n: int) -> list[GenSet]:
    """Every subset of {s_1..s_{n-1}}, smallest first."""
    gens = range(1, n)
    return [GenSet(n, frozenset(c)) for r in range(n) for c in itertools.combinations(gens, r)]


def simple(i: int, n: int) -> Permutation:
    """The simple transposition s_i = (i, i+1) in S_n."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not a generator of S_{n}")
    return identity(n).right_mult(i)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Permutation, ...]:
    """All of S_n, sorted by length and then lexicographically."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return tuple(sorted(perms, key=lambda w: (w.length, w.images)))


def _check_rank(*perms: Permutation):
    if len({p.n for p in perms}) > 1:
        raise ValueError(f"rank mismatch: {[p.n for p in perms]}")


def compose(u: Permutation, v: Permutation) -> Permutation:
    _check_rank(u, v)
    return Permutation(tuple(u.images[vi - 1] for vi in v.images))


def length(w: Permutation) -> int:
    return w.length


def bruhat_leq(x: Permutation, y: Permutation) -> bool:
    """Bruhat comparison by the prefix-sorting (tableau) criterion."""
    _check_rank(x, y)
    xs, ys = [], []
    for k in range(x.n - 1):
        xs.append(x.images[k])
        ys.append(y.images[k])
        if any(a > b for a, b in zip(sorted(xs), sorted(ys))):
            return False
    return True


def descents_left(w: Permutation) -> set[int]:
    """{i : s_i w < w}, i.e. i+1 appears before i in one-line notation."""
    inv = w.inverse.images
    return {i for i in range(1, w.n) if inv[i - 1] > inv[i]}


def descents_right(w: Permutation) -> set[int]:
    """{i : w s_i < w}, i.e. w(i) > w(i+1)."""
    return {i for i in range(1, w.n) if w.images[i - 1] > w.images[i]}


@lru_cache(maxsize=None)
def parabolic_subgroup(J: GenSet) -> frozenset[Permutation]:
    """S_J, generated by closing the identity under right multiplication."""
    e = identity(J.n)
    seen = {e}
    todo = deque([e])
    while todo:
        w = todo.popleft()
        for i in J:
            u = w.right_mult(i)
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return frozenset(seen)


def min_coset_reps(J: GenSet) -> list[Permutation]:
    """S_n^J = {w : ws > w for all s in J}, the minimal reps of w S_J."""
    return [w for w in all_perms(J.n) if not descents_right(w) & J.members]


def min_left_coset_reps(J: GenSet) -> list[Permutation]:
    """^J S_n = {w : sw > w for all s in J}, the minimal reps of S_J w."""
    return [w for w in all_perms(J.n) if not descents_left(w) & J.members]


def _check_pair(J1: GenSet, J2: GenSet):
    if J1.n != J2.n:
        raise ValueError(f"rank mismatch: {J1.n} != {J2.n}")


@lru_cache(maxsize=None)
def double_coset(v: Permutation, J1: GenSet, J2: GenSet) -> frozenset[Permutation]:
    """S_{J1} v S_{J2}, by closing {v} under left J1 and right J2 moves."""
    _check_pair(J1, J2)
    seen = {v}
    todo = deque([v])
    while todo:
        w = todo.popleft()
        moves = [w.left_mult(i) for i in J1] + [w.right_mult(i) for i in J2]
        for u in moves:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return frozenset(seen)


def is_min_double_coset_rep(v: Permutation, J1: GenSet, J2: GenSet) -> bool:
    return not (descents_left(v) & J1.members) and not (descents_right(v) & J2.members)


def min_double_coset_reps(J1: GenSet, J2: GenSet) -> list[Permutation]:
    """S_n^{J1,J2}: the minimal-length element of each double coset."""
    _check_pair(J1, J2)
    return [w for w in all_perms(J1.n) if is_min_double_coset_rep(w, J1, J2)]


def min_double_coset_rep(w: Permutation, J1: GenSet, J2: GenSet) -> Permutation:
    """Project w to the minimal element of S_{J1} w S_{J2} by descending."""
    _check_pair(J1, J2)
    while True:
        left = descents_left(w) & J1.members
        if left:
            w = w.left_mult(min(left))
            continue
        right = descents_right(w) & J2.members
        if right:
            w = w.right_mult(min(right))
            continue
        return w


def _extremes(coset) -> tuple[Permutation, Permutation]:
    by_len = sorted(coset, key=lambda w: w.length)
    lo, hi = by_len[0], by_len[-1]
    assert sum(1 for w in coset if w.length == lo.length) == 1, "double coset minimum not unique"
    assert sum(1 for w in coset if w.length == hi.length) == 1, "double coset maximum not unique"
    return lo, hi


def max_double_coset_element(v: Permutation, J1: GenSet, J2: GenSet) -> Permutation:
    """The unique longest element of S_{J1} v S_{J2}, found by enumeration."""
    if not is_min_double_coset_rep(v, J1, J2):
        raise PreconditionError(f"{v} is not a minimal ({J1}|{J2}) double coset representative")
    return _extremes(double_coset(v, J1, J2))[1]


def relative_reps(v: Permutation, J1: GenSet, J2: GenSet) -> list[Permutation]:
    """
    S_{J1}^{J2,v}: elements x of S_{J1} with xs > x for every s in
    S_{J1} ∩ v S_{J2} v^{-1}.

    For a minimal double coset rep v that intersection is the standard
    parabolic subgroup generated by K = {s_i in J1 : v^{-1} s_i v in J2}, so
    the result is the set of minimal representatives of S_{J1} / S_K.
    """
    if not is_min_double_coset_rep(v, J1, J2):
        raise PreconditionError(f"{v} is not a minimal ({J1}|{J2}) double coset representative")
    vinv = v.inverse
    K = set()
    for i in J1:
        conj = vinv * simple(i, v.n) * v
        j = _simple_index(conj)
        if j is not None and j in J2:
            K.add(i)
    return sorted(
        (x for x in parabolic_subgroup(J1) if not descents_right(x) & K),
        key=lambda w: (w.length, w.images),
    )


def _simple_index(w: Permutation) -> int | None:
    moved = [i for i in range(1, w.n + 1) if w(i) != i]
    if len(moved) == 2 and moved[1] == moved[0] + 1:
        return moved[0]
    return None


def longest_element(J: GenSet) -> Permutation:
    """w_J: reverse every maximal run of consecutive generators of J."""
    images = list(range(1, J.n + 1))
    i = 1
    while i < J.n:
        if i in J:
            j = i
            while j in J:
                j += 1
            # generators s_i..s_{j-1} act on positions i..j
            images[i - 1:j] = reversed(images[i - 1:j])
            i = j
        else:
            i += 1
    return Permutation(tuple(images))


def coset_ladder(J: GenSet) -> tuple[GenSet, list[Permutation]]:
    """
    Split off the first generator s_{i0} of J.

    Returns J1 = J - {s_{i0}} and the cycles
    w_j = (i1-j+1, ..., i0+1, i0) for j = 1..i1-i0+1, where i1 - i0 is the
    length of the run of consecutive generators of J starting at i0. These
    are the minimal representatives of S_J / S_{J1}, so
    S_n^{J1} is the disjoint union of the sets S_n^J w_j.
    """
    if not J.members:
        raise PreconditionError("coset_ladder needs a nonempty generator set")
    i0 = min(J.members)
    i1 = i0
    while i1 in J:
        i1 += 1
    J1 = GenSet(J.n, J.members - {i0})
    reps = []
    for j in range(1, i1 - i0 + 2):
        top = i1 - j + 1
        images = list(range(1, J.n + 1))
        # w(i) = i - 1 on i0+1..top, and w(i0) = top
        for i in range(i0 + 1, top + 1):
            images[i - 1] = i - 1
        images[i0 - 1] = top
        reps.append(Permutation(tuple(images)))
    return J1, reps
