"""
Segments, multisegments and the poset S(a) of multisegments below a.

The order is generated by the elementary operation: pick a linked pair of
segments and replace it by their union and (if nonempty) intersection.

>>> a = Multisegment.parse("[1,2]+[2,3]")
>>> [str(b) for b in elementary_ops(a)]
['[1,3]+[2,2]']
>>> p = enumerate_poset(Multisegment.parse("2*[0,1]+2*[1,2]"))
>>> len(p), str(p.minimum())
(3, '2*[0,2]+2*[1,1]')
"""

from __future__ import annotations

import os
import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import EnumerationCapError, InvariantError

__all__ = [
    "Segment", "Multisegment", "MsPoset", "linked", "elementary_ops",
    "enumerate_poset", "ms_leq", "weight", "minimum", "begins", "ends",
    "DEFAULT_ENUM_CAP", "enum_cap",
]

DEFAULT_ENUM_CAP = 10**6


def enum_cap() -> int:
    """Element cap for poset enumeration; KLMS_ENUM_CAP overrides the default."""
    raw = os.environ.get("KLMS_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True, order=True)
class Segment:
    """The integer interval [b, e]."""

    b: int
    e: int

    def __post_init__(self):
        if self.b > self.e:
            raise ValueError(f"segment [{self.b},{self.e}] has b > e")

    def __str__(self):
        return f"[{self.b},{self.e}]"

    def __len__(self):
        return self.e - self.b + 1

    def contains(self, other: Segment) -> bool:
        return self.b <= other.b and other.e <= self.e

    def end_plus(self) -> Segment:
        return Segment(self.b, self.e + 1)

    def begin_plus(self) -> Segment:
        return Segment(self.b - 1, self.e)

    @classmethod
    def parse(cls, text: str) -> Segment:
        m = re.fullmatch(r"\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*", text)
        if m is None:
            raise ValueError(f"cannot parse segment {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


_TERM_RE = re.compile(r"\s*(?:(\d+)\s*\*\s*)?(\[[^\]]*\])\s*")


@dataclass(frozen=True)
class Multisegment:
    """A finite multiset of segments, kept sorted by (b, e)."""

    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(sorted(self.segments)))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> Multisegment:
        return cls(tuple(Segment(b, e) for b, e in pairs))

    @classmethod
    def parse(cls, text: str) -> Multisegment:
        """Parse `term ("+" term)*` with `term := [mult "*"] "[" b "," e "]"`."""
        text = text.strip()
        if not text or text == "0":
            return cls()
        segs = []
        for chunk in text.split("+"):
            m = _TERM_RE.fullmatch(chunk)
            if m is None:
                raise ValueError(f"cannot parse multisegment term {chunk!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            if mult < 1:
                raise ValueError(f"multiplicity must be positive in {chunk!r}")
            segs.extend([Segment.parse(m.group(2))] * mult)
        return cls(tuple(segs))

    def __str__(self):
        if not self.segments:
            return "0"
        counts = Counter(self.segments)
        parts = []
        for seg in sorted(counts):
            c = counts[seg]
            parts.append(str(seg) if c == 1 else f"{c}*{seg}")
        return "+".join(parts)

    def __repr__(self):
        return f"Multisegment({str(self)!r})"

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def key(self) -> tuple:
        return tuple((s.b, s.e) for s in self.segments)

    @cached_property
    def weight(self) -> dict[int, int]:
        w: dict[int, int] = {}
        for s in self.segments:
            for i in range(s.b, s.e + 1):
                w[i] = w.get(i, 0) + 1
        return dict(sorted(w.items()))

    def begins(self) -> list[int]:
        return sorted(s.b for s in self.segments)

    def ends(self) -> list[int]:
        return sorted(s.e for s in self.segments)

    def translate(self, shift: int) -> Multisegment:
        return Multisegment(tuple(Segment(s.b + shift, s.e + shift) for s in self.segments))


def linked(d1: Segment, d2: Segment) -> bool:
    """True iff d1 ∪ d2 is a segment and neither contains the other."""
    if d1.contains(d2) or d2.contains(d1):
        return False
    lo, hi = (d1, d2) if d1.b <= d2.b else (d2, d1)
    return hi.b <= lo.e + 1


def elementary_ops(a: Multisegment) -> list[Multisegment]:
    """All results of one union/intersection step on a linked pair of a."""
    segs = a.segments
    distinct = sorted(set(segs))
    out = set()
    for i, d1 in enumerate(distinct):
        for d2 in distinct[i + 1:]:
            if not linked(d1, d2):
                continue
            rest = list(segs)
            rest.remove(d1)
            rest.remove(d2)
            rest.append(Segment(min(d1.b, d2.b), max(d1.e, d2.e)))
            lo, hi = max(d1.b, d2.b), min(d1.e, d2.e)
            if lo <= hi:
                rest.append(Segment(lo, hi))
            out.add(Multisegment(tuple(rest)))
    return sorted(out, key=Multisegment.key)


def weight(a: Multisegment) -> dict[int, int]:
    """phi_a(i) = number of segments of a containing i (zero entries omitted)."""
    return dict(a.weight)


def begins(a: Multisegment) -> list[int]:
    return a.begins()


def ends(a: Multisegment) -> list[int]:
    return a.ends()


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class MsPoset:
    """
    The finite poset S(root) = {b : b <= root}.

    Elements are stored in a canonical order (by segment tuple); `below[i]`
    is a bitmask of the indices j with elements[j] <= elements[i].
    """

    def __init__(self, root: Multisegment, elements: list[Multisegment], succ: dict[int, list[int]]):
        self.root = root
        self.elements = elements
        self.index = {x: i for i, x in enumerate(elements)}
        self.succ = succ
        self._close()

    def _close(self):
        N = len(self.elements)
        below = [0] * N
        # elementary steps strictly decrease, so a DFS post-order is safe
        done = [False] * N
        for start in range(N):
            if done[start]:
                continue
            stack = [(start, iter(self.succ[start]))]
            while stack:
                i, it = stack[-1]
                j = next(it, None)
                if j is None:
                    mask = 1 << i
                    for k in self.succ[i]:
                        mask |= below[k]
                    below[i] = mask
                    done[i] = True
                    stack.pop()
                elif not done[j]:
                    if any(k == j for k, _ in stack):
                        raise InvariantError(f"cycle through {self.elements[j]} in S({self.root})")
                    stack.append((j, iter(self.succ[j])))
        self.below = below
        self.above = [0] * N
        for i in range(N):
            for j in _bits(below[i]):
                self.above[j] |= 1 << i

    def __len__(self):
        return len(self.elements)

    def __contains__(self, b: Multisegment) -> bool:
        return b in self.index

    def __iter__(self):
        return iter(self.elements)

    def leq(self, b: Multisegment, c: Multisegment) -> bool:
        """b <= c inside this poset (both must be elements)."""
        return bool((self.below[self.index[c]] >> self.index[b]) & 1)

    def down_set(self, c: Multisegment) -> list[Multisegment]:
        return [self.elements[j] for j in _bits(self.below[self.index[c]])]

    def up_set(self, b: Multisegment) -> list[Multisegment]:
        return [self.elements[j] for j in _bits(self.above[self.index[b]])]

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (upper, lower) as index pairs: transitive reduction of the steps."""
        edges = []
        for i, js in self.succ.items():
            for j in js:
                if not any(k != j and (self.below[k] >> j) & 1 for k in js):
                    edges.append((i, j))
        return sorted(edges)

    def maximal(self) -> list[Multisegment]:
        return [x for i, x in enumerate(self.elements) if self.above[i] == 1 << i]

    def minimal(self) -> list[Multisegment]:
        return [x for i, x in enumerate(self.elements) if self.below[i] == 1 << i]

    def minimum(self) -> Multisegment:
        """The unique minimal element; raises InvariantError if there are several."""
        mins = self.minimal()
        if len(mins) != 1:
            raise InvariantError(f"S({self.root}) has {len(mins)} minimal elements: "
                                 + ", ".join(map(str, mins)))
        return mins[0]

    def is_chain(self) -> bool:
        N = len(self)
        return all((self.below[i] | self.above[i]) == (1 << N) - 1 for i in range(N))

    def to_json(self) -> dict:
        return {
            "root": str(self.root),
            "size": len(self),
            "elements": [str(x) for x in self.elements],
            "covers": [[str(self.elements[i]), str(self.elements[j])] for i, j in self.covers],
        }

    def to_dot(self) -> str:
        lines = ["digraph S {", "  rankdir=TB;", "  node [shape=box, fontname=\"monospace\"];"]
        for i, x in enumerate(self.elements):
            style = ", style=filled, fillcolor=lightblue" if x == self.root else ""
            lines.append(f'  n{i} [label="{x}"{style}];')
        for i, j in self.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=4096)
def _enumerate(a: Multisegment, cap: int) -> MsPoset:
    seen = {a: None}
    todo = deque([a])
    succ_ms: dict[Multisegment, list[Multisegment]] = {}
    while todo:
        x = todo.popleft()
        nxt = elementary_ops(x)
        succ_ms[x] = nxt
        for y in nxt:
            if y not in seen:
                seen[y] = None
                if len(seen) > cap:
                    raise EnumerationCapError(f"S({a}) has more than {cap} elements")
                todo.append(y)
    elements = sorted(seen, key=Multisegment.key)
    index = {x: i for i, x in enumerate(elements)}
    succ = {index[x]: sorted(index[y] for y in ys) for x, ys in succ_ms.items()}
    return MsPoset(a, elements, succ)


def enumerate_poset(a: Multisegment, cap: int | None = None) -> MsPoset:
    """BFS closure of a under elementary operations."""
    return _enumerate(a, enum_cap() if cap is None else cap)


def ms_leq(b: Multisegment, a: Multisegment) -> bool:
    """b <= a in the multisegment order."""
    if b.weight != a.weight:
        return False
    return b in enumerate_poset(a)


def minimum(p: MsPoset) -> Multisegment:
    return p.minimum()
