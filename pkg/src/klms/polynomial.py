"""
Integer polynomials in a half-integer power of `q`.

A term `c * q^(n/2)` is stored as the pair `n -> c`, so the exponent is always
an exact integer numerator over the fixed denominator 2.

>>> p = HalfExpPoly({0: 1, 2: 1})
>>> str(p * p)
'1 + 2*q + q^2'
>>> p.coeff(2), p.is_integral()
(1, True)
>>> str(HalfExpPoly.parse("3*q^(1/2)"))
'3*q^(1/2)'
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping

__all__ = ["HalfExpPoly"]


class HalfExpPoly:
    """Immutable sparse polynomial with terms `c * q^(n/2)`."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        clean: dict[int, int] = {}
        for n, c in terms:
            n, c = int(n), int(c)
            clean[n] = clean.get(n, 0) + c
        self._terms = {n: c for n, c in sorted(clean.items()) if c != 0}
        self._hash = None

    @classmethod
    def monomial(cls, half_exp: int, coeff: int = 1) -> HalfExpPoly:
        return cls({half_exp: coeff})

    @classmethod
    def zero(cls) -> HalfExpPoly:
        return ZERO

    @classmethod
    def one(cls) -> HalfExpPoly:
        return ONE

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, half_exp: int) -> int:
        """Coefficient of `q^(half_exp/2)`, zero if absent."""
        return self._terms.get(half_exp, 0)

    def is_integral(self) -> bool:
        """True iff every exponent is a nonnegative integer power of `q`."""
        return all(n >= 0 and n % 2 == 0 for n in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int | None:
        """Largest exponent numerator, or None for the zero polynomial."""
        return max(self._terms) if self._terms else None

    def shift(self, half_exp: int) -> HalfExpPoly:
        """Multiply by `q^(half_exp/2)`."""
        return HalfExpPoly({n + half_exp: c for n, c in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = HalfExpPoly({0: other})
        if not isinstance(other, HalfExpPoly):
            return NotImplemented
        out = dict(self._terms)
        for n, c in other._terms.items():
            out[n] = out.get(n, 0) + c
        return HalfExpPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfExpPoly({n: -c for n, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = HalfExpPoly({0: other})
        if not isinstance(other, HalfExpPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfExpPoly({n: c * other for n, c in self._terms.items()})
        if not isinstance(other, HalfExpPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for n1, c1 in self._terms.items():
            for n2, c2 in other._terms.items():
                out[n1 + n2] = out.get(n1 + n2, 0) + c1 * c2
        return HalfExpPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfExpPoly({0: other})
        if not isinstance(other, HalfExpPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"HalfExpPoly({self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(_format_term(n, c) for n, c in self._terms.items())

    def to_json(self) -> list[list[int]]:
        return [[n, c] for n, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> HalfExpPoly:
        return cls((n, c) for n, c in data)

    @classmethod
    def parse(cls, text: str) -> HalfExpPoly:
        """Inverse of `str`; accepts the text form produced by `__str__`."""
        text = text.strip()
        if text == "0":
            return ZERO
        terms = []
        for chunk in text.split(" + "):
            m = _TERM_RE.fullmatch(chunk.strip())
            if m is None:
                raise ValueError(f"cannot parse polynomial term {chunk!r}")
            sign, digits, var, exp = m.group("sign", "coeff", "var", "exp")
            if digits is None and var is None:
                raise ValueError(f"cannot parse polynomial term {chunk!r}")
            c = int(digits) if digits is not None else 1
            if sign == "-":
                c = -c
            if var is None:
                n = 0
            elif exp is None:
                n = 2
            elif "/" in exp:
                num, den = exp.strip("()").split("/")
                if den != "2":
                    raise ValueError(f"exponent denominator must be 2: {chunk!r}")
                n = int(num)
            else:
                n = 2 * int(exp.strip("()"))
            terms.append((n, c))
        return cls(terms)


_TERM_RE = re.compile(
    r"(?P<sign>-)?(?P<coeff>\d+)?(?:\*?(?P<var>q)(?:\^(?P<exp>\(-?\d+/\d+\)|\(-?\d+\)|\d+))?)?"
)


def _format_term(n: int, c: int) -> str:
    if n == 0:
        return str(c)
    if n == 2:
        mono = "q"
    elif n % 2 == 0 and n > 0:
        mono = f"q^{n // 2}"
    elif n % 2 == 0:
        mono = f"q^({n // 2})"
    else:
        mono = f"q^({n}/2)"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


ZERO = HalfExpPoly()
ONE = HalfExpPoly({0: 1})
Q = HalfExpPoly({2: 1})
