"""Exact linear combinations over hashable basis keys.

All algebra elements in this package are finite maps ``key -> Fraction`` with
zero coefficients dropped.  Subclasses fix the key type and add their own
products; this base class only provides the vector-space operations and a
deterministic text renderer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Scalar = int | Fraction


class LinComb:
    """Finite rational linear combination; the empty map is zero."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | Iterable[tuple] | None = None):
        data: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                c = data.get(key, 0) + Fraction(coeff)
                if c:
                    data[key] = c
                elif key in data:
                    del data[key]
        self.terms = data

    # Subclass hook: rebuild an element of the same kind (carrying any extra
    # state such as a basis flag) from a terms mapping.
    def _build(self, terms) -> "LinComb":
        return type(self)(terms)

    def _check_compatible(self, other):
        if type(self) is not type(other):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def get(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return self._build(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._build({k: -c for k, c in self.terms.items()})

    def scale(self, scalar: Scalar):
        s = Fraction(scalar)
        if not s:
            return self._build({})
        return self._build({k: s * c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    def __truediv__(self, scalar):
        return self.scale(Fraction(1, 1) / Fraction(scalar))

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self.terms == other.terms

    # defining __eq__ leaves instances unhashable, which is intended

    def __repr__(self):
        return f"{type(self).__name__}({self.terms!r})"


def format_linear(items: list[tuple[Fraction, str]]) -> str:
    """Render ``coeff * key`` terms as a signed sum; unit keys render as ``""``."""
    if not items:
        return "0"
    parts: list[str] = []
    for coeff, ktext in items:
        mag = abs(coeff)
        if not ktext:
            body = str(mag)
        elif mag == 1:
            body = ktext
        else:
            body = f"{mag}*{ktext}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts)
