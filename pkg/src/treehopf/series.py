"""Truncated formal power series over an associative unital algebra.

The parameter t is central and all arithmetic is exact modulo t**(N+1).
The engine is generic over a small algebra interface (zero, one, add, scale,
mul, eq) so the same code serves rational scalars, free-algebra elements and
tree-algebra elements.  Coefficients beyond the truncation order are silently
dropped; that is the meaning of truncation, never an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Protocol


class AlgebraOps(Protocol):
    def zero(self) -> Any: ...

    def one(self) -> Any: ...

    def add(self, x, y) -> Any: ...

    def scale(self, c: Fraction, x) -> Any: ...

    def mul(self, x, y) -> Any: ...

    def eq(self, x, y) -> bool: ...


@dataclass(frozen=True)
class RationalOps:
    """The base case: exact rational scalars."""

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def scale(self, c, x):
        return c * x

    def mul(self, x, y):
        return x * y

    def eq(self, x, y) -> bool:
        return x == y

    def describe(self, x) -> str:
        return str(x)


RATIONAL_OPS = RationalOps()


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients c[0..N] of a series known exactly modulo t**(N+1)."""

    ops: Any
    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, ops, order: int) -> "TruncSeries":
        return cls(ops, tuple(ops.zero() for _ in range(order + 1)))

    @classmethod
    def one(cls, ops, order: int) -> "TruncSeries":
        return cls(ops, (ops.one(),) + tuple(ops.zero() for _ in range(order)))

    def _require_same(self, other: "TruncSeries"):
        if self.ops != other.ops:
            raise ValueError("series are defined over different algebras")
        if self.order != other.order:
            raise ValueError(f"truncation order mismatch: {self.order} vs {other.order}")

    def coeff(self, degree: int):
        return self.coeffs[degree] if 0 <= degree <= self.order else self.ops.zero()

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._require_same(other)
        ops = self.ops
        return TruncSeries(ops, tuple(ops.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "TruncSeries":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "TruncSeries":
        ops = self.ops
        c = Fraction(c)
        return TruncSeries(ops, tuple(ops.scale(c, a) for a in self.coeffs))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        """Cauchy product modulo t**(order+1)."""
        self._require_same(other)
        ops = self.ops
        out = []
        for n in range(self.order + 1):
            acc = ops.zero()
            for k in range(n + 1):
                acc = ops.add(acc, ops.mul(self.coeffs[k], other.coeffs[n - k]))
            out.append(acc)
        return TruncSeries(ops, tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._require_same(other)
        return all(self.ops.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series truncated at {self.order} to {order}")
        return TruncSeries(self.ops, self.coeffs[: order + 1])

    def alternate(self) -> "TruncSeries":
        """Substitute t -> -t."""
        ops = self.ops
        return TruncSeries(
            ops,
            tuple(ops.scale(Fraction(-1), a) if m % 2 else a for m, a in enumerate(self.coeffs)),
        )

    def derivative(self) -> "TruncSeries":
        """d/dt; the result is known only modulo t**order."""
        if self.order < 1:
            raise ValueError("cannot differentiate a series truncated at order 0")
        ops = self.ops
        return TruncSeries(
            ops,
            tuple(ops.scale(Fraction(m), self.coeffs[m]) for m in range(1, self.order + 1)),
        )

    def inverse_right(self) -> "TruncSeries":
        """b with self * b = 1; requires unit constant term."""
        ops = self.ops
        if not ops.eq(self.coeffs[0], ops.one()):
            raise ValueError("inverse needs a series with unit constant term")
        out = [ops.one()]
        for n in range(1, self.order + 1):
            acc = ops.zero()
            for k in range(1, n + 1):
                acc = ops.add(acc, ops.mul(self.coeffs[k], out[n - k]))
            out.append(ops.scale(Fraction(-1), acc))
        return TruncSeries(ops, tuple(out))

    def inverse_left(self) -> "TruncSeries":
        """b with b * self = 1; requires unit constant term."""
        ops = self.ops
        if not ops.eq(self.coeffs[0], ops.one()):
            raise ValueError("inverse needs a series with unit constant term")
        out = [ops.one()]
        for n in range(1, self.order + 1):
            acc = ops.zero()
            for k in range(1, n + 1):
                acc = ops.add(acc, ops.mul(out[n - k], self.coeffs[k]))
            out.append(ops.scale(Fraction(-1), acc))
        return TruncSeries(ops, tuple(out))

    def exp(self) -> "TruncSeries":
        """Exponential power sum; requires zero constant term."""
        ops = self.ops
        if not ops.eq(self.coeffs[0], ops.zero()):
            raise ValueError("exp needs a series with zero constant term")
        acc = TruncSeries.one(ops, self.order)
        power = TruncSeries.one(ops, self.order)
        for k in range(1, self.order + 1):
            power = power * self
            acc = acc + power.scale(Fraction(1, factorial(k)))
        return acc

    def log(self) -> "TruncSeries":
        """Logarithm power sum; requires unit constant term."""
        ops = self.ops
        if not ops.eq(self.coeffs[0], ops.one()):
            raise ValueError("log needs a series with unit constant term")
        u = self - TruncSeries.one(ops, self.order)
        acc = TruncSeries.zero(ops, self.order)
        power = TruncSeries.one(ops, self.order)
        for k in range(1, self.order + 1):
            power = power * u
            acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
        return acc
