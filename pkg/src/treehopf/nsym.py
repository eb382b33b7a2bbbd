"""Noncommutative symmetric functions and quasi-symmetric functions.

NSym is the free associative algebra on generators indexed by positive
integers; its basis words are tuples of indices and the weight of a word is
the sum of its letters.  The five classical generating functions (elementary,
complete, and the three kinds of power sums) are produced by solving the
defining series equations by truncated arithmetic, never by transcribing
closed formulas.  QSym, the graded dual, is carried in the monomial basis
indexed by compositions, with the quasi-shuffle product and deconcatenation
coproduct; the duality pairing matches products of complete functions with
monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linear import LinComb, format_linear
from .series import TruncSeries

Word = tuple[int, ...]
Composition = tuple[int, ...]

EMPTY_WORD: Word = ()


def word_weight(w: Word) -> int:
    return sum(w)


class NSymElem(LinComb):
    """Rational combination of free-algebra words."""

    __slots__ = ()

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (word_weight(kv[0]), kv[0]))

    def max_weight(self) -> int:
        return max((word_weight(w) for w in self.terms), default=0)


class NSymTensor(LinComb):
    """Element of the tensor square of the free algebra."""

    __slots__ = ()


class QSymElem(LinComb):
    """Rational combination of monomial quasi-symmetric functions."""

    __slots__ = ()

    def sorted_terms(self) -> list[tuple[Composition, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (word_weight(kv[0]), kv[0]))


class QSymTensor(LinComb):
    """Element of the tensor square of QSym in the monomial basis."""

    __slots__ = ()


# ---------------------------------------------------------------------------
# NSym: algebra and Hopf structure
# ---------------------------------------------------------------------------

def unit() -> NSymElem:
    return NSymElem({EMPTY_WORD: 1})


def generator(m: int) -> NSymElem:
    """The m-th elementary generator as a one-letter word."""
    if m < 1:
        raise ValueError("generator index must be positive")
    return NSymElem({(m,): 1})


def mul(a: NSymElem, b: NSymElem, max_weight: int | None = None) -> NSymElem:
    """Concatenation product; words heavier than max_weight are dropped."""
    out: dict[Word, Fraction] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            w = wa + wb
            if max_weight is not None and word_weight(w) > max_weight:
                continue
            c = out.get(w, 0) + ca * cb
            if c:
                out[w] = c
            elif w in out:
                del out[w]
    return NSymElem(out)


def tensor_mul(a: NSymTensor, b: NSymTensor) -> NSymTensor:
    out: dict = {}
    for (la, ra), ca in a.terms.items():
        for (lb, rb), cb in b.terms.items():
            key = (la + lb, ra + rb)
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return NSymTensor(out)


def tensor_unit() -> NSymTensor:
    return NSymTensor({(EMPTY_WORD, EMPTY_WORD): 1})


def coproduct(a: NSymElem) -> NSymTensor:
    """Algebra-map coproduct fixed by the divided-power rule on generators."""
    total = NSymTensor()
    for w, c in a.terms.items():
        part = tensor_unit()
        for m in w:
            letter = NSymTensor(
                {((k,) if k else EMPTY_WORD, (m - k,) if m - k else EMPTY_WORD): 1 for k in range(m + 1)}
            )
            part = tensor_mul(part, letter)
        total = total + part.scale(c)
    return total


def counit(a: NSymElem) -> Fraction:
    return a.get(EMPTY_WORD)


_ANTIPODE_GEN_CACHE: dict[int, NSymElem] = {}


def _antipode_generator(m: int) -> NSymElem:
    got = _ANTIPODE_GEN_CACHE.get(m)
    if got is not None:
        return got
    # Connected-graded recurrence from m(S x id)Delta = unit*counit.
    acc = -generator(m)
    for k in range(1, m):
        acc = acc - mul(_antipode_generator(k), generator(m - k))
    _ANTIPODE_GEN_CACHE[m] = acc
    return acc


def antipode(a: NSymElem) -> NSymElem:
    """Hopf antipode, extended over words as an algebra anti-homomorphism."""
    total = NSymElem()
    for w, c in a.terms.items():
        part = unit()
        for m in reversed(w):
            part = mul(part, _antipode_generator(m))
        total = total + part.scale(c)
    return total


def omega_lambda(a: NSymElem) -> NSymElem:
    """The anti-involution fixing every elementary generator: reverse words."""
    return NSymElem({tuple(reversed(w)): c for w, c in a.terms.items()})


# ---------------------------------------------------------------------------
# The five generating functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WordOps:
    """Algebra interface over NSymElem for the truncated-series engine."""

    max_weight: int | None = None

    def zero(self) -> NSymElem:
        return NSymElem()

    def one(self) -> NSymElem:
        return unit()

    def add(self, x, y):
        return x + y

    def scale(self, c, x):
        return x.scale(c)

    def mul(self, x, y):
        return mul(x, y, self.max_weight)

    def eq(self, x, y) -> bool:
        return x == y

    def describe(self, x) -> str:
        return text(x)


@dataclass(frozen=True)
class PiSystem:
    """The five classical generating functions over NSym, truncated at `order`.

    * elementary: sum of t^m times the m-th elementary generator,
    * complete: the two-sided inverse of elementary(-t),
    * power_second: log of complete (coefficient of t^m is the m-th power sum
      of the second kind divided by m),
    * power_first: solves complete' = complete * power_first,
    * power_third: solves complete' = power_third * complete.
    """

    order: int
    elementary: TruncSeries
    complete: TruncSeries
    power_second: TruncSeries
    power_first: TruncSeries
    power_third: TruncSeries


_PI_CACHE: dict[int, PiSystem] = {}


def pi_system(order: int) -> PiSystem:
    """Solve the defining equations over NSym by truncated-series arithmetic."""
    if order < 1:
        raise ValueError("order must be at least 1")
    got = _PI_CACHE.get(order)
    if got is not None:
        return got
    ops = WordOps()
    lam = TruncSeries(ops, (unit(),) + tuple(generator(m) for m in range(1, order + 1)))
    sigma = lam.alternate().inverse_right()
    power_second = sigma.log()
    sigma_prime = sigma.derivative()
    lam_neg_cut = lam.alternate().truncate(order - 1)
    power_first = lam_neg_cut * sigma_prime
    power_third = sigma_prime * lam_neg_cut
    pi = PiSystem(order, lam, sigma, power_second, power_first, power_third)
    _PI_CACHE[order] = pi
    return pi


def elementary_element(m: int) -> NSymElem:
    return generator(m)


def complete_element(m: int) -> NSymElem:
    """The m-th complete function expanded in elementary words."""
    if m == 0:
        return unit()
    return pi_system(m).complete.coeffs[m]


def power_first_element(m: int) -> NSymElem:
    """The m-th power sum of the first kind."""
    return pi_system(m).power_first.coeffs[m - 1]


def power_second_element(m: int) -> NSymElem:
    """The m-th power sum of the second kind (the series carries it over m)."""
    return pi_system(m).power_second.coeffs[m].scale(m)


def power_third_element(m: int) -> NSymElem:
    """The m-th power sum of the third kind."""
    return pi_system(m).power_third.coeffs[m - 1]


def complete_word(comp: Composition) -> NSymElem:
    """Product of complete functions along a composition, in elementary words."""
    acc = unit()
    for i in comp:
        acc = mul(acc, complete_element(i))
    return acc


_ELEM_IN_COMPLETE: dict[int, NSymElem] = {}


def elementary_in_complete(m: int) -> NSymElem:
    """The m-th elementary generator expanded in complete-basis words.

    Obtained by inverting the complete generating function at -t in a free
    algebra whose one-letter words stand for complete functions.
    """
    if m == 0:
        return unit()
    got = _ELEM_IN_COMPLETE.get(m)
    if got is not None:
        return got
    ops = WordOps()
    sigma_free = TruncSeries(ops, (unit(),) + tuple(generator(k) for k in range(1, m + 1)))
    lam_free = sigma_free.alternate().inverse_right()
    for k in range(1, m + 1):
        _ELEM_IN_COMPLETE.setdefault(k, lam_free.coeffs[k])
    return _ELEM_IN_COMPLETE[m]


def to_complete_basis(a: NSymElem) -> NSymElem:
    """Rewrite an elementary-word element as complete-basis words."""
    total = NSymElem()
    for w, c in a.terms.items():
        part = unit()
        for m in w:
            part = mul(part, elementary_in_complete(m))
        total = total + part.scale(c)
    return total


# ---------------------------------------------------------------------------
# QSym: monomial basis, quasi-shuffle, deconcatenation, duality
# ---------------------------------------------------------------------------

def qsym_unit() -> QSymElem:
    return QSymElem({(): 1})


def monomial(comp: Composition) -> QSymElem:
    if any(p < 1 for p in comp):
        raise ValueError("composition parts must be positive")
    return QSymElem({tuple(comp): 1})


_QSHUFFLE_CACHE: dict[tuple[Composition, Composition], tuple[tuple[Composition, int], ...]] = {}


def _quasi_shuffle(left: Composition, right: Composition) -> tuple[tuple[Composition, int], ...]:
    key = (left, right)
    got = _QSHUFFLE_CACHE.get(key)
    if got is not None:
        return got
    if not left:
        out = ((right, 1),)
    elif not right:
        out = ((left, 1),)
    else:
        counts: dict[Composition, int] = {}
        for head, rest in (
            ((left[0],), _quasi_shuffle(left[1:], right)),
            ((right[0],), _quasi_shuffle(left, right[1:])),
            ((left[0] + right[0],), _quasi_shuffle(left[1:], right[1:])),
        ):
            for comp, n in rest:
                k = head + comp
                counts[k] = counts.get(k, 0) + n
        out = tuple(sorted(counts.items()))
    _QSHUFFLE_CACHE[key] = out
    return out


def qsym_mul(a: QSymElem, b: QSymElem) -> QSymElem:
    """Quasi-shuffle (overlapping shuffle) product on the monomial basis."""
    out: dict[Composition, Fraction] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            for comp, n in _quasi_shuffle(ia, ib):
                c = out.get(comp, 0) + ca * cb * n
                if c:
                    out[comp] = c
                elif comp in out:
                    del out[comp]
    return QSymElem(out)


def qsym_coproduct(a: QSymElem) -> QSymTensor:
    """Deconcatenation coproduct."""
    out: dict = {}
    for comp, c in a.terms.items():
        for k in range(len(comp) + 1):
            key = (comp[:k], comp[k:])
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return QSymTensor(out)


def qsym_counit(a: QSymElem) -> Fraction:
    return a.get(())


def compositions(n: int) -> tuple[Composition, ...]:
    """All compositions of n, in lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ((),)
    out: list[Composition] = []

    def go(remaining: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(1, remaining + 1):
            go(remaining - part, prefix + (part,))

    go(n, ())
    out.sort()
    return tuple(out)


def duality_pairing(a: NSymElem, q: QSymElem) -> Fraction:
    """Graded pairing with products of complete functions dual to monomials."""
    in_complete = to_complete_basis(a)
    return sum((c * q.get(w) for w, c in in_complete.terms.items()), Fraction(0))


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def text(a: NSymElem) -> str:
    return format_linear(
        [(c, "" if not w else "L[" + " ".join(map(str, w)) + "]") for w, c in a.sorted_terms()]
    )


def qsym_text(a: QSymElem) -> str:
    return format_linear(
        [(c, "" if not w else "M[" + ",".join(map(str, w)) + "]") for w, c in a.sorted_terms()]
    )
