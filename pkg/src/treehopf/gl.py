"""The Grossman-Larson Hopf algebra of grafting-rooted labeled trees.

Elements are keyed by the branch forest of a 0-rooted tree (so the empty
forest is the unit, the bare grafting root).  Two coordinate systems are
supported and never mixed implicitly: the plain tree basis ``T`` and the
divided basis ``V`` whose basis vectors are trees divided by their
automorphism count.  The product grafts the branches of the left factor onto
the vertices of the right factor in all possible ways; a second, independent
implementation recovers the same structure constants by scanning admissible
cuts of candidate result trees.  The coproduct splits the branch multiset
over all ordered bipartitions, and the antipode has a closed form as an
alternating sum over ordered set partitions of the branches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linear import LinComb, format_linear
from .series import TruncSeries
from .trees import (
    EMPTY_FOREST,
    Forest,
    LabeledTree,
    automorphism_count,
    bplus,
    branch_forest,
    cut_results,
    enumerate_bplus_trees,
    forest,
    forest_text,
    graft_positions,
    label_values,
    _memo_put,
)

V_BASIS = "V"
T_BASIS = "T"


def _check_basis(basis: str):
    if basis not in (V_BASIS, T_BASIS):
        raise ValueError(f"unknown basis {basis!r}; use {V_BASIS!r} or {T_BASIS!r}")


class GLElem(LinComb):
    """Rational combination of grafting-rooted trees, keyed by branch forest."""

    __slots__ = ("basis",)

    def __init__(self, terms=None, basis: str = V_BASIS):
        _check_basis(basis)
        super().__init__(terms)
        self.basis = basis

    def _build(self, terms):
        return GLElem(terms, self.basis)

    def _check_compatible(self, other):
        super()._check_compatible(other)
        if self.basis != other.basis:
            raise TypeError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        if self.basis != other.basis:
            raise TypeError(f"cannot compare {self.basis}-basis with {other.basis}-basis")
        return self.terms == other.terms

    def sorted_terms(self) -> list[tuple[Forest, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, kv[0]._key))


class GLTensor(LinComb):
    """Element of the tensor square, keyed by ordered pairs of branch forests."""

    __slots__ = ("basis",)

    def __init__(self, terms=None, basis: str = V_BASIS):
        _check_basis(basis)
        super().__init__(terms)
        self.basis = basis

    def _build(self, terms):
        return GLTensor(terms, self.basis)

    def _check_compatible(self, other):
        super()._check_compatible(other)
        if self.basis != other.basis:
            raise TypeError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        if self.basis != other.basis:
            raise TypeError(f"cannot compare {self.basis}-basis with {other.basis}-basis")
        return self.terms == other.terms


def unit(basis: str = V_BASIS) -> GLElem:
    return GLElem({EMPTY_FOREST: 1}, basis)


def zero(basis: str = V_BASIS) -> GLElem:
    return GLElem({}, basis)


def from_bplus_tree(t: LabeledTree, basis: str = V_BASIS) -> GLElem:
    if t.label != 0:
        raise ValueError("expected a grafting-rooted tree (root label 0)")
    return GLElem({branch_forest(t): 1}, basis)


def from_branches(f: Forest, basis: str = V_BASIS) -> GLElem:
    return GLElem({f: 1}, basis)


def alpha(f: Forest) -> int:
    """Automorphism count of the grafting-rooted tree with branch forest f."""
    return automorphism_count(bplus(f))


def to_v_basis(a: GLElem) -> GLElem:
    if a.basis == V_BASIS:
        return a
    return GLElem({f: c * alpha(f) for f, c in a.terms.items()}, V_BASIS)


def to_t_basis(a: GLElem) -> GLElem:
    if a.basis == T_BASIS:
        return a
    return GLElem({f: c / alpha(f) for f, c in a.terms.items()}, T_BASIS)


# ---------------------------------------------------------------------------
# Product: grafting route and structure-constant route
# ---------------------------------------------------------------------------

_GRAFT_CACHE: dict[tuple[Forest, Forest], tuple[tuple[Forest, int], ...]] = {}


def _graft_table(scions: Forest, stock_branches: Forest) -> tuple[tuple[Forest, int], ...]:
    # Multiplicity table of the plain-basis product of two basis trees.
    key = (scions, stock_branches)
    got = _GRAFT_CACHE.get(key)
    if got is not None:
        return got
    counts: dict[Forest, int] = {}
    for result in graft_positions(scions, bplus(stock_branches)):
        k = branch_forest(result)
        counts[k] = counts.get(k, 0) + 1
    table = tuple(sorted(counts.items(), key=lambda kv: kv[0]._key))
    return _memo_put(_GRAFT_CACHE, key, table)


def mul(a: GLElem, b: GLElem) -> GLElem:
    """Grafting product; both factors must be written in the same basis."""
    a._check_compatible(b)
    out: dict[Forest, Fraction] = {}
    divided = a.basis == V_BASIS
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            cab = ca * cb
            if divided:
                cab = cab / (alpha(fa) * alpha(fb))
            for key, count in _graft_table(fa, fb):
                c = cab * count
                if divided:
                    c *= alpha(key)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return GLElem(out, a.basis)


_STRUCT_CACHE: dict[tuple[Forest, Forest], tuple[tuple[Forest, int], ...]] = {}


def _structure_table(left: Forest, right: Forest) -> tuple[tuple[Forest, int], ...]:
    # Divided-basis structure constants: the coefficient of a candidate tree
    # is the number of its admissible cuts whose pruned part re-roots to the
    # left factor and whose trunk is the right factor.
    key = (left, right)
    got = _STRUCT_CACHE.get(key)
    if got is not None:
        return got
    if not left.trees:
        return _memo_put(_STRUCT_CACHE, key, ((right, 1),))
    if not right.trees:
        return _memo_put(_STRUCT_CACHE, key, ((left, 1),))
    labels = label_values(left) | label_values(right)
    total = left.weight + right.weight
    stock = bplus(right)
    out = []
    for cand in enumerate_bplus_trees(sorted(labels), total):
        count = 0
        for _cut, pruned, trunk in cut_results(cand):
            if pruned == left and trunk == stock:
                count += 1
        if count:
            out.append((branch_forest(cand), count))
    return _memo_put(_STRUCT_CACHE, key, tuple(out))


def mul_structure(a: GLElem, b: GLElem) -> GLElem:
    """Independent product implementation via admissible-cut structure constants."""
    a._check_compatible(b)
    out: dict[Forest, Fraction] = {}
    divided = a.basis == V_BASIS
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            cab = ca * cb
            for key, count in _structure_table(fa, fb):
                c = cab * count
                if not divided:
                    # plain-basis coefficient: count * alpha(left)*alpha(right)/alpha(result)
                    c = c * Fraction(alpha(fa) * alpha(fb), alpha(key))
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return GLElem(out, a.basis)


# ---------------------------------------------------------------------------
# Coproduct, counit, antipode
# ---------------------------------------------------------------------------

def coproduct(a: GLElem) -> GLTensor:
    """Split the branch multiset over all ordered bipartitions of positions."""
    out: dict = {}
    divided = a.basis == V_BASIS
    for f, c in a.terms.items():
        base = c / alpha(f) if divided else c
        trees = f.trees
        for bits in itertools.product((0, 1), repeat=len(trees)):
            lf = forest(t for t, b in zip(trees, bits) if b == 0)
            rf = forest(t for t, b in zip(trees, bits) if b == 1)
            coeff = base
            if divided:
                coeff = coeff * alpha(lf) * alpha(rf)
            key = (lf, rf)
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return GLTensor(out, a.basis)


def counit(a: GLElem) -> Fraction:
    return a.get(EMPTY_FOREST)


def tensor_of(a: GLElem, b: GLElem) -> GLTensor:
    a._check_compatible(b)
    out: dict = {}
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            out[(fa, fb)] = ca * cb
    return GLTensor(out, a.basis)


def is_primitive(a: GLElem) -> bool:
    """True when the coproduct equals a (x) 1 + 1 (x) a."""
    expected = tensor_of(a, unit(a.basis)) + tensor_of(unit(a.basis), a)
    return coproduct(a) == expected


def _ordered_set_partitions(m: int, r: int):
    # Ordered partitions of positions 0..m-1 into r nonempty blocks, as tuples
    # of index tuples; enumerated through surjective block assignments.
    for assign in itertools.product(range(r), repeat=m):
        if len(set(assign)) != r:
            continue
        blocks = tuple(
            tuple(i for i in range(m) if assign[i] == blk) for blk in range(r)
        )
        yield blocks


_ANTIPODE_CACHE: dict[Forest, GLElem] = {}


def _antipode_basis_t(f: Forest) -> GLElem:
    got = _ANTIPODE_CACHE.get(f)
    if got is not None:
        return got
    trees = f.trees
    m = len(trees)
    if m == 0:
        return _memo_put(_ANTIPODE_CACHE, f, unit(T_BASIS))
    acc = zero(T_BASIS)
    for r in range(1, m + 1):
        sign = (-1) ** r
        for blocks in _ordered_set_partitions(m, r):
            term = unit(T_BASIS)
            for block in blocks:
                term = mul(term, from_branches(forest(trees[i] for i in block), T_BASIS))
            acc = acc + term.scale(sign)
    return _memo_put(_ANTIPODE_CACHE, f, acc)


def antipode(a: GLElem) -> GLElem:
    """Closed-form antipode: alternating sum over ordered branch partitions."""
    acc = zero(T_BASIS)
    for f, c in to_t_basis(a).terms.items():
        acc = acc + _antipode_basis_t(f).scale(c)
    return acc if a.basis == T_BASIS else to_v_basis(acc)


def antipode_by_recurrence(a: GLElem) -> GLElem:
    """Antipode via the connected-graded recurrence, for cross-checking."""

    def on_branches(f: Forest) -> GLElem:
        trees = f.trees
        m = len(trees)
        if m == 0:
            return unit(T_BASIS)
        acc = -from_branches(f, T_BASIS)
        for blocks in _ordered_set_partitions(m, 2):
            left = forest(trees[i] for i in blocks[0])
            right = forest(trees[i] for i in blocks[1])
            acc = acc - mul(on_branches(left), from_branches(right, T_BASIS))
        return acc

    acc = zero(T_BASIS)
    for f, c in to_t_basis(a).terms.items():
        acc = acc + on_branches(f).scale(c)
    return acc if a.basis == T_BASIS else to_v_basis(acc)


# ---------------------------------------------------------------------------
# Series coefficients and rendering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GLSeriesOps:
    """Algebra interface over GLElem for the truncated-series engine."""

    basis: str = V_BASIS

    def zero(self) -> GLElem:
        return GLElem({}, self.basis)

    def one(self) -> GLElem:
        return unit(self.basis)

    def add(self, x: GLElem, y: GLElem) -> GLElem:
        return x + y

    def scale(self, c: Fraction, x: GLElem) -> GLElem:
        return x.scale(c)

    def mul(self, x: GLElem, y: GLElem) -> GLElem:
        return mul(x, y)

    def eq(self, x: GLElem, y: GLElem) -> bool:
        return x == y

    def describe(self, x: GLElem) -> str:
        return text(x)


def series(coeffs: list[GLElem], basis: str = V_BASIS) -> TruncSeries:
    return TruncSeries(GLSeriesOps(basis), tuple(coeffs))


def text(a: GLElem) -> str:
    return format_linear(
        [
            (c, "" if not f.trees else f"{a.basis}{forest_text(f)}")
            for f, c in a.sorted_terms()
        ]
    )


def to_json_terms(a: GLElem) -> list[dict[str, str]]:
    return [
        {"coeff": str(c), "basis": a.basis, "branches": forest_text(f)}
        for f, c in a.sorted_terms()
    ]
