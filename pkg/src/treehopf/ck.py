"""The Connes-Kreimer Hopf algebra of labeled rooted forests.

Free commutative algebra on tree variables: basis monomials are forests,
multiplication is disjoint union, the coproduct sums over admissible cuts
(pruned part on the left, trunk on the right), and the antipode is computed
through the recurrence available in any connected graded bialgebra.
"""

from __future__ import annotations

from fractions import Fraction

from .linear import LinComb, format_linear
from .trees import (
    EMPTY_FOREST,
    Forest,
    LabeledTree,
    cut_results,
    forest,
    forest_text,
    forest_union,
    _memo_put,
)


class CKElem(LinComb):
    """Rational combination of forests (commutative monomials in tree variables)."""

    __slots__ = ()

    def sorted_terms(self) -> list[tuple[Forest, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, kv[0]._key))


class CKTensor(LinComb):
    """Element of the tensor square, keyed by ordered pairs of forests."""

    __slots__ = ()

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0].weight, kv[0][0]._key, kv[0][1]._key),
        )


def unit() -> CKElem:
    return CKElem({EMPTY_FOREST: 1})


def zero() -> CKElem:
    return CKElem()


def from_tree(t: LabeledTree) -> CKElem:
    return CKElem({forest((t,)): 1})


def from_forest(f: Forest) -> CKElem:
    return CKElem({f: 1})


def mul(a: CKElem, b: CKElem) -> CKElem:
    """Bilinear extension of disjoint union of forests."""
    out: dict[Forest, Fraction] = {}
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            key = forest_union(fa, fb)
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return CKElem(out)


def tensor_mul(a: CKTensor, b: CKTensor) -> CKTensor:
    """Componentwise product on the tensor square."""
    out: dict = {}
    for (la, ra), ca in a.terms.items():
        for (lb, rb), cb in b.terms.items():
            key = (forest_union(la, lb), forest_union(ra, rb))
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return CKTensor(out)


def tensor_unit() -> CKTensor:
    return CKTensor({(EMPTY_FOREST, EMPTY_FOREST): 1})


_TREE_COPRODUCT_CACHE: dict[LabeledTree, CKTensor] = {}


def _tree_coproduct(t: LabeledTree) -> CKTensor:
    got = _TREE_COPRODUCT_CACHE.get(t)
    if got is not None:
        return got
    here = forest((t,))
    out: dict = {(here, EMPTY_FOREST): Fraction(1)}
    for _cut, pruned, trunk in cut_results(t):
        key = (pruned, forest((trunk,)))
        out[key] = out.get(key, 0) + 1
    return _memo_put(_TREE_COPRODUCT_CACHE, t, CKTensor(out))


def coproduct(a: CKElem) -> CKTensor:
    """Admissible-cut coproduct, extended multiplicatively over forests."""
    total = CKTensor()
    for f, c in a.terms.items():
        part = tensor_unit()
        for t in f.trees:
            part = tensor_mul(part, _tree_coproduct(t))
        total = total + part.scale(c)
    return total


def counit(a: CKElem) -> Fraction:
    return a.get(EMPTY_FOREST)


_TREE_ANTIPODE_CACHE: dict[LabeledTree, CKElem] = {}


def _tree_antipode(t: LabeledTree) -> CKElem:
    got = _TREE_ANTIPODE_CACHE.get(t)
    if got is not None:
        return got
    # From m(S x id)Delta = unit*counit: S(T) = -T - sum over nonempty cuts
    # of S(pruned) * trunk; the pruned part always has strictly lower weight.
    acc = -from_tree(t)
    for cut, pruned, trunk in cut_results(t):
        if not cut.edges:
            continue
        acc = acc - mul(antipode(from_forest(pruned)), from_tree(trunk))
    return _memo_put(_TREE_ANTIPODE_CACHE, t, acc)


def antipode(a: CKElem) -> CKElem:
    """Hopf antipode; multiplicative over forests, S(1) = 1."""
    total = zero()
    for f, c in a.terms.items():
        part = unit()
        for t in f.trees:
            part = mul(part, _tree_antipode(t))
        total = total + part.scale(c)
    return total


def text(a: CKElem) -> str:
    return format_linear(
        [(c, "" if not f.trees else forest_text(f)) for f, c in a.sorted_terms()]
    )


def to_json_terms(a: CKElem) -> list[dict[str, str]]:
    return [{"coeff": str(c), "forest": forest_text(f)} for f, c in a.sorted_terms()]
