"""Canonical labeled rooted trees and forests.

Vertices carry positive integer labels (their weights); the artificial root
of a grafting tree carries the reserved label 0 and contributes no weight.
Trees and forests are interned canonical values: children are kept sorted by
a fixed total order, so two isomorphic labeled trees (isomorphism preserving
the root and every label) are literally the same object.  Everything in this
module is pure; the memo tables only ever store values that any racing
computation would agree on.

Serialization grammar (bit-exact, canonical child order)::

    tree   := LABEL | LABEL "(" tree ("," tree)* ")"
    forest := "[" "]" | "[" tree ("," tree)* "]"

so the 3-chain over labels {1} with a grafting root prints as ``0(1(1))``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator

GRAFT_ROOT_LABEL = 0

# Optional ceiling on memo-table sizes (entries per table); 0/unset = unbounded.
_MEMO_LIMIT = int(os.environ.get("TREEHOPF_MEMO_LIMIT", "0")) or None


def _memo_put(cache: dict, key, value):
    if _MEMO_LIMIT is None or len(cache) < _MEMO_LIMIT:
        cache[key] = value
    return value


class LabeledTree:
    """A labeled rooted tree in canonical form.

    ``children`` is a tuple sorted by the canonical key (label first, then the
    recursive encoding), so structural equality coincides with labeled
    rooted-tree isomorphism.  Construct instances through :func:`node`.
    """

    __slots__ = ("label", "children", "weight", "size", "_key", "_hash", "_text")

    def __init__(self, label: int, children: tuple["LabeledTree", ...], key):
        self.label = label
        self.children = children
        self.weight = label + sum(c.weight for c in children)
        self.size = 1 + sum(c.size for c in children)
        self._key = key
        self._hash = hash(key)
        self._text: str | None = None

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, LabeledTree) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "LabeledTree"):
        return self._key < other._key

    def __repr__(self):
        return f"LabeledTree({tree_text(self)!r})"


_TREE_POOL: dict[tuple, LabeledTree] = {}


def node(label: int, children: Iterable[LabeledTree] = ()) -> LabeledTree:
    """Intern the canonical tree with the given root label and child multiset."""
    kids = tuple(sorted(children, key=lambda c: c._key))
    key = (label, tuple(c._key for c in kids))
    got = _TREE_POOL.get(key)
    if got is not None:
        return got
    t = LabeledTree(label, kids, key)
    if _MEMO_LIMIT is not None and len(_TREE_POOL) >= _MEMO_LIMIT:
        return t
    return _TREE_POOL.setdefault(key, t)


def leaf(label: int) -> LabeledTree:
    return node(label)


class Forest:
    """A finite multiset of labeled rooted trees; the empty forest is the unit."""

    __slots__ = ("trees", "weight", "size", "_key", "_hash", "_text")

    def __init__(self, trees: tuple[LabeledTree, ...], key):
        self.trees = trees
        self.weight = sum(t.weight for t in trees)
        self.size = sum(t.size for t in trees)
        self._key = key
        self._hash = hash(key)
        self._text: str | None = None

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Forest) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Forest"):
        return self._key < other._key

    def __len__(self):
        return len(self.trees)

    def __iter__(self) -> Iterator[LabeledTree]:
        return iter(self.trees)

    def __repr__(self):
        return f"Forest({forest_text(self)!r})"


_FOREST_POOL: dict[tuple, Forest] = {}


def forest(trees: Iterable[LabeledTree] = ()) -> Forest:
    """Intern the canonical forest with the given tree multiset."""
    ts = tuple(sorted(trees, key=lambda t: t._key))
    key = tuple(t._key for t in ts)
    got = _FOREST_POOL.get(key)
    if got is not None:
        return got
    f = Forest(ts, key)
    if _MEMO_LIMIT is not None and len(_FOREST_POOL) >= _MEMO_LIMIT:
        return f
    return _FOREST_POOL.setdefault(key, f)


EMPTY_FOREST = forest()


def forest_union(a: Forest, b: Forest) -> Forest:
    return forest(a.trees + b.trees)


def bplus(f: Forest) -> LabeledTree:
    """Attach every tree of the forest under a fresh root labeled 0."""
    return node(GRAFT_ROOT_LABEL, f.trees)


def branch_forest(t: LabeledTree) -> Forest:
    """Delete the root, leaving the forest of its branches."""
    return forest(t.children)


GRAFT_UNIT = bplus(EMPTY_FOREST)


def canonicalize(raw, labels: Iterable[int] | None = None) -> LabeledTree:
    """Canonical tree for a possibly unordered description.

    Accepts an existing :class:`LabeledTree`, a bare integer (a leaf), or a
    nested pair ``(label, [child, ...])`` whose children may appear in any
    order.  Labels must be nonnegative integers; 0 is allowed only at the
    root.  When ``labels`` is given, every nonzero label must belong to it.
    Idempotent: canonical input comes back unchanged.
    """
    allowed = frozenset(labels) if labels is not None else None

    def build(item, at_root: bool) -> LabeledTree:
        if isinstance(item, LabeledTree):
            lab, kids = item.label, item.children
        elif isinstance(item, int):
            lab, kids = item, ()
        else:
            lab, kids = item
        if not isinstance(lab, int) or lab < 0:
            raise ValueError(f"label {lab!r} is not a nonnegative integer")
        if lab == GRAFT_ROOT_LABEL and not at_root:
            raise ValueError("label 0 is reserved for the root of grafting trees")
        if lab != GRAFT_ROOT_LABEL and allowed is not None and lab not in allowed:
            raise ValueError(f"label {lab} outside the allowed set {sorted(allowed)}")
        return node(lab, (build(k, False) for k in kids))

    return build(raw, True)


def tree_text(t: LabeledTree) -> str:
    if t._text is None:
        if t.children:
            t._text = f"{t.label}({','.join(tree_text(c) for c in t.children)})"
        else:
            t._text = str(t.label)
    return t._text


def forest_text(f: Forest) -> str:
    if f._text is None:
        f._text = "[" + ",".join(tree_text(t) for t in f.trees) + "]"
    return f._text


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def fail(self, what: str):
        raise ValueError(f"parse error at offset {self.pos}: expected {what} in {self.text!r}")

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.fail(repr(ch))
        self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("an integer label")
        return int(self.text[start : self.pos])

    def tree(self, at_root: bool) -> LabeledTree:
        lab = self.integer()
        if lab == GRAFT_ROOT_LABEL and not at_root:
            raise ValueError("label 0 is reserved for the root of grafting trees")
        kids: list[LabeledTree] = []
        if self.peek() == "(":
            self.pos += 1
            kids.append(self.tree(False))
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.tree(False))
            self.expect(")")
        return node(lab, kids)

    def forest(self) -> Forest:
        self.expect("[")
        trees: list[LabeledTree] = []
        if self.peek() != "]":
            trees.append(self.tree(True))
            while self.peek() == ",":
                self.pos += 1
                trees.append(self.tree(True))
        self.expect("]")
        return forest(trees)

    def done(self):
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("end of input")


def parse_tree(text: str) -> LabeledTree:
    p = _Parser(text)
    t = p.tree(True)
    p.done()
    return t


def parse_forest(text: str) -> Forest:
    p = _Parser(text)
    f = p.forest()
    p.done()
    return f


# ---------------------------------------------------------------------------
# Structure predicates and invariants
# ---------------------------------------------------------------------------

def height(t: LabeledTree) -> int:
    if not t.children:
        return 0
    return 1 + max(height(c) for c in t.children)


def is_chain(t: LabeledTree) -> bool:
    """True when the tree has a single leaf (every vertex has at most one child)."""
    while t.children:
        if len(t.children) != 1:
            return False
        t = t.children[0]
    return True


def is_shrub(t: LabeledTree) -> bool:
    """True when the tree has height exactly 1 (all children of the root are leaves)."""
    return bool(t.children) and all(not c.children for c in t.children)


def is_primitive_tree(t: LabeledTree) -> bool:
    """True when the root has one and only one child."""
    return len(t.children) == 1


def chain_leaf(t: LabeledTree) -> LabeledTree:
    while t.children:
        if len(t.children) != 1:
            raise ValueError("tree is not a chain")
        t = t.children[0]
    return t


_SHAPE_CACHE: dict[LabeledTree, LabeledTree] = {}


def shape(t: LabeledTree) -> LabeledTree:
    """Underlying unlabeled tree, represented with every label set to 1."""
    got = _SHAPE_CACHE.get(t)
    if got is not None:
        return got
    return _memo_put(_SHAPE_CACHE, t, node(1, (shape(c) for c in t.children)))


_ALPHA_CACHE: dict[LabeledTree, int] = {}


def automorphism_count(t: LabeledTree) -> int:
    """Order of the label- and root-preserving automorphism group.

    Children are canonical, so equal siblings are adjacent; each class of m
    equal children contributes m! times the class automorphisms to the m-th
    power.
    """
    got = _ALPHA_CACHE.get(t)
    if got is not None:
        return got
    a = 1
    for _, group in itertools.groupby(t.children):
        block = tuple(group)
        a *= factorial(len(block)) * automorphism_count(block[0]) ** len(block)
    return _memo_put(_ALPHA_CACHE, t, a)


def label_values(obj: LabeledTree | Forest) -> frozenset[int]:
    """Nonzero labels occurring anywhere in the tree or forest."""
    out: set[int] = set()

    def walk(t: LabeledTree):
        if t.label != GRAFT_ROOT_LABEL:
            out.add(t.label)
        for c in t.children:
            walk(c)

    for t in obj.trees if isinstance(obj, Forest) else (obj,):
        walk(t)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Graded enumeration
# ---------------------------------------------------------------------------

def _norm_labels(labels: Iterable[int]) -> tuple[int, ...]:
    ls = tuple(sorted(set(labels)))
    if not ls:
        raise ValueError("label set must be nonempty")
    if any(not isinstance(x, int) or x < 1 for x in ls):
        raise ValueError(f"labels must be positive integers, got {ls}")
    return ls


_TREES_CACHE: dict[tuple, tuple[LabeledTree, ...]] = {}
_FORESTS_CACHE: dict[tuple, tuple[Forest, ...]] = {}
_BOUNDED_CACHE: dict[tuple, tuple[Forest, ...]] = {}


def enumerate_trees(labels: Iterable[int], weight: int) -> tuple[LabeledTree, ...]:
    """All isomorphism classes of labeled trees of the given total weight."""
    ls = _norm_labels(labels)
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    key = (ls, weight)
    got = _TREES_CACHE.get(key)
    if got is not None:
        return got
    out: list[LabeledTree] = []
    for root_label in ls:
        if root_label <= weight:
            for f in enumerate_forests(ls, weight - root_label):
                out.append(node(root_label, f.trees))
    out.sort(key=lambda t: t._key)
    return _memo_put(_TREES_CACHE, key, tuple(out))


def enumerate_forests(labels: Iterable[int], weight: int) -> tuple[Forest, ...]:
    """All forests of the given total weight (weight 0 gives the empty forest)."""
    ls = _norm_labels(labels)
    if weight < 0:
        raise ValueError("weight must be nonnegative")
    key = (ls, weight)
    got = _FORESTS_CACHE.get(key)
    if got is not None:
        return got
    out = _forests_bounded(ls, weight, None)
    return _memo_put(_FORESTS_CACHE, key, out)


def _forests_bounded(ls: tuple[int, ...], weight: int, bound_key) -> tuple[Forest, ...]:
    # Forests whose trees all have canonical key <= bound_key; each multiset is
    # produced exactly once by peeling off its maximal tree first.
    if weight == 0:
        return (EMPTY_FOREST,)
    key = (ls, weight, bound_key)
    got = _BOUNDED_CACHE.get(key)
    if got is not None:
        return got
    out: list[Forest] = []
    for k in range(1, weight + 1):
        for t in enumerate_trees(ls, k):
            if bound_key is not None and t._key > bound_key:
                continue
            for rest in _forests_bounded(ls, weight - k, t._key):
                out.append(forest((t,) + rest.trees))
    out.sort(key=lambda f: f._key)
    return _memo_put(_BOUNDED_CACHE, key, tuple(out))


def enumerate_bplus_trees(labels: Iterable[int], weight: int) -> tuple[LabeledTree, ...]:
    """All grafting-rooted trees of the given weight (the root contributes 0)."""
    return tuple(bplus(f) for f in enumerate_forests(labels, weight))


# ---------------------------------------------------------------------------
# Cuts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cut:
    """An admissible cut; edge ids are preorder indices of the child vertex."""

    edges: frozenset[int]

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class CutResult:
    pruned: Forest
    trunk: LabeledTree


class _TreeIndex:
    """Preorder-indexed view of a canonical tree (vertex 0 is the root)."""

    __slots__ = ("labels", "parent", "children", "size")

    def __init__(self, t: LabeledTree):
        labels: list[int] = []
        parent: list[int] = []
        children: list[tuple[int, ...]] = []
        size: list[int] = []

        def visit(u: LabeledTree, par: int):
            v = len(labels)
            labels.append(u.label)
            parent.append(par)
            children.append(())
            size.append(u.size)
            kids = []
            for c in u.children:
                kids.append(len(labels))
                visit(c, v)
            children[v] = tuple(kids)

        visit(t, -1)
        self.labels = tuple(labels)
        self.parent = tuple(parent)
        self.children = tuple(children)
        self.size = tuple(size)

    def descendants(self, v: int) -> range:
        # Preorder makes every subtree a contiguous index range.
        return range(v, v + self.size[v])


_INDEX_CACHE: dict[LabeledTree, _TreeIndex] = {}


def _index(t: LabeledTree) -> _TreeIndex:
    got = _INDEX_CACHE.get(t)
    if got is not None:
        return got
    return _memo_put(_INDEX_CACHE, t, _TreeIndex(t))


def _antichain_sets(idx: _TreeIndex, alive: frozenset[int]) -> list[frozenset[int]]:
    # All admissible cut vertex sets inside `alive` (vertex = its root edge).
    def opts(v: int) -> list[frozenset[int]]:
        acc: list[frozenset[int]] = [frozenset()]
        for c in idx.children[v]:
            if c in alive:
                cs = opts(c)
                acc = [a | o for a in acc for o in cs]
        acc.append(frozenset((v,)))
        return acc

    acc: list[frozenset[int]] = [frozenset()]
    for c in idx.children[0]:
        if c in alive:
            cs = opts(c)
            acc = [a | o for a in acc for o in cs]
    return acc


def _extract(idx: _TreeIndex, v: int, alive: frozenset[int]) -> LabeledTree:
    return node(idx.labels[v], (_extract(idx, c, alive) for c in idx.children[v] if c in alive))


def _without_subtrees(idx: _TreeIndex, alive: frozenset[int], cut_vertices) -> frozenset[int]:
    dead = set()
    for v in cut_vertices:
        dead.update(u for u in idx.descendants(v) if u in alive)
    return alive - dead


def admissible_cuts(t: LabeledTree) -> tuple[Cut, ...]:
    """Every admissible cut of the tree, the empty cut included."""
    idx = _index(t)
    alive = frozenset(range(t.size))
    sets = _antichain_sets(idx, alive)
    sets.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(Cut(s) for s in sets)


def apply_cut(t: LabeledTree, cut: Cut) -> CutResult:
    """Split the tree into the pruned forest and the trunk containing the root."""
    idx = _index(t)
    n = t.size
    for e in cut.edges:
        if not isinstance(e, int) or not 1 <= e < n:
            raise ValueError(f"edge id {e!r} not in tree {tree_text(t)!r}")
    vs = sorted(cut.edges)
    for i, v in enumerate(vs):
        for w in vs[i + 1 :]:
            if w < v + idx.size[v]:
                raise ValueError("cut is not admissible: two edges share a root-to-leaf path")
    alive = frozenset(range(n))
    pruned = forest(_extract(idx, v, alive) for v in vs)
    trunk = _extract(idx, 0, _without_subtrees(idx, alive, vs))
    return CutResult(pruned, trunk)


_CUT_RESULTS_CACHE: dict[LabeledTree, tuple] = {}


def cut_results(t: LabeledTree) -> tuple[tuple[Cut, Forest, LabeledTree], ...]:
    """All admissible cuts of the tree together with their pruned/trunk parts."""
    got = _CUT_RESULTS_CACHE.get(t)
    if got is not None:
        return got
    idx = _index(t)
    alive = frozenset(range(t.size))
    out = []
    for s in sorted(_antichain_sets(idx, alive), key=lambda s: (len(s), sorted(s))):
        vs = sorted(s)
        pruned = forest(_extract(idx, v, alive) for v in vs)
        trunk = _extract(idx, 0, _without_subtrees(idx, alive, vs))
        out.append((Cut(s), pruned, trunk))
    return _memo_put(_CUT_RESULTS_CACHE, t, tuple(out))


def nested_cut_sequences(
    t: LabeledTree, r: int, single_edges: bool = False
) -> list[tuple[tuple[Cut, ...], tuple[LabeledTree, ...]]]:
    """Sequences of r-1 successively compatible admissible cuts with their r pieces.

    Cuts are applied outermost first: each later cut must survive on the trunk
    left by the earlier ones (equivalently, all pairs are compatible in the
    original tree).  The first r-1 pieces are the pruned forests re-rooted
    under a fresh 0-labeled root, in cutting order; the last piece is the
    remaining trunk.  Edge ids refer to the original tree throughout.  With
    ``single_edges=True`` every cut consists of exactly one edge.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    idx = _index(t)
    out: list[tuple[tuple[Cut, ...], tuple[LabeledTree, ...]]] = []

    def go(alive: frozenset[int], k: int, cuts: tuple, pieces: tuple):
        if k == 0:
            out.append((cuts, pieces + (_extract(idx, 0, alive),)))
            return
        if single_edges:
            candidates = [frozenset((v,)) for v in sorted(alive) if v != 0]
        else:
            candidates = sorted(_antichain_sets(idx, alive), key=lambda s: (len(s), sorted(s)))
        for s in candidates:
            vs = sorted(s)
            piece = node(GRAFT_ROOT_LABEL, (_extract(idx, v, alive) for v in vs))
            go(
                _without_subtrees(idx, alive, vs),
                k - 1,
                cuts + (Cut(s),),
                pieces + (piece,),
            )

    go(frozenset(range(t.size)), r - 1, (), ())
    return out


def graft_positions(scions: Forest, stock: LabeledTree) -> list[LabeledTree]:
    """All attachments of each scion root to a vertex of the stock.

    The stock must carry the 0-labeled grafting root.  The result lists one
    tree per assignment of the m scions to the v(stock) vertices, so its
    length is v(stock)**m, before any merging of isomorphic results.
    """
    if stock.label != GRAFT_ROOT_LABEL:
        raise ValueError("stock must have the 0-labeled grafting root")
    idx = _index(stock)
    n = stock.size
    m = len(scions.trees)
    results: list[LabeledTree] = []
    for assign in itertools.product(range(n), repeat=m):
        extra: dict[int, list[LabeledTree]] = {}
        for pos, v in enumerate(assign):
            extra.setdefault(v, []).append(scions.trees[pos])

        def build(v: int) -> LabeledTree:
            kids = [build(c) for c in idx.children[v]]
            kids.extend(extra.get(v, ()))
            return node(idx.labels[v], kids)

        results.append(build(0))
    return results
