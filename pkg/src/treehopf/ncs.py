"""Five generating functions over the grafting algebra and their axioms.

The system packs five truncated series (f, g, d, h, m) over one algebra:
f(0) = 1, f(-t) is a two-sided inverse of g(t), g = exp(d), and the
derivative of g equals both g*h and m*g.  Over the grafting algebra of
labeled trees the coefficients are, in the divided basis: signed shrubs for
f, all trees for g, chains weighted by their leaf label for h, primitive
trees weighted by the root-child label for m, and primitive trees weighted by
the tree constants theta for d.  The same equations over the free algebra of
noncommutative symmetric functions yield the universal system, and the
algebra map sending each elementary generator to the matching f-coefficient
specializes one onto the other; its transpose sends forests to
quasi-symmetric functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import duality, gl, nsym
from .series import TruncSeries
from .trees import (
    EMPTY_FOREST,
    Forest,
    LabeledTree,
    branch_forest,
    chain_leaf,
    enumerate_bplus_trees,
    forest,
    forest_text,
    is_chain,
    is_primitive_tree,
    is_shrub,
    leaf,
    nested_cut_sequences,
    shape,
    tree_text,
    _memo_put,
)


@dataclass(frozen=True)
class NCSSystem:
    """A 5-tuple of truncated series sharing one carrier algebra."""

    carrier: str
    order: int
    f: TruncSeries
    g: TruncSeries
    d: TruncSeries
    h: TruncSeries
    m: TruncSeries

    def series_by_name(self, name: str) -> TruncSeries:
        if name not in ("f", "g", "d", "h", "m"):
            raise ValueError(f"unknown series {name!r}")
        return getattr(self, name)


# ---------------------------------------------------------------------------
# Tree constants
# ---------------------------------------------------------------------------

_THETA_CACHE: dict[LabeledTree, Fraction] = {}


def _theta_trivially_zero(t: LabeledTree) -> bool:
    return t.size == 1 or len(t.children) != 1


def theta_recurrence(t: LabeledTree) -> Fraction:
    """Tree constant by the nested single-edge-cut recurrence.

    Zero on the singleton and on trees whose root has several children; one
    on the two-vertex tree; otherwise one minus, for every m >= 2, 1/m! times
    the sum over sequences of m-1 nested single-edge cuts of the product of
    the constants of the m pieces.  Depends only on the underlying shape.
    """
    u = shape(t)
    got = _THETA_CACHE.get(u)
    if got is not None:
        return got
    if _theta_trivially_zero(u):
        val = Fraction(0)
    elif u.size == 2:
        val = Fraction(1)
    else:
        val = Fraction(1)
        for m in range(2, u.size + 1):
            inner = Fraction(0)
            for _cuts, pieces in nested_cut_sequences(u, m, single_edges=True):
                # Pieces whose constant is zero need no recursion; skipping them
                # also cuts off the one self-referential sequence (prune the
                # root edge first, leaving the bare root).
                if any(_theta_trivially_zero(shape(p)) for p in pieces):
                    continue
                prod = Fraction(1)
                for p in pieces:
                    prod *= theta_recurrence(p)
                    if not prod:
                        break
                inner += prod
            val -= inner / factorial(m)
    return _memo_put(_THETA_CACHE, u, val)


# ---------------------------------------------------------------------------
# The system over the grafting algebra
# ---------------------------------------------------------------------------

def _generator_image(labels: tuple[int, ...], m: int) -> gl.GLElem:
    # Coefficient of t^m in f: signed sum over grafting-rooted shrubs.
    out: dict[Forest, Fraction] = {}
    for t in enumerate_bplus_trees(labels, m):
        if is_shrub(t):
            out[branch_forest(t)] = Fraction((-1) ** (len(t.children) + m))
    return gl.GLElem(out, gl.V_BASIS)


def _norm(labels) -> tuple[int, ...]:
    return tuple(sorted(set(labels)))


def _f_series(labels, order: int) -> TruncSeries:
    ls = _norm(labels)
    coeffs = [gl.unit()] + [_generator_image(ls, m) for m in range(1, order + 1)]
    return gl.series(coeffs)


def _g_series(labels, order: int) -> TruncSeries:
    ls = _norm(labels)
    coeffs = [gl.unit()] + [
        gl.GLElem({branch_forest(t): 1 for t in enumerate_bplus_trees(ls, m)}, gl.V_BASIS)
        for m in range(1, order + 1)
    ]
    return gl.series(coeffs)


def build_omega(labels, order: int) -> NCSSystem:
    """The five series over the grafting algebra of labeled trees."""
    if order < 1:
        raise ValueError("order must be at least 1")
    ls = _norm(labels)

    h_coeffs = []
    m_coeffs = []
    for k in range(order):
        h_terms: dict[Forest, Fraction] = {}
        m_terms: dict[Forest, Fraction] = {}
        for t in enumerate_bplus_trees(ls, k + 1):
            if is_chain(t):
                h_terms[branch_forest(t)] = Fraction(chain_leaf(t).label)
            if is_primitive_tree(t):
                m_terms[branch_forest(t)] = Fraction(t.children[0].label)
        h_coeffs.append(gl.GLElem(h_terms, gl.V_BASIS))
        m_coeffs.append(gl.GLElem(m_terms, gl.V_BASIS))

    d_coeffs = [gl.zero()]
    for m in range(1, order + 1):
        d_terms: dict[Forest, Fraction] = {}
        for t in enumerate_bplus_trees(ls, m):
            if is_primitive_tree(t):
                value = theta_recurrence(t)
                if value:
                    d_terms[branch_forest(t)] = value
        d_coeffs.append(gl.GLElem(d_terms, gl.V_BASIS))

    return NCSSystem(
        carrier=f"trees{list(ls)}",
        order=order,
        f=_f_series(ls, order),
        g=_g_series(ls, order),
        d=gl.series(d_coeffs),
        h=gl.series(h_coeffs[: order]),
        m=gl.series(m_coeffs[: order]),
    )


def pi_ncs_system(order: int) -> NCSSystem:
    """The universal system over noncommutative symmetric functions."""
    pi = nsym.pi_system(order)
    return NCSSystem(
        carrier="nsym",
        order=order,
        f=pi.elementary,
        g=pi.complete,
        d=pi.power_second,
        h=pi.power_first,
        m=pi.power_third,
    )


# ---------------------------------------------------------------------------
# Verifying the defining equations
# ---------------------------------------------------------------------------

@dataclass
class EquationCheck:
    equation: str
    status: str
    first_failure: dict | None = None

    def as_dict(self) -> dict:
        return {
            "equation": self.equation,
            "status": self.status,
            "first_failure": self.first_failure,
        }


@dataclass
class NCSReport:
    carrier: str
    order: int
    checks: list[EquationCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "carrier": self.carrier,
            "order": self.order,
            "status": "pass" if self.ok else "fail",
            "checks": [c.as_dict() for c in self.checks],
        }


def _describe(ops, value) -> str:
    describe = getattr(ops, "describe", None)
    return describe(value) if describe else str(value)


def _compare(name: str, lhs: TruncSeries, rhs: TruncSeries) -> EquationCheck:
    order = min(lhs.order, rhs.order)
    lhs = lhs.truncate(order)
    rhs = rhs.truncate(order)
    for degree in range(order + 1):
        if not lhs.ops.eq(lhs.coeffs[degree], rhs.coeffs[degree]):
            diff = lhs.ops.add(lhs.coeffs[degree], lhs.ops.scale(Fraction(-1), rhs.coeffs[degree]))
            return EquationCheck(
                name, "fail", {"degree": degree, "diff": _describe(lhs.ops, diff)}
            )
    return EquationCheck(name, "pass")


def verify_ncs(system: NCSSystem) -> NCSReport:
    """Check all five defining equations coefficientwise."""
    report = NCSReport(system.carrier, system.order)
    ops = system.f.ops
    one = TruncSeries.one(ops, system.order)

    if ops.eq(system.f.coeffs[0], ops.one()):
        report.checks.append(EquationCheck("unit-constant-term", "pass"))
    else:
        report.checks.append(
            EquationCheck(
                "unit-constant-term",
                "fail",
                {"degree": 0, "diff": _describe(ops, system.f.coeffs[0])},
            )
        )

    f_neg = system.f.alternate()
    report.checks.append(_compare("left-inverse", f_neg * system.g, one))
    report.checks.append(_compare("right-inverse", system.g * f_neg, one))

    if ops.eq(system.d.coeffs[0], ops.zero()):
        report.checks.append(_compare("exponential", system.d.exp(), system.g))
    else:
        report.checks.append(
            EquationCheck(
                "exponential",
                "fail",
                {"degree": 0, "diff": _describe(ops, system.d.coeffs[0])},
            )
        )

    g_prime = system.g.derivative()
    g_cut = system.g.truncate(system.h.order)
    report.checks.append(_compare("derivation-right-factor", g_cut * system.h, g_prime))
    g_cut = system.g.truncate(system.m.order)
    report.checks.append(_compare("derivation-left-factor", system.m * g_cut, g_prime))
    return report


# ---------------------------------------------------------------------------
# Logarithm route to the tree constants
# ---------------------------------------------------------------------------

def theta_via_log(labels, order: int) -> dict[LabeledTree, Fraction]:
    """Read the tree constants off the logarithm of the all-trees series.

    Returns the coefficient (possibly zero) of every grafting-rooted tree of
    weight 1..order in the divided basis of log g.
    """
    ls = _norm(labels)
    logs = _g_series(ls, order).log()
    table: dict[LabeledTree, Fraction] = {}
    for m in range(1, order + 1):
        elem = logs.coeffs[m]
        for t in enumerate_bplus_trees(ls, m):
            table[t] = elem.get(branch_forest(t))
    return table


# ---------------------------------------------------------------------------
# Shrub-expansion identity for f(-t)
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"checked": self.checked, "failures": list(self.failures)}


def kappa_expansion_check(labels, order: int) -> CheckReport:
    """Expand B_+ of powers of the labeled-singleton series against f(-t).

    The right side is 1 plus, for every d >= 1, (-1)^d/d! times the grafting
    of all ordered d-tuples of labeled singletons under one new root; it must
    reproduce f(-t) coefficientwise.
    """
    ls = _norm(labels)
    report = CheckReport()
    lhs = [gl.to_t_basis(c) for c in _f_series(ls, order).alternate().coeffs]

    rhs_terms: list[dict[Forest, Fraction]] = [dict() for _ in range(order + 1)]
    rhs_terms[0][EMPTY_FOREST] = Fraction(1)
    for d in range(1, order // min(ls) + 1):
        base = Fraction((-1) ** d, factorial(d))
        for combo in itertools.combinations_with_replacement(ls, d):
            w = sum(combo)
            if w > order:
                continue
            multiplicity = factorial(d)
            for label in set(combo):
                multiplicity //= factorial(combo.count(label))
            key = forest(leaf(x) for x in combo)
            rhs_terms[w][key] = rhs_terms[w].get(key, 0) + base * multiplicity

    for degree in range(order + 1):
        report.checked += 1
        rhs = gl.GLElem(rhs_terms[degree], gl.T_BASIS)
        if lhs[degree] != rhs:
            report.failures.append(
                f"degree {degree}: {gl.text(lhs[degree])} != {gl.text(rhs)}"
            )
    return report


# ---------------------------------------------------------------------------
# Specialization and its transpose
# ---------------------------------------------------------------------------

_IMAGE_CACHE: dict[tuple[tuple[int, ...], int], gl.GLElem] = {}


def specialize(x: nsym.NSymElem, labels) -> gl.GLElem:
    """Algebra map fixed on elementary generators by the signed shrub sums."""
    ls = _norm(labels)
    total = gl.zero()
    for word, c in x.terms.items():
        part = gl.unit()
        for m in word:
            key = (ls, m)
            image = _IMAGE_CACHE.get(key)
            if image is None:
                image = _memo_put(_IMAGE_CACHE, key, _generator_image(ls, m))
            part = gl.mul(part, image)
        total = total + part.scale(c)
    return total


def dual_specialize(f: Forest, labels) -> nsym.QSymElem:
    """Quasi-symmetric image of a forest under the transpose of specialize."""
    return duality.dual_image(lambda a: specialize(a, labels), f)


def specialization_check(labels, order: int) -> CheckReport:
    """Specializing the universal system reproduces the tree system.

    Applies the algebra map coefficientwise to the five series over the free
    algebra and compares against the five tree series, degree by degree.
    """
    ls = _norm(labels)
    report = CheckReport()
    pi = pi_ncs_system(order)
    omega = build_omega(ls, order)
    for name in ("f", "g", "d", "h", "m"):
        src = pi.series_by_name(name)
        dst = omega.series_by_name(name)
        for degree in range(min(src.order, dst.order) + 1):
            report.checked += 1
            image = specialize(src.coeffs[degree], ls)
            if image != dst.coeffs[degree]:
                report.failures.append(
                    f"series {name} degree {degree}: {gl.text(image)} != {gl.text(dst.coeffs[degree])}"
                )
    return report


def hopf_morphism_check(labels, order: int) -> CheckReport:
    """Coalgebra compatibility of the specialization.

    Checks that the generator images are sent to the divided-power coproduct
    pattern, that the g-coefficients form a sequence of divided powers, and
    that every h, d and m coefficient is primitive.
    """
    ls = _norm(labels)
    report = CheckReport()
    omega = build_omega(ls, order)

    images = [gl.unit()] + [specialize(nsym.generator(m), ls) for m in range(1, order + 1)]
    for m in range(1, order + 1):
        report.checked += 1
        lhs = gl.coproduct(images[m])
        rhs = gl.GLTensor({}, gl.V_BASIS)
        for k in range(m + 1):
            rhs = rhs + gl.tensor_of(images[k], images[m - k])
        if lhs != rhs:
            report.failures.append(f"generator image {m} is not a divided-power sequence step")

    for m in range(1, order + 1):
        report.checked += 1
        lhs = gl.coproduct(omega.g.coeffs[m])
        rhs = gl.GLTensor({}, gl.V_BASIS)
        for k in range(m + 1):
            rhs = rhs + gl.tensor_of(omega.g.coeffs[k], omega.g.coeffs[m - k])
        if lhs != rhs:
            report.failures.append(f"g coefficient {m} breaks the divided-power pattern")

    for name in ("h", "d", "m"):
        series = omega.series_by_name(name)
        for degree, coeff in enumerate(series.coeffs):
            if coeff.is_zero():
                continue
            report.checked += 1
            if not gl.is_primitive(coeff):
                report.failures.append(f"{name} coefficient at degree {degree} is not primitive")

    return report


def specialization_rank(labels, order: int) -> dict[int, dict[str, int]]:
    """Rank of the specialization per weight, as a diagnostic.

    Row-reduces the images of all weight-m words over the tree basis; the map
    may or may not be injective and no claim is made either way.
    """
    ls = _norm(labels)
    out: dict[int, dict[str, int]] = {}
    for m in range(1, order + 1):
        words = nsym.compositions(m)
        basis = enumerate_bplus_trees(ls, m)
        index = {branch_forest(t): i for i, t in enumerate(basis)}
        rows = []
        for word in words:
            image = specialize(nsym.NSymElem({word: 1}), ls)
            row = [Fraction(0)] * len(basis)
            for key, c in image.terms.items():
                row[index[key]] = c
            rows.append(row)
        rank = _row_reduce_rank(rows)
        out[m] = {"dimension": len(words), "target_dimension": len(basis), "rank": rank}
    return out


def _row_reduce_rank(rows: list[list[Fraction]]) -> int:
    rows = [row[:] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [inv * v for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# Three-route agreement for the tree constants
# ---------------------------------------------------------------------------

def theta_agreement_report(max_weight: int = 7) -> CheckReport:
    """Recurrence, logarithm and order-polynomial routes agree on all shapes.

    Sweeps every grafting-rooted tree with up to max_weight non-root
    vertices.
    """
    from . import orderpoly

    report = CheckReport()
    log_table = theta_via_log((1,), max_weight)
    for m in range(1, max_weight + 1):
        for t in enumerate_bplus_trees((1,), m):
            report.checked += 1
            rec = theta_recurrence(t)
            via_log = log_table[t]
            via_poly = orderpoly.theta_via_orderpoly(t)
            if not (rec == via_log == via_poly):
                report.failures.append(
                    f"{tree_text(t)}: recurrence={rec} log={via_log} orderpoly={via_poly}"
                )
    return report
