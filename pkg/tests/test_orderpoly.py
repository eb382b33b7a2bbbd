"""Order polynomials: counting oracle, closed forms, identities, constants."""

import itertools
from fractions import Fraction
from math import comb

import pytest

from treehopf import orderpoly
from treehopf.orderpoly import (
    RationalPolynomial,
    binomial_poly,
    delta_nabla_check,
    interpolate_integer_nodes,
    order_poly,
    orderpoly_suite,
    phi_constants,
    phi_recurrence_check,
    reciprocity_check,
    strict_order_poly,
    theta_via_orderpoly,
)
from treehopf.trees import (
    enumerate_forests,
    forest,
    leaf,
    node,
    parse_forest,
    parse_tree,
)


# ---------------------------------------------------------------------------
# Independent oracle: enumerate raw assignments
# ---------------------------------------------------------------------------

def brute_force_count(f, n, strict):
    """Count maps vertex -> {1..n} respecting all parent<child constraints,
    by filtering every assignment."""
    parents = []
    sizes = []
    for t in f.trees:
        offset = sum(sizes)
        counter = itertools.count(offset)

        def walk(u, par):
            v = next(counter)
            parents.append((v, par))
            for c in u.children:
                walk(c, v)

        walk(t, None)
        sizes.append(t.size)
    total_vertices = sum(sizes)
    count = 0
    for assign in itertools.product(range(1, n + 1), repeat=total_vertices):
        ok = True
        for v, par in parents:
            if par is None:
                continue
            if strict and not assign[par] < assign[v]:
                ok = False
                break
            if not strict and not assign[par] <= assign[v]:
                ok = False
                break
        if ok:
            count += 1
    return count


def test_counting_matches_brute_force():
    for size in range(1, 6):
        for f in enumerate_forests((1,), size):
            for n in range(0, 4):
                assert orderpoly.count_order_preserving(f, n, True) == brute_force_count(
                    f, n, True
                )
                assert orderpoly.count_order_preserving(f, n, False) == brute_force_count(
                    f, n, False
                )


def test_interpolation_matches_counts_at_unseen_nodes():
    # polynomials are interpolated at 0..|P|; brute force confirms the values
    # at n = 1..4 for every forest with up to six vertices
    for size in range(1, 7):
        for f in enumerate_forests((1,), size):
            p = strict_order_poly(f)
            q = order_poly(f)
            for n in range(1, 5):
                assert p(n) == brute_force_count(f, n, True)
                assert q(n) == brute_force_count(f, n, False)


# ---------------------------------------------------------------------------
# Polynomial helper
# ---------------------------------------------------------------------------

def test_interpolation_recovers_polynomial():
    p = RationalPolynomial((Fraction(1, 3), -2, Fraction(5, 7)))
    values = [p(n) for n in range(3)]
    assert interpolate_integer_nodes(values) == p


def test_polynomial_shift_and_reflect():
    p = RationalPolynomial((0, 0, 1))  # s^2
    assert p.shifted(1) == RationalPolynomial((1, 2, 1))
    assert p.reflected() == p
    assert RationalPolynomial((0, 1)).reflected() == RationalPolynomial((0, -1))


def test_polynomial_text():
    assert RationalPolynomial((0, 1)).text() == "s"
    assert RationalPolynomial(
        (0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 3))
    ).text() == "1/6*s + 1/2*s^2 + 1/3*s^3"
    assert RationalPolynomial(()).text() == "0"


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def chain_forest(m):
    t = leaf(1)
    for _ in range(m - 1):
        t = node(1, (t,))
    return forest((t,))


def shrub_forest(m):
    return forest((node(1, tuple(leaf(1) for _ in range(m))),))


def test_strict_chain_is_binomial():
    for m in range(1, 7):
        assert strict_order_poly(chain_forest(m)) == binomial_poly(m)


def test_weak_chain_is_shifted_binomial():
    # weak maps of an m-chain = multisets: binom(s+m-1, m)
    for m in range(1, 7):
        assert order_poly(chain_forest(m)) == binomial_poly(m).shifted(m - 1)


def test_weak_singleton_is_s():
    assert order_poly(parse_forest("[1]")) == RationalPolynomial((0, 1))
    assert order_poly(parse_forest("[1]")).text() == "s"


def test_weak_two_leaf_shrub_closed_form():
    # computed by the brute-force oracle and frozen: s/6 + s^2/2 + s^3/3
    expected = RationalPolynomial((0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)))
    assert order_poly(shrub_forest(2)) == expected
    assert [brute_force_count(shrub_forest(2), n, False) for n in range(4)] == [
        expected(n) for n in range(4)
    ]


def bernoulli_numbers(count):
    """Independent: b_m from sum_{j<=m} C(m+1,j) b_j = 0, b_0 = 1."""
    b = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return b


def bernoulli_polynomial(m, b):
    """B_m(u) = sum_k C(m,k) b_k u^(m-k)."""
    coeffs = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        coeffs[m - k] = comb(m, k) * b[k]
    return RationalPolynomial(coeffs)


def integrate(p):
    return RationalPolynomial([0] + [c / (k + 1) for k, c in enumerate(p.coeffs)])


def test_strict_shrub_is_integrated_bernoulli_polynomial():
    b = bernoulli_numbers(8)
    for m in range(1, 6):
        integral = integrate(bernoulli_polynomial(m, b))
        assert strict_order_poly(shrub_forest(m)) == integral, m


def test_weak_shrub_via_reciprocity_of_the_integral():
    b = bernoulli_numbers(8)
    for m in range(1, 6):
        integral = integrate(bernoulli_polynomial(m, b))
        # weak = (-1)^(m+1) * integral evaluated at -s
        expected = Fraction((-1) ** (m + 1)) * integral.reflected()
        assert order_poly(shrub_forest(m)) == expected, m


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

def test_reciprocity_singleton():
    assert reciprocity_check(parse_forest("[1]"))


def test_reciprocity_exhaustive():
    for size in range(1, 7):
        for f in enumerate_forests((1,), size):
            assert reciprocity_check(f), f


def test_chain_three_reciprocity_explicitly():
    strict = strict_order_poly(chain_forest(3))
    weak = order_poly(chain_forest(3))
    assert strict == binomial_poly(3)
    assert weak == binomial_poly(3).shifted(2)
    assert weak == -strict.reflected()


def test_difference_identity_examples():
    # strict chain-2: s(s-1)/2; forward difference gives s
    p = strict_order_poly(chain_forest(2))
    assert p.shifted(1) - p == RationalPolynomial((0, 1))
    assert delta_nabla_check(chain_forest(2).trees[0])
    assert delta_nabla_check(node(1, (shrub_forest(2).trees[0],)))


def test_difference_identities_exhaustive():
    for size in range(1, 7):
        for f in enumerate_forests((1,), size):
            if len(f.trees) == 1:
                assert delta_nabla_check(f.trees[0])


def test_linear_constants_examples():
    assert phi_constants(parse_forest("[1]")) == (1, 1)
    assert phi_constants(parse_forest("[1,1]")) == (0, 0)
    assert phi_constants(chain_forest(2)) == (Fraction(-1, 2), Fraction(1, 2))


def test_phi_recurrence_examples():
    assert phi_recurrence_check(chain_forest(2).trees[0])
    assert phi_recurrence_check(chain_forest(3).trees[0])
    assert phi_recurrence_check(shrub_forest(2).trees[0])


def test_theta_route_examples():
    assert theta_via_orderpoly(parse_tree("0(1)")) == 1
    assert theta_via_orderpoly(node(0, (shrub_forest(2).trees[0],))) == Fraction(1, 6)
    assert theta_via_orderpoly(parse_tree("0(1(1(1)))")) == Fraction(1, 3)


def test_theta_route_matches_backward_difference():
    # for a primitive tree, the linear coefficient of q(s) - q(s-1) for the
    # weak polynomial of the whole tree agrees
    for size in range(1, 6):
        for f in enumerate_forests((1,), size):
            t = node(0, f.trees)
            q = order_poly(forest((node(1, f.trees),)))
            nabla = q - q.shifted(-1)
            assert nabla.linear_coeff == theta_via_orderpoly(t)


def test_size_bound_enforced():
    big = forest(tuple(leaf(1) for _ in range(11)))
    with pytest.raises(ValueError):
        strict_order_poly(big)
    with pytest.raises(ValueError):
        theta_via_orderpoly(parse_tree("1(1)"))  # not a grafting root


def test_full_suite_to_six_vertices():
    report = orderpoly_suite(6)
    assert report.ok, report.failures[:5]
    assert report.checked > 400


# ---------------------------------------------------------------------------
# The explicit poset view
# ---------------------------------------------------------------------------

def test_forest_poset_axioms():
    for size in range(1, 6):
        for f in enumerate_forests((1,), size):
            poset = orderpoly.ForestPoset.from_forest(f)
            n = poset.size
            assert n == f.size
            for u in range(n):
                assert poset.leq(u, u)
                for v in range(n):
                    if poset.leq(u, v) and poset.leq(v, u):
                        assert u == v
                    for w in range(n):
                        if poset.leq(u, v) and poset.leq(v, w):
                            assert poset.leq(u, w)


def test_forest_poset_components_are_trees():
    # canonical order puts the singleton first: vertex 0 alone, 1-2 chained
    f = parse_forest("[1(1),1]")
    poset = orderpoly.ForestPoset.from_forest(f)
    assert poset.covers() == frozenset({(1, 2)})
    assert not poset.leq(0, 1) and not poset.leq(1, 0)


def test_counts_over_poset_match_dp():
    # count via the explicit relation, independently of the tree-walking DP
    import itertools as it

    for size in range(1, 5):
        for f in enumerate_forests((1,), size):
            poset = orderpoly.ForestPoset.from_forest(f)
            for n in range(0, 4):
                for strict in (True, False):
                    count = 0
                    for assign in it.product(range(1, n + 1), repeat=poset.size):
                        ok = True
                        for u in range(poset.size):
                            for v in range(poset.size):
                                if u != v and poset.leq(u, v):
                                    if strict and not assign[u] < assign[v]:
                                        ok = False
                                    if not strict and not assign[u] <= assign[v]:
                                        ok = False
                        if ok:
                            count += 1
                    assert count == orderpoly.count_order_preserving(f, n, strict)
