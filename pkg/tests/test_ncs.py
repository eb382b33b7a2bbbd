"""The five-series system over trees: axioms, constants, specialization."""

from fractions import Fraction

import pytest

from treehopf import ck, gl, ncs, nsym
from treehopf.trees import (
    EMPTY_FOREST,
    branch_forest,
    enumerate_bplus_trees,
    leaf,
    node,
    parse_forest,
    parse_tree,
    tree_text,
)


def v_terms(pairs):
    return gl.GLElem({parse_forest(k): c for k, c in pairs.items()}, gl.V_BASIS)


def chain_bplus(m, label=1):
    t = leaf(label)
    for _ in range(m - 2):
        t = node(label, (t,))
    return node(0, (t,)) if m >= 2 else node(0, ())


# ---------------------------------------------------------------------------
# Series construction: terms from the two-label displays
# ---------------------------------------------------------------------------

def test_f_series_weight_two_terms():
    omega = ncs.build_omega((1, 2), 3)
    assert omega.f.coeffs[2] == v_terms({"[1,1]": 1, "[2]": -1})


def test_h_series_first_order_terms():
    omega = ncs.build_omega((1, 2), 3)
    assert omega.h.coeffs[1] == v_terms({"[1(1)]": 1, "[2]": 2})


def test_d_series_weight_three_terms():
    omega = ncs.build_omega((1, 2), 3)
    assert omega.d.coeffs[3] == v_terms(
        {
            "[1(2)]": Fraction(1, 2),
            "[2(1)]": Fraction(1, 2),
            "[1(1,1)]": Fraction(1, 6),
            "[1(1(1))]": Fraction(1, 3),
        }
    )


def test_g_series_collects_every_tree():
    omega = ncs.build_omega((1, 2), 3)
    assert len(omega.g.coeffs[3].terms) == 7
    assert all(c == 1 for c in omega.g.coeffs[3].terms.values())


# ---------------------------------------------------------------------------
# Tree constants
# ---------------------------------------------------------------------------

def test_theta_base_cases():
    assert ncs.theta_recurrence(node(0, ())) == 0
    assert ncs.theta_recurrence(parse_tree("0(1)")) == 1
    assert ncs.theta_recurrence(parse_tree("0(1,1)")) == 0  # non-primitive


def test_theta_depends_only_on_shape():
    assert ncs.theta_recurrence(parse_tree("0(2(5))")) == ncs.theta_recurrence(
        parse_tree("0(1(1))")
    )


def test_theta_chain_closed_form():
    for m in range(2, 9):
        assert ncs.theta_recurrence(chain_bplus(m)) == Fraction(1, m - 1)


def test_theta_log_route_weight_one():
    table = ncs.theta_via_log((1,), 1)
    assert table == {parse_tree("0(1)"): Fraction(1)}


def test_theta_log_route_agrees_to_weight_five():
    table = ncs.theta_via_log((1,), 5)
    assert table
    for t, value in table.items():
        assert value == ncs.theta_recurrence(t), tree_text(t)


def test_log_lands_on_primitives():
    table = ncs.theta_via_log((1,), 5)
    for t, value in table.items():
        if len(t.children) != 1:
            assert value == 0, tree_text(t)


# ---------------------------------------------------------------------------
# The defining equations
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("labels", [(1,), (2,), (1, 2), (1, 3)])
def test_axioms_hold_for_several_label_sets(labels):
    report = ncs.verify_ncs(ncs.build_omega(labels, 5))
    assert report.ok, report.as_dict()


def test_inverse_of_g_is_alternated_f():
    omega = ncs.build_omega((1,), 4)
    assert omega.g.inverse_right() == omega.f.alternate()
    assert omega.g.inverse_left() == omega.f.alternate()


def test_log_of_g_is_d():
    omega = ncs.build_omega((1,), 4)
    assert omega.g.log() == omega.d


def test_verify_report_shape():
    report = ncs.verify_ncs(ncs.build_omega((1,), 2))
    d = report.as_dict()
    assert d["status"] == "pass"
    assert {c["equation"] for c in d["checks"]} == {
        "unit-constant-term",
        "left-inverse",
        "right-inverse",
        "exponential",
        "derivation-right-factor",
        "derivation-left-factor",
    }


def test_verify_detects_corruption():
    omega = ncs.build_omega((1,), 3)
    bad_g = type(omega.g)(omega.g.ops, omega.g.coeffs[:2] + (gl.zero(),) + omega.g.coeffs[3:])
    broken = ncs.NCSSystem(
        carrier=omega.carrier,
        order=omega.order,
        f=omega.f,
        g=bad_g,
        d=omega.d,
        h=omega.h,
        m=omega.m,
    )
    report = ncs.verify_ncs(broken)
    assert not report.ok
    failing = [c for c in report.checks if c.status == "fail"]
    assert failing and failing[0].first_failure["degree"] == 2


# ---------------------------------------------------------------------------
# Shrub expansion of f(-t)
# ---------------------------------------------------------------------------

def test_kappa_expansion_small():
    assert ncs.kappa_expansion_check((1,), 3).ok
    assert ncs.kappa_expansion_check((1, 2), 4).ok


def test_kappa_single_graft_term():
    # the depth-one term at weight 1 is minus the single-leaf shrub
    omega = ncs.build_omega((1,), 2)
    fneg = omega.f.alternate()
    assert fneg.coeffs[1] == v_terms({"[1]": -1})


# ---------------------------------------------------------------------------
# Specialization
# ---------------------------------------------------------------------------

def test_generator_image_two_labels():
    image = ncs.specialize(nsym.generator(1), (1, 2))
    assert image == v_terms({"[1]": 1})


def test_first_power_sum_image_matches_h():
    omega = ncs.build_omega((1, 2), 3)
    image = ncs.specialize(nsym.power_first_element(2), (1, 2))
    assert image == omega.h.coeffs[1]


def test_second_power_sum_image_matches_d():
    omega = ncs.build_omega((1, 2), 3)
    image = ncs.specialize(nsym.power_second_element(2), (1, 2))
    assert image.scale(Fraction(1, 2)) == omega.d.coeffs[2]


def test_specialize_is_algebra_map():
    a = nsym.NSymElem({(1, 2): 2, (1,): 1})
    b = nsym.NSymElem({(2,): 1, (1, 1): -3})
    lhs = ncs.specialize(nsym.mul(a, b), (1, 2))
    rhs = gl.mul(ncs.specialize(a, (1, 2)), ncs.specialize(b, (1, 2)))
    assert lhs == rhs


def test_specialize_preserves_grading():
    for m in range(1, 5):
        for word in nsym.compositions(m):
            image = ncs.specialize(nsym.NSymElem({word: 1}), (1,))
            assert all(f.weight == m for f in image.terms)


def test_five_series_specialize_coefficientwise():
    report = ncs.specialization_check((1, 2), 4)
    assert report.ok, report.failures[:3]


def test_hopf_morphism_checks():
    report = ncs.hopf_morphism_check((1, 2), 4)
    assert report.ok, report.failures[:3]


def test_rank_diagnostic_shape():
    ranks = ncs.specialization_rank((1,), 4)
    for m, stats in ranks.items():
        assert 1 <= stats["rank"] <= min(stats["dimension"], stats["target_dimension"])
    # with a single label there are strictly fewer trees than words at weight 4
    assert ranks[4]["dimension"] == 8
    assert ranks[4]["target_dimension"] == 9


# ---------------------------------------------------------------------------
# Dual map into QSym
# ---------------------------------------------------------------------------

def test_dual_map_unit():
    image = ncs.dual_specialize(EMPTY_FOREST, (1,))
    assert image == nsym.qsym_unit()


def test_dual_map_singleton():
    image = ncs.dual_specialize(parse_forest("[1]"), (1,))
    assert image == nsym.monomial((1,))


def test_dual_map_multiplicative_weight_three():
    from treehopf.trees import enumerate_forests, forest_union

    for wa in range(0, 4):
        for wb in range(0, 4 - wa):
            for fa in enumerate_forests((1,), wa):
                for fb in enumerate_forests((1,), wb):
                    lhs = ncs.dual_specialize(forest_union(fa, fb), (1,))
                    rhs = nsym.qsym_mul(
                        ncs.dual_specialize(fa, (1,)), ncs.dual_specialize(fb, (1,))
                    )
                    assert lhs == rhs, (fa, fb)


def test_dual_map_comultiplicative_weight_three():
    from treehopf.trees import enumerate_forests

    for w in range(0, 4):
        for f in enumerate_forests((1,), w):
            lhs = nsym.qsym_coproduct(ncs.dual_specialize(f, (1,)))
            rhs: dict = {}
            for (l, r), c in ck.coproduct(ck.from_forest(f)).terms.items():
                ql = ncs.dual_specialize(l, (1,))
                qr = ncs.dual_specialize(r, (1,))
                for lw, lc in ql.terms.items():
                    for rw, rc in qr.terms.items():
                        key = (lw, rw)
                        rhs[key] = rhs.get(key, 0) + c * lc * rc
            assert lhs.terms == {k: v for k, v in rhs.items() if v}, f


# ---------------------------------------------------------------------------
# Three-route agreement (small here; the full sweep is in acceptance)
# ---------------------------------------------------------------------------

def test_three_routes_agree_to_weight_five():
    report = ncs.theta_agreement_report(5)
    assert report.ok, report.failures[:3]
    assert report.checked == sum(
        len(enumerate_bplus_trees((1,), m)) for m in range(1, 6)
    )
