"""Command-line interface: outputs, formats, exit codes."""

import json
from fractions import Fraction

import pytest

from treehopf.cli import main
from treehopf.trees import parse_tree, tree_text


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------

def test_enumerate_counts_single_label(capsys):
    code, out, _ = run(capsys, "enumerate", "--labels", "1", "--max-weight", "4", "--kind", "bplus")
    assert code == 0
    counts = [int(line.split(":")[1]) for line in out.splitlines() if line.startswith("weight")]
    assert counts == [1, 1, 2, 4, 9]


def test_enumerate_two_labels_weight_three(capsys):
    code, out, _ = run(capsys, "enumerate", "--labels", "1,2", "--max-weight", "3", "--kind", "bplus")
    assert code == 0
    assert "weight 3: 7" in out


def test_enumerate_weight_zero_unit(capsys):
    code, out, _ = run(capsys, "enumerate", "--labels", "1", "--max-weight", "1", "--kind", "bplus")
    assert out.splitlines()[0] == "weight 0: 1"
    assert out.splitlines()[1] == "  0"


def test_enumerate_items_reparse_canonically(capsys):
    _, out, _ = run(capsys, "enumerate", "--labels", "1,2", "--max-weight", "3", "--kind", "bplus")
    for line in out.splitlines():
        if line.startswith("  "):
            t = parse_tree(line.strip())
            assert tree_text(t) == line.strip()


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------

def test_expand_d_two_labels(capsys):
    code, out, _ = run(capsys, "expand", "d", "--labels", "1,2", "--max-weight", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "t^2: 1/2*V[1(1)] + V[2]"


def test_expand_h_two_labels(capsys):
    code, out, _ = run(capsys, "expand", "h", "--labels", "1,2", "--max-weight", "1")
    assert code == 0
    assert out.splitlines()[0] == "t^0: V[1]"


def test_expand_g_single_label(capsys):
    code, out, _ = run(capsys, "expand", "g", "--labels", "1", "--max-weight", "1")
    assert out.splitlines() == ["t^0: 1", "t^1: V[1]"]


def test_expand_json_matches_text_numerically(capsys):
    _, text_out, _ = run(capsys, "expand", "d", "--labels", "1,2", "--max-weight", "3")
    _, json_out, _ = run(
        capsys, "expand", "d", "--labels", "1,2", "--max-weight", "3", "--format", "json"
    )
    payload = json.loads(json_out)
    for entry in payload["coefficients"]:
        degree = entry["degree"]
        text_line = text_out.splitlines()[degree]
        for term in entry["terms"]:
            coeff = Fraction(term["coeff"])
            branches = term["branches"]
            rendered = f"V{branches}"
            assert rendered in text_line
            if abs(coeff) != 1:
                assert f"{abs(coeff)}*{rendered}" in text_line


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_ncs_passes(capsys):
    code, out, _ = run(capsys, "verify", "ncs", "--labels", "1", "--max-weight", "4")
    assert code == 0
    assert "overall: pass" in out


def test_verify_all_small(capsys):
    code, out, _ = run(
        capsys,
        "verify",
        "all",
        "--labels", "1",
        "--max-weight", "3",
        "--max-vertices", "4",
    )
    assert code == 0
    assert "overall: pass" in out


def test_verify_json_reports(capsys):
    code, out, _ = run(
        capsys, "verify", "duality", "--labels", "1", "--max-weight", "3", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["reports"]["duality"]["failures"] == []
    assert payload["reports"]["duality"]["checked"] > 0


# ---------------------------------------------------------------------------
# theta / orderpoly / qsym
# ---------------------------------------------------------------------------

def test_theta_four_chain(capsys):
    code, out, _ = run(capsys, "theta", "0(1(1(1)))")
    assert code == 0
    assert out.strip() == "1/3"


def test_theta_json(capsys):
    _, out, _ = run(capsys, "theta", "0(1(1))", "--format", "json")
    payload = json.loads(out)
    assert payload == {"command": "theta", "tree": "0(1(1))", "theta": "1/2"}


def test_orderpoly_weak_singleton(capsys):
    code, out, _ = run(capsys, "orderpoly", "--forest", "[1]", "--kind", "weak")
    assert code == 0
    assert out.strip() == "s"


def test_orderpoly_json_matches_text(capsys):
    _, text_out, _ = run(capsys, "orderpoly", "--forest", "[1(1),1]", "--kind", "strict")
    _, json_out, _ = run(
        capsys, "orderpoly", "--forest", "[1(1),1]", "--kind", "strict", "--format", "json"
    )
    payload = json.loads(json_out)
    assert payload["text"] == text_out.strip()
    # coefficients, lowest degree first
    from treehopf.orderpoly import RationalPolynomial

    poly = RationalPolynomial(Fraction(c) for c in payload["coeffs"])
    assert poly.text() == text_out.strip()


def test_qsym_singleton(capsys):
    code, out, _ = run(capsys, "qsym", "--forest", "[1]", "--labels", "1", "--max-weight", "3")
    assert code == 0
    assert out.strip() == "M[1]"


def test_qsym_weight_above_bound_fails(capsys):
    code, _, err = run(capsys, "qsym", "--forest", "[1,1,1]", "--labels", "1", "--max-weight", "2")
    assert code == 2
    assert "exceeds" in err


# ---------------------------------------------------------------------------
# error handling
# ---------------------------------------------------------------------------

def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "theta", "not-a-tree")
    assert code == 2
    assert "error" in err


def test_bad_labels_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "--labels", "0,1")
    assert code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["expand", "x"])
    assert exc.value.code == 2
