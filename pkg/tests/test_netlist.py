import numpy as np
import pytest

from acslab.adders import load_netlist, make_parametric
from acslab.errors import NetlistParseError
from acslab.netlist import lower_or_text, parse_netlist, ripple_carry_text

FULL_ADDER = """\
# 1-bit adder
inputs a0 b0
s0 = XOR(a0, b0)
s1 = AND(a0, b0)
outputs s0 s1
"""


def test_full_adder_truth_table():
    model = load_netlist(FULL_ADDER, "fa1")
    assert model.width == 1
    assert model.evaluate(1, 1) == 2
    for a in (0, 1):
        for b in (0, 1):
            assert model.evaluate(a, b) == a + b


def test_comments_and_blank_lines():
    text = "\n# leading comment\n\ninputs a0 b0  # trailing\ns0 = XOR(a0, b0)\ns1 = AND(a0, b0)\n\noutputs s0 s1\n"
    assert load_netlist(text).evaluate(1, 0) == 1


def test_undefined_signal_reports_line():
    bad = "inputs a0 b0\ns0 = XOR(a0, bogus)\ns1 = AND(a0, b0)\noutputs s0 s1\n"
    with pytest.raises(NetlistParseError) as err:
        parse_netlist(bad)
    assert err.value.line == 2
    assert "bogus" in str(err.value)


def test_duplicate_definition_rejected():
    bad = "inputs a0 b0\ns0 = XOR(a0, b0)\ns0 = AND(a0, b0)\noutputs s0 s0\n"
    with pytest.raises(NetlistParseError) as err:
        parse_netlist(bad)
    assert err.value.line == 3


def test_unknown_gate_rejected():
    bad = "inputs a0 b0\ns0 = MAJ(a0, b0)\noutputs s0\n"
    with pytest.raises(NetlistParseError) as err:
        parse_netlist(bad)
    assert "MAJ" in str(err.value)


def test_wrong_arity_rejected():
    bad = "inputs a0 b0\ns0 = NOT(a0, b0)\noutputs s0\n"
    with pytest.raises(NetlistParseError):
        parse_netlist(bad)


def test_malformed_statement_rejected():
    with pytest.raises(NetlistParseError):
        parse_netlist("inputs a0 b0\ns0 == XOR(a0 b0)\noutputs s0\n")


def test_missing_sections_rejected():
    with pytest.raises(NetlistParseError):
        parse_netlist("s0 = CONST0()\noutputs s0\n")
    with pytest.raises(NetlistParseError):
        parse_netlist("inputs a0 b0\ns0 = XOR(a0, b0)\n")
    with pytest.raises(NetlistParseError):
        parse_netlist("inputs a0 b0\noutputs s0\nx = AND(a0, b0)\n")


def test_undefined_output_rejected():
    with pytest.raises(NetlistParseError) as err:
        parse_netlist("inputs a0 b0\ns0 = XOR(a0, b0)\noutputs s0 s9\n")
    assert "s9" in str(err.value)


def test_adder_needs_even_inputs_and_n_plus_1_outputs():
    with pytest.raises(NetlistParseError):
        load_netlist("inputs a0 b0 b1\ns0 = XOR(a0, b0)\noutputs s0\n")
    with pytest.raises(NetlistParseError):
        load_netlist("inputs a0 b0\ns0 = XOR(a0, b0)\noutputs s0\n")


def test_all_gate_types_evaluate():
    text = ("inputs a0 b0\n"
            "n1 = NAND(a0, b0)\n"
            "n2 = NOR(a0, b0)\n"
            "n3 = XNOR(a0, b0)\n"
            "n4 = NOT(a0)\n"
            "n5 = BUF(b0)\n"
            "z = CONST0()\n"
            "o = CONST1()\n"
            "t1 = OR(n1, z)\n"
            "s0 = XOR(a0, b0)\n"
            "c = AND(a0, b0)\n"
            "s1 = AND(c, o)\n"
            "outputs s0 s1\n")
    nl = parse_netlist(text)
    for a in (0, 1):
        for b in (0, 1):
            vals = dict(zip(["s0", "s1"], nl.simulate([a, b])))
            assert vals["s0"] == a ^ b and vals["s1"] == (a & b)


@pytest.mark.parametrize("width", [1, 2, 4, 8])
def test_ripple_carry_equals_exact(width):
    model = load_netlist(ripple_carry_text(width), f"rca{width}")
    idx = np.arange(1 << (2 * width), dtype=np.int64)
    a, b = idx >> width, idx & ((1 << width) - 1)
    assert (model.evaluate_many(a, b) == a + b).all()


@pytest.mark.parametrize("width,k", [(4, 2), (8, 4), (8, 8)])
def test_lower_or_netlist_matches_parametric(width, k):
    model = load_netlist(lower_or_text(width, k), f"loa{width}_{k}")
    param = make_parametric("lower_or", width, k)
    idx = np.arange(1 << (2 * width), dtype=np.int64)
    a, b = idx >> width, idx & ((1 << width) - 1)
    assert (model.evaluate_many(a, b) == param.evaluate_many(a, b)).all()


def test_scalar_matches_vectorized():
    model = load_netlist(lower_or_text(6, 3))
    rng = np.random.default_rng(11)
    a = rng.integers(0, 64, 50).astype(np.int64)
    b = rng.integers(0, 64, 50).astype(np.int64)
    many = model.evaluate_many(a, b)
    for i in range(50):
        assert model.evaluate(int(a[i]), int(b[i])) == many[i]


def test_fixture_files_load(fixtures_dir):
    import os
    for name, width in (("rca_4.net", 4), ("rca_12.net", 12), ("loa_8_4.net", 8)):
        with open(os.path.join(fixtures_dir, "netlists", name)) as fh:
            model = load_netlist(fh.read(), name)
        assert model.width == width
