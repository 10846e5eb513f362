import pathlib

import numpy as np
import pytest

from gradedpi import dsl, freelie as fl
from gradedpi.errors import NonPositiveExponent, ParseError, ProfileMismatch, UnknownFamily
from gradedpi.exprs import Bracket, Pow, Sum, Var, to_text, variables

Z2 = dsl.PROFILES["Z2"]
GOLDEN = pathlib.Path(__file__).parent / "golden"


def test_parse_power_identity():
    tree = dsl.parse_poly("[z1, y1^q] - [z1, y1]", Z2, 5)
    assert isinstance(tree, Sum)
    lhs = tree.terms[0][1]
    assert isinstance(lhs, Bracket)
    assert isinstance(lhs.slots[1], Pow) and lhs.slots[1].k == 5


def test_parse_q_arithmetic():
    tree = dsl.parse_poly("[y1, z1^(q^2+2)] - [y1, z1^3]", Z2, 5)
    assert tree.terms[0][1].slots[1].k == 27
    assert tree.terms[1][1].slots[1].k == 3
    t2 = dsl.parse_poly("[z1, y1^(q-2)]", Z2, 7)
    assert t2.slots[1].k == 5


def test_parse_errors():
    with pytest.raises(ParseError):
        dsl.parse_poly("[y1, y2", Z2, 5)
    with pytest.raises(UnknownFamily):
        dsl.parse_poly("[v1, y1]", Z2, 5)
    with pytest.raises(NonPositiveExponent):
        dsl.parse_poly("[z1, y1^(q-5)]", Z2, 5)
    with pytest.raises(ParseError):
        dsl.parse_poly("[y1]", Z2, 5)  # brackets need two slots


def test_equation_becomes_difference():
    eq = dsl.parse_poly("[z1, y1^q] = [z1, y1]", Z2, 5)
    diff = dsl.parse_poly("[z1, y1^q] - [z1, y1]", Z2, 5)
    assert eq == diff


def test_scalar_coefficients():
    t = dsl.parse_poly("2*[y1, y2] - 3 [y1, z1]", Z2, 5)
    assert t.terms[0][0] == 2 and t.terms[1][0] == -3


@pytest.mark.parametrize("name,count,q", [
    ("beta_z2", 4, 5),
    ("beta2_z3", 7, 7),
    ("beta3_z2z2", 6, 5),
    ("m_z3", 6, 7),
    ("m1_z3", 3, 7),
    ("m2_z3", 3, 7),
    ("n_z2z2", 7, 5),
    ("b2_z2", 3, 5),
])
def test_shipped_basis_files(name, count, q):
    bf = dsl.load_basis(name, q)
    assert len(bf.identities) == count
    for ident_name, tree in bf.identities:
        text = to_text(tree)
        assert dsl.parse_poly(text, bf.profile, q) == tree, (name, ident_name)


def test_beta3_first_identity_is_bare_variable():
    bf = dsl.load_basis("beta3_z2z2", 5)
    name, tree = bf.identities[0]
    assert name == "w_vanishes"
    assert isinstance(tree, Var) and tree.var.family == "w"


def test_load_basis_profile_gate(f5):
    from gradedpi.algebra import Z3
    with pytest.raises(ProfileMismatch):
        dsl.load_basis("beta_z2", 5, expect_group=Z3)


def test_load_basis_unknown_file():
    with pytest.raises(ParseError):
        dsl.load_basis("nope_never", 5)


def test_load_basis_syntax_errors(tmp_path):
    bad = tmp_path / "bad.lie"
    bad.write_text("profile Z2\nident broken: [y1\n")
    with pytest.raises(ParseError):
        dsl.load_basis(str(bad), 5)
    noprof = tmp_path / "noprof.lie"
    noprof.write_text("ident a: [y1, y2]\n")
    with pytest.raises(ParseError):
        dsl.load_basis(str(noprof), 5)


def test_macro_expansion_matches_golden():
    u = dsl.parse_poly("y1 + z1", Z2, 5)
    v = dsl.parse_poly("y2 + z2", Z2, 5)
    lines = []
    for q in (5, 7):
        lines.append(f"# q = {q}")
        lines.append("Sem1: " + to_text(dsl.expand_macro("Sem1", u, v, q)))
        lines.append("Sem2: " + to_text(dsl.expand_macro("Sem2", u, v, q)))
    expected = (GOLDEN / "sem_expansion.txt").read_text()
    assert "\n".join(lines) + "\n" == expected


def test_sem1_exponents():
    u = dsl.parse_poly("y1", Z2, 5)
    v = dsl.parse_poly("y2", Z2, 5)
    tree = dsl.expand_macro("Sem1", u, v, 5)
    assert tree.terms[0][1].slots[1].k == 27  # q^2 + 2
    assert tree.terms[1][1].slots[1].k == 3


def test_sem2_inner_bracket_power():
    # the fifth displayed term powers the inner bracket [u, v] by q - 2
    u = dsl.parse_poly("y1", Z2, 5)
    v = dsl.parse_poly("y2", Z2, 5)
    tree = dsl.expand_macro("Sem2", u, v, 5)
    t5 = tree.terms[4][1]
    inner = t5.slots[3]
    assert isinstance(inner, Pow) and inner.k == 3 and isinstance(inner.base, Bracket)


def test_sem1_vanishes_on_equal_arguments(sl2_z2):
    u = dsl.parse_poly("y1 + z1", Z2, 5)
    tree = dsl.expand_macro("Sem1", u, u, 5)
    y1 = Z2.var("y", 1)
    z1 = Z2.var("z", 1)
    rng = np.random.default_rng(3)
    H = np.zeros((60, 3), dtype=np.int64)
    H[:, 0] = rng.integers(0, 5, 60)
    Z = rng.integers(0, 5, (60, 3))
    Z[:, 0] = 0
    assert not fl.evaluate(tree, sl2_z2, {y1: H, z1: Z}).any()


def test_parse_cell():
    cell = dsl.parse_cell("y1:1, z1:2", Z2)
    assert cell.total == 3
    assert cell.exp(Z2.var("z", 1)) == 2
    with pytest.raises(ParseError):
        dsl.parse_cell("y1:1,y1:2", Z2)
    with pytest.raises(NonPositiveExponent):
        dsl.parse_cell("y1:0", Z2)
    with pytest.raises(UnknownFamily):
        dsl.parse_cell("w1:1", Z2)


def test_profiles_cover_the_three_gradings():
    assert dsl.PROFILES["Z2"].family_grades == {"y": (0,), "z": (1,)}
    assert dsl.PROFILES["Z3"].family_grades == {"x": (2,), "y": (0,), "z": (1,)}
    assert dsl.PROFILES["Z2Z2"].family_grades == {
        "w": (0, 0), "x": (0, 1), "y": (1, 0), "z": (1, 1)}
    assert dsl.PROFILES["Z"].family_grades == {"x": (-1,), "y": (0,), "z": (1,)}


def test_power_desugar_degree():
    # desugared degree of [u, v^k] in v equals k
    tree = dsl.parse_poly("[z1, y1^4]", Z2, 5)
    poly = fl.normalize(tree, __import__("gradedpi.field", fromlist=["make_field"]).make_field(5))
    (cell,) = poly.sorted_cells()
    assert cell.exp(Z2.var("y", 1)) == 4
    assert cell.exp(Z2.var("z", 1)) == 1


def test_power_of_composite_base_degree():
    # deg_{z1} of [z1, [z1, y1]^2] = 1 + 2 * deg_{z1}([z1, y1]) = 3
    from gradedpi.field import make_field
    tree = dsl.parse_poly("[z1, [z1, y1]^2]", Z2, 5)
    poly = fl.normalize(tree, make_field(5))
    (cell,) = poly.sorted_cells()
    assert cell.exp(Z2.var("z", 1)) == 3
    assert cell.exp(Z2.var("y", 1)) == 2
