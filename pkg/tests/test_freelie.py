import itertools
import random

import numpy as np
import pytest

from gradedpi import freelie as fl
from gradedpi.dsl import PROFILES
from gradedpi.errors import CapExceeded, GradeMismatch
from gradedpi.exprs import Bracket, GradedVar, Multidegree, Pow, Sum, Var, variables

Z2 = PROFILES["Z2"]
y1, y2, y3 = (Z2.var("y", i) for i in (1, 2, 3))
z1, z2, z3 = (Z2.var("z", i) for i in (1, 2, 3))


def test_lyndon_examples():
    assert fl.lyndon_basis(Multidegree.of({z1: 1, z2: 1})) == [(z1, z2)]
    assert len(fl.lyndon_basis(Multidegree.of({z1: 1, z2: 1, z3: 1}))) == 2
    assert fl.lyndon_basis(Multidegree.of({y1: 2})) == []
    # multilinear dimension (n-1)!
    cell4 = Multidegree.of({y1: 1, y2: 1, y3: 1, z1: 1})
    assert len(fl.lyndon_basis(cell4)) == 6


def test_witt_examples():
    assert fl.witt_dimension(Multidegree.of({y1: 1, y2: 1, y3: 1})) == 2
    assert fl.witt_dimension(Multidegree.of({y1: 1, y2: 1, y3: 1, z1: 1})) == 6
    assert fl.witt_dimension(Multidegree.of({y1: 2})) == 0


def test_lyndon_count_matches_witt_to_degree_six():
    vars3 = [y1, y2, z1]
    for total in range(1, 7):
        for combo in itertools.product(range(total + 1), repeat=3):
            if sum(combo) != total:
                continue
            cell = Multidegree.of(dict(zip(vars3, combo)))
            assert len(fl.lyndon_basis(cell)) == fl.witt_dimension(cell), cell


def test_degree_cap():
    big = Multidegree.of({y1: 9})
    with pytest.raises(CapExceeded):
        fl.lyndon_basis(big)
    with pytest.raises(CapExceeded):
        fl.witt_dimension(big)


def test_normalize_antisymmetry(f5):
    p = fl.normalize(Bracket((Var(z2), Var(z1))), f5)
    assert p.to_text() == "4*[z1, z2]"


def test_normalize_jacobi(f5):
    jac = Sum(((1, Bracket((Bracket((Var(y1), Var(z1))), Var(z2)))),
               (1, Bracket((Bracket((Var(z1), Var(z2))), Var(y1)))),
               (1, Bracket((Bracket((Var(z2), Var(y1))), Var(z1))))))
    assert fl.normalize(jac, f5).is_zero()


def test_normalize_power_cell(f5):
    p = fl.normalize(Bracket((Var(z1), Pow(Var(y1), 3))), f5)
    assert p.sorted_cells() == [Multidegree.of({z1: 1, y1: 3})]


def test_lyndon_words_normalize_to_themselves(f5):
    for cell in (Multidegree.of({z1: 1, z2: 1, z3: 1}),
                 Multidegree.of({y1: 2, z1: 1, z2: 1}),
                 Multidegree.of({y1: 1, y2: 1, z1: 1, z2: 1})):
        for w in fl.lyndon_basis(cell):
            p = fl.normalize(fl.bracketing_expr(w), f5)
            assert p.cells == {cell: {w: 1}}


def test_normalize_idempotent(f5):
    expr = Sum(((2, Bracket((Var(z1), Var(y1), Var(z2)))),
                (3, Bracket((Var(y1), Bracket((Var(z1), Var(z2))))))))
    p = fl.normalize(expr, f5)
    again = fl.normalize(p.to_expr(), f5)
    assert p == again


def test_evaluate_examples(sl2_z2):
    h = np.array([1, 0, 0])
    e12 = np.array([0, 1, 0])
    assert not fl.evaluate(Bracket((Var(y1), Var(y2))), sl2_z2, {y1: h, y2: h}).any()
    v5 = fl.evaluate(Bracket((Var(z1), Pow(Var(y1), 5))), sl2_z2, {z1: e12, y1: h})
    v1 = fl.evaluate(Bracket((Var(z1), Var(y1))), sl2_z2, {z1: e12, y1: h})
    assert list(v5) == list(v1) == [0, 3, 0]


def test_evaluate_grade_mismatch(sl2_z2):
    e12 = np.array([0, 1, 0])
    with pytest.raises(GradeMismatch):
        fl.evaluate(Bracket((Var(y1), Var(y2))), sl2_z2,
                    {y1: e12, y2: np.array([1, 0, 0])})


def _random_tree(rng, depth, budget, pool):
    kinds = ["var"] + (["bracket", "sum", "scale"] if depth > 0 and budget >= 2 else [])
    kind = rng.choice(kinds)
    if kind == "var":
        return Var(rng.choice(pool)), 1
    if kind == "sum":
        a, da = _random_tree(rng, depth - 1, budget, pool)
        b, db = _random_tree(rng, depth - 1, budget, pool)
        return Sum(((rng.randrange(1, 5), a), (rng.randrange(1, 5), b))), max(da, db)
    if kind == "scale":
        a, da = _random_tree(rng, depth - 1, budget, pool)
        return Sum(((rng.randrange(1, 5), a),)), da
    a, da = _random_tree(rng, depth - 1, budget // 2, pool)
    b, db = _random_tree(rng, depth - 1, budget - da, pool)
    return Bracket((a, b)), da + db


def test_structural_vs_normal_form_oracle(sl2_z2):
    """200 random trees x 20 random in-grade assignments: both paths agree."""
    rng = random.Random(20240917)
    pool = [y1, y2, z1, z2]
    for _ in range(200):
        tree, _deg = _random_tree(rng, 5, 6, pool)
        vs = variables(tree)
        for _ in range(20):
            assign = {}
            for v in vs:
                vec = np.zeros(3, dtype=np.int64)
                for i in sl2_z2.grade_indices(v.grade):
                    vec[i] = rng.randrange(5)
                assign[v] = vec
            structural = fl.evaluate(tree, sl2_z2, assign)
            via_nf = fl.evaluate_via_normal_form(tree, sl2_z2, assign)
            assert list(structural) == list(via_nf)


def test_bulk_evaluation_matches_scalar(sl2_z2):
    rng = np.random.default_rng(5)
    tree = Bracket((Var(z1), Var(y1), Var(z2)))
    Z = rng.integers(0, 5, size=(40, 3))
    Z[:, 0] = 0
    Z2_ = rng.integers(0, 5, size=(40, 3))
    Z2_[:, 0] = 0
    H = np.zeros((40, 3), dtype=np.int64)
    H[:, 0] = rng.integers(0, 5, size=40)
    bulk = fl.evaluate(tree, sl2_z2, {z1: Z, y1: H, z2: Z2_})
    for i in range(40):
        single = fl.evaluate(tree, sl2_z2, {z1: Z[i], y1: H[i], z2: Z2_[i]})
        assert list(bulk[i]) == list(single)


def test_lyndon_product_integer_coefficients():
    d = fl.lyndon_product((y1,), (y1, y2))
    # [y1, [y1, y2]] is itself a standard bracketing: word y1 y1 y2
    assert d == {(y1, y1, y2): 1}
    d2 = fl.lyndon_product((y1, y2), (y2,))
    assert d2 == {(y1, y2, y2): 1}


def test_product_memo_never_changes_results(f5):
    expr = Sum(((1, Bracket((Var(z1), Var(y1), Var(z2), Var(y2)))),
                (2, Bracket((Var(y1), Bracket((Var(z1), Var(z2))), Var(z3))))))
    warm = fl.normalize(expr, f5)
    fl._PRODUCT_MEMO.clear()
    fl.std_factorization.cache_clear()
    fl.std_bracketing.cache_clear()
    cold = fl.normalize(expr, f5)
    assert warm == cold
