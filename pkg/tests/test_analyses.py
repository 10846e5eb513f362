import numpy as np
import pytest

from gradedpi import algebra as alg, analyses as an, linalg
from gradedpi.errors import BudgetExceeded, NotMonolithic
from gradedpi.field import make_field


@pytest.fixture(scope="module")
def abelian2():
    f5 = make_field(5)
    return alg.GradedAlgebra(f5, ["a", "b"], np.zeros((2, 2, 2), dtype=np.int64),
                             alg.TRIVIAL_GROUP, [(), ()], name="abelian2")


def test_center(sl2_z2, heisenberg, abelian2):
    assert an.center(sl2_z2).dim == 0
    z = an.center(heisenberg)
    assert z.dim == 1 and z.contains(np.array([0, 0, 1]))
    assert an.center(abelian2).dim == 2


def test_derived_series_m1(m1):
    dims = [s.dim for s in an.derived_series(m1)]
    assert dims == [2, 1, 0]
    assert an.derived_series(m1)[1].describe() == "span{e12}"


def test_lower_central_abelian(f5):
    one = alg.GradedAlgebra(f5, ["a"], np.zeros((1, 1, 1), dtype=np.int64),
                            alg.TRIVIAL_GROUP, [()], name="line")
    dims = [s.dim for s in an.lower_central(one)]
    assert dims == [1, 0]


def test_enumerate_ideals(sl2_z2, m1, abelian2):
    assert [s.dim for s in an.enumerate_ideals(sl2_z2)] == [0, 3]
    ideals = an.enumerate_ideals(m1)
    assert [s.describe() for s in ideals if s.dim == 1] == ["span{e12}"]
    assert len(ideals) == 3
    # Gaussian count: {0}, six lines, the plane
    assert len(an.enumerate_ideals(abelian2)) == 8


def test_ideal_budget(abelian2):
    with pytest.raises(BudgetExceeded):
        an.enumerate_ideals(abelian2, budget=3)


def test_nilradical_radical(m1, sl2_z2):
    assert an.nilradical(m1).describe() == "span{e12}"
    derived = alg.Subspace.full(m1).bracket_with(alg.Subspace.full(m1))
    assert an.nilradical(m1) == derived  # Nil(L) = [L, L] for this fleet
    assert an.radical(m1).dim == 2
    assert an.nilradical(sl2_z2).dim == 0
    assert an.radical(sl2_z2).dim == 0


def test_monolith(sl2_z2, m1, abelian2):
    assert an.monolith(sl2_z2).dim == 3
    assert an.monolith(m1).describe() == "span{e12}"
    with pytest.raises(NotMonolithic) as exc:
        an.monolith(abelian2)
    assert len(exc.value.minimal_ideals) == 6


def test_is_A_algebra(sl2_z2, heisenberg, abelian2):
    ok, witness = an.is_A_algebra(sl2_z2)
    assert ok and witness is None
    ok, witness = an.is_A_algebra(heisenberg)
    assert not ok and witness.dim == 3
    assert an.is_A_algebra(abelian2) == (True, None)


def test_derived_indecomposable(m1, sl2_z2, f5):
    assert an.derived_indecomposable(m1) is True
    assert an.derived_indecomposable(sl2_z2) is True
    mm = alg.direct_product(alg.builtin("m1_z", f5), alg.builtin("m1_z", f5))
    assert an.derived_indecomposable(mm) is False
    with pytest.raises(NotMonolithic):
        an.derived_indecomposable(mm, require_monolithic=True)


def test_spectrum_ad_h(sl2_z2):
    rep = an.spectrum(sl2_z2, np.array([1, 0, 0]))
    assert set(rep.eigenvalues) == {0, 2, 3}
    assert rep.min_poly == (0, 1, 0, 1)  # t^3 + t = t(t-2)(t+2) mod 5
    assert rep.diagonalizable
    assert rep.homogeneous_eigenbasis
    assert sorted(s.dim for s in rep.eigenspaces) == [1, 1, 1]


def test_spectrum_zero(sl2_z2):
    rep = an.spectrum(sl2_z2, np.zeros(3, dtype=np.int64))
    assert rep.min_poly == (0, 1)
    assert rep.eigenvalues == (0,)
    assert rep.eigenspaces[0].dim == 3


def test_min_poly_divides_frobenius(sl2_z2, f5):
    # x^q - x, constant term first
    tq_t = [0] * (f5.q + 1)
    tq_t[1] = int(f5.neg_table[1])
    tq_t[f5.q] = 1
    for lam in range(5):
        rep = an.spectrum(sl2_z2, np.array([lam, 0, 0]))
        assert an.poly_divides(f5, rep.min_poly, tuple(tq_t))
        assert rep.homogeneous_eigenbasis


def test_spectrum_non_diagonalizable(sl2_z2):
    # ad(e12) is nilpotent: min poly t^3 over GF(5), not split-distinct
    rep = an.spectrum(sl2_z2, np.array([0, 1, 0]))
    assert not rep.diagonalizable
    assert rep.eigenvalues == (0,)


def test_structure_predicates(sl2_z2, m1, f5):
    rep = an.check_structure_predicates(sl2_z2)
    assert rep.derived_center_trivial and rep.semisimple
    assert rep.graded_simple_decomposition is True
    rep1 = an.check_structure_predicates(m1)
    assert rep1.derived_center_trivial and not rep1.semisimple
    assert rep1.graded_simple_decomposition is None
    one = alg.GradedAlgebra(f5, ["a"], np.zeros((1, 1, 1), dtype=np.int64),
                            alg.TRIVIAL_GROUP, [()], name="line")
    assert an.check_structure_predicates(one).derived_center_trivial


def test_structure_predicates_z3_records_root_path(f7):
    rep = an.check_structure_predicates(alg.builtin("sl2_z3", f7))
    assert "root" in rep.root_hypothesis
    assert rep.graded_simple_decomposition is True


def test_structure_invariant_under_basis_change(m1, sl2_z2):
    rng = np.random.default_rng(11)
    for A in (m1, sl2_z2):
        P = linalg.random_invertible(A.ctx, A.dim, rng)
        conj = A.conjugated(P)
        pinv = alg._invert(A.ctx, P)
        move = lambda S: alg.Subspace.from_vectors(
            conj, [linalg.apply_matrix(A.ctx, pinv, np.array(r)) for r in S.rows]
        ) if S.dim else alg.Subspace.zero(conj)
        assert move(an.nilradical(A.ungraded())) == an.nilradical(conj)
        assert move(an.radical(A.ungraded())) == an.radical(conj)
        try:
            orig = an.monolith(A.ungraded())
            assert move(orig) == an.monolith(conj)
        except NotMonolithic:
            with pytest.raises(NotMonolithic):
                an.monolith(conj)


def test_derived_center_trivial_for_fleet(f5, f7):
    for name in alg.BUILTIN_NAMES:
        ctx = f7 if name.endswith("_z3") else f5
        A = alg.builtin(name, ctx)
        derived = alg.Subspace.full(A).bracket_with(alg.Subspace.full(A))
        assert derived.intersection(an.center(A)).dim == 0, name


def test_nilradical_equals_derived_for_metabelian_fleet(f5, f7):
    # monolithic non-abelian metabelian A-algebras: Nil(L) = [L, L]
    for name, ctx in (("m1_z", f5), ("m2_z", f5), ("b2_z2", f5), ("m1_z3", f7)):
        A = alg.builtin(name, ctx)
        an.monolith(A)  # monolithic
        full = alg.Subspace.full(A)
        derived = full.bracket_with(full)
        assert derived.dim > 0  # non-abelian
        assert derived.bracket_with(derived).dim == 0  # metabelian
        assert an.is_A_algebra(A)[0]
        assert an.nilradical(A) == derived, name


def test_eigenspace_dimension_sum_iff_diagonalizable(sl2_z2):
    diag = an.spectrum(sl2_z2, np.array([1, 0, 0]))
    assert sum(s.dim for s in diag.eigenspaces) == sl2_z2.dim
    nil = an.spectrum(sl2_z2, np.array([0, 1, 0]))
    assert not nil.diagonalizable
    assert sum(s.dim for s in nil.eigenspaces) < sl2_z2.dim


def test_derived_series_m1_z3_ungraded_gf7(f7):
    A = alg.builtin("m1_z3", f7).ungraded()
    assert [s.dim for s in an.derived_series(A)] == [2, 1, 0]
    assert an.derived_series(A)[1].describe() == "span{e12}"


def test_spectrum_over_quadratic_extension(f25):
    A = alg.builtin("sl2_z3", f25)
    rep = an.spectrum(A, np.array([1, 0, 0]))
    assert set(rep.eigenvalues) == {0, 2, f25.neg_table[2]}
    assert rep.diagonalizable and rep.homogeneous_eigenbasis
