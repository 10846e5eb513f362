"""Structural analyses: center, series, ideal enumeration, nilradical, monolith,
radical, A-algebra and criticality-criterion checks, ad-operator spectra.

Everything here is exhaustive over echelon-form subspace representatives:
soundness over cleverness at dim <= 6 and q <= 7, with an explicit budget
error beyond.  Graded flavors restrict attention to graded subspaces; the
`graded` flag is explicit in every report.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import GradedAlgebra, Subspace, _SpanSolver
from .errors import BudgetExceeded, NotMonolithic

DEFAULT_SUBSPACE_BUDGET = 10**7


def budget_cap(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("GRADEDPI_BUDGET")
    return int(env) if env else DEFAULT_SUBSPACE_BUDGET


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def center(A: GradedAlgebra) -> Subspace:
    """Null space of the stacked ad matrices: {x : [b_i, x] = 0 for all i}."""
    n = A.dim
    basis = np.eye(n, dtype=np.int64)
    rows = []
    for i in range(n):
        # constraint rows over x: bracket(b_i, x) = x @ (columns); linear in x
        # bracket(b_i, sum x_j b_j)_m = sum_j x_j c[i, j, m]
        rows.append(A.structure[i].T)  # (n_m, n_j): row m has coefficients over j
    stacked = np.concatenate(rows, axis=0)
    ker = linalg.nullspace(A.ctx, stacked)
    return Subspace(A, tuple(tuple(int(x) for x in r) for r in ker))


def derived_series(A: GradedAlgebra):
    """[L, L^(i)] chain: L, L^(1) = [L,L], ... until stabilization."""
    chain = [Subspace.full(A)]
    while True:
        nxt = chain[-1].bracket_with(chain[-1])
        if nxt.dim == chain[-1].dim:
            break
        chain.append(nxt)
        if nxt.dim == 0:
            break
    return chain


def lower_central(A: GradedAlgebra):
    """L^1 = L, L^(t+1) = [L^t, L] until stabilization."""
    full = Subspace.full(A)
    chain = [full]
    while True:
        nxt = chain[-1].bracket_with(full)
        if nxt.dim == chain[-1].dim:
            break
        chain.append(nxt)
        if nxt.dim == 0:
            break
    return chain


def is_nilpotent_subspace(A: GradedAlgebra, S: Subspace) -> bool:
    """Lower central series of S viewed as an algebra in its own right."""
    cur = S
    while cur.dim:
        nxt = cur.bracket_with(S)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return True


def is_solvable_subspace(A: GradedAlgebra, S: Subspace) -> bool:
    cur = S
    while cur.dim:
        nxt = cur.bracket_with(cur)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return True


def is_abelian_subspace(A: GradedAlgebra, S: Subspace) -> bool:
    return S.bracket_with(S).dim == 0


def iter_subspaces(A: GradedAlgebra, max_dim=None, budget=None):
    """All subspaces of the ambient space as RREF representatives, by dimension.

    Enumerates pivot-column patterns and free entries; the count is the
    Gaussian-binomial sum and is pre-checked against the budget.
    """
    n, q = A.dim, A.ctx.q
    max_dim = n if max_dim is None else min(max_dim, n)
    total = sum(gaussian_binomial(n, k, q) for k in range(max_dim + 1))
    cap = budget_cap(budget)
    if total > cap:
        raise BudgetExceeded(f"{total} subspaces exceeds the cap of {cap}")
    yield Subspace.zero(A)
    for k in range(1, max_dim + 1):
        for pivots in itertools.combinations(range(n), k):
            free_slots = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n)
                          if c not in pivots]
            for assignment in itertools.product(range(q), repeat=len(free_slots)):
                m = np.zeros((k, n), dtype=np.int64)
                for r, p in enumerate(pivots):
                    m[r, p] = 1
                for (r, c), v in zip(free_slots, assignment):
                    m[r, c] = v
                yield Subspace(A, tuple(tuple(int(x) for x in row) for row in m))


def is_ideal(A: GradedAlgebra, S: Subspace) -> bool:
    basis = np.eye(A.dim, dtype=np.int64)
    red = linalg.RowReducer(A.ctx, A.dim)
    red.add_rows(S.matrix)
    for i in range(A.dim):
        for row in S.matrix:
            if not red.contains(A.bracket(basis[i], row)):
                return False
    return True


def is_subalgebra(A: GradedAlgebra, S: Subspace) -> bool:
    red = linalg.RowReducer(A.ctx, A.dim)
    red.add_rows(S.matrix)
    rows = S.matrix
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if not red.contains(A.bracket(rows[i], rows[j])):
                return False
    return True


def enumerate_ideals(A: GradedAlgebra, max_dim=None, graded=False, budget=None):
    """All subspaces S with [A, S] <= S, optionally only the graded ones."""
    out = []
    for S in iter_subspaces(A, max_dim=max_dim, budget=budget):
        if graded and not S.is_graded():
            continue
        if is_ideal(A, S):
            out.append(S)
    return out


def nilradical(A: GradedAlgebra, graded=False, budget=None) -> Subspace:
    """Greatest nilpotent ideal; uniqueness of the maximum is asserted."""
    nil = [S for S in enumerate_ideals(A, graded=graded, budget=budget)
           if is_nilpotent_subspace(A, S)]
    best = max(nil, key=lambda s: s.dim)
    for S in nil:
        if not best.contains_space(S):
            raise AssertionError("nilpotent ideals have no unique maximum; not a nilradical")
    return best


def radical(A: GradedAlgebra, graded=False, budget=None) -> Subspace:
    """Greatest solvable ideal."""
    sol = [S for S in enumerate_ideals(A, graded=graded, budget=budget)
           if is_solvable_subspace(A, S)]
    best = max(sol, key=lambda s: s.dim)
    for S in sol:
        if not best.contains_space(S):
            raise AssertionError("solvable ideals have no unique maximum; not a radical")
    return best


def minimal_ideals(A: GradedAlgebra, graded=False, budget=None):
    ideals = [S for S in enumerate_ideals(A, graded=graded, budget=budget) if S.dim > 0]
    return [S for S in ideals
            if not any(T.dim and T.dim < S.dim and S.contains_space(T) for T in ideals)]


def monolith(A: GradedAlgebra, graded=False, budget=None) -> Subspace:
    """The unique minimal nonzero (graded) ideal; NotMonolithic otherwise."""
    mins = minimal_ideals(A, graded=graded, budget=budget)
    if len(mins) != 1:
        raise NotMonolithic(mins)
    return mins[0]


def is_A_algebra(A: GradedAlgebra, budget=None):
    """True iff every nilpotent subalgebra is abelian; returns (flag, witness)."""
    for S in iter_subspaces(A, budget=budget):
        if S.dim < 2:
            continue
        if is_subalgebra(A, S) and is_nilpotent_subspace(A, S) and not is_abelian_subspace(A, S):
            return False, S
    return True, None


def derived_indecomposable(A: GradedAlgebra, graded=False, budget=None,
                     require_monolithic=False) -> bool:
    """True iff [A, A] is not a sum of two ideals of A strictly inside it.

    The theorem reads this together with monolithicity; the decomposition
    check itself runs on any algebra (and is what distinguishes m1 x m1).
    With require_monolithic=True, NotMonolithic propagates from monolith().
    """
    if require_monolithic:
        monolith(A, graded=graded, budget=budget)
    derived = Subspace.full(A).bracket_with(Subspace.full(A))
    inside = [S for S in enumerate_ideals(A, graded=graded, budget=budget)
              if S.dim < derived.dim and derived.contains_space(S)]
    for S, T in itertools.combinations(inside, 2):
        if S.sum(T).dim == derived.dim:
            return False
    return True


@dataclass
class StructurePredicates:
    derived_center_trivial: bool
    semisimple: bool
    graded_simple_decomposition: bool | None
    root_hypothesis: str
    details: dict = field(default_factory=dict)


def _sub_algebra_on(A: GradedAlgebra, S: Subspace) -> GradedAlgebra:
    """Restrict the bracket to an ideal/subalgebra S, in S's own RREF basis."""
    rows = S.matrix
    m = len(rows)
    structure = np.zeros((m, m, m), dtype=np.int64)
    # rows are RREF: coordinates of a member are read off at the pivot columns
    pivots = [int(np.nonzero(r)[0][0]) for r in rows]
    for i in range(m):
        for j in range(m):
            w = A.bracket(rows[i], rows[j])
            structure[i, j] = [w[p] for p in pivots]
    grades = []
    graded = S.is_graded()
    for r in rows:
        if graded:
            support = {A.grades[int(t)] for t in np.nonzero(r)[0]}
            grades.append(next(iter(support)) if len(support) == 1 else A.group.zero())
        else:
            grades.append(A.group.zero())
    return GradedAlgebra(A.ctx, [f"s{i}" for i in range(m)], structure, A.group, grades,
                         name=f"{A.name}|sub", validate=False)


def is_simple_algebra(A: GradedAlgebra, budget=None) -> bool:
    if Subspace.full(A).bracket_with(Subspace.full(A)).dim == 0:
        return False
    ideals = enumerate_ideals(A, budget=budget)
    return all(S.dim in (0, A.dim) for S in ideals)


def check_structure_predicates(A: GradedAlgebra, budget=None) -> StructurePredicates:
    """The Premet-Semenov predicates at desk scale.

    (1) [L,L] and Z(L) intersect trivially; (2) semisimplicity (radical = 0);
    (3) for semisimple graded L, decomposition into graded simple ideals.
    The root-of-unity hypothesis is waived for Z2 and Z2xZ2 per the paper's
    character-table remark; for Z3 it is required and recorded.
    """
    full = Subspace.full(A)
    derived = full.bracket_with(full)
    z = center(A)
    pred1 = derived.intersection(z).dim == 0
    rad = radical(A, budget=budget)
    pred2 = rad.dim == 0
    moduli = A.group.moduli
    if moduli in ((2,), (2, 2), ()):
        root = "not required (Z2/Z2xZ2 character remark)"
        root_ok = True
    else:
        order = 1
        for m in moduli:
            order *= m if m else 0
        if order and (A.ctx.q - 1) % order == 0:
            root = f"primitive {order}th root available"
            root_ok = True
        else:
            root = f"primitive |G|th root unavailable (|G| = {order or 'infinite'})"
            root_ok = False
    pred3 = None
    details = {}
    if pred2 and root_ok:
        mins = minimal_ideals(A, graded=True, budget=budget)
        simple = [S for S in mins if is_simple_algebra(_sub_algebra_on(A, S), budget=budget)]
        total = Subspace.zero(A)
        for S in simple:
            total = total.sum(S)
        pred3 = (len(simple) == len(mins)) and (total.dim == sum(S.dim for S in simple) == A.dim)
        details["graded_minimal_ideals"] = len(mins)
    return StructurePredicates(pred1, pred2, pred3, root, details)


@dataclass
class SpectrumReport:
    element: tuple
    min_poly: tuple          # coefficients, constant term first, monic
    eigenvalues: tuple
    eigenspaces: tuple       # of Subspace
    diagonalizable: bool
    homogeneous_eigenbasis: bool

    def to_json(self, A: GradedAlgebra):
        return {
            "element": list(map(int, self.element)),
            "min_poly": list(map(int, self.min_poly)),
            "eigenvalues": list(map(int, self.eigenvalues)),
            "eigenspaces": [s.to_json() for s in self.eigenspaces],
            "diagonalizable": self.diagonalizable,
            "homogeneous_eigenbasis": self.homogeneous_eigenbasis,
        }


def min_poly_of_matrix(ctx, M) -> tuple:
    """Minimal polynomial by Krylov elimination on I, M, M^2, ... over GF(q)."""
    n = M.shape[0]
    powers = [np.eye(n, dtype=np.int64)]
    reducer = linalg.RowReducer(ctx, n * n)
    while reducer.add_row(powers[-1].ravel()):
        cur = powers[-1]
        nxt = np.zeros_like(cur)
        for i in range(n):
            nxt[i] = linalg.apply_matrix(ctx, M, cur[i])
        powers.append(nxt)
    d = len(powers) - 1  # M^d is the first power dependent on the earlier ones
    solver_basis = np.array([p.ravel() for p in powers[:d]], dtype=np.int64)
    target = powers[d].ravel()
    # M^d = sum_{i<d} a_i M^i  ->  min poly t^d - sum a_i t^i
    coords = _SpanSolver(ctx, solver_basis).solve(target)
    coeffs = [int(ctx.neg_table[c]) for c in coords] + [1]
    return tuple(coeffs)


def poly_eval(ctx, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add_table[ctx.mul_table[acc, x], c]
    return int(acc)


def poly_divides(ctx, divisor, dividend) -> bool:
    """True iff divisor | dividend over GF(q); both constant-first, monic leading."""
    rem = list(dividend)
    d = len(divisor) - 1
    lead_inv = ctx.inv_table[divisor[-1]]
    while len(rem) - 1 >= d and any(rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        f = ctx.mul_table[rem[-1], lead_inv]
        shift = len(rem) - 1 - d
        for i, c in enumerate(divisor):
            rem[shift + i] = ctx.sub_table[rem[shift + i], ctx.mul_table[f, c]]
        rem.pop()
    return not any(rem)


def spectrum(A: GradedAlgebra, u) -> SpectrumReport:
    """Minimal polynomial, eigen-structure and homogeneity of ad(u)."""
    ctx = A.ctx
    M = A.ad_matrix(np.asarray(u, dtype=np.int64))
    mp = min_poly_of_matrix(ctx, M)
    roots = tuple(x for x in ctx.elements() if poly_eval(ctx, mp, x) == 0)
    # diagonalizable iff the min poly is a product of distinct linear factors
    prod = [1]
    for r in roots:
        nxt = [0] * (len(prod) + 1)
        for i, c in enumerate(prod):
            nxt[i] = ctx.sub_table[nxt[i], ctx.mul_table[c, r]]
            nxt[i + 1] = ctx.add_table[nxt[i + 1], c]
        prod = nxt
    diag = tuple(int(c) for c in prod) == mp
    spaces = []
    for r in roots:
        shifted = ctx.sub_table[M, ctx.mul_table[r, np.eye(A.dim, dtype=np.int64)]]
        ker = linalg.nullspace(ctx, shifted)  # right kernel: (M - rI) v = 0
        spaces.append(Subspace(A, tuple(tuple(int(x) for x in row) for row in ker)))
    homog = all(
        sum(S.graded_piece(g).dim for g in A.grade_support()) == S.dim for S in spaces
    )
    return SpectrumReport(tuple(int(x) for x in u), mp, roots, tuple(spaces),
                          diag and sum(s.dim for s in spaces) == A.dim, homog)
