"""Finite-dimensional graded Lie algebras over GF(q).

Structure constants are stored as field codes in an (n, n, n) array where
c[i, j] holds the coordinates of [b_i, b_j].  The adjoint convention is fixed
package-wide as ad(x): y -> [y, x], so that an operator polynomial y f(ad x)
reads as iterated right-bracketing [y, x, x, ...].
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    CubeRootMissing,
    GradingViolation,
    JacobiViolation,
    NotClosed,
    NotPresent,
    ParseError,
    UnknownName,
)
from .field import FieldContext, field_spec, parse_field_spec, primitive_cube_root


@dataclass(frozen=True)
class GradeGroup:
    """Finitely generated abelian group given by per-coordinate moduli (0 = Z)."""

    moduli: tuple

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))

    def reduce(self, coords) -> tuple:
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.moduli):
            raise ValueError(f"grade {coords} has wrong arity for moduli {self.moduli}")
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def add(self, a, b) -> tuple:
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a) -> tuple:
        return self.reduce(tuple(-x for x in a))

    def zero(self) -> tuple:
        return (0,) * len(self.moduli)

    def elements(self):
        """All group elements; only valid when every modulus is finite."""
        if any(m == 0 for m in self.moduli):
            raise ValueError("infinite group")
        out = [()]
        for m in self.moduli:
            out = [g + (i,) for g in out for i in range(m)]
        return out

    @property
    def label(self) -> str:
        if not self.moduli:
            return "trivial"
        return "x".join("Z" if m == 0 else f"Z{m}" for m in self.moduli)


def show_grade(g: tuple) -> str:
    return str(g[0]) if len(g) == 1 else "(" + ",".join(str(c) for c in g) + ")"


TRIVIAL_GROUP = GradeGroup(())
Z2 = GradeGroup((2,))
Z3 = GradeGroup((3,))
Z2Z2 = GradeGroup((2, 2))
Z = GradeGroup((0,))


class GradedAlgebra:
    """dim-n Lie algebra over GF(q) with a grading map basis index -> group element."""

    def __init__(self, ctx: FieldContext, labels, structure, group: GradeGroup, grades,
                 name: str = "algebra", matrices=None, validate: bool = True):
        self.ctx = ctx
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.structure = np.asarray(structure, dtype=np.int64)
        if self.structure.shape != (self.dim, self.dim, self.dim):
            raise ParseError(f"structure array must be {self.dim}^3")
        self.group = group
        self.grades = tuple(group.reduce(g) for g in grades)
        if len(self.grades) != self.dim:
            raise ParseError("one grade per basis element required")
        self.name = name
        self.matrices = matrices  # per basis element, a tuple of 2x2 code matrices
        self._planes = ctx.coeff_planes[self.structure]  # (n, n, n, k)
        n = self.dim
        self._c_flat = self.structure.reshape(n, n * n)  # C[i, (j, m)]
        self._ct_flat = self.structure.transpose(1, 0, 2).reshape(n, n * n)  # C[j, (i, m)]
        if validate:
            self.validate()

    # -- validation --

    def validate(self):
        ctx, n, c = self.ctx, self.dim, self.structure
        for i in range(n):
            if c[i, i].any():
                raise JacobiViolation(f"[b{i}, b{i}] != 0 (alternating law fails at {self.labels[i]})")
            for j in range(n):
                if not np.array_equal(c[i, j], ctx.neg_table[c[j, i]]):
                    raise JacobiViolation(
                        f"antisymmetry fails at pair ({self.labels[i]}, {self.labels[j]})")
        for i in range(n):
            for j in range(n):
                gij = self.group.add(self.grades[i], self.grades[j])
                for k in range(n):
                    if c[i, j, k] and self.grades[k] != gij:
                        raise GradingViolation(
                            f"c[{self.labels[i]}][{self.labels[j]}] hits {self.labels[k]} "
                            f"of grade {show_grade(self.grades[k])}, expected {show_grade(gij)}")
        basis = np.eye(n, dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                for l in range(n):
                    s = self.bracket(self.bracket(basis[i], basis[j]), basis[l])
                    s = ctx.add_table[s, self.bracket(self.bracket(basis[j], basis[l]), basis[i])]
                    s = ctx.add_table[s, self.bracket(self.bracket(basis[l], basis[i]), basis[j])]
                    if s.any():
                        raise JacobiViolation(
                            f"Jacobi fails on triple ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})")

    # -- field-plane helpers (k = extension degree of the scalar field) --

    def _to_planes(self, codes):
        return self.ctx.coeff_planes[np.asarray(codes, dtype=np.int64)]

    def _encode(self, planes):
        return self.ctx._encode(planes % self.ctx.p)

    # -- bracket and adjoint action, vectorized over leading axes --

    def bracket(self, u, v):
        """Bilinear extension of the structure constants; codes (..., n) in and out."""
        ctx = self.ctx
        n = self.dim
        if ctx.k == 1:
            u = np.asarray(u, dtype=np.int64)
            v = np.asarray(v, dtype=np.int64)
            # tmp[..., j, m] = sum_i u_i C[i, j, m]; out[..., m] = sum_j v_j tmp[j, m]
            tmp = (u[..., None, :] @ self._c_flat).reshape(u.shape[:-1] + (n, n)) % ctx.p
            return (v[..., None, :] @ tmp).reshape(v.shape[:-1] + (n,)) % ctx.p
        U = self._to_planes(u)
        V = self._to_planes(v)
        C = self._planes
        c = ctx.modulus_c
        r0 = U[..., :, None, 0] * V[..., None, :, 0] + c * U[..., :, None, 1] * V[..., None, :, 1]
        r1 = U[..., :, None, 0] * V[..., None, :, 1] + U[..., :, None, 1] * V[..., None, :, 0]
        out0 = np.einsum("ijm,...ij->...m", C[..., 0], r0) + c * np.einsum("ijm,...ij->...m", C[..., 1], r1)
        out1 = np.einsum("ijm,...ij->...m", C[..., 0], r1) + np.einsum("ijm,...ij->...m", C[..., 1], r0)
        return self._encode(np.stack([out0, out1], axis=-1))

    def ad_matrix(self, u):
        """Matrix of y -> [y, u] acting on coordinate rows; codes (..., n, n)."""
        ctx = self.ctx
        n = self.dim
        if ctx.k == 1:
            u = np.asarray(u, dtype=np.int64)
            # M[..., m, j] = sum_i C[j, i, m] u_i
            m = (u[..., None, :] @ self._ct_flat).reshape(u.shape[:-1] + (n, n)) % ctx.p
            return m.swapaxes(-1, -2)
        U = self._to_planes(u)
        C = self._planes
        c = ctx.modulus_c
        m0 = np.einsum("jim,...i->...mj", C[..., 0], U[..., 0]) + c * np.einsum("jim,...i->...mj", C[..., 1], U[..., 1])
        m1 = np.einsum("jim,...i->...mj", C[..., 0], U[..., 1]) + np.einsum("jim,...i->...mj", C[..., 1], U[..., 0])
        return self._encode(np.stack([m0, m1], axis=-1))

    def mat_apply(self, m, y):
        ctx = self.ctx
        if ctx.k == 1:
            m = np.asarray(m, dtype=np.int64)
            y = np.asarray(y, dtype=np.int64)
            return (m @ y[..., :, None])[..., 0] % ctx.p
        M = self._to_planes(m)
        Y = self._to_planes(y)
        c = ctx.modulus_c
        out0 = np.einsum("...mj,...j->...m", M[..., 0], Y[..., 0]) + c * np.einsum("...mj,...j->...m", M[..., 1], Y[..., 1])
        out1 = np.einsum("...mj,...j->...m", M[..., 0], Y[..., 1]) + np.einsum("...mj,...j->...m", M[..., 1], Y[..., 0])
        return self._encode(np.stack([out0, out1], axis=-1))

    def mat_mul(self, a, b):
        ctx = self.ctx
        if ctx.k == 1:
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            return (a @ b) % ctx.p
        A = self._to_planes(a)
        B = self._to_planes(b)
        c = ctx.modulus_c
        out0 = np.einsum("...mj,...jl->...ml", A[..., 0], B[..., 0]) + c * np.einsum("...mj,...jl->...ml", A[..., 1], B[..., 1])
        out1 = np.einsum("...mj,...jl->...ml", A[..., 0], B[..., 1]) + np.einsum("...mj,...jl->...ml", A[..., 1], B[..., 0])
        return self._encode(np.stack([out0, out1], axis=-1))

    def mat_pow(self, m, e: int):
        """Square-and-multiply power of a stack of matrices."""
        m = np.asarray(m, dtype=np.int64)
        if e == 0:
            eye = np.eye(self.dim, dtype=np.int64)
            return np.broadcast_to(eye, m.shape).copy()
        out = None
        base = m
        while True:
            if e & 1:
                out = base if out is None else self.mat_mul(base, out)
            e >>= 1
            if not e:
                return out
            base = self.mat_mul(base, base)

    # -- grading bookkeeping --

    def grade_indices(self, g) -> tuple:
        g = self.group.reduce(g)
        return tuple(i for i in range(self.dim) if self.grades[i] == g)

    def component_dim(self, g) -> int:
        return len(self.grade_indices(g))

    def component_elements(self, g) -> np.ndarray:
        """All q^dim vectors of the grade-g component, in canonical code order."""
        idx = self.grade_indices(g)
        q = self.ctx.q
        count = q ** len(idx)
        out = np.zeros((count, self.dim), dtype=np.int64)
        rng = np.arange(count)
        for pos, i in enumerate(reversed(idx)):
            out[:, i] = (rng // (q**pos)) % q
        return out

    def in_component(self, vector, g) -> bool:
        idx = set(self.grade_indices(g))
        return all(vector[i] == 0 for i in range(self.dim) if i not in idx)

    def grade_support(self) -> tuple:
        seen = []
        for g in self.grades:
            if g not in seen:
                seen.append(g)
        return tuple(sorted(seen))

    def coords_label(self, vector) -> str:
        ctx = self.ctx
        parts = []
        for i, c in enumerate(vector):
            if c:
                coef = "" if c == 1 else ctx.show(int(c)) + "*"
                parts.append(f"{coef}{self.labels[i]}")
        return " + ".join(parts) if parts else "0"

    def ungraded(self) -> "GradedAlgebra":
        """Same algebra, trivially graded (every analysis sees one component)."""
        return GradedAlgebra(self.ctx, self.labels, self.structure, TRIVIAL_GROUP,
                             [()] * self.dim, name=f"{self.name}(ungraded)",
                             matrices=self.matrices, validate=False)

    def conjugated(self, pmat, name=None) -> "GradedAlgebra":
        """Structure constants in the basis b'_i = sum_j P[i,j] b_j; grading dropped."""
        ctx, n = self.ctx, self.dim
        pinv = _invert(ctx, pmat)
        new = np.zeros((n, n, n), dtype=np.int64)
        basis = np.asarray(pmat, dtype=np.int64)  # rows are the new basis in old coordinates
        for i in range(n):
            for j in range(n):
                w = self.bracket(basis[i], basis[j])
                new[i, j] = linalg.apply_matrix(ctx, pinv, w)
        return GradedAlgebra(ctx, self.labels, new, TRIVIAL_GROUP, [()] * n,
                             name=name or f"{self.name}^P", validate=True)

    def to_json(self) -> dict:
        triples = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.structure[i, j, k]:
                        triples.append([i, j, k, int(self.structure[i, j, k])])
        return {
            "name": self.name,
            "field": field_spec(self.ctx),
            "group": list(self.group.moduli),
            "basis": list(self.labels),
            "grades": [list(g) for g in self.grades],
            "structure": triples,
        }

    def __repr__(self):
        return f"GradedAlgebra({self.name}, dim={self.dim}, {self.ctx!r}, group={self.group.label})"


def _unit(n, i):
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


def _invert(ctx, m):
    n = m.shape[0]
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    red, piv = linalg.rref(ctx, aug)
    if list(piv[:n]) != list(range(n)):
        raise ValueError("matrix not invertible")
    return red[:, n:]


@dataclass(frozen=True)
class Subspace:
    """Subspace of a GradedAlgebra, held as a canonical RREF basis."""

    algebra: GradedAlgebra
    rows: tuple  # tuple of coordinate tuples, RREF

    @classmethod
    def from_vectors(cls, algebra, vectors):
        m, _ = linalg.rref(algebra.ctx, np.asarray(list(vectors), dtype=np.int64).reshape(-1, algebra.dim))
        return cls(algebra, tuple(tuple(int(x) for x in r) for r in m))

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, ())

    @classmethod
    def full(cls, algebra):
        return cls.from_vectors(algebra, np.eye(algebra.dim, dtype=np.int64))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.algebra.dim)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vector) -> bool:
        return linalg.in_row_space(self.algebra.ctx, self.matrix, vector)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.matrix)

    def sum(self, other: "Subspace") -> "Subspace":
        m = linalg.row_space_sum(self.algebra.ctx, self.matrix, other.matrix)
        return Subspace(self.algebra, tuple(tuple(int(x) for x in r) for r in m))

    def intersection(self, other: "Subspace") -> "Subspace":
        m = linalg.row_space_intersection(self.algebra.ctx, self.matrix, other.matrix)
        return Subspace(self.algebra, tuple(tuple(int(x) for x in r) for r in m))

    def bracket_with(self, other: "Subspace") -> "Subspace":
        """Span of pairwise brackets of basis vectors."""
        vecs = [self.algebra.bracket(a, b) for a in self.matrix for b in other.matrix]
        if not vecs:
            return Subspace.zero(self.algebra)
        return Subspace.from_vectors(self.algebra, vecs)

    def is_graded(self) -> bool:
        return sum(self.graded_piece(g).dim for g in self.algebra.grade_support()) == self.dim

    def graded_piece(self, g) -> "Subspace":
        idx = self.algebra.grade_indices(g)
        comp = np.zeros((len(idx), self.algebra.dim), dtype=np.int64)
        for r, i in enumerate(idx):
            comp[r, i] = 1
        m = linalg.row_space_intersection(self.algebra.ctx, self.matrix, comp)
        return Subspace(self.algebra, tuple(tuple(int(x) for x in r) for r in m))

    def describe(self) -> str:
        if self.dim == 0:
            return "{0}"
        return "span{" + ", ".join(self.algebra.coords_label(r) for r in self.rows) + "}"

    def to_json(self):
        return {"dim": self.dim, "basis": [list(map(int, r)) for r in self.rows]}


# -- 2x2 matrix plumbing for the builtin realizations --

def _mat(ctx, entries):
    return np.array([[ctx.elem(entries[0][0]), ctx.elem(entries[0][1])],
                     [ctx.elem(entries[1][0]), ctx.elem(entries[1][1])]], dtype=np.int64)


def mat_commutator(ctx, a, b):
    """[a, b] = ab - ba for 2x2 code matrices."""
    def mm(x, y):
        out = np.zeros((2, 2), dtype=np.int64)
        for i in range(2):
            for j in range(2):
                s = 0
                for l in range(2):
                    s = ctx.add_table[s, ctx.mul_table[x[i, l], y[l, j]]]
                out[i, j] = s
        return out
    return ctx.sub_table[mm(a, b), mm(b, a)]


def tuple_commutator(ctx, a, b):
    return tuple(mat_commutator(ctx, x, y) for x, y in zip(a, b))


def from_matrices(ctx, labels, matrices, group, grades, name="algebra") -> GradedAlgebra:
    """Build structure constants from matrix commutators; the span must be closed.

    `matrices` holds one tuple of 2x2 matrices per basis element (length-1
    tuples for plain matrix algebras, longer for direct products).
    """
    n = len(labels)
    mats = [tuple(np.asarray(m, dtype=np.int64) for m in t) for t in matrices]
    flat = np.array([np.concatenate([m.ravel() for m in t]) for t in mats], dtype=np.int64)
    red, _ = linalg.rref(ctx, flat)
    if red.shape[0] < n:
        raise ParseError("basis matrices are linearly dependent")
    solver = _SpanSolver(ctx, flat)
    structure = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            comm = tuple_commutator(ctx, mats[i], mats[j])
            target = np.concatenate([m.ravel() for m in comm])
            coords = solver.solve(target)
            if coords is None:
                raise NotClosed(f"[{labels[i]}, {labels[j]}] leaves the span of the given basis")
            structure[i, j] = coords
    return GradedAlgebra(ctx, labels, structure, group, grades, name=name, matrices=mats)


class _SpanSolver:
    """Solve x @ basis = target over GF(q), tracking the reduction transform."""

    def __init__(self, ctx, basis):
        self.ctx = ctx
        n, w = basis.shape
        aug = np.concatenate([basis, np.eye(n, dtype=np.int64)], axis=1)
        r = linalg.RowReducer(ctx, w + n)
        r.add_rows(aug)
        self.w = w
        self.n = n
        self.rows = r.matrix()

    def solve(self, target):
        ctx = self.ctx
        row = np.concatenate([np.asarray(target, dtype=np.int64), np.zeros(self.n, dtype=np.int64)])
        for prow in self.rows:
            piv = int(np.nonzero(prow)[0][0])
            if piv < self.w and row[piv]:
                row = ctx.sub_table[row, ctx.mul_table[row[piv], prow]]
        if row[: self.w].any():
            return None
        return ctx.neg_table[row[self.w:]]


def direct_product(a: GradedAlgebra, b: GradedAlgebra, name=None) -> GradedAlgebra:
    """Componentwise bracket on the concatenated bases; grade group must match."""
    if a.group != b.group:
        raise ParseError("direct product requires a shared grade group")
    if a.ctx != b.ctx:
        raise ParseError("direct product requires a shared field")
    n, m = a.dim, b.dim
    structure = np.zeros((n + m, n + m, n + m), dtype=np.int64)
    structure[:n, :n, :n] = a.structure
    structure[n:, n:, n:] = b.structure
    labels = list(a.labels) + list(b.labels)
    if len(set(labels)) < len(labels):
        labels = [f"{l}.1" for l in a.labels] + [f"{l}.2" for l in b.labels]
    matrices = None
    if a.matrices is not None and b.matrices is not None:
        zero = np.zeros((2, 2), dtype=np.int64)
        wa = len(a.matrices[0])
        wb = len(b.matrices[0])
        matrices = [t + (zero,) * wb for t in a.matrices] + [(zero,) * wa + t for t in b.matrices]
    return GradedAlgebra(a.ctx, labels, structure, a.group, list(a.grades) + list(b.grades),
                         name=name or f"({a.name} x {b.name})", matrices=matrices)


# -- the builtin fleet --

H = [[1, 0], [0, -1]]
E12 = [[0, 1], [0, 0]]
E21 = [[0, 0], [1, 0]]
E11 = [[1, 0], [0, 0]]
E22 = [[0, 0], [0, 1]]
EPLUS = [[0, 1], [1, 0]]   # e12 + e21
EMINUS = [[0, 1], [-1, 0]]  # e12 - e21

BUILTIN_NAMES = (
    "sl2_z2", "sl2_z3", "sl2_z2z2", "sl2_trivial", "sl2_z",
    "gl2_z2", "gl2_z",
    "m1_z3", "m2_z3", "m1_z", "m2_z", "m_pair_z3",
    "n_z2z2", "b2_z2",
)


def _require_cube_root(ctx, name):
    # the Z3 section's standing hypothesis; the grading data itself is integral
    try:
        primitive_cube_root(ctx)
    except NotPresent:
        raise CubeRootMissing(
            f"{name} needs a primitive cube root of unity in the field (3 must divide q-1 = {ctx.q - 1})")


def builtin(name: str, ctx: FieldContext) -> GradedAlgebra:
    def mats(*specs):
        return [(_mat(ctx, s),) for s in specs]

    if name == "sl2_z2":
        return from_matrices(ctx, ["h", "e12", "e21"], mats(H, E12, E21), Z2,
                             [(0,), (1,), (1,)], name=name)
    if name == "sl2_z3":
        _require_cube_root(ctx, name)
        return from_matrices(ctx, ["h", "e12", "e21"], mats(H, E12, E21), Z3,
                             [(0,), (1,), (2,)], name=name)
    if name == "sl2_z":
        return from_matrices(ctx, ["h", "e12", "e21"], mats(H, E12, E21), Z,
                             [(0,), (1,), (-1,)], name=name)
    if name == "sl2_z2z2":
        return from_matrices(ctx, ["h", "e12+e21", "e12-e21"], mats(H, EPLUS, EMINUS), Z2Z2,
                             [(1, 0), (0, 1), (1, 1)], name=name)
    if name == "sl2_trivial":
        return from_matrices(ctx, ["h", "e12", "e21"], mats(H, E12, E21), TRIVIAL_GROUP,
                             [(), (), ()], name=name)
    if name == "gl2_z2":
        return from_matrices(ctx, ["e11", "e22", "e12", "e21"], mats(E11, E22, E12, E21), Z2,
                             [(0,), (0,), (1,), (1,)], name=name)
    if name == "gl2_z":
        return from_matrices(ctx, ["e11", "e22", "e12", "e21"], mats(E11, E22, E12, E21), Z,
                             [(0,), (0,), (1,), (-1,)], name=name)
    if name == "m1_z3":
        _require_cube_root(ctx, name)
        return from_matrices(ctx, ["h", "e12"], mats(H, E12), Z3, [(0,), (1,)], name=name)
    if name == "m2_z3":
        _require_cube_root(ctx, name)
        return from_matrices(ctx, ["h", "e21"], mats(H, E21), Z3, [(0,), (2,)], name=name)
    if name == "m1_z":
        return from_matrices(ctx, ["h", "e12"], mats(H, E12), Z, [(0,), (1,)], name=name)
    if name == "m2_z":
        return from_matrices(ctx, ["h", "e21"], mats(H, E21), Z, [(0,), (-1,)], name=name)
    if name == "m_pair_z3":
        _require_cube_root(ctx, name)
        return direct_product(builtin("m1_z3", ctx), builtin("m2_z3", ctx), name=name)
    if name == "n_z2z2":
        n1 = from_matrices(ctx, ["h"], mats(H), Z2Z2, [(1, 0)], name="n10")
        n2 = from_matrices(ctx, ["e12-e21"], mats(EMINUS), Z2Z2, [(1, 1)], name="n11")
        n3 = from_matrices(ctx, ["e12+e21"], mats(EPLUS), Z2Z2, [(0, 1)], name="n01")
        return direct_product(direct_product(n1, n2), n3, name=name)
    if name == "b2_z2":
        return from_matrices(ctx, ["e11", "e12"], mats(E11, E12), Z2, [(0,), (1,)], name=name)
    raise UnknownName(f"unknown builtin algebra {name!r}; choices: {', '.join(BUILTIN_NAMES)}")


# -- user algebra files --

def load_algebra(source, ctx: FieldContext | None = None) -> GradedAlgebra:
    """Load an algebra from a JSON file path, file object, or parsed dict.

    Either "matrices" (2x2 integer matrices, checked for closure) or
    "structure" (sparse [i, j, k, coeff] triples) must be present.
    """
    if isinstance(source, dict):
        data = source
        name = data.get("name", "algebra")
    else:
        if hasattr(source, "read"):
            text = source.read()
            name = "algebra"
        else:
            try:
                with open(source) as fh:
                    text = fh.read()
            except OSError:
                raise ParseError(f"{source!r} is neither a builtin algebra nor a readable file")
            name = str(source)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad algebra file: {exc}")
        name = data.get("name", name)
    for key in ("field", "group", "basis", "grades"):
        if key not in data:
            raise ParseError(f"algebra file missing {key!r}")
    file_ctx = parse_field_spec(str(data["field"]))
    if ctx is not None and ctx != file_ctx:
        raise ParseError(f"algebra file declares field {data['field']}, conflicting with {ctx!r}")
    ctx = file_ctx
    group = GradeGroup(tuple(data["group"]))
    labels = list(data["basis"])
    grades = [tuple(g) for g in data["grades"]]
    if len(grades) != len(labels):
        raise ParseError("grades and basis must have the same length")
    if "matrices" in data:
        mats = [(_mat(ctx, m),) for m in data["matrices"]]
        return from_matrices(ctx, labels, mats, group, grades, name=name)
    if "structure" in data:
        n = len(labels)
        structure = np.zeros((n, n, n), dtype=np.int64)
        for entry in data["structure"]:
            if len(entry) != 4:
                raise ParseError(f"structure entries must be [i, j, k, coeff], got {entry}")
            i, j, k, coeff = entry
            if not all(0 <= x < n for x in (i, j, k)):
                raise ParseError(f"structure index out of range in {entry}")
            structure[i, j, k] = ctx.elem(coeff)
        return GradedAlgebra(ctx, labels, structure, group, grades, name=name)
    raise ParseError("algebra file needs either 'matrices' or 'structure'")
