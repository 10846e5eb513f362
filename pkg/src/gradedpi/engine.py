"""The verification core: exhaustive identity checking, exact identity kernels
per multidegree cell, consequence spans of a candidate basis, and comparisons.

Consequence spans are sound lower bounds: instances are spanned in the full
direct sum of every touched cell and intersected with the target cell, never
projected per-instance, because projection is unsound once a generator has
degree >= q in some variable (scalar scaling cannot separate degree classes
congruent mod q-1).  Direct projections are adjoined only for instances whose
degree in every variable is below q, where multihomogeneity applies.
"""

from __future__ import annotations

import itertools
import os
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import GradedAlgebra
from .dsl import BasisFile
from .errors import BudgetExceeded, CapExceeded, CellMismatch
from .exprs import AdPow, Bin, Multidegree, Sum, Var, desugar, variables
from .freelie import DEGREE_CAP, LiePoly, bracketing_expr, evaluate, lyndon_basis


@dataclass(frozen=True)
class GenLimits:
    """Consequence-generation limits: s summands per substituted variable,
    r outer bracket factors, margin of degree slack above the target cell."""

    s: int = 2
    r: int = 2
    margin: int = 2

    @classmethod
    def parse(cls, text: str) -> "GenLimits":
        from .errors import ParseError
        try:
            parts = [int(x) for x in text.split(",")]
        except ValueError:
            raise ParseError(f"bad limits {text!r}: want integers 's,r,margin'")
        if len(parts) != 3 or any(x < 0 for x in parts):
            raise ParseError(f"bad limits {text!r}: want nonnegative 's,r,margin'")
        return cls(*parts)


def _env_budget(default: int) -> int:
    env = os.environ.get("GRADEDPI_BUDGET")
    return int(env) if env else default


@dataclass(frozen=True)
class EngineConfig:
    limits: GenLimits = GenLimits()
    lyndon_cap: int = DEGREE_CAP
    chunk: int = 1 << 15
    max_tuples: int = field(default_factory=lambda: _env_budget(50_000_000))
    max_instances: int = field(default_factory=lambda: _env_budget(500_000))


@dataclass
class VerifyReport:
    identity: str
    algebra: str
    holds: bool
    substitutions_checked: int
    counterexample: dict | None = None  # {"assignment": {name: coords}, "value": coords}

    def to_json(self):
        out = {
            "op": "verify",
            "identity": self.identity,
            "algebra": self.algebra,
            "holds": self.holds,
            "substitutions_checked": self.substitutions_checked,
        }
        if self.counterexample is not None:
            out["counterexample"] = {
                "assignment": {k: list(map(int, v)) for k, v in self.counterexample["assignment"].items()},
                "value": list(map(int, self.counterexample["value"])),
            }
        return out


@dataclass
class CellSpan:
    cell: Multidegree
    ambient_dim: int
    words: tuple        # the cell's Lyndon basis, fixing the coordinate order
    rows: tuple         # canonical RREF coordinate rows
    label: str = ""
    lower_bound: bool = False

    @property
    def dim(self) -> int:
        return len(self.rows)

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.ambient_dim)

    def polys(self, ctx):
        out = []
        for row in self.rows:
            poly = LiePoly(ctx)
            for w, c in zip(self.words, row):
                if c:
                    poly._accumulate(w, int(c))
            out.append(poly)
        return out

    def to_json(self, ctx):
        return {
            "op": self.label or "span",
            "cell": {v.name: e for v, e in self.cell.items},
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [p.to_text() for p in self.polys(ctx)],
            "lower_bound": self.lower_bound,
        }


def _tuple_space(A: GradedAlgebra, vars_, config: EngineConfig):
    """Element tables and the full substitution count for a variable list."""
    tables = [A.component_elements(v.grade) for v in vars_]
    total = 1
    for t in tables:
        total *= len(t)
    if total > config.max_tuples:
        raise BudgetExceeded(f"{total} substitution tuples exceed the cap {config.max_tuples}")
    return tables, total


def _chunk_assignments(tables, total, vars_, chunk):
    """Yield {var: (chunk, n) arrays} blocks of the Cartesian product, in order."""
    sizes = [len(t) for t in tables]
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop)
        assign = {}
        rem = idx
        # mixed radix, last variable fastest
        divisors = []
        acc = 1
        for s in reversed(sizes):
            divisors.append(acc)
            acc *= s
        divisors.reverse()
        for v, t, dv, s in zip(vars_, tables, divisors, sizes):
            assign[v] = t[(idx // dv) % s]
        yield start, assign


def verify_identity(tree, A: GradedAlgebra, name: str = "identity",
                    config: EngineConfig | None = None) -> VerifyReport:
    """Evaluate on every tuple of graded component elements; exhaustive, not sampled."""
    config = config or EngineConfig()
    core = desugar(tree)
    vars_ = variables(core)
    tables, total = _tuple_space(A, vars_, config)
    counter = None
    for start, assign in _chunk_assignments(tables, total, vars_, config.chunk):
        vals = evaluate(core, A, assign, check_grades=False)
        if not vars_:
            vals = vals.reshape(1, A.dim)
        nz = np.nonzero(vals.reshape(-1, A.dim).any(axis=1))[0]
        if nz.size and counter is None:
            t = int(nz[0])
            counter = {
                "assignment": {v.name: tuple(int(x) for x in assign[v][t]) for v in vars_},
                "value": tuple(int(x) for x in vals.reshape(-1, A.dim)[t]),
            }
    return VerifyReport(name, A.name, counter is None, total, counter)


def verify_basis(basis: BasisFile, A: GradedAlgebra, config=None, only=None):
    if basis.profile.group != A.group:
        from .errors import ProfileMismatch
        raise ProfileMismatch(
            f"{basis.name} is graded by {basis.profile.group.label}, {A.name} by {A.group.label}")
    out = []
    for name, tree in basis.identities:
        if only and name != only:
            continue
        out.append(verify_identity(tree, A, name=name, config=config))
    return out


def identity_kernel(A: GradedAlgebra, cell: Multidegree,
                    config: EngineConfig | None = None) -> CellSpan:
    """Exact kernel of the evaluation map from the cell's Lyndon span into A."""
    config = config or EngineConfig()
    words = tuple(lyndon_basis(cell, cap=config.lyndon_cap))
    m = len(words)
    if m == 0:
        return CellSpan(cell, 0, (), (), label="kernel")
    vars_ = list(cell.variables)
    tables, total = _tuple_space(A, vars_, config)
    exprs = [desugar(bracketing_expr(w)) for w in words]
    reducer = linalg.RowReducer(A.ctx, m)
    for start, assign in _chunk_assignments(tables, total, vars_, config.chunk):
        block = np.stack([evaluate(e, A, assign, check_grades=False) for e in exprs])
        # block: (m, chunk, n) -> constraint rows (chunk*n, m)
        rows = block.reshape(m, -1).T
        rows = rows[rows.any(axis=1)]
        reducer.add_rows(rows)
        if reducer.rank == m:
            break
    kernel = reducer.nullspace()
    span = CellSpan(cell, m, words, tuple(tuple(int(x) for x in r) for r in kernel),
                    label="kernel")
    for row in span.rows:  # soundness: re-verify every kernel polynomial
        expr = _row_expr(words, row)
        rep = verify_identity(expr, A, name="kernel-recheck", config=config)
        if not rep.holds:
            raise AssertionError("identity_kernel produced a non-identity; elimination bug")
    return span


def _row_expr(words, row):
    terms = tuple((int(c), bracketing_expr(w)) for w, c in zip(words, row) if c)
    return Sum(terms)


def compare_spans(ctx, a: CellSpan, b: CellSpan) -> dict:
    """Subspace comparison of two spans over the same cell, via echelon forms."""
    if a.cell != b.cell:
        raise CellMismatch(f"cells differ: {a.cell} vs {b.cell}")
    a_in_b = all(linalg.in_row_space(ctx, b.matrix(), np.array(r)) for r in a.rows)
    b_in_a = all(linalg.in_row_space(ctx, a.matrix(), np.array(r)) for r in b.rows)
    if a_in_b and b_in_a:
        verdict = "equal"
    elif a_in_b:
        verdict = "a_subset_b"
    elif b_in_a:
        verdict = "b_subset_a"
    else:
        verdict = "incomparable"
    return {"verdict": verdict, "dim_a": a.dim, "dim_b": b.dim}


def multilinear_cells(profile, families, max_total: int):
    """All multilinear cells over the given families with total degree <= bound."""
    out = []
    for total in range(1, max_total + 1):
        for combo in itertools.combinations_with_replacement(sorted(families), total):
            counts = {}
            exps = {}
            for fam in combo:
                counts[fam] = counts.get(fam, 0) + 1
                exps[profile.var(fam, counts[fam])] = 1
            out.append(Multidegree.of(exps))
    return out


def compare_algebra_kernels(A: GradedAlgebra, B: GradedAlgebra, cells,
                            config: EngineConfig | None = None):
    """Per-cell equality verdicts between the graded identity kernels of A and B."""
    if A.group != B.group:
        raise CellMismatch(f"different grade groups: {A.group.label} vs {B.group.label}")
    out = []
    for cell in cells:
        ka = identity_kernel(A, cell, config=config)
        kb = identity_kernel(B, cell, config=config)
        cmp = compare_spans(A.ctx, ka, kb)
        out.append({"cell": cell, "kernel_a": ka, "kernel_b": kb, **cmp})
    return out


# -- consequence spans --

def _term_profiles(core, fvars):
    """Per-additive-term degree vectors of a core tree, as tuples over fvars."""
    index = {v: i for i, v in enumerate(fvars)}
    zero = (0,) * len(fvars)

    def walk(n):
        if isinstance(n, Var):
            e = list(zero)
            e[index[n.var]] = 1
            return {tuple(e)}
        if isinstance(n, Sum):
            out = set()
            for _, t in n.terms:
                out |= walk(t)
            return out
        if isinstance(n, Bin):
            return {tuple(x + y for x, y in zip(a, b)) for a in walk(n.a) for b in walk(n.b)}
        if isinstance(n, AdPow):
            return {tuple(x + n.k * y for x, y in zip(a, b))
                    for a in walk(n.a) for b in walk(n.b)}
        raise TypeError(f"unexpected node {n!r}")

    return sorted(walk(core))


def _normalize_substituted(core, ctx, assign, cap, guard):
    def walk(n) -> LiePoly:
        if isinstance(n, Var):
            return assign[n.var]
        if isinstance(n, Sum):
            acc = LiePoly.zero(ctx)
            for c, t in n.terms:
                acc = acc.add(walk(t).scale_int(c))
            return acc
        if isinstance(n, Bin):
            return walk(n.a).bracket(walk(n.b), cap=cap, cell_guard=guard)
        if isinstance(n, AdPow):
            acc = walk(n.a)
            by = walk(n.b)
            if by.is_zero():
                return LiePoly.zero(ctx) if n.k else acc
            for _ in range(n.k):
                acc = acc.bracket(by, cap=cap, cell_guard=guard)
                if acc.is_zero():
                    break
            return acc
        raise TypeError(f"unexpected node {n!r}")

    return walk(core)


class _Ambient:
    """Column layout over every admissible cell, with the target cell last."""

    def __init__(self, cells, target, cap):
        others = sorted((c for c in cells if c != target), key=lambda c: c.sort_key())
        self.order = others + [target]
        self.target = target
        self.slices = {}
        self.words = {}
        off = 0
        for c in self.order:
            ws = tuple(lyndon_basis(c, cap=cap))
            self.words[c] = ws
            self.slices[c] = slice(off, off + len(ws))
            off += len(ws)
        self.width = off
        self.target_slice = self.slices[target]

    def row_of(self, poly: LiePoly) -> np.ndarray:
        row = np.zeros(self.width, dtype=np.int64)
        for cell, bucket in poly.cells.items():
            ws = self.words[cell]
            sl = self.slices[cell]
            pos = {w: i for i, w in enumerate(ws)}
            for w, c in bucket.items():
                row[sl.start + pos[w]] = c
        return row


def consequence_span(basis: BasisFile, cell: Multidegree, ctx,
                     config: EngineConfig | None = None) -> CellSpan:
    """Verified subset of <S>_T intersected with the target cell.

    Instances f(u_1, ..., u_k) bracketed by up to r outer monomials, where
    each u_i is a GF(q)-combination of at most s Lyndon monomials in the
    cell's variables with matching grade; all touched cells stay within the
    margin bounds and the span is intersected with the target cell.
    """
    config = config or EngineConfig()
    limits = config.limits
    if ctx.q != basis.q:
        raise CellMismatch(f"basis was parsed for q = {basis.q}, field has q = {ctx.q}")
    group = basis.profile.group
    dvars = list(cell.variables)
    bound = Multidegree.of({v: cell.exp(v) + limits.margin for v in dvars})
    total_cap = cell.total + limits.margin
    if any(e >= ctx.q for _, e in cell.items):
        warnings.warn(f"cell {cell} has an exponent >= q = {ctx.q}; the multihomogeneity "
                      "shortcut is disabled there and only the intersection route applies")

    def cell_ok(c: Multidegree) -> bool:
        return c.total <= total_cap and c.le(bound)

    # admissible cells and the substitution pool, grouped by grade
    admissible = []
    ranges = [range(0, bound.exp(v) + 1) for v in dvars]
    for exps in itertools.product(*ranges):
        if sum(exps) == 0 or sum(exps) > total_cap:
            continue
        c = Multidegree.of(dict(zip(dvars, exps)))
        admissible.append(c)
    admissible.sort(key=lambda c: c.sort_key())
    cap = max(config.lyndon_cap, total_cap)
    pool_by_grade = {}
    pool_all = []
    for c in admissible:
        g = c.grade(group)
        for w in lyndon_basis(c, cap=cap):
            entry = (w, c)
            pool_by_grade.setdefault(g, []).append(entry)
            pool_all.append(entry)

    ambient = _Ambient(admissible, cell, cap)
    reducer = linalg.RowReducer(ctx, ambient.width)
    instances = 0

    def ingest(poly: LiePoly):
        nonlocal instances
        if poly.is_zero():
            return
        instances += 1
        if instances > config.max_instances:
            raise BudgetExceeded(f"instance count passed the cap {config.max_instances}")
        reducer.add_row(ambient.row_of(poly))
        # multihomogeneity: adjoin the direct projection when all degrees < q
        degs = {}
        for c in poly.cells:
            for v, e in c.items:
                degs[v] = max(degs.get(v, 0), e)
        if all(e < ctx.q for e in degs.values()):
            bucket = poly.cells.get(cell)
            if bucket:
                proj = LiePoly(ctx, {cell: dict(bucket)})
                reducer.add_row(ambient.row_of(proj))

    for gen_name, tree in basis.identities:
        core = desugar(tree)
        fvars = list(variables(core))
        profiles = _term_profiles(core, fvars)
        multilinear = all(all(e <= 1 for e in prof) for prof in profiles)
        pools = [pool_by_grade.get(group.reduce(v.grade), []) for v in fvars]
        max_s = 1 if multilinear else limits.s
        # enumerate which slots receive the zero substitution; a term profile
        # survives only if every variable it uses is substituted nonzero, and
        # the surviving profiles bound the degree any nonzero slot may carry
        for pattern in itertools.product((False, True), repeat=len(fvars)):
            alive = [p for p in profiles
                     if all(pattern[i] for i, e in enumerate(p) if e)]
            if not alive:
                continue
            if any(on and all(p[i] == 0 for p in alive)
                   for i, on in enumerate(pattern)):
                continue  # a nonzero slot no surviving term uses: duplicate instance
            subset_choices = []
            dead = False
            for i, (on, pool) in enumerate(zip(pattern, pools)):
                if not on:
                    subset_choices.append([()])
                    continue
                relevant = [p for p in alive if p[i]]
                tot_bound = min((total_cap - sum(e for j, e in enumerate(p) if e and j != i))
                                // p[i] for p in relevant)
                exp_bound = {v: min(bound.exp(v) // p[i] for p in relevant) for v in dvars}
                filtered = [idx for idx, (w, c) in enumerate(pool)
                            if c.total <= tot_bound
                            and all(c.exp(v) <= exp_bound[v] for v in dvars)]
                if not filtered:
                    dead = True
                    break
                choices = []
                for size in range(1, max_s + 1):
                    choices.extend(itertools.combinations(filtered, size))
                subset_choices.append(choices)
            if dead:
                continue
            for combo in itertools.product(*subset_choices):
                # exact feasibility on the chosen subsets
                stats = []
                for pool, chosen in zip(pools, combo):
                    if not chosen:
                        stats.append(None)
                        continue
                    cells_ = [pool[i][1] for i in chosen]
                    maxtot = max(c.total for c in cells_)
                    maxexp = {v: max(c.exp(v) for c in cells_) for v in dvars}
                    stats.append((maxtot, maxexp))
                feasible = True
                for prof in alive:
                    tot = sum(e * stats[i][0] for i, e in enumerate(prof) if e)
                    if tot > total_cap:
                        feasible = False
                        break
                    for v in dvars:
                        if sum(e * stats[i][1][v] for i, e in enumerate(prof) if e) > bound.exp(v):
                            feasible = False
                            break
                    if not feasible:
                        break
                if not feasible:
                    continue
                coeff_spaces = []
                for chosen in combo:
                    if multilinear:
                        coeff_spaces.append([(1,) * len(chosen)])
                    else:
                        coeff_spaces.append(list(itertools.product(range(1, ctx.q),
                                                                   repeat=len(chosen))))
                for coeffs in itertools.product(*coeff_spaces):
                    assign = {}
                    for v, pool, chosen, cs in zip(fvars, pools, combo, coeffs):
                        poly = LiePoly.zero(ctx)
                        for i, cval in zip(chosen, cs):
                            w, c = pool[i]
                            poly = poly.add(LiePoly(ctx, {c: {w: 1}}).scale(cval))
                        assign[v] = poly
                    try:
                        inst = _normalize_substituted(core, ctx, assign, cap, cell_ok)
                    except CapExceeded:
                        continue
                    level = [inst]
                    ingest(inst)
                    for _ in range(limits.r):
                        nxt = []
                        for prev in level:
                            if prev.is_zero():
                                continue
                            for w, c in pool_all:
                                mono = LiePoly(ctx, {c: {w: 1}})
                                try:
                                    ext = prev.bracket(mono, cap=cap, cell_guard=cell_ok)
                                except CapExceeded:
                                    continue
                                nxt.append(ext)
                                ingest(ext)
                        level = nxt

    final = reducer.matrix()
    target = ambient.target_slice
    inter = [row[target] for row in final if not row[: target.start].any()]
    width = target.stop - target.start
    if inter:
        inter_m, _ = linalg.rref(ctx, np.array(inter).reshape(-1, width))
    else:
        inter_m = np.zeros((0, width), np.int64)
    return CellSpan(cell, len(ambient.words[cell]), ambient.words[cell],
                    tuple(tuple(int(x) for x in r) for r in inter_m),
                    label="consequences", lower_bound=True)
