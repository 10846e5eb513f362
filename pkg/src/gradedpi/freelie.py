"""The free graded Lie algebra on grade-typed variables.

Canonical basis: Lyndon words over the global variable order (family letter,
then index), each with its standard bracketing.  Normalization rewrites any
bracket expression into coordinates on this basis, bucketed per multidegree
cell; the rewriting coefficients are integers and independent of the field,
so the pair-product table is memoized globally and reduced mod p on use.

Evaluation is structural and vectorized: assignments may carry any leading
numpy axes, so one call evaluates a whole Cartesian product of substitutions.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, GradeMismatch
from .exprs import AdPow, Bin, Multidegree, Pow, Sum, Var, desugar, variables

DEGREE_CAP = 8


# -- Lyndon words --

def is_lyndon(word) -> bool:
    n = len(word)
    if n == 0:
        return False
    if n == 1:
        return True
    for r in range(1, n):
        if word[r:] + word[:r] <= word:
            return False
    return True


def lyndon_words(cell: Multidegree, cap: int = DEGREE_CAP):
    """All Lyndon words with the letter multiset of the cell, lexicographic."""
    if cell.total > cap:
        raise CapExceeded(f"total degree {cell.total} above the cap {cap}")
    letters = []
    for v, e in cell.items:
        letters.extend([v] * e)
    seen = set()
    for perm in itertools.permutations(letters):
        if perm in seen:
            continue
        seen.add(perm)
    out = [w for w in sorted(seen) if is_lyndon(w)]
    return out


@lru_cache(maxsize=None)
def std_factorization(word):
    """Standard factorization (u, v) of a Lyndon word: v the longest proper Lyndon suffix."""
    n = len(word)
    for start in range(1, n):
        if is_lyndon(word[start:]):
            return word[:start], word[start:]
    raise ValueError(f"{word} is not a Lyndon word of length >= 2")


@lru_cache(maxsize=None)
def std_bracketing(word):
    """Nested-pair tree of the standard bracketing; a leaf is the variable itself."""
    if len(word) == 1:
        return word[0]
    u, v = std_factorization(word)
    return (std_bracketing(u), std_bracketing(v))


def bracketing_expr(word):
    """The standard bracketing as a core expression tree."""
    def build(t):
        if not isinstance(t, tuple):
            return Var(t)
        return Bin(build(t[0]), build(t[1]))
    return build(std_bracketing(word))


def _is_std_pair(u, v) -> bool:
    # u < v guaranteed; (u, v) is the standard factorization of uv iff
    # u is a letter or its own right factor dominates v
    return len(u) == 1 or std_factorization(u)[1] >= v


_PRODUCT_MEMO = {}


def lyndon_product(u, v):
    """Integer-coefficient expansion of [b_u, b_v] on the Lyndon basis."""
    if u == v:
        return {}
    if v < u:
        return {w: -c for w, c in lyndon_product(v, u).items()}
    key = (u, v)
    hit = _PRODUCT_MEMO.get(key)
    if hit is not None:
        return hit
    if _is_std_pair(u, v):
        out = {u + v: 1}
    else:
        x, y = std_factorization(u)
        out = {}
        # [[x,y],v] = [[x,v],y] + [x,[y,v]]
        for w, c in lyndon_product(x, v).items():
            for w2, c2 in lyndon_product(w, y).items():
                out[w2] = out.get(w2, 0) + c * c2
        for w, c in lyndon_product(y, v).items():
            for w2, c2 in lyndon_product(x, w).items():
                out[w2] = out.get(w2, 0) + c * c2
        out = {w: c for w, c in out.items() if c}
    _PRODUCT_MEMO[key] = out
    return out


def word_cell(word) -> Multidegree:
    counts = {}
    for v in word:
        counts[v] = counts.get(v, 0) + 1
    return Multidegree.of(counts)


# -- Witt / necklace dimension oracle --

def _mobius(n: int) -> int:
    if n == 1:
        return 1
    m, cnt = n, 0
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            cnt += 1
        d += 1
    if m > 1:
        cnt += 1
    return -1 if cnt % 2 else 1


def witt_dimension(cell: Multidegree, cap: int = DEGREE_CAP) -> int:
    """Multivariate Witt formula: (1/n) sum_{j | gcd(e)} mu(j) * (n/j)! / prod (e_i/j)!."""
    if cell.total > cap:
        raise CapExceeded(f"total degree {cell.total} above the cap {cap}")
    exps = [e for _, e in cell.items]
    if not exps:
        return 0
    n = sum(exps)
    g = 0
    for e in exps:
        g = math.gcd(g, e)
    total = 0
    for j in range(1, g + 1):
        if g % j:
            continue
        mu = _mobius(j)
        if mu == 0:
            continue
        multinom = math.factorial(n // j)
        for e in exps:
            multinom //= math.factorial(e // j)
        total += mu * multinom
    return total // n


def lyndon_basis(cell: Multidegree, cap: int = DEGREE_CAP):
    """Ordered Lyndon bracketings of a cell; length is pinned by witt_dimension."""
    return lyndon_words(cell, cap=cap)


# -- polynomials on the Lyndon basis --

class LiePoly:
    """Coordinates on the Lyndon basis, bucketed per multidegree cell.

    cells: {Multidegree: {word: field code}}; zero coordinates are trimmed so
    equal polynomials have equal dicts.
    """

    __slots__ = ("ctx", "cells")

    def __init__(self, ctx, cells=None):
        self.ctx = ctx
        self.cells = cells or {}

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def variable(cls, ctx, var) -> "LiePoly":
        w = (var,)
        return cls(ctx, {word_cell(w): {w: 1}})

    def is_zero(self) -> bool:
        return not self.cells

    def copy(self) -> "LiePoly":
        return LiePoly(self.ctx, {c: dict(d) for c, d in self.cells.items()})

    def _accumulate(self, word, code):
        if code == 0:
            return
        cell = word_cell(word)
        bucket = self.cells.setdefault(cell, {})
        new = int(self.ctx.add_table[bucket.get(word, 0), code])
        if new:
            bucket[word] = new
        else:
            bucket.pop(word, None)
            if not bucket:
                del self.cells[cell]

    def add(self, other: "LiePoly") -> "LiePoly":
        out = self.copy()
        for cell, bucket in other.cells.items():
            for w, c in bucket.items():
                out._accumulate(w, c)
        return out

    def scale(self, code) -> "LiePoly":
        code = int(code) % self.ctx.p if not (0 <= code < self.ctx.q) else int(code)
        out = LiePoly(self.ctx)
        if code == 0:
            return out
        for cell, bucket in self.cells.items():
            nb = {w: int(self.ctx.mul_table[code, c]) for w, c in bucket.items()}
            out.cells[cell] = nb
        return out

    def scale_int(self, n: int) -> "LiePoly":
        return self.scale(n % self.ctx.p)

    def bracket(self, other: "LiePoly", cap: int = DEGREE_CAP, cell_guard=None) -> "LiePoly":
        """Bilinear Lyndon-basis product; guard may veto cells (raises CapExceeded)."""
        ctx = self.ctx
        out = LiePoly(ctx)
        for cell_a, da in self.cells.items():
            for cell_b, db in other.cells.items():
                target = cell_a.add(cell_b)
                if target.total > cap:
                    raise CapExceeded(
                        f"bracket reaches degree {target.total}, above the cap {cap}")
                if cell_guard is not None and not cell_guard(target):
                    raise CapExceeded(f"cell {target} outside the configured bounds")
                for wa, ca in da.items():
                    for wb, cb in db.items():
                        cc = int(ctx.mul_table[ca, cb])
                        if not cc:
                            continue
                        for w, coeff in lyndon_product(wa, wb).items():
                            code = int(ctx.mul_table[cc, coeff % ctx.p])
                            out._accumulate(w, code)
        return out

    def coords(self, cell: Multidegree, cap: int = DEGREE_CAP) -> np.ndarray:
        words = lyndon_basis(cell, cap=cap)
        bucket = self.cells.get(cell, {})
        return np.array([bucket.get(w, 0) for w in words], dtype=np.int64)

    def sorted_cells(self):
        return sorted(self.cells, key=lambda c: c.sort_key())

    def __eq__(self, other):
        return isinstance(other, LiePoly) and self.ctx == other.ctx and self.cells == other.cells

    def to_expr(self):
        """Surface AST with integer coefficients; prime fields only."""
        if self.ctx.k != 1:
            raise ValueError("re-parseable text needs a prime field")
        terms = []
        for cell in self.sorted_cells():
            bucket = self.cells[cell]
            for w in sorted(bucket):
                terms.append((int(bucket[w]), _word_expr(w)))
        return Sum(tuple(terms))

    def to_text(self) -> str:
        parts = []
        for cell in self.sorted_cells():
            bucket = self.cells[cell]
            for w in sorted(bucket):
                coeff = self.ctx.show(bucket[w])
                body = _word_text(w)
                parts.append(body if coeff == "1" else f"{coeff}*{body}")
        return " + ".join(parts) if parts else "0"


def _word_expr(word):
    from .exprs import Bracket

    def build(t):
        if not isinstance(t, tuple):
            return Var(t)
        return Bracket((build(t[0]), build(t[1])))
    return build(std_bracketing(word))


def _word_text(word) -> str:
    def fmt(t):
        if not isinstance(t, tuple):
            return t.name
        return f"[{fmt(t[0])}, {fmt(t[1])}]"
    return fmt(std_bracketing(word))


def normalize(expr, ctx, cap: int = DEGREE_CAP, cell_guard=None) -> LiePoly:
    """Expand a (surface or core) expression to Lyndon coordinates."""
    node = desugar(expr)

    def walk(n) -> LiePoly:
        if isinstance(n, Var):
            return LiePoly.variable(ctx, n.var)
        if isinstance(n, Sum):
            acc = LiePoly.zero(ctx)
            for c, t in n.terms:
                acc = acc.add(walk(t).scale_int(c))
            return acc
        if isinstance(n, Bin):
            return walk(n.a).bracket(walk(n.b), cap=cap, cell_guard=cell_guard)
        if isinstance(n, AdPow):
            acc = walk(n.a)
            by = walk(n.b)
            for _ in range(n.k):
                acc = acc.bracket(by, cap=cap, cell_guard=cell_guard)
            return acc
        raise TypeError(f"not a normalizable node: {n!r}")

    return walk(node)


# -- evaluation --

AD_POWER_THRESHOLD = 4  # below this, iterated brackets beat matrix powering


def evaluate(expr, algebra, assignment, check_grades: bool = True):
    """Structural evaluation of an expression on a graded algebra.

    assignment: {GradedVar: coords}; coords may carry leading numpy axes and
    every assigned vector must lie in the variable's grade component.
    """
    if check_grades:
        for v, vec in assignment.items():
            arr = np.asarray(vec, dtype=np.int64)
            idx = set(algebra.grade_indices(v.grade))
            outside = [i for i in range(algebra.dim) if i not in idx]
            if outside and arr[..., outside].any():
                raise GradeMismatch(
                    f"assignment for {v.name} leaves its grade-{v.grade} component")
    node = desugar(expr)
    cache = {}  # keyed by node equality: equal subtrees evaluate once

    def walk(n):
        got = cache.get(n)
        if got is not None:
            return got
        if isinstance(n, Var):
            out = np.asarray(assignment[n.var], dtype=np.int64)
        elif isinstance(n, Sum):
            out = None
            for c, t in n.terms:
                term = algebra.ctx.mul_table[c % algebra.ctx.p, walk(t)]
                out = term if out is None else algebra.ctx.add_table[out, term]
            if out is None:
                out = np.zeros(algebra.dim, dtype=np.int64)
        elif isinstance(n, Bin):
            out = algebra.bracket(walk(n.a), walk(n.b))
        elif isinstance(n, AdPow):
            a, b = walk(n.a), walk(n.b)
            if n.k < AD_POWER_THRESHOLD:
                out = a
                for _ in range(n.k):
                    out = algebra.bracket(out, b)
            else:
                m = algebra.mat_pow(algebra.ad_matrix(b), n.k)
                out = algebra.mat_apply(m, a)
        else:
            raise TypeError(f"not an evaluable node: {n!r}")
        cache[n] = out
        return out

    return walk(node)


def evaluate_via_normal_form(expr, algebra, assignment, cap: int = DEGREE_CAP):
    """Evaluate through Lyndon coordinates; cross-checks the structural path."""
    poly = normalize(expr, algebra.ctx, cap=cap)
    return evaluate_poly(poly, algebra, assignment)


def evaluate_poly(poly: LiePoly, algebra, assignment):
    ctx = algebra.ctx
    out = None
    for cell in poly.sorted_cells():
        for w, code in sorted(poly.cells[cell].items()):
            val = evaluate(bracketing_expr(w), algebra, assignment, check_grades=False)
            term = ctx.mul_table[code, val]
            out = term if out is None else ctx.add_table[out, term]
    if out is None:
        shape = ()
        for vec in assignment.values():
            shape = np.asarray(vec).shape[:-1]
            break
        return np.zeros(shape + (algebra.dim,), dtype=np.int64)
    return out
