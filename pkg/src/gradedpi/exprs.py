"""Expression trees for graded Lie polynomials.

Surface nodes (what the parser produces): Var, Sum, Pow, Bracket.  Brackets
are left-normed with n >= 2 slots; a power in a slot means iterated
right-bracketing by the slot's base, per the convention [x1, x2^k] =
[x1, x2, ..., x2].  A powered FIRST slot is moved to the last slot by
antisymmetry, [u^k, v] := -[v, u^k]; the literal left-normed chain reading
was checked exhaustively on sl2 and refutes the identities it appears in.

Desugared core nodes (what evaluation and normalization consume): Var, Sum,
Bin (binary bracket), AdPow (iterated right-bracketing).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import ParseError


@total_ordering
@dataclass(frozen=True)
class GradedVar:
    """A grade-typed variable such as y1; ordered by (family, index)."""

    family: str
    index: int
    grade: tuple

    @property
    def name(self) -> str:
        return f"{self.family}{self.index}"

    def _key(self):
        return (self.family, self.index)

    def __lt__(self, other):
        return self._key() < other._key()

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Multidegree:
    """Exponent map on graded variables: one multihomogeneous cell."""

    items: tuple  # ((GradedVar, exp), ...) sorted by variable

    @classmethod
    def of(cls, mapping) -> "Multidegree":
        items = tuple(sorted(((v, int(e)) for v, e in dict(mapping).items() if e),
                             key=lambda it: it[0]._key()))
        for _, e in items:
            if e < 0:
                raise ValueError("negative exponent in multidegree")
        return cls(items)

    @property
    def total(self) -> int:
        return sum(e for _, e in self.items)

    @property
    def variables(self) -> tuple:
        return tuple(v for v, _ in self.items)

    def exp(self, v) -> int:
        for w, e in self.items:
            if w == v:
                return e
        return 0

    def grade(self, group) -> tuple:
        g = group.zero()
        for v, e in self.items:
            for _ in range(e):
                g = group.add(g, group.reduce(v.grade))
        return g

    def add(self, other) -> "Multidegree":
        d = {v: e for v, e in self.items}
        for v, e in other.items:
            d[v] = d.get(v, 0) + e
        return Multidegree.of(d)

    def le(self, other) -> bool:
        """Componentwise <=; variables absent from `other` must be absent here."""
        return all(e <= other.exp(v) for v, e in self.items)

    def sort_key(self):
        return (self.total, tuple((v.family, v.index, e) for v, e in self.items))

    def format(self) -> str:
        return ",".join(f"{v.name}:{e}" for v, e in self.items)

    def __repr__(self):
        return "{" + self.format() + "}"


# -- surface AST --

@dataclass(frozen=True)
class Var:
    var: GradedVar


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((int_coeff, node), ...)


@dataclass(frozen=True)
class Pow:
    base: object
    k: int


@dataclass(frozen=True)
class Bracket:
    slots: tuple  # surface nodes, len >= 2


# -- desugared core --

@dataclass(frozen=True)
class Bin:
    a: object
    b: object


@dataclass(frozen=True)
class AdPow:
    """[a, b^k] left-normed: apply (ad b) to a, k times."""

    a: object
    b: object
    k: int


def _slot_items(node):
    """Flatten a slot's additive structure into ((coeff, base, power), ...).

    Only sums distribute; a powered base stays whole, since [A, (u+v)^k]
    means k bracketings by the single element u + v.
    """
    if isinstance(node, Sum):
        out = []
        for c, t in node.terms:
            for (c2, b, k) in _slot_items(t):
                out.append((c * c2, b, k))
        return tuple(out)
    if isinstance(node, Pow):
        return ((1, node.base, node.k),)
    return ((1, node, 1),)


def desugar(node):
    """Surface AST -> core AST (Var / Sum / Bin / AdPow); idempotent on core trees.

    Structurally equal subtrees desugar to one shared object, so evaluation
    caches collapse repeated subexpressions (the Semenov terms share long
    bracket prefixes).
    """
    memo = {}

    def go(n):
        got = memo.get(n)
        if got is not None:
            return got
        out = _desugar_one(n, go)
        memo[n] = out
        return out

    return go(node)


def _desugar_one(node, go):
    if isinstance(node, Var):
        return node
    if isinstance(node, Bin):
        return Bin(go(node.a), go(node.b))
    if isinstance(node, AdPow):
        return AdPow(go(node.a), go(node.b), node.k)
    if isinstance(node, Sum):
        return Sum(tuple((c, go(t)) for c, t in node.terms))
    if isinstance(node, Pow):
        raise ParseError("power outside a bracket slot has no meaning")
    if isinstance(node, Bracket):
        slots = node.slots
        first = _slot_items(slots[0])
        if all(k == 1 for _, _, k in first):
            value = Sum(tuple((c, go(b)) for c, b, _ in first))
            rest = slots[1:]
        else:
            second = _slot_items(slots[1])
            if any(k != 1 for _, _, k in second):
                raise ParseError("powers in both of the first two slots are unsupported")
            base2 = Sum(tuple((c, go(b)) for c, b, _ in second))
            # [u-with-powers, v, ...] = [-[v, u-with-powers], ...]
            value = Sum(tuple((-c, AdPow(base2, go(b), k)) for c, b, k in first))
            rest = slots[2:]
        for slot in rest:
            items = _slot_items(slot)
            value = Sum(tuple((c, AdPow(value, go(b), k)) for c, b, k in items))
        return value
    raise TypeError(f"not an expression node: {node!r}")


def variables(node) -> tuple:
    """Sorted distinct GradedVars appearing in a (surface or core) tree."""
    seen = set()

    def walk(n):
        if isinstance(n, Var):
            seen.add(n.var)
        elif isinstance(n, Sum):
            for _, t in n.terms:
                walk(t)
        elif isinstance(n, Pow):
            walk(n.base)
        elif isinstance(n, Bracket):
            for s in n.slots:
                walk(s)
        elif isinstance(n, Bin):
            walk(n.a)
            walk(n.b)
        elif isinstance(n, AdPow):
            walk(n.a)
            walk(n.b)
        else:
            raise TypeError(f"not an expression node: {n!r}")

    walk(node)
    return tuple(sorted(seen))


def _exp_text(k: int) -> str:
    return str(k)


def to_text(node) -> str:
    """Canonical DSL text of a surface tree; reparses to an identical tree."""
    if isinstance(node, Var):
        return node.var.name
    if isinstance(node, Pow):
        base = to_text(node.base)
        if isinstance(node.base, (Sum,)):
            base = f"({base})"
        return f"{base}^{_exp_text(node.k)}"
    if isinstance(node, Bracket):
        return "[" + ", ".join(to_text(s) for s in node.slots) + "]"
    if isinstance(node, Sum):
        parts = []
        for i, (c, t) in enumerate(node.terms):
            body = to_text(t)
            if isinstance(t, Sum):
                body = f"({body})"
            mag = abs(c)
            piece = body if mag == 1 else f"{mag}*{body}"
            if i == 0:
                parts.append(piece if c >= 0 else f"-{piece}")
            else:
                parts.append(("+ " if c >= 0 else "- ") + piece)
        return " ".join(parts) if parts else "0"
    raise TypeError(f"not a printable node: {node!r}")
