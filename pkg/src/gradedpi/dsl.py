"""Parser for graded Lie polynomials and identity-basis files.

Grammar (see README for the full sketch): variables like `y1`; brackets
`[e1, e2, ..., en]` are left-normed with n >= 2; `e^k` in a slot repeats the
slot; exponents are arithmetic in the symbolic field size `q` (resolved at
parse time, so one basis file serves every field); `Sem1(u, v)` and
`Sem2(u, v)` expand to the two Semenov polynomials; an identity `f = g` is
stored as f - g, so the engine only ever checks vanishing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .algebra import Z2, Z2Z2, Z3, Z, GradeGroup
from .errors import NonPositiveExponent, ParseError, ProfileMismatch, UnknownFamily
from .exprs import Bracket, GradedVar, Multidegree, Pow, Sum, Var, to_text


@dataclass(frozen=True)
class GradingProfile:
    name: str
    group: GradeGroup
    family_grades: dict

    def var(self, family: str, index: int) -> GradedVar:
        if family not in self.family_grades:
            raise UnknownFamily(
                f"family {family!r} is not graded by profile {self.name} "
                f"(families: {', '.join(sorted(self.family_grades))})")
        return GradedVar(family, index, self.family_grades[family])


PROFILES = {
    "Z2": GradingProfile("Z2", Z2, {"y": (0,), "z": (1,)}),
    "Z3": GradingProfile("Z3", Z3, {"x": (2,), "y": (0,), "z": (1,)}),
    "Z2Z2": GradingProfile("Z2Z2", Z2Z2,
                           {"w": (0, 0), "x": (0, 1), "y": (1, 0), "z": (1, 1)}),
    "Z": GradingProfile("Z", Z, {"x": (-1,), "y": (0,), "z": (1,)}),
}

MACROS = ("Sem1", "Sem2")

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]\w*)|(?P<sym>[\[\](),+\-*^=]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        pos = m.end()
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start()))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start()))
        else:
            tokens.append(("sym", m.group("sym"), m.start()))
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, profile: GradingProfile, q: int):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.profile = profile
        self.q = q

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.peek()
        return tok[0] == "sym" and tok[1] == value

    # expr := ['-'] term (('+'|'-') term)*
    def expr(self):
        terms = []
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while self.at("+") or self.at("-"):
            s = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(s))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    # term := [INT ['*']] factor
    def term(self, sign):
        coeff = 1
        if self.peek()[0] == "int":
            coeff = self.take()[1]
            if self.at("*"):
                self.take()
        return (sign * coeff, self.factor())

    # factor := primary ['^' expterm]
    # compound exponent arithmetic needs parentheses: v^(q^2+2), not v^q^2+2,
    # since a bare +/- after the power belongs to the enclosing sum
    def factor(self):
        node = self.primary()
        if self.at("^"):
            pos = self.take()[2]
            k = self.expterm()
            if k < 1:
                raise NonPositiveExponent(f"exponent {k} must be positive (position {pos})")
            node = Pow(node, k)
        return node

    def primary(self):
        tok = self.peek()
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if name in MACROS:
                self.take("sym", "(")
                u = self.expr()
                self.take("sym", ",")
                v = self.expr()
                self.take("sym", ")")
                return expand_macro(name, u, v, self.q)
            m = re.fullmatch(r"([A-Za-z])(\d+)", name)
            if not m:
                raise ParseError(f"unknown name {name!r}", tok[2])
            return Var(self.profile.var(m.group(1), int(m.group(2))))
        if self.at("["):
            self.take()
            slots = [self.expr()]
            while self.at(","):
                self.take()
                slots.append(self.expr())
            self.take("sym", "]")
            if len(slots) < 2:
                raise ParseError("a bracket needs at least two slots", tok[2])
            return Bracket(tuple(slots))
        if self.at("("):
            self.take()
            node = self.expr()
            self.take("sym", ")")
            return node
        raise ParseError(f"expected an expression, found {tok[1]!r}", tok[2])

    # exponent := expterm (('+'|'-') expterm)* ; expterm := INT | q ['^' INT] | (exponent)
    def exponent(self) -> int:
        val = self.expterm()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.expterm()
            val = val + rhs if op == "+" else val - rhs
        return val

    def expterm(self) -> int:
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return tok[1]
        if tok[0] == "name" and tok[1] == "q":
            self.take()
            if self.at("^"):
                self.take()
                e = self.take("int")[1]
                return self.q**e
            return self.q
        if self.at("("):
            self.take()
            val = self.exponent()
            self.take("sym", ")")
            return val
        raise ParseError(f"expected an exponent, found {tok[1]!r}", tok[2])


def parse_poly(text: str, profile: GradingProfile, q: int):
    """Parse one polynomial (or identity f = g, stored as f - g)."""
    parser = _Parser(text, profile, q)
    lhs = parser.expr()
    if parser.at("="):
        parser.take()
        rhs = parser.expr()
        parser.take("end")
        return Sum(((1, lhs), (-1, rhs)))
    parser.take("end")
    return lhs


def expand_macro(name: str, u, v, q: int):
    """The two Sem identities, built as plain expression trees.

    Sem1(u, v) = [u, v^(q^2+2)] - [u, v^3], i.e. u f(ad v) for the operator
    polynomial f(t) = t^(q^2+2) - t^3, which kills every ad-eigenvalue in
    GF(q^2).  Sem2(u, v) is the six-term alternating sum with exponents
    q^2-1, q, q-1, q-2, q^2, q^2-2; its fifth term powers the inner bracket
    [u, v] and its sixth carries a powered first slot, read via antisymmetry.
    """
    if q < 5:
        raise ParseError(f"Semenov macros need q >= 5, got {q}")
    if name == "Sem1":
        return Sum(((1, Bracket((u, Pow(v, q * q + 2)))),
                    (-1, Bracket((u, Pow(v, 3))))))
    if name == "Sem2":
        uq2_minus_u = Sum(((1, Pow(u, q * q)), (-1, u)))
        vq2_minus_v = Sum(((1, Pow(v, q * q)), (-1, v)))
        uv = Bracket((u, v))
        t1 = (1, uv)
        t2 = (-1, Bracket((u, v, Pow(u, q * q - 1))))
        t3 = (-1, Bracket((u, Pow(v, q))))
        t4 = (1, Bracket((u, v, Pow(u, q * q - 1), Pow(v, q - 1))))
        t5 = (1, Bracket((u, v, uq2_minus_u, Pow(uv, q - 2), vq2_minus_v)))
        t6 = (-1, Bracket((v,
                           Pow(Bracket((uq2_minus_u, v)), q),
                           Sum(((1, Pow(v, q * q - 2)), (-1, Pow(v, q - 2)))))))
        return Sum((t1, t2, t3, t4, t5, t6))
    raise ParseError(f"unknown macro {name!r}")


@dataclass(frozen=True)
class BasisFile:
    name: str
    profile: GradingProfile
    q: int
    identities: tuple  # ((name, surface tree), ...)

    def identity(self, name: str):
        for n, tree in self.identities:
            if n == name:
                return tree
        raise KeyError(name)

    def names(self):
        return tuple(n for n, _ in self.identities)


def _resolve_basis_path(path: str):
    import os

    if os.path.exists(path):
        with open(path) as fh:
            return os.path.basename(path), fh.read()
    base = path if path.endswith(".lie") else path + ".lie"
    pkg_files = resources.files("gradedpi").joinpath("bases")
    candidate = pkg_files.joinpath(base)
    if candidate.is_file():
        return base, candidate.read_text()
    raise ParseError(f"no basis file named {path!r} (not a path, not shipped)")


def load_basis(path: str, q: int, expect_group: GradeGroup | None = None) -> BasisFile:
    """Load a .lie identity file; q resolves the symbolic exponents."""
    name, text = _resolve_basis_path(path)
    profile = None
    identities = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("profile"):
            pname = line.split(None, 1)[1].strip() if len(line.split(None, 1)) > 1 else ""
            if pname not in PROFILES:
                raise ParseError(f"{name}:{lineno}: unknown profile {pname!r}")
            profile = PROFILES[pname]
            continue
        if line.startswith("ident"):
            if profile is None:
                raise ParseError(f"{name}:{lineno}: 'profile' must precede identities")
            m = re.match(r"ident\s+(\w+)\s*:\s*(.+)", line)
            if not m:
                raise ParseError(f"{name}:{lineno}: expected 'ident <name>: <expression>'")
            try:
                tree = parse_poly(m.group(2), profile, q)
            except ParseError as exc:
                raise ParseError(f"{name}:{lineno}: {exc}")
            identities.append((m.group(1), tree))
            continue
        raise ParseError(f"{name}:{lineno}: unrecognized line {line!r}")
    if profile is None:
        raise ParseError(f"{name}: missing 'profile' header")
    if expect_group is not None and profile.group != expect_group:
        raise ProfileMismatch(
            f"{name} is graded by {profile.group.label}, the algebra by {expect_group.label}")
    return BasisFile(name, profile, q, tuple(identities))


def parse_cell(text: str, profile: GradingProfile) -> Multidegree:
    """Parse a cell spec like "y1:1,y2:1,z1:2"."""
    exps = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"([A-Za-z])(\d+)\s*:\s*(\d+)", part)
        if not m:
            raise ParseError(f"bad cell component {part!r} (want e.g. y1:1)")
        v = profile.var(m.group(1), int(m.group(2)))
        e = int(m.group(3))
        if e < 1:
            raise NonPositiveExponent(f"cell exponent must be >= 1 in {part!r}")
        if v in exps:
            raise ParseError(f"variable {v.name} repeated in cell spec")
        exps[v] = e
    if not exps:
        raise ParseError("empty cell spec")
    return Multidegree.of(exps)


def print_poly(tree) -> str:
    return to_text(tree)
