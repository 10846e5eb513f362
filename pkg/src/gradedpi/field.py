"""Exact arithmetic in GF(p) and GF(p^2) for primes p > 3.

Elements are plain ints in [0, q): for k = 1 the residue itself, for k = 2
the code a0 + p*a1 standing for a0 + a1*t with t^2 = c (c the smallest
quadratic non-residue mod p).  Elements carry no context; every operation
takes the FieldContext explicitly, which keeps them cheap to enumerate in
bulk and lets numpy arrays of codes flow through the same tables.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldSpecError, NotPresent


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _smallest_non_residue(p: int) -> int:
    squares = {(x * x) % p for x in range(p)}
    for c in range(2, p):
        if c not in squares:
            return c
    raise FieldSpecError(f"no quadratic non-residue mod {p}")  # unreachable for p > 2


class FieldContext:
    """GF(q) with q = p^k, k in {1, 2}; immutable after construction."""

    def __init__(self, p: int, k: int = 1):
        if k not in (1, 2):
            raise FieldSpecError(f"extension degree must be 1 or 2, got {k}")
        if p <= 3 or not _is_prime(p):
            raise FieldSpecError(f"p must be a prime > 3, got {p}")
        self.p = p
        self.k = k
        self.q = p**k
        # modulus t^2 - c; irreducible because c is a non-residue
        self.modulus_c = _smallest_non_residue(p) if k == 2 else None
        self._build_tables()

    def _build_tables(self):
        p, q, k = self.p, self.q, self.k
        codes = np.arange(q, dtype=np.int64)
        self.coeff_planes = np.stack([codes % p, codes // p], axis=1)[:, :k]  # (q, k)
        a = self.coeff_planes[:, None, :]  # (q, 1, k)
        b = self.coeff_planes[None, :, :]  # (1, q, k)
        self.add_table = self._encode((a + b) % p)
        self.sub_table = self._encode((a - b) % p)
        if k == 1:
            prod = (a[..., 0] * b[..., 0]) % p
            self.mul_table = prod.astype(np.int64)
        else:
            c = self.modulus_c
            p0 = (a[..., 0] * b[..., 0] + c * a[..., 1] * b[..., 1]) % p
            p1 = (a[..., 0] * b[..., 1] + a[..., 1] * b[..., 0]) % p
            self.mul_table = self._encode(np.stack([p0, p1], axis=-1))
        self.neg_table = self.sub_table[0]
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(self.mul_table[x] == 1)[0][0])
        self.inv_table = inv

    def _encode(self, planes):
        """Coefficient array (..., k) -> codes."""
        planes = np.asarray(planes)
        if self.k == 1:
            return planes[..., 0].astype(np.int64)
        return (planes[..., 0] + self.p * planes[..., 1]).astype(np.int64)

    # -- scalar / array operations (codes in, codes out) --

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inversion of 0 in GF(q)")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a, self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        """a^e by square-and-multiply; 0^0 = 1."""
        if e < 0:
            raise ValueError("negative exponent")
        r, base = 1, int(a)
        while e:
            if e & 1:
                r = int(self.mul_table[r, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return r

    # -- element construction and display --

    def elem(self, value) -> int:
        """Make an element code from an int (mod p) or a coefficient tuple."""
        if isinstance(value, (tuple, list)):
            if len(value) != self.k:
                raise FieldSpecError(f"expected {self.k} coefficients, got {len(value)}")
            coeffs = [v % self.p for v in value]
            return coeffs[0] + (self.p * coeffs[1] if self.k == 2 else 0)
        return int(value) % self.p  # ints land in the prime subfield

    def coeffs(self, code: int) -> tuple:
        """Residue vector of an element in the basis {1, t}."""
        return tuple(int(x) for x in self.coeff_planes[code])

    def show(self, code: int) -> str:
        if self.k == 1:
            return str(int(code))
        a0, a1 = self.coeffs(code)
        if a1 == 0:
            return str(a0)
        t = "t" if a1 == 1 else f"{a1}t"
        return t if a0 == 0 else f"{a0}+{t}"

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^2; t^2={self.modulus_c})"

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))


def make_field(p: int, k: int = 1) -> FieldContext:
    """Field constructor; rejects p <= 3, composite p, and k not in {1, 2}."""
    return FieldContext(p, k)


def parse_field_spec(spec: str) -> FieldContext:
    """Parse "p" or "p^2", e.g. "5", "7", "5^2"."""
    spec = spec.strip()
    if "^" in spec:
        base, _, exp = spec.partition("^")
        try:
            p, k = int(base), int(exp)
        except ValueError:
            raise FieldSpecError(f"bad field spec {spec!r}")
        return make_field(p, k)
    try:
        p = int(spec)
    except ValueError:
        raise FieldSpecError(f"bad field spec {spec!r}")
    return make_field(p, 1)


def field_spec(ctx: FieldContext) -> str:
    return str(ctx.p) if ctx.k == 1 else f"{ctx.p}^2"


def primitive_cube_root(ctx: FieldContext) -> int:
    """Smallest w != 1 with w^3 = 1, by scan in canonical code order.

    Exists iff 3 | q - 1; raises NotPresent otherwise.
    """
    for w in ctx.elements():
        if w != 1 and ctx.pow(w, 3) == 1:
            return w
    raise NotPresent(f"{ctx!r} has no primitive cube root of unity (3 does not divide {ctx.q - 1})")
