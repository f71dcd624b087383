"""Exact arithmetic in small finite fields.

Characteristic-2 fields GF(2^m), m <= 16, are the workhorse: elements are
ints whose bits are the coefficients of a polynomial over GF(2), reduced
modulo a fixed irreducible modulus.  Zero and one are always coded 0 and 1,
and addition is xor.  Odd prime fields GF(p), p <= 13, exist only for the
odd-order plane-arc spot checks; no odd prime-power extensions are provided.

Subfield towers GF(q) < GF(q^n) with q = 2^h carry the Frobenius map
x -> x^q, Galois orbits, and the expand/compress maps between GF(q^n)^k
and GF(q)^(nk) used by field reduction.
"""

from __future__ import annotations

from functools import lru_cache

MAX_DEGREE = 16

# Fixed moduli shipped with the artifact, keyed by degree.  Any other
# irreducible modulus is accepted when given explicitly.
DEFAULT_MODULUS = {
    1: 0b11,                # x + 1
    2: 0b111,               # x^2 + x + 1
    3: 0b1011,              # x^3 + x + 1
    4: 0b10011,             # x^4 + x + 1
    6: 0b1011011,           # x^6 + x^4 + x^3 + x + 1
    8: 0b100011101,         # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,        # x^9 + x^4 + 1
    12: 0b1000001010011,    # x^12 + x^6 + x^4 + x + 1
}

ODD_PRIMES = (3, 5, 7, 11, 13)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials coded as ints."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmod(a: int, mod: int) -> int:
    """Remainder of a modulo mod, both GF(2) polynomials coded as ints."""
    dm = mod.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every GF(2) polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            if clmod(poly, g) == 0:
                return False
    return True


class FiniteField:
    """GF(p^m) with int-coded elements.

    p = 2: codes are polynomial bit vectors, add is xor, mul reduces modulo
    an irreducible modulus.  Odd prime p: m = 1 and codes are residues.
    """

    def __init__(self, p: int, m: int, modulus: int | None = None):
        if p == 2:
            if not 1 <= m <= MAX_DEGREE:
                raise ValueError(f"degree m={m} out of range 1..{MAX_DEGREE}")
            if modulus is None:
                if m not in DEFAULT_MODULUS:
                    raise ValueError(f"no default modulus for m={m}; pass one explicitly")
                modulus = DEFAULT_MODULUS[m]
            if modulus.bit_length() - 1 != m:
                raise ValueError(f"modulus degree {modulus.bit_length() - 1} != m={m}")
            if not (modulus & 1 and modulus >> m):
                raise ValueError("modulus must have leading and constant coefficient 1")
            if not is_irreducible(modulus):
                raise ValueError(f"modulus {modulus:#b} is reducible over GF(2)")
        else:
            if p not in ODD_PRIMES:
                raise ValueError(f"odd characteristic limited to primes {ODD_PRIMES}")
            if m != 1:
                raise ValueError("odd-characteristic fields are prime fields only (m=1)")
            modulus = None
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p**m
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if p == 2 and m <= 12:
            self._build_tables()

    def _mul_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            return clmod(clmul(a, b), self.modulus)
        return a * b % self.p

    def _build_tables(self):
        # log/exp over any multiplicative generator; x need not be primitive
        # for a non-primitive modulus, so search.
        n = self.order - 1
        if n == 1:
            self._exp = [1, 1]
            self._log = [0, 0]
            return
        for g in range(2, self.order):
            seen = 1
            v = g
            while v != 1:
                v = self._mul_slow(v, g)
                seen += 1
            if seen == n:
                break
        else:
            raise AssertionError("no generator found")  # impossible: group is cyclic
        exp = [1] * (2 * n)
        log = [0] * self.order
        v = 1
        for i in range(n):
            exp[i] = v
            exp[i + n] = v
            log[v] = i
            v = self._mul_slow(v, g)
        self._exp = exp
        self._log = log

    # -- arithmetic on int codes ------------------------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element code of {self}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self}")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.p == 2:
            return f"GF(2^{self.m}; mod={self.modulus:#b})" if self.m > 1 else "GF(2)"
        return f"GF({self.p})"


def field_make(m: int, modulus: int | None = None) -> FiniteField:
    """GF(2^m) with the shipped default modulus unless one is given."""
    return FiniteField(2, m, modulus)


def prime_field(p: int) -> FiniteField:
    """GF(p) for an odd prime p (plane-arc spot checks only)."""
    return FiniteField(p, 1)


@lru_cache(maxsize=None)
def _cached_gf2(m: int, modulus: int | None) -> FiniteField:
    return FiniteField(2, m, modulus)


def gf(order: int) -> FiniteField:
    """Field of the given order: a power of two (default modulus) or an odd prime."""
    if order in ODD_PRIMES:
        return FiniteField(order, 1)
    m = order.bit_length() - 1
    if order != 1 << m:
        raise ValueError(f"unsupported field order {order}")
    return _cached_gf2(m, None)


def field_arith(field: FiniteField, a: int, b: int, kind: str) -> int:
    """Checked add/mul/div dispatcher over int codes."""
    field.check(a)
    field.check(b)
    if kind == "add":
        return field.add(a, b)
    if kind == "mul":
        return field.mul(a, b)
    if kind == "div":
        return field.div(a, b)
    raise ValueError(f"unknown arithmetic kind {kind!r}")


class FieldTower:
    """Subfield tower GF(q) < GF(q^n), q = 2^h, with its Galois structure.

    The embedding sends the base generator to the smallest-coded root of the
    base modulus in the top field, which makes it a reproducible field
    homomorphism whose image is exactly the fixed field of x -> x^q.
    """

    def __init__(self, base: FiniteField, top: FiniteField):
        if base.p != 2 or top.p != 2:
            raise ValueError("towers are defined for characteristic 2 only")
        if top.m % base.m != 0:
            raise ValueError(f"degree {base.m} does not divide {top.m}")
        self.base = base
        self.top = top
        self.h = base.m
        self.n = top.m // base.m
        self.q = base.order
        root = next(a for a in top.elements() if self._eval_base_modulus(a) == 0)
        self.root = root
        emb = [0] * base.order
        for a in base.elements():
            v = 0
            for i in range(base.m):
                if (a >> i) & 1:
                    v ^= top.pow(root, i)
            emb[a] = v
        self._embed = emb
        self._restrict = {v: a for a, v in enumerate(emb)}
        if len(self._restrict) != base.order:
            raise AssertionError("embedding is not injective")
        self._basis_cols, self._inv_rows = self._basis_matrices()

    def _eval_base_modulus(self, a: int) -> int:
        v = 0
        for i in range(self.base.modulus.bit_length() - 1, -1, -1):
            v = self.top.mul(v, a)
            if (self.base.modulus >> i) & 1:
                v ^= 1
        return v

    def _basis_matrices(self):
        # GF(2)-matrix of (c_0..c_{n-1}) in GF(q)^n -> sum embed(c_i) * x^i,
        # as column bitmasks, plus its inverse.  {1, x, .., x^(n-1)} is a
        # GF(q)-basis of GF(q^n) because x has degree n over the base.
        hn = self.top.m
        cols = []
        for i in range(self.n):
            xi = 1 << i  # x^i needs no reduction since i < hn
            for j in range(self.h):
                cols.append(self.top.mul(self._embed[1 << j], xi))
        inv = _invert_gf2_columns(cols, hn)
        return cols, inv

    # -- maps ---------------------------------------------------------------

    def embed(self, a: int) -> int:
        """Base element code -> its image in the top field."""
        return self._embed[a]

    def restrict(self, v: int) -> int:
        """Inverse of embed; raises if v is not in the embedded base field."""
        try:
            return self._restrict[v]
        except KeyError:
            raise ValueError(f"{v} is not in the embedded base field") from None

    def in_base(self, v: int) -> bool:
        return v in self._restrict

    def frobenius(self, a: int) -> int:
        """a -> a^q, the generator of Gal(GF(q^n)/GF(q))."""
        self.top.check(a)
        for _ in range(self.h):
            a = self.top.mul(a, a)
        return a

    def galois_orbit(self, a: int) -> list[int]:
        """[a, a^q, a^(q^2), ...] up to the first repetition."""
        orbit = [self.top.check(a)]
        v = self.frobenius(a)
        while v != a:
            orbit.append(v)
            v = self.frobenius(v)
        return orbit

    def compress(self, chunks: tuple[int, ...]) -> int:
        """(c_0..c_{n-1}) over GF(q) -> sum embed(c_i) * x^i in GF(q^n)."""
        v = 0
        k = 0
        for c in chunks:
            for j in range(self.h):
                if (c >> j) & 1:
                    v ^= self._basis_cols[k]
                k += 1
        return v

    def expand(self, v: int) -> tuple[int, ...]:
        """GF(q^n) element -> its GF(q) coordinates over the basis {x^i}."""
        bits = 0
        for k, row in enumerate(self._inv_rows):
            if bin(row & v).count("1") & 1:
                bits |= 1 << k
        mask = (1 << self.h) - 1
        return tuple((bits >> (i * self.h)) & mask for i in range(self.n))

    def __repr__(self) -> str:
        return f"Tower(GF(2^{self.h}) < GF(2^{self.top.m}), n={self.n})"


def _invert_gf2_columns(cols: list[int], dim: int) -> list[int]:
    """Invert a GF(2) matrix given as column bitmasks; returns row bitmasks
    of the inverse (so row k & input-bits parity gives output bit k)."""
    rows = []
    for r in range(dim):
        bits = 0
        for c in range(dim):
            if (cols[c] >> r) & 1:
                bits |= 1 << c
        rows.append(bits)
    aug = [rows[r] | (1 << (dim + r)) for r in range(dim)]
    for col in range(dim):
        piv = next((r for r in range(col, dim) if (aug[r] >> col) & 1), None)
        if piv is None:
            raise AssertionError("expansion basis is degenerate")
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(dim):
            if r != col and (aug[r] >> col) & 1:
                aug[r] ^= aug[col]
    return [aug[r] >> dim for r in range(dim)]


def make_tower(h: int, n: int, base_modulus: int | None = None,
               top_modulus: int | None = None) -> FieldTower:
    """Tower GF(2^h) < GF(2^(h*n)) over the default (or given) moduli."""
    return FieldTower(field_make(h, base_modulus), field_make(h * n, top_modulus))
