"""Projective spaces PG(d, q) with canonical subspace arithmetic.

A subspace is stored as its reduced-row-echelon basis matrix (rows of int
field codes, pivots strictly increasing, pivot columns cleared), so two
subspaces are equal iff their matrices are identical and sets of subspaces
hash cheaply.  The empty subspace has zero rows and projective dimension -1.

Duality is the orthogonal complement under the standard dot product; meets
are computed through it.  Quotients by a subspace come in two flavours: the
canonical chart on the non-pivot coordinates (default) and an explicit
lexicographically-least complement for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .fields import FiniteField

Vec = tuple[int, ...]

POINT_ENUM_CAP = 10**7


def rref(field: FiniteField, rows) -> tuple[tuple[Vec, ...], tuple[int, ...]]:
    """Canonical reduced row echelon form; returns (rows, pivot columns)."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return (), ()
    ncols = len(work[0])
    mul, sub, inv = field.mul, field.sub, field.inv
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        if prow[col] != 1:
            s = inv(prow[col])
            prow = work[r] = [mul(s, x) for x in prow]
        for i in range(len(work)):
            if i != r:
                c = work[i][col]
                if c:
                    row = work[i]
                    work[i] = [sub(row[j], mul(c, prow[j])) for j in range(ncols)]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def reduce_mod(field: FiniteField, vec: Vec, rows: tuple[Vec, ...],
               pivots: tuple[int, ...]) -> Vec:
    """Eliminate vec's pivot coordinates against an RREF basis."""
    v = list(vec)
    mul, sub = field.mul, field.sub
    for row, p in zip(rows, pivots):
        c = v[p]
        if c:
            v = [sub(v[j], mul(c, row[j])) for j in range(len(v))]
    return tuple(v)


def kernel(field: FiniteField, rows, ncols: int) -> tuple[Vec, ...]:
    """Canonical basis of the right null space {v : rows . v = 0}."""
    rr, pivots = rref(field, rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(rr, pivots):
            v[p] = field.neg(row[f])
        basis.append(tuple(v))
    return rref(field, basis)[0]


def lin_solve(field: FiniteField, rows, target: Vec) -> Vec | None:
    """One solution x of x . rows = target (free variables at 0), or None."""
    m = len(rows)
    if m == 0:
        return () if not any(target) else None
    aug = [tuple(rows[i][j] for i in range(m)) + (target[j],)
           for j in range(len(target))]
    rr, pivots = rref(field, aug)
    x = [0] * m
    for row, p in zip(rr, pivots):
        if p == m:
            return None  # inconsistent
        x[p] = row[m]
    if vec_mat(field, tuple(x), rows) != tuple(target):
        return None
    return tuple(x)


def mat_inv(field: FiniteField, rows: list[Vec]) -> list[Vec]:
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    rr, pivots = rref(field, aug)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    return [tuple(row[n:]) for row in rr]


def mat_mul(field: FiniteField, a, b) -> list[Vec]:
    mul, add = field.mul, field.add
    out = []
    for row in a:
        acc = [0] * len(b[0])
        for c, brow in zip(row, b):
            if c:
                acc = [add(acc[j], mul(c, brow[j])) for j in range(len(acc))]
        out.append(tuple(acc))
    return out


def vec_mat(field: FiniteField, v: Vec, rows) -> Vec:
    """v . rows, i.e. the combination sum v[k] * rows[k]."""
    mul, add = field.mul, field.add
    acc = [0] * len(rows[0])
    for c, row in zip(v, rows):
        if c:
            acc = [add(acc[j], mul(c, row[j])) for j in range(len(acc))]
    return tuple(acc)


def normalize_point(field: FiniteField, vec: Vec) -> Vec:
    """Scale so the first nonzero coordinate is 1."""
    for c in vec:
        if c:
            if c == 1:
                return tuple(vec)
            s = field.inv(c)
            return tuple(field.mul(s, x) for x in vec)
    raise ValueError("zero vector does not define a projective point")


class ProjSpace:
    """PG(dim, field): the lattice context for points and subspaces."""

    def __init__(self, dim: int, field: FiniteField):
        if dim < 1:
            raise ValueError("projective dimension must be >= 1")
        self.dim = dim
        self.field = field
        q = field.order
        self.n_points = (q ** (dim + 1) - 1) // (q - 1)

    def __eq__(self, other):
        return (isinstance(other, ProjSpace)
                and self.dim == other.dim and self.field == other.field)

    def __hash__(self):
        return hash((self.dim, self.field))

    def __repr__(self):
        return f"PG({self.dim}, {self.field.order})"

    def subspace(self, rows) -> Subspace:
        return Subspace(self, *rref(self.field, rows))

    def empty(self) -> Subspace:
        return Subspace(self, (), ())

    def whole(self) -> Subspace:
        eye = tuple(tuple(1 if j == i else 0 for j in range(self.dim + 1))
                    for i in range(self.dim + 1))
        return Subspace(self, eye, tuple(range(self.dim + 1)))

    def point(self, coords) -> Point:
        return Point(self, normalize_point(self.field, tuple(coords)))

    def points(self) -> list[Point]:
        if self.n_points > POINT_ENUM_CAP:
            raise ValueError(f"{self} has {self.n_points} points, over the enumeration cap")
        return [Point(self, v) for v in _normalized_vectors(self.field, self.dim + 1)]


def _normalized_vectors(field: FiniteField, length: int) -> list[Vec]:
    """All vectors with first nonzero coordinate 1, in lexicographic order."""
    out = []
    els = list(field.elements())
    for lead in range(length):
        head = (0,) * lead + (1,)
        for tail in product(els, repeat=length - lead - 1):
            out.append(head + tail)
    out.sort()
    return out


@dataclass(frozen=True)
class Point:
    ambient: ProjSpace
    coords: Vec

    def __repr__(self):
        return f"Pt{self.coords}"


class Subspace:
    """A projective subspace in canonical RREF form."""

    __slots__ = ("ambient", "rows", "pivots", "_hash")

    def __init__(self, ambient: ProjSpace, rows: tuple[Vec, ...], pivots: tuple[int, ...]):
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self._hash = hash((ambient.dim, ambient.field.order, rows))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        """Projective dimension; -1 for the empty subspace."""
        return len(self.rows) - 1

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Sub(dim={self.dim} in {self.ambient})"

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    def contains(self, other: Subspace) -> bool:
        if self.ambient != other.ambient:
            raise ValueError("ambient spaces differ")
        return all(not any(reduce_mod(self.ambient.field, r, self.rows, self.pivots))
                   for r in other.rows)

    def contains_point(self, p: Point | Vec) -> bool:
        v = p.coords if isinstance(p, Point) else p
        return not any(reduce_mod(self.ambient.field, v, self.rows, self.pivots))

    def coefficients_of(self, vec: Vec) -> Vec:
        """Coordinates of an ambient vector of this subspace w.r.t. its basis."""
        c = tuple(vec[p] for p in self.pivots)
        if vec_mat(self.ambient.field, c, self.rows) != tuple(vec):
            raise ValueError("vector is not in the subspace")
        return c

    def n_points(self) -> int:
        q = self.ambient.field.order
        return (q ** self.rank - 1) // (q - 1)

    def points(self) -> list[Point]:
        """All points, sorted lexicographically by normalized coordinates."""
        if self.rank == 0:
            return []
        if self.n_points() > POINT_ENUM_CAP:
            raise ValueError("subspace is over the point-enumeration cap")
        field = self.ambient.field
        vecs = [vec_mat(field, c, self.rows)
                for c in _normalized_vectors(field, self.rank)]
        vecs.sort()
        return [Point(self.ambient, v) for v in vecs]

    def point_vectors(self) -> list[Vec]:
        """Normalized coordinate vectors of all points (unsorted, fast path)."""
        field = self.ambient.field
        return [vec_mat(field, c, self.rows)
                for c in _normalized_vectors(field, self.rank)]


def span(parts) -> Subspace:
    """Smallest subspace containing all given subspaces and points."""
    parts = list(parts)
    if not parts:
        raise ValueError("span of nothing")
    ambient = parts[0].ambient
    rows = []
    for part in parts:
        if part.ambient != ambient:
            raise ValueError("ambient spaces differ")
        if isinstance(part, Point):
            rows.append(part.coords)
        else:
            rows.extend(part.rows)
    return ambient.subspace(rows)


def dual(a: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    if a.rank == 0:
        return a.ambient.whole()
    ker = kernel(a.ambient.field, a.rows, a.ambient.dim + 1)
    return Subspace(a.ambient, ker, _pivots_of(ker))


def _pivots_of(rows: tuple[Vec, ...]) -> tuple[int, ...]:
    pivots = []
    for row in rows:
        pivots.append(next(j for j, x in enumerate(row) if x))
    return tuple(pivots)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, via duality: (a ^ b) = dual(span(dual a, dual b))."""
    if a.ambient != b.ambient:
        raise ValueError("ambient spaces differ")
    return dual(span([dual(a), dual(b)]))


class QuotientMap:
    """Projection from a nonempty proper subspace onto PG(d - r, q).

    The canonical chart reads the non-pivot coordinates after reduction by
    the center's basis, so images are canonical without choosing a
    complementary subspace.
    """

    def __init__(self, center: Subspace):
        if center.rank == 0 or center.rank == center.ambient.dim + 1:
            raise ValueError("quotient center must be nonempty and proper")
        self.center = center
        self.ambient = center.ambient
        self.space = ProjSpace(center.ambient.dim - center.rank, center.ambient.field)
        self._nonpivot = tuple(j for j in range(center.ambient.dim + 1)
                               if j not in center.pivots)

    def image_vec(self, v: Vec) -> Vec:
        red = reduce_mod(self.ambient.field, v, self.center.rows, self.center.pivots)
        return tuple(red[j] for j in self._nonpivot)

    def image(self, s: Subspace) -> Subspace:
        if s.ambient != self.ambient:
            raise ValueError("ambient spaces differ")
        return self.space.subspace([self.image_vec(r) for r in s.rows])

    def image_point(self, p: Point) -> Point:
        v = self.image_vec(p.coords)
        if not any(v):
            raise ValueError("point lies in the center")
        return self.space.point(v)

    def lift_vec(self, u: Vec) -> Vec:
        v = [0] * (self.ambient.dim + 1)
        for x, j in zip(u, self._nonpivot):
            v[j] = x
        return tuple(v)

    def preimage(self, s: Subspace) -> Subspace:
        """Full preimage: span of the center and lifted basis rows."""
        rows = list(self.center.rows) + [self.lift_vec(r) for r in s.rows]
        return self.ambient.subspace(rows)


class Chart:
    """Internal coordinates on a subspace W: PG(rank-1, q) read off W's basis.

    Coefficient extraction is a pivot-column read because W is in RREF.
    """

    def __init__(self, carrier: Subspace):
        if carrier.rank < 2:
            raise ValueError("chart needs a carrier of projective dimension >= 1")
        self.carrier = carrier
        self.ambient = carrier.ambient
        self.space = ProjSpace(carrier.rank - 1, carrier.ambient.field)

    def to_internal_vec(self, v: Vec) -> Vec:
        return self.carrier.coefficients_of(v)

    def to_ambient_vec(self, u: Vec) -> Vec:
        return vec_mat(self.ambient.field, u, self.carrier.rows)

    def to_internal(self, s: Subspace) -> Subspace:
        return self.space.subspace([self.to_internal_vec(r) for r in s.rows])

    def to_ambient(self, s: Subspace) -> Subspace:
        return self.ambient.subspace([self.to_ambient_vec(r) for r in s.rows])


def lex_least_complement(center: Subspace) -> Subspace:
    """Greedy lexicographically-least subspace complementary to center."""
    ambient = center.ambient
    field = ambient.field
    need = ambient.dim + 1 - center.rank
    rows: list[Vec] = []
    current = list(center.rows)
    cur_rank = center.rank
    for v in _normalized_vectors(field, ambient.dim + 1):
        cand, _ = rref(field, current + [v])
        if len(cand) > cur_rank:
            rows.append(v)
            current.append(v)
            cur_rank += 1
            if len(rows) == need:
                break
    return ambient.subspace(rows)


class ComplementProjection:
    """Projection from a center realized by an explicit complement section.

    image(S) = chart(span(center, S) ^ W) for the complement W; used to
    cross-check that quotient-derived structure does not depend on the
    choice of complement.
    """

    def __init__(self, center: Subspace, complement: Subspace | None = None):
        self.center = center
        self.complement = complement if complement is not None else lex_least_complement(center)
        if meet(self.center, self.complement).rank != 0:
            raise ValueError("complement meets the center")
        if span([self.center, self.complement]).rank != center.ambient.dim + 1:
            raise ValueError("complement does not complete the center")
        self.chart = Chart(self.complement)
        self.space = self.chart.space

    def image(self, s: Subspace) -> Subspace:
        sec = meet(span([self.center, s]), self.complement)
        return self.chart.to_internal(sec)
