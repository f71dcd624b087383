"""Generalized arcs of PG(3n-1, q): pseudo-ovals and pseudo-hyperovals.

A generalized k-arc is a set of k (n-1)-subspaces every three of which span
the ambient space.  Tangent spaces are computed by partition completion in
the quotient by an element: the other elements' images are pairwise skew
(n-1)-spaces whose uncovered points must form exactly one (n-1)-space, and
the tangent space is its preimage.  That route proves uniqueness while it
computes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .projective import ProjSpace, QuotientMap, Subspace, meet, rref


@dataclass(frozen=True)
class PseudoArcReport:
    ok: bool
    k: int
    n: int
    max_k: int
    witness_triple: tuple[int, int, int] | None
    reason: str


@dataclass(frozen=True)
class PseudoArc:
    ambient: ProjSpace
    n: int
    elements: tuple[Subspace, ...]
    kind: str  # generalized-arc | pseudo-oval | pseudo-hyperoval
    witness: dict | None = None
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.ambient.field.order

    def __len__(self) -> int:
        return len(self.elements)


def verify_pseudo_arc(ambient: ProjSpace, elements) -> PseudoArcReport:
    """Triple-spanning sweep plus the size bound q^n+1 / q^n+2."""
    elems = list(elements)
    if len(elems) < 3:
        raise ValueError("a generalized arc needs at least 3 elements")
    ranks = {e.rank for e in elems}
    if len(ranks) != 1:
        raise ValueError(f"mixed element dimensions {sorted(r - 1 for r in ranks)}")
    n = ranks.pop()
    if ambient.dim != 3 * n - 1:
        raise ValueError(f"(n-1)-elements with n={n} need ambient PG({3 * n - 1}, q)")
    q = ambient.field.order
    max_k = q**n + 2 if q % 2 == 0 else q**n + 1
    full = ambient.dim + 1
    fld = ambient.field
    if len(elems) > max_k:
        return PseudoArcReport(False, len(elems), n, max_k, None,
                               f"{len(elems)} elements exceed the bound {max_k}")
    for i, j, k in combinations(range(len(elems)), 3):
        rows = elems[i].rows + elems[j].rows + elems[k].rows
        if len(rref(fld, rows)[0]) != full:
            return PseudoArcReport(False, len(elems), n, max_k, (i, j, k),
                                   f"elements {i},{j},{k} do not span the space")
    return PseudoArcReport(True, len(elems), n, max_k, None, "ok")


def classify_kind(ambient: ProjSpace, n: int, k: int) -> str:
    q = ambient.field.order
    if k == q**n + 1:
        return "pseudo-oval"
    if k == q**n + 2 and q % 2 == 0:
        return "pseudo-hyperoval"
    return "generalized-arc"


def make_pseudo_arc(ambient: ProjSpace, elements, witness: dict | None = None) -> PseudoArc:
    report = verify_pseudo_arc(ambient, elements)
    if not report.ok:
        raise ValueError(report.reason)
    kind = classify_kind(ambient, report.n, report.k)
    return PseudoArc(ambient, report.n, tuple(elements), kind, witness)


def tangent_space(arc: PseudoArc, i: int) -> Subspace:
    """The unique (2n-1)-space through element i meeting no other element."""
    if "tangents" in arc._cache:
        return arc._cache["tangents"][i]
    return _tangent(arc, i)


def _tangent(arc: PseudoArc, i: int) -> Subspace:
    if arc.kind != "pseudo-oval":
        raise ValueError(f"tangent spaces exist for pseudo-ovals, not {arc.kind}")
    qm = QuotientMap(arc.elements[i])
    images = [qm.image(e) for j, e in enumerate(arc.elements) if j != i]
    covered = set()
    for img in images:
        if img.rank != arc.n:
            raise ValueError(f"element {i} meets another element: not a pseudo-oval")
        covered.update(img.point_vectors())
    q = arc.q
    expected = (q**arc.n - 1) // (q - 1)
    uncovered = [p.coords for p in qm.space.points() if p.coords not in covered]
    if len(uncovered) != expected:
        raise ValueError(f"quotient by element {i} leaves {len(uncovered)} uncovered "
                         f"points, expected {expected}: not a pseudo-oval")
    gap = qm.space.subspace(uncovered)
    if gap.rank != arc.n or gap.n_points() != expected:
        raise ValueError(f"uncovered points in the quotient by element {i} "
                         "do not form an (n-1)-space: not a pseudo-oval")
    tau = qm.preimage(gap)
    for j, e in enumerate(arc.elements):
        if j != i and meet(tau, e).rank != 0:
            raise AssertionError(f"tangent space at {i} meets element {j}")
    return tau


def tangent_spaces(arc: PseudoArc) -> list[Subspace]:
    """All tangent spaces, index-aligned with the elements; cached.

    The per-element computations are independent and run through the
    PAL_THREADS-capped map.
    """
    if "tangents" not in arc._cache:
        from .parallel import pmap
        arc._cache["tangents"] = pmap(lambda i: _tangent(arc, i),
                                      range(len(arc.elements)))
    return arc._cache["tangents"]


def nucleus(arc: PseudoArc) -> Subspace:
    """Common (n-1)-space of all tangent spaces; q even only."""
    if arc.q % 2:
        raise ValueError(f"q={arc.q} is odd: tangent spaces form a dual pseudo-oval, "
                         "there is no nucleus")
    taus = tangent_spaces(arc)
    common = taus[0]
    for t in taus[1:]:
        common = meet(common, t)
        if common.rank < arc.n:
            raise AssertionError("tangent spaces have no common (n-1)-space")
    if common.rank != arc.n:
        raise AssertionError(f"nucleus has rank {common.rank}, expected {arc.n}")
    return common


def extend_to_hyperoval(arc: PseudoArc) -> PseudoArc:
    """Append the nucleus as element q^n + 1; re-verifies as a pseudo-hyperoval."""
    if arc.kind != "pseudo-oval":
        raise ValueError(f"only pseudo-ovals extend; got {arc.kind} with {len(arc)} elements")
    nuc = nucleus(arc)
    extended = make_pseudo_arc(arc.ambient, list(arc.elements) + [nuc], arc.witness)
    if extended.kind != "pseudo-hyperoval":
        raise AssertionError("extension did not verify as a pseudo-hyperoval")
    return extended
