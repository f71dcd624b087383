"""Spreads, reguli and the derived-spread family of a pseudo-arc.

A spread here is any partition of a projective space into (n-1)-subspaces:
the derived spreads live in PG(2n-1, q) (or in a carrier (2n-1)-subspace of
PG(3n-1, q), stored with internal coordinates plus the carrier), and the
generated spreads of PG(3n-1, q) use the same type.

The regulus through three pairwise-skew (n-1)-spaces is computed from the
graph parametrization: with the span decomposed as A + C and B the graph of
an invertible f: A -> C, the regulus is {A, C} plus the graphs of the
nonzero scalar multiples of f.  Regularity of a spread means closure under
reguli; at q = 2 a regulus is its three generators, so closure is vacuous
and reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .projective import (Chart, ComplementProjection, ProjSpace, QuotientMap,
                         Subspace, _normalized_vectors, mat_inv, mat_mul, meet,
                         rref, span, vec_mat)
from .pseudoarcs import PseudoArc, extend_to_hyperoval, tangent_spaces


@dataclass(frozen=True)
class Spread:
    """A partition of `space` into equal-dimensional subspaces.

    `carrier` records the ambient subspace this spread's space is a chart
    of, when it arose inside one (the beta_i of a dual arc).
    """

    space: ProjSpace
    elements: tuple[Subspace, ...]
    carrier: Subspace | None = None
    origin: str = ""

    def __len__(self):
        return len(self.elements)

    def element_set(self) -> frozenset[Subspace]:
        return frozenset(self.elements)

    def chart(self) -> Chart:
        if self.carrier is None:
            raise ValueError("spread has no carrier subspace")
        return Chart(self.carrier)

    def ambient_elements(self) -> list[Subspace]:
        if self.carrier is None:
            return list(self.elements)
        chart = self.chart()
        return [chart.to_ambient(e) for e in self.elements]


@dataclass(frozen=True)
class Regulus:
    space: ProjSpace
    generators: tuple[Subspace, Subspace, Subspace]
    elements: tuple[Subspace, ...]
    carrier: Subspace | None = None

    def __len__(self):
        return len(self.elements)

    def element_set(self) -> frozenset[Subspace]:
        return frozenset(self.elements)


@dataclass(frozen=True)
class SpreadReport:
    ok: bool
    count: int
    expected: int
    witness: dict | None
    reason: str


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    vacuous: bool
    mode: str
    checked_triples: int
    witness: dict | None

    @property
    def reason(self) -> str:
        if self.regular:
            return "regular (vacuous: q=2)" if self.vacuous else "regular"
        w = self.witness
        return f"triple {w['triple']} generates a regulus element outside the spread"


def verify_spread(spread: Spread) -> SpreadReport:
    """Count, pairwise skewness and exact point cover, with witnesses."""
    elems = spread.elements
    space = spread.space
    q = space.field.order
    ranks = {e.rank for e in elems}
    if len(ranks) != 1:
        return SpreadReport(False, len(elems), -1, {"kind": "mixed-dimensions"},
                            "elements have mixed dimensions")
    r = ranks.pop()
    if (space.dim + 1) % r:
        return SpreadReport(False, len(elems), -1, {"kind": "dimension-mismatch"},
                            f"rank-{r} elements cannot partition {space}")
    expected = (q ** (space.dim + 1) - 1) // (q**r - 1)
    if len(set(elems)) != len(elems):
        return SpreadReport(False, len(elems), expected, {"kind": "duplicate-element"},
                            "duplicate elements")
    if len(elems) != expected:
        return SpreadReport(False, len(elems), expected, {"kind": "wrong-count"},
                            f"{len(elems)} elements, expected {expected}")
    # disjointness and cover in one pass: a repeated point vector names a
    # meeting pair, and with the count right, disjoint + exact cover is a
    # partition, which implies pairwise skewness
    covered: dict[tuple, int] = {}
    for idx, e in enumerate(elems):
        for v in e.point_vectors():
            other = covered.setdefault(v, idx)
            if other != idx:
                return SpreadReport(False, len(elems), expected,
                                    {"kind": "not-skew", "pair": [other, idx],
                                     "point": list(v)},
                                    f"elements {other} and {idx} meet")
    if len(covered) != space.n_points:
        missing = space.n_points - len(covered)
        return SpreadReport(False, len(elems), expected,
                            {"kind": "uncovered-points", "missing": missing},
                            f"{missing} points uncovered")
    return SpreadReport(True, len(elems), expected, None, "ok")


def _graph_subspace(space: ProjSpace, a_rows, c_rows, fmap) -> Subspace:
    """Subspace {a + f(a)} from the matrix of f in the A/C bases."""
    fld = space.field
    rows = []
    for k, arow in enumerate(a_rows):
        crow = vec_mat(fld, fmap[k], c_rows)
        rows.append(tuple(fld.add(x, y) for x, y in zip(arow, crow)))
    return space.subspace(rows)


def _graph_map(fld, m_inv, rows, n):
    """Coefficient matrices (X, Y) of `rows` over the A+C decomposition."""
    x_rows, y_rows = [], []
    for row in rows:
        coeff = vec_mat(fld, row, m_inv)
        x_rows.append(coeff[:n])
        y_rows.append(coeff[n:])
    return x_rows, y_rows


def regulus_through(a: Subspace, b: Subspace, c: Subspace) -> Regulus:
    """The q+1 maximal spaces through three pairwise-skew (n-1)-spaces.

    The three must span a (2n-1)-space; if that is a proper subspace of the
    ambient, the regulus is computed in its chart and mapped back.
    """
    if not (a.ambient == b.ambient == c.ambient):
        raise ValueError("ambient spaces differ")
    n = a.rank
    if b.rank != n or c.rank != n:
        raise ValueError("generators have different dimensions")
    hull = span([a, b, c])
    if hull.rank != 2 * n:
        raise ValueError(f"generators span rank {hull.rank}, expected {2 * n}")
    chart = None
    if hull.rank != a.ambient.dim + 1:
        chart = Chart(hull)
        a, b, c = (chart.to_internal(s) for s in (a, b, c))
    space = a.ambient
    fld = space.field
    for x, y in ((a, b), (a, c), (b, c)):
        if len(rref(fld, x.rows + y.rows)[0]) != 2 * n:
            raise ValueError("generators are not pairwise skew")
    m_inv = mat_inv(fld, list(a.rows) + list(c.rows))
    x_rows, y_rows = _graph_map(fld, m_inv, b.rows, n)
    fmap = mat_mul(fld, mat_inv(fld, x_rows), y_rows)
    elements = [a, c]
    for lam in range(1, fld.order):
        scaled = [tuple(fld.mul(lam, x) for x in row) for row in fmap]
        elements.append(_graph_subspace(space, a.rows, c.rows, scaled))
    if b not in elements:
        raise AssertionError("graph parametrization missed a generator")
    if chart is not None:
        out = tuple(sorted((chart.to_ambient(e) for e in elements),
                           key=lambda s: s.rows))
        gens = tuple(chart.to_ambient(s) for s in (a, b, c))
        return Regulus(chart.ambient, gens, out, carrier=hull)
    return Regulus(space, (a, b, c), tuple(sorted(elements, key=lambda s: s.rows)))


def transversal_lines(a: Subspace, b: Subspace, c: Subspace) -> list[Subspace]:
    """All (q^n-1)/(q-1) lines meeting every element of the regulus (a,b,c)."""
    hull = span([a, b, c])
    chart = None
    if hull.rank != a.ambient.dim + 1:
        chart = Chart(hull)
        a, b, c = (chart.to_internal(s) for s in (a, b, c))
    space = a.ambient
    fld = space.field
    n = a.rank
    m_inv = mat_inv(fld, list(a.rows) + list(c.rows))
    x_rows, y_rows = _graph_map(fld, m_inv, b.rows, n)
    fmap = mat_mul(fld, mat_inv(fld, x_rows), y_rows)
    lines = []
    for x in _normalized_vectors(fld, n):
        p = vec_mat(fld, x, a.rows)
        w = vec_mat(fld, vec_mat(fld, x, fmap), c.rows)
        line = space.subspace([p, w])
        lines.append(chart.to_ambient(line) if chart is not None else line)
    return lines


def opposite_regulus(reg: Regulus) -> Regulus:
    """For line reguli of a 3-space (n=2): the q+1 transversal lines."""
    n = reg.generators[0].rank
    if n != 2:
        raise ValueError("the opposite regulus exists for line reguli (n=2) only")
    lines = transversal_lines(*reg.generators)
    elements = tuple(sorted(lines, key=lambda s: s.rows))
    return Regulus(reg.space, tuple(elements[:3]), elements, reg.carrier)


def is_regular_spread(spread: Spread, mode: str = "auto",
                      full_sweep_cap: int = 10**5) -> RegularityReport:
    """Regulus-closure test.

    mode 'full' sweeps every triple, 'fixed' only triples containing the
    first element, 'auto' picks 'full' when the triple count is below the
    cap.  Triples spanning more than a (2n-1)-space carry no regulus and are
    skipped (they occur only for spreads of PG(3n-1, q)).
    """
    elems = spread.elements
    k = len(elems)
    q = spread.space.field.order
    if q == 2:
        return RegularityReport(True, True, "vacuous", 0, None)
    n_triples = k * (k - 1) * (k - 2) // 6
    if mode == "auto":
        mode = "full" if n_triples <= full_sweep_cap else "fixed"
    if mode == "full":
        triples = combinations(range(k), 3)
    elif mode == "fixed":
        triples = ((0, i, j) for i, j in combinations(range(1, k), 2))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    present = frozenset(elems)
    full_rank = 2 * elems[0].rank
    needs_filter = spread.space.dim + 1 > full_rank
    fld = spread.space.field
    checked = 0
    for t in triples:
        a, b, c = (elems[i] for i in t)
        if needs_filter and len(rref(fld, a.rows + b.rows + c.rows)[0]) != full_rank:
            continue
        checked += 1
        reg = regulus_through(a, b, c)
        for e in reg.elements:
            if e not in present:
                witness = {"kind": "regulus-closure", "triple": list(t),
                           "missing_element": [list(r) for r in e.rows]}
                return RegularityReport(False, False, mode, checked, witness)
    return RegularityReport(True, False, mode, checked, None)


# -- derived spreads of a pseudo-arc -----------------------------------------


def derive_spread_from_element(arc: PseudoArc, i: int,
                               explicit_complement: bool = False) -> Spread:
    """The spread of images of the other elements in the quotient by element i.

    For a pseudo-oval the tangent space's image fills the gap at index i, so
    indices stay aligned with the arc's.
    """
    if not 0 <= i < len(arc.elements):
        raise ValueError(f"element index {i} out of range")
    if arc.kind not in ("pseudo-oval", "pseudo-hyperoval"):
        raise ValueError(f"derived spreads need a pseudo-oval or pseudo-hyperoval, "
                         f"got {arc.kind}")
    center = arc.elements[i]
    proj = ComplementProjection(center) if explicit_complement else QuotientMap(center)
    elements = []
    for j, e in enumerate(arc.elements):
        if j == i:
            if arc.kind == "pseudo-oval":
                elements.append(proj.image(tangent_spaces(arc)[i]))
            continue
        elements.append(proj.image(e))
    spread = Spread(proj.space, tuple(elements), origin=f"delta[{i}]")
    report = verify_spread(spread)
    if not report.ok:
        raise AssertionError(f"derived spread {i} failed verification: {report.reason}")
    return spread


def derive_spread_from_nucleus(arc: PseudoArc,
                               explicit_complement: bool = False) -> Spread:
    """The spread of arc-element images in the quotient by the nucleus (q even)."""
    from .pseudoarcs import nucleus as arc_nucleus
    if arc.kind != "pseudo-oval":
        raise ValueError("the nucleus-derived spread is defined for pseudo-ovals")
    center = arc_nucleus(arc)
    proj = ComplementProjection(center) if explicit_complement else QuotientMap(center)
    elements = tuple(proj.image(e) for e in arc.elements)
    spread = Spread(proj.space, elements, origin="delta[nucleus]")
    report = verify_spread(spread)
    if not report.ok:
        raise AssertionError(f"nucleus-derived spread failed verification: {report.reason}")
    return spread


def derive_tangent_spread_odd(arc: PseudoArc, i: int) -> Spread:
    """For q odd: the spread {tau_i ^ tau_j, j != i} + {pi_i} of tau_i."""
    if arc.q % 2 == 0:
        raise ValueError("the tangent-space spread exists for q odd only")
    taus = tangent_spaces(arc)
    chart = Chart(taus[i])
    elements = []
    for j in range(len(arc.elements)):
        if j == i:
            elements.append(chart.to_internal(arc.elements[i]))
        else:
            delta = meet(taus[i], taus[j])
            if delta.rank != arc.n:
                raise AssertionError(f"tau_{i} ^ tau_{j} has rank {delta.rank}")
            elements.append(chart.to_internal(delta))
    spread = Spread(chart.space, tuple(elements), carrier=taus[i],
                    origin=f"delta-star[{i}]")
    report = verify_spread(spread)
    if not report.ok:
        raise AssertionError(f"tangent spread failed verification: {report.reason}")
    return spread


@dataclass(frozen=True)
class DualArc:
    """The dual (2n-1)-spaces beta_i of a pseudo-hyperoval with their spreads
    Gamma_i = {beta_i ^ beta_j} read in beta_i-internal coordinates."""

    arc: PseudoArc  # the (extended, for ovals) arc that was dualized
    betas: tuple[Subspace, ...]
    gammas: tuple[Spread, ...]

    def alpha(self, i: int, j: int) -> Subspace:
        """beta_i ^ beta_j in ambient coordinates."""
        return meet(self.betas[i], self.betas[j])

    def alpha_internal(self, i: int, j: int) -> Subspace:
        """beta_i ^ beta_j in beta_i's chart: element j (index-aligned) of Gamma_i."""
        k = j if j < i else j - 1
        return self.gammas[i].elements[k]


def dual_arc(arc: PseudoArc) -> DualArc:
    """Dualize; pseudo-ovals are first completed by their nucleus (q even)."""
    from .projective import dual as dual_sub
    if arc.kind == "pseudo-oval":
        if arc.q % 2:
            raise ValueError("q odd: the dual-arc spreads need the nucleus completion")
        arc = extend_to_hyperoval(arc)
    elif arc.kind != "pseudo-hyperoval":
        raise ValueError(f"cannot dualize a {arc.kind}")
    betas = tuple(dual_sub(e) for e in arc.elements)
    gammas = []
    k = len(betas)
    alphas = [[None] * k for _ in range(k)]
    for i, j in combinations(range(k), 2):
        alphas[i][j] = alphas[j][i] = meet(betas[i], betas[j])
    for i in range(k):
        chart = Chart(betas[i])
        elements = tuple(chart.to_internal(alphas[i][j]) for j in range(k) if j != i)
        spread = Spread(chart.space, elements, carrier=betas[i], origin=f"gamma[{i}]")
        report = verify_spread(spread)
        if not report.ok:
            raise AssertionError(f"Gamma_{i} failed spread verification: {report.reason}")
        gammas.append(spread)
    return DualArc(arc, betas, tuple(gammas))


def count_reguli_through_pair(spread: Spread, ai: int, bi: int):
    """Distinct reguli through two fixed spread elements, with containment.

    Returns (count, reguli, contained); for a regular spread the count is
    (q^n - 1)/(q - 1), every regulus is contained in the spread, and the
    reguli partition the remaining q^n - 1 elements into cells of size
    q - 1.  Consequently a third fixed element lies in exactly one of them,
    so the sub-count avoiding it is one less; demanding that all q^n - 2
    remaining elements fit into such avoiding reguli would need
    (q^n - 2)/(q - 1) of them, which is not an integer for q > 2.
    """
    elems = spread.elements
    if ai == bi or not (0 <= ai < len(elems) and 0 <= bi < len(elems)):
        raise ValueError("need two distinct element indices")
    a, b = elems[ai], elems[bi]
    present = spread.element_set()
    seen: dict[frozenset, Regulus] = {}
    for x in elems:
        if x is a or x is b:
            continue
        reg = regulus_through(a, b, x)
        key = reg.element_set()
        if key not in seen:
            seen[key] = reg
    reguli = list(seen.values())
    contained = [reg.element_set() <= present for reg in reguli]
    return len(reguli), reguli, contained
