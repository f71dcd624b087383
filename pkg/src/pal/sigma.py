"""Transversal lines of regular spreads, the generated spread Sigma, its
plane model, and the recognition of regular pseudo-arcs.

A regular (n-1)-spread of PG(2n-1, q) carries a field structure: writing
every element as the graph of a map A -> C and normalizing by one of them
turns the element set into a field of matrices isomorphic to GF(q^n).  Its
simultaneous eigenvectors over GF(q^n) give the n conjugate transversal
lines U_l that every extended spread element meets in one point.  Together
with the transversals T_l of a regulus through the contact points u_l they
span the planes theta_l, and the rational (n-1)-spaces meeting the planes
are the generated spread, whose elements are the points of a plane of order
q^n.  Recognition runs exactly that construction on the dual of an arc and
asks whether every dual element is a line of the model plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .fields import FieldTower, field_make
from .planearcs import PlaneArc, make_arc
from .projective import (Chart, ProjSpace, Subspace, Vec, _normalized_vectors,
                         dual as dual_subspace, kernel, lin_solve, mat_inv,
                         mat_mul, meet, normalize_point, span, vec_mat)
from .pseudoarcs import PseudoArc
from .reduction import (ReductionMap, extend_subspace, frobenius_subspace,
                        rational_orbit_span, rationalize_subspace)
from .spreads import (Regulus, Spread, dual_arc, is_regular_spread,
                      regulus_through, verify_spread)


class NotRegularError(ValueError):
    """A spread failed a regularity requirement; carries a witness."""

    def __init__(self, reason: str, witness: dict | None = None):
        super().__init__(reason)
        self.witness = witness or {}


@dataclass(frozen=True)
class SigmaScaffold:
    """The extension-field data behind a generated spread."""

    tower: FieldTower
    top_space: ProjSpace
    transversal_lines: tuple[Subspace, ...]            # U_l
    contact_points: tuple[Vec, ...] | None = None      # u_l
    regulus_transversals: tuple[Subspace, ...] | None = None  # T_l
    planes: tuple[Subspace, ...] | None = None         # theta_l
    plane_coords: dict | None = None                   # element -> theta_1 coords


def _matrix_field(spread: Spread, tower: FieldTower):
    """Spread-set matrices of a spread of PG(2n-1, q), checked to be a field.

    Returns (a, c, fmap, mats).  Raises NotRegularError when closure under
    addition/multiplication or commutativity fails; that is the regularity
    certificate that stays meaningful at q = 2 where regulus closure is
    vacuous.
    """
    elems = spread.elements
    space = spread.space
    fld = space.field
    n = elems[0].rank
    if space.dim + 1 != 2 * n:
        raise ValueError("spread-set structure needs a spread of PG(2n-1, q)")
    a, c = elems[0], elems[1]
    m_inv = mat_inv(fld, list(a.rows) + list(c.rows))
    mats = {}
    fmap = None
    for idx, e in enumerate(elems):
        if idx in (0, 1):
            continue
        x_rows, y_rows = [], []
        for row in e.rows:
            coeff = vec_mat(fld, row, m_inv)
            x_rows.append(coeff[:n])
            y_rows.append(coeff[n:])
        gmap = mat_mul(fld, mat_inv(fld, x_rows), y_rows)
        if fmap is None:
            fmap = gmap
            f_inv = mat_inv(fld, gmap)
        mats[idx] = tuple(mat_mul(fld, gmap, f_inv))
    zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    mat_set = set(mats.values()) | {zero}
    if len(mat_set) != len(mats) + 1:
        raise NotRegularError("spread set has repeated maps",
                              {"kind": "spread-set-degenerate"})
    items = list(mats.items())
    for (i1, m1), (i2, m2) in combinations(items, 2):
        s = tuple(tuple(fld.add(x, y) for x, y in zip(r1, r2))
                  for r1, r2 in zip(m1, m2))
        if s not in mat_set:
            raise NotRegularError(
                f"spread set not closed under addition at elements {i1},{i2}",
                {"kind": "spread-set-addition", "pair": [i1, i2]})
        p12 = tuple(mat_mul(fld, m1, m2))
        if p12 not in mat_set:
            raise NotRegularError(
                f"spread set not closed under multiplication at {i1},{i2}",
                {"kind": "spread-set-multiplication", "pair": [i1, i2]})
        if p12 != tuple(mat_mul(fld, m2, m1)):
            raise NotRegularError(
                f"spread set not commutative at {i1},{i2}",
                {"kind": "spread-set-commutativity", "pair": [i1, i2]})
    return a, c, fmap, mats


def _minpoly(fld, mat) -> list[int]:
    """Monic minimal polynomial of a square matrix, low-degree coefficients first."""
    n = len(mat)
    powers = []
    cur = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    while True:
        flat = tuple(x for row in cur for x in row)
        sol = lin_solve(fld, [tuple(x for row in p for x in row) for p in powers], flat) \
            if powers else (None if any(flat) else ())
        if sol is not None:
            return [fld.neg(s) for s in sol] + [1]
        powers.append(cur)
        cur = tuple(mat_mul(fld, mat, cur))


def spread_transversals(spread: Spread, tower: FieldTower) -> SigmaScaffold:
    """The n conjugate lines over GF(q^n) meeting every extended element.

    Requires a verified regular spread (n >= 2); fails with a certificate
    otherwise: the regulus-closure witness when that test is non-vacuous,
    or the spread-set closure witness at q = 2.
    """
    if tower.n < 2:
        raise ValueError("transversal lines need n >= 2")
    n = spread.elements[0].rank
    if n != tower.n or spread.space.field != tower.base:
        raise ValueError("tower does not match the spread")
    closure = is_regular_spread(spread)
    if not closure.regular:
        raise NotRegularError("spread is not regular: " + closure.reason,
                              closure.witness)
    u_lines, _ = _eigen_lines(spread, tower)
    top_space = u_lines[0].ambient
    for e in spread.elements:
        ext = extend_subspace(e, tower, top_space)
        for u in u_lines:
            if meet(ext, u).rank != 1:
                raise AssertionError("extended element misses a transversal line")
    return SigmaScaffold(tower, top_space, tuple(u_lines))


def _eigen_lines(spread: Spread, tower: FieldTower):
    """The transversal lines U_l of a regular spread, via eigenvectors of its
    matrix field, ordered as one Frobenius orbit."""
    fld = spread.space.field
    top = tower.top
    n = tower.n
    a, c, fmap, mats = _matrix_field(spread, tower)
    gen = None
    for idx in sorted(mats):
        mp = _minpoly(fld, mats[idx])
        if len(mp) == n + 1:
            gen = mats[idx]
            break
    if gen is None:
        raise NotRegularError("no spread-set matrix generates GF(q^n)",
                              {"kind": "spread-set-no-generator"})
    coeffs = [tower.embed(x) for x in mp]
    roots = sorted(r for r in top.elements()
                   if _eval_poly(top, coeffs, r) == 0)
    if len(roots) != n:
        raise AssertionError(f"minimal polynomial has {len(roots)} roots in GF(q^n)")
    orbit = [roots[0]]
    while len(orbit) < n:
        orbit.append(tower.frobenius(orbit[-1]))
    if sorted(orbit) != roots:
        raise AssertionError("eigenvalues are not one Galois orbit")
    top_space = ProjSpace(spread.space.dim, top)

    def embed_mat(m):
        return [tuple(tower.embed(x) for x in row) for row in m]

    a_ext = embed_mat(a.rows)
    c_ext = embed_mat(c.rows)
    gen_ext = embed_mat(gen)
    f_ext = embed_mat(fmap)
    mats_ext = [embed_mat(m) for m in mats.values()]
    u_lines = []
    eigvecs = []
    for mu in orbit:
        # right kernel of transpose(gen) - mu*I is the row eigenspace
        rows_t = []
        for j in range(n):
            row = [gen_ext[i][j] for i in range(n)]
            row[j] = top.sub(row[j], mu)
            rows_t.append(tuple(row))
        ker = kernel(top, rows_t, n)
        if len(ker) != 1:
            raise AssertionError("eigenspace is not one-dimensional")
        avec = ker[0]
        for m_ext in mats_ext:
            img = vec_mat(top, avec, m_ext)
            if normalize_point(top, img) != normalize_point(top, avec):
                raise AssertionError("spread-set matrices are not simultaneously diagonal")
        pa = vec_mat(top, avec, a_ext)
        pc = vec_mat(top, vec_mat(top, avec, f_ext), c_ext)
        u_lines.append(top_space.subspace([pa, pc]))
        eigvecs.append(avec)
    for l in range(n):
        if frobenius_subspace(u_lines[l], tower) != u_lines[(l + 1) % n]:
            raise AssertionError("transversal lines are not one Galois orbit")
    return u_lines, (a, c, fmap, eigvecs)


def _eval_poly(fld, coeffs, x):
    v = 0
    for c in reversed(coeffs):
        v = fld.add(fld.mul(v, x), c)
    return v


def _extend_chart_rows(carrier: Subspace, tower: FieldTower):
    return [tuple(tower.embed(x) for x in row) for row in carrier.rows]


def _to_ambient_top(vec: Vec, chart_rows_ext, top) -> Vec:
    return vec_mat(top, vec, chart_rows_ext)


def _to_internal_top(vec: Vec, carrier: Subspace, chart_rows_ext, top) -> Vec:
    coeff = tuple(vec[p] for p in carrier.pivots)
    if vec_mat(top, coeff, chart_rows_ext) != tuple(vec):
        raise ValueError("vector is not in the extended carrier")
    return coeff


def build_sigma(gamma: Regulus, gamma_i: Spread, tower: FieldTower):
    """The regular (n-1)-spread of PG(3n-1, q) generated by a regulus gamma
    (living in a carrier beta_j) and a regular spread gamma_i (in beta_i).

    Returns (sigma, scaffold).  The construction follows the extension-field
    route: transversal lines U_l of gamma_i, contact points u_l on the
    common element, transversals T_l of gamma through them, planes
    theta_l = <T_l, U_l>, and the rational orbit spans of theta_1's points.
    """
    if gamma.carrier is None or gamma_i.carrier is None:
        raise ValueError("build_sigma needs carrier subspaces on both inputs")
    beta_j, beta_i = gamma.carrier, gamma_i.carrier
    ambient = beta_j.ambient
    if beta_i.ambient != ambient:
        raise ValueError("carriers live in different spaces")
    top = tower.top
    n = tower.n
    q = tower.q
    alpha = meet(beta_i, beta_j)
    chart_j = Chart(beta_j)
    chart_i = Chart(beta_i)
    alpha_j = chart_j.to_internal(alpha)
    alpha_i = chart_i.to_internal(alpha)
    if alpha_j not in gamma.element_set():
        raise ValueError("beta_i ^ beta_j is not an element of gamma")
    if alpha_i not in gamma_i.element_set():
        raise ValueError("beta_i ^ beta_j is not an element of gamma_i")
    closure = is_regular_spread(gamma_i)
    if not closure.regular:
        raise NotRegularError("gamma_i is not regular: " + closure.reason,
                              closure.witness)
    u_lines_int, _ = _eigen_lines(gamma_i, tower)

    top_ambient = ProjSpace(ambient.dim, top)
    rows_i_ext = _extend_chart_rows(beta_i, tower)
    rows_j_ext = _extend_chart_rows(beta_j, tower)
    u_lines = [top_ambient.subspace([_to_ambient_top(r, rows_i_ext, top)
                                     for r in u.rows]) for u in u_lines_int]
    alpha_ext = extend_subspace(alpha, tower, top_ambient)
    contact = []
    for u in u_lines:
        pt = meet(alpha_ext, u)
        if pt.rank != 1:
            raise AssertionError("contact point u_l is not a single point")
        contact.append(pt.rows[0])

    # transversals of gamma through the contact points, in beta_j over GF(q^n)
    others = [e for e in gamma.elements if e != alpha_j]
    a_g, c_g = others[0], others[1]
    fld = gamma.space.field
    m_inv = mat_inv(fld, list(a_g.rows) + list(c_g.rows))
    x_rows, y_rows = [], []
    b_g = others[2] if len(others) > 2 else alpha_j
    for row in b_g.rows:
        coeff = vec_mat(fld, row, m_inv)
        x_rows.append(coeff[:n])
        y_rows.append(coeff[n:])
    fmap = mat_mul(fld, mat_inv(fld, x_rows), y_rows)

    def embed_mat(m):
        return [tuple(tower.embed(x) for x in row) for row in m]

    a_ext, c_ext = embed_mat(a_g.rows), embed_mat(c_g.rows)
    minv_ext = embed_mat(m_inv)
    f_ext = embed_mat(fmap)
    transversals = []
    for u_amb in contact:
        u_int = _to_internal_top(u_amb, beta_j, rows_j_ext, top)
        coeff = vec_mat(top, u_int, minv_ext)
        x = coeff[:n]
        if not any(x):
            raise AssertionError("contact point lies on a chart generator")
        pa = vec_mat(top, x, a_ext)
        pc = vec_mat(top, vec_mat(top, x, f_ext), c_ext)
        t_int = ProjSpace(gamma.space.dim, top).subspace([pa, pc])
        if not t_int.contains_point(u_int):
            raise AssertionError("transversal misses its contact point")
        transversals.append(top_ambient.subspace(
            [_to_ambient_top(r, rows_j_ext, top) for r in t_int.rows]))

    planes = []
    for t_line, u_line in zip(transversals, u_lines):
        theta = span([t_line, u_line])
        if theta.rank != 3:
            raise AssertionError("theta plane has wrong dimension")
        planes.append(theta)
    for l in range(n):
        if frobenius_subspace(planes[l], tower) != planes[(l + 1) % n]:
            raise AssertionError("theta planes are not one Galois orbit")
    gamma_amb = [Chart(beta_j).to_ambient(e) for e in gamma.elements]
    gamma_i_amb = gamma_i.ambient_elements()
    for theta in planes:
        for e in gamma_amb + gamma_i_amb:
            if meet(theta, extend_subspace(e, tower, top_ambient)).rank != 1:
                raise AssertionError("theta plane misses a generating element")

    theta1 = planes[0]
    elements = []
    coords = {}
    for c in _normalized_vectors(top, 3):
        x = vec_mat(top, c, theta1.rows)
        el = rational_orbit_span(x, tower, ambient)
        elements.append(el)
        coords[el] = normalize_point(top, c)
    expected = q ** (2 * n) + q**n + 1
    if len(set(elements)) != expected:
        raise AssertionError("generated spread has repeated elements")
    sigma = Spread(ambient, tuple(elements), origin="sigma(gamma, Gamma_i)")
    report = verify_spread(sigma)
    if not report.ok:
        raise AssertionError("generated spread failed verification: " + report.reason)
    present = sigma.element_set()
    for e in gamma_amb + gamma_i_amb:
        if e not in present:
            raise AssertionError("generating element missing from sigma")
    scaffold = SigmaScaffold(tower, top_ambient, tuple(u_lines), tuple(contact),
                             tuple(transversals), tuple(planes), coords)
    return sigma, scaffold


@dataclass(frozen=True)
class PlaneModel:
    """Points = spread elements; lines = (2n-1)-spaces holding q^n+1 of them."""

    spread: Spread
    lines: tuple[Subspace, ...]
    members: tuple[frozenset[int], ...]
    points_per_line: int

    def line_of(self, i: int, j: int) -> int:
        for idx, mem in enumerate(self.members):
            if i in mem and j in mem:
                return idx
        raise KeyError((i, j))


def plane_model(sigma: Spread) -> PlaneModel:
    """Verify the PG(2, q^n) axioms on a generated spread and return the model."""
    elems = sigma.elements
    q = sigma.space.field.order
    n = elems[0].rank
    order = q**n
    expected_pts = order**2 + order + 1
    if len(elems) != expected_pts:
        raise ValueError(f"{len(elems)} elements cannot model a plane of order {order}")
    by_span: dict[Subspace, set[int]] = {}
    for i, j in combinations(range(len(elems)), 2):
        s = span([elems[i], elems[j]])
        if s.rank != 2 * n:
            raise ValueError("two spread elements span more than a (2n-1)-space; "
                             "sigma is not a regular spread")
        by_span.setdefault(s, set()).update((i, j))
    lines = sorted(by_span, key=lambda s: s.rows)
    members = [frozenset(by_span[s]) for s in lines]
    if len(lines) != expected_pts:
        raise ValueError(f"{len(lines)} model lines, expected {expected_pts}")
    if any(len(m) != order + 1 for m in members):
        raise ValueError("some model line does not carry q^n + 1 elements")
    for a, b in combinations(range(len(lines)), 2):
        if len(members[a] & members[b]) != 1:
            raise ValueError(f"model lines {a},{b} do not meet in exactly one point")
    return PlaneModel(sigma, tuple(lines), tuple(members), order + 1)


@dataclass(frozen=True)
class RecognitionResult:
    regular: bool
    plane_arc: PlaneArc | None
    identification: dict | None
    sigma: Spread | None
    scaffold: SigmaScaffold | None
    choice: dict
    line_counts: tuple[int, ...] | None

    @property
    def reason(self) -> str:
        if self.regular:
            return "recognized regular via quadruple " + str(self.choice)
        return "no quadruple makes every dual element a model line"


def _tower_for(arc: PseudoArc) -> FieldTower:
    h = arc.ambient.field.m
    return FieldTower(arc.ambient.field, field_make(h * arc.n))


def _regulus_choices(k: int, pairs_from: list[int], forced_extra, all_fills: bool):
    """Deterministic (j, i, generator-indices) choices in lexicographic order.

    `forced_extra(j, i)` lists indices whose intersection with beta_j must be
    a regulus generator (the nucleus dual for ovals, the non-given indices
    in restricted mode).  With all_fills, every completion of the forced
    generators is yielded for the first (j, i) pair (the exhaustive mode).
    """
    first_pair = True
    for j in pairs_from:
        for i in pairs_from:
            if i == j:
                continue
            forced = [i]
            for e in forced_extra(j, i):
                if e != j and e not in forced and len(forced) < 3:
                    forced.append(e)
            pool = [m for m in range(k) if m != j and m not in forced]
            need = 3 - len(forced)
            if need == 0:
                yield j, i, tuple(forced)
            elif all_fills:
                for extra in combinations(pool, need):
                    yield j, i, tuple(forced) + extra
                if first_pair:
                    return  # exhaustive mode sweeps the first pair only
            else:
                yield j, i, tuple(forced) + tuple(pool[:need])
            first_pair = False


def recognize_regular(arc: PseudoArc, given: list[int] | None = None,
                      exhaustive: bool = False):
    """Run the dual-spread recognition of a regular pseudo-arc.

    Dualizes the arc (completing a pseudo-oval by its nucleus), picks a
    regulus gamma_j in a dual spread through the common element (plus the
    nucleus dual for ovals, or the non-given intersections when `given`
    restricts the usable derived spreads), generates Sigma(gamma_j, Gamma_i)
    and asks whether every dual element carries q^n + 1 of its elements.
    On success the plane arc is recovered in the fixed reduction frame when
    the arc is canonically reducible, and in the theta-plane frame (with a
    frame witness) otherwise.  `exhaustive` re-runs every regulus completion
    for the first index pair and asserts the outcomes agree.
    """
    if arc.n < 2:
        raise ValueError("recognition needs n >= 2")
    if arc.kind not in ("pseudo-oval", "pseudo-hyperoval"):
        raise ValueError(f"cannot recognize a {arc.kind}")
    was_oval = arc.kind == "pseudo-oval"
    tower = _tower_for(arc)
    da = dual_arc(arc)
    ext = da.arc
    k = len(da.betas)
    order = arc.q**arc.n
    nucleus_index = k - 1 if was_oval else None
    if given is not None:
        pairs_from = sorted(m for m in given if m < k)
        excluded = [m for m in range(k) if m not in given]
    else:
        pairs_from = list(range(k - 1)) if was_oval else list(range(k))
        excluded = []
    if len(pairs_from) < 2:
        raise ValueError("need at least two usable indices")

    def forced_extra(j, i):
        extra = [] if nucleus_index is None or nucleus_index == j else [nucleus_index]
        return extra + [e for e in excluded if e != j]

    results = []
    for j, i, gen_idx in _regulus_choices(k, pairs_from, forced_extra, exhaustive):
        gens = [da.alpha_internal(j, m) for m in gen_idx]
        reg = regulus_through(*gens)
        if not reg.element_set() <= da.gammas[j].element_set():
            raise NotRegularError(
                f"Gamma_{j} is not closed under the regulus through "
                f"{gen_idx}; recognition requires regular dual spreads",
                {"kind": "regulus-closure", "spread": f"gamma[{j}]",
                 "triple": list(gen_idx)})
        reg = Regulus(reg.space, reg.generators, reg.elements, carrier=da.betas[j])
        sigma, scaffold = build_sigma(reg, da.gammas[i], tower)
        counts = tuple(sum(1 for e in sigma.elements if beta.contains(e))
                       for beta in da.betas)
        choice = {"j": j, "i": i, "generators": list(gen_idx)}
        if all(c == order + 1 for c in counts):
            result = _recover(arc, ext, da, sigma, scaffold, tower, choice,
                              counts, was_oval)
        else:
            result = RecognitionResult(False, None, None, sigma, scaffold,
                                       choice, counts)
        if not exhaustive:
            if result.regular:
                return result
            continue
        results.append(result)
    if exhaustive and results:
        if len({r.regular for r in results}) != 1:
            raise AssertionError("exhaustive recognition found disagreeing choices")
        arcs = {tuple(p.coords for p in r.plane_arc.points)
                for r in results if r.plane_arc is not None}
        if len(arcs) > 1:
            raise AssertionError("exhaustive recognition recovered different arcs")
        return results[0]
    return RecognitionResult(False, None, None, None, None, {}, None)


def _recover(arc, ext, da, sigma, scaffold, tower, choice, counts, was_oval):
    top = tower.top
    rmap = ReductionMap(tower)
    points = []
    canonical = True
    for el in ext.elements:
        p = rmap.invert_point(el)
        if p is None:
            canonical = False
            break
        points.append(p.coords)
    if canonical:
        ident = {"convention": rmap.convention, "frame": "canonical"}
    else:
        points = []
        theta1 = scaffold.planes[0]
        chart_rows = theta1.rows
        order = arc.q ** arc.n
        for idx, beta in enumerate(da.betas):
            inside = [scaffold.plane_coords[e] for e in sigma.elements
                      if beta.contains(e)]
            line = ProjSpace(2, top).subspace(inside[:2])
            if line.rank != 2 or not all(line.contains_point(c) for c in inside):
                raise AssertionError("model points of a dual element are not collinear")
            coeff = kernel(top, line.rows, 3)
            points.append(normalize_point(top, coeff[0]))
            # frame witness: the dual of the rational span of the conjugate
            # model lines is the original arc element
            amb_rows = [vec_mat(top, r, chart_rows) for r in line.rows]
            w = scaffold.top_space.subspace(amb_rows)
            conj = w
            rows = list(w.rows)
            for _ in range(tower.n - 1):
                conj = frobenius_subspace(conj, tower)
                rows.extend(conj.rows)
            w_all = scaffold.top_space.subspace(rows)
            rational = rationalize_subspace(w_all, tower, arc.ambient)
            if dual_subspace(rational) != ext.elements[idx]:
                raise AssertionError("theta-frame witness failed to reproduce "
                                     f"element {idx}")
        ident = {"convention": "theta-frame-v1",
                 "theta1_rows": [list(r) for r in theta1.rows],
                 "relation": "element_k = dual(rational span of the n conjugate "
                             "model lines of beta_k)"}
    if was_oval:
        points = points[:-1]
        ident["dropped_nucleus"] = True
    plane = make_arc(ProjSpace(2, top), points)
    return RecognitionResult(True, plane, ident, sigma, scaffold, choice, counts)
