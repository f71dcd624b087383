from __future__ import annotations

from itertools import combinations

import pytest

from pal import (ProjSpace, QuotientMap, conic, extend_to_hyperoval, gf,
                 make_pseudo_arc, meet, nucleus, oval_nucleus_and_complete,
                 prime_field, reduction_map, span, tangent_lines, tangent_space,
                 tangent_spaces, verify_pseudo_arc)


def test_conic_reduction_verifies(conic_oval):
    rep = verify_pseudo_arc(conic_oval.ambient, conic_oval.elements)
    assert rep.ok and rep.k == 17 and rep.n == 2 and rep.max_k == 18
    assert conic_oval.kind == "pseudo-oval"


def test_triples_span(conic_hyperoval):
    full = conic_hyperoval.ambient.dim + 1
    for t in combinations(conic_hyperoval.elements[:6], 3):
        assert span(list(t)).rank == full


def test_corrupted_arc_fails_with_witness(conic_oval):
    space = conic_oval.ambient
    elements = list(conic_oval.elements)
    # replace the last element by one meeting element 0
    meetr = space.subspace([elements[0].rows[0], (0, 0, 0, 0, 1, 2)])
    rep = verify_pseudo_arc(space, elements[:-1] + [meetr])
    assert not rep.ok
    assert rep.witness_triple is not None
    assert 16 in rep.witness_triple


def test_size_bound(conic_hyperoval):
    space = conic_hyperoval.ambient
    extra = space.subspace([(1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 1, 0)])
    rep = verify_pseudo_arc(space, list(conic_hyperoval.elements) + [extra])
    assert not rep.ok and "bound" in rep.reason and rep.max_k == 18


def test_mixed_dimension_error(conic_oval):
    space = conic_oval.ambient
    plane = space.subspace([(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0),
                            (0, 0, 1, 0, 0, 0)])
    with pytest.raises(ValueError, match="mixed"):
        verify_pseudo_arc(space, list(conic_oval.elements[:3]) + [plane])


def test_tangent_spaces(conic_oval):
    taus = tangent_spaces(conic_oval)
    assert len(taus) == 17
    for i, tau in enumerate(taus):
        assert tau.dim == 3
        assert tau.contains(conic_oval.elements[i])
        for j, e in enumerate(conic_oval.elements):
            if j != i:
                assert meet(tau, e).rank == 0


def test_uncovered_quotient_count(conic_oval):
    # 85 points of PG(3,4); 16 other-element images cover 80; 5 uncovered
    qm = QuotientMap(conic_oval.elements[0])
    covered = set()
    for j in range(1, 17):
        covered.update(qm.image(conic_oval.elements[j]).point_vectors())
    assert len(covered) == 80
    assert qm.space.n_points - len(covered) == 5


def test_tangents_on_hyperoval_rejected(conic_hyperoval):
    with pytest.raises(ValueError, match="pseudo-oval"):
        tangent_space(conic_hyperoval, 0)


def test_nucleus(conic_oval, rmap42):
    nuc = nucleus(conic_oval)
    assert nuc.dim == 1
    assert nuc == rmap42.reduce_point((0, 1, 0))
    taus = tangent_spaces(conic_oval)
    # any two tangent 3-spaces of PG(5,4) already meet in at least a line
    for j in range(1, 5):
        assert meet(taus[0], taus[j]).dim >= 1


def test_nucleus_odd_q_rejected():
    # n = 1: a plane oval is a pseudo-oval whose elements are points
    arc5 = conic(prime_field(5))
    pa = make_pseudo_arc(arc5.ambient, [span([p]) for p in arc5.points])
    assert pa.kind == "pseudo-oval" and pa.n == 1
    with pytest.raises(ValueError, match="odd"):
        nucleus(pa)


def test_degenerate_n1_tangents_match_plane_tangents():
    arc = conic(4)
    pa = make_pseudo_arc(arc.ambient, [span([p]) for p in arc.points])
    taus = tangent_spaces(pa)
    plane_taus = tangent_lines(arc)
    assert taus == plane_taus


def test_extension(conic_oval):
    hyper = extend_to_hyperoval(conic_oval)
    assert hyper.kind == "pseudo-hyperoval"
    assert len(hyper.elements) == 18
    assert hyper.elements[:17] == conic_oval.elements  # nucleus appended last
    with pytest.raises(ValueError):
        extend_to_hyperoval(hyper)


def test_exhaustive_maximality_q2_n2():
    rm = reduction_map(2, 2)
    oval = rm.reduce_arc(conic(4))
    hyper = extend_to_hyperoval(oval)
    assert len(hyper.elements) == 6
    space = hyper.ambient
    pts = [p.coords for p in space.points()]
    lines = set()
    for a, b in combinations(range(len(pts)), 2):
        lines.add(space.subspace([pts[a], pts[b]]))
    assert len(lines) == 651
    present = set(hyper.elements)
    full = space.dim + 1
    for line in lines:
        if line in present:
            continue
        ok = all(span([line, x, y]).rank == full
                 for x, y in combinations(hyper.elements, 2))
        assert not ok, "some line extends the hyperoval: maximality broken"


def test_small_arc(small_arc):
    assert small_arc.kind == "pseudo-oval"
    assert len(small_arc.elements) == 9
    assert small_arc.ambient == ProjSpace(8, gf(2))
    hyper = extend_to_hyperoval(small_arc)
    assert len(hyper.elements) == 10
