from __future__ import annotations

import pytest

from pal import (ProjSpace, conic, gf, make_arc, meet, oval_nucleus_and_complete,
                 prime_field, span, tangent_lines, translation_oval, verify_karc)
from pal.planearcs import lines_through_point


def test_conic_sizes():
    assert len(conic(2).points) == 3
    assert len(conic(4).points) == 5
    assert len(conic(16).points) == 17
    assert conic(16).kind == "oval"


def test_conic_verifies_as_arc():
    arc = conic(16)
    rep = verify_karc(arc.ambient, arc.points)
    assert rep.ok and rep.k == 17 and rep.max_k == 18


def test_collinear_witness():
    space = ProjSpace(2, gf(4))
    rep = verify_karc(space, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    assert not rep.ok
    assert rep.collinear_witness == (0, 1, 2)


def test_duplicate_points_error():
    space = ProjSpace(2, gf(4))
    with pytest.raises(ValueError, match="duplicate"):
        verify_karc(space, [(1, 0, 0), (1, 0, 0), (0, 0, 1)])


def test_size_bound_violation():
    # 7 points claimed at q=4 exceed q+2 = 6; the bound is reported first
    space = ProjSpace(2, gf(4))
    pts = [p.coords for p in space.points()[:7]]
    rep = verify_karc(space, pts)
    assert not rep.ok
    assert "bound" in rep.reason and rep.max_k == 6


def test_odd_q_bound():
    space = ProjSpace(2, prime_field(5))
    rep = verify_karc(space, [p.coords for p in conic(prime_field(5)).points])
    assert rep.ok and rep.max_k == 6  # q+1 for odd q


def test_nucleus_of_conic():
    for q in (4, 16):
        nuc, hyper = oval_nucleus_and_complete(conic(q))
        assert nuc.coords == (0, 1, 0)
        assert hyper.kind == "hyperoval"
        assert len(hyper.points) == q + 2


def test_translation_ovals():
    assert translation_oval(16, 1).points == conic(16).points
    t = translation_oval(16, 3)
    assert len(t.points) == 17
    assert {p.coords for p in t.points} != {p.coords for p in conic(16).points}
    nuc, hyper = oval_nucleus_and_complete(t)
    assert len(hyper.points) == 18
    with pytest.raises(ValueError, match="gcd"):
        translation_oval(16, 2)
    with pytest.raises(ValueError):
        translation_oval(prime_field(5), 1)


def test_odd_order_has_no_completion():
    with pytest.raises(ValueError, match="odd"):
        oval_nucleus_and_complete(conic(prime_field(5)))


def test_odd_order_tangents_do_not_concur():
    arc = conic(prime_field(5))
    taus = tangent_lines(arc)
    common = taus[0]
    for t in taus[1:]:
        common = meet(common, t)
    assert common.rank == 0


@pytest.mark.parametrize("q,k", [(2, 1), (4, 1), (8, 1), (8, 2), (16, 1), (16, 3)])
def test_even_tangents_concur_exhaustive(q, k):
    arc = translation_oval(q, k) if k > 1 else conic(q)
    taus = tangent_lines(arc)
    assert len(taus) == q + 1
    common = taus[0]
    for t in taus[1:]:
        common = meet(common, t)
    assert common.rank == 1
    # each tangent meets the arc exactly once
    for t, p in zip(taus, arc.points):
        assert t.contains_point(p)
        assert sum(1 for x in arc.points if t.contains_point(x)) == 1


@pytest.mark.parametrize("q", [2, 4, 16])
def test_hyperoval_maximality_exhaustive(q):
    _, hyper = oval_nucleus_and_complete(conic(q))
    coords = {p.coords for p in hyper.points}
    for extra in hyper.ambient.points():
        if extra.coords in coords:
            continue
        rep = verify_karc(hyper.ambient, list(hyper.points) + [extra])
        assert not rep.ok


def test_pencil_size():
    space = ProjSpace(2, gf(16))
    pencil = lines_through_point(space.point((1, 5, 7)))
    assert len(pencil) == 17
    assert len(set(pencil)) == 17
    for line in pencil:
        assert line.contains_point((1, 5, 7))


def test_line_through_two_arc_points_is_secant():
    arc = conic(16)
    line = span([arc.points[0], arc.points[1]])
    hits = sum(1 for p in arc.points if line.contains_point(p))
    assert hits == 2


def test_make_arc_kinds():
    space = ProjSpace(2, gf(4))
    karc = make_arc(space, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    assert karc.kind == "karc"
    assert make_arc(space, [p.coords for p in conic(4).points]).kind == "oval"
