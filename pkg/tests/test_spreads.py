from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from pal import (ProjSpace, Spread, conic, count_reguli_through_pair,
                 derive_spread_from_element, derive_spread_from_nucleus,
                 derive_tangent_spread_odd, desarguesian_spread, dual_arc, gf,
                 is_regular_spread, make_pseudo_arc, meet, opposite_regulus,
                 prime_field, reduction_map, regulus_through, span,
                 tangent_spaces, transversal_lines, verify_spread)


@pytest.fixture(scope="module")
def pg34_spread():
    return desarguesian_spread(4, 2)


def all_lines(space):
    pts = [p.coords for p in space.points()]
    return {space.subspace([pts[a], pts[b]])
            for a, b in combinations(range(len(pts)), 2)}


# -- verify_spread ------------------------------------------------------------


def test_verify_spread_passes(pg34_spread):
    rep = verify_spread(pg34_spread)
    assert rep.ok and rep.count == 17 and rep.expected == 17


def test_verify_spread_drop_element(pg34_spread):
    rep = verify_spread(Spread(pg34_spread.space, pg34_spread.elements[:-1]))
    assert not rep.ok and rep.witness["kind"] == "wrong-count"
    # with the count right but a line replaced by a duplicate, points go uncovered
    elems = pg34_spread.elements[:-1] + (pg34_spread.elements[0],)
    rep2 = verify_spread(Spread(pg34_spread.space, elems))
    assert not rep2.ok
    assert rep2.witness["kind"] in ("duplicate-element", "not-skew")


def test_verify_spread_meeting_pair(pg34_spread):
    space = pg34_spread.space
    # joins points of elements 0 and 1, so it meets both and equals neither
    crooked = space.subspace([pg34_spread.elements[0].rows[0],
                              pg34_spread.elements[1].rows[0]])
    elems = pg34_spread.elements[:-1] + (crooked,)
    rep = verify_spread(Spread(space, elems))
    assert not rep.ok
    assert rep.witness["kind"] in ("not-skew", "uncovered-points")


# -- regulus_through -----------------------------------------------------------


def test_regulus_q2_is_its_generators():
    spread = desarguesian_spread(2, 2)
    a, b, c = spread.elements[:3]
    reg = regulus_through(a, b, c)
    assert len(reg.elements) == 3
    assert reg.element_set() == {a, b, c}


def test_regulus_q4_transversal_incidence(pg34_spread):
    a, b, c = pg34_spread.elements[:3]
    reg = regulus_through(a, b, c)
    assert len(reg.elements) == 5
    trans = transversal_lines(a, b, c)
    assert len(trans) == 5
    for t in trans:
        for e in reg.elements:
            assert meet(t, e).rank == 1
    # brute-force oracle: the transversals are exactly the lines of PG(3,4)
    # meeting all five regulus elements
    oracle = {line for line in all_lines(pg34_spread.space)
              if all(meet(line, e).rank == 1 for e in reg.elements)}
    assert oracle == set(trans)


def test_regulus_permutation_invariance(pg34_spread):
    a, b, c = pg34_spread.elements[:3]
    base = regulus_through(a, b, c).element_set()
    for p in permutations((a, b, c)):
        assert regulus_through(*p).element_set() == base


def test_regulus_determined_by_any_three(pg34_spread):
    reg = regulus_through(*pg34_spread.elements[:3])
    for t in combinations(reg.elements, 3):
        assert regulus_through(*t).element_set() == reg.element_set()


def test_regulus_rejects_bad_generators(pg34_spread):
    space = pg34_spread.space
    a = pg34_spread.elements[0]
    b = space.subspace([a.rows[0], (0, 0, 1, 1)])  # meets a
    c = pg34_spread.elements[1]
    with pytest.raises(ValueError):
        regulus_through(a, b, c)


# -- opposite regulus -----------------------------------------------------------


def test_opposite_regulus_involution(pg34_spread):
    reg = regulus_through(*pg34_spread.elements[:3])
    opp = opposite_regulus(reg)
    assert opposite_regulus(opp).element_set() == reg.element_set()
    for x in reg.elements:
        for y in opp.elements:
            assert meet(x, y).rank == 1  # the two rulings meet pointwise
    for y1, y2 in combinations(opp.elements, 2):
        assert meet(y1, y2).rank == 0


def test_opposite_regulus_needs_lines():
    spread = desarguesian_spread(2, 3)
    reg = regulus_through(*spread.elements[:3])
    with pytest.raises(ValueError, match="n=2"):
        opposite_regulus(reg)


# -- regularity ------------------------------------------------------------------


def test_regular_closure_full_sweep(pg34_spread):
    rep = is_regular_spread(pg34_spread, mode="full")
    assert rep.regular and rep.checked_triples == 680


def test_fixed_element_mode_agrees(pg34_spread):
    rep = is_regular_spread(pg34_spread, mode="fixed")
    assert rep.regular and rep.checked_triples == 120


def test_swapped_regulus_breaks_regularity(pg34_spread):
    reg = regulus_through(*pg34_spread.elements[:3])
    opp = opposite_regulus(reg)
    elems = tuple(e for e in pg34_spread.elements
                  if e not in reg.element_set()) + opp.elements
    bad = Spread(pg34_spread.space, elems)
    assert verify_spread(bad).ok  # still a spread
    rep = is_regular_spread(bad)
    assert not rep.regular
    assert rep.witness["kind"] == "regulus-closure"
    assert "triple" in rep.witness and "missing_element" in rep.witness


def test_q2_closure_is_vacuous():
    spread = desarguesian_spread(2, 2)
    rep = is_regular_spread(spread)
    assert rep.regular and rep.vacuous and rep.mode == "vacuous"
    assert "vacuous" in rep.reason


# -- derived spreads ---------------------------------------------------------------


def test_derived_spread_hyperoval(conic_hyperoval):
    for i in (0, 7, 17):
        spread = derive_spread_from_element(conic_hyperoval, i)
        assert len(spread.elements) == 17
        assert spread.space == ProjSpace(3, gf(4))
        assert verify_spread(spread).ok


def test_derived_spread_oval_includes_tangent_image(conic_oval):
    spread = derive_spread_from_element(conic_oval, 3)
    assert len(spread.elements) == 17
    assert verify_spread(spread).ok
    from pal.projective import QuotientMap
    qm = QuotientMap(conic_oval.elements[3])
    eta = qm.image(tangent_spaces(conic_oval)[3])
    assert spread.elements[3] == eta  # index-aligned insertion


def test_derived_regularity(conic_hyperoval):
    for i in (0, 9):
        spread = derive_spread_from_element(conic_hyperoval, i)
        assert is_regular_spread(spread).regular


def test_nucleus_spread_equals_extension_derivation(conic_oval, conic_hyperoval):
    from_nucleus = derive_spread_from_nucleus(conic_oval)
    from_extension = derive_spread_from_element(conic_hyperoval, 17)
    assert from_nucleus.element_set() == from_extension.element_set()
    assert verify_spread(from_nucleus).ok
    assert is_regular_spread(from_nucleus).regular


def test_explicit_complement_mode_agrees(conic_hyperoval):
    base = derive_spread_from_element(conic_hyperoval, 0)
    alt = derive_spread_from_element(conic_hyperoval, 0, explicit_complement=True)
    assert verify_spread(alt).ok
    assert is_regular_spread(alt).regular == is_regular_spread(base).regular


def test_nucleus_spread_odd_q_rejected(conic_hyperoval):
    with pytest.raises(ValueError):
        derive_spread_from_nucleus(conic_hyperoval)


def test_tangent_spread_odd_n1():
    arc5 = conic(prime_field(5))
    pa = make_pseudo_arc(arc5.ambient, [span([p]) for p in arc5.points])
    spread = derive_tangent_spread_odd(pa, 2)
    assert len(spread.elements) == 6
    assert verify_spread(spread).ok
    assert spread.carrier == tangent_spaces(pa)[2]
    assert spread.elements[2].rows  # pi_i sits at its own index


def test_tangent_spread_rejects_even_q(conic_oval):
    with pytest.raises(ValueError, match="odd"):
        derive_tangent_spread_odd(conic_oval, 0)


# -- dual arc ---------------------------------------------------------------------


def test_dual_arc_structure(conic_dual):
    assert len(conic_dual.betas) == 18
    for beta in conic_dual.betas:
        assert beta.dim == 3
    for i, gamma in enumerate(conic_dual.gammas):
        assert len(gamma.elements) == 17
        assert verify_spread(gamma).ok
        assert gamma.carrier == conic_dual.betas[i]


def test_dual_alpha_dimensions(conic_dual):
    for i, j in ((0, 1), (3, 11), (16, 17)):
        assert conic_dual.alpha(i, j).dim == 1


def test_dual_gamma_regularity_matches_delta(conic_hyperoval, conic_dual):
    for i in (0, 5, 17):
        delta = derive_spread_from_element(conic_hyperoval, i)
        dv = is_regular_spread(delta).regular
        gv = is_regular_spread(conic_dual.gammas[i]).regular
        assert dv == gv


def test_dual_arc_of_oval_appends_nucleus(conic_oval):
    da = dual_arc(conic_oval)
    assert len(da.betas) == 18
    assert len(da.arc.elements) == 18


def test_dual_arc_odd_q_rejected():
    arc5 = conic(prime_field(5))
    pa = make_pseudo_arc(arc5.ambient, [span([p]) for p in arc5.points])
    with pytest.raises(ValueError):
        dual_arc(pa)


# -- regulus counting ----------------------------------------------------------------


def test_count_reguli_q4(pg34_spread):
    count, reguli, contained = count_reguli_through_pair(pg34_spread, 0, 1)
    assert count == 5  # (q^n - 1)/(q - 1) = 15/3
    assert all(contained)
    assert all(len(r.elements) == 5 for r in reguli)
    # consistency: the 15 other elements split into 5 regulus-remainders of q-1
    rest = set(pg34_spread.elements[2:])
    remainders = [r.element_set() - {pg34_spread.elements[0], pg34_spread.elements[1]}
                  for r in reguli]
    assert sorted(len(x) for x in remainders) == [3, 3, 3, 3, 3]
    assert set().union(*remainders) == rest


def test_count_reguli_q2():
    spread = desarguesian_spread(2, 2)
    count, reguli, contained = count_reguli_through_pair(spread, 0, 1)
    assert count == 3
    assert all(contained)
    assert all(len(r.elements) == 3 for r in reguli)


def test_count_reguli_bad_indices(pg34_spread):
    with pytest.raises(ValueError):
        count_reguli_through_pair(pg34_spread, 0, 0)
