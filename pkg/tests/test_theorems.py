from __future__ import annotations

from itertools import combinations

import pytest

from pal import (DesignSpec, TheoremParams, check_design, check_theorem,
                 desarguesian_spread, dual_arc, extend_to_hyperoval, gf,
                 lines_design, regulus_blocks, spread_reguli_design)
from pal.cli import _pg2_lines_design


def test_theorem_61(conic_hyperoval):
    rep = check_theorem(conic_hyperoval, TheoremParams("6.1"))
    assert rep.verdict == "consistent"
    assert rep.forward == "pass" and rep.converse == "pass"
    assert rep.hypothesis["in_hypothesis"]
    assert len(rep.spreads) == 18
    assert all(e["spread_ok"] and e["regular"] for e in rep.spreads)
    assert rep.recognition["regular"]
    assert rep.exit_code() == 0


def test_theorem_62(conic_oval):
    rep = check_theorem(conic_oval, TheoremParams("6.2"))
    assert rep.verdict == "consistent"
    assert len(rep.spreads) == 17
    assert rep.forward == "pass" and rep.converse == "pass"


def test_theorem_63_default_and_explicit(conic_hyperoval):
    rep = check_theorem(conic_hyperoval, TheoremParams("6.3", rho=15))
    assert rep.verdict == "consistent"
    assert sum(1 for e in rep.spreads if e["given"]) == 15
    rep2 = check_theorem(conic_hyperoval,
                         TheoremParams("6.3", given=tuple(range(2, 18))))
    assert rep2.verdict == "consistent"
    assert rep2.recognition["regular"]


def test_theorem_63_rho_bound(conic_hyperoval):
    with pytest.raises(ValueError, match="rho"):
        check_theorem(conic_hyperoval, TheoremParams("6.3", rho=14))


def test_theorem_71(conic_hyperoval):
    rep = check_theorem(conic_hyperoval, TheoremParams("7.1", delta0=2))
    assert rep.verdict == "consistent"
    with pytest.raises(ValueError, match="delta0"):
        check_theorem(conic_hyperoval, TheoremParams("7.1", delta0=3))  # q-2 = 2


def test_theorem_kind_gate(conic_oval, conic_hyperoval):
    with pytest.raises(ValueError, match="pseudo-hyperoval"):
        check_theorem(conic_oval, TheoremParams("6.1"))
    with pytest.raises(ValueError, match="pseudo-oval"):
        check_theorem(conic_hyperoval, TheoremParams("6.2"))
    with pytest.raises(ValueError):
        TheoremParams("6.4")


def test_out_of_hypothesis_q2(small_arc):
    hyper = extend_to_hyperoval(small_arc)
    rep = check_theorem(hyper, TheoremParams("6.1"))
    assert rep.verdict == "out-of-hypothesis"
    assert not rep.hypothesis["h_greater_one"]
    assert rep.hypothesis["n_prime"]
    assert rep.exit_code() == 4
    # the checks themselves still ran and are internally consistent
    assert rep.forward == "pass" and rep.converse == "pass"
    assert all(e["vacuous"] for e in rep.spreads)


# -- design checker -----------------------------------------------------------


def test_pg24_lines_design():
    spec = _pg2_lines_design(4)
    assert (spec.t, spec.v, spec.k, spec.lam) == (2, 21, 5, 1)
    rep = check_design(spec)
    assert rep.ok
    assert rep.multiplicities == {1: 210}


def test_fano_design():
    spec = _pg2_lines_design(2)
    assert (spec.v, spec.k) == (7, 3)
    assert check_design(spec).ok


def test_deleted_block_yields_uncovered_pair():
    spec = _pg2_lines_design(4)
    broken = DesignSpec(spec.points, spec.blocks[1:], 2, spec.v, spec.k, 1)
    rep = check_design(broken)
    assert not rep.ok
    assert rep.witness["kind"] == "cover"
    assert rep.witness["count"] == 0
    assert set(rep.witness["subset"]) <= set(spec.blocks[0])


def test_block_size_violation():
    spec = _pg2_lines_design(2)
    bad = DesignSpec(spec.points, spec.blocks + (frozenset({0, 1}),),
                     2, spec.v, spec.k, 1)
    rep = check_design(bad)
    assert not rep.ok and rep.witness["kind"] == "block-size"


def test_spread_reguli_3_design():
    spread = desarguesian_spread(4, 2)
    spec = spread_reguli_design(spread)
    assert (spec.t, spec.v, spec.k, spec.lam) == (3, 17, 5, 1)
    assert len(spec.blocks) == 68
    rep = check_design(spec)
    assert rep.ok
    assert rep.multiplicities == {1: 680}


def test_exception_set_passes_on_full_design():
    spread = desarguesian_spread(4, 2)
    spec = spread_reguli_design(spread, exceptions=(0, 1))
    rep = check_design(spec)
    assert rep.ok  # exactly-one cover satisfies the relaxed rule too


def test_exception_set_rejects_damaged_instance():
    spread = desarguesian_spread(4, 2)
    spec = spread_reguli_design(spread, exceptions=(0, 1))
    kept = tuple(b for b in spec.blocks if not {0, 1} <= b)
    damaged = DesignSpec(spec.points, kept, 3, spec.v, spec.k, 1,
                         exceptions=frozenset({0, 1}))
    rep = check_design(damaged)
    # triples with one point in Q lose their unique block: condition (iii) fails
    assert not rep.ok
    assert rep.witness["kind"] == "cover"
    assert len(set(rep.witness["subset"]) & {0, 1}) <= 1


def test_regulus_blocks_tabulation(conic_dual):
    spec = regulus_blocks(conic_dual)
    assert (spec.t, spec.v, spec.k, spec.lam) == (4, 18, 6, 1)
    assert all(len(b) == 6 for b in spec.blocks)
    rep = check_design(spec)
    # the regular case does not produce a 4-design; Kantor's classification
    # would otherwise force q = 2
    assert not rep.ok
    assert sum(rep.multiplicities.values()) == 3060  # C(18, 4)
    assert set(rep.multiplicities) == {1, 4, 13}


def test_lines_design_builder():
    pts = ("a", "b", "c")
    blocks = [("a", "b"), ("b", "c"), ("a", "c")]
    spec = lines_design(pts, blocks)
    assert check_design(spec).ok


def test_exit_codes():
    from pal.theorems import TheoremReport
    base = dict(theorem="6.1", hypothesis={}, spreads=[], recognition=None,
                seconds=0.0)
    assert TheoremReport(forward="pass", converse="pass",
                         verdict="consistent", **base).exit_code() == 0
    assert TheoremReport(forward="fail", converse="pass",
                         verdict="inconsistent", **base).exit_code() == 3
    assert TheoremReport(forward="pass", converse="pass",
                         verdict="out-of-hypothesis", **base).exit_code() == 4


def test_pal_threads_determinism(conic_hyperoval, monkeypatch):
    rep1 = check_theorem(conic_hyperoval, TheoremParams("6.1"))
    monkeypatch.setenv("PAL_THREADS", "4")
    rep2 = check_theorem(conic_hyperoval, TheoremParams("6.1"))
    assert rep1.spreads == rep2.spreads
    assert (rep1.forward, rep1.converse, rep1.verdict) == \
        (rep2.forward, rep2.converse, rep2.verdict)
