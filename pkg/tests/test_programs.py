from fractions import Fraction as F
from random import Random

from indexcode import (
    build_split_digraph,
    enumerate_cycles,
    enumerate_partial_cliques,
    make_instance,
    solve_ilp,
    solve_lp,
    split_digraph_cycles,
    total_weight,
)
from indexcode.generators import random_unicast_instance, random_uniprior_instance
from indexcode.programs import (
    build_P1,
    build_P1_relaxed,
    build_P2,
    build_P2_relaxed,
    build_P3,
    build_P3_star,
    build_P4,
    build_P4_star,
    build_P5,
    build_P5_relaxed,
    build_P6,
    build_P6_relaxed,
    verify_duality,
)

from conftest import brute_max_acyclic


def _vals(inst, max_k=12):
    cycles = enumerate_cycles(inst)
    cliques = enumerate_partial_cliques(inst, max_k=max_k)
    return cycles, cliques


def test_p1_structure_fig1(fig1):
    cycles = enumerate_cycles(fig1)
    lp = build_P1(fig1, cycles)
    assert lp.sense == "max"
    assert lp.var_names == ("x:p1", "x:p2", "x:p3")
    assert lp.objective == (F(1), F(1), F(1))
    # Two distinct cycle packet sets, rhs |C|-1.
    rows = {c.name: c for c in lp.constraints}
    assert rows["C:p1|p3"].rhs == 1
    assert rows["C:p1|p2|p3"].rhs == 2
    assert all(c.rel == "<=" for c in lp.constraints)
    assert all(lp.integer)
    assert solve_ilp(lp).objective == 2


def test_p1_relaxed_is_continuous(fig1):
    cycles = enumerate_cycles(fig1)
    lp = build_P1_relaxed(fig1, cycles)
    assert not any(lp.integer)
    assert all(hi == 1 for hi in lp.upper)


def test_p2_structure_fig1(fig1):
    cycles = enumerate_cycles(fig1)
    lp = build_P2(fig1, cycles)
    assert lp.sense == "min"
    named = dict(zip(lp.var_names, lp.objective))
    # cycle costs |C|-1, uncoded costs 1 each
    assert named["C:p1|p3@u1|u3"] == 1
    assert named["C:p1|p3|p2@u1|u3|u2"] == 2
    assert named["y:p1"] == named["y:p2"] == named["y:p3"] == 1
    rows = {c.name: c for c in lp.constraints}
    assert set(rows) == {"m:p1", "m:p2", "m:p3"}
    assert all(c.rel == ">=" and c.rhs == 1 for c in lp.constraints)
    assert solve_ilp(lp).objective == 2


def test_fig1_all_bounds_equal_two(fig1):
    cycles, cliques = _vals(fig1)
    assert solve_ilp(build_P1(fig1, cycles)).objective == 2
    assert solve_lp(build_P1_relaxed(fig1, cycles)).objective == 2
    assert solve_lp(build_P2_relaxed(fig1, cycles)).objective == 2
    assert solve_ilp(build_P2(fig1, cycles)).objective == 2
    assert solve_ilp(build_P5(fig1, cliques)).objective == 2
    assert solve_lp(build_P5_relaxed(fig1, cliques)).objective == 2


def test_fig4_bound_chain_with_gaps(fig4):
    cycles, cliques = _vals(fig4)
    assert solve_ilp(build_P1(fig4, cycles)).objective == 1
    assert solve_lp(build_P1_relaxed(fig4, cycles)).objective == F(3, 2)
    assert solve_lp(build_P2_relaxed(fig4, cycles)).objective == F(3, 2)
    assert solve_ilp(build_P2(fig4, cycles)).objective == 2
    assert solve_ilp(build_P5(fig4, cliques)).objective == 1
    assert solve_lp(build_P5_relaxed(fig4, cliques)).objective == 1


def test_p6_structure_fig4(fig4):
    _, cliques = _vals(fig4)
    lp = build_P6(fig4, cliques)
    assert lp.sense == "max"
    rows = {c.name: c for c in lp.constraints}
    # (3,2)-clique row: x1+x2+x3 <= 1
    full = rows["T:p1|p2|p3"]
    assert full.rhs == 1
    assert full.coeffs == (F(1), F(1), F(1))
    # singleton rows act as x_m <= 1
    assert rows["T:p1"].rhs == 1
    assert solve_ilp(lp).objective == 1
    assert solve_lp(build_P6_relaxed(fig4, cliques)).objective == 1


def test_weighted_objective():
    inst = make_instance(
        ["u1", "u2"],
        [("p1", 3, "u1", {"u2"}), ("p2", 2, "u2", {"u1"})],
    )
    cycles = enumerate_cycles(inst)
    p1 = build_P1(inst, cycles)
    assert dict(zip(p1.var_names, p1.objective)) == {"x:p1": 3, "x:p2": 2}
    assert solve_ilp(p1).objective == 3
    p2 = build_P2(inst, cycles)
    rows = {c.name: c for c in p2.constraints}
    assert rows["m:p1"].rhs == 3
    assert rows["m:p2"].rhs == 2
    # two rounds of the 2-cycle clear (2,2); one uncoded unit finishes p1
    assert solve_ilp(p2).objective == 3


def test_p1p2_relaxations_are_dual():
    rng = Random(31)
    insts = [random_unicast_instance(rng) for _ in range(40)]
    for inst in insts:
        cycles = enumerate_cycles(inst)
        a = solve_lp(build_P1_relaxed(inst, cycles))
        b = solve_lp(build_P2_relaxed(inst, cycles))
        assert a.objective == b.objective
        assert verify_duality(a, b)


def test_p6p5_relaxations_are_dual():
    rng = Random(32)
    insts = [random_unicast_instance(rng, max_packets=5) for _ in range(25)]
    for inst in insts:
        cliques = enumerate_partial_cliques(inst)
        a = solve_lp(build_P6_relaxed(inst, cliques))
        b = solve_lp(build_P5_relaxed(inst, cliques))
        assert a.objective == b.objective
        assert verify_duality(a, b)


def test_bound_chain_order():
    rng = Random(33)
    for _ in range(30):
        inst = random_unicast_instance(rng)
        cycles = enumerate_cycles(inst)
        v1 = solve_ilp(build_P1(inst, cycles)).objective
        v1r = solve_lp(build_P1_relaxed(inst, cycles)).objective
        v2r = solve_lp(build_P2_relaxed(inst, cycles)).objective
        v2 = solve_ilp(build_P2(inst, cycles)).objective
        assert v1 <= v1r == v2r <= v2


def test_p1_equals_p6():
    rng = Random(34)
    for _ in range(25):
        inst = random_unicast_instance(rng, max_packets=5)
        cycles = enumerate_cycles(inst)
        cliques = enumerate_partial_cliques(inst)
        assert (
            solve_ilp(build_P1(inst, cycles)).objective
            == solve_ilp(build_P6(inst, cliques)).objective
        )


def test_p5_below_p2_on_uniprior():
    rng = Random(35)
    for _ in range(25):
        inst = random_uniprior_instance(rng)
        cycles = enumerate_cycles(inst)
        cliques = enumerate_partial_cliques(inst)
        assert (
            solve_ilp(build_P5(inst, cliques)).objective
            <= solve_ilp(build_P2(inst, cycles)).objective
        )
        assert (
            solve_lp(build_P5_relaxed(inst, cliques)).objective
            <= solve_lp(build_P2_relaxed(inst, cycles)).objective
        )


def test_complementarity():
    rng = Random(36)
    insts = [random_unicast_instance(rng) for _ in range(25)]
    for inst in insts:
        W = total_weight(inst)
        cycles = enumerate_cycles(inst)
        assert solve_ilp(build_P1(inst, cycles)).objective + \
            solve_ilp(build_P3(inst, cycles)).objective == W
        assert solve_ilp(build_P2(inst, cycles)).objective + \
            solve_ilp(build_P4(inst, cycles)).objective == W


def test_p3_star_structure(fig1):
    sd = build_split_digraph(fig1)
    sd_cycles = split_digraph_cycles(sd)
    lp = build_P3_star(sd, sd_cycles)
    named = dict(zip(lp.var_names, lp.objective))
    # packet arcs carry the packet weight; all other arcs the heavy weight 4
    assert named["a:in.p1>out.p1"] == 1
    heavy = [v for k, v in named.items() if not k.startswith("a:in.")]
    assert heavy and all(v == 4 for v in heavy)


def test_star_equivalences():
    rng = Random(37)
    insts = [random_unicast_instance(rng, max_packets=5) for _ in range(15)]
    for inst in insts:
        cycles = enumerate_cycles(inst)
        sd = build_split_digraph(inst)
        sd_cycles = split_digraph_cycles(sd)
        v3 = solve_ilp(build_P3(inst, cycles)).objective
        v3s = solve_ilp(build_P3_star(sd, sd_cycles)).objective
        assert v3 == v3s
        v4 = solve_ilp(build_P4(inst, cycles)).objective
        v4s = solve_ilp(build_P4_star(sd, sd_cycles)).objective
        assert v4 == v4s


def test_p3_star_avoids_heavy_arcs():
    # An optimal feedback arc set never pays for a heavy arc: deleting the
    # packet arc instead always breaks at least as many cycles for less.
    rng = Random(38)
    for _ in range(10):
        inst = random_unicast_instance(rng, max_packets=4)
        sd = build_split_digraph(inst)
        sd_cycles = split_digraph_cycles(sd)
        lp = build_P3_star(sd, sd_cycles)
        res = solve_ilp(lp)
        chosen = [n for n, v in res.primal_by_name().items() if v]
        assert all(n.startswith("a:in.") for n in chosen)


def test_p1_matches_bruteforce_deletion_oracle():
    rng = Random(39)
    for _ in range(20):
        inst = random_unicast_instance(rng, max_packets=5)
        cycles = enumerate_cycles(inst)
        assert solve_ilp(build_P1(inst, cycles)).objective == brute_max_acyclic(inst)
