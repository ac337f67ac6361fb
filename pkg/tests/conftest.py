"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the library's own algorithms: cycle listing
is a plain DFS over vertex sequences, the ILP oracle enumerates all 2^M
deletion patterns, and the LP oracle enumerates basic solutions of the
polytope directly.
"""

from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from indexcode import make_instance
from indexcode.instance import to_digraph


@pytest.fixture
def fig1():
    """3 users, 3 packets, planar; two cycles."""
    return make_instance(
        ["u1", "u2", "u3"],
        [
            ("p1", 1, "u1", {"u2", "u3"}),
            ("p2", 1, "u2", {"u3"}),
            ("p3", 1, "u3", {"u1"}),
        ],
    )


@pytest.fixture
def fig4():
    """3 users, 3 packets, the unique non-planar 3x3 unicast instance."""
    return make_instance(
        ["u1", "u2", "u3"],
        [
            ("p1", 1, "u1", {"u2", "u3"}),
            ("p2", 1, "u2", {"u1", "u3"}),
            ("p3", 1, "u3", {"u1", "u2"}),
        ],
    )


def dfs_cycles(inst):
    """All elementary cycles by exhaustive DFS; set of (packets, users)
    tuples rotated to start at the smallest packet id."""
    g = to_digraph(inst)
    found = set()

    def walk(path):
        last = path[-1]
        for nxt in g.successors(last):
            if nxt == path[0]:
                packets = [n[1] for n in path if n[0] == "p"]
                users = [n[1] for n in path if n[0] == "u"]
                i = packets.index(min(packets))
                found.add((tuple(packets[i:] + packets[:i]), tuple(users[i:] + users[:i])))
            elif nxt not in path:
                walk(path + [nxt])

    for node in g.nodes:
        if node[0] == "p":
            walk([node])
    return found


def brute_max_acyclic(inst):
    """Maximum-weight packet subset whose induced subgraph is acyclic,
    by trying all 2^M deletion patterns."""
    g = to_digraph(inst)
    pids = list(inst.packet_ids)
    best = 0
    for r in range(len(pids), -1, -1):
        for keep in combinations(pids, r):
            sub = g.subgraph(
                [n for n in g.nodes if n[0] == "u" or n[1] in keep]
            )
            if nx.is_directed_acyclic_graph(sub):
                w = sum(inst.packet(p).weight for p in keep)
                best = max(best, w)
    return Fraction(best)


def _solve_square(rows, rhs):
    """Exact solve of a square Fraction system; None if singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def lp_vertex_oracle(objective, rows, rhss, lowers, uppers, sense="max"):
    """Optimum of a bounded LP by enumerating vertices: every choice of n
    tight constraints among the rows and bounds defines a candidate basic
    point; keep the best feasible one."""
    n = len(objective)
    cands = [(list(r), Fraction(b)) for r, b in zip(rows, rhss)]
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        cands.append((list(e), Fraction(lowers[j])))
        if uppers[j] is not None:
            cands.append((list(e), Fraction(uppers[j])))
    best = None
    for combo in combinations(range(len(cands)), n):
        pt = _solve_square([cands[i][0] for i in combo], [cands[i][1] for i in combo])
        if pt is None:
            continue
        ok = all(
            sum(a * x for a, x in zip(r, pt)) <= b for r, b in zip(rows, rhss)
        ) and all(
            lowers[j] <= pt[j] and (uppers[j] is None or pt[j] <= uppers[j])
            for j in range(n)
        )
        if not ok:
            continue
        val = sum(c * x for c, x in zip(objective, pt))
        if best is None or (val > best if sense == "max" else val < best):
            best = val
    return best
