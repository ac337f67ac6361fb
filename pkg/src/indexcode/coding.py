"""Turning LP/ILP optima into executable transmission schedules.

A schedule is an ordered list of coding actions (cycle XOR rounds over
GF(2), partial-clique MDS rounds over GF(2^8), and uncoded broadcasts)
expanded into concrete transmissions.  Each transmission is a coefficient
vector over symbols; a symbol is one (sub)packet unit, identified by
``(packet_id, index)`` with index ranging over ``weight * theta`` units.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .enumeration import Cycle, PartialClique
from .gf256 import F256, mds_rows
from .instance import Instance
from .lp import OPTIMAL, SolveResult

GF2 = "gf2"
GF256 = "gf256"


class ScheduleError(ValueError):
    """Solution unfit for expansion (wrong status, non-integral counts)."""


@dataclass(frozen=True)
class CodingAction:
    """One batch of identical coding rounds.

    kind "cycle": packets/users give the cycle orientation; each round is
    K-1 XOR transmissions.  kind "clique": packets plus the surplus d; each
    round is k-d MDS-coded transmissions.  kind "direct": one uncoded unit
    of a single packet per round.
    """

    kind: str  # "cycle" | "clique" | "direct"
    packets: tuple[str, ...]
    count: int
    users: tuple[str, ...] = ()
    d: int = 0

    @property
    def transmissions_per_round(self) -> int:
        if self.kind == "cycle":
            return len(self.packets) - 1
        if self.kind == "clique":
            return len(self.packets) - self.d
        return 1


@dataclass(frozen=True)
class Transmission:
    coeffs: tuple[tuple[tuple[str, int], int], ...]  # ((pid, unit), coef)

    def coeff_map(self) -> dict[tuple[str, int], int]:
        return dict(self.coeffs)


@dataclass
class TransmissionSchedule:
    field_name: str  # GF2 or GF256
    theta: int
    actions: list[CodingAction]
    transmissions: list[Transmission] = field(default_factory=list)

    @property
    def total_count(self) -> Fraction:
        """Clearance time in packet units (transmissions / theta)."""
        return Fraction(len(self.transmissions), self.theta)

    def to_json(self) -> str:
        doc = {
            "field": self.field_name,
            "theta": self.theta,
            "granularity": "packet" if self.theta == 1 else "subpacket",
            "total_count": str(self.total_count),
            "transmissions": [
                {f"{pid}/{unit}": coef for (pid, unit), coef in t.coeffs}
                for t in self.transmissions
            ],
        }
        return json.dumps(doc, indent=2)


class _UnitPool:
    """Greedy per-packet unit cursor; exhausted packets hand out a
    duplicate of their last unit (redundant for every receiver)."""

    def __init__(self, inst: Instance, theta: int):
        self.limit = {p.id: p.weight * theta for p in inst.packets}
        self.cursor = {p.id: 0 for p in inst.packets}

    def take(self, pid: str) -> int:
        c = self.cursor[pid]
        if c < self.limit[pid]:
            self.cursor[pid] = c + 1
            return c
        return self.limit[pid] - 1

    def all_covered(self) -> bool:
        return all(self.cursor[p] >= self.limit[p] for p in self.limit)


def _parse_counts(res: SolveResult, theta: int):
    """Scaled integral counts per variable name, validated."""
    if res.status != OPTIMAL:
        raise ScheduleError(f"solution status is {res.status}, not optimal")
    counts = {}
    for name, v in res.primal_by_name().items():
        scaled = v * theta
        if scaled.denominator != 1:
            raise ScheduleError(f"{name}: count {v} not integral at theta={theta}")
        if scaled < 0:
            raise ScheduleError(f"{name}: negative count")
        counts[name] = int(scaled)
    return counts


def _cycle_from_name(name: str) -> Cycle:
    body = name[2:]
    pkts, users = body.split("@")
    return Cycle(tuple(pkts.split("|")), tuple(users.split("|")))


def _clique_from_name(inst: Instance, name: str) -> PartialClique:
    packets = frozenset(name[2:].split("|"))
    demanders = {inst.packet(pid).demand for pid in packets}
    d = min(len(inst.side_packets(u) & packets) for u in demanders)
    return PartialClique(packets, len(packets), d)


def _theta_for(res: SolveResult) -> int:
    denoms = [v.denominator for v in res.primal]
    return math.lcm(*denoms) if denoms else 1


def _expand(inst: Instance, actions, theta, field_name) -> TransmissionSchedule:
    pool = _UnitPool(inst, theta)
    sched = TransmissionSchedule(field_name, theta, list(actions))
    for action in actions:
        for _ in range(action.count):
            units = [(pid, pool.take(pid)) for pid in action.packets]
            if action.kind == "cycle":
                for i in range(len(units) - 1):
                    sched.transmissions.append(
                        Transmission(((units[i], 1), (units[i + 1], 1)))
                    )
            elif action.kind == "clique":
                k = len(units)
                for row in mds_rows(k, k - action.d):
                    sched.transmissions.append(
                        Transmission(tuple((u, el.value) for u, el in zip(units, row)))
                    )
            else:
                sched.transmissions.append(Transmission(((units[0], 1),)))
    if not pool.all_covered():
        missing = [p for p, c in pool.cursor.items() if c < pool.limit[p]]
        raise ScheduleError(f"solution does not cover packets {missing}")
    return sched


def _cyclic_actions(inst, counts):
    actions = []
    for name in sorted(counts):
        if counts[name] == 0 or not name.startswith("C:"):
            continue
        c = _cycle_from_name(name)
        actions.append(CodingAction("cycle", c.packets, counts[name], users=c.users))
    for name in sorted(counts):
        if counts[name] == 0 or not name.startswith("y:"):
            continue
        actions.append(CodingAction("direct", (name[2:],), counts[name]))
    return actions


def cyclic_schedule_scalar(inst: Instance, p2_solution: SolveResult) -> TransmissionSchedule:
    """Expand an integral optimum of the scalar cyclic-code program."""
    counts = _parse_counts(p2_solution, theta=1)
    return _expand(inst, _cyclic_actions(inst, counts), 1, GF2)


def cyclic_schedule_vector(inst: Instance, p2prime_solution: SolveResult) -> TransmissionSchedule:
    """Expand a rational optimum of the relaxed cyclic-code program.

    Each packet is divided into theta subpackets, with theta the least
    common multiple of the solution denominators; all scaled action counts
    are then integral.
    """
    theta = _theta_for(p2prime_solution)
    counts = _parse_counts(p2prime_solution, theta=theta)
    return _expand(inst, _cyclic_actions(inst, counts), theta, GF2)


def clique_schedule(inst: Instance, p5_solution: SolveResult, scalar: bool = True) -> TransmissionSchedule:
    """Expand a partial-clique-code optimum (scalar or theta-subdivided)."""
    theta = 1 if scalar else _theta_for(p5_solution)
    counts = _parse_counts(p5_solution, theta=theta)
    actions = []
    for name in sorted(counts):
        if counts[name] == 0:
            continue
        if not name.startswith("T:"):
            raise ScheduleError(f"unexpected variable {name!r} in clique solution")
        t = _clique_from_name(inst, name)
        actions.append(
            CodingAction("clique", t.sorted_packets, counts[name], d=t.d)
        )
    return _expand(inst, actions, theta, GF256)


def cycle_to_clique(inst: Instance, schedule: TransmissionSchedule) -> TransmissionSchedule:
    """Replace every K-cycle action by a (K,1)-clique action.

    Transmission counts are preserved exactly: a K-cycle round is K-1 XOR
    transmissions, a (K,1)-clique round is K-1 MDS transmissions.
    """
    actions = []
    for a in schedule.actions:
        if a.kind == "cycle":
            actions.append(CodingAction("clique", tuple(sorted(a.packets)), a.count, d=1))
        elif a.kind == "direct":
            actions.append(CodingAction("clique", a.packets, a.count, d=0))
        else:
            actions.append(a)
    return _expand(inst, actions, schedule.theta, GF256)
