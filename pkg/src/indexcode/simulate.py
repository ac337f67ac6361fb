"""Replay a transmission schedule over random payloads and verify decoding.

Ground-truth payloads are generated per symbol from a 64-bit seed with a
splitmix64 expansion, so runs are exactly reproducible.  Every receiver
performs Gaussian elimination over the schedule's field, restricted to the
symbols it does not already hold, and must recover all demanded symbols
bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coding import GF2, GF256, TransmissionSchedule
from .gf256 import gf_inv, gf_mul, gf_scale_bytes
from .instance import Instance

DEFAULT_PAYLOAD_SIZE = 64

_MASK = (1 << 64) - 1


class DecodeFailure(RuntimeError):
    """A receiver could not recover a demanded (sub)packet."""

    def __init__(self, user, packet):
        super().__init__(f"user {user!r} cannot decode packet {packet!r}")
        self.user = user
        self.packet = packet


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def _payload(seed: int, counter: int, size: int) -> np.ndarray:
    out = bytearray()
    state = (seed ^ (counter * 0x9E3779B97F4A7C15)) & _MASK
    while len(out) < size:
        state, word = _splitmix64(state)
        out += word.to_bytes(8, "little")
    return np.frombuffer(bytes(out[:size]), dtype=np.uint8).copy()


@dataclass
class DecodeReport:
    success: dict[str, bool]
    transmissions: int
    theta: int

    @property
    def all_decoded(self) -> bool:
        return all(self.success.values())


def _scale(field_name, coef, payload):
    if field_name == GF2:
        return payload.copy() if coef else np.zeros_like(payload)
    return gf_scale_bytes(coef, payload)


def _eliminate(field_name, rows):
    """Full in-place reduction of (coeff list, payload) rows; returns the
    mapping column -> payload for every determined unknown."""
    nunk = len(rows[0][0]) if rows else 0
    pivots = {}
    r = 0
    for col in range(nunk):
        piv = next((i for i in range(r, len(rows)) if rows[i][0][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        coeffs, payload = rows[r]
        if field_name == GF256 and coeffs[col] != 1:
            inv = gf_inv(coeffs[col])
            rows[r] = coeffs = [gf_mul(inv, c) for c in coeffs]
            rows[r] = (coeffs, gf_scale_bytes(inv, payload))
            coeffs, payload = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0][col] != 0:
                f = rows[i][0][col]
                ci, pi = rows[i]
                if field_name == GF2:
                    rows[i] = ([a ^ b for a, b in zip(ci, coeffs)], pi ^ payload)
                else:
                    rows[i] = (
                        [a ^ gf_mul(f, b) for a, b in zip(ci, coeffs)],
                        pi ^ gf_scale_bytes(f, payload),
                    )
        pivots[col] = r
        r += 1
    solved = {}
    for col, i in pivots.items():
        coeffs, payload = rows[i]
        if sum(1 for c in coeffs if c != 0) == 1:
            solved[col] = payload
    return solved


def simulate(
    inst: Instance,
    schedule: TransmissionSchedule,
    seed: int = 0,
    payload_size: int = DEFAULT_PAYLOAD_SIZE,
    raise_on_failure: bool = True,
) -> DecodeReport:
    """Run the schedule and check that every user decodes its demands."""
    theta = schedule.theta
    symbols = []
    for p in inst.packets:
        for idx in range(p.weight * theta):
            symbols.append((p.id, idx))
    sym_index = {s: i for i, s in enumerate(symbols)}
    truth = {
        s: _payload(seed, i + 1, payload_size) for i, s in enumerate(symbols)
    }

    payloads = []
    for t in schedule.transmissions:
        acc = np.zeros(payload_size, dtype=np.uint8)
        for sym, coef in t.coeffs:
            acc ^= _scale(schedule.field_name, coef, truth[sym])
        payloads.append(acc)

    success = {}
    first_failure = None
    for user in inst.users:
        known_pkts = inst.side_packets(user)
        unknown = [s for s in symbols if s[0] not in known_pkts]
        col = {s: j for j, s in enumerate(unknown)}
        rows = []
        for t, payload in zip(schedule.transmissions, payloads):
            coeffs = [0] * len(unknown)
            rhs = payload.copy()
            for sym, coef in t.coeffs:
                if sym in col:
                    coeffs[col[sym]] ^= 0 if coef == 0 else coef if schedule.field_name == GF256 else 1
                else:
                    rhs ^= _scale(schedule.field_name, coef, truth[sym])
            if any(coeffs):
                rows.append((coeffs, rhs))
        solved = _eliminate(schedule.field_name, rows) if rows else {}
        ok = True
        for pid in inst.demanded_packets(user):
            for idx in range(inst.packet(pid).weight * theta):
                j = col[(pid, idx)]
                if j not in solved or not np.array_equal(solved[j], truth[(pid, idx)]):
                    ok = False
                    if first_failure is None:
                        first_failure = (user, pid)
                    break
            if not ok:
                break
        success[user] = ok
    if first_failure is not None and raise_on_failure:
        raise DecodeFailure(*first_failure)
    return DecodeReport(success, len(schedule.transmissions), theta)
