"""Command-line front end: parse -> enumerate -> solve -> code -> simulate.

Subcommands: bounds, cycles, cliques, code, simulate, planar, check.
Instance files use the YAML mapping format of `indexcode.instance`.
Default enumeration/solver caps can be overridden by flags or by the
environment variables INDEXCODE_MAX_CYCLES, INDEXCODE_MAX_K and
INDEXCODE_NODE_LIMIT.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analysis, coding, enumeration, lp, programs
from .instance import InstanceError, parse_instance
from .simulate import simulate as _simulate


def _env_int(name, default):
    return int(os.environ.get(name, default))


def _load(path: str):
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _frac(x) -> str:
    return str(x)


def _cmd_planar(args, out):
    inst = _load(args.instance)
    planar = analysis.is_planar(inst)
    if args.format == "json":
        json.dump({"planar": planar}, out)
        out.write("\n")
    else:
        out.write(f"planar: {'true' if planar else 'false'}\n")
    return 0


def _cmd_cycles(args, out):
    inst = _load(args.instance)
    cycles = enumeration.enumerate_cycles(inst, max_cycles=args.max_cycles)
    if args.format == "json":
        json.dump(
            [{"packets": list(c.packets), "users": list(c.users)} for c in cycles], out
        )
        out.write("\n")
    else:
        for c in cycles:
            out.write(" -> ".join(
                x for pair in zip(c.packets, c.users) for x in pair
            ) + "\n")
        out.write(f"total: {len(cycles)} cycles\n")
    return 0


def _cmd_cliques(args, out):
    inst = _load(args.instance)
    cliques = enumeration.enumerate_partial_cliques(inst, max_k=args.max_k)
    if args.format == "json":
        json.dump(
            [{"packets": sorted(t.packets), "k": t.k, "d": t.d} for t in cliques], out
        )
        out.write("\n")
    else:
        for t in cliques:
            out.write(f"({t.k},{t.d}): {' '.join(sorted(t.packets))}\n")
        out.write(f"total: {len(cliques)} partial cliques\n")
    return 0


def _cmd_bounds(args, out):
    inst = _load(args.instance)
    rep = analysis.bounds_report(inst, max_cycles=args.max_cycles, max_k=args.max_k)
    fields = {
        "W": rep.W,
        "valP1": _frac(rep.valP1),
        "valP1_relaxed": _frac(rep.valP1_relaxed),
        "valP2": _frac(rep.valP2),
        "valP2_relaxed": _frac(rep.valP2_relaxed),
        "valP5": _frac(rep.valP5),
        "valP5_relaxed": _frac(rep.valP5_relaxed),
        "gap_P1": _frac(rep.gap_P1),
        "gap_P2": _frac(rep.gap_P2),
        "gap_P5": _frac(rep.gap_P5),
        "planar": rep.planar,
        "chain_ok": rep.chain_ok,
        "exact_optimal": rep.exact_optimal,
    }
    if args.format == "json":
        json.dump(fields, out)
        out.write("\n")
    else:
        for k, v in fields.items():
            out.write(f"{k}: {v}\n")
        if rep.exact_optimal:
            out.write("OPTIMAL (planar)\n" if rep.planar else "OPTIMAL (bounds met)\n")
    return 0


def _make_schedule(inst, args):
    node_limit = args.node_limit
    if args.strategy == "cyclic":
        cycles = enumeration.enumerate_cycles(inst, max_cycles=args.max_cycles)
        if args.mode == "scalar":
            res = lp.solve_ilp(programs.build_P2(inst, cycles), node_limit)
            return coding.cyclic_schedule_scalar(inst, res)
        res = lp.solve_lp(programs.build_P2_relaxed(inst, cycles))
        return coding.cyclic_schedule_vector(inst, res)
    cliques = enumeration.enumerate_partial_cliques(inst, max_k=args.max_k)
    if args.mode == "scalar":
        res = lp.solve_ilp(programs.build_P5(inst, cliques), node_limit)
        return coding.clique_schedule(inst, res, scalar=True)
    res = lp.solve_lp(programs.build_P5_relaxed(inst, cliques))
    return coding.clique_schedule(inst, res, scalar=False)


def _cmd_code(args, out):
    inst = _load(args.instance)
    sched = _make_schedule(inst, args)
    if args.format == "json":
        out.write(sched.to_json())
        out.write("\n")
    else:
        out.write(
            f"field={sched.field_name} theta={sched.theta} "
            f"transmissions={len(sched.transmissions)} "
            f"clearance={_frac(sched.total_count)}\n"
        )
        for t in sched.transmissions:
            terms = " + ".join(
                (f"{coef}*" if coef != 1 else "") + f"{pid}/{unit}"
                for (pid, unit), coef in t.coeffs
            )
            out.write(f"  {terms}\n")
    return 0


def _cmd_simulate(args, out):
    inst = _load(args.instance)
    sched = _make_schedule(inst, args)
    report = _simulate(inst, sched, seed=args.seed, raise_on_failure=False)
    doc = {
        "theta": report.theta,
        "transmissions": report.transmissions,
        "clearance": _frac(sched.total_count),
        "users": report.success,
        "all_decoded": report.all_decoded,
    }
    if args.format == "json":
        json.dump(doc, out)
        out.write("\n")
    else:
        for u, ok in report.success.items():
            out.write(f"{u}: {'decoded' if ok else 'FAILED'}\n")
        out.write(
            f"{'success' if report.all_decoded else 'FAILURE'}: "
            f"{report.transmissions} transmissions, theta={report.theta}, "
            f"clearance={_frac(sched.total_count)}\n"
        )
    return 0 if report.all_decoded else 1


def _cmd_check(args, out):
    inst = _load(args.instance)
    cycles = enumeration.enumerate_cycles(inst, max_cycles=args.max_cycles)
    cliques = enumeration.enumerate_partial_cliques(inst, max_k=args.max_k)
    results = {}
    deletion = lp.solve_lp(programs.build_P1_relaxed(inst, cycles))
    covering = lp.solve_lp(programs.build_P2_relaxed(inst, cycles))
    results["cyclic_duality"] = programs.verify_duality(deletion, covering)
    d6 = lp.solve_lp(programs.build_P6_relaxed(inst, cliques))
    c5 = lp.solve_lp(programs.build_P5_relaxed(inst, cliques))
    results["clique_duality"] = programs.verify_duality(d6, c5)
    t2 = analysis.check_theorem2(inst)
    results["theorem2"] = True if t2.holds is None else t2.holds
    from .instance import is_uniprior

    if is_uniprior(inst, strict=True):
        results["theorem4"] = analysis.check_theorem4(inst)
        if len(inst.users) <= 4:
            results["corollary2"] = analysis.check_corollary2(inst)
    ok = all(results.values())
    if args.format == "json":
        json.dump(results, out)
        out.write("\n")
    else:
        for name, passed in results.items():
            out.write(f"{name}: {'pass' if passed else 'FAIL'}\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="indexcode",
        description="Exact bounds and coding schedules for broadcast with side information",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("instance", help="instance file path")
        sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument(
            "--max-cycles", type=int,
            default=_env_int("INDEXCODE_MAX_CYCLES", enumeration.DEFAULT_MAX_CYCLES),
        )
        sp.add_argument(
            "--max-k", type=int,
            default=_env_int("INDEXCODE_MAX_K", enumeration.DEFAULT_MAX_K),
        )
        sp.add_argument(
            "--node-limit", type=int,
            default=_env_int("INDEXCODE_NODE_LIMIT", lp.DEFAULT_NODE_LIMIT),
        )

    for name, fn in [
        ("bounds", _cmd_bounds), ("cycles", _cmd_cycles), ("cliques", _cmd_cliques),
        ("planar", _cmd_planar), ("check", _cmd_check),
    ]:
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(fn=fn)
    for name, fn in [("code", _cmd_code), ("simulate", _cmd_simulate)]:
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--strategy", choices=["cyclic", "partial-clique"], default="cyclic")
        sp.add_argument("--mode", choices=["scalar", "vector"], default="scalar")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(fn=fn)
    return p


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except (InstanceError, enumeration.CapExceeded, lp.NodeLimitExceeded,
            analysis.PreconditionError, coding.ScheduleError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
