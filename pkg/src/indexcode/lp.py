"""Exact-arithmetic linear programming over `fractions.Fraction`.

A two-phase primal simplex with Bland's rule (guaranteed termination) plus
a deterministic branch-and-bound layer for integer variables.  Everything
is exact: optimal values, primal solutions, and dual certificates are
rational numbers with no tolerance anywhere.

Sign conventions for the reported certificate (see `verify_certificate`):
duals are shadow prices in the problem's own sense, i.e. the derivative of
the optimal value with respect to the row's right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

DEFAULT_NODE_LIMIT = 10**6


class DimensionError(ValueError):
    """Row length or bounds length disagrees with the variable count."""


class NodeLimitExceeded(RuntimeError):
    """Branch-and-bound exhausted its node budget."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str  # "<=", ">=" or "="
    rhs: Fraction
    name: str = ""


@dataclass
class LinearProgram:
    """max/min c.x subject to linear rows and per-variable bounds."""

    sense: str  # "max" or "min"
    objective: tuple[Fraction, ...]
    constraints: list[Constraint] = field(default_factory=list)
    lower: tuple[Fraction, ...] = ()
    upper: tuple[Fraction | None, ...] = ()  # None = unbounded above
    integer: tuple[bool, ...] = ()
    var_names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.objective)
        self.objective = tuple(_frac(c) for c in self.objective)
        if not self.lower:
            self.lower = (Fraction(0),) * n
        if not self.upper:
            self.upper = (None,) * n
        if not self.integer:
            self.integer = (False,) * n
        if not self.var_names:
            self.var_names = tuple(f"x{j}" for j in range(n))
        self.lower = tuple(_frac(b) for b in self.lower)
        self.upper = tuple(None if b is None else _frac(b) for b in self.upper)
        if not (n == len(self.lower) == len(self.upper) == len(self.integer) == len(self.var_names)):
            raise DimensionError("bounds/flags/names must match the variable count")
        for lo, hi in zip(self.lower, self.upper):
            if hi is not None and lo > hi:
                raise DimensionError(f"inconsistent bounds: {lo} > {hi}")
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise DimensionError(f"row {c.name!r} has {len(c.coeffs)} coefficients, expected {n}")
            if c.rel not in ("<=", ">=", "="):
                raise DimensionError(f"unknown relation {c.rel!r}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add_row(self, coeffs, rel, rhs, name=""):
        self.constraints.append(
            Constraint(tuple(_frac(c) for c in coeffs), rel, _frac(rhs), name)
        )


@dataclass
class SolveResult:
    status: str
    objective: Fraction | None
    primal: tuple[Fraction, ...] = ()
    row_duals: tuple[Fraction, ...] = ()
    upper_bound_duals: tuple[Fraction | None, ...] = ()
    reduced_costs: tuple[Fraction, ...] = ()
    branch_count: int = 0
    lp: LinearProgram | None = None

    def primal_by_name(self) -> dict[str, Fraction]:
        return dict(zip(self.lp.var_names, self.primal))

    def dual_by_name(self) -> dict[str, Fraction]:
        return {c.name: y for c, y in zip(self.lp.constraints, self.row_duals)}


def _pivot(tab, basis, r, c):
    """In-place pivot of the dense Fraction tableau on (row r, column c)."""
    row = tab[r]
    piv = row[c]
    if piv != 1:
        inv = 1 / piv
        tab[r] = row = [v * inv for v in row]
    for i, other in enumerate(tab):
        if i != r and other[c] != 0:
            f = other[c]
            tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(tab, basis, cost, banned):
    """Minimize, Bland's rule.  `tab` rows are [a_0..a_{n-1} | b]; `cost` is
    the reduced-cost row [cbar_0..cbar_{n-1} | -obj].  Returns status."""
    ncols = len(cost) - 1
    while True:
        enter = -1
        for j in range(ncols):
            if j not in banned and cost[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        # Ratio test, Bland tie-break on smallest basis variable index.
        leave = -1
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)
        f = cost[enter]
        if f != 0:
            row = tab[leave]
            for j in range(len(cost)):
                cost[j] -= f * row[j]


def solve_lp(lp: LinearProgram, _bound_overrides=None) -> SolveResult:
    """Exact optimum of the LP relaxation (integrality flags ignored).

    Returns primal values, the objective, and a full dual certificate: one
    shadow price per constraint row, one per finite upper bound, and the
    reduced cost of every variable (the lower-bound multiplier).
    """
    n = lp.num_vars
    lower = list(lp.lower)
    upper = list(lp.upper)
    if _bound_overrides:
        for j, (lo, hi) in _bound_overrides.items():
            if lo is not None:
                lower[j] = max(lower[j], lo)
            if hi is not None:
                upper[j] = hi if upper[j] is None else min(upper[j], hi)
            if upper[j] is not None and lower[j] > upper[j]:
                return SolveResult(INFEASIBLE, None, lp=lp)

    minimize = lp.sense == "min"
    c = [cj if minimize else -cj for cj in lp.objective]
    const = sum(cj * lo for cj, lo in zip(c, lower))

    # Rows: original constraints (shifted by lower bounds), then one
    # upper-bound row x_j <= hi_j - lo_j per finite upper bound.
    rows = []  # (coeffs dict, rel, rhs, kind, key)
    for i, con in enumerate(lp.constraints):
        rhs = con.rhs - sum(a * lo for a, lo in zip(con.coeffs, lower))
        rows.append((dict((j, a) for j, a in enumerate(con.coeffs) if a != 0), con.rel, rhs,
                     "row", i))
    for j in range(n):
        if upper[j] is not None:
            rows.append(({j: Fraction(1)}, "<=", upper[j] - lower[j], "ub", j))

    m = len(rows)
    # Column layout: structural 0..n-1, then one aux (slack/surplus) per
    # inequality row, then one artificial per row that needs it.
    aux_col = {}
    ncols = n
    for i, (_, rel, _, _, _) in enumerate(rows):
        if rel in ("<=", ">="):
            aux_col[i] = ncols
            ncols += 1
    art_col = {}
    flipped = [False] * m
    need_art = []
    for i, (_, rel, rhs, _, _) in enumerate(rows):
        neg = rhs < 0
        flipped[i] = neg
        eff_rel = rel
        if neg:
            eff_rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        if eff_rel != "<=":
            need_art.append(i)
    for i in need_art:
        art_col[i] = ncols
        ncols += 1

    tab = []
    basis = [-1] * m
    for i, (coeffs, rel, rhs, _, _) in enumerate(rows):
        row = [Fraction(0)] * (ncols + 1)
        sign = -1 if flipped[i] else 1
        for j, a in coeffs.items():
            row[j] = sign * a
        row[-1] = sign * rhs
        if i in aux_col:
            row[aux_col[i]] = Fraction(sign if rel == "<=" else -sign)
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis[i] = art_col[i]
        else:
            basis[i] = aux_col[i]
        tab.append(row)

    arts = set(art_col.values())
    if arts:
        # Phase 1: minimize the sum of artificials.
        cost = [Fraction(0)] * (ncols + 1)
        for i in need_art:
            for j in range(ncols + 1):
                cost[j] -= tab[i][j]
        for a in arts:
            cost[a] = Fraction(0)
        status = _simplex(tab, basis, cost, banned=set())
        assert status == OPTIMAL  # phase 1 is always bounded below by 0
        if -cost[-1] != 0:
            return SolveResult(INFEASIBLE, None, lp=lp)
        # Drive artificials out of the basis where possible.
        for i in range(m):
            if basis[i] in arts:
                enter = next((j for j in range(n) if j not in arts and tab[i][j] != 0), None)
                if enter is None:
                    enter = next((j for j in range(ncols) if j not in arts and tab[i][j] != 0),
                                 None)
                if enter is not None:
                    _pivot(tab, basis, i, enter)

    # Phase 2: reduced costs of the true objective against the current basis.
    cost = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        cost[j] = c[j]
    for i in range(m):
        cb = c[basis[i]] if basis[i] < n else Fraction(0)
        if cb != 0:
            for j in range(ncols + 1):
                cost[j] -= cb * tab[i][j]
    status = _simplex(tab, basis, cost, banned=arts)
    if status == UNBOUNDED:
        return SolveResult(UNBOUNDED, None, lp=lp)

    shifted = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            shifted[basis[i]] = tab[i][-1]
    primal = tuple(x + lo for x, lo in zip(shifted, lower))
    obj_min = cost[-1] * -1 + const  # internal minimized objective
    objective = obj_min if minimize else -obj_min

    # Internal duals y_i (for the minimized problem) read off aux/artificial
    # reduced-cost entries, then converted to shadow prices in lp.sense.
    sense_flip = Fraction(1) if minimize else Fraction(-1)
    row_duals = [Fraction(0)] * len(lp.constraints)
    ub_duals: list[Fraction | None] = [None] * n
    for i, (_, rel, _, kind, key) in enumerate(rows):
        if i in aux_col:
            # Row negation and slack orientation flip together, so the
            # original-row dual depends only on the relation.
            cb = cost[aux_col[i]]
            y = -cb if rel == "<=" else cb
        else:
            y = -cost[art_col[i]]
            if flipped[i]:
                y = -y
        y = y * sense_flip
        if kind == "row":
            row_duals[key] = y
        else:
            ub_duals[key] = y
    reduced = tuple(cost[j] * sense_flip for j in range(n))
    return SolveResult(
        OPTIMAL,
        objective,
        primal,
        tuple(row_duals),
        tuple(ub_duals),
        reduced,
        lp=lp,
    )


def verify_certificate(lp: LinearProgram, res: SolveResult) -> bool:
    """Check the primal/dual pair exactly: feasibility, complementary
    slackness, dual stationarity, and strong duality.  No tolerances."""
    if res.status != OPTIMAL:
        return False
    x = res.primal
    y = res.row_duals
    u = res.upper_bound_duals
    r = res.reduced_costs
    sgn = 1 if lp.sense == "min" else -1  # internal minimization sign
    # Primal feasibility + complementary slackness on rows.
    for con, yi in zip(lp.constraints, y):
        lhs = sum(a * xj for a, xj in zip(con.coeffs, x))
        if con.rel == "<=" and lhs > con.rhs:
            return False
        if con.rel == ">=" and lhs < con.rhs:
            return False
        if con.rel == "=" and lhs != con.rhs:
            return False
        if yi != 0 and lhs != con.rhs:
            return False
        # Dual sign: for a max problem, <= rows have y >= 0, >= rows y <= 0.
        if con.rel == "<=" and sgn * yi > 0:
            return False
        if con.rel == ">=" and sgn * yi < 0:
            return False
    dual_obj = sum(yi * con.rhs for con, yi in zip(lp.constraints, y))
    for j in range(lp.num_vars):
        lo, hi = lp.lower[j], lp.upper[j]
        if x[j] < lo or (hi is not None and x[j] > hi):
            return False
        uj = u[j] if u[j] is not None else Fraction(0)
        if uj != 0 and (hi is None or x[j] != hi):
            return False
        if sgn * uj > 0:
            return False
        # Stationarity: c_j = sum_i y_i a_ij + u_j + r_j, with r_j the
        # lower-bound multiplier, complementary to x_j > lo_j.
        aj = sum(yi * con.coeffs[j] for con, yi in zip(lp.constraints, y))
        if lp.objective[j] != aj + uj + r[j]:
            return False
        if r[j] != 0 and x[j] != lo:
            return False
        if sgn * r[j] < 0:
            return False
        dual_obj += uj * (hi if hi is not None else 0) + r[j] * lo
    return dual_obj == res.objective


def solve_ilp(lp: LinearProgram, node_limit: int = DEFAULT_NODE_LIMIT) -> SolveResult:
    """Exact branch-and-bound on the rational LP relaxation.

    Deterministic: branch on the lowest-index fractional integral variable,
    explore the floor branch first (depth-first).
    """
    best: SolveResult | None = None
    nodes = 0
    maximize = lp.sense == "max"
    stack = [{}]
    while stack:
        overrides = stack.pop()
        nodes += 1
        if nodes > node_limit:
            raise NodeLimitExceeded(f"branch-and-bound exceeded {node_limit} nodes")
        res = solve_lp(lp, _bound_overrides=overrides)
        if res.status == UNBOUNDED:
            return SolveResult(UNBOUNDED, None, branch_count=nodes, lp=lp)
        if res.status != OPTIMAL:
            continue
        if best is not None:
            if maximize and res.objective <= best.objective:
                continue
            if not maximize and res.objective >= best.objective:
                continue
        frac_j = next(
            (j for j in range(lp.num_vars)
             if lp.integer[j] and res.primal[j].denominator != 1),
            None,
        )
        if frac_j is None:
            best = res
            continue
        v = res.primal[frac_j]
        lo_ov, hi_ov = overrides.get(frac_j, (None, None))
        floor_branch = dict(overrides)
        floor_branch[frac_j] = (lo_ov, Fraction(v.numerator // v.denominator))
        ceil_branch = dict(overrides)
        ceil_branch[frac_j] = (Fraction(v.numerator // v.denominator + 1), hi_ov)
        # LIFO stack: push ceil first so the floor branch is explored first.
        stack.append(ceil_branch)
        stack.append(floor_branch)
    if best is None:
        return SolveResult(INFEASIBLE, None, branch_count=nodes, lp=lp)
    return SolveResult(
        OPTIMAL, best.objective, best.primal, branch_count=nodes, lp=lp
    )


def to_lp_format(lp: LinearProgram, name="prog") -> str:
    """Dump in CPLEX-style LP text format for external cross-checking."""
    out = [f"\\ {name}", "Maximize" if lp.sense == "max" else "Minimize"]
    def expr(coeffs):
        terms = []
        for cj, vn in zip(coeffs, lp.var_names):
            if cj == 0:
                continue
            sign = "+" if cj >= 0 else "-"
            terms.append(f"{sign} {abs(cj)} {vn}")
        return " ".join(terms) if terms else "0 " + lp.var_names[0]
    out.append(" obj: " + expr(lp.objective))
    out.append("Subject To")
    for i, con in enumerate(lp.constraints):
        rel = {"<=": "<=", ">=": ">=", "=": "="}[con.rel]
        out.append(f" {con.name or f'c{i}'}: " + expr(con.coeffs) + f" {rel} {con.rhs}")
    out.append("Bounds")
    for j, vn in enumerate(lp.var_names):
        hi = "+inf" if lp.upper[j] is None else str(lp.upper[j])
        out.append(f" {lp.lower[j]} <= {vn} <= {hi}")
    ints = [vn for vn, f in zip(lp.var_names, lp.integer) if f]
    if ints:
        out.append("General")
        out.append(" " + " ".join(ints))
    out.append("End")
    return "\n".join(out) + "\n"
