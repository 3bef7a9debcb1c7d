"""Dense two-phase primal simplex for small linear programs.

Solves ``min c.x  s.t.  A x {<=,=,>=} b,  x >= 0`` on a dense tableau.
Pricing is Dantzig (most negative reduced cost) and switches permanently to
Bland's rule after ``3 * (n + m)`` degenerate pivots, so every instance
terminates. At optimality the primal point and row duals are re-solved from
the final basis against the original data, which keeps feasibility residuals
and the duality gap at machine-precision scale rather than accumulating
tableau roundoff.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

DEFAULT_TOL = 1e-9
_PIVOT_TOL = 1e-10


class Sense(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class IterationLimitError(RuntimeError):
    """Raised when the pivot budget is exhausted; distinct from the statuses."""


@dataclass(frozen=True)
class LpModel:
    """min c.x subject to row senses and x >= 0; all storage is dense."""

    c: np.ndarray
    A: np.ndarray
    senses: tuple[Sense, ...]
    b: np.ndarray
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if A.ndim != 2:
            raise ValueError("A must be a 2-d array")
        m, n = A.shape
        if n < 1 or m < 1:
            raise ValueError("model needs at least one variable and one row")
        if c.shape != (n,):
            raise ValueError("c length must match the number of columns of A")
        if b.shape != (m,):
            raise ValueError("b length must match the number of rows of A")
        if len(self.senses) != m:
            raise ValueError("senses length must match the number of rows of A")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("model contains non-finite values")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "senses", tuple(Sense(s) for s in self.senses))

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def m(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: Optional[np.ndarray]
    objective: Optional[float]
    duals: Optional[np.ndarray]
    reduced_costs: Optional[np.ndarray]
    iterations: int


class _Tableau:
    """Mutable simplex state: rows, rhs, reduced-cost row, basis bookkeeping."""

    def __init__(self, T: np.ndarray, rhs: np.ndarray, basis: np.ndarray):
        self.T = T
        self.rhs = rhs
        self.basis = basis
        self.z: np.ndarray = np.zeros(T.shape[1])

    def set_costs(self, costs: np.ndarray) -> None:
        z = costs.astype(float).copy()
        for r, j in enumerate(self.basis):
            cj = costs[j]
            if cj != 0.0:
                z -= cj * self.T[r]
        self.z = z

    def pivot(self, row: int, col: int) -> None:
        piv = self.T[row, col]
        self.T[row] /= piv
        self.rhs[row] /= piv
        factors = self.T[:, col].copy()
        factors[row] = 0.0
        self.T -= np.outer(factors, self.T[row])
        self.rhs -= factors * self.rhs[row]
        zf = self.z[col]
        if zf != 0.0:
            self.z -= zf * self.T[row]
        self.basis[row] = col
        # keep the pivot column numerically exact
        self.T[:, col] = 0.0
        self.T[row, col] = 1.0
        self.z[col] = 0.0


def _choose_entering(z: np.ndarray, allowed: np.ndarray, bland: bool, tol: float) -> Optional[int]:
    candidates = np.flatnonzero(allowed & (z < -tol))
    if candidates.size == 0:
        return None
    if bland:
        return int(candidates[0])
    # Dantzig: most negative reduced cost, lowest index on ties.
    return int(candidates[np.argmin(z[candidates])])


def _choose_leaving(
    tab: _Tableau, col: int, bland: bool, tol_feas: float
) -> tuple[Optional[int], bool]:
    """Ratio test; returns (row, degenerate). Row is None when unbounded."""
    column = tab.T[:, col]
    eligible = np.flatnonzero(column > _PIVOT_TOL)
    if eligible.size == 0:
        return None, False
    ratios = tab.rhs[eligible] / column[eligible]
    rmin = ratios.min()
    tie_tol = 1e-12 * (1.0 + abs(rmin))
    ties = eligible[ratios <= rmin + tie_tol]
    if bland:
        # smallest basic-variable index among ties (anti-cycling guarantee)
        row = int(ties[np.argmin(tab.basis[ties])])
    else:
        row = int(ties[0])
    return row, bool(rmin <= tol_feas)


def solve_lp(
    model: LpModel,
    tol_feas: float = DEFAULT_TOL,
    tol_opt: float = DEFAULT_TOL,
    max_iters: int = 10_000,
    equilibrate: bool = False,
) -> LpSolution:
    """Solve the model; see module docstring for the algorithm and guarantees.

    Raises :class:`IterationLimitError` when the pivot budget runs out and
    ``ValueError`` on invalid inputs or tolerances.
    """
    if not (tol_feas > 0 and tol_opt > 0):
        raise ValueError("tolerances must be positive")
    solution = _solve_once(model, tol_feas, tol_opt, max_iters, equilibrate, force_bland=False)
    if solution.status is LpStatus.OPTIMAL and not _certified(model, solution, tol_feas, tol_opt):
        # Rare numerical trouble: retry from scratch with Bland pricing and
        # row equilibration before giving up.
        solution = _solve_once(model, tol_feas, tol_opt, max_iters, True, force_bland=True)
        if not _certified(model, solution, tol_feas, tol_opt):
            raise ArithmeticError("simplex failed to certify an optimal basis")
    return solution


def _certified(model: LpModel, sol: LpSolution, tol_feas: float, tol_opt: float) -> bool:
    if sol.status is not LpStatus.OPTIMAL:
        return True
    scale = 1.0 + float(np.abs(model.b).max()) + float(np.abs(sol.objective))
    if _max_violation(model, sol.x) > tol_feas * scale:
        return False
    return duality_gap(model, sol) <= tol_opt * scale


def _max_violation(model: LpModel, x: np.ndarray) -> float:
    lhs = model.A @ x
    worst = 0.0
    for i, sense in enumerate(model.senses):
        if sense is Sense.LE:
            worst = max(worst, lhs[i] - model.b[i])
        elif sense is Sense.GE:
            worst = max(worst, model.b[i] - lhs[i])
        else:
            worst = max(worst, abs(lhs[i] - model.b[i]))
    if x.size:
        worst = max(worst, float(-x.min()))
    return worst


def _solve_once(
    model: LpModel,
    tol_feas: float,
    tol_opt: float,
    max_iters: int,
    equilibrate: bool,
    force_bland: bool,
) -> LpSolution:
    n, m = model.n, model.m
    row_scale = np.ones(m)
    A = model.A.copy()
    b = model.b.copy()
    if equilibrate:
        norms = np.abs(A).max(axis=1)
        nonzero = norms > 0
        row_scale[nonzero] = norms[nonzero]
        A /= row_scale[:, None]
        b /= row_scale

    # Standard form: append one slack (<=) or surplus (>=) column per
    # inequality row, then flip rows until the rhs is non-negative.
    slack_of_row = {}
    slack_cols = []
    for i, sense in enumerate(model.senses):
        if sense is not Sense.EQ:
            slack_of_row[i] = n + len(slack_cols)
            col = np.zeros(m)
            col[i] = 1.0 if sense is Sense.LE else -1.0
            slack_cols.append(col)
    A_std = np.hstack([A] + [col[:, None] for col in slack_cols]) if slack_cols else A.copy()
    n_std = A_std.shape[1]
    c_std = np.concatenate([model.c, np.zeros(n_std - n)])

    row_sign = np.ones(m)
    flip = b < 0
    A_std[flip] *= -1.0
    b = b.copy()
    b[flip] *= -1.0
    row_sign[flip] = -1.0

    # Phase 1: artificial basis on every row.
    T = np.hstack([A_std, np.eye(m)])
    rhs = b.copy()
    tab = _Tableau(T, rhs, np.arange(n_std, n_std + m))
    cost1 = np.concatenate([np.zeros(n_std), np.ones(m)])
    tab.set_costs(cost1)
    phase1_obj = float(rhs.sum())

    allowed = np.ones(n_std + m, dtype=bool)
    allowed[n_std:] = False  # artificials never re-enter

    state = {
        "iterations": 0,
        "degenerate": 0,
        "bland": force_bland,
        "switch_at": 3 * (n + m),
    }

    def run_phase(objective_allowed: np.ndarray) -> Optional[LpStatus]:
        while True:
            col = _choose_entering(tab.z, objective_allowed, state["bland"], tol_opt)
            if col is None:
                return None
            row, degenerate = _choose_leaving(tab, col, state["bland"], tol_feas)
            if row is None:
                return LpStatus.UNBOUNDED
            state["iterations"] += 1
            if state["iterations"] > max_iters:
                raise IterationLimitError(f"exceeded {max_iters} simplex iterations")
            if degenerate:
                state["degenerate"] += 1
                if state["degenerate"] > state["switch_at"]:
                    state["bland"] = True
            tab.pivot(row, col)

    phase1_allowed = allowed.copy()
    phase1_allowed[:n_std] = True
    status = run_phase(phase1_allowed)
    if status is LpStatus.UNBOUNDED:  # cannot happen: phase-1 objective >= 0
        raise ArithmeticError("phase-1 reported unbounded")
    phase1_obj = float(np.sum(cost1[tab.basis] * tab.rhs))
    if phase1_obj > tol_feas * (1.0 + float(np.abs(b).max())):
        return LpSolution(LpStatus.INFEASIBLE, None, None, None, None, state["iterations"])

    # Drive leftover artificials out of the basis; drop redundant rows.
    kept_rows = list(range(m))
    r = 0
    while r < len(tab.basis):
        if tab.basis[r] >= n_std:
            pivot_cols = np.flatnonzero(np.abs(tab.T[r, :n_std]) > _PIVOT_TOL)
            if pivot_cols.size:
                tab.pivot(r, int(pivot_cols[0]))
                r += 1
            else:
                tab.T = np.delete(tab.T, r, axis=0)
                tab.rhs = np.delete(tab.rhs, r)
                tab.basis = np.delete(tab.basis, r)
                del kept_rows[r]
        else:
            r += 1

    # Phase 2 on structural and slack columns only.
    tab.T = tab.T[:, :n_std]
    tab.set_costs(c_std)
    phase2_allowed = np.ones(n_std, dtype=bool)
    status = run_phase(phase2_allowed)
    iterations = state["iterations"]
    if status is LpStatus.UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED, None, None, None, None, iterations)

    # Re-solve the primal point and duals from the final basis against the
    # standardized data so residuals do not inherit tableau roundoff.
    basis = tab.basis.astype(int)
    B = A_std[np.ix_(kept_rows, basis)]
    try:
        x_basic = np.linalg.solve(B, b[kept_rows])
        x_basic += np.linalg.solve(B, b[kept_rows] - B @ x_basic)
        y_kept = np.linalg.solve(B.T, c_std[basis])
        y_kept += np.linalg.solve(B.T, c_std[basis] - B.T @ y_kept)
    except np.linalg.LinAlgError:
        x_basic, *_ = np.linalg.lstsq(B, b[kept_rows], rcond=None)
        y_kept, *_ = np.linalg.lstsq(B.T, c_std[basis], rcond=None)
    x_std = np.zeros(n_std)
    x_std[basis] = x_basic
    np.clip(x_std, 0.0, None, out=x_std)
    x = x_std[:n]

    duals = np.zeros(m)
    duals[kept_rows] = y_kept
    duals *= row_sign / row_scale

    reduced = model.c - model.A.T @ duals
    objective = float(model.c @ x)
    return LpSolution(LpStatus.OPTIMAL, x, objective, duals, reduced, iterations)


def duality_gap(model: LpModel, solution: LpSolution) -> float:
    """|c.x - b.y| for an optimal solution; raises on non-optimal status."""
    if solution.status is not LpStatus.OPTIMAL:
        raise ValueError("duality gap is defined only for optimal solutions")
    return float(abs(solution.objective - float(model.b @ solution.duals)))


# --- MPS export -------------------------------------------------------------
#
# Fixed MPS layout (1-based character columns):
#   field 1: 2-3, field 2: 5-12, field 3: 15-22,
#   field 4: 25-36, field 5: 40-47, field 6: 50-61.
# Objective row is named COST, rows R0000001.., columns X0000001..,
# one (row, value) pair per COLUMNS/RHS line, values %.10G.

_SENSE_CODE = {Sense.LE: "L", Sense.EQ: "E", Sense.GE: "G"}


def _mps_value(value: float) -> str:
    text = f"{value:.10G}"
    if len(text) > 12:
        text = f"{value:.5E}"
    return text


def _mps_line(f1: str = "", f2: str = "", f3: str = "", f4: str = "") -> str:
    line = f" {f1:<2} {f2:<8}  {f3:<8}  {f4:<12}"
    return line.rstrip()


def write_mps(model: LpModel, name: str = "DIETLP") -> str:
    """Render the model as fixed-format MPS text (x >= 0 is implicit)."""
    rows = [f"NAME          {name}", "ROWS", _mps_line("N", "COST")]
    row_names = [f"R{i + 1:07d}" for i in range(model.m)]
    for i, sense in enumerate(model.senses):
        rows.append(_mps_line(_SENSE_CODE[sense], row_names[i]))
    rows.append("COLUMNS")
    for j in range(model.n):
        col = f"X{j + 1:07d}"
        if model.c[j] != 0.0:
            rows.append(_mps_line("", col, "COST", _mps_value(model.c[j])))
        for i in range(model.m):
            if model.A[i, j] != 0.0:
                rows.append(_mps_line("", col, row_names[i], _mps_value(model.A[i, j])))
    rows.append("RHS")
    for i in range(model.m):
        if model.b[i] != 0.0:
            rows.append(_mps_line("", "RHS", row_names[i], _mps_value(model.b[i])))
    rows.append("ENDATA")
    return "\n".join(rows) + "\n"
