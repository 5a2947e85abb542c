"""Exact rational linear programming over nonnegative variables.

Two-phase primal simplex on a dense tableau of `fractions.Fraction`.
Phase 1 minimizes the sum of artificial variables to find a basic feasible
solution; phase 2 optimizes the real objective from there.  Bland's rule
(lowest eligible index enters, lowest-index basic variable breaks ratio
ties) guarantees termination, so the solver needs no perturbation and never
touches floating point.

Rows are weak relations only (<=, =, >=).  Callers that need strict
inequalities reduce them to slack maximization on top of this solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

LE = "<="
EQ = "="
GE = ">="

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"

MINIMIZE = "min"
MAXIMIZE = "max"


@dataclass(frozen=True)
class LinearConstraintRow:
    """Sparse row: sum(coeffs[j] * x_j) relation rhs."""

    coeffs: Mapping[int, Fraction]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in (LE, EQ, GE):
            raise ValueError(f"bad relation {self.relation!r}")

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * x[j] for j, c in self.coeffs.items()), ZERO)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = self.evaluate(x)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    rows: tuple[LinearConstraintRow, ...]
    objective: Mapping[int, Fraction] = field(default_factory=dict)
    direction: str = MINIMIZE
    nonnegative: bool = True

    def __post_init__(self):
        if self.direction not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"bad direction {self.direction!r}")
        if not self.nonnegative:
            raise ValueError("free variables are not supported")
        for row in self.rows:
            for j in row.coeffs:
                if not 0 <= j < self.num_vars:
                    raise ValueError(f"row variable index {j} out of range")
        for j in self.objective:
            if not 0 <= j < self.num_vars:
                raise ValueError(f"objective variable index {j} out of range")


@dataclass(frozen=True)
class LPOutcome:
    status: str
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    prow = tableau[row]
    for i, trow in enumerate(tableau):
        if i == row:
            continue
        factor = trow[col]
        if factor:
            tableau[i] = [a - factor * b for a, b in zip(trow, prow)]
    basis[row] = col


def _price_out(
    tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]
) -> list[Fraction]:
    """Reduced-cost row (with objective constant in the last slot)."""
    reduced = list(cost) + [ZERO]
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            reduced = [r - cb * t for r, t in zip(reduced, tableau[i])]
    return reduced


def _simplex(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    allowed: int,
) -> tuple[str, list[Fraction]]:
    """Minimize cost over the tableau in place; Bland's rule throughout.

    `allowed` bounds the columns eligible to enter (excludes artificials in
    phase 2).  Returns (status, reduced-cost row).
    """
    reduced = _price_out(tableau, basis, cost)
    while True:
        entering = -1
        for j in range(allowed):
            if reduced[j] < 0:
                entering = j
                break
        if entering < 0:
            return OPTIMAL, reduced
        leaving = -1
        best = None
        for i, trow in enumerate(tableau):
            a = trow[entering]
            if a > 0:
                ratio = trow[-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return UNBOUNDED, reduced
        _pivot(tableau, basis, leaving, entering)
        factor = reduced[entering]
        if factor:
            prow = tableau[leaving]
            reduced = [r - factor * p for r, p in zip(reduced, prow)]


def solve(lp: LinearProgram) -> LPOutcome:
    """Exact optimum of lp over x >= 0, with a rational witness when optimal."""
    n = lp.num_vars

    # Canonical rows: dense coefficients, rhs >= 0.
    dense_rows: list[list[Fraction]] = []
    relations: list[str] = []
    rhs: list[Fraction] = []
    for row in lp.rows:
        coeffs = [ZERO] * n
        for j, c in row.coeffs.items():
            coeffs[j] += c
        rel = row.relation
        b = row.rhs
        if b < 0:
            coeffs = [-c for c in coeffs]
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        dense_rows.append(coeffs)
        relations.append(rel)
        rhs.append(b)

    m = len(dense_rows)
    n_slack = sum(1 for r in relations if r in (LE, GE))
    n_art = sum(1 for r in relations if r in (GE, EQ))
    width = n + n_slack + n_art

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    slack_at = n
    art_at = n + n_slack
    for i in range(m):
        full = dense_rows[i] + [ZERO] * (n_slack + n_art) + [rhs[i]]
        if relations[i] == LE:
            full[slack_at] = ONE
            basis.append(slack_at)
            slack_at += 1
        elif relations[i] == GE:
            full[slack_at] = -ONE
            slack_at += 1
            full[art_at] = ONE
            basis.append(art_at)
            art_at += 1
        else:
            full[art_at] = ONE
            basis.append(art_at)
            art_at += 1
        tableau.append(full)

    # Phase 1: drive artificials to zero.
    if n_art:
        cost1 = [ZERO] * width
        for j in range(n + n_slack, width):
            cost1[j] = ONE
        status, reduced = _simplex(tableau, basis, cost1, allowed=width)
        assert status == OPTIMAL  # the phase-1 objective is bounded below by 0
        if -reduced[-1] != 0:
            return LPOutcome(INFEASIBLE)
        # Pivot remaining artificials out of the basis; drop redundant rows.
        for i in reversed(range(len(basis))):
            if basis[i] >= n + n_slack:
                col = next(
                    (j for j in range(n + n_slack) if tableau[i][j] != 0), None
                )
                if col is None:
                    del tableau[i]
                    del basis[i]
                else:
                    _pivot(tableau, basis, i, col)

    # Phase 2: optimize the real objective over structural + slack columns.
    sign = ONE if lp.direction == MINIMIZE else -ONE
    cost2 = [ZERO] * width
    for j, c in lp.objective.items():
        cost2[j] = sign * c
    status, _ = _simplex(tableau, basis, cost2, allowed=n + n_slack)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)

    witness = [ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            witness[b] = tableau[i][-1]
    value = sum((c * witness[j] for j, c in lp.objective.items()), ZERO)
    return LPOutcome(OPTIMAL, value=value, witness=tuple(witness))


def feasible(rows: Sequence[LinearConstraintRow], num_vars: int) -> bool:
    """True iff the system (with x >= 0) has a rational solution."""
    lp = LinearProgram(num_vars=num_vars, rows=tuple(rows))
    return solve(lp).status == OPTIMAL
