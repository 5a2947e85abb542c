"""Probabilistic satisfiability and tight conditional-probability bounds.

A probabilistic interpretation is a distribution over the 2^n worlds of the
session vocabulary; world w's probability is LP variable y_w.  A constraint
(psi | phi)[l, u] is true under Pr iff Pr(phi) = 0 or Pr(psi | phi) lies in
[l, u], which linearizes to the two weak rows

    sum_{w |= psi & phi} y_w  -  l * sum_{w |= phi} y_w  >=  0
    sum_{w |= psi & phi} y_w  -  u * sum_{w |= phi} y_w  <=  0

satisfied by exactly the distributions that satisfy the constraint (the
Pr(phi) = 0 branch zeroes both sides).

Tight bounds on Pr(psi | phi) are computed after the change of variables
y = t * Pr with t = 1 / Pr(phi): the member rows are homogeneous, so the
models with Pr(phi) > 0 correspond (up to scaling) to the solutions of the
homogeneous system plus sum_{w |= phi} y_w = 1, over which the objective
sum_{w |= psi & phi} y_w is linear and bounded by [0, 1].  Strict regions
(needed to decide violated constraints) are reduced to slack maximization;
their inf/sup equal the optimum over the weak closure because the closure
of a nonempty strict sub-region of a polyhedron is the whole polyhedron.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import ratlp
from .constraints import ConditionalConstraint
from .formula import And, Formula, Not, truth_mask, _iter_bits
from .ratlp import EQ, GE, LE, LinearConstraintRow, LinearProgram, OPTIMAL

ZERO = Fraction(0)
ONE = Fraction(1)

PROPER = "proper"
VACUOUS = "vacuous"
UNSAT = "unsat"
UNDEFINED = "undefined"

LOW = "low"
HIGH = "high"


@dataclass(frozen=True)
class ConstraintSystem:
    """Constraints interpreted conjunctively over a shared vocabulary.

    Strict and defeasible members are not distinguished here: truth in a
    probabilistic interpretation is the same for both.  `pinned` lists
    formulas forced to probability 1, used when verifying defaults.
    """

    vocab: tuple[str, ...]
    members: tuple[ConditionalConstraint, ...] = ()
    pinned: tuple[Formula, ...] = ()

    @property
    def num_worlds(self) -> int:
        return 1 << len(self.vocab)


@dataclass(frozen=True)
class Interval:
    """A tight answer [lower, upper] or one of the special statuses.

    The vacuous answer keeps the canonical shape [1, 0]: no relevant model
    gives the query antecedent positive probability.
    """

    status: str
    lower: Fraction | None = None
    upper: Fraction | None = None

    def __post_init__(self):
        if self.status == PROPER:
            if not (0 <= self.lower <= self.upper <= 1):
                raise ValueError(f"improper bounds [{self.lower},{self.upper}]")
        elif self.status == VACUOUS:
            if (self.lower, self.upper) != (ONE, ZERO):
                raise ValueError("vacuous interval must be [1,0]")
        elif self.status in (UNSAT, UNDEFINED):
            if self.lower is not None or self.upper is not None:
                raise ValueError(f"{self.status} interval carries no bounds")
        else:
            raise ValueError(f"bad status {self.status!r}")

    @classmethod
    def proper(cls, lower: Fraction, upper: Fraction) -> "Interval":
        return cls(PROPER, Fraction(lower), Fraction(upper))

    @classmethod
    def vacuous(cls) -> "Interval":
        return cls(VACUOUS, ONE, ZERO)

    @classmethod
    def unsat(cls) -> "Interval":
        return cls(UNSAT)

    @classmethod
    def undefined(cls) -> "Interval":
        return cls(UNDEFINED)

    def __str__(self):
        if self.status == PROPER:
            return f"[{self.lower}, {self.upper}]"
        if self.status == VACUOUS:
            return "[1, 0]"
        return self.status


def linearize(
    c: ConditionalConstraint, vocab: tuple[str, ...]
) -> tuple[LinearConstraintRow, LinearConstraintRow]:
    """The two weak rows whose joint solutions are exactly c's models."""
    both = truth_mask(And(c.consequent, c.antecedent), vocab)
    ant = truth_mask(c.antecedent, vocab)
    lower_row = {}
    upper_row = {}
    for w in _iter_bits(ant):
        hit = ant >> w & 1 and both >> w & 1
        lower_row[w] = (ONE - c.lower) if hit else -c.lower
        upper_row[w] = (ONE - c.upper) if hit else -c.upper
    return (
        LinearConstraintRow(lower_row, GE, ZERO),
        LinearConstraintRow(upper_row, LE, ZERO),
    )


def system_rows(sys: ConstraintSystem) -> list[LinearConstraintRow]:
    """Homogeneous rows for all members and pinned antecedents.

    Pinning Pr(pi) = 1 is encoded homogeneously as zero mass outside pi,
    which is exactly the linearization of (pi | true)[1,1]; the homogeneous
    form survives the tight-bound change of variables unchanged.
    """
    rows: list[LinearConstraintRow] = []
    for c in sys.members:
        rows.extend(linearize(c, sys.vocab))
    for pi in sys.pinned:
        outside = truth_mask(Not_(pi), sys.vocab)
        rows.append(
            LinearConstraintRow({w: ONE for w in _iter_bits(outside)}, EQ, ZERO)
        )
    return rows


def Not_(f: Formula):
    from .formula import Not

    return Not(f)


def _normalization(num_worlds: int) -> LinearConstraintRow:
    return LinearConstraintRow({w: ONE for w in range(num_worlds)}, EQ, ONE)


def satisfiable(sys: ConstraintSystem) -> bool:
    """True iff some probability distribution satisfies every member."""
    rows = system_rows(sys)
    rows.append(_normalization(sys.num_worlds))
    return ratlp.feasible(rows, sys.num_worlds)


def conditional_range(
    hom_rows: Sequence[LinearConstraintRow],
    query: Sequence[Formula],
    vocab: tuple[str, ...],
    want_witnesses: bool = False,
):
    """Exact [inf, sup] of Pr(psi | phi) over the distributions satisfying
    the homogeneous rows, restricted to Pr(phi) > 0.

    Returns None when no such distribution exists; otherwise (lo, hi) or,
    with witnesses, (lo, hi, lo_model, hi_model) where the models are
    renormalized rational distributions attaining the endpoints.
    """
    psi, phi = query
    n = 1 << len(vocab)
    ant = truth_mask(phi, vocab)
    both = truth_mask(And(psi, phi), vocab)
    rows = list(hom_rows)
    rows.append(LinearConstraintRow({w: ONE for w in _iter_bits(ant)}, EQ, ONE))
    objective = {w: ONE for w in _iter_bits(both)}

    lo_out = ratlp.solve(LinearProgram(n, tuple(rows), objective, ratlp.MINIMIZE))
    if lo_out.status != OPTIMAL:
        # Infeasible: no model gives phi positive probability.  Unbounded is
        # impossible: 0 <= objective <= sum_{w |= phi} y_w = 1.
        assert lo_out.status == ratlp.INFEASIBLE
        return None
    hi_out = ratlp.solve(LinearProgram(n, tuple(rows), objective, ratlp.MAXIMIZE))
    assert hi_out.status == OPTIMAL
    if not want_witnesses:
        return lo_out.value, hi_out.value

    def renormalize(y: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        total = sum(y, ZERO)
        return tuple(v / total for v in y)

    return (
        lo_out.value,
        hi_out.value,
        renormalize(lo_out.witness),
        renormalize(hi_out.witness),
    )


def tight_consequence(sys: ConstraintSystem, query: Sequence[Formula]) -> Interval:
    """Tight logical consequence of the system for (psi | phi).

    unsat when the system has no model at all; the vacuous [1, 0] when it
    has models but none with Pr(phi) > 0; otherwise the exact attained
    [inf, sup] of Pr(psi | phi).
    """
    if not satisfiable(sys):
        return Interval.unsat()
    ans = conditional_range(system_rows(sys), query, sys.vocab)
    if ans is None:
        return Interval.vacuous()
    return Interval.proper(*ans)


def endpoint_models(
    sys: ConstraintSystem, query: Sequence[Formula]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None:
    """Rational distributions attaining the two endpoints, or None when the
    answer is not proper.  Each witness satisfies the system exactly."""
    if not satisfiable(sys):
        return None
    ans = conditional_range(system_rows(sys), query, sys.vocab, want_witnesses=True)
    if ans is None:
        return None
    return ans[2], ans[3]


# ------------------------------------------------------------------
# Strict inequalities: slack maximization and violation branches
# ------------------------------------------------------------------


def strictly_feasible(
    weak_rows: Sequence[LinearConstraintRow],
    strict_exprs: Sequence[Mapping[int, Fraction]],
    num_vars: int,
) -> bool:
    """True iff the weak rows plus `expr > 0` for every strict expression
    admit a solution (x >= 0).

    One shared slack eps replaces each strict row by expr >= eps; eps is
    capped at 1 and maximized.  A positive optimum is exactly strict
    feasibility of the joint system.
    """
    eps = num_vars
    rows = [
        LinearConstraintRow(dict(r.coeffs), r.relation, r.rhs) for r in weak_rows
    ]
    for expr in strict_exprs:
        coeffs = dict(expr)
        coeffs[eps] = coeffs.get(eps, ZERO) - ONE
        rows.append(LinearConstraintRow(coeffs, GE, ZERO))
    rows.append(LinearConstraintRow({eps: ONE}, LE, ONE))
    out = ratlp.solve(
        LinearProgram(num_vars + 1, tuple(rows), {eps: ONE}, ratlp.MAXIMIZE)
    )
    return out.status == OPTIMAL and out.value > 0


def violation_branch_rows(
    c: ConditionalConstraint, vocab: tuple[str, ...]
) -> tuple[tuple[str, tuple[dict[int, Fraction], ...]], ...]:
    """The alternative strict systems a distribution may satisfy to falsify c.

    Branch LOW:  Pr(phi) > 0  and  Pr(psi & phi) < l * Pr(phi)
    Branch HIGH: Pr(phi) > 0  and  Pr(psi & phi) > u * Pr(phi)

    Each branch is (tag, strict expressions required > 0).  l = 0 removes
    LOW and u = 1 removes HIGH; a constraint with bounds [0, 1] cannot be
    violated and yields no branches.
    """
    ant = truth_mask(c.antecedent, vocab)
    both = truth_mask(And(c.consequent, c.antecedent), vocab)
    pos_ant = {w: ONE for w in _iter_bits(ant)}
    branches = []
    if c.lower > 0:
        below = {}
        for w in _iter_bits(ant):
            below[w] = c.lower - (ONE if both >> w & 1 else ZERO)
        branches.append((LOW, (pos_ant, below)))
    if c.upper < 1:
        above = {}
        for w in _iter_bits(ant):
            above[w] = (ONE if both >> w & 1 else ZERO) - c.upper
        branches.append((HIGH, (dict(pos_ant), above)))
    return tuple(branches)


# ------------------------------------------------------------------
# Direct evaluation of distributions (used by tests and rank checks)
# ------------------------------------------------------------------


def probability_of(
    dist: Sequence[Fraction], f: Formula, vocab: tuple[str, ...]
) -> Fraction:
    mask = truth_mask(f, vocab)
    return sum((dist[w] for w in _iter_bits(mask)), ZERO)


def satisfies_constraint(
    dist: Sequence[Fraction], c: ConditionalConstraint, vocab: tuple[str, ...]
) -> bool:
    """Truth of c under an explicit distribution, straight from the
    definition: Pr(phi) = 0 or Pr(psi | phi) in [l, u]."""
    p_ant = probability_of(dist, c.antecedent, vocab)
    if p_ant == 0:
        return True
    p_both = probability_of(dist, And(c.consequent, c.antecedent), vocab)
    return c.lower * p_ant <= p_both <= c.upper * p_ant
