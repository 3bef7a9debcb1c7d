"""Translate (foods, requirements, scenario) into an LP and package the diet.

One LP variable per food in units of 100 g/day with the food's price as its
objective coefficient; energy is an equality row, every other nutrient rule
contributes a >= row for its lower bound and a <= row for its upper bound,
and scenarios append food-group energy rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    FINE_GROUPS,
    ConstraintKind,
    FoodGroupId,
    FoodItem,
    NutrientId,
    RequirementSet,
    ScenarioKind,
    ScenarioSpec,
    group_members,
    scale_group_targets,
)
from .lp import DEFAULT_TOL, IterationLimitError, LpModel, LpStatus, Sense, solve_lp

__all__ = [
    "DietSolution",
    "build_diet_lp",
    "solve_diet",
    "compute_group_energy",
    "IterationLimitError",
]


@dataclass(frozen=True)
class DietSolution:
    """One solved (country, subgroup, scenario) cell.

    ``quantities_g`` maps food id to grams/day (foods at zero are omitted);
    it is empty unless the status is optimal.
    """

    country: str
    subgroup_id: str
    scenario: ScenarioKind
    status: LpStatus
    quantities_g: dict[str, float]
    cost_ppp_per_day: Optional[float]
    nutrient_totals: dict[NutrientId, float]
    group_energy_kcal: dict[FoodGroupId, float]


def _group_energy_row(foods: Sequence[FoodItem], group: FoodGroupId) -> np.ndarray:
    members = set(group_members(group))
    return np.array(
        [f.kcal_per_100g if f.group in members else 0.0 for f in foods]
    )


def build_diet_lp(
    foods: Sequence[FoodItem],
    rs: RequirementSet,
    scenario: ScenarioSpec,
) -> LpModel:
    """Assemble the cost-minimizing LP for one subgroup in one country."""
    if not foods:
        raise ValueError("food list is empty")
    countries = {f.country for f in foods}
    if len(countries) > 1:
        raise ValueError(f"food list spans countries: {sorted(countries)}")

    c = np.array([f.price_ppp_per_100g for f in foods])
    rows: list[np.ndarray] = []
    senses: list[Sense] = []
    b: list[float] = []
    warnings: list[str] = []

    def add_row(coefs: np.ndarray, sense: Sense, rhs: float) -> None:
        rows.append(coefs)
        senses.append(sense)
        b.append(rhs)

    energy_row = np.array([f.kcal_per_100g for f in foods])
    add_row(energy_row, Sense.EQ, rs.energy_target_kcal)

    for constraint in sorted(rs.constraints, key=lambda c: c.nutrient.value):
        if constraint.nutrient is NutrientId.ENERGY:
            continue
        coefs = np.array(
            [f.composition.get(constraint.nutrient, 0.0) for f in foods]
        )
        if constraint.lower is not None:
            add_row(coefs, Sense.GE, constraint.lower)
        if constraint.upper is not None:
            add_row(coefs, Sense.LE, constraint.upper)

    def add_group_lower(group: FoodGroupId, kcal: float) -> None:
        coefs = _group_energy_row(foods, group)
        if kcal > 0 and not np.any(coefs):
            warnings.append(
                f"structurally infeasible: no {group.value} foods but the group "
                f"needs at least {kcal:g} kcal"
            )
        add_row(coefs, Sense.GE, kcal)

    if scenario.kind is ScenarioKind.CONA_SSFV:
        scaled = scale_group_targets(
            scenario.hdb_targets,
            scenario.reference_energy_kcal,
            rs.group.energy_kcal_per_day,
        )
        for group in (FoodGroupId.STARCHY_STAPLES, FoodGroupId.FRUITS_VEGETABLES):
            add_group_lower(group, scaled[group])
    elif scenario.kind is ScenarioKind.CONA_SUA:
        factor = 1.0
        if scenario.sua_reference_energy_kcal is not None:
            factor = rs.group.energy_kcal_per_day / scenario.sua_reference_energy_kcal
        for group in sorted(scenario.group_bounds, key=lambda g: g.value):
            lo, hi = scenario.group_bounds[group]
            add_group_lower(group, lo * factor)
            add_row(_group_energy_row(foods, group), Sense.LE, hi * factor)

    return LpModel(
        c=c,
        A=np.vstack(rows),
        senses=tuple(senses),
        b=np.array(b),
        warnings=tuple(warnings),
    )


def solve_diet(
    foods: Sequence[FoodItem],
    rs: RequirementSet,
    scenario: ScenarioSpec,
    tol_feas: float = DEFAULT_TOL,
    tol_opt: float = DEFAULT_TOL,
) -> DietSolution:
    """Build and solve the diet LP; non-optimal statuses carry empty baskets.

    An exhausted pivot budget raises :class:`IterationLimitError` so callers
    can distinguish a run error from infeasibility.
    """
    model = build_diet_lp(foods, rs, scenario)
    lp_solution = solve_lp(model, tol_feas=tol_feas, tol_opt=tol_opt)
    if lp_solution.status is not LpStatus.OPTIMAL:
        return DietSolution(
            country=foods[0].country,
            subgroup_id=rs.group.id,
            scenario=scenario.kind,
            status=lp_solution.status,
            quantities_g={},
            cost_ppp_per_day=None,
            nutrient_totals={},
            group_energy_kcal={g: 0.0 for g in FINE_GROUPS},
        )

    quantities = {
        food.id: float(x * 100.0)
        for food, x in zip(foods, lp_solution.x)
        if x > 1e-12
    }
    totals: dict[NutrientId, float] = {}
    group_energy = {g: 0.0 for g in FINE_GROUPS}
    for food, x in zip(foods, lp_solution.x):
        if x <= 1e-12:
            continue
        for nutrient, per_100g in food.composition.items():
            totals[nutrient] = totals.get(nutrient, 0.0) + float(x * per_100g)
        group_energy[food.group] += float(x * food.kcal_per_100g)
    cost = sum(quantities[f.id] / 100.0 * f.price_ppp_per_100g for f in foods if f.id in quantities)
    return DietSolution(
        country=foods[0].country,
        subgroup_id=rs.group.id,
        scenario=scenario.kind,
        status=LpStatus.OPTIMAL,
        quantities_g=quantities,
        cost_ppp_per_day=float(cost),
        nutrient_totals=totals,
        group_energy_kcal=group_energy,
    )


def compute_group_energy(
    solution: DietSolution, foods: Sequence[FoodItem]
) -> dict[FoodGroupId, float]:
    """Recompute per-group kcal/day from a solution's quantities."""
    by_id = {f.id: f for f in foods}
    out = {g: 0.0 for g in FINE_GROUPS}
    for food_id, grams in solution.quantities_g.items():
        food = by_id.get(food_id)
        if food is None:
            raise ValueError(f"unknown food id {food_id!r}")
        out[food.group] += grams / 100.0 * food.kcal_per_100g
    return out
