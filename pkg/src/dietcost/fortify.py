"""Fortification scenario transform over foods and prices.

Vehicle-tagged foods gain ``rate * level / 10`` of each fortified nutrient
per 100 g (levels are mg/kg) and the full vehicle premix cost per 100 g;
white-flour bread follows the wheat standards at the flour share. Inputs are
never mutated; an empty or fully filtered transform returns the foods
unchanged so identity scenarios stay bit-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .core import FoodItem, FortificationStandard, NutrientId, VehicleKind

__all__ = [
    "FortifySpec",
    "select_standards",
    "apply_fortification",
    "policy_intensity",
]


@dataclass(frozen=True)
class FortifySpec:
    implementation_rate: float = 0.9
    vehicle_filter: Optional[frozenset[VehicleKind]] = None
    nutrient_filter: Optional[frozenset[NutrientId]] = None
    bread_flour_share: float = 0.75

    def __post_init__(self):
        if not 0.0 <= self.implementation_rate <= 1.0:
            raise ValueError("implementation rate must lie in [0, 1]")
        if not 0.0 <= self.bread_flour_share <= 1.0:
            raise ValueError("bread flour share must lie in [0, 1]")
        if self.vehicle_filter is not None:
            object.__setattr__(self, "vehicle_filter", frozenset(self.vehicle_filter))
        if self.nutrient_filter is not None:
            object.__setattr__(self, "nutrient_filter", frozenset(self.nutrient_filter))


def select_standards(
    standards: Sequence[FortificationStandard], country: str
) -> dict[tuple[VehicleKind, NutrientId], float]:
    """One level per (vehicle, nutrient): the minimum across duplicates."""
    selected: dict[tuple[VehicleKind, NutrientId], float] = {}
    for standard in standards:
        if standard.country != country:
            continue
        key = (standard.vehicle, standard.nutrient)
        level = standard.level_mg_per_kg
        if key not in selected or level < selected[key]:
            selected[key] = level
    return selected


def _passing_levels(
    selected: Mapping[tuple[VehicleKind, NutrientId], float],
    spec: FortifySpec,
) -> dict[VehicleKind, list[tuple[NutrientId, float]]]:
    by_vehicle: dict[VehicleKind, list[tuple[NutrientId, float]]] = {}
    for (vehicle, nutrient), level in selected.items():
        if spec.vehicle_filter is not None and vehicle not in spec.vehicle_filter:
            continue
        if spec.nutrient_filter is not None and nutrient not in spec.nutrient_filter:
            continue
        by_vehicle.setdefault(vehicle, []).append((nutrient, level))
    for levels in by_vehicle.values():
        levels.sort(key=lambda pair: pair[0].value)
    return by_vehicle


def apply_fortification(
    foods: Sequence[FoodItem],
    selected_standards: Mapping[tuple[VehicleKind, NutrientId], float],
    premix: Mapping[VehicleKind, float],
    spec: FortifySpec,
) -> tuple[FoodItem, ...]:
    """Return fortified copies of the foods; untouched items are shared.

    Premix (PPP/kg) is passed through at 100% to the retail price of every
    food that actually receives at least one nutrient; a zero implementation
    rate is therefore the identity transform, prices included.
    """
    for (vehicle, nutrient), level in selected_standards.items():
        if not (math.isfinite(level) and level >= 0):
            raise ValueError(f"{vehicle.value}/{nutrient.value}: negative or non-finite level")
    for vehicle, cost in premix.items():
        if not (math.isfinite(cost) and cost >= 0):
            raise ValueError(f"{vehicle.value}: negative or non-finite premix cost")

    rate = spec.implementation_rate
    share = spec.bread_flour_share
    active = _passing_levels(selected_standards, spec) if rate > 0 else {}
    if not active:
        return tuple(foods)

    out: list[FoodItem] = []
    for food in foods:
        levels = None
        factor = 1.0
        is_bread = False
        if food.vehicle is not None and food.vehicle in active:
            levels = active[food.vehicle]
            vehicle = food.vehicle
        elif food.bread and VehicleKind.WHEAT_FLOUR in active:
            levels = active[VehicleKind.WHEAT_FLOUR]
            vehicle = VehicleKind.WHEAT_FLOUR
            factor = share
            is_bread = True
        if levels is None:
            out.append(food)
            continue
        composition = dict(food.composition)
        for nutrient, level in levels:
            if is_bread:
                added = share * rate * level / 10.0
            else:
                added = rate * level / 10.0
            composition[nutrient] = composition.get(nutrient, 0.0) + added
        price = food.price_ppp_per_100g
        premix_cost = premix.get(vehicle)
        if premix_cost is not None:
            price = price + factor * (premix_cost / 10.0)
        out.append(replace(food, composition=composition, price_ppp_per_100g=price))
    return tuple(out)


def policy_intensity(
    selected_standards: Mapping[tuple[VehicleKind, NutrientId], float],
) -> float:
    """Total fortified amount across all vehicles and nutrients, mg per kg."""
    return float(sum(selected_standards.values()))
