"""Domain vocabulary: nutrients, constraints, foods, subgroups, scenarios.

All types are frozen dataclasses or enums and are safe to share across
parallel workers. Validation that should not abort ingestion is
report-returning (see :func:`validate_requirement_set`); structural
invariants that make an object meaningless are enforced at construction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence


class Unit(str, enum.Enum):
    KCAL = "kcal"
    G = "g"
    MG = "mg"
    UG = "ug"


class NutrientId(str, enum.Enum):
    """The closed set of nutrients carried by every food and requirement."""

    ENERGY = "energy"
    PROTEIN = "protein"
    LIPIDS = "lipids"
    CARBOHYDRATE = "carbohydrate"
    CALCIUM = "calcium"
    CHOLINE = "choline"
    COPPER = "copper"
    FOLATE = "folate"
    IRON = "iron"
    MAGNESIUM = "magnesium"
    MANGANESE = "manganese"
    NIACIN = "niacin"
    PHOSPHORUS = "phosphorus"
    RETINOL = "retinol"
    RIBOFLAVIN = "riboflavin"
    SELENIUM = "selenium"
    SODIUM = "sodium"
    THIAMIN = "thiamin"
    VITAMIN_A = "vitamin_a"
    VITAMIN_B5 = "vitamin_b5"
    VITAMIN_B6 = "vitamin_b6"
    VITAMIN_B12 = "vitamin_b12"
    VITAMIN_C = "vitamin_c"
    VITAMIN_E = "vitamin_e"
    ZINC = "zinc"

    @property
    def unit(self) -> Unit:
        return _NUTRIENT_UNITS[self]


_NUTRIENT_UNITS: dict[NutrientId, Unit] = {
    NutrientId.ENERGY: Unit.KCAL,
    NutrientId.PROTEIN: Unit.G,
    NutrientId.LIPIDS: Unit.G,
    NutrientId.CARBOHYDRATE: Unit.G,
    NutrientId.CALCIUM: Unit.MG,
    NutrientId.CHOLINE: Unit.MG,
    NutrientId.COPPER: Unit.MG,
    NutrientId.FOLATE: Unit.UG,
    NutrientId.IRON: Unit.MG,
    NutrientId.MAGNESIUM: Unit.MG,
    NutrientId.MANGANESE: Unit.MG,
    NutrientId.NIACIN: Unit.MG,
    NutrientId.PHOSPHORUS: Unit.MG,
    NutrientId.RETINOL: Unit.UG,
    NutrientId.RIBOFLAVIN: Unit.MG,
    NutrientId.SELENIUM: Unit.UG,
    NutrientId.SODIUM: Unit.MG,
    NutrientId.THIAMIN: Unit.MG,
    NutrientId.VITAMIN_A: Unit.UG,
    NutrientId.VITAMIN_B5: Unit.MG,
    NutrientId.VITAMIN_B6: Unit.MG,
    NutrientId.VITAMIN_B12: Unit.UG,
    NutrientId.VITAMIN_C: Unit.MG,
    NutrientId.VITAMIN_E: Unit.MG,
    NutrientId.ZINC: Unit.MG,
}


def canonical_mg(level: float, unit: str) -> float:
    """Convert a fortification level to mg; idempotent for mg inputs."""
    if unit == "mg":
        return float(level)
    if unit == "ug":
        return float(level) / 1000.0
    raise ValueError(f"unknown level unit {unit!r} (expected 'mg' or 'ug')")


class ConstraintKind(str, enum.Enum):
    TARGET = "target"
    RANGE = "range"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class NutrientConstraint:
    """One daily intake rule for one nutrient, in its canonical unit."""

    nutrient: NutrientId
    kind: ConstraintKind
    lower: Optional[float] = None
    upper: Optional[float] = None
    target: Optional[float] = None

    def violations(self) -> list[str]:
        out = []
        name = self.nutrient.value
        present = {
            "lower": self.lower is not None,
            "upper": self.upper is not None,
            "target": self.target is not None,
        }
        expected = {
            ConstraintKind.TARGET: {"target"},
            ConstraintKind.RANGE: {"lower", "upper"},
            ConstraintKind.LOWER: {"lower"},
            ConstraintKind.UPPER: {"upper"},
        }[self.kind]
        have = {k for k, ok in present.items() if ok}
        if have != expected:
            out.append(
                f"{name}: {self.kind.value} constraint needs {sorted(expected)}, "
                f"has {sorted(have)}"
            )
        for label in ("lower", "upper", "target"):
            value = getattr(self, label)
            if value is not None and (not math.isfinite(value) or value < 0):
                out.append(f"{name}: {label} must be finite and >= 0, got {value}")
        if (
            self.kind is ConstraintKind.RANGE
            and self.lower is not None
            and self.upper is not None
            and self.lower > self.upper
        ):
            out.append(f"{name}: lower > upper ({self.lower} > {self.upper})")
        return out


class Sex(str, enum.Enum):
    MALE = "male"
    FEMALE = "female"


class PhysiologicalStatus(str, enum.Enum):
    NONE = "none"
    PREGNANT = "pregnant"
    LACTATING = "lactating"


CANONICAL_ROSTER_SIZE = 22
MINIMUM_AGE_YEARS = 4.0


@dataclass(frozen=True)
class SexAgeGroup:
    id: str
    sex: Sex
    age_low: float
    age_high: float
    status: PhysiologicalStatus
    energy_kcal_per_day: float

    def __post_init__(self):
        if self.age_low < MINIMUM_AGE_YEARS:
            raise ValueError(f"subgroup {self.id}: minimum age is {MINIMUM_AGE_YEARS}")
        if self.age_high < self.age_low:
            raise ValueError(f"subgroup {self.id}: age band is inverted")
        if not (self.energy_kcal_per_day > 0 and math.isfinite(self.energy_kcal_per_day)):
            raise ValueError(f"subgroup {self.id}: energy must be positive and finite")


@dataclass(frozen=True)
class RequirementSet:
    """All nutrient constraints for one subgroup, at most one per nutrient."""

    group: SexAgeGroup
    constraints: tuple[NutrientConstraint, ...]

    def constraint_for(self, nutrient: NutrientId) -> Optional[NutrientConstraint]:
        for c in self.constraints:
            if c.nutrient is nutrient:
                return c
        return None

    @property
    def energy_target_kcal(self) -> float:
        c = self.constraint_for(NutrientId.ENERGY)
        if c is None or c.target is None:
            raise ValueError(f"subgroup {self.group.id}: energy target absent")
        return c.target


def validate_requirement_set(rs: RequirementSet) -> list[str]:
    """Return all invariant violations; an empty list means the set is valid."""
    report: list[str] = []
    seen: set[NutrientId] = set()
    for c in rs.constraints:
        if c.nutrient in seen:
            report.append(f"{c.nutrient.value}: duplicate constraint")
        seen.add(c.nutrient)
        report.extend(c.violations())
    targets = [c for c in rs.constraints if c.kind is ConstraintKind.TARGET]
    if not any(c.nutrient is NutrientId.ENERGY for c in targets):
        report.append("energy target absent")
    for c in targets:
        if c.nutrient is not NutrientId.ENERGY:
            report.append(f"{c.nutrient.value}: target constraints are reserved for energy")
    if len(targets) > 1:
        report.append("more than one target constraint")
    return report


class FoodGroupId(str, enum.Enum):
    STARCHY_STAPLES = "starchy_staples"
    FRUITS = "fruits"
    VEGETABLES = "vegetables"
    LEGUMES_NUTS_SEEDS = "legumes_nuts_seeds"
    ANIMAL_SOURCE_FOODS = "animal_source_foods"
    OILS_FATS = "oils_fats"
    OTHER = "other"
    # Derived combined group; never assigned to a food.
    FRUITS_VEGETABLES = "fruits_vegetables"


FINE_GROUPS: tuple[FoodGroupId, ...] = (
    FoodGroupId.STARCHY_STAPLES,
    FoodGroupId.FRUITS,
    FoodGroupId.VEGETABLES,
    FoodGroupId.LEGUMES_NUTS_SEEDS,
    FoodGroupId.ANIMAL_SOURCE_FOODS,
    FoodGroupId.OILS_FATS,
    FoodGroupId.OTHER,
)


def group_members(group: FoodGroupId) -> tuple[FoodGroupId, ...]:
    """Fine groups covered by ``group`` (combined groups expand)."""
    if group is FoodGroupId.FRUITS_VEGETABLES:
        return (FoodGroupId.FRUITS, FoodGroupId.VEGETABLES)
    return (group,)


class VehicleKind(str, enum.Enum):
    WHEAT_FLOUR = "wheat_flour"
    MAIZE_FLOUR = "maize_flour"
    RICE = "rice"
    OIL = "oil"


@dataclass(frozen=True)
class FoodItem:
    """A purchasable food in one country; composition is per 100 g edible."""

    id: str
    country: str
    name: str
    price_ppp_per_100g: float
    group: FoodGroupId
    composition: Mapping[NutrientId, float]
    vehicle: Optional[VehicleKind] = None
    bread: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.price_ppp_per_100g) and self.price_ppp_per_100g >= 0):
            raise ValueError(f"food {self.id}: price must be finite and >= 0")
        if self.group not in FINE_GROUPS:
            raise ValueError(f"food {self.id}: {self.group.value} is not a fine group")
        if self.bread and self.group is not FoodGroupId.STARCHY_STAPLES:
            raise ValueError(f"food {self.id}: bread marker requires starchy staples")
        if self.bread and self.vehicle is not None:
            raise ValueError(f"food {self.id}: bread marker and vehicle tag are exclusive")
        energy = self.composition.get(NutrientId.ENERGY, 0.0)
        if not energy > 0:
            raise ValueError(f"food {self.id}: energy per 100 g must be positive")
        for nutrient, value in self.composition.items():
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(
                    f"food {self.id}: {nutrient.value} must be finite and >= 0"
                )

    @property
    def kcal_per_100g(self) -> float:
        return self.composition[NutrientId.ENERGY]


@dataclass(frozen=True)
class FortificationStandard:
    """A documented fortification level for one (country, vehicle, nutrient)."""

    country: str
    vehicle: VehicleKind
    nutrient: NutrientId
    level_mg_per_kg: float
    status: str = "mandatory"

    def __post_init__(self):
        if self.nutrient is NutrientId.ENERGY:
            raise ValueError("energy cannot be a fortified nutrient")
        if not (math.isfinite(self.level_mg_per_kg) and self.level_mg_per_kg > 0):
            raise ValueError(
                f"standard {self.country}/{self.vehicle.value}/{self.nutrient.value}: "
                "level must be finite and > 0"
            )


@dataclass(frozen=True)
class PremixCost:
    country: str
    vehicle: VehicleKind
    cost_ppp_per_kg: float

    def __post_init__(self):
        if not (math.isfinite(self.cost_ppp_per_kg) and self.cost_ppp_per_kg >= 0):
            raise ValueError(
                f"premix {self.country}/{self.vehicle.value}: cost must be finite and >= 0"
            )


class ScenarioKind(str, enum.Enum):
    CONA = "cona"
    CONA_SSFV = "cona_ssfv"
    CONA_SUA = "cona_sua"


SSFV_TARGET_GROUPS = frozenset(
    {FoodGroupId.STARCHY_STAPLES, FoodGroupId.FRUITS_VEGETABLES}
)
SUA_BOUND_GROUPS: tuple[FoodGroupId, ...] = (
    FoodGroupId.STARCHY_STAPLES,
    FoodGroupId.FRUITS_VEGETABLES,
    FoodGroupId.LEGUMES_NUTS_SEEDS,
    FoodGroupId.ANIMAL_SOURCE_FOODS,
)


@dataclass(frozen=True)
class ScenarioSpec:
    """Which diet model to build, with its food-group data.

    ``hdb_targets`` holds kcal targets at ``reference_energy_kcal`` and is
    rescaled per subgroup. ``group_bounds`` holds absolute kcal bounds applied
    identically to every subgroup; setting ``sua_reference_energy_kcal``
    instead rescales them by subgroup energy / reference energy.
    """

    kind: ScenarioKind
    hdb_targets: Optional[Mapping[FoodGroupId, float]] = None
    reference_energy_kcal: Optional[float] = None
    group_bounds: Optional[Mapping[FoodGroupId, tuple[float, float]]] = None
    sua_reference_energy_kcal: Optional[float] = None

    def __post_init__(self):
        if self.kind is ScenarioKind.CONA_SSFV:
            if self.hdb_targets is None or self.reference_energy_kcal is None:
                raise ValueError("cona_ssfv needs hdb_targets and reference_energy_kcal")
            if set(self.hdb_targets) != set(SSFV_TARGET_GROUPS):
                raise ValueError(
                    "cona_ssfv targets must cover exactly starchy staples and "
                    "combined fruits and vegetables"
                )
            if not self.reference_energy_kcal > 0:
                raise ValueError("reference energy must be positive")
        if self.kind is ScenarioKind.CONA_SUA:
            if self.group_bounds is None:
                raise ValueError("cona_sua needs group_bounds")
            for group, (lo, hi) in self.group_bounds.items():
                if group not in SUA_BOUND_GROUPS:
                    raise ValueError(f"{group.value} is not a bounded consumption group")
                if not (0 <= lo <= hi):
                    raise ValueError(
                        f"{group.value}: bounds must satisfy 0 <= lower <= upper"
                    )
            if (
                self.sua_reference_energy_kcal is not None
                and not self.sua_reference_energy_kcal > 0
            ):
                raise ValueError("sua reference energy must be positive")


def scale_group_targets(
    hdb_targets: Mapping[FoodGroupId, float],
    reference_energy: float,
    subgroup_energy: float,
) -> dict[FoodGroupId, float]:
    """Rescale kcal targets proportionally to a subgroup's energy need."""
    if not (reference_energy > 0 and math.isfinite(reference_energy)):
        raise ValueError("reference energy must be positive and finite")
    if not (subgroup_energy > 0 and math.isfinite(subgroup_energy)):
        raise ValueError("subgroup energy must be positive and finite")
    ratio = subgroup_energy / reference_energy
    return {group: kcal * ratio for group, kcal in hdb_targets.items()}


def quantile_linear(values: Sequence[float], q: float) -> float:
    """Quantile with linear interpolation between closest ranks, q in [0, 1]."""
    if not values:
        raise ValueError("quantile of empty sequence")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    data = sorted(values)
    h = q * (len(data) - 1)
    lo = int(math.floor(h))
    frac = h - lo
    if frac == 0.0:
        return float(data[lo])
    return float(data[lo] + frac * (data[lo + 1] - data[lo]))
