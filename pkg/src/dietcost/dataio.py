"""Ingest, validate, and serialize the delimited input files.

A data directory holds eight UTF-8 comma-separated files with header rows:
foods.csv, requirements.csv, subgroups.csv, standards.csv, premix.csv,
sua.csv, regions.csv, hdb.csv. Numeric columns carry unit suffixes in the
header (or a unit column where units vary by row). ``save_dataset`` writes
the same files back in canonical order, so load/save round-trips are
byte-identical modulo unit normalization of fortification levels to mg.
"""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    FINE_GROUPS,
    CANONICAL_ROSTER_SIZE,
    ConstraintKind,
    FoodGroupId,
    FoodItem,
    FortificationStandard,
    NutrientConstraint,
    NutrientId,
    PhysiologicalStatus,
    PremixCost,
    RequirementSet,
    ScenarioKind,
    ScenarioSpec,
    Sex,
    SexAgeGroup,
    VehicleKind,
    canonical_mg,
    group_members,
    quantile_linear,
    validate_requirement_set,
)

log = logging.getLogger(__name__)

DATA_DIR_ENV = "DIETCOST_DATA_DIR"

SUA_YEAR_MIN = 2010
SUA_YEAR_MAX = 2022

FILE_NAMES = (
    "foods.csv",
    "requirements.csv",
    "subgroups.csv",
    "standards.csv",
    "premix.csv",
    "sua.csv",
    "regions.csv",
    "hdb.csv",
)


def nutrient_column(nutrient: NutrientId) -> str:
    return f"{nutrient.value}_{nutrient.unit.value}"


NUTRIENT_COLUMNS = {nutrient_column(n): n for n in NutrientId}


@dataclass(frozen=True)
class Issue:
    severity: str  # "error" | "warning"
    file: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.file}:{self.line}: {self.message}"


def errors_in(issues: Sequence[Issue], strict: bool = False) -> list[Issue]:
    if strict:
        return list(issues)
    return [i for i in issues if i.severity == "error"]


@dataclass(frozen=True)
class SuaSeries:
    """Yearly per-capita energy supply for one (country, fine group)."""

    country: str
    group: FoodGroupId
    kcal_by_year: dict[int, float]


@dataclass(frozen=True)
class Dataset:
    foods: dict[str, tuple[FoodItem, ...]]
    subgroups: tuple[SexAgeGroup, ...]
    requirements: dict[str, RequirementSet]
    standards: tuple[FortificationStandard, ...]
    premix: dict[tuple[str, VehicleKind], PremixCost]
    sua: dict[tuple[str, FoodGroupId], SuaSeries]
    regions: dict[str, str]
    hdb_targets: dict[FoodGroupId, float]
    hdb_reference_energy_kcal: float

    @property
    def countries(self) -> list[str]:
        return sorted(self.foods)

    def premix_for(self, country: str) -> dict[VehicleKind, float]:
        return {
            vehicle: cost.cost_ppp_per_kg
            for (c, vehicle), cost in sorted(
                self.premix.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
            )
            if c == country
        }


class _RowReader:
    """DictReader wrapper that tracks line numbers and collects issues."""

    def __init__(self, path: Path, required: Sequence[str], issues: list[Issue]):
        self.path = path
        self.name = path.name
        self.required = list(required)
        self.issues = issues
        self.line = 1

    def error(self, message: str, line: Optional[int] = None) -> None:
        self.issues.append(Issue("error", self.name, line or self.line, message))

    def warning(self, message: str, line: Optional[int] = None) -> None:
        self.issues.append(Issue("warning", self.name, line or self.line, message))

    def rows(self) -> Iterable[dict[str, str]]:
        with open(self.path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            header = reader.fieldnames or []
            missing = [col for col in self.required if col not in header]
            if missing:
                self.error(f"missing columns: {', '.join(missing)}", line=1)
                return
            for row in reader:
                self.line = reader.line_num
                yield row

    def parse_float(self, row: Mapping[str, str], column: str, allow_blank: bool = False):
        raw = (row.get(column) or "").strip()
        if raw == "":
            if allow_blank:
                return None
            self.error(f"column {column}: value required")
            return None
        try:
            value = float(raw)
        except ValueError:
            self.error(f"column {column}: not a number: {raw!r}")
            return None
        if not math.isfinite(value):
            self.error(f"column {column}: non-finite value")
            return None
        return value

    def parse_enum(self, row: Mapping[str, str], column: str, enum_cls, allow_blank=False):
        raw = (row.get(column) or "").strip()
        if raw == "":
            if allow_blank:
                return None
            self.error(f"column {column}: value required")
            return None
        try:
            return enum_cls(raw)
        except ValueError:
            self.error(f"column {column}: unknown value {raw!r}")
            return None


def _load_foods(path: Path, issues: list[Issue]) -> dict[str, list[FoodItem]]:
    required = ["country", "item_id", "name", "group", "vehicle", "bread", "price_ppp_100g"]
    required += list(NUTRIENT_COLUMNS)
    reader = _RowReader(path, required, issues)
    foods: dict[str, list[FoodItem]] = {}
    for row in reader.rows():
        country = row["country"].strip()
        item_id = row["item_id"].strip()
        if not country or not item_id:
            reader.error("country and item_id are required")
            continue
        group = reader.parse_enum(row, "group", FoodGroupId)
        vehicle = reader.parse_enum(row, "vehicle", VehicleKind, allow_blank=True)
        bread_raw = row["bread"].strip().lower()
        if bread_raw not in {"0", "1", "true", "false"}:
            reader.error(f"column bread: expected 0/1, got {bread_raw!r}")
            continue
        bread = bread_raw in {"1", "true"}
        price = reader.parse_float(row, "price_ppp_100g")
        if group is None or price is None:
            continue
        if price < 0:
            reader.error(f"food {item_id}: negative price {price}")
            continue
        composition: dict[NutrientId, float] = {}
        bad = False
        for column, nutrient in NUTRIENT_COLUMNS.items():
            value = reader.parse_float(row, column, allow_blank=True)
            if value is None:
                value = 0.0
            if value < 0:
                reader.error(f"food {item_id}: negative {column}")
                bad = True
                break
            composition[nutrient] = value
        if bad:
            continue
        if composition[NutrientId.ENERGY] <= 0:
            reader.warning(f"food {item_id}: dropped, zero energy per 100 g")
            continue
        try:
            item = FoodItem(
                id=item_id,
                country=country,
                name=row["name"].strip(),
                price_ppp_per_100g=price,
                group=group,
                composition=composition,
                vehicle=vehicle,
                bread=bread,
            )
        except ValueError as exc:
            reader.error(str(exc))
            continue
        foods.setdefault(country, []).append(item)
    return foods


def _load_subgroups(path: Path, issues: list[Issue]) -> list[SexAgeGroup]:
    reader = _RowReader(
        path,
        ["subgroup_id", "sex", "age_low_years", "age_high_years", "status", "energy_kcal_day"],
        issues,
    )
    roster: list[SexAgeGroup] = []
    seen: set[str] = set()
    for row in reader.rows():
        sid = row["subgroup_id"].strip()
        if sid in seen:
            reader.error(f"duplicate subgroup id {sid!r}")
            continue
        seen.add(sid)
        sex = reader.parse_enum(row, "sex", Sex)
        status = reader.parse_enum(row, "status", PhysiologicalStatus)
        low = reader.parse_float(row, "age_low_years")
        high = reader.parse_float(row, "age_high_years")
        energy = reader.parse_float(row, "energy_kcal_day")
        if None in (sex, status, low, high, energy):
            continue
        try:
            roster.append(
                SexAgeGroup(
                    id=sid, sex=sex, age_low=low, age_high=high,
                    status=status, energy_kcal_per_day=energy,
                )
            )
        except ValueError as exc:
            reader.error(str(exc))
    if len(roster) != CANONICAL_ROSTER_SIZE:
        issues.append(
            Issue(
                "warning", path.name, 1,
                f"roster has {len(roster)} subgroups; the canonical roster has "
                f"{CANONICAL_ROSTER_SIZE}",
            )
        )
    return roster


_KIND_FIELDS = {
    ConstraintKind.TARGET: ("target",),
    ConstraintKind.RANGE: ("lower", "upper"),
    ConstraintKind.LOWER: ("lower",),
    ConstraintKind.UPPER: ("upper",),
}


def _load_requirements(
    path: Path, roster: Sequence[SexAgeGroup], issues: list[Issue]
) -> dict[str, RequirementSet]:
    reader = _RowReader(
        path, ["subgroup", "nutrient", "kind", "lower", "upper", "target", "unit"], issues
    )
    by_group = {g.id: g for g in roster}
    rows_by_subgroup: dict[str, list[NutrientConstraint]] = {}
    for row in reader.rows():
        sid = row["subgroup"].strip()
        if sid not in by_group:
            reader.error(f"unknown subgroup {sid!r}")
            continue
        nutrient = reader.parse_enum(row, "nutrient", NutrientId)
        kind = reader.parse_enum(row, "kind", ConstraintKind)
        if nutrient is None or kind is None:
            continue
        unit = row["unit"].strip()
        if unit != nutrient.unit.value:
            reader.error(
                f"unit mismatch for {nutrient.value}: file says {unit!r}, "
                f"canonical unit is {nutrient.unit.value!r}"
            )
            continue
        values = {}
        for label in ("lower", "upper", "target"):
            values[label] = reader.parse_float(row, label, allow_blank=True)
        for label in _KIND_FIELDS[kind]:
            if values[label] is None:
                reader.error(f"{nutrient.value}: {kind.value} constraint needs {label}")
        rows_by_subgroup.setdefault(sid, []).append(
            NutrientConstraint(
                nutrient=nutrient, kind=kind,
                lower=values["lower"], upper=values["upper"], target=values["target"],
            )
        )
    requirements: dict[str, RequirementSet] = {}
    for sid, constraints in rows_by_subgroup.items():
        rs = RequirementSet(
            group=by_group[sid],
            constraints=tuple(sorted(constraints, key=lambda c: c.nutrient.value)),
        )
        for violation in validate_requirement_set(rs):
            issues.append(Issue("error", path.name, 1, f"subgroup {sid}: {violation}"))
        requirements[sid] = rs
    for group in roster:
        if group.id not in requirements:
            issues.append(
                Issue("error", path.name, 1, f"subgroup {group.id}: no requirements")
            )
    return requirements


def _load_standards(path: Path, issues: list[Issue]) -> list[FortificationStandard]:
    reader = _RowReader(path, ["country", "vehicle", "nutrient", "level", "unit", "status"], issues)
    standards: list[FortificationStandard] = []
    for row in reader.rows():
        vehicle = reader.parse_enum(row, "vehicle", VehicleKind)
        nutrient = reader.parse_enum(row, "nutrient", NutrientId)
        level = reader.parse_float(row, "level")
        unit = row["unit"].strip()
        if None in (vehicle, nutrient, level):
            continue
        if unit not in {"mg", "ug"}:
            reader.error(f"column unit: expected mg or ug, got {unit!r}")
            continue
        try:
            standards.append(
                FortificationStandard(
                    country=row["country"].strip(),
                    vehicle=vehicle,
                    nutrient=nutrient,
                    level_mg_per_kg=canonical_mg(level, unit),
                    status=row["status"].strip() or "mandatory",
                )
            )
        except ValueError as exc:
            reader.error(str(exc))
    return standards


def _load_premix(path: Path, issues: list[Issue]) -> dict[tuple[str, VehicleKind], PremixCost]:
    reader = _RowReader(path, ["country", "vehicle", "cost_ppp_kg"], issues)
    premix: dict[tuple[str, VehicleKind], PremixCost] = {}
    for row in reader.rows():
        vehicle = reader.parse_enum(row, "vehicle", VehicleKind)
        cost = reader.parse_float(row, "cost_ppp_kg")
        if vehicle is None or cost is None:
            continue
        country = row["country"].strip()
        key = (country, vehicle)
        if key in premix:
            reader.error(f"duplicate premix record for {country}/{vehicle.value}")
            continue
        try:
            premix[key] = PremixCost(country=country, vehicle=vehicle, cost_ppp_per_kg=cost)
        except ValueError as exc:
            reader.error(str(exc))
    return premix


def _load_sua(path: Path, issues: list[Issue]) -> dict[tuple[str, FoodGroupId], SuaSeries]:
    reader = _RowReader(path, ["country", "group", "year", "kcal_capita_day"], issues)
    values: dict[tuple[str, FoodGroupId], dict[int, float]] = {}
    for row in reader.rows():
        group = reader.parse_enum(row, "group", FoodGroupId)
        kcal = reader.parse_float(row, "kcal_capita_day")
        year_raw = row["year"].strip()
        if group is None or kcal is None:
            continue
        if group not in FINE_GROUPS:
            reader.error(f"column group: {group.value} is not a fine group")
            continue
        try:
            year = int(year_raw)
        except ValueError:
            reader.error(f"column year: not an integer: {year_raw!r}")
            continue
        if not SUA_YEAR_MIN <= year <= SUA_YEAR_MAX:
            reader.error(f"year {year} outside {SUA_YEAR_MIN}-{SUA_YEAR_MAX}")
            continue
        if kcal < 0:
            reader.error(f"negative kcal supply {kcal}")
            continue
        country = row["country"].strip()
        series = values.setdefault((country, group), {})
        if year in series:
            reader.error(f"duplicate year {year} for {country}/{group.value}")
            continue
        series[year] = kcal
    return {
        key: SuaSeries(country=key[0], group=key[1], kcal_by_year=years)
        for key, years in values.items()
    }


def _load_regions(path: Path, issues: list[Issue]) -> dict[str, str]:
    reader = _RowReader(path, ["country", "region"], issues)
    regions: dict[str, str] = {}
    for row in reader.rows():
        country = row["country"].strip()
        region = row["region"].strip()
        if not region:
            reader.error(f"{country}: empty region")
            continue
        if country in regions:
            reader.error(f"duplicate region row for {country}")
            continue
        regions[country] = region
    return regions


def _load_hdb(path: Path, issues: list[Issue]) -> tuple[dict[FoodGroupId, float], Optional[float]]:
    reader = _RowReader(path, ["key", "kcal_day"], issues)
    targets: dict[FoodGroupId, float] = {}
    reference: Optional[float] = None
    for row in reader.rows():
        key = row["key"].strip()
        kcal = reader.parse_float(row, "kcal_day")
        if kcal is None:
            continue
        if key == "reference_energy":
            reference = kcal
            continue
        try:
            group = FoodGroupId(key)
        except ValueError:
            reader.error(f"column key: unknown value {key!r}")
            continue
        if group not in FINE_GROUPS:
            reader.error(f"column key: {key} is not a fine group")
            continue
        if kcal < 0:
            reader.error(f"{key}: negative kcal target")
            continue
        targets[group] = kcal
    if reference is None or reference <= 0:
        issues.append(Issue("error", path.name, 1, "reference_energy row missing or non-positive"))
    for needed in (FoodGroupId.STARCHY_STAPLES, FoodGroupId.FRUITS, FoodGroupId.VEGETABLES):
        if needed not in targets:
            issues.append(Issue("error", path.name, 1, f"missing target for {needed.value}"))
    return targets, reference


def load_dataset(
    data_dir: "str | os.PathLike[str]", strict: bool = False
) -> tuple[Optional[Dataset], list[Issue]]:
    """Load and validate a data directory.

    Returns ``(dataset, issues)``; the dataset is None when blocking issues
    were found (any error, or any warning in strict mode).
    """
    base = Path(data_dir)
    issues: list[Issue] = []
    for name in FILE_NAMES:
        if not (base / name).is_file():
            issues.append(Issue("error", name, 0, "file not found"))
    if errors_in(issues):
        return None, issues

    foods = _load_foods(base / "foods.csv", issues)
    roster = _load_subgroups(base / "subgroups.csv", issues)
    requirements = _load_requirements(base / "requirements.csv", roster, issues)
    standards = _load_standards(base / "standards.csv", issues)
    premix = _load_premix(base / "premix.csv", issues)
    sua = _load_sua(base / "sua.csv", issues)
    regions = _load_regions(base / "regions.csv", issues)
    hdb_targets, reference = _load_hdb(base / "hdb.csv", issues)

    for country in sorted(foods):
        if country not in regions:
            issues.append(
                Issue("error", "regions.csv", 1, f"{country}: no region mapping")
            )
    tagged: dict[tuple[str, VehicleKind], bool] = {}
    for country, items in foods.items():
        for item in items:
            if item.vehicle is not None:
                tagged[(country, item.vehicle)] = True
    for standard in standards:
        key = (standard.country, standard.vehicle)
        if standard.country in foods and key not in tagged:
            issues.append(
                Issue(
                    "warning", "standards.csv", 1,
                    f"{standard.country}: no food tagged as {standard.vehicle.value}",
                )
            )
        if standard.country not in foods:
            issues.append(
                Issue(
                    "warning", "standards.csv", 1,
                    f"{standard.country}: standards for a country with no foods",
                )
            )

    if errors_in(issues, strict=strict):
        return None, issues

    dataset = Dataset(
        foods={c: tuple(items) for c, items in sorted(foods.items())},
        subgroups=tuple(roster),
        requirements=requirements,
        standards=tuple(standards),
        premix=premix,
        sua=sua,
        regions=regions,
        hdb_targets=hdb_targets,
        hdb_reference_energy_kcal=float(reference),
    )
    return dataset, issues


# --- derived scenario data ---------------------------------------------------


def compute_sua_bounds(series: SuaSeries) -> tuple[float, float]:
    """25th and 75th percentiles of the yearly supply, linearly interpolated."""
    if not series.kcal_by_year:
        raise ValueError(f"{series.country}/{series.group.value}: empty supply series")
    values = [series.kcal_by_year[y] for y in sorted(series.kcal_by_year)]
    return quantile_linear(values, 0.25), quantile_linear(values, 0.75)


def sua_group_bounds(
    dataset: Dataset, country: str
) -> dict[FoodGroupId, tuple[float, float]]:
    """Per-group kcal bounds for the consumption-pattern scenario.

    The combined fruits-and-vegetables series is summed year-wise over the
    years present in every available fine series before taking the IQR.
    """
    from .core import SUA_BOUND_GROUPS

    bounds: dict[FoodGroupId, tuple[float, float]] = {}
    for group in SUA_BOUND_GROUPS:
        fine = [
            dataset.sua[(country, member)]
            for member in group_members(group)
            if (country, member) in dataset.sua
        ]
        if not fine:
            raise ValueError(f"{country}: no supply series for {group.value}")
        years = set(fine[0].kcal_by_year)
        for series in fine[1:]:
            years &= set(series.kcal_by_year)
        if not years:
            raise ValueError(f"{country}: no common supply years for {group.value}")
        combined = SuaSeries(
            country=country,
            group=fine[0].group,
            kcal_by_year={y: sum(s.kcal_by_year[y] for s in fine) for y in sorted(years)},
        )
        bounds[group] = compute_sua_bounds(combined)
    return bounds


def scenario_for(
    dataset: Dataset,
    country: str,
    kind: ScenarioKind,
    rescale_sua_by_energy: bool = False,
) -> ScenarioSpec:
    """Build the ScenarioSpec for one country and diet model."""
    if kind is ScenarioKind.CONA:
        return ScenarioSpec(kind=kind)
    if kind is ScenarioKind.CONA_SSFV:
        targets = {
            FoodGroupId.STARCHY_STAPLES: dataset.hdb_targets[FoodGroupId.STARCHY_STAPLES],
            FoodGroupId.FRUITS_VEGETABLES: (
                dataset.hdb_targets[FoodGroupId.FRUITS]
                + dataset.hdb_targets[FoodGroupId.VEGETABLES]
            ),
        }
        return ScenarioSpec(
            kind=kind,
            hdb_targets=targets,
            reference_energy_kcal=dataset.hdb_reference_energy_kcal,
        )
    return ScenarioSpec(
        kind=kind,
        group_bounds=sua_group_bounds(dataset, country),
        sua_reference_energy_kcal=(
            dataset.hdb_reference_energy_kcal if rescale_sua_by_energy else None
        ),
    )


def apply_ppp(prices_local, ppp_factor: float):
    """Convert local-currency prices to international dollars."""
    if not (ppp_factor > 0 and math.isfinite(ppp_factor)):
        raise ValueError("ppp factor must be positive and finite")
    if isinstance(prices_local, (int, float)):
        return float(prices_local) / ppp_factor
    return [float(p) / ppp_factor for p in prices_local]


# --- canonical serialization --------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_table(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def save_dataset(dataset: Dataset, out_dir: "str | os.PathLike[str]") -> None:
    """Write the dataset back to CSV files in canonical order."""
    base = Path(out_dir)
    base.mkdir(parents=True, exist_ok=True)

    food_header = ["country", "item_id", "name", "group", "vehicle", "bread", "price_ppp_100g"]
    food_header += [nutrient_column(n) for n in NutrientId]
    rows = []
    for country in dataset.countries:
        for item in sorted(dataset.foods[country], key=lambda f: f.id):
            row = [
                country, item.id, item.name, item.group.value,
                item.vehicle.value if item.vehicle else "",
                "1" if item.bread else "0",
                item.price_ppp_per_100g,
            ]
            row += [item.composition.get(n, 0.0) for n in NutrientId]
            rows.append(row)
    write_table(base / "foods.csv", food_header, rows)

    rows = []
    for group in dataset.subgroups:
        rows.append([
            group.id, group.sex.value, group.age_low, group.age_high,
            group.status.value, group.energy_kcal_per_day,
        ])
    write_table(
        base / "subgroups.csv",
        ["subgroup_id", "sex", "age_low_years", "age_high_years", "status", "energy_kcal_day"],
        rows,
    )

    rows = []
    for group in dataset.subgroups:
        rs = dataset.requirements[group.id]
        for c in rs.constraints:
            rows.append([
                group.id, c.nutrient.value, c.kind.value,
                "" if c.lower is None else c.lower,
                "" if c.upper is None else c.upper,
                "" if c.target is None else c.target,
                c.nutrient.unit.value,
            ])
    write_table(
        base / "requirements.csv",
        ["subgroup", "nutrient", "kind", "lower", "upper", "target", "unit"],
        rows,
    )

    rows = [
        [s.country, s.vehicle.value, s.nutrient.value, s.level_mg_per_kg, "mg", s.status]
        for s in sorted(
            dataset.standards,
            key=lambda s: (s.country, s.vehicle.value, s.nutrient.value, s.level_mg_per_kg),
        )
    ]
    write_table(base / "standards.csv", ["country", "vehicle", "nutrient", "level", "unit", "status"], rows)

    rows = [
        [cost.country, cost.vehicle.value, cost.cost_ppp_per_kg]
        for (_, _), cost in sorted(
            dataset.premix.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
        )
    ]
    write_table(base / "premix.csv", ["country", "vehicle", "cost_ppp_kg"], rows)

    rows = []
    for (country, group), series in sorted(
        dataset.sua.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
    ):
        for year in sorted(series.kcal_by_year):
            rows.append([country, group.value, year, series.kcal_by_year[year]])
    write_table(base / "sua.csv", ["country", "group", "year", "kcal_capita_day"], rows)

    rows = [[country, region] for country, region in sorted(dataset.regions.items())]
    write_table(base / "regions.csv", ["country", "region"], rows)

    rows = [["reference_energy", dataset.hdb_reference_energy_kcal]]
    for group in FINE_GROUPS:
        if group in dataset.hdb_targets:
            rows.append([group.value, dataset.hdb_targets[group]])
    write_table(base / "hdb.csv", ["key", "kcal_day"], rows)
