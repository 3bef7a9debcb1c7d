"""Batch orchestration and result statistics.

A batch run solves every (country, subgroup, scenario) cell twice, once with
baseline foods and once after the fortification transform, and reduces the
pairs to :class:`DeltaRecord` rows in a fixed (country, subgroup, scenario)
order. Cells whose transform is the identity reuse the baseline solution, so
identity scenarios produce exact zero changes. Per-cell solver errors are
recorded on the row and never abort the batch.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .core import (
    FoodGroupId,
    FoodItem,
    NutrientId,
    ScenarioKind,
    SexAgeGroup,
    VehicleKind,
    group_members,
    quantile_linear,
    scale_group_targets,
)
from .dataio import Dataset, scenario_for
from .diet import DietSolution, IterationLimitError, solve_diet
from .fortify import FortifySpec, apply_fortification, select_standards
from .lp import LpStatus

log = logging.getLogger(__name__)

SCENARIO_ORDER: tuple[ScenarioKind, ...] = (
    ScenarioKind.CONA,
    ScenarioKind.CONA_SSFV,
    ScenarioKind.CONA_SUA,
)

CellKey = tuple[str, str, ScenarioKind]  # (country, subgroup id, scenario)


@dataclass(frozen=True)
class DeltaRecord:
    """Baseline-versus-fortified diet cost comparison for one cell."""

    country: str
    region: str
    subgroup_id: str
    scenario: ScenarioKind
    cost_base: Optional[float]
    cost_fort: Optional[float]
    base_status: str
    fort_status: str
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return (
            self.error is None
            and self.base_status == LpStatus.OPTIMAL.value
            and self.fort_status == LpStatus.OPTIMAL.value
        )

    @property
    def abs_change(self) -> Optional[float]:
        if not self.ok:
            return None
        return self.cost_fort - self.cost_base

    @property
    def pct_change(self) -> Optional[float]:
        if not self.ok or not self.cost_base > 0:
            return None
        return 100.0 * (self.cost_fort - self.cost_base) / self.cost_base


@dataclass(frozen=True)
class BatchResult:
    records: list[DeltaRecord]
    base_solutions: dict[CellKey, DietSolution]
    fort_solutions: dict[CellKey, DietSolution]

    @property
    def infeasible_count(self) -> int:
        return sum(1 for r in self.records if not r.ok)


def _run_country(
    dataset: Dataset,
    country: str,
    scenarios: Sequence[ScenarioKind],
    fspec: FortifySpec,
    baseline: Optional[Mapping[CellKey, DietSolution]] = None,
) -> tuple[list[DeltaRecord], dict[CellKey, DietSolution], dict[CellKey, DietSolution]]:
    foods = dataset.foods[country]
    region = dataset.regions[country]
    selected = select_standards(dataset.standards, country)
    fort_foods = apply_fortification(foods, selected, dataset.premix_for(country), fspec)
    identity = fort_foods == foods

    records: list[DeltaRecord] = []
    base_out: dict[CellKey, DietSolution] = {}
    fort_out: dict[CellKey, DietSolution] = {}
    specs = {}
    spec_errors = {}
    for kind in scenarios:
        try:
            specs[kind] = scenario_for(dataset, country, kind)
        except ValueError as exc:
            spec_errors[kind] = str(exc)

    for group in dataset.subgroups:
        rs = dataset.requirements[group.id]
        for kind in scenarios:
            key = (country, group.id, kind)
            if kind in spec_errors:
                records.append(
                    DeltaRecord(
                        country=country, region=region, subgroup_id=group.id,
                        scenario=kind, cost_base=None, cost_fort=None,
                        base_status="error", fort_status="error",
                        error=spec_errors[kind],
                    )
                )
                continue
            scenario = specs[kind]
            try:
                base = (
                    baseline[key]
                    if baseline is not None and key in baseline
                    else solve_diet(foods, rs, scenario)
                )
                fort = base if identity else solve_diet(fort_foods, rs, scenario)
            except (IterationLimitError, ValueError, ArithmeticError) as exc:
                records.append(
                    DeltaRecord(
                        country=country, region=region, subgroup_id=group.id,
                        scenario=kind, cost_base=None, cost_fort=None,
                        base_status="error", fort_status="error", error=str(exc),
                    )
                )
                continue
            base_out[key] = base
            fort_out[key] = fort
            records.append(
                DeltaRecord(
                    country=country, region=region, subgroup_id=group.id,
                    scenario=kind,
                    cost_base=base.cost_ppp_per_day,
                    cost_fort=fort.cost_ppp_per_day,
                    base_status=base.status.value,
                    fort_status=fort.status.value,
                )
            )
    return records, base_out, fort_out


def run_batch_full(
    dataset: Dataset,
    scenarios: Sequence[ScenarioKind],
    fspec: FortifySpec,
    workers: int = 1,
    baseline: Optional[Mapping[CellKey, DietSolution]] = None,
) -> BatchResult:
    """Batch run keeping the solved baskets for downstream tables."""
    countries = dataset.countries
    if workers > 1 and len(countries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _run_country_star,
                    [(dataset, c, tuple(scenarios), fspec, baseline) for c in countries],
                )
            )
    else:
        parts = [
            _run_country(dataset, c, scenarios, fspec, baseline) for c in countries
        ]

    records: list[DeltaRecord] = []
    base_solutions: dict[CellKey, DietSolution] = {}
    fort_solutions: dict[CellKey, DietSolution] = {}
    for part_records, part_base, part_fort in parts:
        records.extend(part_records)
        base_solutions.update(part_base)
        fort_solutions.update(part_fort)
    bad = sum(1 for r in records if not r.ok)
    if bad:
        log.info("batch: %d of %d cells infeasible or errored", bad, len(records))
    return BatchResult(records, base_solutions, fort_solutions)


def _run_country_star(args):
    return _run_country(*args)


def run_batch(
    dataset: Dataset,
    scenarios: Sequence[ScenarioKind],
    fspec: FortifySpec,
    workers: int = 1,
) -> list[DeltaRecord]:
    """One DeltaRecord per (country, subgroup, scenario), in that order."""
    return run_batch_full(dataset, scenarios, fspec, workers=workers).records


# --- summaries ---------------------------------------------------------------


@dataclass(frozen=True)
class SummaryStat:
    key: tuple
    n: int
    median: float
    q25: float
    q75: float
    mean: float
    share_reduced: float
    share_zero: float
    share_increased: float


_GROUPING_FIELDS = {"scenario", "subgroup", "country", "region", "sex"}


def _group_value(record: DeltaRecord, field: str, meta: Optional[Mapping[str, SexAgeGroup]]):
    if field == "scenario":
        return record.scenario.value
    if field == "subgroup":
        return record.subgroup_id
    if field == "country":
        return record.country
    if field == "region":
        return record.region
    if field == "sex":
        if meta is None:
            raise ValueError("grouping by sex needs subgroup metadata")
        return meta[record.subgroup_id].sex.value
    raise ValueError(f"unknown grouping field {field!r}")


def summarize(
    records: Sequence[DeltaRecord],
    grouping: Sequence[str],
    zero_epsilon: float = 1e-9,
    quantiles: str = "nonzero",
    subgroup_meta: Optional[Mapping[str, SexAgeGroup]] = None,
) -> list[SummaryStat]:
    """Percentage-change summaries per group.

    Shares classify every record with a defined change against
    ``zero_epsilon``; quantiles and the mean are taken over the non-zero
    subset (``quantiles="nonzero"``, falling back to all records for groups
    with no non-zero changes) or over all records (``quantiles="all"``).
    """
    for field in grouping:
        if field not in _GROUPING_FIELDS:
            raise ValueError(f"unknown grouping field {field!r}")
    if quantiles not in {"nonzero", "all"}:
        raise ValueError("quantiles must be 'nonzero' or 'all'")

    grouped: dict[tuple, list[float]] = {}
    for record in records:
        pct = record.pct_change
        if pct is None:
            continue
        key = tuple(_group_value(record, f, subgroup_meta) for f in grouping)
        grouped.setdefault(key, []).append(pct)

    stats: list[SummaryStat] = []
    for key in sorted(grouped):
        values = grouped[key]
        if not values:
            log.warning("summarize: empty group %s omitted", key)
            continue
        reduced = sum(1 for v in values if v < -zero_epsilon)
        increased = sum(1 for v in values if v > zero_epsilon)
        zero = len(values) - reduced - increased
        basis = values
        if quantiles == "nonzero":
            nonzero = [v for v in values if abs(v) > zero_epsilon]
            if nonzero:
                basis = nonzero
        stats.append(
            SummaryStat(
                key=key,
                n=len(values),
                median=quantile_linear(basis, 0.5),
                q25=quantile_linear(basis, 0.25),
                q75=quantile_linear(basis, 0.75),
                mean=sum(basis) / len(basis),
                share_reduced=reduced / len(values),
                share_zero=zero / len(values),
                share_increased=increased / len(values),
            )
        )
    return stats


# --- decompositions ----------------------------------------------------------


def decompose_by_vehicle(
    dataset: Dataset,
    scenarios: Sequence[ScenarioKind],
    fspec: FortifySpec,
    workers: int = 1,
    baseline: Optional[Mapping[CellKey, DietSolution]] = None,
) -> dict[VehicleKind, list[DeltaRecord]]:
    """Re-run the batch fortifying one food vehicle at a time."""
    out: dict[VehicleKind, list[DeltaRecord]] = {}
    for vehicle in VehicleKind:
        spec = replace(fspec, vehicle_filter=frozenset({vehicle}))
        out[vehicle] = run_batch_full(
            dataset, scenarios, spec, workers=workers, baseline=baseline
        ).records
    return out


def decompose_by_nutrient(
    dataset: Dataset,
    scenarios: Sequence[ScenarioKind],
    fspec: FortifySpec,
    workers: int = 1,
    baseline: Optional[Mapping[CellKey, DietSolution]] = None,
) -> tuple[dict[NutrientId, list[DeltaRecord]], dict[NutrientId, int]]:
    """Re-run the batch fortifying one nutrient at a time.

    Also returns the number of countries with a documented standard for each
    nutrient (the sample-size labels on the nutrient decomposition figure).
    """
    nutrients = sorted({s.nutrient for s in dataset.standards}, key=lambda n: n.value)
    country_counts = {
        nutrient: len({s.country for s in dataset.standards if s.nutrient is nutrient})
        for nutrient in nutrients
    }
    out: dict[NutrientId, list[DeltaRecord]] = {}
    for nutrient in nutrients:
        spec = replace(fspec, nutrient_filter=frozenset({nutrient}))
        out[nutrient] = run_batch_full(
            dataset, scenarios, spec, workers=workers, baseline=baseline
        ).records
    return out, country_counts


# --- composition tables --------------------------------------------------------


@dataclass(frozen=True)
class ItemEnergyChange:
    scenario: ScenarioKind
    subgroup_id: str
    item_id: str
    group: FoodGroupId
    pct_of_group_target: float
    n_countries: int


def _item_kcal(solution: DietSolution, foods_by_id: Mapping[str, FoodItem]) -> dict[str, float]:
    return {
        item_id: grams / 100.0 * foods_by_id[item_id].kcal_per_100g
        for item_id, grams in solution.quantities_g.items()
    }


def item_energy_changes(
    dataset: Dataset,
    base_solutions: Mapping[CellKey, DietSolution],
    fort_solutions: Mapping[CellKey, DietSolution],
    threshold_pct: float = 3.0,
) -> tuple[list[ItemEnergyChange], list[ItemEnergyChange]]:
    """Per-item energy changes as a share of the scaled group reference.

    Returns ``(full, display)`` where the display table drops rows whose
    absolute change is at or below ``threshold_pct``.
    """
    energy_of = {g.id: g.energy_kcal_per_day for g in dataset.subgroups}
    deltas: dict[tuple[ScenarioKind, str, str], list[float]] = {}
    item_group: dict[str, FoodGroupId] = {}
    for country in dataset.countries:
        foods_by_id = {f.id: f for f in dataset.foods[country]}
        for f in dataset.foods[country]:
            item_group.setdefault(f.id, f.group)
        for key, base in base_solutions.items():
            if key[0] != country:
                continue
            fort = fort_solutions.get(key)
            if fort is None:
                log.warning("item_energy_changes: missing fortified pair for %s", key)
                continue
            if base.status is not LpStatus.OPTIMAL or fort.status is not LpStatus.OPTIMAL:
                continue
            _, subgroup_id, scenario = key
            scaled = scale_group_targets(
                dataset.hdb_targets,
                dataset.hdb_reference_energy_kcal,
                energy_of[subgroup_id],
            )
            base_kcal = _item_kcal(base, foods_by_id)
            fort_kcal = _item_kcal(fort, foods_by_id)
            for item_id in sorted(set(base_kcal) | set(fort_kcal)):
                group = item_group[item_id]
                target = scaled.get(group, 0.0)
                if target <= 0:
                    log.warning(
                        "item_energy_changes: no reference target for %s; %s skipped",
                        group.value, item_id,
                    )
                    continue
                change = fort_kcal.get(item_id, 0.0) - base_kcal.get(item_id, 0.0)
                deltas.setdefault((scenario, subgroup_id, item_id), []).append(
                    100.0 * change / target
                )

    full: list[ItemEnergyChange] = []
    for (scenario, subgroup_id, item_id) in sorted(
        deltas, key=lambda k: (k[0].value, k[1], k[2])
    ):
        values = deltas[(scenario, subgroup_id, item_id)]
        full.append(
            ItemEnergyChange(
                scenario=scenario,
                subgroup_id=subgroup_id,
                item_id=item_id,
                group=item_group[item_id],
                pct_of_group_target=sum(values) / len(values),
                n_countries=len(values),
            )
        )
    display = [row for row in full if abs(row.pct_of_group_target) > threshold_pct]
    return full, display


def group_energy_ratios(
    dataset: Dataset,
    solutions: Mapping[CellKey, DietSolution],
) -> list[tuple[FoodGroupId, ScenarioKind, float]]:
    """Mean group energy divided by the scaled reference, per (group, scenario).

    Country means are taken first at each (scenario, subgroup) cell, the
    ratio against the scaled reference is formed there, and cells are then
    averaged. Groups without a positive reference target are omitted.
    """
    energy_of = {g.id: g.energy_kcal_per_day for g in dataset.subgroups}
    cell_kcal: dict[tuple[ScenarioKind, str, FoodGroupId], list[float]] = {}
    for (country, subgroup_id, scenario), sol in solutions.items():
        if sol.status is not LpStatus.OPTIMAL:
            continue
        for group, kcal in sol.group_energy_kcal.items():
            cell_kcal.setdefault((scenario, subgroup_id, group), []).append(kcal)

    ratios: dict[tuple[FoodGroupId, ScenarioKind], list[float]] = {}
    for (scenario, subgroup_id, group), values in cell_kcal.items():
        target = dataset.hdb_targets.get(group, 0.0)
        if target <= 0:
            continue
        scale = energy_of[subgroup_id] / dataset.hdb_reference_energy_kcal
        ratios.setdefault((group, scenario), []).append(
            (sum(values) / len(values)) / (target * scale)
        )
    skipped = {
        g for (_, _, g) in cell_kcal if dataset.hdb_targets.get(g, 0.0) <= 0
    }
    for group in sorted(skipped, key=lambda g: g.value):
        log.warning("group_energy_ratios: no reference target for %s; omitted", group.value)

    out = []
    for (group, scenario) in sorted(ratios, key=lambda k: (k[0].value, k[1].value)):
        values = ratios[(group, scenario)]
        out.append((group, scenario, sum(values) / len(values)))
    return out


def basket_cost_breakdown(
    base_solution: DietSolution,
    fort_solution: DietSolution,
    base_foods: Sequence[FoodItem],
    fort_foods: Sequence[FoodItem],
) -> list[tuple[str, float, float]]:
    """Per-item daily cost under both runs; totals equal the diet costs."""
    base_price = {f.id: f.price_ppp_per_100g for f in base_foods}
    fort_price = {f.id: f.price_ppp_per_100g for f in fort_foods}
    items = sorted(set(base_solution.quantities_g) | set(fort_solution.quantities_g))
    rows = []
    for item_id in items:
        rows.append(
            (
                item_id,
                base_solution.quantities_g.get(item_id, 0.0) / 100.0 * base_price[item_id],
                fort_solution.quantities_g.get(item_id, 0.0) / 100.0 * fort_price[item_id],
            )
        )
    return rows
