#!/usr/bin/env python3
"""Generate the bundled synthetic fixture under fixtures/synthetic/.

Six fictional countries across three regions, 47 foods each (composition
jittered per country around shared archetypes), the 22-subgroup roster,
requirements derived from a reference table, wide-IQR supply series, and
fortification standards/premix for five of the six countries. The script
verifies that every (country, subgroup, scenario) cell solves to optimality
for both baseline and fortified runs before writing anything.

Deterministic: seeded RNG, canonical serialization via save_dataset.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dietcost.analysis import SCENARIO_ORDER, run_batch
from dietcost.core import (
    ConstraintKind,
    FoodGroupId,
    FoodItem,
    FortificationStandard,
    NutrientConstraint,
    NutrientId,
    PhysiologicalStatus,
    PremixCost,
    RequirementSet,
    Sex,
    SexAgeGroup,
    VehicleKind,
)
from dietcost.dataio import Dataset, SuaSeries, save_dataset
from dietcost.fortify import FortifySpec

OUT_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "synthetic"
SEED = 20240917

COUNTRIES = {
    "Arvela": "Latin America & Caribbean",
    "Brontia": "Latin America & Caribbean",
    "Corvia": "Sub-Saharan Africa",
    "Dagoma": "Sub-Saharan Africa",
    "Entara": "South Asia",
    "Feloria": "South Asia",
}
PRICE_LEVEL = {
    "Arvela": 1.25, "Brontia": 1.10, "Corvia": 0.80,
    "Dagoma": 0.70, "Entara": 0.90, "Feloria": 0.95,
}

# (id, name, group, vehicle, bread, price_ppp_100g, composition per 100 g)
# Macros in g; energy is 4*protein + 9*lipids + 4*carbohydrate.
FOODS = [
    ("wheat_flour", "Wheat flour, white", "starchy_staples", "wheat_flour", 0, 0.07,
     dict(protein=10.3, lipids=1.0, carbohydrate=73.0, calcium=15, choline=10, copper=0.14,
          folate=26, iron=1.2, magnesium=22, manganese=0.68, niacin=1.25, phosphorus=108,
          riboflavin=0.04, selenium=34, sodium=2, thiamin=0.12, vitamin_b5=0.44,
          vitamin_b6=0.04, vitamin_e=0.06, zinc=0.7)),
    ("white_bread", "Bread, white flour", "starchy_staples", None, 1, 0.16,
     dict(protein=9.0, lipids=3.2, carbohydrate=49.0, calcium=150, choline=15, copper=0.1,
          folate=30, iron=1.0, magnesium=23, manganese=0.5, niacin=1.3, phosphorus=99,
          riboflavin=0.09, selenium=22, sodium=490, thiamin=0.1, vitamin_b5=0.4,
          vitamin_b6=0.06, vitamin_e=0.2, zinc=0.74)),
    ("wholegrain_bread", "Bread, whole grain", "starchy_staples", None, 0, 0.22,
     dict(protein=13.0, lipids=3.5, carbohydrate=41.0, calcium=107, choline=27, copper=0.23,
          folate=42, iron=2.5, magnesium=75, manganese=2.1, niacin=4.4, phosphorus=212,
          riboflavin=0.17, selenium=26, sodium=450, thiamin=0.39, vitamin_b5=0.65,
          vitamin_b6=0.21, vitamin_e=0.5, zinc=1.8)),
    ("white_rice", "Rice, white, milled", "starchy_staples", "rice", 0, 0.10,
     dict(protein=7.1, lipids=0.7, carbohydrate=80.0, calcium=28, choline=5.8, copper=0.22,
          folate=8, iron=0.8, magnesium=25, manganese=1.09, niacin=1.6, phosphorus=115,
          riboflavin=0.05, selenium=15, sodium=5, thiamin=0.07, vitamin_b5=1.0,
          vitamin_b6=0.16, vitamin_e=0.1, zinc=1.09)),
    ("brown_rice", "Rice, brown", "starchy_staples", None, 0, 0.13,
     dict(protein=7.9, lipids=2.9, carbohydrate=77.0, calcium=23, choline=30, copper=0.28,
          folate=20, iron=1.5, magnesium=143, manganese=3.7, niacin=5.0, phosphorus=333,
          riboflavin=0.09, selenium=23, sodium=7, thiamin=0.4, vitamin_b5=1.5,
          vitamin_b6=0.5, vitamin_e=1.2, zinc=2.0)),
    ("maize_flour", "Maize flour", "starchy_staples", "maize_flour", 0, 0.06,
     dict(protein=8.1, lipids=3.6, carbohydrate=76.0, calcium=7, choline=22, copper=0.19,
          folate=25, iron=2.4, magnesium=93, manganese=0.46, niacin=1.9, phosphorus=241,
          riboflavin=0.08, selenium=15, sodium=5, thiamin=0.25, vitamin_b5=0.65,
          vitamin_b6=0.37, vitamin_e=0.42, zinc=1.7)),
    ("pasta", "Pasta, dry", "starchy_staples", None, 0, 0.14,
     dict(protein=13.0, lipids=1.5, carbohydrate=75.0, calcium=21, choline=15, copper=0.29,
          folate=18, iron=1.3, magnesium=53, manganese=0.92, niacin=1.7, phosphorus=189,
          riboflavin=0.06, selenium=63, sodium=6, thiamin=0.09, vitamin_b5=0.43,
          vitamin_b6=0.14, vitamin_e=0.11, zinc=1.41)),
    ("potato", "Potatoes, fresh", "starchy_staples", None, 0, 0.09,
     dict(protein=2.0, lipids=0.1, carbohydrate=17.0, calcium=12, choline=12, copper=0.11,
          folate=15, iron=0.8, magnesium=23, manganese=0.15, niacin=1.05, phosphorus=57,
          riboflavin=0.03, selenium=0.4, sodium=6, thiamin=0.08, vitamin_b5=0.3,
          vitamin_b6=0.3, vitamin_c=20, vitamin_e=0.01, zinc=0.3)),
    ("sweet_potato", "Sweet potatoes", "starchy_staples", None, 0, 0.11,
     dict(protein=1.6, lipids=0.1, carbohydrate=20.0, calcium=30, choline=12, copper=0.15,
          folate=11, iron=0.6, magnesium=25, manganese=0.26, niacin=0.56, phosphorus=47,
          riboflavin=0.06, selenium=0.6, sodium=55, thiamin=0.08, vitamin_a=709,
          vitamin_b5=0.8, vitamin_b6=0.21, vitamin_c=2.4, vitamin_e=0.26, zinc=0.3)),
    ("cassava", "Cassava, fresh", "starchy_staples", None, 0, 0.05,
     dict(protein=1.4, lipids=0.3, carbohydrate=38.0, calcium=16, choline=24, copper=0.1,
          folate=27, iron=0.27, magnesium=21, manganese=0.38, niacin=0.85, phosphorus=27,
          riboflavin=0.05, selenium=0.7, sodium=14, thiamin=0.09, vitamin_b5=0.11,
          vitamin_b6=0.09, vitamin_c=20.6, vitamin_e=0.19, zinc=0.34)),
    ("oats", "Oats, rolled", "starchy_staples", None, 0, 0.18,
     dict(protein=17.0, lipids=7.0, carbohydrate=66.0, calcium=54, choline=40, copper=0.63,
          folate=56, iron=4.7, magnesium=177, manganese=4.9, niacin=0.96, phosphorus=523,
          riboflavin=0.14, selenium=29, sodium=2, thiamin=0.76, vitamin_b5=1.35,
          vitamin_b6=0.12, vitamin_e=0.7, zinc=4.0)),
    ("sorghum_flour", "Sorghum flour", "starchy_staples", None, 0, 0.07,
     dict(protein=8.4, lipids=3.3, carbohydrate=77.0, calcium=13, choline=20, copper=0.26,
          folate=20, iron=3.1, magnesium=123, manganese=1.6, niacin=3.7, phosphorus=289,
          riboflavin=0.1, selenium=12, sodium=2, thiamin=0.33, vitamin_b5=0.37,
          vitamin_b6=0.44, vitamin_e=0.5, zinc=1.7)),
    ("spinach", "Spinach, fresh", "vegetables", None, 0, 0.25,
     dict(protein=2.9, lipids=0.4, carbohydrate=3.6, calcium=99, choline=19, copper=0.13,
          folate=194, iron=2.7, magnesium=79, manganese=0.9, niacin=0.72, phosphorus=49,
          riboflavin=0.19, selenium=1.0, sodium=79, thiamin=0.08, vitamin_a=469,
          vitamin_b5=0.07, vitamin_b6=0.2, vitamin_c=28, vitamin_e=2.0, zinc=0.53)),
    ("cabbage", "Cabbage, fresh", "vegetables", None, 0, 0.10,
     dict(protein=1.3, lipids=0.1, carbohydrate=5.8, calcium=40, choline=11, copper=0.02,
          folate=43, iron=0.47, magnesium=12, manganese=0.16, niacin=0.23, phosphorus=26,
          riboflavin=0.04, selenium=0.3, sodium=18, thiamin=0.06, vitamin_a=5,
          vitamin_b5=0.21, vitamin_b6=0.12, vitamin_c=36.6, vitamin_e=0.15, zinc=0.18)),
    ("carrot", "Carrots, fresh", "vegetables", None, 0, 0.12,
     dict(protein=0.9, lipids=0.2, carbohydrate=9.6, calcium=33, choline=8.8, copper=0.05,
          folate=19, iron=0.3, magnesium=12, manganese=0.14, niacin=0.98, phosphorus=35,
          riboflavin=0.06, selenium=0.1, sodium=69, thiamin=0.07, vitamin_a=835,
          vitamin_b5=0.27, vitamin_b6=0.14, vitamin_c=5.9, vitamin_e=0.66, zinc=0.24)),
    ("tomato", "Tomatoes, fresh", "vegetables", None, 0, 0.15,
     dict(protein=0.9, lipids=0.2, carbohydrate=3.9, calcium=10, choline=6.7, copper=0.06,
          folate=15, iron=0.27, magnesium=11, manganese=0.11, niacin=0.59, phosphorus=24,
          riboflavin=0.02, selenium=0.0, sodium=5, thiamin=0.04, vitamin_a=42,
          vitamin_b5=0.09, vitamin_b6=0.08, vitamin_c=13.7, vitamin_e=0.54, zinc=0.17)),
    ("onion", "Onions, fresh", "vegetables", None, 0, 0.09,
     dict(protein=1.1, lipids=0.1, carbohydrate=9.3, calcium=23, choline=6.1, copper=0.04,
          folate=19, iron=0.21, magnesium=10, manganese=0.13, niacin=0.12, phosphorus=29,
          riboflavin=0.03, selenium=0.5, sodium=4, thiamin=0.05, vitamin_b5=0.12,
          vitamin_b6=0.12, vitamin_c=7.4, vitamin_e=0.02, zinc=0.17)),
    ("kale", "Kale, fresh", "vegetables", None, 0, 0.21,
     dict(protein=4.3, lipids=0.9, carbohydrate=8.8, calcium=150, choline=0.8, copper=0.15,
          folate=62, iron=1.47, magnesium=47, manganese=0.66, niacin=1.0, phosphorus=92,
          riboflavin=0.13, selenium=0.9, sodium=38, thiamin=0.11, vitamin_a=500,
          vitamin_b5=0.09, vitamin_b6=0.27, vitamin_c=120, vitamin_e=1.54, zinc=0.56)),
    ("pumpkin", "Pumpkin, fresh", "vegetables", None, 0, 0.08,
     dict(protein=1.0, lipids=0.1, carbohydrate=6.5, calcium=21, choline=8.2, copper=0.13,
          folate=16, iron=0.8, magnesium=12, manganese=0.13, niacin=0.6, phosphorus=44,
          riboflavin=0.11, selenium=0.3, sodium=1, thiamin=0.05, vitamin_a=426,
          vitamin_b5=0.3, vitamin_b6=0.06, vitamin_c=9, vitamin_e=1.06, zinc=0.32)),
    ("green_beans", "Green beans, fresh", "vegetables", None, 0, 0.14,
     dict(protein=1.8, lipids=0.2, carbohydrate=7.0, calcium=37, choline=15, copper=0.07,
          folate=33, iron=1.03, magnesium=25, manganese=0.22, niacin=0.73, phosphorus=38,
          riboflavin=0.1, selenium=0.6, sodium=6, thiamin=0.08, vitamin_a=35,
          vitamin_b5=0.23, vitamin_b6=0.14, vitamin_c=12.2, vitamin_e=0.41, zinc=0.24)),
    ("banana", "Bananas, fresh", "fruits", None, 0, 0.11,
     dict(protein=1.1, lipids=0.3, carbohydrate=23.0, calcium=5, choline=9.8, copper=0.08,
          folate=20, iron=0.26, magnesium=27, manganese=0.27, niacin=0.67, phosphorus=22,
          riboflavin=0.07, selenium=1.0, sodium=1, thiamin=0.03, vitamin_a=3,
          vitamin_b5=0.33, vitamin_b6=0.37, vitamin_c=8.7, vitamin_e=0.1, zinc=0.15)),
    ("orange", "Oranges, fresh", "fruits", None, 0, 0.13,
     dict(protein=0.9, lipids=0.1, carbohydrate=12.0, calcium=40, choline=8.4, copper=0.05,
          folate=30, iron=0.1, magnesium=10, manganese=0.03, niacin=0.28, phosphorus=14,
          riboflavin=0.04, selenium=0.5, sodium=0.4, thiamin=0.09, vitamin_a=11,
          vitamin_b5=0.25, vitamin_b6=0.06, vitamin_c=53.2, vitamin_e=0.18, zinc=0.07)),
    ("mango", "Mangoes, fresh", "fruits", None, 0, 0.12,
     dict(protein=0.8, lipids=0.4, carbohydrate=15.0, calcium=11, choline=7.6, copper=0.11,
          folate=43, iron=0.16, magnesium=10, manganese=0.06, niacin=0.67, phosphorus=14,
          riboflavin=0.04, selenium=0.6, sodium=1, thiamin=0.03, vitamin_a=54,
          vitamin_b5=0.2, vitamin_b6=0.12, vitamin_c=36.4, vitamin_e=0.9, zinc=0.09)),
    ("apple", "Apples, fresh", "fruits", None, 0, 0.14,
     dict(protein=0.3, lipids=0.2, carbohydrate=14.0, calcium=6, choline=3.4, copper=0.03,
          folate=3, iron=0.12, magnesium=5, manganese=0.04, niacin=0.09, phosphorus=11,
          riboflavin=0.03, selenium=0.0, sodium=1, thiamin=0.02, vitamin_a=3,
          vitamin_b5=0.06, vitamin_b6=0.04, vitamin_c=4.6, vitamin_e=0.18, zinc=0.04)),
    ("papaya", "Papayas, fresh", "fruits", None, 0, 0.10,
     dict(protein=0.5, lipids=0.3, carbohydrate=11.0, calcium=20, choline=6.1, copper=0.05,
          folate=37, iron=0.25, magnesium=21, manganese=0.04, niacin=0.36, phosphorus=10,
          riboflavin=0.03, selenium=0.6, sodium=8, thiamin=0.02, vitamin_a=47,
          vitamin_b5=0.19, vitamin_b6=0.04, vitamin_c=60.9, vitamin_e=0.3, zinc=0.08)),
    ("avocado", "Avocados, fresh", "fruits", None, 0, 0.28,
     dict(protein=2.0, lipids=15.0, carbohydrate=9.0, calcium=12, choline=14.2, copper=0.19,
          folate=81, iron=0.55, magnesium=29, manganese=0.14, niacin=1.74, phosphorus=52,
          riboflavin=0.13, selenium=0.4, sodium=7, thiamin=0.07, vitamin_a=7,
          vitamin_b5=1.39, vitamin_b6=0.26, vitamin_c=10, vitamin_e=2.07, zinc=0.64)),
    ("dry_beans", "Beans, dry", "legumes_nuts_seeds", None, 0, 0.17,
     dict(protein=21.0, lipids=1.2, carbohydrate=63.0, calcium=123, choline=66, copper=0.84,
          folate=394, iron=5.1, magnesium=140, manganese=1.06, niacin=2.06, phosphorus=407,
          riboflavin=0.19, selenium=3.2, sodium=5, thiamin=0.63, vitamin_b5=0.78,
          vitamin_b6=0.32, vitamin_c=4.5, vitamin_e=0.21, zinc=2.8)),
    ("lentils", "Lentils, dry", "legumes_nuts_seeds", None, 0, 0.16,
     dict(protein=24.6, lipids=1.1, carbohydrate=63.0, calcium=35, choline=96, copper=0.75,
          folate=479, iron=6.5, magnesium=47, manganese=1.39, niacin=2.6, phosphorus=281,
          riboflavin=0.21, selenium=0.1, sodium=6, thiamin=0.87, vitamin_b5=2.14,
          vitamin_b6=0.54, vitamin_c=4.5, vitamin_e=0.49, zinc=3.3)),
    ("chickpeas", "Chickpeas, dry", "legumes_nuts_seeds", None, 0, 0.19,
     dict(protein=20.5, lipids=6.0, carbohydrate=63.0, calcium=57, choline=99, copper=0.66,
          folate=557, iron=4.3, magnesium=79, manganese=2.2, niacin=1.54, phosphorus=252,
          riboflavin=0.21, selenium=8.2, sodium=24, thiamin=0.48, vitamin_a=3,
          vitamin_b5=1.59, vitamin_b6=0.54, vitamin_c=4, vitamin_e=0.82, zinc=2.76)),
    ("peanuts", "Groundnuts, shelled", "legumes_nuts_seeds", None, 0, 0.24,
     dict(protein=25.8, lipids=49.0, carbohydrate=16.0, calcium=92, choline=52, copper=1.14,
          folate=240, iron=4.6, magnesium=168, manganese=1.93, niacin=12.1, phosphorus=376,
          riboflavin=0.14, selenium=7.2, sodium=18, thiamin=0.64, vitamin_b5=1.77,
          vitamin_b6=0.35, vitamin_e=8.33, zinc=3.3)),
    ("sunflower_seeds", "Sunflower seeds", "legumes_nuts_seeds", None, 0, 0.26,
     dict(protein=21.0, lipids=51.0, carbohydrate=20.0, calcium=78, choline=55, copper=1.8,
          folate=227, iron=5.25, magnesium=325, manganese=1.95, niacin=8.34, phosphorus=660,
          riboflavin=0.36, selenium=53, sodium=9, thiamin=1.48, vitamin_b5=1.13,
          vitamin_b6=1.35, vitamin_c=1.4, vitamin_e=35.2, zinc=5.0)),
    ("soybeans", "Soybeans, dry", "legumes_nuts_seeds", None, 0, 0.22,
     dict(protein=36.0, lipids=20.0, carbohydrate=30.0, calcium=277, choline=116, copper=1.66,
          folate=375, iron=15.7, magnesium=280, manganese=2.52, niacin=1.62, phosphorus=704,
          riboflavin=0.87, selenium=17.8, sodium=2, thiamin=0.87, vitamin_a=1,
          vitamin_b5=0.79, vitamin_b6=0.38, vitamin_c=6, vitamin_e=0.85, zinc=4.89)),
    ("fava_beans", "Fava beans, dry", "legumes_nuts_seeds", None, 0, 0.15,
     dict(protein=26.0, lipids=1.5, carbohydrate=58.0, calcium=103, choline=95, copper=0.82,
          folate=423, iron=6.7, magnesium=192, manganese=1.63, niacin=2.83, phosphorus=421,
          riboflavin=0.33, selenium=8.2, sodium=13, thiamin=0.56, vitamin_b5=0.98,
          vitamin_b6=0.37, vitamin_c=1.4, vitamin_e=0.05, zinc=3.14)),
    ("whole_milk", "Milk, whole, fresh", "animal_source_foods", None, 0, 0.09,
     dict(protein=3.2, lipids=3.3, carbohydrate=4.8, calcium=113, choline=14.3, copper=0.03,
          folate=5, iron=0.03, magnesium=10, manganese=0.0, niacin=0.09, phosphorus=84,
          retinol=46, riboflavin=0.17, selenium=3.7, sodium=43, thiamin=0.05, vitamin_a=46,
          vitamin_b5=0.37, vitamin_b6=0.04, vitamin_b12=0.45, vitamin_c=0, vitamin_e=0.07,
          zinc=0.37)),
    ("yogurt", "Yogurt, plain", "animal_source_foods", None, 0, 0.13,
     dict(protein=3.5, lipids=3.3, carbohydrate=4.7, calcium=121, choline=15.2, copper=0.01,
          folate=7, iron=0.05, magnesium=12, manganese=0.0, niacin=0.08, phosphorus=95,
          retinol=27, riboflavin=0.14, selenium=2.2, sodium=46, thiamin=0.03, vitamin_a=27,
          vitamin_b5=0.39, vitamin_b6=0.03, vitamin_b12=0.37, vitamin_c=0.5, vitamin_e=0.06,
          zinc=0.59)),
    ("cheese", "Cheese, hard", "animal_source_foods", None, 0, 0.55,
     dict(protein=25.0, lipids=33.0, carbohydrate=1.3, calcium=721, choline=16.5, copper=0.03,
          folate=18, iron=0.68, magnesium=28, manganese=0.01, niacin=0.08, phosphorus=512,
          retinol=263, riboflavin=0.38, selenium=14.5, sodium=621, thiamin=0.03, vitamin_a=263,
          vitamin_b5=0.41, vitamin_b6=0.07, vitamin_b12=0.83, vitamin_e=0.24, zinc=3.1)),
    ("eggs", "Eggs, fresh", "animal_source_foods", None, 0, 0.22,
     dict(protein=12.6, lipids=9.5, carbohydrate=0.7, calcium=56, choline=294, copper=0.07,
          folate=47, iron=1.75, magnesium=12, manganese=0.03, niacin=0.07, phosphorus=198,
          retinol=160, riboflavin=0.46, selenium=30.7, sodium=142, thiamin=0.04, vitamin_a=160,
          vitamin_b5=1.53, vitamin_b6=0.17, vitamin_b12=0.89, vitamin_e=1.05, zinc=1.29)),
    ("chicken", "Chicken meat, fresh", "animal_source_foods", None, 0, 0.30,
     dict(protein=27.0, lipids=14.0, carbohydrate=0.0, calcium=15, choline=79, copper=0.07,
          folate=6, iron=1.26, magnesium=23, manganese=0.02, niacin=8.49, phosphorus=182,
          retinol=16, riboflavin=0.17, selenium=22, sodium=82, thiamin=0.06, vitamin_a=16,
          vitamin_b5=1.06, vitamin_b6=0.4, vitamin_b12=0.3, vitamin_e=0.27, zinc=1.94)),
    ("beef", "Beef, fresh", "animal_source_foods", None, 0, 0.45,
     dict(protein=26.0, lipids=15.0, carbohydrate=0.0, calcium=18, choline=85, copper=0.08,
          folate=7, iron=2.6, magnesium=21, manganese=0.01, niacin=4.82, phosphorus=198,
          retinol=2, riboflavin=0.15, selenium=26, sodium=72, thiamin=0.07, vitamin_a=2,
          vitamin_b5=0.65, vitamin_b6=0.38, vitamin_b12=2.64, vitamin_e=0.1, zinc=6.31)),
    ("pork", "Pork, fresh", "animal_source_foods", None, 0, 0.40,
     dict(protein=27.0, lipids=14.0, carbohydrate=0.0, calcium=19, choline=94, copper=0.07,
          folate=5, iron=0.87, magnesium=28, manganese=0.01, niacin=4.58, phosphorus=226,
          retinol=2, riboflavin=0.32, selenium=38, sodium=62, thiamin=0.7, vitamin_a=2,
          vitamin_b5=0.86, vitamin_b6=0.47, vitamin_b12=0.7, vitamin_e=0.29, zinc=2.39)),
    ("sardines", "Sardines, fresh", "animal_source_foods", None, 0, 0.38,
     dict(protein=24.6, lipids=11.5, carbohydrate=0.0, calcium=382, choline=75, copper=0.19,
          folate=10, iron=2.9, magnesium=39, manganese=0.11, niacin=5.25, phosphorus=490,
          retinol=32, riboflavin=0.23, selenium=52.7, sodium=307, thiamin=0.08, vitamin_a=32,
          vitamin_b5=0.64, vitamin_b6=0.17, vitamin_b12=8.9, vitamin_e=2.04, zinc=1.31)),
    ("tilapia", "Tilapia, fresh", "animal_source_foods", None, 0, 0.33,
     dict(protein=26.0, lipids=2.7, carbohydrate=0.0, calcium=14, choline=57, copper=0.08,
          folate=6, iron=0.69, magnesium=34, manganese=0.04, niacin=4.74, phosphorus=204,
          retinol=0, riboflavin=0.07, selenium=54, sodium=56, thiamin=0.09, vitamin_a=0,
          vitamin_b5=0.66, vitamin_b6=0.12, vitamin_b12=1.86, vitamin_e=0.79, zinc=0.41)),
    ("beef_liver", "Beef liver, fresh", "animal_source_foods", None, 0, 0.35,
     dict(protein=26.0, lipids=4.9, carbohydrate=5.1, calcium=6, choline=333, copper=9.76,
          folate=290, iron=4.9, magnesium=21, manganese=0.36, niacin=13.2, phosphorus=387,
          retinol=7000, riboflavin=2.76, selenium=39.7, sodium=79, thiamin=0.2, vitamin_a=7000,
          vitamin_b5=7.17, vitamin_b6=1.08, vitamin_b12=59.3, vitamin_c=1.3, vitamin_e=0.52,
          zinc=4.0)),
    ("vegetable_oil", "Vegetable oil", "oils_fats", "oil", 0, 0.18,
     dict(protein=0.0, lipids=100.0, carbohydrate=0.0, choline=0.2, vitamin_e=14.35)),
    ("palm_oil", "Palm oil", "oils_fats", None, 0, 0.14,
     dict(protein=0.0, lipids=100.0, carbohydrate=0.0, vitamin_e=15.9)),
    ("butter", "Butter", "oils_fats", None, 0, 0.42,
     dict(protein=0.9, lipids=81.0, carbohydrate=0.1, calcium=24, choline=18.8, copper=0.0,
          folate=3, iron=0.02, magnesium=2, niacin=0.04, phosphorus=24, retinol=671,
          riboflavin=0.03, selenium=1.0, sodium=643, vitamin_a=684, vitamin_b5=0.11,
          vitamin_b12=0.17, vitamin_e=2.32, zinc=0.09)),
    ("margarine", "Margarine", "oils_fats", None, 0, 0.25,
     dict(protein=0.2, lipids=80.0, carbohydrate=0.7, calcium=3, choline=3.1,
          folate=1, magnesium=3, phosphorus=5, retinol=0, riboflavin=0.04, sodium=700,
          vitamin_a=300, vitamin_e=9.0, zinc=0.06)),
]

SUBGROUPS = [
    # (id, sex, age_low, age_high, status, energy kcal/day)
    ("child_male_4_6", "male", 4, 6, "none", 1450),
    ("child_female_4_6", "female", 4, 6, "none", 1350),
    ("child_male_7_10", "male", 7, 10, "none", 1900),
    ("child_female_7_10", "female", 7, 10, "none", 1750),
    ("male_11_14", "male", 11, 14, "none", 2500),
    ("male_15_17", "male", 15, 17, "none", 3000),
    ("male_18_24", "male", 18, 24, "none", 3000),
    ("male_25_50", "male", 25, 50, "none", 2900),
    ("male_51_70", "male", 51, 70, "none", 2700),
    ("male_71_79", "male", 71, 79, "none", 2500),
    ("male_80_plus", "male", 80, 99, "none", 2300),
    ("female_11_14", "female", 11, 14, "none", 2200),
    ("female_15_17", "female", 15, 17, "none", 2400),
    ("female_18_24", "female", 18, 24, "none", 2400),
    ("female_25_50", "female", 25, 50, "none", 2300),
    ("female_51_70", "female", 51, 70, "none", 2200),
    ("female_71_79", "female", 71, 79, "none", 2100),
    ("female_80_plus", "female", 80, 99, "none", 2000),
    ("pregnant_under_18", "female", 11, 17, "pregnant", 2700),
    ("pregnant_18_plus", "female", 18, 50, "pregnant", 2600),
    ("lactating_under_18", "female", 11, 17, "lactating", 2900),
    ("lactating_18_plus", "female", 18, 50, "lactating", 2800),
]

REFERENCE_ENERGY = 2300.0

# nutrient -> (kind, lower, upper) at the reference energy; lowers scale with
# energy, uppers scale with energy clipped to [0.55, 1.15].
MICRO_BASE = {
    "calcium": ("range", 860, 2500),
    "choline": ("range", 400, 3500),
    "copper": ("range", 0.9, 5.0),
    "folate": ("lower", 250, None),
    "iron": ("range", 6.2, 45.0),
    "magnesium": ("lower", 265, None),
    "manganese": ("range", 2.2, 11.0),
    "niacin": ("lower", 11.0, None),
    "phosphorus": ("range", 580, 4000),
    "retinol": ("upper", None, 3000),
    "riboflavin": ("lower", 0.9, None),
    "selenium": ("range", 45, 400),
    "sodium": ("upper", None, 2300),
    "thiamin": ("lower", 0.9, None),
    "vitamin_a": ("lower", 490, None),
    "vitamin_b5": ("lower", 4.0, None),
    "vitamin_b6": ("range", 1.1, 95.0),
    "vitamin_b12": ("lower", 2.0, None),
    "vitamin_c": ("range", 60, 1900),
    "vitamin_e": ("range", 9.0, 950.0),
    "zinc": ("range", 8.9, 40.0),
}

PREGNANT_MULT = {"folate": 1.5, "vitamin_b12": 1.2, "choline": 1.1, "zinc": 1.25}
LACTATING_MULT = {
    "folate": 1.25, "vitamin_b12": 1.2, "choline": 1.2, "zinc": 1.25,
    "vitamin_a": 1.3, "vitamin_c": 1.25,
}

# country -> vehicle -> {nutrient: level mg/kg}
STANDARDS = {
    "Arvela": {
        "wheat_flour": dict(iron=30, folate=1.3, thiamin=4.0, riboflavin=2.6,
                            niacin=35, zinc=30, calcium=1500, vitamin_b12=0.01),
        "rice": dict(iron=35, folate=1.3),
        "oil": dict(vitamin_a=20),
    },
    "Brontia": {
        "wheat_flour": dict(iron=45, folate=2.0, vitamin_b12=0.02),
        "oil": dict(vitamin_a=15),
    },
    "Corvia": {
        "maize_flour": dict(iron=30, zinc=40, folate=1.5, vitamin_b12=0.02, niacin=30),
        "oil": dict(vitamin_a=18),
    },
    "Dagoma": {
        "wheat_flour": dict(iron=60, zinc=95, selenium=0.3),
    },
    "Entara": {
        "wheat_flour": dict(iron=28, folate=1.3, vitamin_b12=0.01),
        "rice": dict(iron=40, folate=1.2, zinc=25, thiamin=3.5),
    },
    "Feloria": {},
}
# A duplicate voluntary record at a higher level; the lowest level must win.
DUPLICATE_STANDARDS = [("Brontia", "wheat_flour", "iron", 60.0, "voluntary")]

PREMIX = {
    "Arvela": {"wheat_flour": 0.02, "rice": 0.03, "oil": 0.012},
    "Brontia": {"wheat_flour": 0.015, "oil": 0.01},
    "Corvia": {"maize_flour": 0.018, "oil": 0.011},
    "Dagoma": {"wheat_flour": 0.025},
    "Entara": {"wheat_flour": 0.012, "rice": 0.02},
    "Feloria": {},
}

# group -> (lower kcal, upper kcal) at 25th/75th percentile, before jitter
SUA_BOUNDS = {
    "starchy_staples": (640, 1140),
    "fruits": (65, 140),
    "vegetables": (60, 125),
    "legumes_nuts_seeds": (75, 235),
    "animal_source_foods": (165, 550),
}

HDB = {
    "starchy_staples": 1160.0,
    "fruits": 160.0,
    "vegetables": 110.0,
    "legumes_nuts_seeds": 300.0,
    "animal_source_foods": 300.0,
    "oils_fats": 300.0,
}
HDB_REFERENCE = 2330.0


def build_foods(rng: np.random.Generator) -> dict[str, tuple[FoodItem, ...]]:
    out = {}
    for country in sorted(COUNTRIES):
        items = []
        for item_id, name, group, vehicle, bread, price, comp in FOODS:
            jittered = {}
            for key, value in comp.items():
                if value == 0:
                    jittered[key] = 0.0
                else:
                    jittered[key] = round(value * rng.uniform(0.92, 1.08), 4)
            energy = (
                4.0 * jittered.get("protein", 0.0)
                + 9.0 * jittered.get("lipids", 0.0)
                + 4.0 * jittered.get("carbohydrate", 0.0)
            )
            composition = {NutrientId.ENERGY: round(energy, 4)}
            for key, value in jittered.items():
                composition[NutrientId(key)] = value
            items.append(
                FoodItem(
                    id=item_id,
                    country=country,
                    name=name,
                    price_ppp_per_100g=round(
                        price * PRICE_LEVEL[country] * rng.uniform(0.85, 1.25), 4
                    ),
                    group=FoodGroupId(group),
                    composition=composition,
                    vehicle=VehicleKind(vehicle) if vehicle else None,
                    bread=bool(bread),
                )
            )
        out[country] = tuple(items)
    return out


def build_requirements() -> tuple[tuple[SexAgeGroup, ...], dict[str, RequirementSet]]:
    roster = []
    requirements = {}
    for sid, sex, low, high, status, energy in SUBGROUPS:
        group = SexAgeGroup(
            id=sid, sex=Sex(sex), age_low=float(low), age_high=float(high),
            status=PhysiologicalStatus(status), energy_kcal_per_day=float(energy),
        )
        roster.append(group)
        ratio = energy / REFERENCE_ENERGY
        upper_ratio = min(max(ratio, 0.55), 1.15)
        constraints = [
            NutrientConstraint(NutrientId.ENERGY, ConstraintKind.TARGET, target=float(energy)),
            NutrientConstraint(
                NutrientId.PROTEIN, ConstraintKind.RANGE,
                lower=round(0.10 * energy / 4.0, 4), upper=round(0.30 * energy / 4.0, 4),
            ),
            NutrientConstraint(
                NutrientId.LIPIDS, ConstraintKind.RANGE,
                lower=round(0.15 * energy / 9.0, 4), upper=round(0.40 * energy / 9.0, 4),
            ),
            NutrientConstraint(
                NutrientId.CARBOHYDRATE, ConstraintKind.RANGE,
                lower=round(0.40 * energy / 4.0, 4), upper=round(0.70 * energy / 4.0, 4),
            ),
        ]
        for name, (kind, lower, upper) in MICRO_BASE.items():
            nutrient = NutrientId(name)
            mult = 1.0
            if group.status is PhysiologicalStatus.PREGNANT:
                mult = PREGNANT_MULT.get(name, 1.0)
            elif group.status is PhysiologicalStatus.LACTATING:
                mult = LACTATING_MULT.get(name, 1.0)
            if name == "iron" and sex == "female" and high >= 11 and low <= 50:
                mult *= 1.6
            if name == "copper" and status in ("pregnant", "lactating"):
                constraints.append(
                    NutrientConstraint(
                        nutrient, ConstraintKind.LOWER, lower=round(1.0 * ratio, 4)
                    )
                )
                continue
            scaled_lower = None if lower is None else round(lower * ratio * mult, 4)
            scaled_upper = None if upper is None else round(upper * upper_ratio, 4)
            constraints.append(
                NutrientConstraint(
                    nutrient, ConstraintKind(kind), lower=scaled_lower, upper=scaled_upper
                )
            )
        requirements[sid] = RequirementSet(
            group=group,
            constraints=tuple(sorted(constraints, key=lambda c: c.nutrient.value)),
        )
    return tuple(roster), requirements


def build_standards() -> tuple[FortificationStandard, ...]:
    standards = []
    for country in sorted(STANDARDS):
        for vehicle in sorted(STANDARDS[country]):
            for nutrient, level in sorted(STANDARDS[country][vehicle].items()):
                standards.append(
                    FortificationStandard(
                        country=country,
                        vehicle=VehicleKind(vehicle),
                        nutrient=NutrientId(nutrient),
                        level_mg_per_kg=float(level),
                        status="mandatory",
                    )
                )
    for country, vehicle, nutrient, level, status in DUPLICATE_STANDARDS:
        standards.append(
            FortificationStandard(
                country=country, vehicle=VehicleKind(vehicle),
                nutrient=NutrientId(nutrient), level_mg_per_kg=level, status=status,
            )
        )
    return tuple(standards)


def build_sua(rng: np.random.Generator) -> dict[tuple[str, FoodGroupId], SuaSeries]:
    years = list(range(2010, 2023))
    sua = {}
    for country in sorted(COUNTRIES):
        scale = rng.uniform(0.9, 1.12)
        order = rng.permutation(len(years))
        for group_name, (lower, upper) in sorted(SUA_BOUNDS.items()):
            lo = lower * scale
            hi = upper * scale
            span = hi - lo
            # 13 sorted values whose 25th/75th percentiles are exactly lo/hi
            pattern = [
                0.80 * lo, 0.90 * lo, 0.95 * lo, lo,
                lo + 0.2 * span, lo + 0.4 * span, lo + 0.5 * span,
                lo + 0.6 * span, lo + 0.8 * span,
                hi, 1.05 * hi, 1.10 * hi, 1.20 * hi,
            ]
            kcal_by_year = {
                years[i]: round(pattern[order[i]], 4) for i in range(len(years))
            }
            sua[(country, FoodGroupId(group_name))] = SuaSeries(
                country=country, group=FoodGroupId(group_name), kcal_by_year=kcal_by_year
            )
    return sua


def build_dataset() -> Dataset:
    rng = np.random.default_rng(SEED)
    foods = build_foods(rng)
    roster, requirements = build_requirements()
    premix = {}
    for country in sorted(PREMIX):
        for vehicle, cost in sorted(PREMIX[country].items()):
            key = (country, VehicleKind(vehicle))
            premix[key] = PremixCost(
                country=country, vehicle=VehicleKind(vehicle), cost_ppp_per_kg=cost
            )
    return Dataset(
        foods=foods,
        subgroups=roster,
        requirements=requirements,
        standards=build_standards(),
        premix=premix,
        sua=build_sua(rng),
        regions=dict(sorted(COUNTRIES.items())),
        hdb_targets={FoodGroupId(k): v for k, v in HDB.items()},
        hdb_reference_energy_kcal=HDB_REFERENCE,
    )


def verify(dataset: Dataset) -> bool:
    records = run_batch(dataset, SCENARIO_ORDER, FortifySpec())
    bad = [r for r in records if not r.ok]
    pct = [r.pct_change for r in records if r.pct_change is not None]
    negative = sum(1 for p in pct if p < -1e-9)
    zero = sum(1 for p in pct if abs(p) <= 1e-9)
    positive = sum(1 for p in pct if p > 1e-9)
    print(f"cells: {len(records)}  not-ok: {len(bad)}")
    print(f"pct-change sign counts: reduced={negative} zero={zero} increased={positive}")
    if pct:
        print(f"pct range: [{min(pct):.3f}, {max(pct):.3f}]")
    for r in bad[:20]:
        print("  BAD", r.country, r.subgroup_id, r.scenario.value, r.base_status,
              r.fort_status, r.error)
    return not bad


def main() -> int:
    dataset = build_dataset()
    ok = verify(dataset)
    if not ok:
        print("verification failed; fixture not written")
        return 1
    save_dataset(dataset, OUT_DIR)
    print(f"fixture written to {OUT_DIR}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
