#!/usr/bin/env python3
"""Builds data/real_cities.csv and src/genlib/real_cities_data.inc.

Source: GeoNames (CC BY 4.0) as redistributed by the `geonamescache` Python
package (version 3.0.2, cities1000.json + countries.json).

Selection rule (deterministic):
  1. one national capital per country: the most populous city in the country
     whose name matches countries.json `capital`;
  2. first-level administrative centres, approximated as the most populous
     city of each (country, admin1) region, taken in descending population
     order until the list holds 1,000 rows.
Rows are ordered by (selection stage, -population, geonameid) and then
shuffled with a fixed seed so that each consecutive block of 100 rows mixes
continents.
"""
import csv
import json
import pathlib
import random
import sys

root = pathlib.Path(__file__).resolve().parents[1]
data_dir = pathlib.Path(sys.argv[1])

cities = json.load(open(data_dir / "cities1000.json"))
countries = json.load(open(data_dir / "countries.json"))

by_country = {}
for c in cities.values():
    by_country.setdefault(c["countrycode"], []).append(c)

chosen = {}
capitals = []
for iso, info in sorted(countries.items()):
    cap = info.get("capital") or ""
    cands = [c for c in by_country.get(iso, []) if c["name"] == cap]
    if not cands:
        continue
    best = max(cands, key=lambda c: (c["population"], -c["geonameid"]))
    capitals.append(best)
    chosen[best["geonameid"]] = "capital"

regional = {}
for c in cities.values():
    if c["geonameid"] in chosen:
        continue
    key = (c["countrycode"], c.get("admin1code") or "")
    if key[1] in ("", "00"):
        continue
    cur = regional.get(key)
    if cur is None or (c["population"], -c["geonameid"]) > (cur["population"], -cur["geonameid"]):
        regional[key] = c
capital_regions = {(c["countrycode"], c.get("admin1code") or "") for c in capitals}
admin = sorted((c for k, c in regional.items() if k not in capital_regions),
               key=lambda c: (-c["population"], c["geonameid"]))

rows = [(c, "national_capital") for c in sorted(capitals, key=lambda c: (-c["population"], c["geonameid"]))]
for c in admin:
    if len(rows) >= 1000:
        break
    rows.append((c, "admin1_centre"))
assert len(rows) == 1000, len(rows)
random.Random(20251118).shuffle(rows)

with open(root / "data" / "real_cities.csv", "w", newline="") as f:
    f.write("# 1,000 real-world city targets: national capitals plus first-level\n")
    f.write("# administrative centres. Coordinates from GeoNames (CC BY 4.0,\n")
    f.write("# https://www.geonames.org) via geonamescache 3.0.2. Generated by\n")
    f.write("# tools/make_real_cities.py; consecutive blocks of 100 rows form the\n")
    f.write("# 10 disjoint subsets.\n")
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["geonameid", "name", "country", "kind", "lat", "lon"])
    for c, kind in rows:
        w.writerow([c["geonameid"], c["name"], c["countrycode"], kind,
                    f"{c['latitude']:.5f}", f"{c['longitude']:.5f}"])

with open(root / "src" / "genlib" / "real_cities_data.inc", "w") as f:
    f.write("// Generated by tools/make_real_cities.py from data/real_cities.csv.\n")
    for c, kind in rows:
        name = c["name"].replace("\\", "\\\\").replace('"', '\\"')
        f.write(f'{{"{name}", "{c["countrycode"]}", {c["latitude"]:.5f}, {c["longitude"]:.5f}}},\n')
print("wrote", len(rows), "rows;", sum(1 for _, k in rows if k == "national_capital"), "capitals")
