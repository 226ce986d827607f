#!/usr/bin/env python3
"""Regenerate core/data/gazetteer.json from the pycountry ISO 3166 tables.

Countries are emitted in full; principal subdivisions only for the countries
listed in SUBDIVISION_COUNTRIES. Boundary versions, populations and
extension entries come from the curated tables below.
"""
import json
import sys
import unicodedata

import pycountry

SUBDIVISION_COUNTRIES = ["AU", "BR", "CA", "CH", "DE", "JP", "MX", "PL", "TH", "US", "ZA"]

EXTRA_ALIASES = {
    "US": ["USA", "U.S.", "U.S.A.", "America"],
    "GB": ["UK", "Great Britain"],
    "KR": ["South Korea"],
    "KP": ["North Korea"],
    "RU": ["Russia"],
    "CZ": ["Czech Republic"],
}

# Code -> list of version overrides. Windows are half-open [valid_from, valid_to).
VERSIONS = {
    "SD": [
        {"valid_to": "2011-07-09",
         "population": {"count": 43500000, "as_of": "2010-07-01"}},
        {"valid_from": "2011-07-09",
         "population": {"count": 33400000, "as_of": "2011-07-09"}},
    ],
    "SS": [
        {"valid_from": "2011-07-09",
         "population": {"count": 10100000, "as_of": "2011-07-09"}},
    ],
}

EXTENSIONS = [
    {"code": "US-TX-201", "name": "Harris County", "aliases": ["Harris County, Texas"],
     "extension": True},
    {"code": "US-TX-453", "name": "Travis County", "aliases": ["Travis County, Texas"],
     "extension": True},
]


def fold(s):
    out = unicodedata.normalize("NFKD", s)
    out = "".join(c for c in out if not unicodedata.combining(c)).lower()
    return " ".join(out.split())


def record(code, name, aliases):
    seen = {fold(name)}
    kept = []
    for a in aliases:
        if a and fold(a) not in seen:
            seen.add(fold(a))
            kept.append(a)
    rec = {"code": code, "name": name}
    if kept:
        rec["aliases"] = kept
    return rec


def main():
    out = []
    for c in sorted(pycountry.countries, key=lambda c: c.alpha_2):
        aliases = [getattr(c, "official_name", None), getattr(c, "common_name", None),
                   c.alpha_3] + EXTRA_ALIASES.get(c.alpha_2, [])
        base = record(c.alpha_2, c.name, aliases)
        for v in VERSIONS.get(c.alpha_2, [{}]):
            out.append({**base, **v})
    for cc in SUBDIVISION_COUNTRIES:
        subs = sorted(pycountry.subdivisions.get(country_code=cc), key=lambda s: s.code)
        for s in subs:
            if s.parent_code is not None:
                continue
            out.append(record(s.code, s.name, []))
    out.extend(EXTENSIONS)
    json.dump(out, sys.stdout, ensure_ascii=False, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
