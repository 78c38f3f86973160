"""Locating bundled and user-supplied data files.

``$KAPPACALC_DATA`` (a directory) is searched before the files shipped with
the package, so externally ingested data sets (the degree-4 Burniat polytope,
the full blowup ledger) can be supplied without touching the install.
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

ENV_VAR = "KAPPACALC_DATA"

P4_POINTS = "p4.pts"
P4_HEXAGON = "hexagon4d.pts"
KAPPA1_LEDGER = "burniat_kappa1.json"
KAPPA2_LEDGER = "burniat_kappa2.json"


def bundled_dir() -> Path:
    return Path(str(resources.files("kappacalc") / "data"))


def search_path() -> list:
    extra = os.environ.get(ENV_VAR)
    return ([Path(extra)] if extra else []) + [bundled_dir()]


def find_data(name: str):
    """First existing file called ``name`` on the search path, else None."""
    for base in search_path():
        p = base / name
        if p.is_file():
            return p
    return None
