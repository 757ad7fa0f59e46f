"""Enumeration caps and their environment-variable overrides.

Every cap can be overridden either programmatically (pass a ``Caps`` to the
operation), via CLI flags, or via environment variables:

    PARTIALPI_CAP_CLOSURE     max group order for generator closure (default 5000)
    PARTIALPI_CAP_ISO         max group order for isomorphism tests (default 512)
    PARTIALPI_CAP_LATTICE     max group order for subgroup-lattice enumeration (default 512)
    PARTIALPI_CAP_SERIES      max number of chief series enumerated (default 100000)
    PARTIALPI_CAP_MODULE_DIM  max module dimension for submodule enumeration (default 8)
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_CLOSURE_CAP = 5000
DEFAULT_ISO_CAP = 512
DEFAULT_LATTICE_CAP = 512
DEFAULT_SERIES_CAP = 100_000
DEFAULT_MODULE_DIM_CAP = 8


@dataclass(frozen=True)
class Caps:
    closure: int = DEFAULT_CLOSURE_CAP
    iso: int = DEFAULT_ISO_CAP
    lattice: int = DEFAULT_LATTICE_CAP
    series: int = DEFAULT_SERIES_CAP
    module_dim: int = DEFAULT_MODULE_DIM_CAP

    def describe(self) -> str:
        return (f"closure={self.closure} lattice={self.lattice} "
                f"series={self.series} iso={self.iso} module_dim={self.module_dim}")


_ENV_FIELDS = {
    "PARTIALPI_CAP_CLOSURE": "closure",
    "PARTIALPI_CAP_ISO": "iso",
    "PARTIALPI_CAP_LATTICE": "lattice",
    "PARTIALPI_CAP_SERIES": "series",
    "PARTIALPI_CAP_MODULE_DIM": "module_dim",
}


def caps_from_env(base: Caps | None = None) -> Caps:
    """Return ``base`` with any environment overrides applied."""
    values = {}
    base = base or Caps()
    for var, field in _ENV_FIELDS.items():
        raw = os.environ.get(var)
        if raw is not None:
            values[field] = int(raw)
    if not values:
        return base
    merged = {f: getattr(base, f) for f in ("closure", "iso", "lattice", "series", "module_dim")}
    merged.update(values)
    return Caps(**merged)


DEFAULT_CAPS = Caps()
