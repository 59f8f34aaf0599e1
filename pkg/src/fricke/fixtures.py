"""Embedded reference tables used by the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class FixtureSet:
    """Read-only reference data: coefficient tables and scalar constants."""

    tables: dict[int, dict[int, dict[int, int]]]  # level -> d -> exponent -> coeff
    class_numbers: dict[int, Fraction]
    hauptmodul_level2: tuple[int, ...]
    cm_value_level2: int
    recursion_example: dict

    def appendix_levels(self) -> list[int]:
        return sorted(self.tables)

    def appendix_discs(self, N: int) -> list[int]:
        return sorted(self.tables.get(N, {}))

    def theorem_pairs(self) -> list[tuple[int, int]]:
        """Every (level, disc) with a reference table, plus the level-1 cases."""
        pairs = [(1, 3), (1, 4)]
        for N in self.appendix_levels():
            pairs.extend((N, d) for d in self.appendix_discs(N))
        return pairs


def _load(name: str) -> dict:
    with resources.files("fricke.data").joinpath(name).open() as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def fixtures() -> FixtureSet:
    fd = _load("appendix_fd.json")
    consts = _load("constants.json")
    tables = {
        int(N): {int(d): {int(e): int(c) for e, c in tab.items()} for d, tab in per.items()}
        for N, per in fd["tables"].items()
    }
    return FixtureSet(
        tables=tables,
        class_numbers={int(d): Fraction(v) for d, v in consts["class_numbers"].items()},
        hauptmodul_level2=tuple(consts["hauptmodul_level2"]),
        cm_value_level2=consts["cm_value_level2"],
        recursion_example=consts["recursion_example"],
    )
