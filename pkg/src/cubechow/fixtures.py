"""Loading the bundled fixture corpus (or a user-supplied directory)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import Ideal, Ring
from .blowup import Tower
from .cycles import AmbientContext, Cycle


@dataclass
class CycleFixture:
    id: str
    cycle: Cycle
    tags: tuple[str, ...]
    note: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def normalized(self) -> bool:
        return "normalized" in self.tags

    @property
    def admissible(self) -> bool:
        return "inadmissible" not in self.tags


@dataclass
class TowerFixture:
    id: str
    tower: Tower
    note: str = ""
    expect: dict[str, int] = field(default_factory=dict)


class Corpus:
    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory else None

    def _load(self, name: str) -> Any:
        if self.directory is not None:
            return json.loads((self.directory / name).read_text())
        return json.loads(resources.files("cubechow.corpus").joinpath(name).read_text())

    def cycles(self) -> list[CycleFixture]:
        out = []
        for item in self._load("cycles.json")["fixtures"]:
            extra = {k: v for k, v in item.items() if k not in ("id", "cycle", "tags", "note")}
            out.append(CycleFixture(item["id"], Cycle.from_json(item["cycle"]),
                                    tuple(item.get("tags", ())), item.get("note", ""), extra))
        return out

    def cycle(self, fixture_id: str) -> CycleFixture:
        for f in self.cycles():
            if f.id == fixture_id:
                return f
        raise KeyError(f"no cycle fixture {fixture_id!r}")

    def towers(self) -> list[TowerFixture]:
        return [TowerFixture(t["id"], Tower.from_json(t["tower"]), t.get("note", ""),
                             t.get("expect", {}))
                for t in self._load("towers.json")["towers"]]

    def tower(self, fixture_id: str) -> TowerFixture:
        for t in self.towers():
            if t.id == fixture_id:
                return t
        raise KeyError(f"no tower fixture {fixture_id!r}")

    def demo(self) -> dict[str, Any]:
        return self._load("demo.json")

    def mv_points(self) -> dict[str, Any]:
        return self._load("mv_points.json")


def hand_chart_ideal(generators: list[str], params: list[str], c, m: int, n: int) -> Ideal:
    """Ideal of a hand-written chart computation with the parameters set to ``c``."""
    sym = Ring([f"x{i}" for i in range(1, m + 1)], [f"y{i}" for i in range(1, n + 1)], params)
    target = Ring.standard(m, n)
    values = {p: Fraction(v) for p, v in zip(params, c)}
    gens = [sym.parse_poly(g).substitute(values, target).num for g in generators]
    return AmbientContext(m, n).localize(Ideal(target, gens))
