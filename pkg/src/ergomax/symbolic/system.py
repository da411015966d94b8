"""
Subshifts of finite type and locally constant potentials.

A system is a finite alphabet, a 0/1 transition matrix read row -> column
(entry (i, j) = 1 means symbol j may follow symbol i) and a potential that
depends on the first ``depth`` symbols of a point.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ergomax.core.errors import ParseError

logger = logging.getLogger("ergomax.symbolic")

Word = tuple[str, ...]


@dataclass(frozen=True, eq=False)
class LocallyConstantPotential:
    """phi(x) = values[x_0 ... x_{depth-1}], or ``default`` for unlisted allowed words."""

    depth: int
    values: Mapping[Word, float] = field(default_factory=dict)
    default: float = 0.0

    def __post_init__(self):
        if self.depth < 1:
            raise ParseError(f"Potential depth must be >= 1, got {self.depth}")
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    def value_of(self, word: Sequence[str]) -> float:
        return float(self.values.get(tuple(word), self.default))


@dataclass(frozen=True, eq=False)
class SubshiftSystem:
    """(X, T, phi): one-sided SFT with a locally constant potential."""

    symbols: tuple[str, ...]
    transition: tuple[tuple[int, ...], ...]
    potential: LocallyConstantPotential

    def __post_init__(self):
        size = len(self.symbols)
        if size == 0:
            raise ParseError("A system needs at least one symbol")
        if len(set(self.symbols)) != size:
            dupes = sorted({s for s in self.symbols if self.symbols.count(s) > 1})
            raise ParseError(f"Duplicate symbols: {dupes}")
        if len(self.transition) != size or any(len(row) != size for row in self.transition):
            raise ParseError(
                f"Transition matrix must be {size}x{size} to match the symbol list"
            )
        for row in self.transition:
            for entry in row:
                if entry not in (0, 1):
                    raise ParseError(f"Transition entries must be 0 or 1, got {entry!r}")
        for word in self.potential.values:
            self._check_word(word)

    def _check_word(self, word: Word) -> None:
        if len(word) != self.potential.depth:
            raise ParseError(
                f"Potential word {list(word)} has length {len(word)}, expected {self.potential.depth}"
            )
        unknown = [s for s in word if s not in self.index]
        if unknown:
            raise ParseError(f"Potential word {list(word)} uses unknown symbols {unknown}")
        if not self.is_allowed_word(word):
            raise ParseError(f"Potential word {list(word)} is not allowed by the transition matrix")

    @property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    @property
    def depth(self) -> int:
        return self.potential.depth

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.transition, dtype=int)

    def allows(self, a: str, b: str) -> bool:
        idx = self.index
        return bool(self.transition[idx[a]][idx[b]])

    def is_allowed_word(self, word: Sequence[str]) -> bool:
        idx = self.index
        if any(s not in idx for s in word):
            return False
        return all(self.transition[idx[a]][idx[b]] for a, b in zip(word, word[1:]))

    def word_key(self, word: Sequence[str]) -> tuple[int, ...]:
        """Sort key ordering words lexicographically by symbol position."""
        idx = self.index
        return tuple(idx[s] for s in word)

    def with_potential(self, potential: LocallyConstantPotential) -> "SubshiftSystem":
        return SubshiftSystem(self.symbols, self.transition, potential)


def subsystem(system: SubshiftSystem, keep: Iterable[str]) -> SubshiftSystem:
    """Restrict to a symbol subset; potential words using dropped symbols are discarded."""
    kept = [s for s in system.symbols if s in set(keep)]
    idx = system.index
    transition = tuple(tuple(system.transition[idx[a]][idx[b]] for b in kept) for a in kept)
    values = {w: v for w, v in system.potential.values.items() if all(s in kept for s in w)}
    potential = LocallyConstantPotential(system.depth, values, system.potential.default)
    return SubshiftSystem(tuple(kept), transition, potential)


# ─────────────────────────────────────────────────────────────────────────────
# JSON DOCUMENT
# ─────────────────────────────────────────────────────────────────────────────

class PotentialEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    word: list[str]
    value: float


class PotentialDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    depth: int = 1
    default: float = 0.0
    values: list[PotentialEntry] = Field(default_factory=list)


class SystemDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbols: list[str]
    transition: list[list[int]]
    potential: PotentialDocument = Field(default_factory=PotentialDocument)

    @classmethod
    def from_system(cls, system: SubshiftSystem) -> "SystemDocument":
        return cls(
            symbols=list(system.symbols),
            transition=[list(row) for row in system.transition],
            potential=PotentialDocument(
                depth=system.depth,
                default=system.potential.default,
                values=[
                    PotentialEntry(word=list(w), value=v)
                    for w, v in system.potential.values.items()
                ],
            ),
        )


def system_from_document(doc: SystemDocument) -> SubshiftSystem:
    """Build and validate a system, including the post-trim check on potential keys."""
    from ergomax.symbolic.graph import trim_and_recode

    values: dict[Word, float] = {}
    for entry in doc.potential.values:
        key = tuple(entry.word)
        if key in values:
            raise ParseError(f"Potential word {entry.word} is listed twice")
        values[key] = entry.value

    potential = LocallyConstantPotential(doc.potential.depth, values, doc.potential.default)
    system = SubshiftSystem(
        symbols=tuple(doc.symbols),
        transition=tuple(tuple(row) for row in doc.transition),
        potential=potential,
    )

    graph = trim_and_recode(system)
    surviving = set(graph.vertices)
    dead = [list(w) for w in values if w not in surviving]
    if dead:
        raise ParseError(
            f"Potential words {dead} have no infinite forward continuation (removed by trimming)"
        )
    logger.debug("parsed system with %d symbols, %d vertices after trim", len(system.symbols), graph.size)
    return system


def parse_system(text: str) -> SubshiftSystem:
    """Parse a system-description JSON document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"System document is not valid JSON: {e}") from None
    try:
        doc = SystemDocument.model_validate(raw)
    except ValidationError as e:
        raise ParseError(f"System document does not match the schema: {e}") from None
    return system_from_document(doc)


def load_system(path: Path | str) -> SubshiftSystem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read system file {path}: {e}") from None
    return parse_system(text)


def dump_system(system: SubshiftSystem) -> str:
    return json.dumps(SystemDocument.from_system(system).model_dump(), indent=2)
