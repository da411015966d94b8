from typing import Callable, Dict

from ergomax.core.errors import ParseError
from ergomax.symbolic.system import SubshiftSystem

from .base import PressureEvaluation, PressureKind

PressureFactory = Callable[..., PressureEvaluation]


class PressureRegistry:
    """Registry of pressure-function instances by kind."""

    def __init__(self):
        self._factories: Dict[PressureKind, PressureFactory] = {}

    def register(self, kind: PressureKind, factory: PressureFactory) -> None:
        self._factories[PressureKind(kind)] = factory

    def create(self, kind: PressureKind | str, system: SubshiftSystem, **options) -> PressureEvaluation:
        """Instantiate Gamma of the given kind on a system; options go to the constructor."""
        try:
            key = PressureKind(kind)
        except ValueError:
            raise ParseError(f"Unknown pressure kind: {kind} (known: {', '.join(self.list_kinds())})") from None
        if key not in self._factories:
            raise ParseError(f"Pressure kind not registered: {key.value}")
        return self._factories[key](system, **options)

    def list_kinds(self) -> list[str]:
        return [k.value for k in self._factories]


# Global registry instance
registry = PressureRegistry()
