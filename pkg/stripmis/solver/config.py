from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

from stripmis.graph import Graph

__all__ = ["ConfigError", "ProviderSpec", "SolverConfig", "trace_from_env"]

TRACE_ENV = "STRIPMIS_TRACE"


class ConfigError(ValueError):
    pass


def _coerce(value: str) -> Any:
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


@dataclass(frozen=True)
class ProviderSpec:
    """A provider name plus keyword options for its factory."""

    name: str
    options: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "ProviderSpec":
        """Parse ``name`` or ``name:key=value,key=value``.

        >>> ProviderSpec.parse("exhaustive:n_cap=12")
        ProviderSpec(name='exhaustive', options={'n_cap': 12})
        """
        name, _, rest = text.partition(":")
        if not name:
            raise ConfigError(f"empty provider name in {text!r}")
        options: Dict[str, Any] = {}
        for item in filter(None, rest.split(",")):
            key, sep, value = item.partition("=")
            if not sep or not key:
                raise ConfigError(f"provider option {item!r} is not key=value")
            options[key] = _coerce(value)
        return cls(name, options)


DEFAULT_PROVIDERS = (ProviderSpec("line-graph"), ProviderSpec("exhaustive"))


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the recursive solver.

    ``delta`` and ``c`` may be left as ``None``; :meth:`resolve` fills them
    from the input graph (``c = 1 - 1/(10 * delta)``).
    """

    t: int = 3
    delta: Optional[int] = None
    c: Optional[Fraction] = None
    d_max: int = 3
    z_max: int = 4
    base_case_n: int = 10
    providers: Tuple[ProviderSpec, ...] = DEFAULT_PROVIDERS
    seed: int = 0
    memoize: bool = False
    cache_size: int = 100_000
    threads: int = 1
    trace: bool = False
    audit_particles: bool = True
    atom_bound_check: bool = True

    def __post_init__(self):
        if self.c is not None:
            object.__setattr__(self, "c", Fraction(self.c))
            if not Fraction(1, 2) <= self.c < 1:
                raise ConfigError(f"c must satisfy 1/2 <= c < 1, got {self.c}")
        if self.t < 1:
            raise ConfigError(f"t must be positive, got {self.t}")
        if self.delta is not None and self.delta < 0:
            raise ConfigError(f"delta must be nonnegative, got {self.delta}")
        for name in ("d_max", "z_max", "base_case_n", "cache_size"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if self.threads < 1:
            raise ConfigError(f"threads must be at least 1, got {self.threads}")
        object.__setattr__(self, "providers", tuple(self.providers))
        for spec in self.providers:
            if not isinstance(spec, ProviderSpec):
                raise ConfigError(f"providers must be ProviderSpec instances, got {spec!r}")

    def replace(self, **changes: Any) -> "SolverConfig":
        return dataclasses.replace(self, **changes)

    def resolve(self, graph: Graph) -> "SolverConfig":
        """Fill ``delta`` and ``c`` for ``graph``, checking a given ``delta`` against it."""
        delta = self.delta
        if delta is None:
            delta = graph.max_degree
        elif graph.max_degree > delta:
            raise ConfigError(f"input has maximum degree {graph.max_degree} > delta={delta}")
        c = self.c if self.c is not None else 1 - Fraction(1, 10 * max(delta, 1))
        return self.replace(delta=delta, c=c)

    def describe(self) -> Dict[str, Any]:
        """Plain values for reports."""
        data = dataclasses.asdict(self)
        data["c"] = None if self.c is None else str(self.c)
        data["providers"] = [
            spec.name + (":" + ",".join(f"{k}={v}" for k, v in spec.options.items()) if spec.options else "")
            for spec in self.providers
        ]
        return data


def trace_from_env() -> bool:
    return os.environ.get(TRACE_ENV, "") not in ("", "0")
