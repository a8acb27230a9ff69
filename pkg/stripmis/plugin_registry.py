# derived from https://github.com/altair-viz/altair/blob/8a8642b2e7eeee3b914850a8f7aacd53335302d9/altair/utils/plugin_registry.py
import functools
import sys
from dataclasses import dataclass
from typing import Any, Dict, Generic, List, Optional, TypeVar, cast

if sys.version_info < (3, 10):
    from importlib_metadata import entry_points
else:
    from importlib.metadata import entry_points

PluginType = TypeVar("PluginType")


class UnknownPluginError(KeyError):
    def __init__(self, group: str, name: str, known: List[str]):
        super().__init__(name)
        self.group = group
        self.name = name
        self.known = known

    def __str__(self) -> str:
        return f"no plugin {self.name!r} in group {self.group!r}; known: {', '.join(self.known) or 'none'}"


@dataclass
class ActivePlugin(Generic[PluginType]):
    name: str
    plugin: PluginType
    options: Dict[str, Any]


class PluginEnabler(Generic[PluginType]):
    """Returned by :meth:`PluginRegistry.enable`; restores the previous plugin on exit::

        with renderers.enable("json"):
            print(render(report))
    """

    def __init__(self, registry: "PluginRegistry[PluginType]", reset: Optional[ActivePlugin[PluginType]]):
        self.registry = registry
        self.reset = reset

    def __enter__(self) -> "PluginEnabler[PluginType]":
        return self

    def __exit__(self, *args, **kwargs) -> None:
        self.registry._active = self.reset

    def __repr__(self) -> str:
        return f"{self.registry.__class__.__name__}.enable({self.registry.active!r})"


class PluginRegistry(Generic[PluginType]):
    """Named plugins, registered in code or found through an entry point group.

    Renderers use the active-plugin flow (:meth:`enable` then :meth:`get`);
    decomposition providers are factories instantiated with :meth:`create`.

    >>> reg = PluginRegistry[str]("stripmis.example")
    >>> _ = reg.register("plain", "value")
    >>> reg.names()
    ['plain']
    """

    def __init__(self, entry_point_group: str = ""):
        self.entry_point_group = entry_point_group
        self._active: Optional[ActivePlugin[PluginType]] = None
        self._plugins: Dict[str, PluginType] = {}

    def register(self, name: str, value: Optional[PluginType]) -> Optional[PluginType]:
        """Register ``value`` under ``name``; ``None`` unregisters and returns the old value."""
        if value is None:
            return self._plugins.pop(name, None)
        self._plugins[name] = value
        return value

    def names(self) -> List[str]:
        """Registered and entry point plugin names, sorted."""
        names = list(self._plugins)
        names.extend(e.name for e in entry_points(group=self.entry_point_group))
        return sorted(set(names))

    def lookup(self, name: str) -> PluginType:
        """The plugin called ``name``, loading its entry point on first use."""
        if name not in self._plugins:
            plugin = self._find_plugin(name)
            if plugin is None:
                raise UnknownPluginError(self.entry_point_group, name, self.names())
            self.register(name, plugin)
        return self._plugins[name]

    def create(self, name: str, **options: Any) -> Any:
        """Call the factory registered as ``name`` with ``options``."""
        factory = self.lookup(name)
        if not callable(factory):
            raise TypeError(f"plugin {name!r} is not a factory")
        return factory(**options)

    def enable(self, name: Optional[str] = None, **options: Any) -> PluginEnabler[PluginType]:
        """Make ``name`` (default: the active one) active; usable as a context manager."""
        name = name or self.active
        plugin = self.lookup(name)
        prev = self._active
        self._active = ActivePlugin(name, plugin, options)
        return PluginEnabler(self, reset=prev)

    def _find_plugin(self, name: str) -> Optional[PluginType]:
        eps = entry_points(group=self.entry_point_group, name=name)
        if len(eps) == 0:
            return None
        assert len(eps) == 1, f"Conflicting entry-point '{name}'"
        return cast(PluginType, tuple(eps)[0].load())

    @property
    def active(self) -> str:
        return "" if self._active is None else self._active.name

    @property
    def options(self) -> Dict[str, Any]:
        return {} if self._active is None else self._active.options

    def get(self) -> Optional[PluginType]:
        """The active plugin, with its options bound when it is callable."""
        active = self._active
        if active is None:
            return None
        if active.options and callable(active.plugin):
            return cast(PluginType, functools.partial(active.plugin, **active.options))
        return active.plugin

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(active={self.active!r}, registered={self.names()!r})"
