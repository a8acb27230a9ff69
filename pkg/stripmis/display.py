from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import jinja2

from stripmis import schema
from stripmis.plugin_registry import PluginRegistry

TEXT_TEMPLATE = jinja2.Template(
    """\
{{ command }}: {{ status_text }}
{%- for name, digest in inputs.items() %}
  input {{ name }} md5={{ digest }}
{%- endfor %}
{%- for key, value in result.items() %}
  {{ key }}: {{ value }}
{%- endfor %}
{%- if trace_text %}
trace:
{{ trace_text }}
{%- endif %}
{%- if timing %}
{%- for key, value in timing.items() %}
  {{ key }}: {{ "%.3f"|format(value) }}s
{%- endfor %}
{%- endif %}
"""
)

STATUS_TEXT = {
    0: "ok",
    1: "negative answer",
    2: "input could not be parsed",
    3: "invalid decomposition file",
    4: "configuration error",
}


@dataclass
class RunReport:
    """What a CLI command did, in a schema-checked, machine-readable shape."""

    command: str
    arguments: Dict[str, Any]
    inputs: Dict[str, str] = field(default_factory=dict)
    status: int = 0
    result: Dict[str, Any] = field(default_factory=dict)
    trace: Optional[Dict[str, Any]] = None
    trace_text: str = ""
    timing: Dict[str, float] = field(default_factory=dict)
    version: str = ""

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "command": self.command,
            "arguments": self.arguments,
            "inputs": self.inputs,
            "status": self.status,
            "result": self.result,
        }
        if self.trace is not None:
            data["trace"] = self.trace
        if timing and self.timing:
            data["timing"] = self.timing
        if self.version:
            data["version"] = self.version
        schema.validate(data, schema.REPORT_SCHEMA)
        return data


Renderer = Callable[[RunReport], str]


def render_text(report: RunReport, timing: bool = True) -> str:
    return TEXT_TEMPLATE.render(
        command=report.command,
        status_text=STATUS_TEXT.get(report.status, str(report.status)),
        inputs=report.inputs,
        result=report.result,
        trace_text=report.trace_text,
        timing=report.timing if timing else {},
    )


def render_json(report: RunReport, timing: bool = True) -> str:
    return json.dumps(report.to_dict(timing=timing), indent=2, sort_keys=True)


renderers = PluginRegistry[Renderer]("stripmis.renderer")
renderers.register("text", render_text)
renderers.register("json", render_json)
renderers.enable("text")


def render(report: RunReport) -> str:
    """Render with the active renderer (``renderers.enable("json")`` to switch)."""
    renderer = renderers.get()
    assert renderer is not None
    return renderer(report)
