"""JSON schemas for the on-disk formats, loaded from package data."""
import functools
import json
import pkgutil
from typing import Any, Dict

import jsonschema

__all__ = ["SchemaValidationError", "load_schema", "validate"]

ESD_SCHEMA = "esd.schema.json"
REPORT_SCHEMA = "report.schema.json"


@functools.lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """Load one of the json schemas shipped with this module"""
    data = pkgutil.get_data(__name__, name)
    if data is None:
        raise FileNotFoundError(name)
    return json.loads(data.decode("utf-8"))


class SchemaValidationError(jsonschema.ValidationError):
    """A wrapper for jsonschema.ValidationError with friendlier traceback"""

    def __init__(self, schema_name: str, err: jsonschema.ValidationError):
        super().__init__(**self._get_contents(err))
        self.schema_name = schema_name

    @staticmethod
    def _get_contents(err):
        try:
            return err._contents()
        except AttributeError:
            return {"message": err.message}

    def __str__(self):
        path = "->".join(str(p) for p in self.absolute_path) or "<document>"
        return f"{self.schema_name}: {path}: {self.message}"


def validate(instance: Any, schema_name: str) -> None:
    """Validate ``instance`` against a bundled schema, raising SchemaValidationError."""
    try:
        jsonschema.validate(instance, load_schema(schema_name))
    except jsonschema.ValidationError as err:
        raise SchemaValidationError(schema_name, err) from None
