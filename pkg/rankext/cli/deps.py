"""
Input loading shared by the command modules.

Files are parsed as JSON and validated against the schemas; both failures
surface as InputError so they exit with status 1.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError

from rankext.core.errors import ExpectationFailed, InputError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror or e}", path=path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}", path=path)


def json_argument(value: str) -> Any:
    """Inline JSON when the value looks like JSON, otherwise a file path."""
    stripped = value.lstrip()
    if stripped[:1] in ("{", "["):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as e:
            raise InputError(f"Inline JSON is invalid: {e.msg}")
    return read_json(value)


def load_model(path: str, schema: Type[ModelT]) -> ModelT:
    """
    Load a JSON file into a schema.

    Args:
        path: File path, or inline JSON
        schema: The pydantic model to validate against

    Returns:
        The validated model
    """
    data = json_argument(path)
    try:
        return schema.model_validate(data)
    except ValidationError as e:
        logger.debug(f"Validation of {path} failed: {e}")
        errors = [
            {"loc": ".".join(str(part) for part in err["loc"]), "msg": err["msg"]}
            for err in e.errors()
        ]
        raise InputError(f"{path} does not match the {schema.__name__} format", errors=errors)


def parse_position(text: str) -> Tuple[int, int]:
    """'i,j' with 1-based indices."""
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"Position must look like 'i,j', got {text!r}")
    return i, j


def parse_positions(value: str) -> List[Tuple[int, int]]:
    data = json_argument(value)
    if isinstance(data, dict):
        data = data.get("path", data.get("positions"))
    if not isinstance(data, list) or not all(
        isinstance(p, (list, tuple)) and len(p) == 2 and all(isinstance(x, int) for x in p) for p in data
    ):
        raise InputError("Expected a list of [i, j] positions")
    return [(p[0], p[1]) for p in data]


def parse_params(pairs: Optional[Sequence[str]]) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise InputError(f"Parameter must look like k=v, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


def check_expectations(report: Dict[str, Any], expect: Optional[str]) -> None:
    """
    Compare the top-level keys named in the expectation with the report.

    Raises ExpectationFailed listing every differing key.
    """
    if expect is None:
        return
    wanted = json_argument(expect)
    if not isinstance(wanted, dict):
        raise InputError("--expect needs a JSON object")
    differing = {
        key: {"expected": value, "found": report.get(key)}
        for key, value in sorted(wanted.items())
        if report.get(key) != value
    }
    if differing:
        raise ExpectationFailed(f"Report differs from the expectation on {', '.join(differing)}", keys=differing)
