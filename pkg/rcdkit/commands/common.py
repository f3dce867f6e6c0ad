"""Helpers shared by the command modules."""

import json
from typing import Optional, Tuple

import typer
from pydantic import BaseModel

from rcdkit.core.config import ConfigManager
from rcdkit.core.errors import MalformedDocument
from rcdkit.core.instance import Instance, format_epsilon, load_instance
from rcdkit.core.measures import Kernel


def load(file: str) -> Instance:
    """Load an instance; float documents without epsilon use the configured one."""
    config = ConfigManager().load()
    return load_instance(file, config.tolerance)


def load_with_kernel(file: str) -> Tuple[Instance, Kernel]:
    inst = load(file)
    if inst.kernel is None:
        raise MalformedDocument(f"{file}: document has no kernel R")
    return inst, inst.kernel


def emit_json(payload, inst: Optional[Instance] = None) -> None:
    """Print exactly one JSON document on stdout.

    Reports about an instance echo its mode, and its epsilon in float mode.
    """
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True, exclude_none=True)
    if inst is not None:
        payload = {**payload, "mode": inst.mode.value}
        if inst.epsilon is not None:
            payload["epsilon"] = format_epsilon(inst.epsilon)
    typer.echo(json.dumps(payload, indent=2))
