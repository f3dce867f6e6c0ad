"""Instances and their JSON document codec."""

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from rcdkit.core.errors import DimensionMismatch, MalformedDocument
from rcdkit.core.measures import Kernel, Measure
from rcdkit.core.partitions import Partition
from rcdkit.core.rational import ZERO, format_rat, parse_rat
from rcdkit.models import InstanceDocument, Mode

DEFAULT_EPSILON = Fraction(1, 10**9)


@dataclass(frozen=True)
class Instance:
    """A measure with an optional kernel and partition on the same n states."""

    n: int
    nu: Measure
    kernel: Optional[Kernel] = None
    partition: Optional[Partition] = None
    mode: Mode = Mode.RATIONAL
    epsilon: Optional[Fraction] = None

    def __post_init__(self):
        for name, component in (("nu", self.nu), ("R", self.kernel), ("partition", self.partition)):
            if component is not None and component.n != self.n:
                raise DimensionMismatch(f"{name} has {component.n} states, instance has {self.n}")
        if (self.epsilon is not None) != (self.mode == Mode.FLOAT):
            raise MalformedDocument("epsilon is given exactly when mode is float")

    @property
    def tolerance(self) -> Fraction:
        return self.epsilon if self.epsilon is not None else ZERO


def format_epsilon(epsilon: Fraction) -> str:
    # Decimal text when the tolerance has a terminating expansion, else p/q
    denominator = epsilon.denominator
    for prime in (2, 5):
        while denominator % prime == 0:
            denominator //= prime
    if denominator != 1:
        return format_rat(epsilon)
    digits = 0
    while (epsilon * 10**digits).denominator != 1:
        digits += 1
    scaled = epsilon * 10**digits
    text = str(scaled.numerator).rjust(digits + 1, "0")
    if digits == 0:
        return text
    return f"{text[:-digits]}.{text[-digits:]}"


def to_document(inst: Instance) -> InstanceDocument:
    return InstanceDocument(
        n=inst.n,
        nu=[format_rat(w) for w in inst.nu.weights],
        kernel=(
            [[format_rat(v) for v in row] for row in inst.kernel.rows]
            if inst.kernel is not None
            else None
        ),
        partition=inst.partition.as_lists() if inst.partition is not None else None,
        mode=inst.mode,
        epsilon=format_epsilon(inst.epsilon) if inst.epsilon is not None else None,
    )


def from_document(doc: InstanceDocument, default_epsilon: Fraction = DEFAULT_EPSILON) -> Instance:
    allow_decimal = doc.mode == Mode.FLOAT
    if doc.mode == Mode.FLOAT:
        epsilon = parse_rat(doc.epsilon, allow_decimal=True) if doc.epsilon else default_epsilon
        if epsilon < 0:
            raise MalformedDocument("epsilon must be nonnegative")
    else:
        if doc.epsilon is not None:
            raise MalformedDocument("epsilon is only allowed in float mode")
        epsilon = None
    tolerance = epsilon if epsilon is not None else ZERO

    if len(doc.nu) != doc.n:
        raise DimensionMismatch(f"nu has {len(doc.nu)} weights, n is {doc.n}")
    nu = Measure(tuple(parse_rat(w, allow_decimal) for w in doc.nu), tolerance)

    kernel = None
    if doc.kernel is not None:
        if len(doc.kernel) != doc.n or any(len(row) != doc.n for row in doc.kernel):
            raise DimensionMismatch(f"R must be {doc.n}x{doc.n}")
        kernel = Kernel(
            tuple(tuple(parse_rat(v, allow_decimal) for v in row) for row in doc.kernel),
            tolerance,
        )

    partition = Partition.from_lists(doc.partition, doc.n) if doc.partition is not None else None
    return Instance(doc.n, nu, kernel, partition, doc.mode, epsilon)


def parse_instance(
    text: Union[str, bytes], default_epsilon: Fraction = DEFAULT_EPSILON
) -> Instance:
    """Parse an instance document.

    Raises:
        MalformedDocument: invalid JSON or wrong shape
        DimensionMismatch: component sizes disagree with n
        NotAProbability: a weight is negative or a sum differs from 1
    """
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise MalformedDocument(f"invalid JSON: {e}")
    if not isinstance(data, dict):
        raise MalformedDocument("instance document must be a JSON object")
    try:
        doc = InstanceDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise MalformedDocument(f"{location}: {first['msg']}")
    return from_document(doc, default_epsilon)


def document_text(doc: InstanceDocument) -> str:
    data = doc.model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(data, indent=2) + "\n"


def serialize_instance(inst: Instance) -> str:
    """Canonical document text; parse_instance inverts it exactly."""
    return document_text(to_document(inst))


def load_instance(
    path: Union[str, Path], default_epsilon: Fraction = DEFAULT_EPSILON
) -> Instance:
    """Read an instance document from a file, or from stdin when path is ``-``."""
    if str(path) == "-":
        return parse_instance(sys.stdin.read(), default_epsilon)
    path = Path(path).expanduser()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedDocument(f"cannot read {path}: {e.strerror}")
    return parse_instance(text, default_epsilon)


def parse_partition_spec(text: str, n: int) -> Partition:
    """Partition from JSON (``[[0],[1,2]]``) or the compact form ``0/1,2``.

    Raises:
        MalformedDocument: the text is neither form
    """
    spec = text.strip()
    try:
        if spec.startswith("["):
            lists = json.loads(spec)
            if not isinstance(lists, list) or not all(isinstance(b, list) for b in lists):
                raise ValueError("expected an array of arrays")
        else:
            lists = [[int(x) for x in block.split(",")] for block in spec.split("/")]
    except ValueError as e:
        raise MalformedDocument(f"bad partition {text!r}: {e}")
    if any(isinstance(x, bool) or not isinstance(x, int) for block in lists for x in block):
        raise MalformedDocument(f"bad partition {text!r}: states must be integers")
    return Partition.from_lists(lists, n)
