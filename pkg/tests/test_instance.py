import json
from fractions import Fraction

import pytest

from rcdkit.core.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    MalformedDocument,
    NotAProbability,
)
from rcdkit.core.generators import (
    KernelStructure,
    draw_kernel,
    draw_measure,
    draw_partition,
    rng_for,
)
from rcdkit.core.instance import (
    DEFAULT_EPSILON,
    Instance,
    load_instance,
    parse_instance,
    parse_partition_spec,
    serialize_instance,
)
from rcdkit.models import Mode


def test_parse_sample_documents(samples_dir):
    inst = load_instance(samples_dir / "trivial_not_total.json")
    assert inst.n == 4
    assert inst.kernel.rows[0] == (0, Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    assert inst.partition is None
    assert inst.mode == Mode.RATIONAL

    request = load_instance(samples_dir / "conditioning_request.json")
    assert request.kernel is None
    assert request.partition.as_lists() == [[0], [1, 2]]


def test_serialize_parse_identity(samples_dir):
    for path in sorted(samples_dir.glob("*.json")):
        inst = load_instance(path)
        text = serialize_instance(inst)
        assert parse_instance(text) == inst
        assert serialize_instance(parse_instance(text)) == text


def test_serialize_parse_identity_on_generated_instances():
    for seed in range(100):
        rng = rng_for(seed)
        n = 1 + int(rng.integers(6))
        nu = draw_measure(rng, n, allow_zeros=bool(seed % 2))
        partition = draw_partition(rng, n)
        structure = KernelStructure.rcd(nu, partition) if seed % 3 else KernelStructure.dense()
        inst = Instance(n, nu, draw_kernel(rng, n, structure), partition)
        text = serialize_instance(inst)
        assert parse_instance(text) == inst, seed
        assert serialize_instance(parse_instance(text)) == text


def test_bare_integers_accepted():
    inst = parse_instance('{"n": 2, "nu": [1, 0], "R": [[1, 0], [0, 1]]}')
    assert inst.nu.weights == (1, 0)


@pytest.mark.parametrize(
    "text,error",
    [
        ("not json", MalformedDocument),
        ("[1, 2]", MalformedDocument),
        ('{"n": 2}', MalformedDocument),
        ('{"n": 2, "nu": ["1/2", "1/2"], "extra": 1}', MalformedDocument),
        ('{"n": 2, "nu": ["1"]}', DimensionMismatch),
        ('{"n": 2, "nu": ["1/2", "1/3"]}', NotAProbability),
        ('{"n": 2, "nu": ["0.5", "0.5"]}', MalformedDocument),
        ('{"n": 2, "nu": ["1", "0"], "R": [["1", "0"]]}', DimensionMismatch),
        ('{"n": 2, "nu": ["1", "0"], "partition": [[0], [2]]}', IndexOutOfRange),
        ('{"n": 2, "nu": ["1", "0"], "epsilon": "0.1"}', MalformedDocument),
        ('{"n": 2, "nu": [0.0, 1.0], "R": [[1.0, 0], [0, 1]]}', MalformedDocument),
        ('{"n": 2, "nu": [0, 1], "R": [[1.0, 0], [0, 1]]}', MalformedDocument),
        ('{"n": true, "nu": ["1"]}', MalformedDocument),
        ('{"n": 2.0, "nu": ["1", "0"]}', MalformedDocument),
        ('{"n": 2, "nu": ["1", "0"], "partition": [[true], [0]]}', MalformedDocument),
        ('{"n": 2, "nu": [true, false]}', MalformedDocument),
    ],
)
def test_parse_errors(text, error):
    with pytest.raises(error):
        parse_instance(text)


def test_float_mode_uses_tolerance():
    doc = {
        "n": 2,
        "nu": ["0.5", "0.4999999999"],
        "R": [["1", "0"], ["0", "1"]],
        "mode": "float",
        "epsilon": "1e-6",
    }
    inst = parse_instance(json.dumps(doc))
    assert inst.mode == Mode.FLOAT
    assert inst.tolerance == Fraction(1, 10**6)
    assert json.loads(serialize_instance(inst))["epsilon"] == "0.000001"


def test_float_mode_default_epsilon():
    inst = parse_instance('{"n": 1, "nu": ["1.0"], "mode": "float"}')
    assert inst.epsilon == DEFAULT_EPSILON
    custom = parse_instance('{"n": 1, "nu": ["1.0"], "mode": "float"}', Fraction(1, 100))
    assert custom.epsilon == Fraction(1, 100)


@pytest.mark.parametrize("spec", ["[[0], [1, 2]]", "0/1,2", " 0 / 2,1 "])
def test_partition_spec_forms(spec):
    assert parse_partition_spec(spec, 3).as_lists() == [[0], [1, 2]]


@pytest.mark.parametrize("spec", ["[[0], 1]", "0/a", "[[true], [1]]", "{}"])
def test_partition_spec_rejects_garbage(spec):
    with pytest.raises(MalformedDocument):
        parse_partition_spec(spec, 2)


def test_load_missing_file(tmp_path):
    with pytest.raises(MalformedDocument, match="cannot read"):
        load_instance(tmp_path / "missing.json")
