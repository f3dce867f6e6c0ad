import pytest

from rcdkit.core.errors import FloatModeRefused, NotACounterexample, TooLarge, UnknownLaw
from rcdkit.core.falsifier import (
    Counterexample,
    find_counterexamples,
    revalidate,
    run_law,
    shrink,
)
from rcdkit.core.instance import document_text, parse_instance
from rcdkit.core.laws import LAWS, ORACLE_LAWS, LawCase, get_law
from rcdkit.core.partitions import Partition
from rcdkit.core.rcd import make_rcd, sigma_of_kernel

THEOREMS = [law_id for law_id, law in LAWS.items() if not law.expect_counterexample]


@pytest.mark.parametrize("law_id", THEOREMS)
def test_theorem_laws_survive_a_full_campaign(law_id):
    report = run_law(law_id, trials=1000, seed=42, n_range=(2, 5))
    assert report.counterexamples == []
    assert report.passed
    assert report.trials == 1000
    assert report.premise_rate >= 0.10


def test_conditionals_on_a_null_block_may_differ(measure):
    nu = measure(1, 0, 0)
    partition = Partition.from_lists([[0], [1, 2]], 3)
    case = LawCase(make_rcd(nu, partition), nu, partition)
    assert get_law("L15").violated_by(case) is None
    assert get_law("L16").violated_by(case) is None


@pytest.mark.parametrize("law_id", ["SANITY-1", "SANITY-2"])
def test_sanity_laws_are_refuted(law_id):
    report = run_law(law_id, trials=20, seed=1, n_range=(2, 4))
    assert report.expect_counterexample
    assert report.counterexamples
    assert report.counterexamples[0].trial == 0
    assert report.passed


def test_counterexample_record_parses_back():
    found = find_counterexamples("SANITY-1", trials=5, seed=0, n_range=(3, 3))
    record = found[0].to_record()
    inst = parse_instance(document_text(record.instance))
    assert inst.kernel == found[0].case.kernel
    assert inst.nu == found[0].case.nu


def test_shrink_sanity_counterexample():
    ce = find_counterexamples("SANITY-2", trials=1, seed=0, n_range=(2, 5))[0]
    assert ce.n == 4
    small = shrink(ce)
    assert small.n <= 4
    assert revalidate(small)
    assert shrink(small).case == small.case


def test_shrink_rejects_non_counterexample(four_state, four_state_stationary):
    case = LawCase(four_state, four_state_stationary, sigma_of_kernel(four_state))
    ce = Counterexample("L1", 0, case)
    assert not revalidate(ce)
    with pytest.raises(NotACounterexample):
        shrink(ce)


def test_run_law_with_shrinking():
    report = run_law("SANITY-2", trials=3, seed=0, n_range=(2, 4), shrink_found=True)
    assert all(record.instance.n <= 4 for record in report.counterexamples)


def test_report_is_independent_of_worker_count():
    single = run_law("L5", trials=80, seed=3, n_range=(2, 4), workers=1)
    pooled = run_law("L5", trials=80, seed=3, n_range=(2, 4), workers=4)
    exclude = {"elapsed_seconds"}
    assert single.model_dump(exclude=exclude) == pooled.model_dump(exclude=exclude)


def test_report_metadata():
    report = run_law("l2", trials=10, seed=5, n_range=(3, 4))
    assert report.law == "L2"
    assert report.seed == 5
    assert report.n_range == [3, 4]
    assert report.generator_version


def test_get_law_normalizes_and_rejects():
    assert get_law(" sanity-2 ").id == "SANITY-2"
    with pytest.raises(UnknownLaw):
        get_law("L99")


def test_refusals():
    with pytest.raises(FloatModeRefused):
        run_law("L1", trials=1, seed=0, mode="float")
    with pytest.raises(TooLarge):
        run_law("L1", trials=1, seed=0, n_range=(2, 11))
    with pytest.raises(ValueError, match="invalid size range"):
        run_law("L1", trials=1, seed=0, n_range=(4, 3))


def test_oracle_laws_are_marked():
    assert ORACLE_LAWS <= set(LAWS)


def test_expected_counterexample_flag_reaches_the_report():
    report = run_law("L1", trials=10, seed=0, n_range=(2, 3), expect_counterexample=True)
    assert report.expect_counterexample
    assert report.counterexamples == []
    assert not report.passed
