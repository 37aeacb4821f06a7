import json
import random

import pytest

from errors import DomainError
from verify import CHECKS, CheckResult, SuiteContext, random_poset, run_suite, save_report


def test_check_result_keeps_a_bounded_list_of_failures():
    result = CheckResult("demo", "a failing check")
    for k in range(25):
        result.expect(k % 2 == 0, lambda k=k: f"case {k}")
    assert result.cases == 25
    assert not result.passed
    assert result.failures[:2] == ["case 1", "case 3"]
    assert len(result.failures) == 10


def test_bounds_are_capped_by_max_degree():
    ctx = SuiteContext(4, random.Random(0))
    assert ctx.bound(7) == 4 and ctx.bound(3) == 3


def test_random_posets_are_reproducible():
    a = random_poset(random.Random(5), 5)
    b = random_poset(random.Random(5), 5)
    assert a == b


@pytest.mark.parametrize("name", [name for name, _, _ in CHECKS])
def test_every_check_passes_at_low_degree(name):
    (result,) = run_suite(3, seed=1, split_samples=5, coproduct_samples=4, quiet=True, only=[name])
    assert result.passed, result.failures
    assert result.cases > 0


def test_unknown_check_names_are_rejected():
    with pytest.raises(DomainError):
        run_suite(2, quiet=True, only=["nope"])


def test_report_is_deterministic(tmp_path):
    path = tmp_path / "out" / "report.json"
    results = run_suite(2, seed=3, split_samples=2, coproduct_samples=2, quiet=True, only=["lemma", "K"])
    save_report(results, str(path), 2, 3)
    first = path.read_text()
    save_report(run_suite(2, seed=3, split_samples=2, coproduct_samples=2, quiet=True, only=["lemma", "K"]), str(path), 2, 3)
    assert path.read_text() == first
    assert json.loads(first)["checks"][0]["name"] == "K"
