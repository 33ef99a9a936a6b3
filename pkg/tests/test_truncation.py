import numpy as np
import pytest

from lerchmock.numeric import Estimate
from lerchmock.truncation import EVALUATORS, sample_point, truncation_survey


@pytest.mark.parametrize("seed", [1, 2])
def test_doubling_stays_within_reported_bound(seed):
    rows = truncation_survey(seed, points=6)
    assert {r["evaluator"] for r in rows} == set(EVALUATORS)
    bad = [r for r in rows if r["change"] > r["bound"]]
    assert not bad, bad[:3]


def test_every_evaluator_returns_estimates():
    p = sample_point(np.random.default_rng(5))
    for name, run in EVALUATORS.items():
        first, second = run(p)
        assert isinstance(first, Estimate) and isinstance(second, Estimate), name
        assert first.error >= 0


def test_sample_points_are_admissible():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = sample_point(rng)
        assert 0.1 <= p["z"].imag <= 1.2 and abs(p["q"]) < 0.55
        assert p["zi"].imag >= 0.5 and p["r"] >= 1.2


def test_survey_is_deterministic():
    a = truncation_survey(3, points=2, evaluators=["theta3", "p0"])
    b = truncation_survey(3, points=2, evaluators=["theta3", "p0"])
    assert a == b
