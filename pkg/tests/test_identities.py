import json
import math

import pytest

from lerchmock import identities as ID
from lerchmock.errors import ConfigInvalid, UnknownIdentity
from lerchmock.identities import Config, load_config, run_identity, run_suite, select


def strip_time(reports):
    out = []
    for r in reports:
        d = r.to_dict()
        d.pop("runtime_ms")
        out.append(d)
    return out


def test_single_exact_identity():
    reps = run_suite("thm1-*")
    assert len(reps) == 1 and reps[0].status == "pass"


def test_exact_mode_is_all_zero():
    for rep in run_suite(mode="exact"):
        assert rep.max_abs_error == 0, rep.identity_id
        assert rep.threshold == 0


def test_unknown_pattern():
    with pytest.raises(UnknownIdentity):
        run_suite("nonexistent")
    with pytest.raises(UnknownIdentity):
        run_identity("nonexistent")


def test_select_by_mode():
    exact = set(select(mode="exact"))
    numeric = set(select(mode="numeric"))
    assert exact and numeric and not exact & numeric
    assert exact | numeric == set(ID.REGISTRY)
    with pytest.raises(ConfigInvalid):
        select(mode="other")


def test_report_shape():
    d = run_identity("eq85-theta3").to_dict()
    assert set(d) >= {"identity_id", "mode", "params", "max_abs_error", "threshold",
                      "status", "nodes_used", "runtime_ms", "seed"}
    json.dumps(d)


def test_seed_is_recorded_for_seeded_identities():
    rep = run_identity("thm11-transform", Config(seed=4))
    assert rep.seed == 4 and rep.status == "pass"
    assert run_identity("thm1-watson").seed is None


def test_different_seeds_give_different_points():
    a = ID.random_grid(0, 3, "thm19")
    b = ID.random_grid(1, 3, "thm19")
    assert a != b and a == ID.random_grid(0, 3, "thm19")


def test_tolerance_override():
    rep = run_identity("eq85-theta3", Config(tol=1e-30))
    assert rep.threshold == 1e-30
    assert rep.status == "fail"


def test_order_override():
    rep = run_identity("thm1-watson", Config(order=10))
    assert rep.params == {"order": 10}
    assert run_identity("thm1-watson").params == {"order": 100}


def test_parallel_matches_serial():
    serial = run_suite("eq*", Config(jobs=1))
    parallel = run_suite("eq*", Config(jobs=2))
    assert strip_time(serial) == strip_time(parallel)


def test_config_file(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# run settings\norder = 30\ntol = 1e-9  # tighter\nseed=3\njobs = 2\n")
    cfg = load_config(f)
    assert cfg == Config(order=30, tol=1e-9, seed=3, jobs=2)
    # explicit values win over the file
    assert cfg.merged(order=12, tol=None) == Config(order=12, tol=1e-9, seed=3, jobs=2)


@pytest.mark.parametrize("text", ["order = -1", "colour = red", "jobs", "tol = fast", "jobs = 0"])
def test_bad_config(tmp_path, text):
    f = tmp_path / "bad.cfg"
    f.write_text(text + "\n")
    with pytest.raises(ConfigInvalid):
        load_config(f)


def test_failures_are_reported_not_raised():
    rep = run_identity("thm12-convolution")
    assert rep.status == "fail" and math.isinf(rep.max_abs_error)


def test_descriptor_metadata():
    for ident, desc in ID.REGISTRY.items():
        assert desc.id == ident
        assert desc.mode in ("exact", "numeric")
        assert desc.default_tolerance >= 0
