from pathlib import Path

from sduality.instances import random_instance, real_rooted_univariate, suite
from sduality.oracle import is_etale
from sduality.scalar import GF, QQ

ROOT = Path(__file__).resolve().parents[1]


def test_reproducible():
    a, b = random_instance(11, GF(101)), random_instance(11, GF(101))
    assert a.polys == b.polys and a.expected_dim == b.expected_dim


def test_suite_coverage():
    s = suite(36)
    assert {i.field.name for i in s} == {"rational", "fp:7", "fp:101", "fp:32003"}
    assert {len(i.variables) for i in s} == {1, 2, 3}
    assert all(1 <= i.expected_dim <= 20 for i in s)
    assert all(i.expected_dim <= 8 for i in s if i.field is QQ and i.family == "dense")


def test_nonreduced_family_is_not_etale():
    for seed in range(5):
        inst = random_instance(seed, QQ, 2, "nonreduced")
        if max(inst.tags["degrees"]) >= 2:
            assert not is_etale(inst.build())


def test_real_rooted():
    for seed in range(5):
        inst = real_rooted_univariate(seed)
        assert inst.build().dim == inst.expected_dim


def test_documented_schemas_match_packaged_ones():
    for name in ("system_spec.schema.json", "run_report.schema.json"):
        assert (ROOT / "docs" / name).read_text() == (ROOT / "src" / "sduality" / "schemas" / name).read_text()
