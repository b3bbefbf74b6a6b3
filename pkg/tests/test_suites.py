import pytest

from effectus.suites import SUITES, RunConfig, run


@pytest.mark.parametrize("suite", SUITES)
def test_registered_suite_passes(suite):
    reports = run(suite, RunConfig())
    failed = [f"{r.name}/{x.law}: {x.witness}" for r in reports for x in r.failed()]
    assert reports and not failed


def test_config_rejects_non_positive_tolerance():
    with pytest.raises(ValueError):
        RunConfig(eps=0)
