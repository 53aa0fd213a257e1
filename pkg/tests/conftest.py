import pytest

from confsurf.verify import SUITES

_cache = {}


@pytest.fixture(scope="session")
def suite_report():
    """Run each verification suite at most once per test session."""
    def get(name):
        if name not in _cache:
            _cache[name] = SUITES[name]()
        return _cache[name]
    return get


def check_by_name(report, name):
    for c in report["checks"]:
        if c["name"] == name:
            return c
    raise KeyError(f"{name} not in suite {report['suite']}: "
                   f"{[c['name'] for c in report['checks']]}")


def assert_check(report, name, tolerance):
    c = check_by_name(report, name)
    assert c["tolerance"] == tolerance, (name, c["tolerance"], tolerance)
    assert c["passed"], (name, c["max_residual"], tolerance)
    return c
