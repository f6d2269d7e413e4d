import numpy as np
import pytest

from chaoscrack import reference as ref

_acceptance_results: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def ref_plain():
    return ref.grid(ref.PLAIN)


@pytest.fixture
def ref_perm():
    return ref.permutation()


@pytest.fixture
def ref_ks():
    return ref.keystream()


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the end-of-run summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    details: list[str] = []
    yield details
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    _acceptance_results[label] = (passed, "; ".join(details))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance_results, key=lambda s: int(s.split()[0].lstrip("AC"))):
        passed, detail = _acceptance_results[label]
        line = f"{'PASS' if passed else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
