import pytest

CRITERIA = {
    1: "Euler identity R - S + H = 2",
    2: "figure instance S=10, R=6, H=6, 6 bundles",
    3: "saturating cut-sets extract, truncated ones rejected",
    4: "greedy bounds against the oracle",
    5: "bundles <= 8 bc + t",
    6: "bipartite pipeline bounds",
    7: "gain machinery",
    8: "cubic graph and its dual",
    9: "orthogonal polygon exact solver",
    10: "negative suite rejected",
    11: "circular drawings have t = 0",
}

_outcomes: dict[int, list[bool]] = {}
_details: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def detail(request):
    """Attach a one-line note to the acceptance summary of the test's criterion."""
    m = request.node.get_closest_marker("criterion")

    def add(text: str) -> None:
        _details.setdefault(m.args[0], []).append(text)

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(m.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, name in CRITERIA.items():
        res = _outcomes.get(n)
        if res is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(res) else "FAIL"
        tr.write_line(f"criterion {n:2d} {status}: {name}")
        for d in _details.get(n, []):
            tr.write_line(f"    {d}")
