import pytest

# criterion id -> (title, [outcomes], [detail lines])
_CRITERIA: dict[int, dict] = {}

TITLES = {
    1: "ONB norms under the corrected weight; literal weight fails at q=2, n=0",
    2: "Basis images B_q(psi_m) by quadrature",
    3: "Isometry (coefficients) and quadrature round trip",
    4: "Kernel identity and ||A_q^z||^2 = E_q(|z|^2)",
    5: "Fourier diagram and sign verdict",
    6: "Commutator coefficients, synthesized identities, misprint ledger",
    7: "Conjecture sweep q = 1..8",
    8: "Caputo eigenproperty of E_q(lambda z^q)",
    9: "Quaternion suite",
    10: "Report determinism",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def record(request):
    """Attach a detail line to the acceptance criterion of the current test."""
    marker = request.node.get_closest_marker("criterion")

    def _record(text: str) -> None:
        if marker is not None:
            _CRITERIA.setdefault(marker.args[0], {"outcomes": [], "details": []})["details"].append(text)

    return _record


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    entry = _CRITERIA.setdefault(marker.args[0], {"outcomes": [], "details": []})
    entry["outcomes"].append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        ok = all(entry["outcomes"]) and bool(entry["outcomes"])
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {TITLES.get(n, '')}")
        for d in entry["details"]:
            terminalreporter.write_line(f"        {d}")
