from pathlib import Path

import pytest

from riskseed import bundled_path, load_bundled

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fridge():
    return load_bundled()


@pytest.fixture(scope="session")
def fridge_model(fridge):
    return fridge[0]


@pytest.fixture(scope="session")
def fridge_catalog(fridge):
    return fridge[1]


@pytest.fixture(scope="session")
def reduced_panel_model():
    model, _ = load_bundled(model="model-reduced-panel.json")
    return model


@pytest.fixture
def model_file():
    return str(bundled_path("model.json"))


@pytest.fixture
def catalog_file():
    return str(bundled_path("catalog.json"))


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


ACCEPTANCE: dict[str, bool] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under the test's docstring."""
    label = request.function.__doc__.strip().splitlines()[0]
    ACCEPTANCE[label] = False
    yield
    report = getattr(request.node, "rep_call", None)
    ACCEPTANCE[label] = bool(report and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.rep_call = report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")
