from pathlib import Path

import pytest

from edgeconceal.image_io import read_pgm
from edgeconceal.transmitter import encode_image

DATA = Path(__file__).resolve().parent.parent / "data"
TEST_IMAGES = ("camera", "moon", "astronaut", "coins")

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def images():
    return {name: read_pgm(DATA / f"{name}.pgm") for name in TEST_IMAGES}


@pytest.fixture(scope="session")
def streams(images):
    return {name: encode_image(im) for name, im in images.items()}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[number] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"AC{number:<3} {status}  {title}")
