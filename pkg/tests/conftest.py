import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def s12():
    from capoff.surface import load_surface

    return load_surface("S1_2")


ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def acceptance(request):
    """Record a criterion's outcome; the summary prints one line per criterion."""
    log = request.config.stash[ACCEPTANCE]

    def record(number, title, passed, detail=""):
        log[number] = (title, passed, detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {title}" + (f" ({detail})" if detail else ""))

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash[ACCEPTANCE]
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        title, passed, detail = log[number]
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
