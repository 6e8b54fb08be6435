import pytest

from so3wrt.cyclo import Level


@pytest.fixture(scope="session")
def lib7():
    """The default r=7 atom library; about 15 s to build, shared by all density tests."""
    from so3wrt.density import build_library

    return build_library(7)


@pytest.fixture(params=[5, 7], ids=lambda r: f"r{r}")
def level(request):
    return Level(request.param)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion; printed in the terminal summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", {})

    def record(n: int, ok: bool, detail: str) -> bool:
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[n] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
