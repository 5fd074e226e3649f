import pytest

from igusa.oracle import PolyMap

# name -> exponent vectors of the monomial components
CATALOG = {
    "x": [(1,)],
    "x2": [(2,)],
    "xy": [(1, 1)],
    "x2y3": [(2, 3)],
    "(x,y)": [(1, 0), (0, 1)],
    "(x2,y3)": [(2, 0), (0, 3)],
}
PRIMES = (2, 3, 5)

_criteria: list[str] = []


def catalog_map(name: str) -> PolyMap:
    return PolyMap.monomials(CATALOG[name])


@pytest.fixture
def record_criterion():
    def record(k: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        print(line)
        _criteria.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
