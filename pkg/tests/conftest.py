import pytest
from hypothesis import strategies as st

from condorcet import formats
from condorcet.orders import ALL_LAWS, LinearOrder, Triple


@pytest.fixture(scope="session")
def d224():
    return formats.d224_domain()


@pytest.fixture(scope="session")
def d224_rules():
    return formats.d224_rules()


def perms(n):
    return st.permutations(range(1, n + 1)).map(lambda p: LinearOrder(tuple(p)))


@st.composite
def triples_of(draw, n):
    a, b, c = sorted(draw(st.lists(st.integers(1, n), min_size=3, max_size=3, unique=True)))
    return Triple(a, b, c)


laws = st.sampled_from(ALL_LAWS)


_ACCEPTANCE: list[tuple[str, bool, str]] = []


class Criterion:
    """Records a pass/fail line for one acceptance criterion; failures still raise."""

    def __init__(self, label: str):
        self.label = label
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = "; ".join(self.notes)
        if not ok:
            detail = f"{detail}; {exc_type.__name__}: {exc}".strip("; ")
        _ACCEPTANCE.append((self.label, ok, detail))
        line = f"[acceptance] {'PASS' if ok else 'FAIL'} {self.label}: {detail}"
        print(line, flush=True)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
