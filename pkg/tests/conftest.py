import pytest

CRITERIA = {
    1: "Theta_1 agrees with Delta (homs and composition, m,k <= 5)",
    2: "category laws in Theta_2 and Theta_3 up to degree 3",
    3: "coskeleton cardinality formulas on Theta_2",
    4: "skeleton/coskeleton and discretization adjunction counts",
    5: "hom decomposition of P and Q with explicit bijection",
    6: "theta counts against closed forms",
    7: "strict Segal verdicts and witnesses",
    8: "R functor: discreteness, vertices, DK equivalence",
    9: "Phi construction: truncations and factorization",
    10: "bottom-up discreteness of T-Segal categories",
    11: "DK equivalences between strictly complete objects are bijections",
    12: "parser round-trip and file validation",
}


@pytest.fixture
def acceptance(request):
    """Record ``(ok, detail)`` for a criterion; the summary prints one line each."""
    store = request.config.stash.setdefault(_KEY, {})

    def record(number, ok, detail=""):
        store[number] = (bool(ok), detail)
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


_KEY = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_KEY, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        ok, detail = store.get(number, (False, "not run"))
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}")
