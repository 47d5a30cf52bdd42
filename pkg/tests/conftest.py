import pytest

from ecmoments.modarith import is_prime

# criterion number -> (description, passed)
ACCEPTANCE_RESULTS = {}


def small_primes(lo, hi):
    return [n for n in range(max(lo, 3), hi + 1) if is_prime(n)]


def chi_by_squares(a, p):
    """Legendre symbol from the explicit set of squares; shares no code with the package."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def trace_by_loops(a2, a4, a6, p):
    """p minus the affine point count, by counting (x, y) pairs."""
    n = sum(1 for x in range(p) for y in range(p)
            if (y * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0)
    return p - n


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        desc, ok = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {desc}")


@pytest.fixture
def record_criterion():
    def record(n, desc, ok):
        ACCEPTANCE_RESULTS[n] = (desc, bool(ok))
        return ok
    return record
