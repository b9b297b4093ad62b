import sys

from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One verdict line per acceptance check, printed after the run."""
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance checks")
    for num in sorted(results):
        terminalreporter.write_line(f"check {num:>2}: {results[num]}")
