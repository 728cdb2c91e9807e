from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

# filled in by test_acceptance; one entry per criterion
ACCEPTANCE: dict[int, tuple[str, bool, float, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        name, ok, elapsed, limit = ACCEPTANCE[n]
        verdict = "PASS" if ok else "FAIL"
        budget = f", limit {limit:g} s" if limit else ""
        terminalreporter.write_line(f"criterion {n}: {verdict}  {name}  ({elapsed:.2f} s{budget})")
