from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# acceptance lines, filled in by test_acceptance and echoed after the run
CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[2].rstrip(":").split("/")[0])):
            terminalreporter.write_line(line)
