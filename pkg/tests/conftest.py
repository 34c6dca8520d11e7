from hypothesis import settings

# fixed example database-free runs so the suite gives the same verdict every time
settings.register_profile("repeatable", derandomize=True, deadline=None)
settings.register_profile("sweep", deadline=None)  # select with --hypothesis-profile=sweep
settings.load_profile("repeatable")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(LINES):
            terminalreporter.write_line(LINES[number])
