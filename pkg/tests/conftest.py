import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# filled in by test_acceptance.py: criterion number -> (passed, line)
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key][1])
