import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in CRITERIA:
        terminalreporter.write_line(RESULTS.get(cid, f"NOT RUN  criterion {cid}"))
