import sys
from pathlib import Path

import pytest

import gpdb.lp
from gpdb import ground_program, parse_program

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

sys.path.insert(0, str(Path(__file__).resolve().parent))

# every optimum the solver reports is re-checked against its witness
gpdb.lp.VERIFY = True


def load(name, max_atoms=12):
    return ground_program(parse_program((FIXTURES / name).read_text()), max_atoms)


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.report_lines():
        terminalreporter.write_line(line)
