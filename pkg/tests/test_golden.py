"""Regression against the archived sweep outputs.

Cells are compared numerically (1e-9 relative) rather than textually so the
pins survive harmless floating-point variation across BLAS builds; schema and
stability flags must match exactly.
"""

import csv
import io
from pathlib import Path

import pytest

from oemsim import preset, run_sweep
from oemsim.sweep import csv_header, csv_rows

GOLDEN_DIR = Path(__file__).parent / "golden"

PRESETS = ("fig2", "fig3", "fig4", "fig5", "fig6a", "fig6b", "fig6c")


def cells_match(have: str, want: str) -> bool:
    if have == want:
        return True
    try:
        a, b = float(have), float(want)
    except ValueError:
        return False
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


@pytest.mark.parametrize("name", PRESETS)
def test_sweep_matches_archive(name):
    archived = list(csv.reader(io.StringIO(
        (GOLDEN_DIR / f"{name}.csv").read_text())))
    spec = preset(name)
    result = run_sweep(spec, jobs=4)
    assert archived[0] == csv_header(spec)
    rows = csv_rows(result)
    assert len(archived) == len(rows) + 1
    for i, (want_row, have_row) in enumerate(zip(archived[1:], rows)):
        assert len(want_row) == len(have_row)
        for j, (want, have) in enumerate(zip(want_row, have_row)):
            assert cells_match(have, want), \
                f"{name} row {i} col {j}: {have!r} vs archived {want!r}"
