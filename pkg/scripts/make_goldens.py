"""Regenerate the archived sweep outputs under tests/golden/.

Run from the repository root after any intentional physics change, then review
the diff before committing. The test suite pins against these files.
"""

import dataclasses
import json
import math
import sys
from pathlib import Path

from oemsim import SweepSpec, preset, run_sweep, write_csv

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name in ("fig2", "fig3", "fig4", "fig5", "fig6a", "fig6b", "fig6c"):
        result = run_sweep(preset(name), jobs=4)
        write_csv(result, GOLDEN_DIR / f"{name}.csv")
        print(f"{name}: {result.stable_count()}/{len(result.records)} stable, "
              f"{result.error_count()} errors")

    spec = preset("fig5")
    couplings = [2.0 * math.pi * f * 1e5 for f in (0.5, 1.0, 1.5)]
    peaks = []
    for g in couplings:
        kw = {f.name: getattr(spec, f.name) for f in dataclasses.fields(SweepSpec)}
        kw["base"] = spec.base.replace(g=g)
        result = run_sweep(SweepSpec(**kw), jobs=4)
        peaks.append(max(r.e_n["oc_sba"] for r in result.records if r.stable))
    payload = {"couplings_rad_s": couplings, "peak_en_oc_sba": peaks}
    (GOLDEN_DIR / "fig5_peaks.json").write_text(
        json.dumps(payload, indent=2) + "\n")
    print("fig5 peaks:", peaks)
    return 0


if __name__ == "__main__":
    sys.exit(main())
