"""Pilot run for the Wilton square-root-cancellation check; writes the committed record."""

import json
from pathlib import Path

from expolab.nt.tau import tau_table
from expolab.sums.wilton import PILOT_SCALES, WILTON_RATIO_LIMIT, default_alpha_grid, wilton_scan

OUT = Path(__file__).resolve().parents[1] / "src" / "expolab" / "data" / "wilton_pilot.json"

if __name__ == "__main__":
    table = tau_table(PILOT_SCALES[1])
    scales = [2**k for k in range(7, 15)]
    r = wilton_scan(scales, default_alpha_grid(), table)
    record = {
        "grid": "default_alpha_grid (256 points)",
        "R": {str(n): r[n] for n in scales},
        "ratio": r[PILOT_SCALES[1]] / r[PILOT_SCALES[0]],
        "limit": WILTON_RATIO_LIMIT,
    }
    OUT.write_text(json.dumps(record, indent=2) + "\n")
    print(json.dumps(record, indent=2))
