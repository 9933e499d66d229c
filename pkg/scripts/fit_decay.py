"""Fit the Fourier-decay constants of the bump weight and store them."""

import json
from dataclasses import asdict
from pathlib import Path

from expolab.nt.weight import fit_decay_constants

OUT = Path(__file__).resolve().parents[1] / "src" / "expolab" / "data" / "fourier_decay.json"

if __name__ == "__main__":
    consts = fit_decay_constants()
    OUT.write_text(json.dumps(asdict(consts), indent=2) + "\n")
    print(f"wrote {OUT}: {consts}")
