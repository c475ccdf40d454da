#!/usr/bin/env python3
"""Export the orthonormal output mode waveforms psi1/psi2 for each shape at
its own photon-transfer peak (CSV per shape), the data behind the
mode-shape plots: psi2 resembles the input pulse, psi1 is the delayed
linear output."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from pulsegate import find_peak_c12
from pulsegate.cli import main as cli_main
from pulsegate.pulses import PulseShape


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--stride", type=int, default=4)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for shape in PulseShape:
        if shape is PulseShape.CUSTOM:
            continue
        res = find_peak_c12(shape)
        out = args.outdir / f"modes_{shape.value}.csv"
        rc = cli_main(["modes", "--shape", shape.value,
                       "--gamma-t", repr(res.gamma_t_star),
                       "--stride", str(args.stride), "--out", str(out)])
        if rc != 0:
            return rc
        print(f"{shape.value}: peak at gamma_t={res.gamma_t_star:.4f} -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
