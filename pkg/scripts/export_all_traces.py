#!/usr/bin/env python3
"""Dump exhaustive-sweep traces for every registry circuit.

Writes one CSV and one VCD per circuit into the output directory, plus an
optional voltage-domain CSV rendered through the default level map.
"""

import argparse
from pathlib import Path

from mvq.circuits import CIRCUIT_IDS, get_info
from mvq.sim import VoltageMap, export_csv, export_vcd, run, sweep_all, voltage_view


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir", default="traces", help="directory for trace files"
    )
    parser.add_argument(
        "--volts",
        action="store_true",
        help="also write voltage-domain CSVs",
    )
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    vmap = VoltageMap()
    for cid in CIRCUIT_IDS:
        nl = get_info(cid).build()
        trace = run(nl, sweep_all(nl))
        written = [f"{cid}.csv", f"{cid}.vcd"]
        (out / written[0]).write_text(export_csv(trace))
        (out / written[1]).write_text(export_vcd(trace))
        if args.volts:
            name = f"{cid}.volts.csv"
            (out / name).write_text(voltage_view(trace, vmap))
            written.append(name)
        print(f"{cid}: wrote {', '.join(written)}")


if __name__ == "__main__":
    main()
