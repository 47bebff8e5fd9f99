#!/usr/bin/env python3
"""Print the published-form audit next to per-circuit structural metrics.

Exits 1 if any published output-bit form disagrees with its defining table,
so the script doubles as a regression check in automation.
"""

import argparse
import sys

from mvq.circuits import CIRCUIT_IDS, circuit_metrics, get_info
from mvq.minimizer import audit_published_forms


def print_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in rows))
        for i in range(len(headers))
    ]
    for line in [headers] + rows:
        print("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.parse_args()

    rows = audit_published_forms()
    print("published output-bit forms")
    print_table(
        ["op", "bit", "equiv", "lits", "min-terms", "min-lits", "form"],
        [
            [
                r.op,
                r.bit,
                "yes" if r.equivalent else "NO",
                str(r.published_literals),
                str(r.min_terms),
                str(r.min_literals),
                r.published_form,
            ]
            for r in rows
        ],
    )
    good = sum(1 for r in rows if r.equivalent)
    print(f"{good}/{len(rows)} equivalent")

    print()
    print("circuit metrics")
    table = []
    for cid in CIRCUIT_IDS:
        m = circuit_metrics(cid)
        table.append(
            [
                cid,
                get_info(cid).title,
                str(m.gate_count),
                str(m.depth),
                str(m.transistor_estimate),
                "-"
                if m.published_transistors is None
                else str(m.published_transistors),
            ]
        )
    print_table(
        ["circuit", "title", "gates", "depth", "estimate", "published"], table
    )
    return 0 if good == len(rows) else 1


if __name__ == "__main__":
    sys.exit(main())
