"""Command-line front end: tables, verification, metrics, minimization,
simulation, and circuit comparison over the registry.

Exit codes: 0 success/equal/verified; 1 verification, audit, or comparison
failure; 2 usage or parse error; 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .circuits import (
    CIRCUIT_IDS,
    REGISTRY,
    CircuitInfo,
    circuit_metrics,
    quat_view,
    verify,
    verify_all,
)
from .minimizer import (
    ParseError,
    UnsupportedFeature,
    audit_published_forms,
    minimize_exact,
    parse_pla,
    recognize_xor,
    render_sop,
)
from .netlist import GateKind, MissingCostEntry, SignalType
from .sim import VoltageMap, export_csv, export_vcd, run, sweep_all, voltage_view

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


class ConfigError(Exception):
    pass


@dataclass
class Config:
    cost_table: dict[GateKind, int] | None = None
    voltages: VoltageMap = VoltageMap()
    out_dir: str = "."


def _load_cost_table(path: str) -> dict[GateKind, int]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigError("cost table must be a JSON object of kind -> int")
    table = {}
    for key, value in raw.items():
        try:
            kind = GateKind(key)
        except ValueError:
            raise ConfigError(f"unknown gate kind {key!r} in cost table")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ConfigError(f"cost for {key!r} must be a non-negative integer")
        table[kind] = value
    return table


def _load_voltage_map(path: str) -> VoltageMap:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        return VoltageMap(
            quat=tuple(float(v) for v in raw["quat"]),
            bin=tuple(float(v) for v in raw["bin"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad voltage map: {exc}")


def load_config(path: str | None) -> Config:
    """Flat key=value file; recognized keys: cost_table, voltage_map, out_dir.
    Files referenced by a key that do not exist fall back to defaults with a
    warning."""
    cfg = Config()
    if path is None:
        return cfg
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "cost_table":
            if not os.path.exists(value):
                print(
                    f"warning: cost table {value!r} not found; using defaults",
                    file=sys.stderr,
                )
                continue
            cfg.cost_table = _load_cost_table(value)
        elif key == "voltage_map":
            if not os.path.exists(value):
                print(
                    f"warning: voltage map {value!r} not found; using defaults",
                    file=sys.stderr,
                )
                continue
            cfg.voltages = _load_voltage_map(value)
        elif key == "out_dir":
            cfg.out_dir = value
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg


def _resolve(cid: str) -> CircuitInfo | None:
    info = REGISTRY.get(cid)
    if info is None:
        print(
            f"unknown circuit {cid!r}; known: {', '.join(CIRCUIT_IDS)}",
            file=sys.stderr,
        )
    return info


def _format_columns(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [" ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append(" ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _write_text(dest: str, text: str, out_dir: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
        return
    path = dest if os.path.isabs(dest) else os.path.join(out_dir, dest)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_table(args: argparse.Namespace, cfg: Config) -> int:
    info = _resolve(args.circuit)
    if info is None:
        return EXIT_USAGE
    nl = info.build() if args.bits else quat_view(info.cid)
    tt = nl.truth_table()
    two_quat_in = (
        len(tt.inputs) == 2
        and all(sig is SignalType.QUAT for _, sig in tt.inputs)
        and len(tt.outputs) == 1
    )
    if two_quat_in and not args.bits:
        grid = {ins: outs[0] for ins, outs in tt.rows}
        print("x\\y | 0 1 2 3")
        print("----+--------")
        for a in range(4):
            cells = " ".join(str(grid[(a, b)]) for b in range(4))
            print(f"{a:>3} | {cells}")
        return EXIT_OK
    headers = [name for name, _ in tt.inputs] + [name for name, _ in tt.outputs]
    rows = [
        [str(v) for v in ins + outs] for ins, outs in tt.rows
    ]
    print(_format_columns(headers, rows))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: Config) -> int:
    if args.circuit == "all":
        results = verify_all()
    else:
        info = _resolve(args.circuit)
        if info is None:
            return EXIT_USAGE
        results = (verify(info.cid),)
    for res in results:
        if res.ok:
            print(f"{res.cid}: PASS ({res.vectors} vectors)")
        else:
            print(f"{res.cid}: FAIL at {res.counterexample}")
    passed = sum(1 for r in results if r.ok)
    if len(results) > 1:
        print(f"{passed}/{len(results)} circuits PASS")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_metrics(args: argparse.Namespace, cfg: Config) -> int:
    info = _resolve(args.circuit)
    if info is None:
        return EXIT_USAGE
    try:
        m = circuit_metrics(info.cid, cfg.cost_table)
    except MissingCostEntry as exc:
        print(f"cost table has no entry for {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"circuit: {info.cid} ({info.title})")
    print(f"gates: {m.gate_count}")
    print(f"depth: {m.depth}")
    print(f"transistor estimate: {m.transistor_estimate}")
    kinds = " ".join(f"{k}={v}" for k, v in m.kind_counts)
    print(f"kinds: {kinds if kinds else '(none)'}")
    if m.published_transistors is not None:
        print(
            f"published transistors: {m.published_transistors} "
            f"({m.published_note})"
        )
    return EXIT_OK


def cmd_minimize(args: argparse.Namespace, cfg: Config) -> int:
    try:
        if args.pla == "-":
            text = sys.stdin.read()
        else:
            with open(args.pla, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.pla}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        spec = parse_pla(text)
    except (ParseError, UnsupportedFeature) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    best = minimize_exact(spec)
    print(render_sop(best, spec.names))
    if args.xor:
        report = recognize_xor(best, spec.names)
        print(report.rendered)
        print(f"two-input gates: {report.gates_2in}")
    return EXIT_OK


def cmd_audit(args: argparse.Namespace, cfg: Config) -> int:
    rows = audit_published_forms()
    table = []
    for r in rows:
        table.append([
            r.op,
            r.bit,
            "yes" if r.equivalent else "NO",
            str(r.published_literals),
            str(r.published_gates_2in),
            "-" if r.published_sop_literals is None else str(r.published_sop_literals),
            str(r.min_terms),
            str(r.min_literals),
            r.published_form,
            r.min_sop,
        ])
    headers = [
        "op", "bit", "equiv", "lits", "gates2", "sop-lits",
        "min-terms", "min-lits", "published-form", "min-sop",
    ]
    print(_format_columns(headers, table))
    good = sum(1 for r in rows if r.equivalent)
    print(f"{good}/{len(rows)} published forms equivalent to their tables")
    return EXIT_OK if good == len(rows) else EXIT_FAIL


def cmd_sim(args: argparse.Namespace, cfg: Config) -> int:
    info = _resolve(args.circuit)
    if info is None:
        return EXIT_USAGE
    nl = info.build()
    trace = run(nl, sweep_all(nl))
    csv_text = (
        voltage_view(trace, cfg.voltages) if args.volts else export_csv(trace)
    )
    try:
        wrote = False
        if args.csv is not None:
            _write_text(args.csv, csv_text, cfg.out_dir)
            wrote = True
        if args.vcd is not None:
            _write_text(args.vcd, export_vcd(trace), cfg.out_dir)
            wrote = True
        if not wrote:
            sys.stdout.write(csv_text)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, cfg: Config) -> int:
    info_a = _resolve(args.a)
    if info_a is None:
        return EXIT_USAGE
    info_b = _resolve(args.b)
    if info_b is None:
        return EXIT_USAGE
    va, vb = quat_view(info_a.cid), quat_view(info_b.cid)
    if va.input_ports != vb.input_ports or va.output_ports != vb.output_ports:
        print(
            f"port shapes differ: {info_a.cid} is "
            f"{[n for n, _ in va.input_ports]} -> "
            f"{[n for n, _ in va.output_ports]}, {info_b.cid} is "
            f"{[n for n, _ in vb.input_ports]} -> "
            f"{[n for n, _ in vb.output_ports]}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    ta, tb = va.truth_table(), vb.truth_table()
    for (ins, outs_a), (_, outs_b) in zip(ta.rows, tb.rows):
        if outs_a != outs_b:
            where = " ".join(
                f"{name}={v}" for (name, _), v in zip(ta.inputs, ins)
            )
            print(f"DIFFER at {where}: {outs_a[0]} vs {outs_b[0]}")
            return EXIT_FAIL
    print(f"EQUAL ({len(ta.rows)} vectors)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvq",
        description="quaternary logic circuit toolkit",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="key=value config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print a truth table")
    p.add_argument("circuit")
    p.add_argument("--bits", action="store_true", help="bit-level core table")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="netlist vs reference")
    p.add_argument("circuit", help="circuit id or 'all'")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("metrics", parents=[common], help="gate count and depth")
    p.add_argument("circuit")
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("minimize", parents=[common], help="exact SOP from PLA")
    p.add_argument("pla", help="PLA file, or - for stdin")
    p.add_argument("--xor", action="store_true", help="XOR-factored rendering")
    p.set_defaults(fn=cmd_minimize)

    p = sub.add_parser("audit", parents=[common], help="published-equation audit")
    p.set_defaults(fn=cmd_audit)

    p = sub.add_parser("sim", parents=[common], help="exhaustive sweep traces")
    p.add_argument("circuit")
    p.add_argument("--csv", default=None, help="CSV path, - for stdout")
    p.add_argument("--vcd", default=None, help="VCD path, - for stdout")
    p.add_argument("--volts", action="store_true", help="voltage-valued CSV")
    p.set_defaults(fn=cmd_sim)

    p = sub.add_parser("compare", parents=[common], help="equivalence check")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"bad JSON in config-referenced file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    return args.fn(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
