"""Stimulus sweeps over netlists with CSV and VCD trace export.

Steps are purely combinational: each one is an independent evaluation, so
traces are rectangular tables of levels over time. Exports are byte
deterministic for a fixed trace. Quaternary signals appear in VCD as 2-bit
vectors under the natural encoding, binary signals as scalars.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .netlist import (
    MAX_TABLE_STATES,
    Netlist,
    NetlistError,
    SignalType,
    StateSpaceTooLarge,
)


class PortMismatch(NetlistError):
    pass


@dataclass(frozen=True)
class Stimulus:
    """Ordered input assignments; each step must assign every input port."""

    steps: tuple[Mapping[str, int], ...]
    step_duration: int = 1


@dataclass(frozen=True)
class Trace:
    """Rectangular level recording: one row per step covering every signal
    (inputs first, then outputs, in port declaration order)."""

    signals: tuple[tuple[str, SignalType], ...]
    rows: tuple[tuple[int, ...], ...]
    step_duration: int = 1

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.signals):
                raise ValueError("trace rows must cover every signal")

    def column(self, name: str) -> tuple[int, ...]:
        for idx, (sig_name, _) in enumerate(self.signals):
            if sig_name == name:
                return tuple(row[idx] for row in self.rows)
        raise KeyError(name)


@dataclass(frozen=True)
class VoltageMap:
    """Level-to-voltage rendering map; strictly increasing per signal type."""

    quat: tuple[float, float, float, float] = (0.0, 1.1, 2.2, 3.3)
    bin: tuple[float, float] = (0.0, 3.3)

    def __post_init__(self) -> None:
        for levels in (self.quat, self.bin):
            if any(b <= a for a, b in zip(levels, levels[1:])):
                raise ValueError("voltages must be strictly increasing")

    def volts(self, sig: SignalType, level: int) -> float:
        table = self.quat if sig is SignalType.QUAT else self.bin
        return table[level]


def sweep_all(nl: Netlist) -> Stimulus:
    """Every input combination once, lexicographic, first-declared port
    slowest-varying."""
    nl.validate()
    states = 1
    for _, sig in nl.input_ports:
        states *= sig.levels
    if states > MAX_TABLE_STATES:
        raise StateSpaceTooLarge(f"{states} input states")
    names = [name for name, _ in nl.input_ports]
    steps = tuple(
        dict(zip(names, combo))
        for combo in itertools.product(
            *(range(sig.levels) for _, sig in nl.input_ports)
        )
    )
    return Stimulus(steps)


def run(nl: Netlist, stim: Stimulus) -> Trace:
    """Evaluate each step independently (steps share no state, so they could
    run concurrently); row i is evaluate(steps[i])."""
    nl.validate()
    in_names = [name for name, _ in nl.input_ports]
    out_names = [name for name, _ in nl.output_ports]
    rows = []
    for step in stim.steps:
        if set(step) != set(in_names):
            raise PortMismatch(
                f"step assigns {sorted(step)}, ports are {sorted(in_names)}"
            )
        out = nl.evaluate(step)
        rows.append(
            tuple(step[n] for n in in_names) + tuple(out[n] for n in out_names)
        )
    signals = nl.input_ports + nl.output_ports
    return Trace(signals, tuple(rows), stim.step_duration)


def export_csv(trace: Trace) -> str:
    names = [name for name, _ in trace.signals]
    lines = ["time," + ",".join(names)]
    for i, row in enumerate(trace.rows):
        t = i * trace.step_duration
        lines.append(f"{t}," + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_csv(
    text: str, types: Mapping[str, SignalType], step_duration: int = 1
) -> Trace:
    """Inverse of export_csv (levels view only). Signal types are supplied by
    the caller; step duration is taken from the time column when present."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty CSV")
    header = lines[0].split(",")
    if header[0] != "time":
        raise ValueError("first column must be time")
    names = header[1:]
    for name in names:
        if name not in types:
            raise ValueError(f"no signal type given for {name!r}")
    signals = tuple((name, types[name]) for name in names)
    rows = []
    times = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(names) + 1:
            raise ValueError(f"row width mismatch: {ln!r}")
        times.append(int(cells[0]))
        rows.append(tuple(int(c) for c in cells[1:]))
    if len(times) >= 2:
        step_duration = times[1] - times[0]
    return Trace(signals, tuple(rows), step_duration)


def _vcd_ident(index: int) -> str:
    return chr(33 + index)


def _vcd_value(sig: SignalType, level: int, ident: str) -> str:
    if sig is SignalType.QUAT:
        return f"b{format(level, '02b')} {ident}"
    return f"{level}{ident}"


def export_vcd(trace: Trace, timescale: str = "1 ns") -> str:
    """Value-change dump: full dump at time 0, then change-only emission."""
    out = [
        f"$timescale {timescale} $end",
        "$scope module top $end",
    ]
    idents = {}
    for idx, (name, sig) in enumerate(trace.signals):
        ident = _vcd_ident(idx)
        idents[name] = ident
        width = 2 if sig is SignalType.QUAT else 1
        out.append(f"$var wire {width} {ident} {name} $end")
    out.append("$upscope $end")
    out.append("$enddefinitions $end")
    prev: tuple[int, ...] | None = None
    for i, row in enumerate(trace.rows):
        t = i * trace.step_duration
        if prev is None:
            out.append("#0")
            out.append("$dumpvars")
            for (name, sig), level in zip(trace.signals, row):
                out.append(_vcd_value(sig, level, idents[name]))
            out.append("$end")
        else:
            changes = [
                _vcd_value(sig, level, idents[name])
                for (name, sig), level, old in zip(trace.signals, row, prev)
                if level != old
            ]
            if changes:
                out.append(f"#{t}")
                out.extend(changes)
        prev = row
    return "\n".join(out) + "\n"


def voltage_view(trace: Trace, vmap: VoltageMap | None = None) -> str:
    """CSV like export_csv with levels rendered as voltages (1 decimal)."""
    if vmap is None:
        vmap = VoltageMap()
    names = [name for name, _ in trace.signals]
    lines = ["time," + ",".join(names)]
    for i, row in enumerate(trace.rows):
        t = i * trace.step_duration
        cells = [
            f"{vmap.volts(sig, level):.1f}"
            for (_, sig), level in zip(trace.signals, row)
        ]
        lines.append(f"{t}," + ",".join(cells))
    return "\n".join(lines) + "\n"
