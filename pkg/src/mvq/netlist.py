"""Typed combinational gate-graph IR for mixed binary/quaternary circuits.

Nets carry a fixed signal type (binary or quaternary). Gates are strict
combinational primitives; evaluation walks a cached topological order, so a
validated netlist is immutable and safe to evaluate from concurrent contexts.
Construction (add_gate, connect_output) is single-context only.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

MAX_TABLE_STATES = 2 ** 16


class SignalType(Enum):
    BIN = "bin"
    QUAT = "quat"

    @property
    def levels(self) -> int:
        return 2 if self is SignalType.BIN else 4


class GateKind(Enum):
    NOT = "not"
    AND2 = "and2"
    AND3 = "and3"
    AND4 = "and4"
    OR2 = "or2"
    OR3 = "or3"
    OR4 = "or4"
    XOR2 = "xor2"
    NAND2 = "nand2"
    NOR2 = "nor2"
    ANDN2 = "andn2"
    CONST0 = "const0"
    CONST1 = "const1"
    BMUX2 = "bmux2"
    DLC1 = "dlc1"
    DLC2 = "dlc2"
    DLC3 = "dlc3"
    B2Q = "b2q"
    QCONST = "qconst"
    QMUX4 = "qmux4"


_B = SignalType.BIN
_Q = SignalType.QUAT

# kind -> (input port types, output type)
GATE_SIGNATURES: dict[GateKind, tuple[tuple[SignalType, ...], SignalType]] = {
    GateKind.NOT: ((_B,), _B),
    GateKind.AND2: ((_B, _B), _B),
    GateKind.AND3: ((_B, _B, _B), _B),
    GateKind.AND4: ((_B, _B, _B, _B), _B),
    GateKind.OR2: ((_B, _B), _B),
    GateKind.OR3: ((_B, _B, _B), _B),
    GateKind.OR4: ((_B, _B, _B, _B), _B),
    GateKind.XOR2: ((_B, _B), _B),
    GateKind.NAND2: ((_B, _B), _B),
    GateKind.NOR2: ((_B, _B), _B),
    GateKind.ANDN2: ((_B, _B), _B),
    GateKind.CONST0: ((), _B),
    GateKind.CONST1: ((), _B),
    GateKind.BMUX2: ((_B, _B, _B), _B),
    GateKind.DLC1: ((_Q,), _B),
    GateKind.DLC2: ((_Q,), _B),
    GateKind.DLC3: ((_Q,), _B),
    GateKind.B2Q: ((_B, _B), _Q),
    GateKind.QCONST: ((), _Q),
    GateKind.QMUX4: ((_Q, _Q, _Q, _Q, _Q), _Q),
}

CONST_KINDS = frozenset({GateKind.CONST0, GateKind.CONST1, GateKind.QCONST})

# per-gate transistor costs (static CMOS style); constants are free wiring
DEFAULT_COST_TABLE: dict[GateKind, int] = {
    GateKind.NOT: 2,
    GateKind.NAND2: 4,
    GateKind.NOR2: 4,
    GateKind.AND2: 6,
    GateKind.OR2: 6,
    GateKind.AND3: 8,
    GateKind.OR3: 8,
    GateKind.AND4: 10,
    GateKind.OR4: 10,
    GateKind.XOR2: 10,
    GateKind.ANDN2: 6,
    GateKind.BMUX2: 6,
    GateKind.DLC1: 2,
    GateKind.DLC2: 2,
    GateKind.DLC3: 2,
    GateKind.B2Q: 8,
    GateKind.QMUX4: 24,
}

# kind -> f(input values, const level) -> output value
_EVAL = {
    GateKind.NOT: lambda v, lv: v[0] ^ 1,
    GateKind.AND2: lambda v, lv: v[0] & v[1],
    GateKind.AND3: lambda v, lv: v[0] & v[1] & v[2],
    GateKind.AND4: lambda v, lv: v[0] & v[1] & v[2] & v[3],
    GateKind.OR2: lambda v, lv: v[0] | v[1],
    GateKind.OR3: lambda v, lv: v[0] | v[1] | v[2],
    GateKind.OR4: lambda v, lv: v[0] | v[1] | v[2] | v[3],
    GateKind.XOR2: lambda v, lv: v[0] ^ v[1],
    GateKind.NAND2: lambda v, lv: (v[0] & v[1]) ^ 1,
    GateKind.NOR2: lambda v, lv: (v[0] | v[1]) ^ 1,
    GateKind.ANDN2: lambda v, lv: (v[0] ^ 1) & v[1],
    GateKind.CONST0: lambda v, lv: 0,
    GateKind.CONST1: lambda v, lv: 1,
    GateKind.BMUX2: lambda v, lv: v[1] if v[0] == 1 else v[2],
    GateKind.DLC1: lambda v, lv: 1 if v[0] < 1 else 0,
    GateKind.DLC2: lambda v, lv: 1 if v[0] < 2 else 0,
    GateKind.DLC3: lambda v, lv: 1 if v[0] < 3 else 0,
    GateKind.B2Q: lambda v, lv: 2 * v[0] + v[1],
    GateKind.QCONST: lambda v, lv: lv,
    GateKind.QMUX4: lambda v, lv: v[1 + v[0]],
}


class NetlistError(Exception):
    pass


class DuplicatePortName(NetlistError):
    pass


class ArityMismatch(NetlistError):
    pass


class TypeMismatch(NetlistError):
    pass


class UnknownNet(NetlistError):
    pass


class UnknownPort(NetlistError):
    pass


class CombinationalCycle(NetlistError):
    pass


class UndrivenOutput(NetlistError):
    pass


class MissingAssignment(NetlistError):
    pass


class LevelOutOfRange(NetlistError):
    pass


class StateSpaceTooLarge(NetlistError):
    pass


class MissingCostEntry(NetlistError):
    pass


class NetlistJsonError(NetlistError):
    pass


@dataclass(frozen=True)
class Gate:
    gid: int
    kind: GateKind
    inputs: tuple[int, ...]
    output: int
    level: int | None = None  # qconst only


@dataclass(frozen=True)
class Metrics:
    gate_count: int
    depth: int
    transistor_estimate: int
    kind_counts: tuple[tuple[str, int], ...]
    published_transistors: int | None = None
    published_note: str | None = None


@dataclass(frozen=True)
class TruthTable:
    inputs: tuple[tuple[str, SignalType], ...]
    outputs: tuple[tuple[str, SignalType], ...]
    rows: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def _check_level(value: int, sig: SignalType, what: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise LevelOutOfRange(f"{what}: expected int, got {value!r}")
    if not 0 <= value < sig.levels:
        raise LevelOutOfRange(f"{what}: {value} out of range for {sig.value}")


class Netlist:
    """Combinational net graph. Net ids are dense ints; input port i drives
    net i, each gate drives one fresh net."""

    def __init__(
        self,
        inputs: Iterable[tuple[str, SignalType]],
        outputs: Iterable[tuple[str, SignalType]],
    ) -> None:
        self._inputs: tuple[tuple[str, SignalType], ...] = tuple(inputs)
        self._outputs: tuple[tuple[str, SignalType], ...] = tuple(outputs)
        seen: set[str] = set()
        for name, _ in self._inputs + self._outputs:
            if name in seen:
                raise DuplicatePortName(name)
            seen.add(name)
        self._net_type: dict[int, SignalType] = {}
        self._input_net: dict[str, int] = {}
        for i, (name, sig) in enumerate(self._inputs):
            self._net_type[i] = sig
            self._input_net[name] = i
        self._next_net = len(self._inputs)
        self._gates: list[Gate] = []
        self._out_net: dict[str, int] = {}
        self._topo: list[Gate] | None = None

    @property
    def input_ports(self) -> tuple[tuple[str, SignalType], ...]:
        return self._inputs

    @property
    def output_ports(self) -> tuple[tuple[str, SignalType], ...]:
        return self._outputs

    @property
    def gates(self) -> tuple[Gate, ...]:
        return tuple(self._gates)

    def topo_gates(self) -> tuple[Gate, ...]:
        """Gates in dependency order (validates first)."""
        self.validate()
        assert self._topo is not None
        return tuple(self._topo)

    def input_net(self, name: str) -> int:
        if name not in self._input_net:
            raise UnknownPort(f"no input port {name!r}")
        return self._input_net[name]

    def output_net(self, name: str) -> int:
        if name not in self._out_net:
            raise UndrivenOutput(name)
        return self._out_net[name]

    def add_gate(
        self,
        kind: GateKind,
        inputs: Iterable[int] = (),
        level: int | None = None,
    ) -> int:
        ins = tuple(inputs)
        gid = len(self._gates)
        out = self._next_net
        self._install_gate(gid, kind, ins, out, level)
        self._next_net += 1
        return out

    def _install_gate(
        self,
        gid: int,
        kind: GateKind,
        ins: tuple[int, ...],
        out: int,
        level: int | None,
    ) -> None:
        in_sigs, out_sig = GATE_SIGNATURES[kind]
        if len(ins) != len(in_sigs):
            raise ArityMismatch(
                f"{kind.value} takes {len(in_sigs)} inputs, got {len(ins)}"
            )
        for net, sig in zip(ins, in_sigs):
            if net not in self._net_type:
                raise UnknownNet(f"net {net} does not exist")
            if self._net_type[net] is not sig:
                raise TypeMismatch(
                    f"{kind.value} needs {sig.value} input, net {net} is "
                    f"{self._net_type[net].value}"
                )
        if kind is GateKind.QCONST:
            if level is None:
                raise LevelOutOfRange("qconst requires a level")
            _check_level(level, SignalType.QUAT, "qconst level")
        elif level is not None:
            raise NetlistError(f"{kind.value} does not take a level")
        self._net_type[out] = out_sig
        self._gates.append(Gate(gid, kind, ins, out, level))
        self._topo = None

    def connect_output(self, name: str, net: int) -> None:
        declared = dict(self._outputs)
        if name not in declared:
            raise UnknownPort(f"no output port {name!r}")
        if net not in self._net_type:
            raise UnknownNet(f"net {net} does not exist")
        if self._net_type[net] is not declared[name]:
            raise TypeMismatch(
                f"output {name!r} is {declared[name].value}, net {net} is "
                f"{self._net_type[net].value}"
            )
        self._out_net[name] = net
        self._topo = None

    def validate(self) -> None:
        """Check connectivity and acyclicity; cache a topological gate order."""
        if self._topo is not None:
            return
        for name, _ in self._outputs:
            if name not in self._out_net:
                raise UndrivenOutput(name)
        driver: dict[int, Gate] = {g.output: g for g in self._gates}
        # Kahn: a gate is ready once all gate-driven input nets are resolved
        pending: dict[int, int] = {}
        consumers: dict[int, list[Gate]] = {}
        ready: list[Gate] = []
        for g in self._gates:
            deps = [n for n in g.inputs if n in driver]
            pending[g.gid] = len(deps)
            for n in deps:
                consumers.setdefault(n, []).append(g)
            if not deps:
                ready.append(g)
        order: list[Gate] = []
        while ready:
            g = ready.pop()
            order.append(g)
            for h in consumers.get(g.output, ()):
                pending[h.gid] -= 1
                if pending[h.gid] == 0:
                    ready.append(h)
        if len(order) != len(self._gates):
            stuck = next(g for g in self._gates if pending[g.gid] > 0)
            # walk unresolved deps until a gate repeats; its output is cyclic
            seen: set[int] = set()
            g = stuck
            while g.gid not in seen:
                seen.add(g.gid)
                g = next(
                    driver[n]
                    for n in g.inputs
                    if n in driver and pending[driver[n].gid] > 0
                )
            raise CombinationalCycle(f"net {g.output} lies on a cycle")
        self._topo = order

    def evaluate(self, assignment: Mapping[str, int]) -> dict[str, int]:
        self.validate()
        names = {name for name, _ in self._inputs}
        for key in assignment:
            if key not in names:
                raise UnknownPort(f"no input port {key!r}")
        values: dict[int, int] = {}
        for name, sig in self._inputs:
            if name not in assignment:
                raise MissingAssignment(name)
            v = assignment[name]
            _check_level(v, sig, f"input {name!r}")
            values[self._input_net[name]] = v
        assert self._topo is not None
        for g in self._topo:
            values[g.output] = _EVAL[g.kind](
                tuple(values[n] for n in g.inputs), g.level
            )
        return {name: values[self._out_net[name]] for name, _ in self._outputs}

    def truth_table(self) -> TruthTable:
        self.validate()
        states = 1
        for _, sig in self._inputs:
            states *= sig.levels
        if states > MAX_TABLE_STATES:
            raise StateSpaceTooLarge(f"{states} input states")
        names = [name for name, _ in self._inputs]
        rows = []
        # first-declared port is the slowest-varying index
        for combo in itertools.product(*(range(s.levels) for _, s in self._inputs)):
            out = self.evaluate(dict(zip(names, combo)))
            rows.append((combo, tuple(out[name] for name, _ in self._outputs)))
        return TruthTable(self._inputs, self._outputs, tuple(rows))

    def metrics(self, costs: Mapping[GateKind, int] | None = None) -> Metrics:
        self.validate()
        table = DEFAULT_COST_TABLE if costs is None else costs
        counted = [g for g in self._gates if g.kind not in CONST_KINDS]
        total = 0
        for g in counted:
            if g.kind not in table:
                raise MissingCostEntry(g.kind.value)
            total += table[g.kind]
        # depth: gate hops on the longest input->output path
        net_depth: dict[int, int] = {n: 0 for n in self._input_net.values()}
        assert self._topo is not None
        for g in self._topo:
            if g.kind in CONST_KINDS:
                net_depth[g.output] = 0
            else:
                net_depth[g.output] = 1 + max(
                    (net_depth[n] for n in g.inputs), default=0
                )
        depth = max((net_depth[self._out_net[n]] for n, _ in self._outputs), default=0)
        tally: dict[str, int] = {}
        for g in self._gates:
            tally[g.kind.value] = tally.get(g.kind.value, 0) + 1
        kind_counts = tuple(sorted(tally.items()))
        return Metrics(len(counted), depth, total, kind_counts)

    def to_json(self) -> str:
        doc = {
            "inputs": [{"name": n, "type": s.value} for n, s in self._inputs],
            "outputs": [
                {"name": n, "type": s.value, "net": self._out_net.get(n)}
                for n, s in self._outputs
            ],
            "gates": [
                {
                    "id": g.gid,
                    "kind": g.kind.value,
                    "inputs": list(g.inputs),
                    "output": g.output,
                    **({"level": g.level} if g.kind is GateKind.QCONST else {}),
                }
                for g in self._gates
            ],
        }
        return json.dumps(doc, indent=2)


def from_json(text: str) -> Netlist:
    """Import a netlist document. Gates may appear in any order; input port i
    is net i by convention."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetlistJsonError(f"bad JSON: {exc}") from exc
    try:
        inputs = [(p["name"], SignalType(p["type"])) for p in doc["inputs"]]
        outputs = [(p["name"], SignalType(p["type"])) for p in doc["outputs"]]
        gate_rows = [
            (
                int(g["id"]),
                GateKind(g["kind"]),
                tuple(int(n) for n in g["inputs"]),
                int(g["output"]),
                g.get("level"),
            )
            for g in doc["gates"]
        ]
        out_nets = {p["name"]: p["net"] for p in doc["outputs"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise NetlistJsonError(f"malformed netlist document: {exc}") from exc
    nl = Netlist(inputs, outputs)
    if len({gid for gid, *_ in gate_rows}) != len(gate_rows):
        raise NetlistJsonError("duplicate gate id")
    # pass 1: register every gate output net so order does not matter
    for gid, kind, ins, out, level in gate_rows:
        if out in nl._net_type:
            raise NetlistJsonError(f"net {out} has two drivers")
        nl._net_type[out] = GATE_SIGNATURES[kind][1]
    # pass 2: wire and type-check (a self-loop survives to validate() below,
    # which reports it as a cycle)
    for gid, kind, ins, out, level in gate_rows:
        nl._install_gate(gid, kind, ins, out, level)
        nl._next_net = max(nl._next_net, out + 1)
    for name, net in out_nets.items():
        if net is None:
            raise UndrivenOutput(name)
        nl.connect_output(name, int(net))
    nl.validate()
    return nl
