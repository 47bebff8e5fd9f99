"""CLI behavior: output formats, exit codes, config handling."""

import dataclasses
import json
import subprocess
import sys

import pytest

from mvq import circuits
from mvq.cli import main
from mvq.netlist import GateKind, Netlist, SignalType

B = SignalType.BIN

A2_PLA = """\
.i 4
.o 1
0001 1
0011 1
0100 1
0110 1
1001 1
1011 1
1100 1
1110 1
.e
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_grid(capsys):
    code, out, _ = run_cli(capsys, "table", "mod4-add")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x\\y | 0 1 2 3"
    assert lines[2] == "  0 | 0 1 2 3"
    assert lines[3] == "  1 | 1 2 3 0"
    assert lines[5] == "  3 | 3 0 1 2"


def test_table_q2b_listing(capsys):
    code, out, _ = run_cli(capsys, "table", "q2b")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["q", "x1", "x2"]
    assert len(lines) == 5
    assert lines[3].split() == ["2", "1", "0"]


def test_table_bits_view(capsys):
    code, out, _ = run_cli(capsys, "table", "mod4-add", "--bits")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["x1", "x2", "y1", "y2", "a1", "a2"]
    assert len(lines) == 17
    # 2+3: x=(1,0) y=(1,1) -> a=(0,1)
    assert lines[1 + 0b1011].split() == ["1", "0", "1", "1", "0", "1"]


def test_table_unknown_circuit(capsys):
    code, _, err = run_cli(capsys, "table", "bogus")
    assert code == 2
    assert "unknown circuit" in err


def test_verify_all(capsys):
    code, out, _ = run_cli(capsys, "verify", "all")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 11
    assert lines[0] == "q2b: PASS (4 vectors)"
    assert lines[-1] == "10/10 circuits PASS"


def test_verify_single(capsys):
    code, out, _ = run_cli(capsys, "verify", "gf4-mul-mux")
    assert code == 0
    assert out == "gf4-mul-mux: PASS (16 vectors)\n"


def test_verify_unknown(capsys):
    code, _, err = run_cli(capsys, "verify", "nope")
    assert code == 2


def test_verify_corrupted_netlist(capsys, monkeypatch):
    def broken():
        n = Netlist([("x1", B), ("x2", B)], [("n1", B), ("n2", B)])
        n.connect_output("n1", n.input_net("x1"))  # wrong: drops the xor
        n.connect_output("n2", n.input_net("x2"))
        return n

    info = circuits.REGISTRY["mod4-neg"]
    monkeypatch.setitem(
        circuits.REGISTRY, "mod4-neg", dataclasses.replace(info, build=broken)
    )
    code, out, _ = run_cli(capsys, "verify", "mod4-neg")
    assert code == 1
    assert "FAIL" in out and "got" in out
    code, out, _ = run_cli(capsys, "verify", "all")
    assert code == 1
    assert "9/10 circuits PASS" in out


def test_metrics_adder(capsys):
    code, out, _ = run_cli(capsys, "metrics", "mod4-add")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "circuit: mod4-add (mod-4 adder)"
    assert "gates: 4" in lines
    assert "depth: 2" in lines
    assert "transistor estimate: 36" in lines
    assert "kinds: and2=1 xor2=3" in lines
    assert any(ln.startswith("published transistors: 40 (") for ln in lines)


def test_metrics_mux_multiplier(capsys):
    code, out, _ = run_cli(capsys, "metrics", "gf4-mul-mux")
    assert code == 0
    assert "qconst=4 qmux4=3" in out
    assert "gates: 3" in out
    assert "published transistors: 72" in out


def test_metrics_negator_and_doubler(capsys):
    code, out, _ = run_cli(capsys, "metrics", "mod4-neg")
    assert code == 0 and "gates: 1" in out
    code, out, _ = run_cli(capsys, "metrics", "mod4-dbl")
    assert code == 0 and "gates: 0" in out and "depth: 0" in out
    assert "published transistors" not in out


def test_metrics_custom_cost_table(capsys, tmp_path):
    costs = {k.value: 1 for k in GateKind}
    cost_path = tmp_path / "costs.json"
    cost_path.write_text(json.dumps(costs))
    cfg = tmp_path / "cfg"
    cfg.write_text(f"cost_table={cost_path}\n")
    code, out, _ = run_cli(
        capsys, "metrics", "mod4-add", "--config", str(cfg)
    )
    assert code == 0
    assert "transistor estimate: 4" in out


def test_metrics_missing_cost_entry(capsys, tmp_path):
    cost_path = tmp_path / "costs.json"
    cost_path.write_text(json.dumps({"and2": 6}))
    cfg = tmp_path / "cfg"
    cfg.write_text(f"cost_table={cost_path}\n")
    code, _, err = run_cli(
        capsys, "metrics", "mod4-add", "--config", str(cfg)
    )
    assert code == 2
    assert "no entry" in err


def test_minimize(capsys, tmp_path):
    pla = tmp_path / "a2.pla"
    pla.write_text(A2_PLA)
    code, out, _ = run_cli(capsys, "minimize", str(pla))
    assert code == 0
    assert out == "x2 y2' + x2' y2\n"


def test_minimize_xor(capsys, tmp_path):
    pla = tmp_path / "a2.pla"
    pla.write_text(A2_PLA)
    code, out, _ = run_cli(capsys, "minimize", str(pla), "--xor")
    assert code == 0
    assert out.splitlines() == [
        "x2 y2' + x2' y2",
        "x2 ^ y2",
        "two-input gates: 1",
    ]


def test_minimize_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(".i 1\n.o 1\n1 1\n.e\n"))
    code, out, _ = run_cli(capsys, "minimize", "-")
    assert code == 0
    assert out == "x1\n"


def test_minimize_parse_error(capsys, tmp_path):
    pla = tmp_path / "bad.pla"
    pla.write_text(".i 2\n.o 1\n111 1\n.e\n")
    code, _, err = run_cli(capsys, "minimize", str(pla))
    assert code == 2
    assert "line 3" in err


def test_minimize_multi_output_rejected(capsys, tmp_path):
    pla = tmp_path / "multi.pla"
    pla.write_text(".i 2\n.o 2\n11 10\n.e\n")
    code, _, err = run_cli(capsys, "minimize", str(pla))
    assert code == 2
    assert "single-output" in err


def test_minimize_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "minimize", str(tmp_path / "nope.pla"))
    assert code == 3


def test_audit(capsys):
    code, out, _ = run_cli(capsys, "audit")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 16  # header + 14 rows + summary
    assert lines[-1] == "14/14 published forms equivalent to their tables"
    a1 = next(ln for ln in lines if ln.startswith("mod4-add a1"))
    fields = a1.split()
    assert fields[2] == "yes"
    assert fields[4] == "3"  # two-input gates of the published a1 form
    d2 = next(ln for ln in lines if ln.startswith("mod4-dbl d2"))
    assert " 0" in d2


def test_sim_csv_stdout(capsys):
    code, out, _ = run_cli(capsys, "sim", "mod4-add", "--csv", "-")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 17
    assert lines[0] == "time,x1,x2,y1,y2,a1,a2"


def test_sim_default_stdout(capsys):
    code, out, _ = run_cli(capsys, "sim", "q2b")
    assert code == 0
    assert out.splitlines()[0] == "time,q,x1,x2"


def test_sim_writes_files(capsys, tmp_path, vcd_check):
    csv_path = tmp_path / "add.csv"
    vcd_path = tmp_path / "add.vcd"
    code, out, _ = run_cli(
        capsys, "sim", "mod4-add", "--csv", str(csv_path), "--vcd", str(vcd_path)
    )
    assert code == 0 and out == ""
    assert len(csv_path.read_text().splitlines()) == 17
    widths, times = vcd_check(vcd_path.read_text())
    assert len(widths) == 6
    assert all(w == 1 for w in widths.values())


def test_sim_vcd_q2b_widths(capsys, tmp_path, vcd_check):
    vcd_path = tmp_path / "q2b.vcd"
    code, _, _ = run_cli(capsys, "sim", "q2b", "--vcd", str(vcd_path))
    assert code == 0
    widths, _ = vcd_check(vcd_path.read_text())
    assert sorted(widths.values()) == [1, 1, 2]


def test_sim_volts(capsys):
    code, out, _ = run_cli(capsys, "sim", "gf4-mul-mux", "--csv", "-", "--volts")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "time,x,y,q"
    assert lines[1] == "0,0.0,0.0,0.0"
    assert lines[-1] == "15,3.3,3.3,2.2"  # 3*3 = 2 in GF(4)


def test_sim_out_dir_config(capsys, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text(f"out_dir={tmp_path}\n")
    code, _, _ = run_cli(
        capsys, "sim", "q2b", "--csv", "q2b.csv", "--config", str(cfg)
    )
    assert code == 0
    assert (tmp_path / "q2b.csv").exists()


def test_sim_write_failure(capsys, tmp_path):
    dest = tmp_path / "no" / "such" / "dir" / "x.csv"
    code, _, err = run_cli(capsys, "sim", "q2b", "--csv", str(dest))
    assert code == 3
    assert "cannot write" in err


def test_sim_voltage_map_config(capsys, tmp_path):
    vmap_path = tmp_path / "v.json"
    vmap_path.write_text(
        json.dumps({"quat": [0.0, 0.5, 1.0, 1.5], "bin": [0.0, 1.5]})
    )
    cfg = tmp_path / "cfg"
    cfg.write_text(f"voltage_map={vmap_path}\n")
    code, out, _ = run_cli(
        capsys, "sim", "q2b", "--csv", "-", "--volts", "--config", str(cfg)
    )
    assert code == 0
    assert out.splitlines()[4] == "3,1.5,1.5,1.5"


def test_compare_equal(capsys):
    code, out, _ = run_cli(capsys, "compare", "gf4-mul-mux", "gf4-mul-sop")
    assert code == 0
    assert out == "EQUAL (16 vectors)\n"


def test_compare_reflexive(capsys):
    code, out, _ = run_cli(capsys, "compare", "mod4-add", "mod4-add")
    assert code == 0
    assert "EQUAL" in out


def test_compare_differ(capsys):
    code, out, _ = run_cli(capsys, "compare", "mod4-mul", "gf4-mul-sop")
    assert code == 1
    assert out == "DIFFER at x=2 y=2: 0 vs 3\n"


def test_compare_shape_mismatch(capsys):
    code, _, err = run_cli(capsys, "compare", "q2b", "mod4-add")
    assert code == 2
    assert "port shapes differ" in err


def test_compare_unknown(capsys):
    code, _, _ = run_cli(capsys, "compare", "mod4-add", "nope")
    assert code == 2


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text("volts=3\n")
    code, _, err = run_cli(capsys, "verify", "all", "--config", str(cfg))
    assert code == 2
    assert "unknown key" in err


def test_config_bad_line(capsys, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text("just some text\n")
    code, _, err = run_cli(capsys, "verify", "all", "--config", str(cfg))
    assert code == 2


def test_config_missing_file(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "verify", "all", "--config", str(tmp_path / "none")
    )
    assert code == 3


def test_config_missing_referenced_file_falls_back(capsys, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text(f"cost_table={tmp_path / 'none.json'}\n")
    code, out, err = run_cli(capsys, "metrics", "mod4-add", "--config", str(cfg))
    assert code == 0
    assert "transistor estimate: 36" in out
    assert "using defaults" in err


def test_config_comments_and_blanks(capsys, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text("# comment\n\nout_dir=.\n")
    code, _, _ = run_cli(capsys, "verify", "q2b", "--config", str(cfg))
    assert code == 0


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_outputs_are_deterministic(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, "verify", "all")
        outs.add(out)
        code, out, _ = run_cli(capsys, "audit")
        outs.add(out)
        code, out, _ = run_cli(capsys, "sim", "mod4-add", "--csv", "-")
        outs.add(out)
    assert len(outs) == 3


def test_installed_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mvq.cli", "verify", "all"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "10/10 circuits PASS" in proc.stdout
