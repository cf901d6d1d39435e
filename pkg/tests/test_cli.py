import io
import json
import subprocess
import sys

import pydot
import pytest

from archslice.cli import run


@pytest.fixture
def gas_file(tmp_path, gas_text):
    path = tmp_path / "gas.wrt"
    path.write_text(gas_text, encoding="utf-8")
    return path


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_slice_backward_golden(gas_file, fixture_text):
    code, out, err = call("slice", "--backward", "--instance", "cashier",
                          "--elements", "Customer1,Customer2,Topump", gas_file)
    assert (code, err) == (0, "")
    assert out == fixture_text("gas_station_backward.wrt")


def test_slice_default_elements(gas_file):
    explicit = call("slice", "--forward", "--instance", "cashier",
                    "--elements", "Customer1,Customer2,Topump", gas_file)
    default = call("slice", "--forward", "--instance", "cashier", gas_file)
    assert explicit == default
    assert default[0] == 0


def test_slice_json(gas_file):
    code, out, err = call("slice", "--forward", "--instance", "cashier", "-f", "json", gas_file)
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert len(doc["slice_vertices"]) == 14
    assert doc["direction"] == "forward"


def test_graph_dot(gas_file):
    code, out, err = call("graph", "--format", "dot", gas_file)
    assert (code, err) == (0, "")
    (g,) = pydot.graph_from_dot_data(out)
    assert len(g.get_subgraphs()) == 9


def test_graph_json(gas_file):
    code, out, _ = call("graph", "--format", "json", gas_file)
    assert code == 0
    assert len(json.loads(out)["vertices"]) == 20


def test_parse_text_and_json(gas_file, gas_text):
    code, out, _ = call("parse", gas_file)
    assert code == 0 and out.startswith("Configuration GasStation\n")
    code, out, _ = call("parse", "--format", "json", gas_file)
    doc = json.loads(out)
    assert [c["name"] for c in doc["components"]] == ["Customer", "Cashier", "Pump"]
    assert len(doc["attachments"]) == 10


def test_output_file(gas_file, tmp_path):
    target = tmp_path / "out.dot"
    code, out, err = call("graph", gas_file, "-o", target)
    assert (code, out, err) == (0, "", "")
    assert target.read_text().startswith('digraph "GasStation"')


def test_unknown_instance(gas_file):
    code, out, err = call("slice", "--backward", "--instance", "ghost", "--elements", "X", gas_file)
    assert code == 1 and out == ""
    assert "unknown instance ghost" in err


def test_unknown_element(gas_file):
    code, _, err = call("slice", "--backward", "--instance", "cashier", "--elements", "Gas",
                        gas_file)
    assert code == 1 and "unknown element Gas" in err


def test_parse_error_located(tmp_path):
    bad = tmp_path / "bad.wrt"
    bad.write_text("Configuration X\nComponent\n")
    code, _, err = call("parse", bad)
    assert code == 1
    assert err.startswith(f"{bad}:3:1: expected identifier")


def test_validation_error_located(tmp_path):
    bad = tmp_path / "bad.wrt"
    bad.write_text("Configuration X\nInstances\n  a: Nope\nAttachments\nEnd X.\n")
    code, _, err = call("parse", bad)
    assert code == 1
    assert err.startswith(f"{bad}:3:3: instance 'a' has undeclared type 'Nope'")


@pytest.mark.parametrize("argv", [
    ["graph", "--format", "text", "IN"],
    ["slice", "--instance", "cashier", "IN"],
    ["slice", "--backward", "IN"],
    ["frobnicate", "IN"],
    [],
])
def test_usage_errors(gas_file, argv):
    code, out, err = call(*[gas_file if a == "IN" else a for a in argv])
    assert code == 2 and out == "" and err


def test_missing_file(tmp_path):
    code, _, err = call("parse", tmp_path / "absent.wrt")
    assert code == 2 and "absent.wrt" in err


def test_console_entry_point(gas_file):
    proc = subprocess.run([sys.executable, "-m", "archslice.cli", "graph", str(gas_file)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stderr == ""
    assert proc.stdout.count(" -> ") == 25
