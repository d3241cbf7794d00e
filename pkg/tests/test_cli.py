from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from artifact import cli, sinh_gordon, terp
from artifact.cli import DescriptorError, dump_descriptor, parse_descriptor
from artifact.verdict import Verdict

DOCS = Path(__file__).resolve().parents[1] / "docs" / "descriptors"
GOOD = ["rank1_terp.json", "jordan_terp.json", "stokes_a2.json", "sinh_small.json"]


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", GOOD)
def test_check_examples(capsys, name):
    code, out, err = run(capsys, "check", DOCS / name, "--json")
    assert code == 0 and not err
    rep = json.loads(out)
    assert rep["kind"] == json.loads((DOCS / name).read_text())["kind"]


def test_check_verdicts(capsys):
    rep = json.loads(run(capsys, "check", DOCS / "rank1_terp.json", "--json")[1])
    assert rep["polarized-pure"] == "true" and rep["spectrum"] == [[0.0, 0.0]]
    rep = json.loads(run(capsys, "check", DOCS / "jordan_terp.json", "--json")[1])
    assert rep["regular-singular-pmhs"] == rep["polarized-pure"] == "true"
    rep = json.loads(run(capsys, "check", DOCS / "stokes_a2.json", "--json")[1])
    assert rep["monodromy"] == [[0, 1], [-1, 1]] and rep["hypothesis"] is True


def test_bad_row_reports_line(capsys):
    code, out, err = run(capsys, "check", DOCS / "bad_row.json")
    assert code == 1 and not out
    assert "bad_row.json:8: payload.S[1]: row has length 3, expected 2" in err


@pytest.mark.parametrize("text, line, fragment", [
    ('{"kind": "terp",\n "payload": {\n}', 3, "invalid JSON"),
    ('{"kind": "nope", "payload": {}}', 1, "kind must be one of"),
    ('{\n"kind": "stokes",\n"payload": {"w": 0, "u": [0, 1], "xi": 1,\n"T": [[1, 2], [1, 1]]}}', 3, "upper triangular"),
    ('{"kind": "ade",\n "payload": {"type": "A",\n  "rank": 0}}', 3, "unsupported rank"),
    ('{"kind": "sinh_gordon",\n "payload": {\n  "amplitude": true}}', 3, "expected a number"),
    ('{"kind": "sinh_gordon", "payload": {"amplitude": 1,\n "r_min": 50.0}}', 1, "r_min"),
    ('{"kind": "terp", "payload": {"w": 0, "Ms": [[1]], "S": [[1]],\n "F": {"x": [[1]]}}}', 2, "not an integer"),
    ('[1, 2]', 1, "JSON object"),
])
def test_descriptor_errors(text, line, fragment):
    with pytest.raises(DescriptorError) as info:
        parse_descriptor(text, "d.json")
    assert info.value.line == line and fragment in str(info.value)
    assert str(info.value).startswith(f"d.json:{line}: ")


@pytest.mark.parametrize("name", GOOD)
def test_descriptor_round_trip(name):
    desc = cli.load_descriptor(str(DOCS / name))
    text = dump_descriptor(desc)
    again = parse_descriptor(text)
    assert again == desc and dump_descriptor(again) == text


def test_output_is_byte_deterministic_across_processes(tmp_path):
    outs = []
    for i in range(2):
        target = tmp_path / f"out{i}.json"
        subprocess.run([sys.executable, "-m", "artifact.cli", "check", str(DOCS / "jordan_terp.json"),
                        "--json", "--out", str(target)], check=True)
        outs.append(target.read_bytes())
    assert outs[0] == outs[1] and outs[0].endswith(b"\n")


def test_out_file_and_text_mode(capsys, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "check", DOCS / "rank1_terp.json", "--out", target)
    assert code == 0 and not out
    assert "polarized-pure: true" in target.read_text()


def test_orbit_scan(capsys):
    code, out, _ = run(capsys, "orbit-scan", DOCS / "jordan_terp.json", "--points", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "r,pure,polarized,min_eig_h,spectrum_unchanged"
    assert len(lines) == 7 and lines[-1].startswith("# direction=to_zero detected=true")
    code, _, err = run(capsys, "orbit-scan", DOCS / "stokes_a2.json")
    assert code == 1 and "terp descriptor" in err


def test_ade_commands(capsys):
    assert run(capsys, "ade", "--type", "A", "--rank", "3", "--count")[:2] == (0, "16\n")
    rep = json.loads(run(capsys, "ade", "--type", "D", "--rank", "4", "--count", "--json")[1])
    assert rep == {"type": "D4", "count": 162, "documented": 162}
    code, out, _ = run(capsys, "ade", "--type", "A", "--rank", "2", "--emit-stokes")
    assert code == 0 and len(out.splitlines()) == 4
    code, _, err = run(capsys, "ade", "--type", "E", "--rank", "8", "--count", "--budget", "100")
    assert code == 1 and "exceeded" in err
    code, _, err = run(capsys, "ade", "--type", "D", "--rank", "3", "--count")
    assert code == 1


def test_sinh_commands(capsys):
    code, out, _ = run(capsys, "sinh", "--amplitude", "10", "--rmin", "0.01")
    assert code == 0 and out.splitlines()[-1] == "# status=singular singularities=3"
    code, out, _ = run(capsys, "sinh", "--sweep", "0:10:3", "--rmin", "0.01")
    assert out.splitlines()[1:] == ["0.0,smooth,0,none", out.splitlines()[2], out.splitlines()[3]]
    assert out.splitlines()[3].startswith("10.0,singular,3,")
    rep = json.loads(run(capsys, "sinh", "--amplitude", "10", "--direction", "outward", "--rmax", "40",
                         "--spacing", "--json")[1])
    assert len(rep["radii"]) == 15
    assert run(capsys, "sinh", "--sweep", "bad")[0] == 1
    assert run(capsys, "sinh", "--rmin", "5", "--rmax", "1")[0] == 1
    assert run(capsys, "sinh", "--amplitude", "10", "--rmin", "0.01", "--spacing")[0] == 1


def test_exit_two_on_path_disagreement(capsys, monkeypatch):
    def boom(t):
        raise terp.DualPathDisagreement("paths disagree")
    monkeypatch.setattr(terp, "polarization_report", boom)
    code, out, _ = run(capsys, "check", DOCS / "rank1_terp.json", "--json")
    assert code == 2 and json.loads(out)["polarized-pure"] == "indeterminate"


def test_exit_two_on_indeterminate(capsys, monkeypatch):
    real = terp.polarization_report

    def undecided(t):
        rep = real(t)
        return terp.PolarizationReport(Verdict.INDETERMINATE, rep.hermitian, Verdict.INDETERMINATE, rep.min_eig_h)
    monkeypatch.setattr(terp, "polarization_report", undecided)
    assert run(capsys, "check", DOCS / "rank1_terp.json")[0] == 2


def test_exit_two_on_solver_error(capsys, monkeypatch):
    def fail(a, cfg=None, **kw):
        raise sinh_gordon.SolverError("step size underflow (last radius 0.5)")
    monkeypatch.setattr(sinh_gordon, "integrate", fail)
    code, _, err = run(capsys, "check", DOCS / "sinh_small.json")
    assert code == 2 and "last radius" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "absent.json")[0] == 1


def test_stokes_identity_descriptor(capsys, tmp_path):
    path = tmp_path / "id.json"
    path.write_text(json.dumps({"kind": "stokes", "payload": {"w": 0, "u": [0, 1], "xi": 1, "T": [[1, 0], [0, 1]]}}))
    rep = json.loads(run(capsys, "check", path, "--json")[1])
    assert rep["hypothesis"] is True and rep["monodromy"] == [[1, 0], [0, 1]]


def test_emit_stokes_includes_both_signs(capsys):
    out = run(capsys, "ade", "--type", "A", "--rank", "2", "--emit-stokes")[1]
    assert '"[[1, -1], [0, 1]]"' in out and '"[[1, 1], [0, 1]]"' in out


def test_zero_amplitude_and_monotone_sweep(capsys):
    code, out, _ = run(capsys, "sinh", "--amplitude", "0")
    assert code == 0 and out.splitlines()[-1] == "# status=smooth singularities=0"
    assert all(line.split(",")[1] == "0.0" for line in out.splitlines()[1:-1])
    rows = run(capsys, "sinh", "--sweep", "0:10:50")[1].splitlines()[1:]
    status = [r.split(",")[1] for r in rows]
    flip = status.index("singular")
    assert flip > 0 and all(s == "smooth" for s in status[:flip]) and all(s == "singular" for s in status[flip:])
