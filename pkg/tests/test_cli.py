"""CLI behavior: exit codes, stream discipline, formats, determinism."""

import io
import json

from flowerlab.cli import run
from flowerlab.flowerpoly import flower_poly
from flowerlab.ratpoly import poly_from_obj


def call(argv, env=None, monkeypatch=None):
    if env and monkeypatch:
        for k, v in env.items():
            monkeypatch.setenv(k, v)
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_pn_json_round_trips():
    code, out, err = call(["pn", "--n", "3"])
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 3 and obj["provenance"] == {"pn": "recursive"}
    poly, names = poly_from_obj(obj["pn"])
    assert poly == flower_poly(3)
    assert names == ["x1", "x2", "x3"]
    assert obj["cn"] is None


def test_pn_text():
    code, out, _ = call(["pn", "--n", "3", "--format", "text"])
    assert code == 0
    assert out.strip() == "-2*x1*x2*x3+x1^2+x2^2+x3^2-1"


def test_pn_product_route():
    code, out, _ = call(["pn", "--n", "4", "--route", "product"])
    assert code == 0
    obj = json.loads(out)
    assert obj["provenance"] == {"pn": "product"}
    poly, _ = poly_from_obj(obj["pn"])
    assert poly == flower_poly(4)
    code, _, err = call(["pn", "--n", "6", "--route", "product"])
    assert code == 2  # product route is gated to n <= 5


def test_cn_includes_square():
    code, out, _ = call(["cn", "--n", "2"])
    obj = json.loads(out)
    assert obj["provenance"]["cn"] == "definitional"
    cn, _ = poly_from_obj(obj["cn"])
    pn = flower_poly(2)
    assert cn == pn * pn


def test_size_ceiling_is_usage_error():
    code, out, err = call(["pn", "--n", "99"])
    assert code == 2
    assert "ceiling" in err
    assert out == ""
    # ceiling override is honored for the gate
    code, _, err = call(["pn", "--n", "8", "--max-n", "5"])
    assert code == 2


def test_verify_all_green():
    code, out, _ = call(["verify", "--n", "4", "--all"])
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("ok ") for line in lines)
    names = {line.split()[1] for line in lines}
    assert names == {"square", "symmetry", "specialization", "general-recursion", "monic"}


def test_verify_json_format():
    code, out, _ = call(["verify", "--n", "3", "--square", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload == [{"check": "square", "n": 3, "ok": True, "detail": ""}]


def test_verify_skips_infeasible_checks():
    code, out, err = call(["verify", "--n", "6", "--square"])
    assert code == 0
    assert "skipped" in err
    assert out.strip() == ""
    # the asymmetric two-variable case is skipped rather than reported failing
    code, out, err = call(["verify", "--n", "2", "--all"])
    assert code == 0
    assert "symmetry" in err


def test_soddy_gen_reference_params():
    code, out, _ = call(["soddy-gen", "--params", "1", "2", "4", "5"])
    assert code == 0
    obj = json.loads(out)
    assert obj["cosines"] == ["-3/5", "-9/41", "-133/205"]
    assert obj["constraints"]["all_hold"] is True
    assert obj["solve"]["valid_flowers"] == []
    assert obj["integer_scaled"] is None
    assert obj["sines"] == ["4/5", "40/41", "156/205"]


def test_soddy_gen_solvable_params():
    code, out, _ = call(["soddy-gen", "--params", "1", "2", "2", "3"])
    obj = json.loads(out)
    assert obj["solve"]["valid_flowers"] == [{"center": "1", "petals": ["14", "6", "21/5"]}]
    assert obj["integer_scaled"]["scale"] == 5
    code, _, err = call(["soddy-gen", "--params", "0", "2", "2", "3"])
    assert code == 2


def test_soddy_scan_formats_and_workers(monkeypatch):
    code, out, err = call(["soddy-scan", "--bound", "3"])
    assert code == 0
    obj = json.loads(out)
    assert obj["summary"]["total"] == 81
    assert "scan summary" in err
    code, csv_out, _ = call(["soddy-scan", "--bound", "3", "--format", "csv"])
    lines = csv_out.strip().splitlines()
    assert lines[0].startswith("m1,n1,m2,n2,")
    assert len(lines) == 82
    monkeypatch.setenv("FLOWERLAB_THREADS", "2")
    code, out2, _ = call(["soddy-scan", "--bound", "3"])
    assert out2 == out


def test_graham_output():
    code, out, _ = call(["graham", "--bound", "6"])
    assert code == 0
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert all({"x", "m", "d1", "d2", "curvatures", "degenerate"} <= set(r) for r in records)
    code, csv_out, _ = call(["graham", "--bound", "6", "--format", "csv"])
    assert csv_out.splitlines()[0] == "x,m,d1,d2,b1,b2,b3,b4,degenerate"


def test_pyth_json_lines():
    code, out, _ = call(["pyth", "--beta", "1", "--bound", "5"])
    assert code == 0
    sols = [json.loads(line) for line in out.strip().splitlines()]
    assert [(s["x"], s["y"], s["z"]) for s in sols] == [(3, 4, 5), (4, 3, 5)]
    assert all(s["witnesses"] for s in sols)
    code, out, _ = call(["pyth", "--beta", "1", "--bound", "5", "--brute-force"])
    sols = [json.loads(line) for line in out.strip().splitlines()]
    assert [(s["x"], s["y"], s["z"]) for s in sols] == [(3, 4, 5), (4, 3, 5)]
    code, _, err = call(["pyth", "--beta", "12", "--bound", "5"])
    assert code == 2 and "square-free" in err


def test_flower_check_valid_and_invalid():
    code, out, _ = call(["flower", "check", "6", "69", "46", "23"])
    assert code == 0
    report = json.loads(out)
    assert report["valid"] is True and report["variety_residual"] == "0"
    code, out, _ = call(["flower", "check", "1", "1", "1", "1"])
    assert code == 1
    assert json.loads(out)["valid"] is False
    code, out, _ = call(["flower", "check", "1", "23/2", "23/3", "23/6"])
    assert code == 0


def test_flower_check_usage_errors():
    code, _, err = call(["flower", "check", "1", "2", "3"])
    assert code == 2  # needs center plus three petals
    code, _, err = call(["flower", "check", "1", "2", "x", "4"])
    assert code == 2
    code, _, err = call(["flower", "check", "1", "-2", "3", "4"])
    assert code == 2


def test_flower_render_to_file(tmp_path):
    target = tmp_path / "flower.svg"
    code, out, _ = call(["flower", "render", "6", "69", "46", "23", "--out", str(target)])
    assert code == 0
    svg = target.read_text()
    assert svg.count("<circle") == 4
    code, out, _ = call(["flower", "render", "6", "69", "46", "23", "--out", "-"])
    assert out == svg
    code, _, err = call(["flower", "render", "1", "1", "1", "1", "--out", "-"])
    assert code == 2


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "p3.json"
    code, out, _ = call(["pn", "--n", "3", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["n"] == 3


def test_discrepancy_command():
    code, out, _ = call(["discrepancy"])
    assert code == 0
    obj = json.loads(out)
    assert obj["radius_example"]["internal_agreement"]["all"] is True
    assert obj["radius_expansion"]["coefficients"]["g2"]["match"] is False


def test_unknown_command_is_usage_error(capsys):
    code = run(["frobnicate"], io.StringIO(), io.StringIO())
    assert code == 2
    capsys.readouterr()  # swallow argparse's stderr chatter


def test_determinism():
    a = call(["pn", "--n", "4"])
    b = call(["pn", "--n", "4"])
    assert a == b
    a = call(["graham", "--bound", "8"])
    b = call(["graham", "--bound", "8"])
    assert a == b
