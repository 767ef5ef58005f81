import json

from nilmoduli import QQ, PolyRing, parse_polynomial
from nilmoduli.cli import main


def test_char2_rejected(capsys):
    assert main(["construct", "--space", "A", "--r", "1", "--char", "2"]) == 2


def test_composite_char_rejected():
    assert main(["invariants", "--space", "A", "--r", "1", "--char", "9"]) == 2


def test_r_zero_rejected():
    assert main(["construct", "--space", "A", "--r", "0"]) == 2


def test_unknown_flag_rejected():
    assert main(["construct", "--space", "A", "--r", "1", "--frobnicate"]) == 2


def test_verify_a1_exit_zero(capsys):
    assert main(["verify", "--space", "A", "--r", "1", "--char", "3"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out


def test_json_determinism(tmp_path):
    p1 = tmp_path / "r1.json"
    p2 = tmp_path / "r2.json"
    assert main(["verify", "--space", "A", "--r", "1", "--char", "0", "--json", str(p1)]) == 0
    assert main(["verify", "--space", "A", "--r", "1", "--char", "0", "--json", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    payload = json.loads(p1.read_text())
    for key in ("space", "r", "characteristic", "dimension", "multiplicity",
                "hilbert_numerator", "betti", "verdicts", "overall", "lines"):
        assert key in payload
    assert set(payload["verdicts"]) == {
        "cm", "gorenstein", "type", "components", "intersection_equal", "flat_criterion"
    }


def test_invariants_json(tmp_path):
    p = tmp_path / "inv.json"
    assert main(["invariants", "--space", "A", "--r", "2", "--char", "5", "--json", str(p)]) == 0
    payload = json.loads(p.read_text())
    assert payload["dimension"] == 3
    assert payload["multiplicity"] == 4
    assert payload["hilbert_numerator"] == [1, 3]


def test_export_roundtrip(tmp_path):
    out = tmp_path / "a2.txt"
    assert main(["export", "--space", "A", "--r", "2", "--char", "0", "--out", str(out)]) == 0
    text = out.read_text()
    ring = PolyRing(QQ, ("a1", "b1", "c1", "a2", "b2", "c2"))
    polys = [parse_polynomial(ring, line) for line in text.splitlines() if line.strip()]
    assert len(polys) == 6
    a1, b1, c1 = ring.var("a1"), ring.var("b1"), ring.var("c1")
    assert polys[0] == a1 * a1 - b1 * c1


def test_export_requires_out():
    assert main(["export", "--space", "A", "--r", "1"]) == 2


def test_betti_command(tmp_path):
    p = tmp_path / "b.json"
    assert main(["betti", "--space", "B0", "--r", "1", "--char", "5", "--json", str(p)]) == 0
    payload = json.loads(p.read_text())
    assert payload["betti"]["1"]["2"] == 5
    assert payload["certified"] is True
    assert main(["betti", "--space", "B", "--r", "1"]) == 2


def test_predict_command(tmp_path):
    p = tmp_path / "p.json"
    assert main(["predict", "--space", "A", "--r", "2", "--json", str(p)]) == 0
    payload = json.loads(p.read_text())
    assert payload["betti"]["3"]["4"] == 3


def test_flatness_needs_odd_prime():
    assert main(["flatness", "--r", "1"]) == 2
    assert main(["flatness", "--r", "1", "--char", "2"]) == 2
