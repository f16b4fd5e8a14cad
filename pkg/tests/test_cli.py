import json
import subprocess
import sys

import pytest

from flowcoh.cli import emit_report, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_volpoly_text(capsys):
    code, out, _ = run(capsys, "volpoly", "--l", "2", "--n", "2", "--chamber", "nice", "--format", "text")
    assert code == 0
    assert out == "-1/12 q1^4 + 1/6 q1^3 q2"


def test_betti_text(capsys):
    code, out, _ = run(capsys, "betti", "--l", "2", "--n", "2", "--chamber", "nice")
    assert code == 0
    assert out.splitlines() == ["1,2,2,2,1", "1+2t^2+2t^4+2t^6+t^8"]


def test_partition_text(capsys):
    assert run(capsys, "partition", "--l", "2", "--m", "1,1,1", "--h", "1,1")[:2] == (0, "2")


def test_volume_text(capsys):
    assert run(capsys, "volume", "--l", "2", "--n", "2", "--h", "1,2")[:2] == (0, "1/4")


def test_flowpoly_json_fields(capsys):
    code, out, _ = run(capsys, "partition", "--l", "2", "--m", "1,1,1", "--h", "1,1", "--format", "json")
    assert json.loads(out) == {"l": 2, "m": [[1, 2, 1], [1, 3, 1], [2, 3, 1]], "h": "1,1", "count": 2}
    code, out, _ = run(capsys, "volpoly", "--l", "2", "--n", "2", "--format", "json")
    assert json.loads(out)["polynomial"] == "-1/12 q1^4 + 1/6 q1^3 q2"


def test_annihilator_json(capsys):
    code, out, _ = run(capsys, "annihilator", "--l", "2", "--n", "2", "--degree", "0", "--format", "json")
    assert json.loads(out) == {"degree": 0, "basis": []}
    code, out, _ = run(capsys, "annihilator", "--l", "2", "--n", "2", "--degree", "2", "--format", "json")
    assert json.loads(out)["basis"] == ["d2^2"]


def test_pairings_text(capsys):
    code, out, _ = run(capsys, "pairings", "--l", "2", "--n", "2")
    values = [line.split(": ")[1] for line in out.splitlines()]
    assert values == ["-2", "1", "-2", "1", "2", "-1"]


def test_multiplicity_json(capsys):
    code, out, _ = run(
        capsys, "multiplicity", "--l", "1", "--lambda", "1", "--lambda", "1", "--mu", "0", "--format", "json"
    )
    assert code == 0
    assert json.loads(out) == {"multiplicity": 2, "reduced_to_partition_function": True}


def test_multiplicity_probe(capsys):
    code, out, _ = run(
        capsys, "multiplicity", "--l", "1", "--lambda", "1", "--lambda", "1", "--mu", "0", "--kmax", "3", "--format", "json"
    )
    assert json.loads(out)["probe"] == ["2", "3/2", "4/3"]


def test_close_check(capsys):
    code, out, _ = run(
        capsys, "close-check", "--l", "2", "--lambda", "1,1", "--lambda", "1,1", "--mu", "1,0", "--basis", "alpha", "--format", "json"
    )
    assert json.loads(out)["sufficiently_close"] is False


def test_verification_commands(capsys):
    code, out, _ = run(capsys, "solve-ode", "--l", "2", "--n", "2")
    assert (code, out) == (0, "-1/12 q1^4 + 1/6 q1^3 q2")
    code, out, _ = run(capsys, "verify-gen", "--l", "2", "--n", "2", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["ok"]
    assert payload["generation_check"][2] == {"degree": 2, "ann_dim": 1, "ideal_dim": 1}
    code, out, _ = run(capsys, "cross-validate", "--l", "2", "--n", "2", "--format", "json")
    payload = json.loads(out)
    assert payload["generators"] == ["z2^2", "z1^2*(z1+z2)^2"]
    assert payload["hilbert"] == [1, 2, 2, 2, 1]
    assert payload["matches_dual_algebra"] is True
    code, out, _ = run(capsys, "presentation", "--l", "2", "--n", "1", "--format", "json")
    assert json.loads(out) == {"generators": ["z2", "z1*(z1+z2)"], "hilbert": [1, 1]}


def test_custom_chamber(capsys):
    code, out, _ = run(capsys, "volpoly", "--l", "2", "--n", "2", "--chamber", "custom", "--samples", "2,1;3,1;3,2;4,1;4,3;5,1;5,2")
    assert (code, out) == (0, "1/6 q1 q2^3 - 1/12 q2^4")


@pytest.mark.parametrize(
    "argv",
    [
        ["partition", "--l", "2", "--m", "1,1", "--h", "1,1"],
        ["partition", "--l", "2", "--m", "1,1,1", "--h", "1/2,1"],
        ["volume", "--l", "2", "--n", "1", "--h", "0,1"],
        ["volpoly", "--l", "2", "--n", "2", "--chamber", "custom", "--samples", "1,2;2,1;3,1;1,3;3,2;2,3;5,1"],
        ["multiplicity", "--l", "2", "--lambda", "1,x", "--mu", "0,0"],
        ["multiplicity", "--l", "2", "--lambda", "1,1", "--mu", "0"],
        ["betti", "--n", "2"],
        ["nonsense"],
    ],
)
def test_validation_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 2


def test_falsification_exit_3(capsys, monkeypatch):
    from flowcoh import dualalgebra
    from flowcoh.exactpoly import Poly

    # feed a wrong volume so the generation check must fail
    monkeypatch.setattr(dualalgebra, "chamber_volume_polynomial", lambda mult: Poly.constant(mult.l, 1))
    code, _, err = run(capsys, "verify-gen", "--l", "2", "--n", "1")
    assert code == 3
    assert "FALSIFIED" in err


def test_emit_report():
    assert json.loads(emit_report({"betti": [1, 1]}, "json")) == {"betti": [1, 1]}
    assert emit_report({"volume": "1/4"}, "text", "1/4") == "1/4"
    assert emit_report({"basis": []}, "json") == '{"basis": []}'


def test_deterministic_and_round_trip():
    argv = [sys.executable, "-m", "flowcoh", "betti", "--l", "2", "--n", "2", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
    payload = json.loads(a)
    assert payload == {"formal_dimension": 8, "betti": [1, 2, 2, 2, 1], "poincare_polynomial": "1+2t^2+2t^4+2t^6+t^8"}
    assert json.loads(json.dumps(payload)) == payload
