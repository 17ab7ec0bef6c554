"""Exit-code contract for failures that cannot occur on valid built-in input."""

import dataclasses
import json

import sympair.cli
from sympair.cli import main
from sympair.criteria import audit_orbits
from sympair.errors import InvariantViolation
from sympair.pairs import make_diagonal_pair


def test_criterion_failure_exits_1(monkeypatch, capsys, tmp_path):
    real_audits = audit_orbits(make_diagonal_pair(2))
    doctored = [dataclasses.replace(real_audits[0], archimedean_pass=False)] + \
        real_audits[1:]

    monkeypatch.setattr(sympair.cli, "audit_orbits", lambda pair: doctored)
    out = tmp_path / "r.json"
    code = main(["audit", "--family", "diagonal", "--n", "2", "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    assert doc["all_pass"] is False
    # the report still carries the failing row instead of hiding it
    assert doc["orbits"][0]["archimedean_pass"] is False


def test_invariant_violation_exits_3_with_banner(monkeypatch, capsys):
    def boom(pair):
        raise InvariantViolation("synthetic violation for the exit-code contract")

    monkeypatch.setattr(sympair.cli, "audit_orbits", boom)
    code = main(["audit", "--family", "diagonal", "--n", "2"])
    captured = capsys.readouterr()
    assert code == 3
    assert "INVARIANT VIOLATED" in captured.err
