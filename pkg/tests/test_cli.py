"""Tests for the command-line surface."""

import json
from unittest.mock import patch

from powerdomains.core.exceptions import Anomaly
from powerdomains.main import cli
from powerdomains.services import hyperspace as hs
from powerdomains.services import topology as tp
from powerdomains.services.lawcheck import MUTATIONS


def error_of(result):
    """The JSON error body, the last line written to stderr."""
    return json.loads(result.stderr.strip().splitlines()[-1])


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.stdout


def test_space_info(runner, write_json, sierpinski_doc):
    """Test separation flags and the open list of S."""
    path = write_json("S.json", sierpinski_doc)
    result = runner.invoke(cli, ["space", "info", path])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["T0"] is True
    assert data["T1"] is False
    assert data["sober"] is True
    assert data["opens"] == 3
    assert data["open_list"] == [[], ["1"], ["0", "1"]]


def test_space_validate_and_product(runner, write_json, sierpinski_doc, S):
    path = write_json("S.json", sierpinski_doc)
    result = runner.invoke(cli, ["space", "validate", path])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["opens_checksum"] == S.opens_checksum

    result = runner.invoke(cli, ["space", "product", path, path])
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["points"]) == 4


def test_space_hyper(runner, write_json, sierpinski_doc):
    path = write_json("S.json", sierpinski_doc)
    result = runner.invoke(cli, ["space", "hyper", path])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["closed_sets"] == {"{}": [], "{0}": ["0"], "{0,1}": ["0", "1"]}
    assert data["space"]["points"] == ["{}", "{0}", "{0,1}"]


def test_not_a_topology(runner, write_json):
    """Test that axiom violations exit with code 2 and name the violation."""
    path = write_json("bad.json", {"points": ["a", "b", "c"], "opens": [[], ["a"], ["b"], ["a", "b", "c"]]})
    result = runner.invoke(cli, ["space", "validate", path])
    assert result.exit_code == 2
    assert error_of(result)["error"] == "NotATopology"


def test_malformed_documents(runner, write_json, tmp_path, sierpinski_doc):
    """Test that unreadable or invalid documents exit with code 1."""
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert runner.invoke(cli, ["space", "info", str(broken)]).exit_code == 1
    assert runner.invoke(cli, ["space", "info", str(tmp_path / "missing.json")]).exit_code == 1

    extra = write_json("extra.json", {**sierpinski_doc, "color": "red"})
    result = runner.invoke(cli, ["space", "info", extra])
    assert result.exit_code == 1
    assert error_of(result)["error"] == "DocumentError"

    both = write_json("both.json", {**sierpinski_doc, "opens": [[], ["0", "1"]]})
    assert runner.invoke(cli, ["space", "info", both]).exit_code == 1


def test_val_supp(runner, write_json, sierpinski_doc):
    """Test that the support of δ_1 on S is all of S."""
    path = write_json("delta.json", {"space": sierpinski_doc, "weights": {"1": "1"}})
    result = runner.invoke(cli, ["val", "supp", path])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == ["0", "1"]


def test_val_extend_from_table(runner, write_json, sierpinski_doc, S):
    """Test that ν({1}) = 1/3, ν(S) = 1 extends to weights 2/3 and 1/3."""
    write_json("S.json", sierpinski_doc)
    path = write_json(
        "nu.json",
        {"space": "S.json", "table": {"0": "0", "1": "1/3", "2": "1"}, "opens_checksum": S.opens_checksum},
    )
    result = runner.invoke(cli, ["val", "extend", path])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"0": "2/3", "1": "1/3"}


def test_val_table_needs_matching_checksum(runner, write_json, sierpinski_doc):
    table = {"0": "0", "1": "1/3", "2": "1"}
    missing = write_json("missing.json", {"space": sierpinski_doc, "table": table})
    assert runner.invoke(cli, ["val", "validate", missing]).exit_code == 1
    wrong = write_json("wrong.json", {"space": sierpinski_doc, "table": table, "opens_checksum": "0" * 64})
    assert runner.invoke(cli, ["val", "validate", wrong]).exit_code == 1


def test_val_validate_rejects_non_monotone(runner, write_json, sierpinski_doc, S):
    path = write_json(
        "nu.json",
        {"space": sierpinski_doc, "table": {"0": "0", "1": "1", "2": "1/2"}, "opens_checksum": S.opens_checksum},
    )
    result = runner.invoke(cli, ["val", "validate", path])
    assert result.exit_code == 2
    assert error_of(result)["error"] == "NotMonotone"


def test_val_extend_infinite_mass(runner, write_json, sierpinski_doc):
    """Test that precondition failures exit with code 3."""
    path = write_json("inf.json", {"space": sierpinski_doc, "weights": {"1": "inf"}})
    result = runner.invoke(cli, ["val", "extend", path])
    assert result.exit_code == 3
    assert error_of(result)["error"] == "InfiniteMass"


def test_bad_rational(runner, write_json, sierpinski_doc):
    path = write_json("nu.json", {"space": sierpinski_doc, "weights": {"1": "1.5"}})
    assert runner.invoke(cli, ["val", "supp", path]).exit_code == 1


def test_val_integrate(runner, write_json, sierpinski_doc):
    nu = write_json("nu.json", {"space": sierpinski_doc, "weights": {"0": "1/2", "1": "1/2"}})
    g = write_json("g.json", {"space": sierpinski_doc, "values": {"0": "1", "1": "3"}})
    result = runner.invoke(cli, ["val", "integrate", nu, g])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == "2"


def test_val_integrate_running_example(runner, write_json, sierpinski_doc):
    """Test ⟨ν, g⟩ = 3/2 for ν = (1/2, 1/2) and g = (1, 2) on S."""
    nu = write_json("nu.json", {"space": sierpinski_doc, "weights": {"0": "1/2", "1": "1/2"}})
    g = write_json("g.json", {"space": sierpinski_doc, "values": {"0": "1", "1": "2"}})
    result = runner.invoke(cli, ["val", "integrate", nu, g])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == "3/2"


def test_val_push_product_and_flatten(runner, write_json, sierpinski_doc):
    """Test push-forward, product and ℰ on documents."""
    one = {"points": ["*"], "opens": [[], ["*"]]}
    nu = write_json("nu.json", {"space": sierpinski_doc, "weights": {"0": "1/4", "1": "1/2"}})
    f = write_json("f.json", {"source": sierpinski_doc, "target": one, "mapping": {"0": "*", "1": "*"}})
    result = runner.invoke(cli, ["val", "push", nu, f])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["table"] == {"0": "0", "1": "3/4"}

    result = runner.invoke(cli, ["val", "product", nu, nu])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["table"]["5"] == "9/16"

    xi = write_json(
        "xi.json",
        {
            "space": sierpinski_doc,
            "atoms": [{"weight": "2", "weights": {"0": "1"}}, {"weight": "1/2", "weights": {"1": "1"}}],
        },
    )
    result = runner.invoke(cli, ["val", "E", xi])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["table"] == {"0": "0", "1": "1/2", "2": "5/2"}


def test_laws_json(runner):
    result = runner.invoke(cli, ["laws", "topology-core", "--count", "4", "--seed", "3", "--json"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["suite"] == "topology-core"
    assert report["instances"] == 4
    assert report["failed"] == 0


def test_laws_human_output(runner):
    result = runner.invoke(cli, ["laws", "supp-natural", "--count", "3"])
    assert result.exit_code == 0
    assert result.stdout.startswith("ok supp-natural: 3 instances")


def test_unknown_suite(runner):
    result = runner.invoke(cli, ["laws", "bogus"])
    assert result.exit_code == 5
    assert "h-monad" in error_of(result)["witness"]["known"]


def test_law_failures_exit_code(runner):
    """Test that a failing suite exits with code 4 and prints replay lines."""
    with patch.object(hs, "unit_sigma", MUTATIONS["sigma-singleton"].replacement):
        result = runner.invoke(cli, ["laws", "h-monad", "--count", "6", "--max-points", "2"])
    assert result.exit_code == 4
    assert "FAILED h-monad" in result.stdout
    assert "replay: laws h-monad --seed 42 --max-points 2 --replay" in result.stdout


def test_anomaly_exit_code(runner, write_json, sierpinski_doc):
    """Test that internal anomalies and unexpected errors exit with code 70."""
    path = write_json("S.json", sierpinski_doc)
    with patch.object(tp, "check_separation", side_effect=Anomaly("criteria disagree")):
        result = runner.invoke(cli, ["space", "info", path])
    assert result.exit_code == 70
    assert error_of(result)["error"] == "Anomaly"

    with patch.object(tp, "check_separation", side_effect=RuntimeError("boom")):
        result = runner.invoke(cli, ["space", "info", path])
    assert result.exit_code == 70
    assert error_of(result)["error"] == "RuntimeError"
