import json

import pytest

from permsplit import SplitHyperplane
from permsplit.cli import UsageError, main, parse_hyperplane


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_hyperplane():
    assert parse_hyperplane("x1+x2=4", 4) == SplitHyperplane(
        n=4, support=frozenset({1, 2}), level=4
    )
    assert parse_hyperplane("x_{1,3}=7", 5) == SplitHyperplane(
        n=5, support=frozenset({1, 3}), level=7
    )
    with pytest.raises(UsageError):
        parse_hyperplane("x9=2", 4)
    with pytest.raises(UsageError):
        parse_hyperplane("x1_x2=4", 4)
    with pytest.raises(UsageError):
        parse_hyperplane("x1=99", 4)


def test_bruhat_commands(capsys):
    code, out, _ = run(capsys, "bruhat", "leq", "1324", "3412", "--format", "json")
    assert code == 0 and json.loads(out) == {"leq": True}
    code, out, _ = run(capsys, "bruhat", "interval", "1324", "3412", "--format", "json")
    assert code == 0 and len(json.loads(out)["members"]) == 10
    code, out, _ = run(capsys, "bruhat", "dual", "316542", "--format", "json")
    assert code == 0 and json.loads(out) == {"dual": "461235"}
    code, out, _ = run(capsys, "bruhat", "dual", "132456", "654321", "--format", "json")
    assert json.loads(out) == {"dual": {"lo": "123456", "hi": "645321"}}


def test_bruhat_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "bruhat", "interval", "3412", "1324")
    assert code == 1 and "error" in err


def test_lpm_commands(capsys):
    code, out, _ = run(capsys, "lpm", "bases", "-n", "8", "1246", "3568", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 45
    code, out, _ = run(capsys, "lpm", "good-pairs", "-n", "8", "1247", "3568", "--format", "json")
    pairs = json.loads(out)["pairs"]
    assert {(p["u"], p["l"]) for p in pairs if p["u"] == 4} == {(4, 3), (4, 5), (4, 6)}
    code, out, _ = run(
        capsys, "lpm", "quotient", "-n", "8", "1247", "3568", "--pair", "4,5",
        "--format", "json",
    )
    assert json.loads(out)["quotient"] == {"n": 8, "U": [1, 2, 7], "L": [3, 6, 8]}
    code, out, _ = run(
        capsys, "lpm", "chain", "-n", "8", "12", "38", "1247", "3568", "--format", "json"
    )
    steps = json.loads(out)["chain"]
    assert [(s["pair"]["u"], s["pair"]["l"]) for s in steps] == [(4, 5), (7, 6)]


def test_matroid_commands(capsys):
    doc = json.dumps({"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]})
    code, out, _ = run(capsys, "matroid", "validate", doc, "--format", "json")
    assert code == 0 and json.loads(out)["rank"] == 2
    code, out, _ = run(capsys, "matroid", "circuits", doc, "--format", "json")
    assert json.loads(out) == {"circuits": [[1, 2, 3]]}
    bad = json.dumps({"n": 4, "bases": [[1, 2], [3, 4]]})
    code, _, err = run(capsys, "matroid", "validate", bad)
    assert code == 1 and "exchange" in err
    m_doc = json.dumps({"n": 3, "bases": [[1], [3]]})
    n_doc = json.dumps({"n": 3, "bases": [[1, 2], [2, 3]]})
    code, out, _ = run(capsys, "matroid", "quotient-check", m_doc, n_doc, "--format", "json")
    assert json.loads(out)["quotient"] == {"1": True, "2": True, "3": True}
    matrix = json.dumps([["1", "0", "1"], ["0", "1", "1"]])
    code, out, _ = run(capsys, "matroid", "from-matrix", matrix, "--format", "json")
    assert json.loads(out)["matroid"] == {"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]}


def test_flag_commands(capsys):
    flag = json.dumps(
        {
            "n": 4,
            "constituents": [
                {"n": 4, "U": [2], "L": [4]},
                {"n": 4, "U": [1, 2], "L": [2, 4]},
                {"n": 4, "U": [1, 2, 4], "L": [2, 3, 4]},
            ],
        }
    )
    code, out, _ = run(capsys, "flag", "interval", flag, "--format", "json")
    assert code == 0 and json.loads(out) == {"interval": {"lo": "1324", "hi": "3412"}}
    code, out, _ = run(capsys, "flag", "polytope", flag, "--format", "json")
    assert len(json.loads(out)["vertices"]) == 10
    code, out, _ = run(capsys, "flag", "of-interval", "1234", "2431", "--format", "json")
    got = json.loads(out)
    assert got["lpfm"] is True and len(got["constituents"]) == 4
    # constituents may also be given by explicit bases
    segment = json.dumps(
        {
            "n": 3,
            "constituents": [
                {"n": 3, "bases": [[1], [3]]},
                {"n": 3, "bases": [[1, 2], [2, 3]]},
                {"n": 3, "bases": [[1, 2, 3]]},
            ],
        }
    )
    code, out, _ = run(capsys, "flag", "polytope", segment, "--format", "json")
    assert json.loads(out)["vertices"] == [["1", "2", "3"], ["3", "2", "1"]]


def test_split_commands(capsys):
    code, out, _ = run(capsys, "split", "check", "-n", "4", "x1+x2=5", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "bad-square"
    code, out, _ = run(capsys, "split", "scan", "-n", "4", "--format", "json")
    assert len(json.loads(out)["hyperplanes"]) == 6
    code, out, _ = run(capsys, "split", "theorem", "-n", "3", "--format", "json")
    assert len(json.loads(out)["hyperplanes"]) == 2
    code, out, _ = run(capsys, "split", "dual", "-n", "4", "x1+x2=4", "--format", "json")
    assert json.loads(out) == {"dual": {"S": [1, 2], "alpha": 6}}
    code, _, err = run(capsys, "split", "check", "-n", "4", "x9=2")
    assert code == 2


def test_poset_commands(capsys):
    code, out, _ = run(capsys, "poset", "build", "-n", "3")
    assert code == 0
    assert "elements  2" in out
    code, out, _ = run(capsys, "poset", "export", "-n", "3", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "poset", "export", "-n", "3", "--format", "json")
    assert len(json.loads(out)["elements"]) == 2


def test_outputs_deterministic(capsys):
    first = run(capsys, "split", "scan", "-n", "4", "--format", "json")
    second = run(capsys, "split", "scan", "-n", "4", "--format", "json")
    assert first == second
    a = run(capsys, "poset", "export", "-n", "3", "--format", "json")
    b = run(capsys, "poset", "export", "-n", "3", "--format", "json")
    assert a == b


def test_verify_n3(capsys):
    code, out, _ = run(capsys, "verify", "-n", "3")
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_usage_error_exit_code(capsys):
    assert main(["split", "nonsense", "-n", "4"]) == 2
    assert main([]) == 2
