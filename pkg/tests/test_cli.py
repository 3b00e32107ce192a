import json

from nichols2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_exterior(capsys):
    code, out, _ = run(capsys, "classify", "--q11", "1/2", "--q12", "0/1",
                       "--q21", "0/1", "--q22", "1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["type"] == [[1, 1]]
    assert doc["dimension"] == 4
    assert set(doc) >= {"type", "tree", "pbw", "dimension", "relations",
                        "verified_up_to", "admissibility"}


def test_dims_cartan(capsys):
    code, out, _ = run(capsys, "dims", "--q11", "1/3", "--q12", "2/3",
                       "--q21", "0/1", "--q22", "1/3", "--degree-cap", "8")
    assert code == 0
    assert json.loads(out) == [1, 2, 4, 4, 5, 4, 4, 2, 1]


def test_tree_exterior(capsys):
    code, out, _ = run(capsys, "tree", "--q11", "1/2", "--q12", "0/1",
                       "--q21", "0/1", "--q22", "1/2", "--format", "text")
    assert code == 0 and out.strip() == "L"


def test_tree_failure_exit_code(capsys):
    code, out, _ = run(capsys, "tree", "--q11", "1/5", "--q12", "1/5",
                       "--q21", "0/1", "--q22", "1/5")
    assert code == 1
    assert json.loads(out)["tree"] is None


def test_verify_holds_and_fails(capsys):
    args = ("--q11", "1/3", "--q12", "2/3", "--q21", "0/1", "--q22", "1/3")
    code, out, _ = run(capsys, "verify", "--tree", "(L L)", *args, "--degree-cap", "8")
    assert code == 0 and json.loads(out)["holds"]
    code, out, _ = run(capsys, "verify", "--tree", "L", *args, "--degree-cap", "2")
    assert code == 1
    doc = json.loads(out)
    assert not doc["holds"] and doc["failed_degree"] == 2


def test_verify_tree_braiding_mismatch(capsys):
    # The exterior braiding has chi(root, root) = 1 on the one-branch tree,
    # which is a mismatch, not an input error.
    code, out, _ = run(capsys, "verify", "--tree", "(L L)", "--q11", "1/2",
                       "--q12", "0/1", "--q21", "0/1", "--q22", "1/2")
    assert code == 1
    doc = json.loads(out)
    assert not doc["holds"] and "mismatch" in doc["detail"]


def test_input_errors_exit_two(capsys):
    code, _, err = run(capsys, "classify", "--q11", "nope", "--q12", "0/1",
                       "--q21", "0/1", "--q22", "1/2")
    assert code == 2 and "q11" in err
    code, _, err = run(capsys, "verify", "--tree", "(L", "--q11", "1/2",
                       "--q12", "0/1", "--q21", "0/1", "--q22", "1/2")
    assert code == 2 and "tree" in err
    code, _, err = run(capsys, "classify", "--q12", "0/1", "--q21", "0/1",
                       "--q22", "1/2")
    assert code == 2
    code, _, err = run(capsys, "classify", "--q11", "0/1", "--q12", "0/1",
                       "--q21", "0/1", "--q22", "1/2")
    assert code == 0  # q11 = 1 is a legal (non-root-of-unity-order) entry


def test_classify_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--q11", "1/2", "--q12", "0/1",
                       "--q21", "0/1", "--q22", "1/2", "--format", "text")
    assert code == 0
    assert "dimension" in out and "type matches" in out


def test_json_report_round_trips(capsys):
    _, out, _ = run(capsys, "classify", "--q11", "1/3", "--q12", "2/3",
                    "--q21", "0/1", "--q22", "1/3")
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc


def test_fixtures_command_small_cap(capsys):
    # The full matrix runs in the acceptance suite; a small cap keeps this
    # end-to-end check quick while still touching every family.
    code, out, _ = run(capsys, "fixtures", "--degree-cap", "2")
    assert code == 0
    doc = json.loads(out)
    assert len(doc) == 31 and all(row["passed"] for row in doc)
    code, out, _ = run(capsys, "fixtures", "--degree-cap", "2", "--format", "text")
    assert code == 0 and "PASS" in out


def test_negative_scalar_flags(capsys):
    # The family-6 sample braiding needs a negated scalar on the command line.
    code, out, _ = run(capsys, "tree", "--q11", "1/18", "--q12", "16/18",
                       "--q21", "0/1", "--q22", "-3/18", "--format", "text")
    assert code == 0 and out.strip() == "((L L) ((L L) L))"


def test_fixtures_exit_reflects_failures(capsys, monkeypatch):
    import nichols2.cli as cli
    from nichols2.classify import FixtureRow

    bad = FixtureRow(1, 1, False, True, True, True, True, True, True, True, 4, 2, 0.0)
    monkeypatch.setattr(cli, "run_fixture_matrix", lambda **kw: [bad])
    assert main(["fixtures"]) == 1
