import json
import pathlib

import pytest

from bispans.cli import main

HERE = pathlib.Path(__file__).parent
FIX = HERE / "fixtures"
GOLD = HERE / "goldens"
POLYS = str(FIX / "polys.json")

GOLDEN_RUNS = {
    "compose.txt": ["compose", "doubling", "squaring", "--input", POLYS],
    "compose.json": ["compose", "doubling", "squaring", "--input", POLYS, "--format", "json"],
    "cosets_s3.txt": ["cosets", "C2", "C2", "--group", "S3"],
    "norm_c2.txt": ["norm", "e", "C2", "--group", "C2"],
    "eval_tropical.txt": ["eval", "sq_plus", "3", "4", "--input", POLYS, "--semiring", "tropical"],
    "eval_nat.txt": ["eval", "sq_plus", "3", "4", "--input", POLYS],
    "dist.dot": ["dist", "l23", "to_one", "--input", POLYS],
}


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_goldens(capsys, name):
    code, out, _ = run(capsys, GOLDEN_RUNS[name])
    assert code == 0
    assert out == (GOLD / name).read_text(encoding="utf-8")
    assert run(capsys, GOLDEN_RUNS[name])[1] == out


def test_compose_canonical_form(capsys):
    _, out, _ = run(capsys, GOLDEN_RUNS["compose.txt"])
    assert out.splitlines()[-1] == "canonical form: 4*x^2"


def test_compose_mismatch_names_both_ids(capsys):
    code, _, err = run(capsys, ["compose", "sum2", "also_sum2", "--input", str(FIX / "mismatch.json")])
    assert code == 2
    assert "sum2 (line 11, column 5)" in err and "also_sum2 (line 12, column 5)" in err


def test_parse_error_location(capsys):
    code, _, err = run(capsys, ["eval", "b", "--input", str(FIX / "broken.json")])
    assert code == 2
    assert err.startswith(f"{FIX / 'broken.json'}:6:")
    assert "unresolved object id 'nowhere'" in err


def test_missing_input(capsys):
    code, _, err = run(capsys, ["eval", "b", "--input", str(FIX / "absent.json")])
    assert code == 2 and "cannot read" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert run(capsys, ["check", "nonsense"])[0] == 2
    assert run(capsys, ["cosets", "C2", "C7", "--group", "S3"])[0] == 2
    assert run(capsys, ["eval", "sq_plus", "3", "--input", POLYS])[0] == 2


def test_eval_poly_and_bool(capsys):
    assert run(capsys, ["eval", "sq_plus", "--input", POLYS, "--semiring", "poly"])[1] == "x0^2 + x1\n"
    assert run(capsys, ["eval", "sq_plus", "0", "1", "--input", POLYS, "--semiring", "bool"])[1] == "true\n"
    out = run(capsys, ["eval", "sq_plus", "inf", "inf", "--input", POLYS, "--semiring", "tropical"])[1]
    assert out == "inf\n"


def test_cosets_identity_case(capsys):
    code, out, _ = run(capsys, ["cosets", "C3", "C3", "C3", "--group", "S3"])
    assert code == 0 and len(out.splitlines()) == 3


def test_norm_single_element(capsys):
    code, out, _ = run(capsys, ["norm", "e", "C2", "2·[e/e]", "--group", "C2"])
    assert code == 0
    assert out.splitlines()[-1].endswith("2·[C2/C2] + 1·[C2/e]")


def test_degree(capsys):
    code, out, _ = run(capsys, ["degree", "sq_plus", "--input", POLYS])
    assert code == 0 and out.splitlines()[1] == "out0\t2\t2 1\t2"
    code, out, _ = run(capsys, ["degree", "sq_plus", "--input", POLYS, "--bound", "2"])
    assert code == 2
    code, out, _ = run(capsys, ["degree", "l23", "--input", POLYS, "--format", "json"])
    assert json.loads(out)["components"] == {"2": [0], "3": [1]}


def test_render(capsys):
    code, out, _ = run(capsys, ["render", "squaring", "--input", POLYS])
    assert code == 0 and '"E" [label="E (2)"]' in out
    assert run(capsys, ["render", "nothing", "--input", POLYS])[0] == 2


def test_check_pass_and_json(capsys):
    code, out, _ = run(capsys, ["check", "double-coset", "--group", "S3"])
    assert code == 0 and out.startswith("double-coset: pass")
    code, out, _ = run(capsys, ["check", "norm", "--format", "json"])
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["cases"] == 7


def test_check_failure_serializes_counterexample(capsys):
    code, out, _ = run(capsys, ["check", "fold-structure", "--max-size", "2", "--format", "json"])
    data = json.loads(out)
    assert code == 1 and not data["ok"]
    assert "morphisms" in data["counterexample"]


def test_seed_environment_override(capsys, monkeypatch):
    argv = ["check", "section-count", "--trials", "50", "--seed", "1", "--format", "json"]
    first = run(capsys, argv)[1]
    monkeypatch.setenv("BISPAN_SEED", "1")
    assert run(capsys, argv[:-4] + ["--seed", "99", "--format", "json"])[1] == first
    monkeypatch.setenv("BISPAN_SEED", "x")
    assert run(capsys, argv)[0] == 2
