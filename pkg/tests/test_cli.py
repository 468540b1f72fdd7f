import json
from importlib import resources

import jsonschema
import numpy as np
import pytest

from timoshenko_lie.cli import main


def schema(name):
    return json.loads(resources.files("timoshenko_lie").joinpath(f"data/schemas/{name}.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_x3(capsys):
    code, out, _ = run(["classify", "--case", "equal", "-k", "1", "--rho1", "1", "--rho2", "1", "-b", "1",
                        "--element", "0,0,1,0,0,0,0,0"], capsys)
    data = json.loads(out)
    assert code == 0 and data["class"] == "X14"
    jsonschema.validate(data, schema("classify"))


def test_classify_x1_alpha_beta(capsys):
    code, out, _ = run(["classify", "--element", "1,2,0,0,0,4,0,0"], capsys)
    data = json.loads(out)
    assert code == 0 and data["class"] == "X1"
    assert data["free_params"] == {"alpha": 2.0, "beta": 4.0}


def test_classify_zero_element_exit_2(capsys):
    code, _, err = run(["classify", "--element", "0,0,0,0,0,0,0,0"], capsys)
    assert code == 2 and "ZeroElement" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--element", "1,2"],
    ["classify", "--element", "1,2,3,4,5,6,7,x"],
    ["classify", "--case", "less", "--mu", "5", "--element", "1,0,0,0,0,0,0,0"],
    ["classify", "--case", "equal", "-d", "3", "--element", "1,0,0,0,0,0,0,0"],
    ["reduce", "--case", "equal", "--row", "A", "--alpha", "0.5"],
    ["verify", "--window", "1,0,0,1"],
    ["bogus"],
])
def test_config_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_adjoint_identity_and_entry(capsys):
    code, out, _ = run(["adjoint", "--eps", "0,0,0,0,0,0,0,0"], capsys)
    data = json.loads(out)
    assert code == 0 and np.array_equal(np.array(data["matrix"]), np.eye(8))
    jsonschema.validate(data, schema("adjoint"))
    _, out, _ = run(["adjoint", "--case", "equal", "--eps", "0,0,0,1,0,0,0,0"], capsys)
    assert json.loads(out)["matrix"][0][2] == -1.0


def test_adjoint_random_matches_product(capsys):
    eps = ",".join(str(v) for v in np.random.default_rng(4).uniform(-1, 1, 8))
    _, out, _ = run(["adjoint", "--case", "greater", "--lambda", "0.7", "--eps", eps], capsys)
    assert json.loads(out)["product_error"] <= 1e-12


def test_floats_printed_with_17_digits(capsys):
    _, out, _ = run(["adjoint", "--case", "less", "--eps", "0.1,0,0,0,0,0,0,0"], capsys)
    m = json.loads(out)["matrix"]
    assert any(len(tok) >= 17 for tok in out.split() if tok.strip(",").replace(".", "").replace("-", "").isdigit())
    assert isinstance(m[6][6], float)


def test_verify_example_emits_table(capsys):
    code, out, err = run(["verify", "--example", "1", "--alpha", "0.5", "--beta", "1"], capsys)
    data = json.loads(out)
    assert code == 0 and "order" in err
    jsonschema.validate(data, schema("verify"))
    jsonschema.validate(data["report"], schema("residual_report"))


def test_verify_printed_example_flags(capsys):
    code, out, _ = run(["verify", "--example", "1", "--reading", "printed", "--alpha", "0.5",
                        "--grid", "31,31"], capsys)
    check = json.loads(out)["check"]
    assert code == 0 and check["passed"] is False and "t*x^2" in check["offending_phi_terms"]


def test_verify_translation_order(capsys):
    _, out, _ = run(["verify", "--case", "greater", "--eps", "0.5,-0.3,0,0,0,0,0,0"], capsys)
    orders = json.loads(out)["convergence"]["orders"]
    assert all(o == "exact" or o >= 1.9 for o in orders)


def test_zero_grid_file(tmp_path, capsys):
    from timoshenko_lie.residual import GridSolution, write_grid_csv
    path = write_grid_csv(GridSolution(0, 1, 0, 1, np.zeros((6, 6)), np.zeros((6, 6))), tmp_path / "z.csv")
    code, out, _ = run(["verify", "--grid-file", str(path), "--chi", "cubic"], capsys)
    assert code == 0 and json.loads(out)["report"]["eq1_max"] == 0.0


def test_transform_csv_then_verify(tmp_path, capsys):
    path = tmp_path / "t.csv"
    code, _, _ = run(["transform", "--case", "less", "--eps", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8",
                      "--format", "csv", "--out", str(path), "--grid", "21,21"], capsys)
    assert code == 0 and path.exists() and (tmp_path / "t.meta.json").exists()
    code, out, _ = run(["verify", "--case", "less", "--grid-file", str(path)], capsys)
    assert code == 0 and json.loads(out)["report"]["eq2_max"] < 1e-2


def test_reduce_row_f_exact(capsys):
    code, out, _ = run(["reduce", "--case", "equal", "--row", "F", "--alpha", "0.5"], capsys)
    data = json.loads(out)
    assert code == 0 and data["convergence"]["exact"]
    assert data["report"]["eq1_max"] <= data["convergence"]["floor"]


def test_reduce_singular_exit_3(capsys):
    code, _, err = run(["reduce", "--case", "equal", "--row", "A", "--alpha", "1", "--beta", "1"], capsys)
    assert code == 3 and "SingularCoefficient" in err


def test_reduce_less_row_c(capsys):
    code, out, _ = run(["reduce", "--case", "less", "--row", "C", "--alpha", "0.5", "--ics", "0,0,1,0",
                        "--chi", "cubic"], capsys)
    data = json.loads(out)
    assert code == 0 and data["reduced_residual"]["eq2_max"] < 1e-5
    assert data["report"]["eq2_max"] < 1e-4


def test_catalog_dump(tmp_path, capsys):
    out = tmp_path / "cat.json"
    assert main(["catalog", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, schema("catalog"))
    assert len(doc["rows"]) == 18


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"case": "greater", "lambda": 2.0, "element": "0,0,1,0,0,0,0,0"}))
    _, out, _ = run(["classify", "--config", str(cfg)], capsys)
    assert json.loads(out)["class"] == "X20"
    _, out, _ = run(["classify", "--config", str(cfg), "--case", "less", "--mu", "1"], capsys)
    assert json.loads(out)["case"] == "less"
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert run(["classify", "--config", str(cfg)], capsys)[0] == 2


def test_deterministic_output(capsys):
    argv = ["reduce", "--case", "greater", "--row", "A", "--alpha", "0.4", "--beta", "0.3", "--chi", "cubic",
            "--ics", "0.1,0,0.2,0", "--grid", "21,21"]
    a = run(argv, capsys)[1]
    b = run(argv, capsys)[1]
    assert a == b
