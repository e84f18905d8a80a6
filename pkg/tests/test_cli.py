import json

import pytest

from cubechow.cli import main
from cubechow.suites import SUITES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path, corpus):
    paths = {}
    for fx in corpus.cycles():
        p = tmp_path / f"{fx.id}.json"
        p.write_text(fx.cycle.dumps())
        paths[fx.id] = str(p)
    tower = tmp_path / "pentagon.json"
    tower.write_text(json.dumps({"n": 2, "steps": [[2, 3]]}))
    paths["tower"] = str(tower)
    return paths


def test_verify_eta_table(capsys):
    code, out, _ = run(capsys, "verify", "eta-table")
    assert code == 0
    assert "8/8 checks passed" in out


def test_verify_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "--json", "verify", "boundary-squared", "--random", "5",
                      "--seed", "7")
    _, second, _ = run(capsys, "verify", "boundary-squared", "--random", "5", "--seed", "7",
                       "--json")
    assert first == second
    data = json.loads(first)
    assert data["status"] == "pass" and "wall_time" not in data


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0
    assert all(name in out for name in SUITES)


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 2 and "unknown suite" in err


def test_bad_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cycle", "explode", "x.json"])
    assert exc.value.code == 2


def test_cycle_check(capsys, files):
    code, out, _ = run(capsys, "cycle", "check", files["point-2"])
    assert code == 0 and "normalized: True" in out
    code, out, _ = run(capsys, "cycle", "check", files["demo-closure"])
    assert code == 1 and "{y1=0, y2=0}" in out


def test_cycle_face_and_boundary(capsys, files):
    code, out, _ = run(capsys, "--json", "cycle", "face", files["line-sum-3"], "--index", "1",
                       "--eps", "0")
    assert code == 0
    assert json.loads(out)["canonical"] == "V(y1 - 3)"
    code, out, _ = run(capsys, "cycle", "boundary", files["line-sum-3"])
    assert out.strip() == "0"


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ambient_dim": 0, "cube_dim": 1, "d": -1,
                               "components": [{"coef": 1, "generators": ["y1 +* 2"]}]}))
    code, _, err = run(capsys, "cycle", "check", str(bad))
    assert code == 2 and err.startswith("error:")
    code, _, _ = run(capsys, "cycle", "check", str(tmp_path / "missing.json"))
    assert code == 2


def test_subdivide_with_certificate(capsys, files):
    code, out, _ = run(capsys, "--json", "subdivide", "--cycle", files["point-2"],
                       "--form", "vertex", "--seed", "3", "--certify")
    assert code == 0
    data = json.loads(out)
    assert data["certificate"]["status"] == "pass"


def test_subdivide_at_given_point(capsys, files):
    code, out, _ = run(capsys, "subdivide", "--cycle", files["point-2"], "--point", "1/3")
    assert code == 0
    assert "V(y1 - 6)" in out and "V(y1 + 3/2)" in out


def test_tower_build(capsys, files):
    code, out, _ = run(capsys, "tower", "build", "--spec", files["tower"])
    assert code == 0 and "5 divisors, 5 vertices, 5 edges" in out


def test_tower_apply_certifies_h0(capsys, files):
    code, out, _ = run(capsys, "tower", "apply", "--cycle", files["point-2-3"], "--spec",
                       "pentagon", "--seed", "2", "--certify-h0")
    assert code == 0 and "H0 certificate: pass" in out


def test_mv_demo(capsys):
    code, out, _ = run(capsys, "mv", "demo", "--ambient", "1")
    assert code == 0 and "[PASS] mv-exactness" in out


def test_glue(capsys, tmp_path):
    def point(x):
        return {"ambient_dim": 1, "cube_dim": 1, "d": -1,
                "components": [{"coef": 1, "generators": [f"x1 - {x}", "y1 - 2"]}]}
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    both = point(0)
    both["components"] += point(2)["components"]
    a.write_text(json.dumps(both))
    b.write_text(json.dumps(point(2)))
    code, out, _ = run(capsys, "glue", str(a), str(b), "--U", "x1", "--V", "x1 - 1")
    assert code == 0 and "V(x1 - 2, y1 - 2)" in out
    code, _, err = run(capsys, "glue", str(b), str(a), "--U", "x1 - 1", "--V", "x1 - 3")
    assert code == 1


def test_pipeline_point(capsys, files):
    code, out, _ = run(capsys, "pipeline", "--cycle", files["point-2"], "--steps",
                       "bidiv:1:1/3", "boundary")
    assert code == 0
    assert out.splitlines()[-1] == "boundary: 0  [admissible]"


def test_pipeline_empty_echoes_input(capsys, files):
    code, out, _ = run(capsys, "--json", "pipeline", "--cycle", files["point-2"])
    data = json.loads(out)
    assert code == 0 and [s["step"] for s in data["steps"]] == ["input"]
    assert data["steps"][0]["canonical"] == "V(y1 - 2)"


def test_pipeline_tower_improves_admissibility(capsys, files):
    code, out, _ = run(capsys, "--json", "pipeline", "--cycle", files["demo-closure"],
                       "--steps", "tower-apply:demo-vertex")
    steps = json.loads(out)["steps"]
    assert code == 0
    assert [s["admissible"] for s in steps] == [False, True]


def test_pipeline_aborts_on_bad_step(capsys, files):
    code, out, _ = run(capsys, "pipeline", "--cycle", files["point-2"], "--steps",
                       "bidiv:1:1", "boundary")
    assert code == 1 and "aborted" in out
