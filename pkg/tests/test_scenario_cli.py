import json
import subprocess
import sys

import pytest

from k3stab.cli import main
from k3stab.scenario import ScenarioError, build_scenario, scenario_from_file


def write_scenario(tmp_path, payload, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def diag28(tmp_path):
    return write_scenario(tmp_path, {"form": [2, 0, 8]})


@pytest.fixture
def diag22(tmp_path):
    return write_scenario(tmp_path, {"form": [2, 0, 2]}, "d22.json")


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_scenario_defaults():
    sc = build_scenario(form=[2, 0, 8])
    assert sc.charge.p2 == 2 and sc.charge.q2 == 8 and sc.charge.pq == 0
    assert sc.bound == 3
    assert not sc.B
    assert sc.omega_J == 2 * sc.split.f + sc.split.sigma0
    assert sc.sqrt_disc_integral
    assert sc.polarization == 2 * sc.data.omega_I
    assert len(sc.pic_basis) == 20
    assert sc.fibration_orthogonal


def test_scenario_nondiagonal_form():
    sc = build_scenario(form=[4, 1, 6])
    assert sc.charge.p2 == 4 and sc.charge.pq == 1 and sc.charge.q2 == 6
    assert sc.charge.disc == 23
    assert not sc.sqrt_disc_integral


def test_scenario_explicit_charge():
    p = [0, 0, 1, 1, 0, 0] + [0] * 16
    q = [0, 0, 0, 0, 1, 4] + [0] * 16
    sc = build_scenario(p=p, q=q)
    assert sc.charge.disc == 16


def test_scenario_rejects_garbage():
    with pytest.raises(ScenarioError):
        build_scenario(form=[2, 0])
    with pytest.raises(ScenarioError):
        build_scenario(form=[3, 0, 2])  # odd diagonal
    with pytest.raises(ScenarioError):
        build_scenario()
    with pytest.raises(ScenarioError):
        build_scenario(form=[2, 0, 8], omega_J="nonsense")


def test_scenario_file_unknown_field(tmp_path):
    path = write_scenario(tmp_path, {"form": [2, 0, 8], "bogus": 1})
    with pytest.raises(ScenarioError):
        scenario_from_file(path)


def test_scenario_search_overrides(tmp_path):
    path = write_scenario(
        tmp_path,
        {
            "form": [2, 0, 8],
            "bound": 2,
            "search": {"c_eta": "1/20", "max_iter": 30, "beta": "2"},
        },
    )
    sc = scenario_from_file(path)
    assert sc.bound == 2
    assert sc.search.bound == 2
    assert str(sc.search.c_eta) == "1/20"
    assert sc.search.beta == 2
    assert sc.search.max_iter == 30


def test_cli_attractor(capsys, diag28):
    code, out = run_cli(capsys, ["attractor", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["tau"] == {"re": "0", "im": "2"}
    assert report["lambda"] == {"re": "0", "im": "-1/4"}
    assert report["checks"]["omega_dot_conj"] == "16"


def test_cli_attractor_float_rendering(capsys, diag28):
    code, out = run_cli(capsys, ["attractor", "--scenario", diag28, "--float"])
    assert code == 0
    report = json.loads(out)
    assert report["tau"]["im"] == {"exact": "2", "float": "2"}


def test_cli_reports_are_byte_deterministic(capsys, diag28):
    _, first = run_cli(capsys, ["charge", "--scenario", diag28])
    _, second = run_cli(capsys, ["charge", "--scenario", diag28])
    assert first == second


def test_cli_malformed_scenario(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"form": [2,0,8], ')
    code, out = run_cli(capsys, ["attractor", "--scenario", str(path)])
    assert code == 1
    report = json.loads(out)
    assert report["kind"] == "scenario"
    assert "line 1" in report["error"]


def test_cli_degenerate_charge(tmp_path, capsys):
    p = [0, 0, 1, 0, 0, 0] + [0] * 16
    q = [0, 0, 0, 0, 1, 2] + [0] * 16
    path = write_scenario(tmp_path, {"p": p, "q": q})
    code, out = run_cli(capsys, ["attractor", "--scenario", str(path)])
    assert code == 2
    assert json.loads(out)["kind"] == "DegenerateCharge"


def test_cli_forms_reduce(capsys):
    code, out = run_cli(capsys, ["forms", "reduce", "[2,0,8]"])
    assert code == 0
    report = json.loads(out)
    assert report["reduced"] == [2, 0, 8]
    assert report["witness"] == [[1, 0], [0, 1]]


def test_cli_forms_equiv(capsys):
    code, out = run_cli(capsys, ["forms", "equiv", "[2,1,2]", "[2,-1,2]"])
    assert code == 0
    report = json.loads(out)
    assert report["equivalent"] is True
    assert report["witness"] is not None
    code, out = run_cli(capsys, ["forms", "equiv", "[2,0,8]", "[4,0,4]"])
    assert json.loads(out)["equivalent"] is False


def test_cli_forms_enumerate(capsys):
    code, out = run_cli(capsys, ["forms", "enumerate", "16"])
    assert code == 0
    assert json.loads(out)["forms"] == [[2, 0, 8], [4, 0, 4]]


def test_cli_forms_bad_input(capsys):
    code, out = run_cli(capsys, ["forms", "reduce", "[2,0]"])
    assert code == 1


def test_cli_mirror(capsys, diag28):
    code, out = run_cli(capsys, ["mirror", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["mirror"]["omega"] == [0, 0, 0, 0, 1, 4] + [0] * 16
    assert report["mirror"]["B"] == [0] * 22
    assert report["mirror"]["Omega"]["re"] == [4, 1] + [0] * 20
    assert report["mirror"]["Omega"]["im"] == [0, 0, 2, 2] + [0] * 18
    assert report["involution"]["holds"] is True
    assert report["ns_of_mirror_rank"] == 20


def test_cli_charge_table(capsys, diag28):
    code, out = run_cli(capsys, ["charge", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert len(report["charges"]) == 20
    assert report["charges"][0]["Z_threefold"] == {"re": "1", "im": "0"}
    assert report["charges"][0]["Z_mirror"] == {"re": "1", "im": "0"}


def test_cli_walls_table(capsys, diag28):
    code, out = run_cli(capsys, ["walls", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["pairs"] == 190
    assert report["kind"] == "generalized"
    # the unsearched base point has zero charges, so not all pairs align
    assert report["member_count"] < 190


def test_cli_verify_51(capsys, diag28):
    code, out = run_cli(capsys, ["verify", "5.1", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True and report["classes"] == 20


def test_cli_verify_62(capsys, diag28):
    code, out = run_cli(capsys, ["verify", "6.2", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["charges"][0]["Z"] == "1"
    assert report["charges"][0]["mukai"] == {"r": 0, "D": [0] * 22, "s": -1}


def test_cli_verify_63_pass(capsys, diag28):
    code, out = run_cli(capsys, ["verify", "6.3", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["obstruction"]["obstructed"] is False
    assert report["bound"] == 3


def test_cli_verify_63_obstructed(capsys, diag22):
    code, out = run_cli(capsys, ["verify", "6.3", "--scenario", diag22])
    assert code == 3
    report = json.loads(out)
    assert report["kind"] == "obstructed"
    delta = report["obstruction"]["delta"]
    assert delta["r"] == 0 and delta["s"] == 0
    assert sorted(delta["D"][:2]) == [-1, 1]  # +-sigma0 in U1 coordinates


def test_cli_verify_64(capsys, diag28):
    code, out = run_cli(capsys, ["verify", "6.4", "--scenario", diag28])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["pairs"] == 190 and report["member_count"] == 190


def test_cli_verify_64_alias(capsys, diag28):
    code, out = run_cli(capsys, ["verify", "wall-intersection", "--scenario", diag28])
    assert code == 0


def test_cli_verify_64_obstructed_exit(capsys, diag22):
    code, _ = run_cli(capsys, ["verify", "6.4", "--scenario", diag22])
    assert code == 3


def test_cli_search_exhausted_exit(tmp_path, capsys):
    path = write_scenario(
        tmp_path, {"form": [2, 0, 8], "search": {"c_eta": "0", "max_iter": 2}}
    )
    code, out = run_cli(capsys, ["verify", "6.3", "--scenario", str(path)])
    assert code == 4
    assert json.loads(out)["kind"] == "search-exhausted"


def test_cli_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "k3stab", "bogus-command"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1


def test_module_entry_point(diag28):
    proc = subprocess.run(
        [sys.executable, "-m", "k3stab", "attractor", "--scenario", diag28],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tau"]["im"] == "2"
