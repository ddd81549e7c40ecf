import csv
import io
import json

import numpy as np
import pytest

from ptsmatrix.cli import main
from ptsmatrix.io import CSV_COLUMNS, read_samples_csv

WELL = {"type": "piecewise", "rho": 1.0, "segments": [{"lo": -0.5, "hi": 0.5, "re": 2.0}]}
PT_WELL = {"type": "piecewise", "rho": 1.0,
           "segments": [{"lo": -1.0, "hi": 0.0, "im": -1.0}, {"lo": 0.0, "hi": 1.0, "im": 1.0}]}
GRID = {"re": [-2, 2, 6], "im": [0.1, 2, 4]}


def write_cfg(tmp_path, potential, name="cfg.json", **extra):
    p = tmp_path / name
    p.write_text(json.dumps({"potential": potential, "grid": extra.pop("grid", GRID), **extra}))
    return str(p)


def rows(path):
    return list(csv.DictReader(io.StringIO(open(path).read())))


def test_smatrix_free(tmp_path):
    cfg = write_cfg(tmp_path, {"type": "free", "rho": 1.0}, grid={"re": [-1, 1, 3], "im": [0.5, 1.5, 3]})
    out = tmp_path / "s.csv"
    assert main(["smatrix", cfg, "--out", str(out)]) == 0
    r = rows(out)
    assert len(r) == 9
    # re 0 is on the excluded axis
    assert [x["status"] for x in r].count("ok") == 6
    assert tuple(r[0].keys()) == CSV_COLUMNS


def test_smatrix_free_off_axis(tmp_path):
    cfg = write_cfg(tmp_path, {"type": "free", "rho": 1.0}, grid={"re": [0.5, 1.5, 3], "im": [0.5, 1.5, 3]})
    out = tmp_path / "s.csv"
    assert main(["smatrix", cfg, "--out", str(out)]) == 0
    r = rows(out)
    assert len(r) == 9 and all(x["status"] == "ok" for x in r)
    for x in r:
        k = complex(float(x["re_k"]), float(x["im_k"]))
        s12 = complex(float(x["re_S12"]), float(x["im_S12"]))
        assert s12 == pytest.approx(-np.exp(2j * k), abs=1e-12)


def test_smatrix_whole_plane(tmp_path):
    cfg = write_cfg(tmp_path, {"type": "point", "gamma": 2.0})
    out = tmp_path / "s.csv"
    assert main(["smatrix", cfg, "--out", str(out)]) == 0
    assert all(x["status"] != "ok" for x in rows(out))


def test_malformed_config(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"potential": {"type": "point", "gamma": 1},\n')
    out = tmp_path / "s.csv"
    assert main(["smatrix", str(cfg), "--out", str(out)]) == 2
    assert not out.exists()
    assert "line" in capsys.readouterr().err


@pytest.mark.parametrize("pot, field", [({"type": "point"}, "potential.gamma"),
                                        ({"type": "nope"}, "potential.type")])
def test_field_errors(tmp_path, capsys, pot, field):
    assert main(["smatrix", write_cfg(tmp_path, pot)]) == 2
    assert field in capsys.readouterr().err


def test_lower_half_plane_grid_rejected(tmp_path):
    cfg = write_cfg(tmp_path, {"type": "free"}, grid={"re": [-1, 1, 3], "im": [-1, 1, 3]})
    assert main(["smatrix", cfg]) == 2


def test_smatrix_deterministic_and_round_trips(tmp_path):
    cfg = write_cfg(tmp_path, PT_WELL)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["smatrix", cfg, "--out", str(a)])
    main(["smatrix", cfg, "--out", str(b), "--jobs", "2"])
    assert a.read_bytes() == b.read_bytes()
    from ptsmatrix.potential import potential_from_dict
    from ptsmatrix.smatrix import smatrix_grid
    direct = smatrix_grid(potential_from_dict(PT_WELL), GRID)
    for row, s in zip(read_samples_csv(a.read_text()), direct):
        if s.ok:
            assert complex(row["re_S11"], row["im_S11"]) == s.S[0, 0]


def test_smatrix_json(tmp_path):
    cfg = write_cfg(tmp_path, {"type": "point", "gamma": 1.0})
    out = tmp_path / "s.json"
    assert main(["smatrix", cfg, "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["columns"] == list(CSV_COLUMNS)
    assert len(data["rows"]) == 24
    assert all(r["status"] in ("ok", "excluded_axis") for r in data["rows"])


def test_verify_real_well(tmp_path):
    out = tmp_path / "r.json"
    cfg = write_cfg(tmp_path, WELL, relations=["hermitian", "contraction", "unitarity"])
    assert main(["verify", cfg, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"]


def test_verify_pt_well(tmp_path):
    assert main(["verify", write_cfg(tmp_path, PT_WELL), "--relations", "pt", "--out",
                 str(tmp_path / "r.json")]) == 0


def test_verify_metric_recover(tmp_path):
    out = tmp_path / "r.json"
    cfg = write_cfg(tmp_path, {"type": "point", "gamma": 1.0})
    assert main(["verify", cfg, "--relations", "metric", "--chi", "recover", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["metric"]["chi"] == pytest.approx(np.log(3))


def test_verify_failure_exit(tmp_path):
    # the PT well is not self-adjoint, so hermitian analyticity fails
    assert main(["verify", write_cfg(tmp_path, PT_WELL), "--relations", "hermitian",
                 "--out", str(tmp_path / "r.json")]) == 3
    # a tolerance override can make a passing relation fail
    assert main(["verify", write_cfg(tmp_path, PT_WELL), "--relations", "pt", "--tol", "pt=1e-300",
                 "--out", str(tmp_path / "r.json")]) == 3


def test_verify_metric_needs_chi(tmp_path):
    assert main(["verify", write_cfg(tmp_path, WELL), "--relations", "metric"]) == 2


@pytest.mark.parametrize("pot, chi", [({"type": "point", "gamma": 1.0}, np.log(3)),
                                      ({"type": "point", "gamma": 0.0}, 0.0), (WELL, 0.0)])
def test_recover(tmp_path, pot, chi):
    out = tmp_path / "e.json"
    assert main(["recover", write_cfg(tmp_path, pot), "--diagnostic", "--out", str(out)]) == 0
    est = json.loads(out.read_text())
    assert est["chi"] == pytest.approx(chi, abs=1e-6)
    assert set(est) >= {"chi", "tanh_chi", "beta_implied", "fit_residual", "eQ", "C", "diagnostic"}


def test_recover_without_samples(tmp_path):
    # every grid point sits on the excluded axis Re k = 0
    cfg = write_cfg(tmp_path, {"type": "point", "gamma": 1.0}, grid={"re": [0, 0, 1], "im": [0.5, 1, 2]})
    assert main(["recover", cfg]) == 2


def test_recover_degenerate_exit(tmp_path, monkeypatch):
    from ptsmatrix import cli
    from ptsmatrix.mat2 import SIGMA0
    monkeypatch.setattr(cli, "_recovery_pairs", lambda cfg: ([SIGMA0], [SIGMA0]))
    assert main(["recover", write_cfg(tmp_path, WELL)]) == 4


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 9
