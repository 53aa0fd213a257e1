import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from confsurf.api import app
from confsurf.cli import main
from confsurf.service import (
    RunConfig, load_config, run_compute, run_check, catalog_listing,
    parse_seed_transform, results_to_csv,
)
from confsurf.errors import ConfigError

SMALL = {"surface": {"kind": "clifford"}, "grid": {"nu": 8, "nv": 8},
         "invariants": ["normII2", "willmore"]}


# -- service ----------------------------------------------------------

def test_config_validation():
    with pytest.raises(ConfigError):
        load_config('{"grid": {"nu": 4}}')
    with pytest.raises(ConfigError):
        load_config('{"jet_order": 7}')
    with pytest.raises(ConfigError):
        load_config('{"invariants": ["nope"]}')
    with pytest.raises(ConfigError):
        load_config('{"invariants": ["dlap_willmore"], "jet_order": 4}')
    with pytest.raises(ConfigError):
        load_config('{"tolerances": {"x": 0}}')
    with pytest.raises(ConfigError):
        load_config('not json')


def test_fingerprint_stability():
    a = load_config(json.dumps(SMALL))
    b = load_config(json.dumps(SMALL))
    assert a.fingerprint() == b.fingerprint()
    c = load_config(json.dumps({**SMALL, "jet_order": 5}))
    assert a.fingerprint() != c.fingerprint()


def test_compute_known_fields():
    rs = run_compute(load_config(json.dumps(SMALL)))
    assert len(rs.records) == 64
    vals = [r["willmore@alpha=1"] for r in rs.records]
    assert max(abs(v) for v in vals) < 1e-9
    rs2 = run_compute(load_config(json.dumps(
        {"surface": {"kind": "flat_torus", "params": {"r": 0.6}},
         "grid": {"nu": 8, "nv": 8}, "invariants": ["normII2"]})))
    assert abs(rs2.records[0]["normII2@alpha=1"] - 625.0 / 288.0) < 1e-10


def test_csv_emission_stable():
    cfg = load_config(json.dumps(SMALL))
    a = results_to_csv(run_compute(cfg))
    b = results_to_csv(run_compute(cfg))
    assert a == b
    header = a.splitlines()[1].split(",")
    assert header[:2] == ["u1", "u2"]


def test_check_tolerance_override():
    cfg = load_config(json.dumps(
        {"tolerances": {"equivariance/congruence_map": 1e-30}}))
    rep = run_check("equivariance", cfg)
    assert not rep["passed"]
    with pytest.raises(ConfigError):
        run_check("no-such-suite")


def test_seed_transform_parsing():
    assert parse_seed_transform(None) is None
    L = parse_seed_transform("boost:2,0.5")
    assert L.m[0, 0] == np.cosh(0.5)
    parse_seed_transform("rotation:1,3,0.2")
    with pytest.raises(ConfigError):
        parse_seed_transform("twist:1")
    with pytest.raises(ConfigError):
        parse_seed_transform("boost:abc")


def test_catalog_contents():
    cat = catalog_listing()
    assert "willmore: order 3" in cat["invariants"]
    assert "dlap_willmore: order 5" in cat["invariants"]
    assert any(s.startswith("clifford") for s in cat["surfaces"])
    assert any(s.startswith("flat_torus") for s in cat["surfaces"])


# -- CLI --------------------------------------------------------------

def test_cli_compute_deterministic(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(SMALL))
    assert main(["compute", "--config", str(cfg), "--format", "csv"]) == 0
    first = capsys.readouterr().out
    assert main(["compute", "--config", str(cfg), "--format", "csv"]) == 0
    assert capsys.readouterr().out == first
    assert first.startswith("# fingerprint=")


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"grid": {"nu": 4}}')
    assert main(["compute", "--config", str(bad)]) == 2
    missing = tmp_path / "nope.json"
    assert main(["compute", "--config", str(missing)]) == 2
    capsys.readouterr()


def test_cli_check_failure_exit(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(
        {"tolerances": {"equivariance/congruence_map": 1e-30}}))
    assert main(["check", "--suite", "equivariance",
                 "--config", str(cfg)]) == 1
    capsys.readouterr()


def test_cli_reconstruct_perturbed_data_exit_5(tmp_path, capsys):
    from confsurf.reconstruction import ConformalData
    from confsurf.surfaces import catalog_surface, ConformalFactor
    data = ConformalData.from_chart(catalog_surface("clifford"),
                                    ConformalFactor.constant(1.0),
                                    n1=16, n2=16)
    pert = data.perturbed("OmegaStar", 1e-2, (0, 1))
    path = tmp_path / "d.json"
    path.write_text(pert.to_json())
    assert main(["reconstruct", "--data", str(path)]) == 5
    capsys.readouterr()


def test_cli_catalog(capsys):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "willmore: order 3" in out and "dlap_willmore: order 5" in out


# -- HTTP service -----------------------------------------------------

@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_api_health_and_catalog(client):
    assert client.get("/health").json() == {"status": "ok"}
    assert "willmore: order 3" in client.get("/catalog").json()["invariants"]


def test_api_compute(client):
    r = client.post("/compute", json=SMALL)
    assert r.status_code == 200
    doc = r.json()
    assert len(doc["records"]) == 64
    assert doc["fingerprint"] == RunConfig.model_validate(SMALL).fingerprint()


def test_api_check_and_errors(client):
    r = client.post("/check", json={"suite": "equivariance"})
    assert r.status_code == 200 and r.json()["passed"]
    r = client.post("/check", json={"suite": "nope"})
    assert r.status_code == 422 and r.json()["detail"]["exit_code"] == 2


def test_api_reconstruct(client):
    r = client.post("/reconstruct", json={
        "config": {"surface": {"kind": "clifford"},
                   "grid": {"nu": 8, "nv": 8}}})
    assert r.status_code == 200
    doc = r.json()
    assert doc["gram_drift"] < 1e-10
    assert doc["comparison"]["max_deviation"] < 1e-9
