"""Smoke tests for the python bindings."""

import json
from fractions import Fraction

import pytest

import k3genus

D1_SPEC = json.dumps({"D": 1, "basis": [["1", "0"], ["0", "1"]]})
D2_SPEC = json.dumps(
    {
        "D": 2,
        "basis": [
            ["1", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ],
    }
)
K3_MANIFOLD = json.dumps({"D": 2, "chern_numbers": {"c2": 24}})


def test_theta_series_text():
    lines = k3genus.theta_series_text(3, "2").strip().splitlines()
    assert lines[0] == "0/1 0/1 1/1"
    assert "1/2 1/1 1/1" in lines


def test_eta_leading_term():
    assert k3genus.eta_series_text("2").splitlines()[0] == "1/24 0/1 1/1"


def test_narain_check():
    report = json.loads(k3genus.narain_check_json(D1_SPEC))
    assert report["even"] and report["unimodular"]
    assert report["rank"] == 4


def test_lattice_sum_terms():
    terms = {(q, qb): Fraction(c) for q, qb, c in k3genus.lattice_sum_terms(D1_SPEC, "1")}
    assert terms[("0", "0")] == 1
    assert terms[("1/4", "1/4")] == 8


def test_elliptic_genus_q0_row():
    terms = {
        (q, y): Fraction(c)
        for q, y, c in k3genus.elliptic_genus_terms(D2_SPEC, True, "2")
    }
    assert terms[("0", "-1")] == 2
    assert terms[("0", "0")] == 20
    assert terms[("0", "1")] == 2


def test_genus_routes_agree():
    cft = k3genus.elliptic_genus_terms(D2_SPEC, True, "3")
    closed = k3genus.k3_elliptic_genus_terms("3")
    geometric = k3genus.geometric_genus_terms(K3_MANIFOLD, "3")
    assert cft == closed == geometric


def test_toroidal_genus_vanishes():
    assert k3genus.elliptic_genus_terms(D1_SPEC, False, "3") == []


def test_spectral_flow():
    detail = k3genus.check_spectral_flow(D1_SPEC, False, "2")
    assert "exact" in detail


def test_todd():
    assert "c1 1/2" in k3genus.todd_text(2).splitlines()


def test_kummer_report():
    report = json.loads(k3genus.kummer_report_json(D2_SPEC))
    assert report["verdict"] == "K3"
    assert report["fixed_point_count"] == 16


def test_twisted_ground_states():
    assert k3genus.twisted_ground_state_count(2) == 16


def test_errors_are_typed():
    with pytest.raises(k3genus.K3GenusError):
        k3genus.narain_check_json("{}")
