import json

import pytest

import carpetlab as cl


def test_slit_counts():
    assert cl.gen_Q(0, 1 / 16).slit_count == 0
    assert cl.gen_Q(1, 1 / 16).slit_count == 1
    assert cl.gen_Q(3, 1 / 64).slit_count == 21


def test_slit_doubling():
    mesh = cl.gen_Q(1, 1 / 64)
    space = mesh.space
    left = right = None
    for v in range(len(space)):
        if space.position(v) == (0.5, 0.5):
            if left is None:
                left = v
            else:
                right = v
    assert left is not None and right is not None
    assert abs(cl.shortest_dist(space, left, right) - 0.5) <= 2 / 64


def test_resolution_is_enforced():
    with pytest.raises(ValueError):
        cl.gen_Q(3, 1 / 16)


def test_constants():
    circle = cl.gen_round_circle(256, path=True)
    assert cl.llc1_constant(circle, samples=20)["value"] == 1.0
    assert cl.allc_constant(circle, samples=20)["value"] == "fail"
    ring = cl.gen_round_circle(64)
    assert abs(cl.quasicircle_constant(ring, "circle")["value"] - 1.0) <= 0.05
    fit = cl.ahlfors_fit(cl.gen_Q(0, 1 / 64).space, 2.0, samples=32, r_min=1 / 16, r_max=0.5)
    assert 1.9 <= fit["value"] <= 2.1
    assert len(fit["series"]) >= 2


def test_boundary():
    mesh = cl.gen_Q(2, 1 / 64)
    assert cl.boundary_component_count(mesh.space) == 6
    assert cl.end_count(mesh.space) == 6
    assert cl.rank(mesh) == 0
    assert cl.rank(cl.gen_Q_inf(2, 1 / 64)) == 1


def test_gluing():
    rep = cl.two_squares_comparison()
    assert rep["pass"]
    assert 0.5 <= rep["min_ratio"] <= rep["max_ratio"] <= 1.0


def test_mesh_json_round_trip():
    mesh = cl.gen_Q(1, 1 / 16)
    text = mesh.to_json()
    back = cl.mesh_from_json(text)
    assert len(back.space) == len(mesh.space)
    assert json.loads(text)["h"] == 1 / 16


def test_verify():
    manifest = {"seed": 2, "entries": [
        {"construction": {"family": "Q", "gen": 1, "res": 4}, "check": "slit_count",
         "expected": 1, "tolerance": "absolute"}]}
    csv, status = cl.verify(json.dumps(manifest), threads=1)
    assert status == 0
    assert csv.splitlines()[0].startswith("construction,check,seed,value")
    assert len(csv.splitlines()) == 2
    with pytest.raises(ValueError):
        cl.verify(json.dumps({"entries": [{"construction": {"family": "Q", "gen": 1, "res": 4},
                                           "check": "bogus"}]}))
