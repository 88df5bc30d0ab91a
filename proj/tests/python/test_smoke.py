import math
import sys

import numpy as np

import projglue


def test_cusp_dims():
    d = projglue.cusp_dims(0.0, 1.0)
    assert (d["h0"], d["z1"], d["b1"], d["h1"]) == (3, 18, 12, 6)


def test_cohomology_json_input():
    spec = {
        "generators": ["g1", "g2"],
        "relators": [[["g1", 1], ["g2", 1], ["g1", -1], ["g2", -1]]],
        "matrices": {
            "g1": np.diag([2.0, 0.5, 1.0, 1.0]).tolist(),
            "g2": np.diag([1.0, 3.0, 1.0 / 3.0, 1.0]).tolist(),
        },
    }
    d = projglue.cohomology_dims(spec)
    assert d["h1"] == d["z1"] - d["b1"]
    assert d["b1"] + d["h0"] == 15


def test_slice():
    g1, g2 = projglue.phi_generators(0.2, -0.1, 0.3, 1.1)
    assert np.linalg.norm(g1 @ g2 - g2 @ g1) < 1e-10
    ev = projglue.phi_eigenvalues(0.5, 0.2, 0.1, 0.9, 2, -1)
    assert ev[0] == 1.0
    assert projglue.slice_transversality(0.0, 1.0)["pass"]
    assert projglue.bivector_check()["pass"]
    assert projglue.pitfall_demo()["pass"]


def test_triangle_and_hex():
    tiles = projglue.orbit_tiles(0.75, 4)
    assert len(tiles) == 1 + 3 * 4 * 5 // 2
    assert tiles[0]["word"] == "e"
    assert projglue.tiling_svg(0.75, 3).startswith("<svg")
    w = projglue.find_q_isometries([[5, -5], [5, 5]], [[8, 0], [0, 4]])
    assert any(x["factor"] == "4/5" and x["B"] == [[1, 1], [0, 1]] for x in w)


def test_census_and_gluing():
    plans = projglue.verify_table2()
    assert len(plans) == 5 and all(p["pass"] for p in plans)
    m1, m2 = projglue.boundary_rep_4d(0.3, [[3, 2], [2, 6]])
    assert projglue.middle_eigenvalue_condition(m1, m2)["holds"]
    sols = projglue.solve_matching((m1, m2), (m1, m2), np.eye(2, dtype=np.int64))
    assert sols and all(s["residual"] < 1e-7 for s in sols)
    assert projglue.synthetic_pingpong(math.exp(3.0), 3)["pass"]
    assert not projglue.synthetic_pingpong(1.05, 2)["pass"]


def test_errors_and_cli():
    try:
        projglue.htau(0.0)
    except projglue.Error as e:
        assert "undefined-basis" in str(e)
    else:
        raise AssertionError("expected an error")
    code, out, _ = projglue.run_cli("hex-match", "--a1", "[[5,-5],[5,5]]", "--a2", "[[8,0],[0,4]]")
    assert code == 0 and '"4/5"' in out


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print("ok  ", name)
            except Exception as exc:  # noqa: BLE001
                failures += 1
                print("FAIL", name, repr(exc))
    sys.exit(1 if failures else 0)
