"""Built-in invariant suites: determinism and full-pass behavior."""

from symgeo.jsonio import dumps
from symgeo.selftest import run_selftest

EXPECTED_SUITES = [
    "kashiwara_cocycle", "wall_kashiwara", "arnold_kashiwara",
    "transvection_invariance", "leray_sum", "mp1_associativity",
    "loop_degree", "spencer_exact", "pde_dims", "max_isotropic",
    "orthogonal_laws", "witt_ring", "bordism_table", "scan_circle",
]


def test_quick_run_passes_and_is_deterministic():
    a = run_selftest(seed=0, quick=True)
    b = run_selftest(seed=0, quick=True)
    assert a == b
    assert dumps(a).encode() == dumps(b).encode()
    assert a["all_passed"] and a["failures"] == []
    assert a["quick"] is True and a["seed"] == 0


def test_suite_roster_is_stable():
    rep = run_selftest(seed=0, quick=True)
    assert [s["name"] for s in rep["suites"]] == EXPECTED_SUITES
    for s in rep["suites"]:
        assert s["passed"] and s["cases"] >= 1


def test_other_seeds_pass():
    rep = run_selftest(seed=7, quick=True)
    assert rep["all_passed"]
    assert rep["seed"] == 7


def test_seed_changes_case_material_not_outcome():
    # reports for different seeds agree on the roster, disagree on details
    a = run_selftest(seed=0, quick=True)
    b = run_selftest(seed=1, quick=True)
    assert [s["name"] for s in a["suites"]] == [s["name"] for s in b["suites"]]
    assert a != b
