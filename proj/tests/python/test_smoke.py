"""Smoke tests for the python bindings.

Runs either against an installed ``rsig`` package or, when RSIG_MODULE_DIR
points at a build tree, against the freshly built extension module.
"""

import math
import os
import sys
import tempfile

_mod_dir = os.environ.get("RSIG_MODULE_DIR")
if _mod_dir:
    sys.path.insert(0, _mod_dir)
    import _core as rsig
else:
    import rsig

theory = rsig.theory


def test_subcube_algebra():
    a = rsig.Subcube("01*")
    b = rsig.Subcube("*10")
    assert rsig.intersects(a, b)
    assert str(rsig.intersection(a, b)) == "010"
    assert rsig.intersection(rsig.Subcube("0**"), rsig.Subcube("1**")) is None
    assert a.dimension == 1
    assert rsig.Subcube.full(4).dimension == 4
    assert rsig.contains_point(rsig.Subcube("0*1"), rsig.Point.parse("011"))
    assert str(rsig.restrict(rsig.Subcube("0*1"), 1, False)) == "01"
    assert rsig.hamming_distance(rsig.Point.parse("000"), rsig.Point.parse("110")) == 2


def test_sampling_is_deterministic():
    model = rsig.Model.binomial(16, 0.5)
    fam1 = rsig.sample_family(model, 50, rsig.Seed(42))
    fam2 = rsig.sample_family(model, 50, rsig.Seed(42))
    assert fam1.rows() == fam2.rows()
    fam3 = rsig.sample_family(model, 50, rsig.Seed(42, stream=1))
    assert fam1.rows() != fam3.rows()
    longer = rsig.sample_family(model, 51, rsig.Seed(42))
    assert longer.rows()[:50] == fam1.rows()


def test_family_round_trip():
    fam = rsig.sample_family(rsig.Model.uniform(9, 4), 20, rsig.Seed(7))
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "family.txt")
        fam.save(path)
        loaded = rsig.Family.load(path)
    assert loaded.rows() == fam.rows()
    assert loaded.d == 9


def test_clique_and_cover_analysis():
    fam = rsig.Family(2, ["0*", "*0", "1*"])
    depth, witness = rsig.max_coverage_depth(fam)
    assert depth == 2
    assert witness in ("00", "10")
    assert rsig.clique_number(fam) == 2
    assert rsig.bron_kerbosch_max_clique(fam) == 2
    assert rsig.edges(fam) == [(0, 1), (1, 2)]
    assert rsig.is_cover(fam)
    assert rsig.uncovered_count(rsig.Family(2, ["0*"])) == 2
    # Arbitrary-precision counts survive d > 63.
    assert rsig.uncovered_count(rsig.Family(80, [])) == 2**80


def test_helly_equivalence_on_random_instances():
    for stream in range(20):
        fam = rsig.sample_family(rsig.Model.binomial(8, 0.5), 15, rsig.Seed(3, stream=stream))
        assert rsig.clique_number(fam) == rsig.bron_kerbosch_max_clique(fam)


def test_theory_values():
    assert math.isclose(theory.t_cover_binomial(0.5), math.log(4 / 3), rel_tol=1e-12)
    assert math.isclose(theory.t_ks_binomial(2, 0.0), 0.5 * math.log(2), rel_tol=1e-12)
    assert math.isclose(theory.alpha_s(0.5, 2), 4 / 7, rel_tol=1e-12)
    p = theory.alpha_s_inverse(0.5, 3)
    assert math.isclose(theory.alpha_s(p, 3), 0.5, abs_tol=1e-12)
    assert theory.f_alpha(0.5) > 0
    assert theory.lemma_a_gap(0.5, 1, 3) >= -1e-9
    regime = theory.clique_regime(0.0, rsig.Model.binomial(0, 0.5))
    assert regime == {"kind": "fixed", "s": 1}


def test_hitting_and_scan():
    hit = rsig.hitting_time(rsig.Model.binomial(10, 1.0), "cover", rsig.Seed(1), n_max=10)
    assert hit == {"n": 1, "saturated": False}
    scan = rsig.threshold_scan(
        rsig.Model.binomial(16, 0.5),
        "clique:2",
        [0.02, 0.06, 0.10, 0.14, 0.18],
        trials=80,
        seed=rsig.Seed(5),
    )
    estimates = [pt["estimate"] for pt in scan["points"]]
    assert estimates[0] < 0.5 < estimates[-1]
    assert scan["observed_midpoint"] is not None
    assert scan["monotone_ok"]


def test_quasirandomness_report():
    rep = rsig.quasirandomness_report(25, 0.2, 80, 1, rsig.Seed(9))
    assert abs(rep["mean_edge_rel_err"]) < 0.2


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"[ok]   {name}")
            except AssertionError:
                import traceback

                traceback.print_exc()
                print(f"[FAIL] {name}")
                failures += 1
    return failures


if __name__ == "__main__":
    sys.exit(main())
