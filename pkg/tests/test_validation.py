import collections

import pytest

from photonmodes.validation import (CheckSpec, run_suite, run_eigen_suite,
                                    run_degeneracy_suite, run_crosscheck_suite,
                                    claims_manifest, CLAIM_LIST, SUITES)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nonsense")


def test_degeneracy_suite_passes():
    rep = run_degeneracy_suite()
    assert rep.passed
    assert rep.residuals["alpha0_forbidden_max"] == 0.0


def test_crosscheck_suite():
    rep = run_crosscheck_suite()
    assert rep.passed
    assert rep.residuals["reconstruction_error_M20"] < 1e-8
    assert rep.residuals["reconstruction_error_M0"] > 0.1
    # super-exponential decay of the truncation tail past m > alpha rho
    errs = [rep.residuals[f"error_M{M}"] for M in (6, 10, 14, 20)]
    assert errs == sorted(errs, reverse=True)


def test_small_eigen_suite_each_family():
    spec = CheckSpec("t", n_labels=4)
    for family in ("plane", "cylindrical", "spherical"):
        rep = run_eigen_suite(family, spec)
        assert rep.passed, rep.residuals


def test_reports_deterministic_at_fixed_seed():
    a = run_degeneracy_suite(CheckSpec("d", seed=7))
    b = run_degeneracy_suite(CheckSpec("d", seed=7))
    assert a.canonical_json() == b.canonical_json()
    r1 = run_eigen_suite("cylindrical", CheckSpec("e", seed=7, n_labels=3))
    r2 = run_eigen_suite("cylindrical", CheckSpec("e", seed=7, n_labels=3))
    assert r1.canonical_json() == r2.canonical_json()
    r3 = run_eigen_suite("cylindrical", CheckSpec("e", seed=8, n_labels=3))
    assert r1.labels != r3.labels


def test_coverage_lock():
    # every claim is covered by exactly one named check, and the generated
    # manifest equals the hand-written claim list
    manifest = claims_manifest()
    counts = collections.Counter(manifest)
    assert all(v == 1 for v in counts.values())
    assert sorted(CLAIM_LIST) == manifest


def test_manifest_matches_executed_reports():
    # static manifest vs the claims actually attached to executed reports,
    # for the suites cheap enough to run here
    reports = []
    reports.extend(run_suite("degeneracy"))
    reports.extend(run_suite("crosscheck"))
    got = claims_manifest(reports)
    want = [c for c in CLAIM_LIST if c in got]
    assert sorted(want) == sorted(got)


def test_suite_names_stable():
    assert SUITES == ("eigen", "field_equations", "degeneracy", "crosscheck",
                      "algebra", "inner_product")
