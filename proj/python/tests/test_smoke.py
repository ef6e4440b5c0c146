import math

import pytest

import crncert

CHAIN = "A1 <-> A2; 1, 1\nA2 <-> A1 + A2; 1, 1\nA1 + A2 <-> A1 + A3; 1, 1\n"
MIXED = (
    "A1 <-> 2 A2; 1, 1\n"
    "2 A2 -> A1 + A2; 1\n"
    "A1 + A2 -> A2 + A3; 1\n"
    "A2 + A3 -> A1; 1\n"
)
TRIANGLE = "A1 -> A2; 1\nA2 -> A3; 1\nA3 -> A1; 1\n"
UNBALANCED = "A1 -> A2; 1\n2 A2 -> 2 A1; 1\n"


def test_analyze_chain():
    info = crncert.analyze(CHAIN)
    assert info["species"] == ["A1", "A2", "A3"]
    assert len(info["complexes"]) == 4
    assert info["reaction_count"] == 6
    assert info["linkage_classes"] == 1
    assert info["weakly_reversible"]
    assert info["deficiency"] == 0
    assert info["stoichiometric_dimension"] == 3
    assert info["complex_balanced"]


def test_analyze_unbalanced():
    info = crncert.analyze(UNBALANCED)
    assert info["deficiency"] == 1
    assert not info["weakly_reversible"]
    assert not info["complex_balanced"]
    assert info["equilibrium"] is None


def test_parse_error():
    with pytest.raises(ValueError):
        crncert.analyze("A1 -> A1; 1\n")


def test_siphons():
    sets = crncert.siphons(CHAIN)
    assert [s["species"] for s in sets] == [[1, 2], [1, 2, 3]]
    assert sets[0]["minimal"] and not sets[1]["minimal"]


def test_strata_orderings_are_permutations():
    orderings = crncert.strata(CHAIN)
    assert orderings
    for mu in orderings:
        assert sorted(mu) == [1, 2, 3, 4]


def test_certify_chain_globally_stable():
    cert = crncert.certify(CHAIN)
    assert cert["verdict"] == "GloballyStable"
    entry = cert["entries"][0]
    assert entry["siphon"] == [1, 2]
    assert entry["condition"] == "Condition2"
    assert entry["alpha"] == ["-1", "-1", "0"]
    assert sorted(map(tuple, entry["P"])) == sorted(
        [(1, -1, 0), (-1, 1, 0), (1, 0, 0), (0, 1, -1)]
    )
    assert len(cert["decomposition"]) == 3


def test_certify_mixed_inconclusive():
    cert = crncert.certify(MIXED)
    assert cert["verdict"] == "Inconclusive"
    entry = cert["entries"][0]
    assert not entry["certified"]
    assert "farkas_witness" in entry
    assert len(entry["P"]) == 7


def test_certify_unbalanced():
    assert crncert.certify(UNBALANCED)["verdict"] == "NotComplexBalanced"


def test_certify_triangle_two_dimensional():
    cert = crncert.certify(TRIANGLE)
    assert cert["verdict"] == "GloballyStable"
    assert cert["two_dimensional"]


def test_simulate_triangle_converges():
    result = crncert.simulate(TRIANGLE, t_end=50.0, tol=1e-10, x0=[1.0, 1.0, 2.0])
    assert not result["stiff_abort"]
    assert all(abs(v - 4.0 / 3) <= 1e-6 for v in result["states"][-1])
    assert result["max_lyapunov_increase"] <= 1e-8
    assert result["conservation_drift"] <= 1e-8
    assert not result["h_violations"]


def test_simulate_chain_monitors_certificate():
    result = crncert.simulate(CHAIN, t_end=30.0, tol=1e-10, seed=7)
    assert result["lyapunov"][-1] <= result["lyapunov"][0]
    assert not result["h_violations"]
    assert len(result["times"]) == len(result["states"]) == len(result["lyapunov"])


def test_roundtrip():
    canonical = crncert.roundtrip(CHAIN)
    assert crncert.roundtrip(canonical) == canonical


def test_lyapunov_values_finite():
    result = crncert.simulate(CHAIN, t_end=5.0, x0=[0.5, 2.0, 1.0])
    assert all(math.isfinite(v) for v in result["lyapunov"])
