import pytest

import titsring


def test_version_is_a_string():
    assert isinstance(titsring.__version__, str) and titsring.__version__


def test_ranks_of_z4_and_its_twin():
    assert titsring.steinberg_ranks("Z/4", 4) == [1, 1, 5, 113, 10879]
    assert titsring.steinberg_ranks("F2[e]^2", 6) == titsring.steinberg_ranks("Z/4", 6)


def test_large_ranks_are_exact_python_ints():
    assert titsring.steinberg_ranks("Z/10", 6)[6] == 40378418645294393


def test_rank_table_csv_header():
    csv = titsring.rank_table(["Z/4", "Z/6"], 2)
    assert csv.splitlines() == ["n,Z/4,Z/6", "1,1,1", "2,5,11"]


def test_grassmannian_enumeration_matches_count():
    lines = titsring.grassmannian("Z/6", 2, 1)
    assert len(lines) == titsring.grassmannian_size("Z/6", 2, 1) == 12


def test_homology_of_rank_three_complex():
    h = titsring.homology("Z/4", 3, jobs=2)
    assert h["betti"] == [0, 113]
    assert h["torsion"] == [[], []]
    assert h["f_vector"] == [56, 168]


def test_filtration_homology():
    assert titsring.homology("Z/4", 4, filtration=2)["betti"][1] == 2681


def test_apartments_span_top_homology():
    a = titsring.apartments("F2", 3)
    assert a["span_rank"] == a["top_betti"] == 8
    assert a["ut_pairing_diagonal"]


def test_orbits_on_pairs_of_points():
    assert titsring.p1_orbits("Z/8") == {"points": 12, "orbits": 4, "commutant_dim": 4}


def test_bad_spec_raises_value_error():
    with pytest.raises(ValueError, match="Z/q"):
        titsring.steinberg_ranks("Z/q", 3)


def test_budget_is_enforced():
    with pytest.raises(titsring.BudgetExceeded):
        titsring.homology("Z/4", 5, budget=1000)


def test_fast_verification_passes():
    report = titsring.verify()
    assert report["passed"] is True
    assert report["schema_version"] == 1
