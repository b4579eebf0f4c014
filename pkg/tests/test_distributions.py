import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from entroplab.distributions import (
    JointDistribution,
    build_markov_fork,
    info_report,
    load_distribution,
    log2_fraction,
)
from entroplab.errors import LabError

from conftest import (
    copied_bit,
    independent_bits,
    pairs_triple,
    random_support_distribution,
    xor_triple,
)

TOL = 1e-9


# ---------------------------------------------------------------------------
# parsing and validation


def doc_of(d):
    return json.loads(d.dumps())


def test_load_round_trip_is_fixed_point():
    d = xor_triple()
    text = d.dumps()
    again = load_distribution(text)
    assert again == d
    assert again.dumps() == text


def test_load_accepts_integer_and_string_probabilities():
    doc = {
        "variables": ["A"],
        "atoms": [
            {"values": {"A": "a"}, "p": "1/2"},
            {"values": {"A": "b"}, "p": "2/4"},
        ],
    }
    d = load_distribution(json.dumps(doc))
    assert d.atoms[("a",)] == Fraction(1, 2)
    single = load_distribution({"variables": ["A"], "atoms": [{"values": {"A": "a"}, "p": 1}]})
    assert single.atoms[("a",)] == 1


def test_load_rejects_bad_sum():
    doc = {"variables": ["A"], "atoms": [{"values": {"A": "a"}, "p": "1/3"}]}
    with pytest.raises(LabError) as err:
        load_distribution(doc)
    assert err.value.code == "SUM_NOT_ONE"


def test_load_rejects_duplicate_atom():
    doc = {
        "variables": ["A"],
        "atoms": [
            {"values": {"A": "a"}, "p": "1/2"},
            {"values": {"A": "a"}, "p": "1/2"},
        ],
    }
    with pytest.raises(LabError) as err:
        load_distribution(doc)
    assert err.value.code == "DUPLICATE_ATOM"


def test_load_rejects_negative_mass():
    doc = {
        "variables": ["A"],
        "atoms": [
            {"values": {"A": "a"}, "p": "3/2"},
            {"values": {"A": "b"}, "p": "-1/2"},
        ],
    }
    with pytest.raises(LabError) as err:
        load_distribution(doc)
    assert err.value.code == "NEGATIVE_PROB"


def test_load_drops_zero_atoms_with_warning():
    doc = {
        "variables": ["A"],
        "atoms": [
            {"values": {"A": "a"}, "p": "1"},
            {"values": {"A": "b"}, "p": 0},
        ],
    }
    with pytest.warns(UserWarning, match="dropped 1 zero-mass"):
        d = load_distribution(doc)
    assert set(d.atoms) == {("a",)}


@pytest.mark.parametrize(
    "doc",
    [
        "not json at all {",
        {"variables": ["A"]},
        {"variables": ["A"], "atoms": [{"values": {"B": "b"}, "p": 1}]},
        {"variables": ["A"], "atoms": [{"values": {"A": "a"}, "p": 0.5}]},
        {"variables": ["A"], "atoms": [{"values": {"A": "a"}, "p": 1}], "extra": 1},
        {"variables": ["A", "A"], "atoms": [{"values": {"A": "a"}, "p": 1}]},
    ],
)
def test_load_rejects_malformed_documents(doc):
    with pytest.raises(LabError) as err:
        load_distribution(doc)
    assert err.value.code in {"SCHEMA_ERROR"}


def test_emission_is_canonical_and_sorted():
    atoms = {("b", "1"): Fraction(1, 2), ("a", "2"): Fraction(2, 4)}
    d = JointDistribution(("A", "X"), atoms)
    doc = doc_of(d)
    assert [r["values"]["A"] for r in doc["atoms"]] == ["a", "b"]
    assert doc["atoms"][0]["p"] == "1/2"


# ---------------------------------------------------------------------------
# marginal / condition


def test_marginal_merges_atoms_exactly():
    d = pairs_triple(3)
    a = d.marginal("A")
    assert a.atoms == {
        ("{1,2}",): Fraction(1, 3),
        ("{1,3}",): Fraction(1, 3),
        ("{2,3}",): Fraction(1, 3),
    }


def test_marginal_of_all_variables_is_identity():
    d = xor_triple()
    assert d.marginal(("A", "X", "Y")) == d


def test_marginal_respects_requested_order():
    d = xor_triple()
    m = d.marginal(("X", "A"))
    assert m.variables == ("X", "A")
    assert m.atoms[("0", "0")] == Fraction(1, 4)


def test_marginal_unknown_variable():
    with pytest.raises(LabError) as err:
        xor_triple().marginal("Q")
    assert err.value.code == "UNKNOWN_VARIABLE"


def test_condition_on_constraint_renormalizes():
    d = pairs_triple(3)
    c = d.condition({"X": "1"})
    assert sum(c.atoms.values()) == 1
    assert c.atoms[("{1,2}", "1", "2")] == Fraction(1, 2)
    assert c.atoms[("{1,3}", "1", "3")] == Fraction(1, 2)


def test_condition_on_atom_set_and_whole_space():
    d = xor_triple()
    assert d.condition(set(d.atoms)) == d
    half = d.condition([("0", "0", "0"), ("0", "1", "1")])
    assert half.atoms[("0", "0", "0")] == Fraction(1, 2)


def test_condition_zero_mass_event():
    with pytest.raises(LabError) as err:
        xor_triple().condition({"X": "7"})
    assert err.value.code == "ZERO_MASS_EVENT"


# ---------------------------------------------------------------------------
# entropies and mutual information


def test_xor_entropies():
    d = xor_triple()
    assert d.entropy("A") == pytest.approx(1.0, abs=TOL)
    assert d.entropy(("X", "Y")) == pytest.approx(2.0, abs=TOL)
    assert d.entropy(("A", "X", "Y")) == pytest.approx(2.0, abs=TOL)
    assert d.entropy(()) == 0.0
    assert d.cond_entropy("A", ("X", "Y")) == pytest.approx(0.0, abs=TOL)
    assert d.cond_entropy("A", "X") == pytest.approx(1.0, abs=TOL)


def test_pairs_triple_entropies_match_closed_forms():
    for n in (3, 5):
        d = pairs_triple(n)
        assert d.entropy("A") == pytest.approx(math.log2(math.comb(n, 2)), abs=TOL)
        assert d.cond_entropy("A", "X") == pytest.approx(math.log2(n - 1), abs=TOL)


def test_xor_mutual_informations():
    d = xor_triple()
    assert d.mutual_info("X", "Y") == pytest.approx(0.0, abs=TOL)
    assert d.mutual_info("X", "Y", "A") == pytest.approx(1.0, abs=TOL)
    assert d.mutual_info(("X", "Y"), "A") == pytest.approx(1.0, abs=TOL)
    assert d.triple_mutual_info("X", "Y", "A") == pytest.approx(-1.0, abs=TOL)


def test_copied_bit_triple_information_is_positive():
    d = copied_bit()
    assert d.triple_mutual_info("X", "Y", "A") == pytest.approx(1.0, abs=TOL)


def test_overlapping_sets_rejected():
    d = xor_triple()
    with pytest.raises(LabError) as err:
        d.cond_entropy("A", ("A", "X"))
    assert err.value.code == "OVERLAPPING_SETS"
    with pytest.raises(LabError):
        d.mutual_info(("A", "X"), "X")


def test_entropy_of_deterministic_variable_is_zero():
    d = JointDistribution(("A",), {("a",): Fraction(1)})
    assert d.entropy("A") == 0.0


def test_triple_information_expressions_agree_on_fuzzed_distributions():
    rng = random.Random(7)
    for _ in range(1000):
        d = random_support_distribution(rng, ("A", "X", "Y"), max_size=3)
        i1 = d.mutual_info("X", "Y") - d.mutual_info("X", "Y", "A")
        i2 = d.mutual_info("A", "X") - d.mutual_info("A", "X", "Y")
        i3 = d.mutual_info("A", "Y") - d.mutual_info("A", "Y", "X")
        i4 = (
            d.entropy("A")
            + d.entropy("X")
            + d.entropy("Y")
            - d.entropy(("A", "X"))
            - d.entropy(("A", "Y"))
            - d.entropy(("X", "Y"))
            + d.entropy(("A", "X", "Y"))
        )
        reference = d.triple_mutual_info("X", "Y", "A")
        for other in (i1, i2, i3, i4):
            assert other == pytest.approx(reference, abs=TOL)


@st.composite
def small_distributions(draw):
    sizes = draw(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)))
    cells = [
        (str(a), str(x), str(y))
        for a in range(sizes[0])
        for x in range(sizes[1])
        for y in range(sizes[2])
    ]
    support = draw(st.sets(st.sampled_from(cells), min_size=1))
    nums = draw(
        st.lists(st.integers(1, 50), min_size=len(support), max_size=len(support))
    )
    total = sum(nums)
    return JointDistribution(
        ("A", "X", "Y"),
        {cell: Fraction(n, total) for cell, n in zip(sorted(support), nums)},
    )


@settings(max_examples=100, deadline=None)
@given(small_distributions())
def test_conditioning_reduces_entropy_on_average(d):
    assert d.cond_entropy("A", ("X", "Y")) <= d.entropy("A") + TOL
    assert d.mutual_info("A", ("X", "Y")) >= -TOL


@settings(max_examples=100, deadline=None)
@given(small_distributions())
def test_marginal_masses_stay_exact(d):
    for variables in (("A",), ("A", "X"), ("X", "Y")):
        m = d.marginal(variables)
        assert sum(m.atoms.values()) == 1
        assert all(mass > 0 for mass in m.atoms.values())


# ---------------------------------------------------------------------------
# Markov fork


def test_fork_of_xor_fills_the_cube():
    f = build_markov_fork(xor_triple())
    assert len(f.atoms) == 8
    assert all(mass == Fraction(1, 8) for mass in f.atoms.values())


def test_fork_preserves_group_marginals_exactly():
    rng = random.Random(11)
    for _ in range(50):
        d = random_support_distribution(rng, ("A", "B", "X", "Y"), max_size=3)
        f = build_markov_fork(d)
        assert f.table(("A", "B", "X")) == d.table(("A", "B", "X"))
        assert f.table(("A", "B", "Y")) == d.table(("A", "B", "Y"))
        assert set(d.atoms) <= set(f.atoms)


def test_fork_is_idempotent_and_fixes_conditionally_independent_inputs():
    rng = random.Random(12)
    for _ in range(25):
        d = random_support_distribution(rng, ("A", "X", "Y"), max_size=3)
        f = build_markov_fork(d)
        assert build_markov_fork(f) == f


def test_fork_makes_x_y_independent_given_group():
    d = xor_triple()
    f = build_markov_fork(d)
    assert f.mutual_info("X", "Y", "A") == pytest.approx(0.0, abs=TOL)


def test_fork_rejects_unexpected_variables():
    d = JointDistribution(("A", "Q"), {("a", "q"): Fraction(1)})
    with pytest.raises(LabError) as err:
        build_markov_fork(d)
    assert err.value.code == "SCHEMA_ERROR"


# ---------------------------------------------------------------------------
# info report


def test_info_report_for_xor():
    r = info_report(xor_triple())
    assert r["I(X:Y)"] == pytest.approx(0.0, abs=TOL)
    assert r["I(X:Y|A)"] == pytest.approx(1.0, abs=TOL)
    assert r["I(X:Y:A)"] == pytest.approx(-1.0, abs=TOL)
    assert r["H(B)"] == 0.0
    assert r["I(A:B)"] == pytest.approx(0.0, abs=TOL)


def test_info_report_single_atom_is_all_zero():
    d = JointDistribution(("A", "X", "Y"), {("a", "x", "y"): Fraction(1)})
    r = info_report(d)
    assert all(abs(v) <= TOL for v in r.measures.values())


def test_independent_bits_report():
    r = info_report(independent_bits())
    assert r["H(A)"] == pytest.approx(1.0, abs=TOL)
    assert r["I(A:B|X)"] == pytest.approx(0.0, abs=TOL)


# ---------------------------------------------------------------------------
# misc


def test_log2_fraction_sign_matches_exact_comparison():
    assert log2_fraction(Fraction(1)) == 0.0
    assert log2_fraction(Fraction(2)) == 1.0
    assert log2_fraction(Fraction(1, 2)) == -1.0
    huge = Fraction(2**200 + 1, 2**200)
    assert log2_fraction(huge) > 0.0
    tiny = Fraction(2**200, 2**200 + 1)
    assert log2_fraction(tiny) < 0.0


def test_fingerprint_depends_on_content():
    assert xor_triple().fingerprint() == xor_triple().fingerprint()
    assert xor_triple().fingerprint() != copied_bit().fingerprint()


def test_immutability_guard():
    d = xor_triple()
    with pytest.raises(AttributeError):
        d.variables = ("Z",)


def test_with_constant_keeps_role_order():
    d = xor_triple().with_constant("B")
    assert d.variables == ("A", "B", "X", "Y")
    assert d.entropy("B") == 0.0
