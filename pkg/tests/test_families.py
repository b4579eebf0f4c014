import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entroplab.conditions import (
    check_independence,
    check_pointwise_product,
    check_support_saturation,
    check_unique_common_value,
)
from entroplab.distributions import load_distribution
from entroplab.errors import LabError, TooLarge
from entroplab.families import (
    _gf_mul,
    disjoint_sets_split_gap,
    extend_with_random_B,
    gen_disjoint_sets,
    gen_distinct_pairs,
    gen_field_lines,
    sample_cond2c,
    sample_random_distribution,
)
from entroplab.inequalities import entropy_split_gap, verify_theorem1, verify_theorem2

from conftest import pairs_triple

TOL = 1e-9


# ---------------------------------------------------------------------------
# distinct pairs


def test_distinct_pairs_matches_hand_built_oracle():
    for n in (2, 3, 5):
        assert gen_distinct_pairs(n) == pairs_triple(n)


def test_distinct_pairs_shape():
    d = gen_distinct_pairs(3)
    assert len(d.atoms) == 6
    assert len(d.alphabet("A")) == 3
    assert d.entropy("A") == pytest.approx(math.log2(3), abs=TOL)


def test_distinct_pairs_degenerate():
    d = gen_distinct_pairs(2)
    assert len(d.atoms) == 2
    assert d.entropy("A") == 0.0
    assert entropy_split_gap(d).gap == pytest.approx(0.0, abs=TOL)


@pytest.mark.parametrize("bad", [1, 0, -3, "5"])
def test_distinct_pairs_rejects_bad_n(bad):
    with pytest.raises(LabError) as err:
        gen_distinct_pairs(bad)
    assert err.value.code == "BAD_PARAM"


# ---------------------------------------------------------------------------
# disjoint sets


def test_disjoint_sets_reduces_to_distinct_pairs_at_k_one():
    for n in (2, 3, 4, 6):
        ds = gen_disjoint_sets(n, 1)
        strip = {"{%d}" % i: str(i) for i in range(1, n + 1)}
        renamed = ds.rename_symbols("X", strip).rename_symbols("Y", strip)
        assert renamed == gen_distinct_pairs(n)


def test_disjoint_sets_entropies_match_closed_forms():
    for n, k in ((4, 1), (6, 2), (9, 3), (20, 2)):
        d = gen_disjoint_sets(n, k)
        assert len(d.atoms) == math.comb(n, k) * math.comb(n - k, k)
        assert d.entropy("A") == pytest.approx(math.log2(math.comb(n, 2 * k)), abs=TOL)
        assert d.cond_entropy("A", "X") == pytest.approx(
            math.log2(math.comb(n - k, k)), abs=TOL
        )
        assert d.cond_entropy("A", "Y") == pytest.approx(
            math.log2(math.comb(n - k, k)), abs=TOL
        )


def test_disjoint_sets_uniform_masses():
    d = gen_disjoint_sets(6, 2)
    assert set(d.atoms.values()) == {Fraction(1, 90)}
    assert len(d.alphabet("A")) == 15


def test_disjoint_sets_gap_matches_enumeration():
    for n, k in ((5, 2), (8, 2), (20, 2)):
        d = gen_disjoint_sets(n, k)
        assert entropy_split_gap(d).gap == pytest.approx(disjoint_sets_split_gap(n, k), abs=TOL)


def test_disjoint_sets_gap_limit():
    # the violation approaches log2 C(2k,k) from below as n grows
    assert disjoint_sets_split_gap(20, 2) == pytest.approx(-2.2724947350828604, abs=1e-9)
    assert abs(disjoint_sets_split_gap(200, 2)) == pytest.approx(math.log2(6), abs=0.05)
    assert abs(disjoint_sets_split_gap(200, 2)) < math.log2(6)


def test_disjoint_sets_refuses_huge_enumerations():
    with pytest.raises(TooLarge):
        gen_disjoint_sets(200, 2)


@pytest.mark.parametrize("n,k", [(3, 2), (4, 0), (5, 3), (2, 2)])
def test_disjoint_sets_rejects_bad_params(n, k):
    with pytest.raises(LabError) as err:
        gen_disjoint_sets(n, k)
    assert err.value.code == "BAD_PARAM"


# ---------------------------------------------------------------------------
# field lines


def test_gf_multiplication_table_for_four_elements():
    # x^2 + x + 1: (x)*(x) = x+1, (x)*(x+1) = 1, (x+1)*(x+1) = x
    assert _gf_mul(2, 2, 2) == 3
    assert _gf_mul(2, 3, 2) == 1
    assert _gf_mul(3, 3, 2) == 2
    assert _gf_mul(0, 3, 2) == 0
    assert _gf_mul(1, 3, 2) == 3


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.data())
def test_gf_field_axioms(k_exp, data):
    q = 1 << k_exp
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    c = data.draw(st.integers(0, q - 1))
    assert _gf_mul(a, b, k_exp) == _gf_mul(b, a, k_exp)
    assert _gf_mul(a, _gf_mul(b, c, k_exp), k_exp) == _gf_mul(_gf_mul(a, b, k_exp), c, k_exp)
    assert _gf_mul(a, b ^ c, k_exp) == _gf_mul(a, b, k_exp) ^ _gf_mul(a, c, k_exp)
    if a and b:
        assert _gf_mul(a, b, k_exp) != 0
    assert _gf_mul(a, 1, k_exp) == a


def test_field_lines_exact_marginals_q4():
    d = gen_field_lines(2, Fraction(1, 2))
    assert set(d.table(("A",)).values()) == {Fraction(1, 16)}
    assert set(d.table(("A", "X")).values()) == {Fraction(1, 32)}
    assert set(d.table(("A", "Y")).values()) == {Fraction(1, 32)}
    assert set(d.table(("X",)).values()) == {Fraction(1, 8)}
    assert set(d.table(("Y",)).values()) == {Fraction(1, 8)}


def test_field_lines_marginals_hold_for_any_parameters():
    for k_exp, delta in ((2, 0), (2, Fraction(-1, 3)), (3, Fraction(1, 2)), (3, Fraction(7, 8))):
        d = gen_field_lines(k_exp, delta)
        q = 1 << k_exp
        assert set(d.table(("A", "X")).values()) == {Fraction(2, q**3)}
        assert set(d.table(("X",)).values()) == {Fraction(2, q**2)}
        assert set(d.table(("A",)).values()) == {Fraction(1, q**2)}


def test_field_lines_support_saturation_and_product_equality():
    d = gen_field_lines(2, Fraction(1, 2))
    assert check_support_saturation(d).holds
    report = check_pointwise_product(d)
    assert report.holds
    assert report.equality
    assert report.max_ratio == 1


def test_field_lines_correlation_is_tunable():
    coupled = gen_field_lines(2, Fraction(1, 2))
    assert coupled.mutual_info("X", "Y") == pytest.approx(0.18872187554086717, abs=TOL)
    flat = gen_field_lines(2, 0)
    assert check_independence(flat, "X", "Y").holds
    assert flat.mutual_info("X", "Y") == pytest.approx(0.0, abs=TOL)


def test_field_lines_uniform_coupling_masses():
    flat = gen_field_lines(2, 0)
    assert set(flat.atoms.values()) == {Fraction(1, 64)}
    assert set(flat.table(("X", "Y")).values()) == {Fraction(1, 64)}


def test_field_lines_satisfy_unique_common_value():
    # the abscissa halves are disjoint, so exactly one line passes through
    # any (x, y) grid pair; the split is tight: H(A|X)+H(A|Y) = H(A)
    for delta in (0, Fraction(1, 2)):
        d = gen_field_lines(2, delta)
        assert check_unique_common_value(d).holds
        cert = verify_theorem1(d)
        assert cert.status == "PASS"
        assert cert.gap.gap == pytest.approx(0.0, abs=TOL)


@pytest.mark.parametrize("k_exp,delta", [(1, 0), (0, 0), (2, 1), (2, -1), (2, "3/2")])
def test_field_lines_rejects_bad_params(k_exp, delta):
    with pytest.raises(LabError) as err:
        gen_field_lines(k_exp, delta)
    assert err.value.code == "BAD_PARAM"


def test_field_lines_refuses_huge_fields():
    with pytest.raises(TooLarge):
        gen_field_lines(6, 0)


# ---------------------------------------------------------------------------
# samplers


def test_sample_random_distribution_is_deterministic():
    a = sample_random_distribution(("A", "B", "X", "Y"), (2, 2, 2, 2), seed=7)
    b = sample_random_distribution(("A", "B", "X", "Y"), (2, 2, 2, 2), seed=7)
    assert a == b
    assert a.fingerprint() == b.fingerprint()
    assert len(a.atoms) == 16
    assert a != sample_random_distribution(("A", "B", "X", "Y"), (2, 2, 2, 2), seed=8)


def test_sample_random_distribution_single_atom():
    d = sample_random_distribution(("A", "B", "X", "Y"), (1, 1, 1, 1), seed=1)
    assert d.atoms == {("0", "0", "0", "0"): Fraction(1)}


def test_sample_random_distribution_round_trips():
    for seed in range(100):
        d = sample_random_distribution(("A", "X", "Y"), (3, 2, 2), seed=seed)
        assert load_distribution(d.dumps()) == d


def test_sample_random_distribution_rejects_bad_sizes():
    with pytest.raises(LabError):
        sample_random_distribution(("A", "B"), (2,), seed=0)
    with pytest.raises(LabError):
        sample_random_distribution(("A",), (0,), seed=0)
    with pytest.raises(LabError):
        sample_random_distribution(("A", "B"), (1000, 1000), seed=0)


def test_sample_cond2c_support_is_admissible():
    for seed in range(200):
        d = sample_cond2c(seed, (4, 2, 4, 4))
        assert check_unique_common_value(d).holds


def test_sample_cond2c_feeds_theorem1():
    for seed in range(50):
        cert = verify_theorem1(sample_cond2c(seed, (3, 2, 3, 3)))
        assert cert.status == "PASS"


def test_sample_cond2c_deterministic():
    assert sample_cond2c(11, (4, 2, 4, 4)) == sample_cond2c(11, (4, 2, 4, 4))


def test_sample_cond2c_single_color_is_trivially_admissible():
    d = sample_cond2c(3, (1, 2, 3, 3))
    assert check_unique_common_value(d).holds
    assert d.alphabet("A") == ["0"]


def test_extend_with_random_b_preserves_marginal():
    base = gen_field_lines(2, Fraction(1, 2))
    ext = extend_with_random_B(base, 3, seed=5)
    assert ext.variables == ("A", "B", "X", "Y")
    assert ext.marginal(("A", "X", "Y")) == base
    assert extend_with_random_B(base, 3, seed=5) == ext


def test_extend_with_constant_b():
    base = gen_distinct_pairs(3)
    ext = extend_with_random_B(base, 1, seed=0)
    assert ext.alphabet("B") == ["0"]
    assert ext.marginal(("A", "X", "Y")) == base


def test_extend_with_random_b_rejects_existing_b():
    d = sample_random_distribution(("A", "B", "X"), (2, 2, 2), seed=0)
    with pytest.raises(LabError):
        extend_with_random_B(d, 2, seed=0)
    with pytest.raises(LabError):
        extend_with_random_B(gen_distinct_pairs(2), 0, seed=0)


def test_field_lines_extensions_pass_theorem2():
    base = gen_field_lines(2, Fraction(1, 2))
    for seed in range(20):
        cert = verify_theorem2(extend_with_random_B(base, 2, seed=seed))
        assert cert.status == "PASS"
        assert cert.gap.gap >= -TOL
