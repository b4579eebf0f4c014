"""Shared distribution builders used across the test modules.

Builders here construct atoms by hand, independently of the generators in
the package, so expected values in the tests come from closed forms rather
than from the code under test.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from entroplab.distributions import JointDistribution


def xor_triple():
    """A = X xor Y for independent uniform bits X, Y; four atoms of mass 1/4."""
    atoms = {}
    for x in (0, 1):
        for y in (0, 1):
            atoms[(str(x ^ y), str(x), str(y))] = Fraction(1, 4)
    return JointDistribution(("A", "X", "Y"), atoms)


def copied_bit():
    """A = X = Y, a single uniform bit copied three times."""
    atoms = {(b, b, b): Fraction(1, 2) for b in ("0", "1")}
    return JointDistribution(("A", "X", "Y"), atoms)


def independent_bits(variables=("A", "B", "X", "Y")):
    n = len(variables)
    atoms = {}
    for i in range(2**n):
        bits = tuple(str((i >> j) & 1) for j in range(n))
        atoms[bits] = Fraction(1, 2**n)
    return JointDistribution(variables, atoms)


def pairs_triple(n):
    """Uniform ordered pair of distinct values with A = the unordered pair,
    built directly from itertools-free loops (mirrors no generator code)."""
    atoms = {}
    mass = Fraction(1, n * (n - 1))
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x != y:
                a = "{%d,%d}" % (min(x, y), max(x, y))
                atoms[(a, str(x), str(y))] = mass
    return JointDistribution(("A", "X", "Y"), atoms)


def random_support_distribution(rng, variables=("A", "B", "X", "Y"), max_size=3):
    """Random alphabets, random non-empty support, random exact masses."""
    sizes = [rng.randint(1, max_size) for _ in variables]
    cells = [()]
    for size in sizes:
        cells = [c + (str(v),) for c in cells for v in range(size)]
    count = rng.randint(1, len(cells))
    support = rng.sample(cells, count)
    nums = [rng.randint(1, 100) for _ in support]
    total = sum(nums)
    atoms = {cell: Fraction(num, total) for cell, num in zip(support, nums)}
    return JointDistribution(variables, atoms)


@st.composite
def sparse_triples(draw, max_size=3):
    """Hypothesis strategy: random-support distributions over (A, X, Y)."""
    cells = [
        (f"a{a}", f"x{x}", f"y{y}")
        for a in range(max_size)
        for x in range(max_size)
        for y in range(max_size)
    ]
    support = draw(st.sets(st.sampled_from(cells), min_size=1, max_size=9))
    nums = draw(
        st.lists(st.integers(1, 9), min_size=len(support), max_size=len(support))
    )
    total = sum(nums)
    return JointDistribution(
        ("A", "X", "Y"),
        {cell: Fraction(n, total) for cell, n in zip(sorted(support), nums)},
    )


@pytest.fixture
def rng():
    return random.Random(20260815)
