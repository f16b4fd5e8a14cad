import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowcoh.cohomring import cross_validate, hilbert_function, presentation_ideal
from flowcoh.dualalgebra import FalsificationError
from flowcoh.exactpoly import Poly, parse_poly


def z(text, l=2):
    return parse_poly(text, l, "z")


def test_presentation_examples():
    assert presentation_ideal(2, 2).generators == (z("z2^2"), z("z1^2") * z("z1 + z2") ** 2)
    assert presentation_ideal(1, 3).generators == (Poly.variable(1, 0) ** 3,)
    assert presentation_ideal(2, 1).generators == (z("z2"), z("z1^2 + z1 z2"))
    assert presentation_ideal(2, 2).factored() == ["z2^2", "z1^2*(z1+z2)^2"]


def test_generator_degrees():
    for l in range(1, 5):
        for n in range(1, 4):
            gens = presentation_ideal(l, n).generators
            assert len(gens) == l
            for i, g in zip(range(l, 0, -1), gens):
                assert g.is_homogeneous() and g.degree == n * (l - i + 1)


def test_hilbert_examples():
    assert hilbert_function(presentation_ideal(2, 2)) == [1, 2, 2, 2, 1]
    for n in range(1, 6):
        assert hilbert_function(presentation_ideal(1, n)) == [1] * n
    assert hilbert_function(presentation_ideal(2, 1)) == [1, 1]


@pytest.mark.parametrize("l,n,expected", [(2, 2, [1, 2, 2, 2, 1]), (2, 1, [1, 1]), (1, 4, [1, 1, 1, 1])])
def test_cross_validate_examples(l, n, expected):
    result = cross_validate(l, n)
    assert result.ok
    assert result.hilbert == result.betti == expected


def test_cross_validate_reports_mismatch():
    # a polynomial of the wrong shape is not killed by z2^2
    with pytest.raises(FalsificationError):
        cross_validate(2, 2, v=z("z2^4", 2))


@given(st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=12, deadline=None)
def test_hilbert_symmetry_and_low_degrees(l, n):
    h = hilbert_function(presentation_ideal(l, n))
    socle = n * l * (l + 1) // 2 - l
    assert len(h) == socle + 1
    assert h == h[::-1]
    assert h[0] == 1
    if n >= 2:
        assert h[1] == l


@pytest.mark.parametrize("l,n", [(2, 3), (3, 2), (3, 3)])
def test_total_dimension_agrees(l, n):
    result = cross_validate(l, n)
    assert sum(result.hilbert) == sum(result.betti)
