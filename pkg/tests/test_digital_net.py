import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import qmc

from gausscub.digital_net import (
    CapacityError,
    DirectionNumberError,
    GeneratingMatrices,
    deinterlace,
    higher_order_sobol,
    interlace,
    load_direction_numbers,
    net_points,
    radical_inverse,
)

from oracles import van_der_corput


@pytest.mark.parametrize("j,expected", [(0, 0.0), (1, 0.5), (3, 0.75), (6, 0.375)])
def test_radical_inverse(j, expected):
    assert radical_inverse(j) == expected


@given(st.integers(0, 2**40))
def test_radical_inverse_matches_digit_oracle(j):
    assert radical_inverse(j) == van_der_corput(j)


def test_identity_gives_van_der_corput():
    G = GeneratingMatrices(np.eye(3, dtype=np.uint8)[None])
    pts = net_points(G)
    np.testing.assert_array_equal(pts[:, 0], [0, 0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875])


def test_zero_matrix_gives_origin():
    G = GeneratingMatrices(np.zeros((2, 4, 4), dtype=np.uint8))
    assert np.all(net_points(G) == 0.0)


@pytest.mark.parametrize("m", [1, 5, 12])
def test_first_coordinate_is_radical_inverse(m):
    G = load_direction_numbers(m=m, d=3)
    pts = net_points(G)
    assert len(pts) == 2**m
    np.testing.assert_array_equal(pts[:, 0], [radical_inverse(j) for j in range(2**m)])
    assert len(np.unique(pts[:, 0])) == 2**m


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        GeneratingMatrices(np.zeros((4, 4), dtype=np.uint8))
    with pytest.raises(ValueError):
        GeneratingMatrices(np.zeros((1, 65, 4), dtype=np.uint8))


# -- interlacing --------------------------------------------------------------


def test_interlace_identity():
    base = load_direction_numbers(m=6, d=4)
    out = interlace(base, 1)
    np.testing.assert_array_equal(out.matrices, base.matrices)


def test_interlace_two_ones():
    base = GeneratingMatrices(np.ones((2, 1, 1), dtype=np.uint8))
    out = interlace(base, 2)
    assert out.matrices.shape == (1, 2, 1)
    np.testing.assert_array_equal(out.matrices[0, :, 0], [1, 1])
    np.testing.assert_array_equal(net_points(out)[:, 0], [0.0, 0.75])


def test_interlace_row_layout():
    base = load_direction_numbers(m=5, d=6)
    q = 3
    out = interlace(base, q)
    for i in range(2):
        for r in range(5):
            for s in range(q):
                np.testing.assert_array_equal(
                    out.matrices[i, r * q + s], base.matrices[i * q + s, r]
                )
    assert out.n_points == base.n_points


@given(st.integers(1, 8), st.integers(1, 4), st.integers(1, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_interlace_round_trip(m, q, d, seed):
    rng = np.random.default_rng(seed)
    base = GeneratingMatrices(rng.integers(0, 2, size=(q * d, m, m), dtype=np.uint8))
    back = deinterlace(interlace(base, q), q)
    np.testing.assert_array_equal(back.matrices, base.matrices)


def test_interlace_capacity():
    base = load_direction_numbers(m=13, d=5)
    with pytest.raises(CapacityError):
        interlace(base, 5)
    truncated = interlace(base, 5, max_depth=64)
    assert truncated.depth == 64
    with pytest.raises(ValueError):
        interlace(load_direction_numbers(m=4, d=3), 2)


def test_deep_net_stays_in_unit_cube():
    pts = net_points(higher_order_sobol(13, 2, 5, max_depth=64))
    assert np.all((pts >= 0) & (pts < 1))
    assert len(np.unique(pts[:, 0])) == 2**13


# -- direction numbers ----------------------------------------------------------


def test_bundled_second_coordinate():
    pts = net_points(load_direction_numbers(m=4, d=2))
    assert pts[1, 1] == 0.5


@pytest.mark.parametrize("m,d", [(4, 2), (10, 21), (13, 8)])
def test_bundled_table_reproduces_reference_sobol(m, d):
    # the reference enumerates in Gray-code order: compare as point sets
    ref = qmc.Sobol(d, scramble=False).random_base2(m)
    ours = net_points(load_direction_numbers(m=m, d=d))
    np.testing.assert_array_equal(ours[np.lexsort(ours.T)], ref[np.lexsort(ref.T)])


def test_sobol_mean_of_product():
    pts = net_points(load_direction_numbers(m=10, d=2))
    assert abs(np.prod(pts, axis=1).mean() - 0.25) <= 2.0**-10


def test_coordinate_one_is_identity():
    G = load_direction_numbers(m=7, d=3)
    np.testing.assert_array_equal(G.matrices[0], np.eye(7, dtype=np.uint8))
    # every coordinate is upper triangular with unit diagonal
    for mat in G.matrices:
        assert np.all(np.tril(mat, -1) == 0) and np.all(np.diag(mat) == 1)


def test_empty_file_has_no_capacity():
    with pytest.raises(CapacityError):
        load_direction_numbers(io.StringIO(""), m=2, d=1)


def test_capacity_errors():
    table = io.StringIO("3 8\n2 1 0 1\n3 2 1 1 3\n")
    G = load_direction_numbers(table, m=8, d=3)
    assert G.d == 3
    with pytest.raises(CapacityError):
        load_direction_numbers(io.StringIO("3 8\n2 1 0 1\n3 2 1 1 3\n"), m=8, d=4)
    with pytest.raises(CapacityError):
        load_direction_numbers(io.StringIO("3 8\n2 1 0 1\n3 2 1 1 3\n"), m=9, d=2)
    with pytest.raises(CapacityError):
        load_direction_numbers(m=4, d=22)


@pytest.mark.parametrize(
    "text,line",
    [
        ("3 x\n", 1),
        ("3 8\n2 1 0 1\n3 2 1 1\n", 3),
        ("3 8\n2 1 0 2\n", 2),
        ("3 8\n\n2 1 0 1\n4 2 1 1 3\n", 4),
        ("3 8\n2 1 0 one\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(DirectionNumberError, match=f"line {line}:"):
        load_direction_numbers(io.StringIO(text), m=4, d=2)


def test_table_from_path(tmp_path):
    path = tmp_path / "dn.txt"
    path.write_text("2 6\n2 1 0 1\n")
    np.testing.assert_array_equal(
        net_points(load_direction_numbers(path, m=6)), net_points(load_direction_numbers(m=6, d=2))
    )


def test_interlaced_net_integrates_smooth_function_fast():
    # order-q nets reach error ~ N^-q on smooth non-periodic integrands
    exact = (np.e - 1.0) ** 2
    errors = []
    for m in (6, 8, 10):
        pts = net_points(higher_order_sobol(m, 2, 2))
        errors.append(abs(np.exp(pts.sum(axis=1)).mean() - exact))
    slope = np.polyfit(np.log(2.0 ** np.array([6, 8, 10])), np.log(errors), 1)[0]
    assert slope < -1.5
