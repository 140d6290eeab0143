import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gonality.cyclotomic import (
    CyclotomicElement,
    conductor,
    cyclotomic_poly,
    embedding_roots,
    ideal_contains,
    ideal_from_generators,
    ideal_index,
    ideal_mul,
    ideal_norm,
    ideal_pow,
    min_cofactor_norm,
    mul,
    multiplication_matrix,
    norm,
    phi_value,
    poly_divmod,
    principal_ideal,
    ramanujan_sum,
    residue_degree,
    resultant,
    t2,
    trace_gram,
    unit_ideal,
)
from gonality.lattice import det
from gonality.ntheory import primes_up_to
from oracles import smallest_factor_degree

X = sympy.Symbol("x")


@pytest.mark.parametrize("m", range(1, 61))
def test_cyclotomic_poly_against_sympy(m):
    expected = sympy.Poly(sympy.cyclotomic_poly(m, X), X).all_coeffs()[::-1]
    assert list(cyclotomic_poly(m).coeffs) == [int(c) for c in expected]


def test_phi_values():
    assert phi_value(12, 2) == 13
    assert phi_value(28, 2) == 3277 == 29 * 113
    assert phi_value(46, -2) == 8388607 == 47 * 178481
    assert phi_value(6, -1) == 3


def test_poly_divmod_nonmonic():
    # x^2 + 1 = (2x + 1) * q + r over Q
    q, r = poly_divmod([1, 0, 1], [1, 2])
    prod = [0] * 3
    for i, a in enumerate(q):
        for j, b in enumerate([1, 2]):
            prod[i + j] += a * b
    for i, a in enumerate(r):
        prod[i] += a
    assert prod == [1, 0, 1]
    assert len(r) <= 1


def sylvester(f, g):
    """Sylvester matrix of two polynomials given low to high."""
    m, n = len(f) - 1, len(g) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + f[::-1] + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + g[::-1] + [0] * (m - 1 - i))
    return sympy.Matrix(rows)


@given(
    st.lists(st.integers(-5, 5), min_size=2, max_size=5),
    st.lists(st.integers(-5, 5), min_size=2, max_size=5),
)
def test_resultant_is_sylvester_determinant(f, g):
    if not f[-1] or not g[-1]:
        return
    assert resultant(f, g) == sylvester(f, g).det()


def test_resultant_sign():
    assert resultant([1, 1], [0, 0, 0, 1]) == -1
    assert resultant([1, 1], [0, 1]) == -1
    assert resultant([0, 1], [1, 1]) == 1


def test_norm_examples():
    assert norm(CyclotomicElement.zeta_minus(4, 2)) == 5
    assert norm(CyclotomicElement.integer(4, 2)) == 4


@settings(max_examples=60)
@given(st.integers(3, 24), st.lists(st.integers(-3, 3), min_size=1, max_size=12))
def test_norm_equals_multiplication_determinant(m, coeffs):
    a = CyclotomicElement.from_poly(m, coeffs)
    assert norm(a) == abs(det(multiplication_matrix(a)))


@settings(max_examples=40)
@given(
    st.integers(3, 20),
    st.lists(st.integers(-2, 2), min_size=1, max_size=8),
    st.lists(st.integers(-2, 2), min_size=1, max_size=8),
)
def test_norm_is_multiplicative(m, a, b):
    x, y = CyclotomicElement.from_poly(m, a), CyclotomicElement.from_poly(m, b)
    assert norm(mul(x, y)) == norm(x) * norm(y)


@pytest.mark.parametrize("m", [1, 3, 5, 7, 8, 12, 15])
def test_ramanujan_sums_are_traces(m):
    n = cyclotomic_poly(m).degree
    roots = embedding_roots(m)
    for k in range(2 * n):
        # each listed root stands for itself and its conjugate
        approx = sum(2 * (r**k).real for r in roots) if m > 2 else sum(r**k for r in roots)
        assert abs(approx - ramanujan_sum(m, k)) < 1e-9


@settings(max_examples=40)
@given(st.integers(3, 20), st.lists(st.integers(-3, 3), min_size=1, max_size=8))
def test_t2_is_sum_of_squared_moduli(m, coeffs):
    a = CyclotomicElement.from_poly(m, coeffs)
    total = 0.0
    for r in embedding_roots(m):
        v = sum(c * r**i for i, c in enumerate(a.coeffs))
        total += 2 * abs(v) ** 2
    assert abs(t2(a.coeffs, m) - total) < 1e-6 * max(1, total)
    assert len(trace_gram(m)) == len(a.coeffs)


def test_ideal_basics():
    a = ideal_from_generators([CyclotomicElement.integer(4, 5), CyclotomicElement.zeta_minus(4, 2)])
    assert a.lattice.basis == ((1, 2), (0, 5))
    assert ideal_norm(a) == 5
    assert ideal_norm(unit_ideal(4)) == 1
    assert ideal_contains(unit_ideal(4), a)
    p = principal_ideal(CyclotomicElement.integer(4, 5))
    assert ideal_index(p, a) == 5
    assert ideal_norm(ideal_pow(a, 2)) == 25


@pytest.mark.parametrize("m, l, t", [(12, 13, 2), (6, 3, -1), (28, 29, 2), (10, 11, 2), (46, 47, -2)])
def test_obstruction_ideal_has_prime_norm(m, l, t):
    a = ideal_from_generators([CyclotomicElement.integer(m, l), CyclotomicElement.zeta_minus(m, t)])
    assert ideal_norm(a) == l
    sq = ideal_mul(a, a)
    assert ideal_norm(sq) == l * l


@pytest.mark.parametrize("m, c", [(1, 1), (2, 1), (6, 3), (12, 12), (46, 23), (30, 15), (8, 8)])
def test_conductor(m, c):
    assert conductor(m) == c


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 28, 30, 46])
def test_residue_degree_matches_factorisation(m):
    for q in primes_up_to(60):
        assert residue_degree(q, m) == smallest_factor_degree(list(cyclotomic_poly(m).coeffs), q)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8, 12, 20, 22, 28, 46])
def test_min_cofactor_norm_matches_factorisation(m):
    f = list(cyclotomic_poly(m).coeffs)
    best = None
    for q in primes_up_to(200):
        v = q ** smallest_factor_degree(f, q)
        best = v if best is None else min(best, v)
    assert min_cofactor_norm(m) == best


def test_min_cofactor_norm_small_rings():
    assert min_cofactor_norm(1) == 1
    assert min_cofactor_norm(2) == 1
    assert min_cofactor_norm(12) == 4
    assert min_cofactor_norm(46) == 23
