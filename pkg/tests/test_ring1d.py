import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ringshift.ring1d import (
    LAMBDA_ZERO_TOL,
    flux_scan,
    lamb_shift_1d,
    lamb_shift_1d_printed_sign,
    lamb_shift_1d_rewritten,
    lambda_pair,
    matrix_element_1d,
    minimal_shift_1d,
    spectrum_1d,
)
from ringshift.units import CODATA, Ring1DSpec, WindowStatus, characteristic_chi, epsilon0

# (1/pi) ln(10 meV / eps0(20 nm)), mpmath oracle
MIN_SHIFT_20NM_IN_CHI = 1.481363297631268
MIN_SHIFT_20NM = 1.9192554948685633e-16


def prefactor(spec):
    return CODATA.alpha * epsilon0(spec) ** 2 / (2 * math.pi * spec.rest_energy)


def test_spectrum_ground_state_zero_flux():
    assert spectrum_1d(Ring1DSpec(20.0), 0).energy == 0.0


def test_spectrum_first_level_is_eps0():
    assert spectrum_1d(Ring1DSpec(20.0), 1).energy == pytest.approx(95e-6, rel=0.01)


def test_spectrum_flux_symmetry():
    a = spectrum_1d(Ring1DSpec(5.0, flux=0.5), -1).energy
    b = spectrum_1d(Ring1DSpec(5.0, flux=-0.5), 0).energy
    assert a == b == pytest.approx(0.25 * epsilon0(Ring1DSpec(5.0)))


def test_lambda_pair_difference():
    for q in (-3.3, 0.0, 0.5, 7.25):
        lam = lambda_pair(q)
        assert lam.lambda_plus - lam.lambda_minus == 2.0


def test_matrix_element_symmetric_point():
    spec = Ring1DSpec(20.0)
    plus = matrix_element_1d(spec, 0, +1)
    minus = matrix_element_1d(spec, 0, -1)
    unit = CODATA.hbar_c / (2 * CODATA.electron_rest_energy * 20.0)
    assert plus.magnitude == minus.magnitude == pytest.approx(unit)
    assert (plus.final_m, minus.final_m) == (1, -1)


def test_matrix_element_coefficient():
    spec = Ring1DSpec(20.0)
    assert matrix_element_1d(spec, 1, +1).magnitude == pytest.approx(
        3 * matrix_element_1d(spec, 0, +1).magnitude)


def test_matrix_element_vanishes():
    assert matrix_element_1d(Ring1DSpec(20.0, flux=-0.5), 0, +1).magnitude == 0.0


def test_matrix_element_bad_sign():
    with pytest.raises(ValueError):
        matrix_element_1d(Ring1DSpec(20.0), 0, 2)


def test_minimal_shift_semiconductor_ring():
    spec = Ring1DSpec(20.0)
    res = lamb_shift_1d(spec, 0, 0.01)
    assert res.in_chi_units == pytest.approx(MIN_SHIFT_20NM_IN_CHI, rel=1e-10)
    assert res.total == pytest.approx(MIN_SHIFT_20NM, rel=1e-8)
    assert res.total == pytest.approx(0.193e-15, rel=0.01)
    assert res.window_report.status is WindowStatus.VALID


@pytest.mark.parametrize("m", [-3, 0, 2, 5])
def test_zero_q_matches_closed_form(m):
    spec = Ring1DSpec(3.0, flux=-m)
    k = 40 * epsilon0(spec)
    expected = characteristic_chi(spec) / math.pi * math.log(40)
    assert lamb_shift_1d(spec, m, k).total == pytest.approx(expected, rel=1e-13)
    assert minimal_shift_1d(spec, k) == pytest.approx(expected, rel=1e-13)


def test_total_is_sum_of_terms():
    res = lamb_shift_1d(Ring1DSpec(7.0, flux=0.3), 2, 0.5)
    assert res.total == sum(v for _, v in res.per_term)
    assert [label for label, _ in res.per_term] == ["to_m_minus_1", "to_m_plus_1"]


@pytest.mark.parametrize("q", [0.5, -0.5])
def test_half_integer_q_has_one_vanishing_term(q):
    spec = Ring1DSpec(20.0, flux=q)
    res = lamb_shift_1d(spec, 0, 0.01)
    values = [v for _, v in res.per_term]
    assert values.count(0.0) == 1
    assert math.isfinite(res.total) and res.total > 0


def test_continuity_across_vanishing_lambda():
    spec = Ring1DSpec(20.0)
    at = lamb_shift_1d(Ring1DSpec(20.0, flux=0.5), 0, 0.01).total
    for delta in (1e-6, 1e-9, 1e-11, 0.5 * LAMBDA_ZERO_TOL):
        near = lamb_shift_1d(Ring1DSpec(20.0, flux=0.5 + delta), 0, 0.01).total
        assert near == pytest.approx(at, rel=1e-4)
    assert spec.radius == 20.0


def test_invalid_kmax():
    for k in (0.0, -1.0, math.nan):
        with pytest.raises(ValueError):
            lamb_shift_1d(Ring1DSpec(20.0), 0, k)


def test_no_gating_outside_window():
    res = lamb_shift_1d(Ring1DSpec(20.0), 0, 1e-5)
    assert res.window_report.status is WindowStatus.BELOW_WINDOW
    assert math.isfinite(res.total)


def _symbolic_shift(q_value):
    q, L = sympy.symbols("q L", real=True)
    a, b = 1 - 2 * q, 1 + 2 * q
    expr = (a**3 * (L - sympy.log(sympy.Abs(a))) + b**3 * (L - sympy.log(sympy.Abs(b))))
    return sympy.expand(sympy.simplify(expr.subs(q, q_value))), L


def test_rewritten_at_q1_symbolic():
    expr, L = _symbolic_shift(1)
    assert sympy.simplify(expr - (26 * L - 27 * sympy.log(3))) == 0
    spec = Ring1DSpec(20.0, flux=1.0)
    for ratio in (15.0, 120.0):
        k = ratio * epsilon0(spec)
        expected = prefactor(spec) * (26 * math.log(ratio) - 27 * math.log(3))
        assert lamb_shift_1d(spec, 0, k).total == pytest.approx(expected, rel=1e-12)
        assert lamb_shift_1d_rewritten(spec, 0, k).total == pytest.approx(expected, rel=1e-12)


def test_printed_sign_differs_at_q_three_halves():
    expr, L = _symbolic_shift(sympy.Rational(3, 2))
    lm, lp = 2, 4  # Lambda_- and Lambda_+ at q = 3/2
    corrected = 2 * (1 + 12 * sympy.Rational(9, 4)) * L - (-lm**3 * sympy.log(lm) + lp**3 * sympy.log(lp))
    assert sympy.simplify(expr - corrected) == 0

    spec = Ring1DSpec(20.0, flux=1.5)
    k = 0.01
    exact = lamb_shift_1d(spec, 0, k).total
    assert lamb_shift_1d_rewritten(spec, 0, k).total == pytest.approx(exact, rel=1e-12)
    printed = lamb_shift_1d_printed_sign(spec, 0, k).total
    assert exact - printed == pytest.approx(16 * math.log(2) * prefactor(spec), rel=1e-9)


def test_printed_sign_agrees_for_unit_lambda_minus():
    spec = Ring1DSpec(20.0, flux=1.0)
    a = lamb_shift_1d_printed_sign(spec, 0, 0.01).total
    assert a == pytest.approx(lamb_shift_1d(spec, 0, 0.01).total, rel=1e-12)


@settings(max_examples=300)
@given(m=st.integers(-5, 5), f=st.floats(-2, 5), ratio=st.floats(10, 500))
def test_rewritten_equivalence(m, f, ratio):
    spec = Ring1DSpec(20.0, flux=f)
    k = ratio * epsilon0(spec)
    a = lamb_shift_1d(spec, m, k).total
    b = lamb_shift_1d_rewritten(spec, m, k).total
    scale = sum(abs(v) for _, v in lamb_shift_1d(spec, m, k).per_term)
    assert abs(a - b) <= 1e-12 * scale


@given(m=st.integers(-10, 10), f=st.floats(-5, 5))
def test_depends_only_on_q(m, f):
    k = 0.01
    a = lamb_shift_1d(Ring1DSpec(20.0, flux=f), m, k).total
    b = lamb_shift_1d(Ring1DSpec(20.0, flux=f - 1), m + 1, k).total
    assert a == pytest.approx(b, rel=1e-12, abs=1e-30)


@given(m=st.integers(-10, 10), f=st.floats(-5, 5))
def test_sign_symmetry_exact(m, f):
    a = lamb_shift_1d(Ring1DSpec(20.0, flux=f), m, 0.01).total
    b = lamb_shift_1d(Ring1DSpec(20.0, flux=-f), -m, 0.01).total
    assert a == b


@pytest.mark.parametrize("ratio", [20.0, 100.0, 1000.0])
def test_monotone_in_abs_q(ratio):
    spec = Ring1DSpec(20.0)
    k = ratio * epsilon0(spec)
    qs = np.linspace(0, 2, 801)
    values = [lamb_shift_1d(Ring1DSpec(20.0, flux=q), 0, k).total for q in qs]
    assert np.all(np.diff(values) > 0)
    neg = [lamb_shift_1d(Ring1DSpec(20.0, flux=-q), 0, k).total for q in qs]
    assert values == neg


def test_flux_scan_layout():
    spec = Ring1DSpec(20.0)
    grid = np.linspace(-1, 4, 11)
    table = flux_scan(spec, [0, 1], grid, 0.01)
    assert len(table) == 22
    assert table.column("m") == [0] * 11 + [1] * 11
    assert table.column("f")[:11] == list(grid)
    assert [c.unit for c in table.columns] == ["1", "1", "eV", "chi"]


def test_flux_scan_single_point_matches():
    spec = Ring1DSpec(20.0)
    row = flux_scan(spec, [0], [0.0], 0.01).rows[0]
    assert row[2] == lamb_shift_1d(spec, 0, 0.01).total


def test_flux_scan_minima_at_minus_m():
    spec = Ring1DSpec(20.0)
    grid = np.linspace(-4, 4, 801)
    table = flux_scan(spec, [0, 1, 2, 3], grid, 0.01)
    for m in range(4):
        rows = [r for r in table.rows if r[0] == m]
        best = min(rows, key=lambda r: r[2])
        assert best[1] == pytest.approx(-m, abs=0.01)


def test_flux_scan_empty_grid():
    with pytest.raises(ValueError):
        flux_scan(Ring1DSpec(20.0), [0], [], 0.01)
