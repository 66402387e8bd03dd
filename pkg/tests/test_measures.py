import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import bellgamma as bg


def test_presets():
    assert bg.PAPER_2X3.n2 == 2.0
    assert bg.CONCURRENCE_MATCHED.n2 == 4.0
    assert bg.UNNORMALIZED.n2 == 1.0
    assert bg.MeasureConfig(n2=3.5).preset == "custom"
    with pytest.raises(ValueError):
        bg.MeasureConfig.from_preset("bogus")
    with pytest.raises(ValueError):
        bg.MeasureConfig(n2=0.0)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_gamma_vanishes_on_product_states(dims, seed):
    rho = bg.random_product(bg.BipartiteDims(*dims), seed)
    assert bg.gamma(rho, bg.PAPER_2X3).total <= 1e-12


def test_gamma_bell_2x3(bell_2x3):
    rho = bg.pure_to_density(bell_2x3)
    breakdown = bg.gamma(rho, bg.PAPER_2X3)
    assert breakdown.total == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    by_quad = {(t.k, t.l, t.p, t.q): t for t in breakdown.terms}
    assert by_quad[(1, 2, 1, 2)].coeff_plus == pytest.approx(0.5, abs=1e-12)
    assert by_quad[(1, 2, 1, 2)].coeff_minus == pytest.approx(0.0, abs=1e-12)
    assert by_quad[(1, 2, 1, 3)].contribution == pytest.approx(0.0, abs=1e-12)


def test_gamma_swap_bell_uses_minus_branch(dims_2x3):
    amp = np.zeros((2, 3), dtype=complex)
    amp[0, 1] = amp[1, 0] = 1 / np.sqrt(2)  # (|12> + |21>)/sqrt(2)
    rho = bg.pure_to_density(bg.PureState(dims_2x3, amp))
    breakdown = bg.gamma(rho, bg.PAPER_2X3)
    assert breakdown.total == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    by_quad = {(t.k, t.l, t.p, t.q): t for t in breakdown.terms}
    assert by_quad[(1, 2, 1, 2)].coeff_minus == pytest.approx(0.5, abs=1e-12)
    assert by_quad[(1, 2, 1, 2)].coeff_plus == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_gamma_term_count(dims):
    m, n = dims
    rho = bg.random_density(bg.BipartiteDims(m, n), 0)
    breakdown = bg.gamma(rho)
    assert len(breakdown.terms) == m * (m - 1) * n * (n - 1) // 4
    assert breakdown.total == pytest.approx(
        math.sqrt(breakdown.n2 * sum(t.contribution for t in breakdown.terms)),
        abs=1e-12,
    )


def test_gamma_pure_examples(bell_2x3, three_term_2x3):
    maxent = bg.max_entangled(2, bg.BipartiteDims(2, 2))
    assert bg.gamma_pure(maxent, bg.PAPER_2X3).total == pytest.approx(
        1 / math.sqrt(2), abs=1e-12
    )
    assert bg.gamma_pure(three_term_2x3, bg.PAPER_2X3).total == pytest.approx(
        2 / 3, abs=1e-12
    )
    assert bg.gamma_pure(bell_2x3, bg.PAPER_2X3).total == pytest.approx(
        1 / math.sqrt(2), abs=1e-12
    )


@given(seed=st.integers(0, 2**32 - 1))
def test_gamma_pure_zero_on_product_amplitudes(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    amp = np.outer(a, b)
    amp /= np.linalg.norm(amp)
    psi = bg.PureState(bg.BipartiteDims(2, 3), amp)
    assert bg.gamma_pure(psi).total <= 1e-12


@given(seed=st.integers(0, 2**32 - 1))
def test_gamma_pure_matches_density_route(seed):
    psi = bg.random_pure(bg.BipartiteDims(3, 3), seed)
    direct = bg.gamma_pure(psi, bg.PAPER_2X3).total
    via_rho = bg.gamma(bg.pure_to_density(psi), bg.PAPER_2X3).total
    assert abs(direct - via_rho) < 1e-12


@given(seed=st.integers(0, 2**32 - 1))
def test_gamma_pure_invariant_under_diagonal_phases(seed):
    dims = bg.BipartiteDims(2, 3)
    psi = bg.random_pure(dims, seed)
    rng = np.random.default_rng(seed + 1)
    u = bg.LocalUnitary(
        np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 2))),
        np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 3))),
    )
    before = bg.gamma_pure(psi).total
    after = bg.gamma_pure(bg.apply_local(psi, u)).total
    assert abs(before - after) < 1e-12


def test_i_concurrence_examples(bell_2x3, three_term_2x3):
    product = bg.max_entangled(1, bg.BipartiteDims(2, 3))
    assert bg.i_concurrence(product) == pytest.approx(0.0, abs=1e-12)
    assert bg.i_concurrence(bell_2x3) == pytest.approx(1.0, abs=1e-12)
    assert bg.i_concurrence(three_term_2x3) == pytest.approx(
        2 * math.sqrt(2) / 3, abs=1e-12
    )
    for k in (1, 2, 3):
        maxent = bg.max_entangled(k, bg.BipartiteDims(3, 3))
        assert bg.i_concurrence(maxent) == pytest.approx(
            math.sqrt(2 * (1 - 1 / k)), abs=1e-12
        )


def test_i_concurrence_from_schmidt_coefficients(three_term_2x3):
    lam = np.array(bg.schmidt(three_term_2x3).coefficients)
    via_schmidt = math.sqrt(2 * (1 - float(np.sum(lam**2))))
    assert bg.i_concurrence(three_term_2x3) == pytest.approx(via_schmidt, abs=1e-12)


def test_concurrence_2x3_examples(bell_2x3, three_term_2x3):
    product = bg.max_entangled(1, bg.BipartiteDims(2, 3))
    assert bg.concurrence_2x3(product) == pytest.approx(0.0, abs=1e-12)
    assert bg.concurrence_2x3(three_term_2x3) == pytest.approx(2 / 3, abs=1e-12)
    # note the sqrt(2) gap to i_concurrence == 1 on this state
    assert bg.concurrence_2x3(bell_2x3) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_concurrence_2x3_requires_2x3():
    with pytest.raises(ValueError, match="2x3"):
        bg.concurrence_2x3(bg.max_entangled(2, bg.BipartiteDims(2, 2)))


def test_concurrence_2x3_is_general_with_prefactor_two():
    for seed in range(10):
        psi = bg.random_pure(bg.BipartiteDims(2, 3), seed)
        assert bg.concurrence_2x3(psi) == bg.concurrence_general(psi, 2.0)


def test_concurrence_general_examples(bell_2x3, three_term_2x3):
    assert bg.concurrence_general(bell_2x3, 4.0) == pytest.approx(1.0, abs=1e-12)
    assert bg.concurrence_general(three_term_2x3, 4.0) == pytest.approx(
        2 * math.sqrt(2) / 3, abs=1e-12
    )
    product = bg.max_entangled(1, bg.BipartiteDims(3, 4))
    assert bg.concurrence_general(product, 7.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_concurrence_general_matches_i_concurrence(dims):
    for seed in range(10):
        psi = bg.random_pure(bg.BipartiteDims(*dims), seed)
        assert abs(bg.concurrence_general(psi, 4.0) - bg.i_concurrence(psi)) < 1e-10


def test_gamma_schmidt_examples(three_term_2x3):
    product = bg.max_entangled(1, bg.BipartiteDims(2, 3))
    assert bg.gamma_schmidt(product, bg.CONCURRENCE_MATCHED) == pytest.approx(
        0.0, abs=1e-12
    )
    # coefficients (2/3, 1/3): sqrt(4 * 2/9) = 2*sqrt(2)/3
    assert bg.gamma_schmidt(three_term_2x3, bg.CONCURRENCE_MATCHED) == pytest.approx(
        2 * math.sqrt(2) / 3, abs=1e-12
    )
    for k in (2, 3):
        maxent = bg.max_entangled(k, bg.BipartiteDims(3, 3))
        assert bg.gamma_schmidt(maxent, bg.CONCURRENCE_MATCHED) == pytest.approx(
            math.sqrt(2 * (1 - 1 / k)), abs=1e-12
        )


@given(seed=st.integers(0, 2**32 - 1))
def test_gamma_schmidt_equals_i_concurrence_at_n2_four(seed):
    psi = bg.random_pure(bg.BipartiteDims(3, 4), seed)
    assert abs(
        bg.gamma_schmidt(psi, bg.CONCURRENCE_MATCHED) - bg.i_concurrence(psi)
    ) < 1e-10


@given(seed=st.integers(0, 2**32 - 1))
def test_gamma_schmidt_matches_rotated_amplitudes(seed):
    psi = bg.random_pure(bg.BipartiteDims(2, 3), seed)
    rotated, _ = bg.schmidt_rotation(psi)
    assert abs(
        bg.gamma_pure(rotated, bg.PAPER_2X3).total - bg.gamma_schmidt(psi, bg.PAPER_2X3)
    ) < 1e-10


@given(seed=st.integers(0, 2**32 - 1))
def test_gamma_pure_below_schmidt_value(seed):
    dims = bg.BipartiteDims(2, 3)
    psi = bg.random_pure(dims, seed)
    cfg = bg.PAPER_2X3
    assert bg.gamma_pure(psi, cfg).total <= bg.gamma_schmidt(psi, cfg) + 1e-9
    rotated = bg.apply_local(psi, bg.random_local_unitary(dims, seed + 1))
    assert bg.gamma_pure(rotated, cfg).total <= bg.gamma_schmidt(psi, cfg) + 1e-9
