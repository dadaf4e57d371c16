import math

import numpy as np
import numpy.polynomial.polynomial as poly
import pytest
from helpers import TEST_SEEDS, sample, sample_moments, seeds

from localmoments.exceptions import DegenerateRankError, InvalidMomentsError
from localmoments.extensions import DiscreteMeasure
from localmoments.moments import MomentSequence, hankel
from localmoments.oracle import moments_of, orthonormal_by_determinants
from localmoments.orthopoly import (
    build_system,
    cd_difference,
    cd_kernel,
    conjugate_system,
    count_zeros,
    delta,
    eval_poly,
    kernel_polynomial,
    numerical_rank,
    recurrence_matrix,
    shifted_system,
)

TEST_POINTS = (-0.7, 0.3, 1.9)


# Determinants and ranks


def test_delta(test_bernoulli: MomentSequence) -> None:
    assert delta(test_bernoulli, -1) == 1.0
    assert delta(test_bernoulli, 0) == 1.0
    assert delta(test_bernoulli, 1) == pytest.approx(0.25)
    assert abs(delta(MomentSequence([1, 1, 1]), 1)) < 1e-15


def test_delta_out_of_range(test_bernoulli: MomentSequence) -> None:
    with pytest.raises(InvalidMomentsError):
        delta(test_bernoulli, 2)


def test_numerical_rank(test_bernoulli: MomentSequence) -> None:
    assert numerical_rank(test_bernoulli) == 2
    assert numerical_rank(MomentSequence([1, 1, 1])) == 1
    assert numerical_rank(MomentSequence([0, 0, 0])) == 0


def test_numerical_rank_wide_support() -> None:
    # moments up to 1e16, unit diagonal scaling keeps the third atom
    seq = moments_of(DiscreteMeasure([0.0, 1.0, 1e4], [1 / 3, 1 / 3, 1 / 3]), 4)
    assert numerical_rank(seq) == 3


# Orthonormal systems


def test_build_system(test_bernoulli: MomentSequence) -> None:
    system = build_system(test_bernoulli)
    assert system.order == 1
    assert np.allclose(system.coeffs[0], [1.0])
    assert np.allclose(system.coeffs[1], [-1.0, 2.0])
    assert system.beta(0) == pytest.approx(0.5)
    assert np.allclose(system.diag, [0.5])

    system = build_system(MomentSequence([1, 0, 1]))
    assert np.allclose(system.coeffs[1], [0.0, 1.0])


def test_build_system_degenerate() -> None:
    with pytest.raises(DegenerateRankError) as e_info:
        build_system(MomentSequence([1, 1, 1]))
    assert e_info.value.rank == 1
    assert e_info.value.code == "degenerate-rank"


def test_shifted_system(test_bernoulli: MomentSequence) -> None:
    system = shifted_system(test_bernoulli)
    assert np.allclose(system.coeffs[0], [math.sqrt(2.0)])
    assert system.delta(0) == pytest.approx(0.5)

    system = shifted_system(MomentSequence([1, 1, 1.5, 2.5, 4.5]))
    assert np.allclose(system.coeffs[1], [-3.0, 2.0])


def test_shifted_system_degenerate() -> None:
    with pytest.raises(DegenerateRankError) as e_info:
        shifted_system(MomentSequence([1, 0, 1]))
    assert e_info.value.rank == 0


def test_conjugate_system(test_bernoulli: MomentSequence) -> None:
    conjugate = conjugate_system(build_system(test_bernoulli))
    assert np.allclose(conjugate.coeffs[0], [0.0])
    assert np.allclose(conjugate.coeffs[1], [2.0])
    assert np.allclose(conjugate.integrals, [1.0, 0.0])

    conjugate = conjugate_system(build_system(MomentSequence([1, 0, 1])))
    assert np.allclose(conjugate.coeffs[1], [1.0])


def test_recurrence_matrix(test_gap_sequence: MomentSequence) -> None:
    system = build_system(test_gap_sequence)
    assert np.allclose(recurrence_matrix(system), [[0.5]])
    with pytest.raises(InvalidMomentsError):
        recurrence_matrix(system, 2)


def test_orthonormality_random() -> None:
    for seed in seeds():
        seq = sample_moments("interval", 4, seed)
        system = build_system(seq)
        gram = system.coefficients.T @ hankel(seq, 0, seq.order).entries @ system.coefficients
        assert np.allclose(gram, np.eye(4), atol=1e-8), f"seed {seed}"


def test_determinant_formula_random() -> None:
    for seed in seeds():
        seq = sample_moments("interval", 4, seed)
        system = build_system(seq)
        for k in range(seq.order + 1):
            expected = system.coeffs[k]
            computed = orthonormal_by_determinants(seq, k)
            atol = 1e-8 * float(np.max(np.abs(expected)))
            assert np.allclose(computed, expected, rtol=1e-8, atol=atol), f"seed {seed}, k={k}"


def test_recurrence_coefficients_random() -> None:
    for seed in seeds():
        seq = sample_moments("half-axis", 4, seed)
        system = build_system(seq)
        for k in range(seq.order):
            expected = math.sqrt(delta(seq, k + 1) * delta(seq, k - 1)) / delta(seq, k)
            assert system.beta(k) == pytest.approx(expected, rel=1e-8), f"seed {seed}, k={k}"


def test_zeros_in_support_hull_random() -> None:
    for seed in seeds():
        measure = sample("gap-complement", 4, seed)
        seq = moments_of(measure, 6)
        system = build_system(seq)
        zeros = poly.polyroots(system.coeffs[-1])
        assert np.all(np.abs(zeros.imag) < 1e-8), f"seed {seed}"
        assert np.all(zeros.real > measure.atoms[0] - 1e-8), f"seed {seed}"
        assert np.all(zeros.real < measure.atoms[-1] + 1e-8), f"seed {seed}"


# Christoffel–Darboux kernel


def test_cd_kernel(test_gap_sequence: MomentSequence, test_bernoulli: MomentSequence) -> None:
    assert cd_kernel(build_system(test_gap_sequence), 1, 1.0, 0.0) == pytest.approx(8 / 9)
    assert cd_kernel(build_system(test_bernoulli), 0, 3.0, -2.0) == pytest.approx(1.0)


def test_cd_difference(test_bernoulli: MomentSequence) -> None:
    system = build_system(test_bernoulli)
    assert cd_difference(system, 0, 2.0, 0.0) == pytest.approx(1.0)
    with pytest.raises(InvalidMomentsError):
        cd_difference(system, 0, 1.0, 1.0)
    with pytest.raises(InvalidMomentsError):
        cd_difference(system, 1, 1.0, 0.0)


def test_cd_forms_agree_random() -> None:
    rng = np.random.default_rng(TEST_SEEDS)
    for seed in seeds():
        seq = sample_moments("half-axis", 4, seed)
        system = build_system(seq)
        lam = float(rng.uniform(-1.0, 1.0))
        mu = lam + float(rng.uniform(0.1, 2.0))
        for s in range(system.order):
            expected = cd_kernel(system, s, lam, mu)
            scale = float(np.sum(np.abs(system.values(lam) * system.values(mu))))
            assert abs(cd_difference(system, s, lam, mu) - expected) <= 1e-9 * scale, f"seed {seed}"


def test_kernel_polynomial(test_gap_sequence: MomentSequence) -> None:
    system = build_system(test_gap_sequence)
    coeffs = kernel_polynomial(system, 1, 0.0)
    for x in TEST_POINTS:
        assert eval_poly(coeffs, x) == pytest.approx(cd_kernel(system, 1, x, 0.0))


# Sturm sequences


def test_eval_poly() -> None:
    assert eval_poly([-1, 2], 2.0) == 3.0
    assert eval_poly([1.0, 0.0, 1.0], 1j) == 0


def test_count_zeros() -> None:
    assert count_zeros([-0.5, 1.0], 0.0, 1.0) == 1
    assert count_zeros([0.1875, -1.0, 1.0], 0.0, 1.0) == 2
    assert count_zeros([0.1875, -1.0, 1.0], 0.5, 1.0) == 1
    assert count_zeros([1.0, 0.0, 1.0], -5.0, 5.0) == 0
    assert count_zeros([3.0], 0.0, 1.0) == 0


def test_count_zeros_open_interval() -> None:
    # t (t - 1) has its zeros on the boundary
    assert count_zeros([0.0, -1.0, 1.0], 0.0, 1.0) == 0
