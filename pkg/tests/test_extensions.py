import math

import numpy as np
import numpy.polynomial.polynomial as poly
import pytest
import scipy.linalg
from helpers import POINT_MASS_HALF, TEST_SEEDS, sample, sample_moments, seeds

from localmoments.exceptions import BoundaryCaseError, DegenerateRankError, InvalidMomentsError, SingularBlockError
from localmoments.extensions import (
    DiscreteMeasure,
    block_factors,
    corner_from_tau,
    corner_schur_complement,
    gap_inequalities,
    gap_jacobi,
    gap_operator_blocks,
    gap_trinomial,
    hausdorff_ratio,
    hausdorff_ratio_kernel,
    jacobi_corner,
    jacobi_matrix,
    m_polynomial,
    min_H,
    minimal_extension,
    minimal_extension_bound_check,
    nevanlinna_transform,
    resolvent_block,
    schur_positivity,
    spectral_measure,
    stieltjes_extension,
    stieltjes_transform,
    tau_extension,
    tau_from_H,
    unique_extension,
)
from localmoments.moments import MomentSequence, check_hausdorff_necessary, is_psd
from localmoments.oracle import moments_of, transform, verify_solution
from localmoments.orthopoly import build_system, conjugate_system
from localmoments.solvers import alpha_range, solve_gap, solve_stieltjes

TEST_Z = (0.3 + 1j, -2.0 + 0.5j, 4.0 - 2j)
TEST_Z_LINE = tuple(complex(x, 1.0) for x in np.linspace(-3.0, 4.0, 10))


# Discrete measures


def test_measure_validation() -> None:
    with pytest.raises(InvalidMomentsError):
        DiscreteMeasure([0.0, 1.0], [0.5])
    with pytest.raises(InvalidMomentsError):
        DiscreteMeasure([0.0, 1.0], [0.5, 0.0])
    with pytest.raises(InvalidMomentsError):
        DiscreteMeasure([1.0, 0.0], [0.5, 0.5])


def test_measure_merge() -> None:
    left = DiscreteMeasure([0.0, 1.0], [0.5, 0.5])
    right = DiscreteMeasure([-1.0, 1.0], [0.25, 0.25])
    merged = left.merge(right)
    assert merged.atoms == (-1.0, 0.0, 1.0)
    assert merged.masses == (0.25, 0.5, 0.75)
    assert merged.total_mass == 1.5
    assert merged.restricted(0.0, 1.0).atoms == (0.0, 1.0)


# Stieltjes extensions


def test_stieltjes_extension(test_bernoulli: MomentSequence) -> None:
    spec = stieltjes_extension(test_bernoulli, H=0.5)
    assert spec.kind == "stieltjes-H"
    assert np.allclose(spec.matrix, [[0.0, 0.0], [1.0, 1.0]], atol=1e-12)

    spec = stieltjes_extension(test_bernoulli, H=1.0)
    product = spec.gram @ spec.matrix
    assert product[-1, -1] == pytest.approx(1.0, rel=1e-12)
    assert np.allclose(product, product.T, atol=1e-10)


def test_stieltjes_extension_degenerate() -> None:
    with pytest.raises(DegenerateRankError):
        stieltjes_extension(MomentSequence([1, 1, 1]), H=1.0)


def test_min_H(test_bernoulli: MomentSequence) -> None:
    assert min_H(test_bernoulli) == pytest.approx(0.5)
    assert min_H(MomentSequence([2.0])) == 0.0
    with pytest.raises(SingularBlockError):
        min_H(MomentSequence([1, 0, 1]))


def test_tau_and_corner(test_bernoulli: MomentSequence) -> None:
    assert tau_from_H(test_bernoulli, 1.0) == pytest.approx(2.0)
    assert corner_from_tau(test_bernoulli, 4 / 3) == pytest.approx(5 / 6)
    assert tau_from_H(test_bernoulli, corner_from_tau(test_bernoulli, 0.7)) == pytest.approx(0.7)


def test_spectral_measure_minimal(test_bernoulli: MomentSequence) -> None:
    measure = spectral_measure(minimal_extension(test_bernoulli), mass0=1.0)
    assert len(measure) == 2
    assert measure.atoms[0] == pytest.approx(0.0, abs=1e-12)
    assert measure.atoms[1] == pytest.approx(1.0)
    assert np.allclose(measure.masses, [0.5, 0.5])


def test_spectral_measure_corner(test_bernoulli: MomentSequence) -> None:
    measure = spectral_measure(stieltjes_extension(test_bernoulli, H=1.0), mass0=1.0)
    root = math.sqrt(5.0)
    assert np.allclose(measure.atoms, [(3 - root) / 2, (3 + root) / 2])
    assert measure.total_mass == pytest.approx(1.0)
    assert sum(t * mu for t, mu in zip(measure.atoms, measure.masses)) == pytest.approx(0.5)


def test_spectral_measure_largest_atom(test_bernoulli: MomentSequence) -> None:
    measure = spectral_measure(stieltjes_extension(test_bernoulli, corner_from_tau(test_bernoulli, 4 / 3)), 1.0)
    assert measure.atoms[-1] == pytest.approx(2.0, abs=1e-8)
    assert measure.atoms[0] == pytest.approx(1 / 3, abs=1e-8)


def test_unique_extension() -> None:
    spec = unique_extension(MomentSequence([1, 1, 1]))
    assert spec.kind == "unique"
    assert np.allclose(spec.matrix, [[1.0]])
    measure = spectral_measure(spec, mass0=1.0)
    assert measure.atoms == pytest.approx((1.0,))
    assert measure.masses == pytest.approx((1.0,))

    with pytest.raises(InvalidMomentsError):
        unique_extension(MomentSequence([1, 0.5, 0.5]))


def test_minimal_extension_random() -> None:
    for seed in seeds():
        seq = sample_moments("half-axis", 3, seed)
        measure = spectral_measure(minimal_extension(seq), seq[0])
        assert abs(measure.atoms[0]) < 1e-8, f"seed {seed}"
        assert len(measure) <= seq.order + 1
        assert verify_solution(measure, seq).passed, f"seed {seed}"


def test_extension_moments_random() -> None:
    rng = np.random.default_rng(TEST_SEEDS)
    for seed in seeds():
        seq = sample_moments("half-axis", 3, seed)
        H = min_H(seq) + float(rng.uniform(0.0, 5.0))
        measure = spectral_measure(stieltjes_extension(seq, H), seq[0])
        assert min(measure.atoms) > -1e-8, f"seed {seed}"
        assert verify_solution(measure, seq).passed, f"seed {seed}"


# Block factors and ratios


def test_block_factors(test_bernoulli: MomentSequence) -> None:
    blocks = block_factors(test_bernoulli)
    assert np.allclose(blocks.a00, [[0.5]])
    assert np.allclose(blocks.g, [0.5])
    assert blocks.minimal_corner == pytest.approx(0.5)
    assert jacobi_corner(test_bernoulli, 0.0) == pytest.approx(0.5)


def test_corner_schur_complement(test_bernoulli: MomentSequence) -> None:
    assert corner_schur_complement(test_bernoulli, 4 / 3, 2.0) == pytest.approx(0.0, abs=1e-12)
    assert corner_schur_complement(test_bernoulli, 1.0, 2.0) < 0
    assert corner_schur_complement(test_bernoulli, 2.0, 2.0) > 0


def test_minimal_extension_bound_check(test_bernoulli: MomentSequence) -> None:
    assert minimal_extension_bound_check(test_bernoulli, lam=2.0)
    assert minimal_extension_bound_check(test_bernoulli, lam=1.0)
    assert not minimal_extension_bound_check(test_bernoulli, lam=0.9)
    assert not minimal_extension_bound_check(test_bernoulli, lam=0.4)
    with pytest.raises(BoundaryCaseError) as e_info:
        minimal_extension_bound_check(test_bernoulli, lam=0.5)
    assert e_info.value.quantity == "A_00 - ΛI"


def test_hausdorff_ratio(test_bernoulli: MomentSequence) -> None:
    assert hausdorff_ratio(test_bernoulli, 2.0) == pytest.approx(1 / 3)
    assert hausdorff_ratio(test_bernoulli, 1.0) == pytest.approx(1.0)
    assert hausdorff_ratio(test_bernoulli, 1e8) < 1e-7
    assert hausdorff_ratio(test_bernoulli, math.inf) == 0.0
    assert hausdorff_ratio(MomentSequence([2.0]), 1.0) == 0.0


def test_hausdorff_ratio_pole(test_bernoulli: MomentSequence) -> None:
    with pytest.raises(BoundaryCaseError) as e_info:
        hausdorff_ratio(test_bernoulli, 0.5)
    assert e_info.value.code == "boundary"


def test_hausdorff_ratio_forms_agree(test_bernoulli: MomentSequence) -> None:
    for lam in (0.8, 1.0, 2.0, 7.5):
        assert hausdorff_ratio_kernel(test_bernoulli, lam) == pytest.approx(hausdorff_ratio(test_bernoulli, lam))


def test_bound_check_matches_ratio_random() -> None:
    rng = np.random.default_rng(TEST_SEEDS)
    checked = 0
    for seed in seeds():
        seq = sample_moments("interval", 3, seed)
        lam = float(rng.uniform(0.5, 2.0))
        if not check_hausdorff_necessary(seq, lam).verdict:
            continue
        ratio = hausdorff_ratio(seq, lam)
        if abs(ratio - 1.0) < 1e-6:
            continue
        assert minimal_extension_bound_check(seq, lam) == (ratio <= 1.0), f"seed {seed}"
        assert hausdorff_ratio_kernel(seq, lam) == pytest.approx(ratio, rel=1e-8), f"seed {seed}"
        checked += 1
    assert checked > 0


# Gap extensions


def test_gap_jacobi(test_gap_sequence: MomentSequence) -> None:
    spec = gap_jacobi(test_gap_sequence, alpha=0.5)
    assert spec.kind == "gap-alpha"
    assert np.allclose(spec.matrix, [[0.5, 1.5], [1.5, 0.5]])

    measure = spectral_measure(spec, mass0=1.0)
    assert np.allclose(measure.atoms, [-1.0, 2.0])
    assert np.allclose(measure.masses, [0.5, 0.5])


def test_jacobi_matrix(test_gap_sequence: MomentSequence) -> None:
    spec = jacobi_matrix(build_system(test_gap_sequence), 0.5)
    assert np.allclose(spec.matrix, gap_jacobi(test_gap_sequence, alpha=0.5).matrix)
    assert np.allclose(spec.gram, np.eye(2))

    spec = jacobi_matrix(build_system(MomentSequence([2.0])), 0.3)
    assert np.allclose(spec.matrix, [[0.3]])


def test_gram_symmetry(test_gap_sequence: MomentSequence, test_bernoulli: MomentSequence) -> None:
    specs = [
        gap_jacobi(test_gap_sequence, alpha=0.5),
        unique_extension(MomentSequence(POINT_MASS_HALF)),
        tau_extension(test_bernoulli, 1.0),
    ]
    for spec in specs:
        product = spec.gram @ spec.matrix
        assert np.allclose(product, product.T, atol=1e-10), spec.kind


def test_gram_symmetry_random() -> None:
    for seed in seeds():
        gap = gap_jacobi(sample_moments("gap-complement", 3, seed), alpha=0.3)
        unique = unique_extension(moments_of(sample("half-axis", 2, seed), 4))
        for spec in (gap, unique):
            product = spec.gram @ spec.matrix
            assert np.allclose(product, product.T, atol=1e-10), f"seed {seed}"


def test_m_polynomial(test_gap_sequence: MomentSequence) -> None:
    system = build_system(test_gap_sequence)
    assert np.allclose(np.sort(poly.polyroots(m_polynomial(system, 0.5))), [-1.0, 2.0])


def test_m_polynomial_eigenvalues_random() -> None:
    rng = np.random.default_rng(TEST_SEEDS)
    for seed in seeds():
        seq = sample_moments("gap-complement", 3, seed)
        system = build_system(seq)
        alpha = float(rng.uniform(-3.0, 3.0))
        roots = np.sort(poly.polyroots(m_polynomial(system, alpha)).real)
        eigenvalues = scipy.linalg.eigvalsh(gap_jacobi(seq, alpha).matrix)
        assert np.allclose(roots, eigenvalues, atol=1e-7), f"seed {seed}"


def test_gap_trinomial(test_gap_sequence: MomentSequence) -> None:
    trinomial = gap_trinomial(build_system(test_gap_sequence), lam=1.0)
    assert trinomial.degree() == 2
    assert np.allclose(np.sort(trinomial.roots()), [-3.5, 4.5], atol=1e-9)
    assert np.allclose(trinomial.coef, np.array([15.75, 1.0, -1.0]) * 4 / 81)


def test_gap_trinomial_order_zero() -> None:
    trinomial = gap_trinomial(build_system(MomentSequence([2.0])), lam=1.0)
    assert np.allclose(np.sort(trinomial.roots()), [0.0, 1.0])


def test_gap_inequalities(test_gap_sequence: MomentSequence) -> None:
    system = build_system(test_gap_sequence)
    inequalities = gap_inequalities(system, lam=1.0, alpha=0.5)
    assert inequalities.firsta == pytest.approx(0.5)
    assert inequalities.w_value > 0
    assert inequalities.positive

    assert gap_inequalities(system, lam=1.0, alpha=5.0).w_value < 0

    with pytest.raises(BoundaryCaseError):
        gap_inequalities(system, lam=1.0, alpha=4.5)


def test_gap_operator_blocks(test_gap_sequence: MomentSequence) -> None:
    blocks = gap_operator_blocks(test_gap_sequence, lam=1.0, alpha=0.5)
    # eigenvalues -1 and 2 both give t (t - 1) = 2
    assert np.allclose(blocks.q, 2 * np.eye(2))
    assert blocks.z[1, 1] == pytest.approx(0.5)
    assert np.allclose(scipy.linalg.inv(blocks.z), blocks.schur)


def test_gap_operator_blocks_order_two(test_gap_sequence_n2: MomentSequence) -> None:
    lam, alpha = 1.0, 2.0
    blocks = gap_operator_blocks(test_gap_sequence_n2, lam=lam, alpha=alpha)
    assert blocks.q00.shape == (1, 1)
    assert np.allclose(scipy.linalg.inv(blocks.z), blocks.schur)

    system = build_system(test_gap_sequence_n2)
    difference = (resolvent_block(system, alpha, lam) - resolvent_block(system, alpha, 0.0)) / lam
    assert np.allclose(difference, blocks.z)


def test_gap_operator_blocks_order_zero() -> None:
    with pytest.raises(InvalidMomentsError):
        gap_operator_blocks(MomentSequence([2.0]), lam=1.0, alpha=3.0)


def test_resolvent_block(test_gap_sequence: MomentSequence, test_gap_sequence_n2: MomentSequence) -> None:
    for seq, alpha in ((test_gap_sequence, 0.5), (test_gap_sequence_n2, -1.5)):
        system = build_system(seq)
        n = system.order
        jacobi = gap_jacobi(seq, alpha).matrix
        for z in TEST_Z:
            expected = scipy.linalg.inv(jacobi - z * np.eye(n + 1))[n - 1 :, n - 1 :]
            assert np.allclose(resolvent_block(system, alpha, z), expected)


def test_schur_positivity() -> None:
    assert schur_positivity(np.array([[2.0, 1.0], [1.0, 2.0]]), split=1)
    assert not schur_positivity(np.array([[1.0, 2.0], [2.0, 1.0]]), split=1)
    with pytest.raises(SingularBlockError):
        schur_positivity(np.array([[0.0, 1.0], [1.0, 1.0]]), split=1)


def test_schur_positivity_random() -> None:
    rng = np.random.default_rng(TEST_SEEDS)
    for _ in seeds():
        lead = rng.normal(size=(2, 2))
        coupling = rng.normal(size=(2, 2))
        trailing = rng.normal(size=(2, 2))
        matrix = np.block([[lead @ lead.T + np.eye(2), coupling], [coupling.T, trailing + trailing.T]])
        assert schur_positivity(matrix, split=2) == is_psd(matrix)[0]


# Transforms


def test_nevanlinna_transform(test_bernoulli: MomentSequence, test_gap_sequence: MomentSequence) -> None:
    system = build_system(test_bernoulli)
    conjugate = conjugate_system(system)
    measure = DiscreteMeasure([0.0, 1.0], [0.5, 0.5])
    for z in TEST_Z:
        assert nevanlinna_transform(system, conjugate, 0.5, z) == pytest.approx(transform(measure, z))

    system = build_system(test_gap_sequence)
    conjugate = conjugate_system(system)
    measure = DiscreteMeasure([-1.0, 2.0], [0.5, 0.5])
    for z in TEST_Z:
        assert nevanlinna_transform(system, conjugate, 0.5, z) == pytest.approx(transform(measure, z))


def test_nevanlinna_transform_order_zero() -> None:
    system = build_system(MomentSequence([2.0]))
    conjugate = conjugate_system(system)
    for z in TEST_Z:
        assert nevanlinna_transform(system, conjugate, 3.0, z) == pytest.approx(2.0 / (3.0 - z))


def test_nevanlinna_transform_random() -> None:
    rng = np.random.default_rng(TEST_SEEDS)
    for seed in seeds():
        seq = sample_moments("half-axis", 3, seed)
        system = build_system(seq)
        conjugate = conjugate_system(system)
        tau = float(rng.uniform(0.0, 2.0))
        measure = solve_stieltjes(seq, tau)
        for z in TEST_Z:
            expected = transform(measure, z)
            computed = nevanlinna_transform(system, conjugate, jacobi_corner(seq, tau), z)
            assert computed == pytest.approx(expected, rel=1e-8), f"seed {seed}"


def test_stieltjes_transform(test_gap_sequence: MomentSequence) -> None:
    spec = gap_jacobi(test_gap_sequence, alpha=0.5)
    measure = solve_gap(test_gap_sequence, lam=1.0, alpha=0.5)
    for z in TEST_Z:
        assert stieltjes_transform(spec, 1.0, z) == pytest.approx(transform(measure, z))


def test_stieltjes_transform_random() -> None:
    for seed in seeds():
        measure = sample("half-axis", 3, seed)
        seq = moments_of(measure, 4)
        spec = minimal_extension(seq)
        solution = spectral_measure(spec, seq[0])
        for z in TEST_Z:
            assert stieltjes_transform(spec, seq[0], z) == pytest.approx(transform(solution, z), rel=1e-8)


def test_nevanlinna_transform_gap_random() -> None:
    for seed in seeds():
        seq = sample_moments("gap-complement", 3, seed)
        system = build_system(seq)
        conjugate = conjugate_system(system)
        admissible = alpha_range(seq, lam=1.0)
        alpha = admissible.interior_point()
        measure = solve_gap(seq, 1.0, alpha, admissible=admissible)
        for z in TEST_Z_LINE:
            computed = nevanlinna_transform(system, conjugate, alpha, z)
            assert computed == pytest.approx(transform(measure, z), rel=1e-8), f"seed {seed}"
