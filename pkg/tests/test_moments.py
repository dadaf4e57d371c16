import math

import numpy as np
import pytest
from helpers import POINT_MASS_HALF, sample_moments, seeds

from localmoments.consts import (
    GAP_HANKEL_PD,
    GAP_WINDOW_PD,
    KERNEL_SHIFT_0_2,
    SHIFTED_HANKEL_PSD,
    WINDOW_PSD,
)
from localmoments.exceptions import InvalidMomentsError
from localmoments.moments import (
    MomentSequence,
    check_gap_necessary,
    check_hausdorff_necessary,
    check_stieltjes,
    hankel,
    is_pd,
    is_psd,
    kernel_implication,
)


# Moment sequences


def test_sequence_order(test_bernoulli: MomentSequence) -> None:
    assert test_bernoulli.order == 1
    assert len(test_bernoulli) == 3
    assert test_bernoulli.shifted(1).values == (0.5,)


def test_sequence_even_length() -> None:
    with pytest.raises(InvalidMomentsError) as e_info:
        MomentSequence([1.0, 0.5])
    assert e_info.value.code == "invalid-moments"


def test_sequence_not_finite() -> None:
    with pytest.raises(InvalidMomentsError):
        MomentSequence([1.0, math.nan, 0.5])


def test_sequence_bad_window() -> None:
    with pytest.raises(InvalidMomentsError):
        MomentSequence([1.0, 0.5, 0.5], lam=-1.0)


# Hankel matrices


def test_hankel(test_gap_sequence_n2: MomentSequence) -> None:
    seq = MomentSequence([1, 0.5, 0.5])
    assert np.array_equal(hankel(seq, shift=0, size=1).entries, [[1, 0.5], [0.5, 0.5]])
    assert np.array_equal(hankel(seq, shift=1, size=0).entries, [[0.5]])
    assert np.array_equal(hankel(test_gap_sequence_n2, shift=2, size=1).entries, [[3.75, 8.25], [8.25, 24.75]])
    assert hankel(seq, shift=0, size=-1).entries.shape == (0, 0)


def test_hankel_entries_are_copies() -> None:
    seq = MomentSequence([0.1, 0.2, 0.3, 0.7, 1.1])
    entries = hankel(seq, shift=0, size=2).entries
    for j in range(3):
        for k in range(3):
            assert entries[j, k] == seq[j + k]


def test_hankel_out_of_range() -> None:
    with pytest.raises(InvalidMomentsError):
        hankel(MomentSequence([1, 0.5, 0.5]), shift=1, size=1)


# Positivity


def test_is_psd() -> None:
    passed, lowest = is_psd(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert passed
    assert abs(lowest) < 1e-12

    passed, lowest = is_psd(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert not passed
    assert lowest == pytest.approx(-1.0)

    passed, lowest = is_psd(np.array([[1.0, 0.5], [0.5, 0.5]]))
    assert passed
    assert lowest == pytest.approx((1.5 - math.sqrt(1.25)) / 2)


def test_is_psd_monotone_in_tolerance() -> None:
    matrix = np.diag([1.0, -1e-9])
    assert not is_psd(matrix, tol=1e-10)[0]
    assert is_psd(matrix, tol=1e-8)[0]


def test_is_pd_strict() -> None:
    assert not is_pd(np.array([[1.0, 1.0], [1.0, 1.0]]))[0]
    assert is_pd(np.array([[1.0, 0.5], [0.5, 0.5]]))[0]


def test_not_symmetric() -> None:
    with pytest.raises(InvalidMomentsError):
        is_psd(np.array([[1.0, 2.0], [0.0, 1.0]]))


# Kernel implications


def test_kernel_implication() -> None:
    assert kernel_implication(MomentSequence([1, 1, 1, 1, 1]), src_shift=0, dst_shift=2) == (True, None)

    passed, xi = kernel_implication(MomentSequence([1, 0, 0, 0, 1]), src_shift=0, dst_shift=2)
    assert not passed
    assert xi is not None
    assert np.allclose(xi, [0.0, 1.0])


# Stieltjes


def test_check_stieltjes(test_bernoulli: MomentSequence) -> None:
    report = check_stieltjes(test_bernoulli)
    assert report.verdict
    assert report.failed() == []
    assert [c.label for c in report.conditions] == ["a", "b", "c", "c"]


def test_check_stieltjes_shifted_negative() -> None:
    report = check_stieltjes(MomentSequence([1, -1, 1]))
    assert not report.verdict
    assert report.failed()[0].name == SHIFTED_HANKEL_PSD
    assert report.failed()[0].witness == [1.0]


def test_check_stieltjes_kernel() -> None:
    report = check_stieltjes(MomentSequence([1, 0, 0, 0, 1]))
    assert not report.verdict
    assert KERNEL_SHIFT_0_2 in [c.name for c in report.failed()]


def test_check_stieltjes_report_dict(test_bernoulli: MomentSequence) -> None:
    data = check_stieltjes(test_bernoulli).to_dict()
    assert data["problem"] == "stieltjes"
    assert data["verdict"] is True
    assert len(data["conditions"]) == 4


def test_check_stieltjes_random() -> None:
    for seed in seeds():
        seq = sample_moments("half-axis", 3, seed)
        assert check_stieltjes(seq).verdict, f"seed {seed}"


# Hausdorff


def test_check_hausdorff(test_bernoulli: MomentSequence) -> None:
    assert check_hausdorff_necessary(test_bernoulli, lam=2.0).verdict

    report = check_hausdorff_necessary(test_bernoulli, lam=0.4)
    assert not report.verdict
    assert report.failed()[0].name == WINDOW_PSD
    assert report.failed()[0].label == "d"


def test_check_hausdorff_boundary() -> None:
    report = check_hausdorff_necessary(MomentSequence([1.0, 0.7, 0.49]), lam=0.7)
    assert report.verdict
    assert report.conditions[-1].boundary


def test_check_hausdorff_bad_window(test_bernoulli: MomentSequence) -> None:
    with pytest.raises(InvalidMomentsError):
        check_hausdorff_necessary(test_bernoulli, lam=0.0)


def test_check_hausdorff_random() -> None:
    for seed in seeds():
        seq = sample_moments("interval", 3, seed)
        assert check_hausdorff_necessary(seq, lam=1.0).verdict, f"seed {seed}"


# Gap


def test_check_gap(test_gap_sequence: MomentSequence, test_gap_sequence_n2: MomentSequence) -> None:
    assert check_gap_necessary(test_gap_sequence, lam=1.0).verdict
    assert check_gap_necessary(test_gap_sequence_n2, lam=1.0).verdict


def test_check_gap_two_atoms_order_two() -> None:
    # four moments of a two-atom measure: Γ_2 is singular
    report = check_gap_necessary(MomentSequence([1, 0.5, 2.5, 3.5, 8.5]), lam=1.0)
    assert not report.verdict
    assert [c.name for c in report.failed()] == [GAP_HANKEL_PD]


def test_check_gap_point_mass_inside() -> None:
    report = check_gap_necessary(MomentSequence(POINT_MASS_HALF), lam=1.0)
    assert not report.verdict
    assert GAP_WINDOW_PD in [c.name for c in report.failed()]


def test_check_gap_random() -> None:
    for seed in seeds():
        seq = sample_moments("gap-complement", 3, seed)
        assert check_gap_necessary(seq, lam=1.0).verdict, f"seed {seed}"
