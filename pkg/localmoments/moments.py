import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from .consts import (
    DEFAULT_TOL,
    GAP_HANKEL_PD,
    GAP_WINDOW_PD,
    HANKEL_PSD,
    KERNEL_SHIFT_0_2,
    KERNEL_SHIFT_1_2,
    SHIFTED_HANKEL_PSD,
    WINDOW_PSD,
)
from .exceptions import InvalidMomentsError
from .utils import Matrix, Vector, check_symmetric, equilibrate, matrix_scale

logger = logging.getLogger(__name__)

Witness = Union[None, float, Tuple[float, float], List[float]]


@dataclass(frozen=True)
class MomentSequence:
    """Finite sequence of real power moments ``s_0, ..., s_{2m}``.

    Args:
        values: The moments, of odd length ``2m + 1``.
        lam: Optional. Window length Λ the sequence refers to, kept as metadata.

    Example:
        ```python
        from localmoments.moments import MomentSequence

        seq = MomentSequence([1, 0.5, 0.5])
        seq.order  # 1
        ```
    """

    values: Tuple[float, ...]
    lam: Optional[float] = None

    def __init__(self, values: Sequence[float], lam: Optional[float] = None) -> None:
        values = tuple(float(v) for v in values)
        if len(values) % 2 != 1:
            raise InvalidMomentsError(f"Expected an odd number of moments, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise InvalidMomentsError("All moments must be finite")
        if lam is not None and not (math.isfinite(lam) and lam > 0):
            raise InvalidMomentsError(f"Window length must be positive, got {lam!r}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "lam", lam)

    @property
    def order(self) -> int:
        return (len(self.values) - 1) // 2

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> float:
        return self.values[k]

    def as_array(self) -> Vector:
        return np.asarray(self.values, dtype=np.float64)

    def shifted(self, shift: int = 1) -> "MomentSequence":
        """Moments of ``t^shift dσ``, cut to the longest odd-length prefix (``s_1..s_{2m-1}`` for ``shift=1``)."""
        tail = self.values[shift:]
        if len(tail) % 2 == 0:
            tail = tail[:-1]
        if not tail:
            raise InvalidMomentsError(f"Sequence of order {self.order} has no moments left after a shift of {shift}")
        return MomentSequence(tail, lam=self.lam)

    def truncated(self, order: int) -> "MomentSequence":
        if not 0 <= order <= self.order:
            raise InvalidMomentsError(f"Cannot truncate a sequence of order {self.order} to order {order}")
        return MomentSequence(self.values[: 2 * order + 1], lam=self.lam)


@dataclass(frozen=True)
class HankelMatrix:
    entries: Matrix
    shift: int
    size: int


@dataclass
class Condition:
    label: str
    name: str
    passed: bool
    witness: Witness = None
    min_eigenvalue: Optional[float] = None
    threshold: Optional[float] = None
    strict: bool = False
    boundary: bool = False

    @property
    def positive_semidefinite(self) -> Optional[bool]:
        if self.min_eigenvalue is None or self.threshold is None:
            return None
        return self.min_eigenvalue >= -self.threshold

    @property
    def positive_definite(self) -> Optional[bool]:
        if self.min_eigenvalue is None or self.threshold is None:
            return None
        return self.min_eigenvalue > self.threshold

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            label=self.label,
            name=self.name,
            passed=self.passed,
            witness=self.witness,
            min_eigenvalue=self.min_eigenvalue,
            strict=self.strict,
            boundary=self.boundary,
            positive_semidefinite=self.positive_semidefinite,
            positive_definite=self.positive_definite,
        )


@dataclass
class SolvabilityReport:
    problem: str
    conditions: List[Condition] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(condition.passed for condition in self.conditions)

    def failed(self) -> List[Condition]:
        return [condition for condition in self.conditions if not condition.passed]

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            problem=self.problem,
            verdict=self.verdict,
            conditions=[condition.to_dict() for condition in self.conditions],
        )


# Hankel matrices


def hankel(seq: MomentSequence, shift: int, size: int) -> HankelMatrix:
    """Builds the ``(size+1) x (size+1)`` Hankel matrix ``(s_{j+k+shift})``.

    Entries are copied from the sequence, never computed.

    Args:
        seq: The moment sequence.
        shift: Index offset ``s >= 0``.
        size: The matrix has ``size + 1`` rows. ``size = -1`` gives an empty matrix.

    Returns:
        The Hankel matrix.

    Example:
        ```python
        hankel(MomentSequence([1, 1, 1]), shift=0, size=1).entries  # [[1, 1], [1, 1]]
        ```
    """
    if shift < 0 or size < -1 or shift + 2 * size > 2 * seq.order:
        raise InvalidMomentsError(
            f"Hankel matrix with shift {shift} and size {size} needs moments beyond index {2 * seq.order}"
        )
    if size == -1:
        return HankelMatrix(entries=np.zeros((0, 0)), shift=shift, size=size)
    values = seq.as_array()
    entries = scipy.linalg.hankel(values[shift : shift + size + 1], values[shift + size : shift + 2 * size + 1])
    return HankelMatrix(entries=entries, shift=shift, size=size)


def min_eigen(matrix: Matrix) -> Tuple[float, Optional[Vector]]:
    if matrix.size == 0:
        return math.inf, None
    eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
    return float(eigenvalues[0]), eigenvectors[:, 0]


def is_psd(matrix: Matrix, tol: float = DEFAULT_TOL) -> Tuple[bool, float]:
    """Checks ``λ_min(M) >= -tol * max(1, ||M||_inf)``.

    Args:
        matrix: A symmetric matrix.
        tol: Optional. Relative tolerance. Defaults to ``1e-10``.

    Returns:
        The verdict and the smallest eigenvalue (``inf`` for an empty matrix).
    """
    matrix = check_symmetric(matrix)
    lowest, _ = min_eigen(matrix)
    return lowest >= -tol * matrix_scale(matrix), lowest


def is_pd(matrix: Matrix, tol: float = DEFAULT_TOL) -> Tuple[bool, float]:
    """Strict version of `is_psd`: ``λ_min(M) > tol * max(1, ||M||_inf)``."""
    matrix = check_symmetric(matrix)
    lowest, _ = min_eigen(matrix)
    return lowest > tol * matrix_scale(matrix), lowest


def _normalize_sign(vector: Vector) -> Vector:
    nonzero = np.flatnonzero(np.abs(vector) > 1e-14)
    if nonzero.size and vector[nonzero[0]] < 0:
        return -vector
    return vector


def kernel_implication(
    seq: MomentSequence, src_shift: int, dst_shift: int, tol: float = DEFAULT_TOL
) -> Tuple[bool, Optional[Vector]]:
    """Checks that every near-null vector of the ``src_shift`` Hankel form also nulls the ``dst_shift`` form.

    All sizes ``r = 0, ..., m-1`` are checked. Null vectors come from the symmetric eigendecomposition of the
    source matrix with threshold ``tol * scale``; both forms are first scaled by the diagonal of the source when
    it is positive.

    Returns:
        ``(True, None)`` or ``(False, xi)`` with a normalized violating vector.

    Example:
        ```python
        kernel_implication(MomentSequence([1, 0, 0, 0, 1]), src_shift=0, dst_shift=2)  # (False, [0, 1])
        ```
    """
    for r in range(seq.order):
        src = hankel(seq, src_shift, r).entries
        dst = hankel(seq, dst_shift, r).entries
        diag = np.diag(src)
        unscale = 1.0 / np.sqrt(diag) if np.all(diag > 0) else np.ones(r + 1)
        src = src * np.outer(unscale, unscale)
        dst = dst * np.outer(unscale, unscale)
        eigenvalues, eigenvectors = scipy.linalg.eigh(src)
        null = eigenvectors[:, eigenvalues <= tol * matrix_scale(src)]
        if null.shape[1] == 0:
            continue
        restricted = null.T @ dst @ null
        values, vectors = scipy.linalg.eigh(0.5 * (restricted + restricted.T))
        worst = int(np.argmax(np.abs(values)))
        if abs(values[worst]) > tol * matrix_scale(dst):
            xi = unscale * (null @ vectors[:, worst])
            xi = _normalize_sign(xi / np.linalg.norm(xi))
            logger.debug("Kernel implication %d -> %d fails at size %d", src_shift, dst_shift, r)
            return False, xi
    return True, None


# Solvability checks


def _psd_condition(label: str, name: str, matrix: Matrix, tol: float, strict: bool = False) -> Condition:
    # strict conditions are decided on the unit-diagonal form, the witness is mapped back
    scaled = equilibrate(matrix) if strict else None
    tested = matrix if scaled is None else scaled
    lowest, vector = min_eigen(tested)
    if scaled is not None and vector is not None:
        vector = vector / np.sqrt(np.diag(matrix))
        vector = vector / np.linalg.norm(vector)
    threshold = tol * matrix_scale(tested)
    passed = lowest > threshold if strict else lowest >= -threshold
    witness: Witness = None
    if not passed and vector is not None:
        witness = _normalize_sign(vector).tolist()
    return Condition(
        label=label,
        name=name,
        passed=bool(passed),
        witness=witness,
        min_eigenvalue=None if math.isinf(lowest) else lowest,
        threshold=threshold,
        strict=strict,
        boundary=bool(abs(lowest) <= threshold) if not math.isinf(lowest) else False,
    )


def _kernel_condition(label: str, name: str, seq: MomentSequence, src: int, dst: int, tol: float) -> Condition:
    passed, xi = kernel_implication(seq, src, dst, tol)
    return Condition(label=label, name=name, passed=passed, witness=None if xi is None else xi.tolist())


def check_stieltjes(seq: MomentSequence, tol: float = DEFAULT_TOL) -> SolvabilityReport:
    """Solvability of the truncated Stieltjes problem on ``[0, ∞)``.

    Conditions: a) ``Γ_m`` PSD, b) kernel of ``Γ_r`` inside kernel of ``Γ(2)_r``,
    c) ``Γ(1)_{m-1}`` PSD and kernel of ``Γ(1)_r`` inside kernel of ``Γ(2)_r``.

    Example:
        ```python
        check_stieltjes(MomentSequence([1, 0.5, 0.5])).verdict  # True
        check_stieltjes(MomentSequence([1, -1, 1])).verdict  # False, condition c
        ```
    """
    m = seq.order
    report = SolvabilityReport(problem="stieltjes")
    report.conditions.append(_psd_condition("a", HANKEL_PSD, hankel(seq, 0, m).entries, tol))
    report.conditions.append(_kernel_condition("b", KERNEL_SHIFT_0_2, seq, 0, 2, tol))
    report.conditions.append(_psd_condition("c", SHIFTED_HANKEL_PSD, hankel(seq, 1, m - 1).entries, tol))
    report.conditions.append(_kernel_condition("c", KERNEL_SHIFT_1_2, seq, 1, 2, tol))
    return report


def window_matrix(seq: MomentSequence, lam: float) -> Matrix:
    """``ΛΓ_{m-1} - Γ(1)_{m-1}``, the Gram matrix of ``(Λ - t)`` on polynomials of degree ``m - 1``."""
    m = seq.order
    return lam * hankel(seq, 0, m - 1).entries - hankel(seq, 1, m - 1).entries


def gap_window_matrix(seq: MomentSequence, lam: float) -> Matrix:
    """``Γ(2)_{n-2} - ΛΓ(1)_{n-2}``, the Gram matrix of ``t(t - Λ)`` on polynomials of degree ``n - 2``."""
    n = seq.order
    if n < 2:
        return np.zeros((0, 0))
    return hankel(seq, 2, n - 2).entries - lam * hankel(seq, 1, n - 2).entries


def check_hausdorff_necessary(seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL) -> SolvabilityReport:
    """Adds condition d) ``ΛΓ_{m-1} - Γ(1)_{m-1}`` PSD to the Stieltjes report.

    Example:
        ```python
        check_hausdorff_necessary(MomentSequence([1, 0.5, 0.5]), lam=0.4).verdict  # False
        ```
    """
    if not lam > 0:
        raise InvalidMomentsError(f"Window length must be positive, got {lam!r}")
    report = check_stieltjes(seq, tol)
    report.problem = "hausdorff"
    report.conditions.append(_psd_condition("d", WINDOW_PSD, window_matrix(seq, lam), tol))
    return report


def check_gap_necessary(seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL) -> SolvabilityReport:
    """Necessary conditions of the Hamburger problem with gap ``(0, Λ)``.

    Both matrices must be positive definite, tested after scaling to a unit diagonal; the second one is empty
    (vacuously true) when ``n < 2``.

    Example:
        ```python
        check_gap_necessary(MomentSequence([1, 0.75, 3.75, 8.25, 24.75]), lam=1).verdict  # True
        ```
    """
    if not lam > 0:
        raise InvalidMomentsError(f"Window length must be positive, got {lam!r}")
    report = SolvabilityReport(problem="gap")
    report.conditions.append(_psd_condition("i", GAP_HANKEL_PD, hankel(seq, 0, seq.order).entries, tol, strict=True))
    report.conditions.append(_psd_condition("i", GAP_WINDOW_PD, gap_window_matrix(seq, lam), tol, strict=True))
    return report
