import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Dict, List, Literal, Optional, Tuple

import numpy as np
import scipy.linalg
import scipy.optimize

from .consts import DEFAULT_RESIDUAL_TOL, DEFAULT_TOL
from .exceptions import DegenerateRankError, InvalidMomentsError, MomentError
from .extensions import DiscreteMeasure, jacobi_matrix
from .moments import MomentSequence, hankel
from .orthopoly import OrthoPolySystem, build_system, delta, recurrence_matrix
from .utils import Vector, matrix_scale

if TYPE_CHECKING:
    from .solvers import ParameterRange

logger = logging.getLogger(__name__)

SupportMode = Literal["half-axis", "interval", "gap-complement"]


@dataclass(frozen=True)
class MeasureSpec:
    """Recipe for a random discrete measure.

    Attributes:
        support_mode: ``"half-axis"`` (``[0, spread]``), ``"interval"`` (``[0, Λ]``) or ``"gap-complement"``
            (``[-spread, 0] ∪ [Λ, Λ + spread]``).
        atom_count: Number of atoms.
        seed: Seed of the generator; the same spec always gives the same measure.
        lam: Window length Λ.
        min_separation: Minimal distance between atoms.
        min_mass: Minimal mass of an atom.
        spread: Extent of the unbounded supports.
    """

    support_mode: SupportMode
    atom_count: int
    seed: int
    lam: float = 1.0
    min_separation: float = 1e-3
    min_mass: float = 1e-3
    spread: float = 2.0


@dataclass(frozen=True)
class ResidualReport:
    residuals: Tuple[float, ...]
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def to_dict(self) -> Dict[str, Any]:
        return dict(residuals=list(self.residuals), max_residual=self.max_residual, tol=self.tol, passed=self.passed)


# Random measures


def _draw_atoms(spec: MeasureSpec, rng: np.random.Generator) -> Vector:
    size = spec.atom_count
    if spec.support_mode == "interval":
        return rng.uniform(0.0, spec.lam, size)
    if spec.support_mode == "half-axis":
        return rng.uniform(0.0, spec.spread, size)
    offsets = rng.uniform(0.0, spec.spread, size)
    right = rng.random(size) < 0.5
    return np.where(right, spec.lam + offsets, -offsets)  # type: ignore[no-any-return]


def random_measure(spec: MeasureSpec, max_tries: int = 1000) -> DiscreteMeasure:
    """Draws a discrete measure respecting ``spec.support_mode``, with separated atoms and masses ``>= min_mass``.

    Example:
        ```python
        measure = random_measure(MeasureSpec("interval", atom_count=2, seed=0))
        all(0 <= t <= 1 for t in measure.atoms)  # True
        ```
    """
    if spec.atom_count < 1:
        raise InvalidMomentsError(f"A random measure needs at least one atom, got {spec.atom_count}")
    rng = np.random.default_rng(spec.seed)
    for _ in range(max_tries):
        atoms = np.sort(_draw_atoms(spec, rng))
        if np.all(np.diff(atoms) >= spec.min_separation):
            masses = rng.uniform(spec.min_mass, 1.0, spec.atom_count)
            return DiscreteMeasure(atoms, masses)
    raise MomentError(f"No separated sample after {max_tries} draws for {spec}", code="oracle")


def moments_of(measure: DiscreteMeasure, K: int, lam: Optional[float] = None) -> MomentSequence:
    """Moments ``s_k = sum_j μ_j t_j^k`` for ``k = 0..K`` with compensated summation.

    Example:
        ```python
        moments_of(DiscreteMeasure([-1.0, 2.0], [0.5, 0.5]), 4).values  # (1, 0.5, 2.5, 3.5, 8.5)
        ```
    """
    if K < 0 or K % 2:
        raise InvalidMomentsError(f"Moment sequences end on an even index, got K={K}")
    values = [math.fsum(mu * t**k for t, mu in zip(measure.atoms, measure.masses)) for k in range(K + 1)]
    return MomentSequence(values, lam=lam)


def transform(measure: DiscreteMeasure, z: complex) -> complex:
    """Stieltjes transform ``sum_j μ_j / (t_j - z)``."""
    if any(t == z for t in measure.atoms):
        raise InvalidMomentsError(f"The transform is singular at the atom {z}")
    return complex(sum(mu / (t - z) for t, mu in zip(measure.atoms, measure.masses)))


# Residuals


def residuals(measure: DiscreteMeasure, seq: MomentSequence) -> List[float]:
    """Relative residuals ``|sum μ t^k - s_k| / max(1, |s_k|)`` for every given moment."""
    computed = moments_of(measure, len(seq) - 1)
    return [abs(value - target) / max(1.0, abs(target)) for value, target in zip(computed.values, seq.values)]


def verify_solution(
    measure: DiscreteMeasure, seq: MomentSequence, tol: float = DEFAULT_RESIDUAL_TOL
) -> ResidualReport:
    """Checks that ``measure`` reproduces ``seq``; passes iff the largest relative residual is ``<= tol``.

    Example:
        ```python
        verify_solution(DiscreteMeasure([0.0, 1.0], [0.5, 0.5]), MomentSequence([1, 0.5, 0.5])).passed  # True
        ```
    """
    return ResidualReport(residuals=tuple(residuals(measure, seq)), tol=tol)


def window_moments(measure: DiscreteMeasure, K: int, lo: float, hi: float, slack: float = 0.0) -> MomentSequence:
    """Moments of the part of ``measure`` inside ``[lo - slack, hi + slack]``."""
    return moments_of(measure.restricted(lo - slack, hi + slack), K)


# Independent constructions


def orthonormal_by_determinants(seq: MomentSequence, k: int) -> Vector:
    """Coefficients of ``d_k`` from ``det[Γ rows 0..k-1; 1, t, ..., t^k] / sqrt(Δ_{k-1} Δ_k)``.

    Slow and ill-conditioned; only meant to validate `build_system`.
    """
    if not 0 <= k <= seq.order:
        raise InvalidMomentsError(f"d_{k} is not defined for a sequence of order {seq.order}")
    rows = hankel(seq, 0, k).entries[:k, :]
    cofactors = np.array(
        [(-1) ** (k + j) * (np.linalg.det(np.delete(rows, j, axis=1)) if k else 1.0) for j in range(k + 1)]
    )
    return cofactors / math.sqrt(delta(seq, k - 1) * delta(seq, k))  # type: ignore[no-any-return]


def _eigenvalue_bounds(system: OrthoPolySystem) -> List[Tuple[float, float]]:
    # λ_k(α) increases from the k-th to the (k+1)-th zero of p_n, the eigenvalues of the leading block
    zeros = scipy.linalg.eigvalsh(recurrence_matrix(system)) if system.order else np.zeros(0)
    edges = [-math.inf, *map(float, zeros), math.inf]
    return list(zip(edges[:-1], edges[1:]))


def _crossing(
    system: OrthoPolySystem, k: int, z: float, bounds: Tuple[float, float], grid: int, accuracy: float
) -> float:
    """``α`` at which the ``k``-th eigenvalue of the gap Jacobi matrix equals ``z``, ``±inf`` when it never does."""
    lower, upper = bounds
    if z <= lower:
        return -math.inf
    if z >= upper:
        return math.inf

    def excess(alpha: float) -> float:
        return float(scipy.linalg.eigvalsh(jacobi_matrix(system, alpha).matrix)[k]) - z

    scale = max(1.0, abs(z), matrix_scale(jacobi_matrix(system, 0.0).matrix))
    lo, hi = z - scale, z + scale
    for _ in range(grid):
        if excess(lo) < 0:
            break
        lo = z - 2 * (z - lo)
    else:
        return -math.inf
    for _ in range(grid):
        if excess(hi) > 0:
            break
        hi = z + 2 * (hi - z)
    else:
        return math.inf
    return float(scipy.optimize.brentq(excess, lo, hi, xtol=accuracy, rtol=max(accuracy, 4 * np.finfo(float).eps)))


def _complement(forbidden: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    pieces: List[Tuple[float, float]] = []
    start = -math.inf
    for lo, hi in sorted(forbidden):
        if lo > start:
            pieces.append((start, lo))
        start = max(start, hi)
    if start < math.inf:
        pieces.append((start, math.inf))
    return pieces


def scan_alpha(
    seq: MomentSequence, lam: float, grid: int = 200, tol: float = DEFAULT_TOL, accuracy: float = 1e-12
) -> "ParameterRange":
    """Admissible ``α`` set found spectrally: ``gap_jacobi(seq, α)`` has no eigenvalue inside ``(0, Λ)``.

    Every eigenvalue ``λ_k(α)`` is increasing in ``α`` and stays between consecutive zeros of ``p_n``, so the
    ``α`` putting ``λ_k`` inside ``(0, Λ)`` form an interval whose ends solve ``λ_k(α) = 0`` and ``λ_k(α) = Λ``.
    The ends are found by Brent's method on a bracket grown by doubling; the admissible set is the complement of
    the union of these intervals.

    Args:
        seq: The moments ``c_0, ..., c_{2n}``.
        lam: The gap length Λ.
        grid: Optional. Doublings of the search bracket before a crossing is taken as infinite. Defaults to ``200``.
        tol: Optional. Relative tolerance of the rank test. Defaults to ``1e-10``.
        accuracy: Optional. Absolute and relative accuracy of the endpoints. Defaults to ``1e-12``.

    Returns:
        A `ParameterRange` of kind ``"alpha"``: a segment, an exterior (``exterior=True``), a half-line with an
        infinite endpoint, ``(-inf, inf)`` when Λ is below the accuracy of the matrix, or an empty range.

    Raises:
        MomentError: The admissible set is not a single arc of the projective line.

    Example:
        ```python
        scan_alpha(MomentSequence([1, 0.5, 2.5]), lam=1.0)  # [-3.5, 4.5]
        ```
    """
    from .solvers import ParameterRange  # noqa: F811

    try:
        system = build_system(seq, tol)
    except DegenerateRankError as e:
        logger.debug("Scan skipped: %s", e)
        return ParameterRange.empty_range("alpha", "Hankel matrix is not positive definite")
    if lam <= accuracy * matrix_scale(jacobi_matrix(system, 0.0).matrix):
        return ParameterRange(kind="alpha", lo=-math.inf, hi=math.inf, boundary_notes="every α is admissible")

    forbidden: List[Tuple[float, float]] = []
    for k, bounds in enumerate(_eigenvalue_bounds(system)):
        lo = _crossing(system, k, 0.0, bounds, grid, accuracy)
        hi = _crossing(system, k, lam, bounds, grid, accuracy)
        if lo < hi:
            forbidden.append((lo, hi))
    logger.debug("α putting an eigenvalue inside (0, %g): %s", lam, forbidden)

    pieces = _complement(forbidden)
    if not pieces:
        return ParameterRange.empty_range("alpha", "no α leaves (0, Λ) free of eigenvalues")
    if len(pieces) == 1:
        lo, hi = pieces[0]
        if math.isinf(lo) and math.isinf(hi):
            return ParameterRange(kind="alpha", lo=lo, hi=hi, boundary_notes="every α is admissible")
        notes = "half-line" if math.isinf(lo) or math.isinf(hi) else "closed"
        return ParameterRange(kind="alpha", lo=lo, hi=hi, boundary_notes=notes)
    if len(pieces) == 2 and math.isinf(pieces[0][0]) and math.isinf(pieces[1][1]):
        return ParameterRange(kind="alpha", lo=pieces[0][1], hi=pieces[1][0], exterior=True, boundary_notes="closed")
    raise MomentError(f"Admissible α split into {len(pieces)} pieces: {pieces}", code="scan")
