import functools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Literal, Optional

import numpy as np
from typing_extensions import Unpack

from .base import Base, ToleranceParams
from .consts import (
    DEFAULT_MASS_TOL,
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_SUPPORT_TOL,
    DEFAULT_TOL,
    GAP_FIRST_INEQUALITY,
    GAP_TRINOMIAL_ROOTS,
    GAP_ZERO_GUARD,
    LOCAL_COMPLEMENT_MASS,
    LOCAL_RESIDUALS,
    RATIO_BOUND,
    SOLUTION_RESIDUALS,
    SOLUTION_SUPPORT,
)
from .exceptions import (
    BoundaryCaseError,
    ConventionsMismatchError,
    InvalidMomentsError,
    ParameterRangeError,
    UnsolvableError,
)
from .extensions import (
    DiscreteMeasure,
    gap_inequalities,
    gap_jacobi,
    gap_trinomial,
    hausdorff_ratio,
    spectral_measure,
    tau_extension,
    unique_extension,
)
from .moments import (
    Condition,
    MomentSequence,
    SolvabilityReport,
    check_gap_necessary,
    check_hausdorff_necessary,
    check_stieltjes,
)
from .oracle import ResidualReport, scan_alpha, verify_solution, window_moments
from .orthopoly import build_system, count_zeros, numerical_rank
from .utils import matrix_scale

logger = logging.getLogger(__name__)

RangeKind = Literal["tau", "alpha"]

DOUBLE_ROOT = "double root"


@dataclass(frozen=True)
class ParameterRange:
    """Admissible values of the parameter of a canonical-solution family.

    Attributes:
        kind: ``"tau"`` or ``"alpha"``.
        lo: Lower endpoint, ``nan`` when empty, ``-inf`` for a half-line.
        hi: Upper endpoint, ``nan`` when empty, ``inf`` for a half-line.
        boundary_notes: Endpoint and uniqueness remarks, or the reason the range is empty.
        exterior: The admissible set is ``(-inf, lo] ∪ [hi, inf)`` (a segment through infinity).
        empty: No admissible value.
        unique: The range is a single point and the problem has exactly one solution.
        condition: Name of the failing condition when empty.
    """

    kind: RangeKind
    lo: float
    hi: float
    boundary_notes: str = ""
    exterior: bool = False
    empty: bool = False
    unique: bool = False
    condition: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.empty and self.lo > self.hi:
            raise InvalidMomentsError(f"Parameter range [{self.lo}, {self.hi}] is reversed")

    @classmethod
    def empty_range(cls, kind: RangeKind, reason: str, condition: Optional[str] = None) -> "ParameterRange":
        return cls(kind=kind, lo=math.nan, hi=math.nan, boundary_notes=reason, empty=True, condition=condition)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        """Membership with a relative ``slack``."""
        if self.empty:
            return False
        margin = slack * max(1.0, abs(value))
        if self.exterior:
            return value <= self.lo + margin or value >= self.hi - margin
        return self.lo - margin <= value <= self.hi + margin

    def interior_point(self) -> float:
        """A value strictly inside a non-empty range."""
        if self.empty:
            raise ParameterRangeError(f"The {self.kind} range is empty", parameter=self.kind, value=math.nan)
        if self.exterior:
            return self.hi + max(1.0, self.hi - self.lo)
        if math.isinf(self.lo) and math.isinf(self.hi):
            return 0.0
        if math.isinf(self.lo):
            return self.hi - 1.0
        if math.isinf(self.hi):
            return self.lo + 1.0
        return 0.5 * (self.lo + self.hi)

    def to_dict(self) -> Dict[str, Any]:
        def endpoint(value: float) -> Optional[float]:
            return value if math.isfinite(value) else None

        return dict(
            kind=self.kind,
            lo=endpoint(self.lo),
            hi=endpoint(self.hi),
            boundary_notes=self.boundary_notes,
            exterior=self.exterior,
            empty=self.empty,
            unique=self.unique,
            condition=self.condition,
        )


@dataclass(frozen=True)
class LocalProblem:
    """Global moments ``a`` (order ``n``) and window moments ``b`` (order ``m >= n``) on ``[0, Λ]``."""

    a: MomentSequence
    b: MomentSequence
    lam: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise InvalidMomentsError(f"Window length must be positive, got {self.lam!r}")
        if self.a.order > self.b.order:
            raise InvalidMomentsError(
                f"Global order n={self.a.order} exceeds window order m={self.b.order}, c_k = a_k - b_k is undefined"
            )

    def complement(self) -> MomentSequence:
        """``c_k = a_k - b_k`` for ``k <= 2n``, the moments of the part outside the window."""
        values = [a - b for a, b in zip(self.a.values, self.b.values)]
        return MomentSequence(values, lam=self.lam)


@dataclass(frozen=True)
class FamilyMember:
    parameter: float
    measure: DiscreteMeasure
    admissible: bool


@functools.lru_cache(maxsize=None)
def _note_tau_normalization() -> None:
    logger.info("τ is normalised as (Γ_m^{-1})_{mm} (H - Q), the shift of the Jacobi corner")


def _raise_unsolvable(report: SolvabilityReport) -> None:
    failed = report.failed()
    if failed:
        names = ", ".join(condition.name for condition in failed)
        raise UnsolvableError(f"The {report.problem} problem is unsolvable: {names} failed", condition=failed[0].name)


def _verified(measure: DiscreteMeasure, seq: MomentSequence, problem: str, residual_tol: float) -> DiscreteMeasure:
    report = verify_solution(measure, seq, residual_tol)
    if not report.passed:
        logger.warning("The %s solution misses the moments by %g", problem, report.max_residual)
        raise UnsolvableError(
            f"The {problem} solution misses the moments by {report.max_residual:g}", condition=SOLUTION_RESIDUALS
        )
    return measure


def _clip_support(measure: DiscreteMeasure, lo: float, hi: float, slack: float) -> DiscreteMeasure:
    # atoms within slack of the support are moved onto it
    outside = [t for t in measure.atoms if t < lo - slack or t > hi + slack]
    if outside:
        raise UnsolvableError(f"Atoms {outside} leave [{lo}, {hi}]", condition=SOLUTION_SUPPORT)
    return DiscreteMeasure.from_points([min(max(t, lo), hi) for t in measure.atoms], measure.masses)


# Stieltjes problem


def _stieltjes_measure(
    seq: MomentSequence, tau: float, tol: float, mass_tol: float, support_tol: float = DEFAULT_SUPPORT_TOL
) -> DiscreteMeasure:
    rank = numerical_rank(seq, tol)
    if rank == 0:
        logger.info("Γ_0 vanishes, the only solution is the zero measure")
        return DiscreteMeasure([], [])
    if rank <= seq.order:
        measure = spectral_measure(unique_extension(seq, tol), seq[0], mass_tol)
        logger.info("Unique solution with %d atom(s), τ=%g is ignored", len(measure), tau)
        return measure

    _note_tau_normalization()
    extension = tau_extension(seq, tau, tol)
    logger.debug("Jacobi corner %r for τ=%r", extension.matrix[-1, -1], tau)
    measure = spectral_measure(extension, seq[0], mass_tol)
    if tau == 0 and measure.atoms and abs(measure.atoms[0]) <= support_tol * matrix_scale(extension.matrix):
        measure = DiscreteMeasure((0.0,) + measure.atoms[1:], measure.masses)
    return measure


def solve_stieltjes(
    seq: MomentSequence,
    tau: float,
    tol: float = DEFAULT_TOL,
    mass_tol: float = DEFAULT_MASS_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> DiscreteMeasure:
    """Canonical solution of the Stieltjes problem for the parameter ``τ >= 0``.

    Args:
        seq: The moments ``b_0, ..., b_{2m}``.
        tau: The parameter, ``τ = 0`` gives the minimal solution with an atom at ``0``.
        tol: Optional. Relative PSD tolerance. Defaults to ``1e-10``.
        mass_tol: Optional. Relative mass threshold. Defaults to ``1e-12``.
        support_tol: Optional. Slack below ``0`` for atoms moved onto ``0``. Defaults to ``1e-8``.
        residual_tol: Optional. Largest relative moment residual of the result. Defaults to ``1e-8``.

    Returns:
        At most ``m + 1`` atoms on ``[0, ∞)`` reproducing every given moment.

    Raises:
        ParameterRangeError: ``τ < 0``.
        UnsolvableError: A condition of `check_stieltjes` fails, or the computed measure misses a moment or has an
            atom below ``0``.

    Example:
        ```python
        solve_stieltjes(MomentSequence([1, 0.5, 0.5]), tau=2)  # atoms (3 ± √5) / 2
        ```
    """
    if not tau >= 0:
        raise ParameterRangeError(f"τ must be non-negative, got {tau!r}", parameter="tau", value=tau, lo=0.0)
    _raise_unsolvable(check_stieltjes(seq, tol))
    measure = _stieltjes_measure(seq, tau, tol, mass_tol, support_tol)
    measure = _clip_support(measure, 0.0, math.inf, support_tol * max(1.0, *map(abs, measure.atoms)))
    return _verified(measure, seq, "stieltjes", residual_tol)


# Hausdorff problem


def tau_range_hausdorff(
    seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL, support_tol: float = DEFAULT_SUPPORT_TOL
) -> ParameterRange:
    """``[0, Λ (1 - ratio(Λ))]``, the parameters of the canonical solutions supported in ``[0, Λ]``.

    The range is empty when a necessary condition fails or the ratio exceeds ``1``, and the single point ``0``
    (unique solution) when the ratio equals ``1`` or the Hankel matrix is singular.

    Example:
        ```python
        tau_range_hausdorff(MomentSequence([1, 0.5, 0.5]), lam=2.0)  # [0, 4/3]
        tau_range_hausdorff(MomentSequence([1, 0.5, 0.5]), lam=1.0)  # [0, 0], unique
        ```
    """
    report = check_hausdorff_necessary(seq, lam, tol)
    failed = report.failed()
    if failed:
        return ParameterRange.empty_range("tau", f"{failed[0].name} failed", condition=failed[0].name)

    if numerical_rank(seq, tol) <= seq.order:
        measure = _stieltjes_measure(seq, 0.0, tol, DEFAULT_MASS_TOL, support_tol)
        if measure.atoms and measure.atoms[-1] > lam + support_tol:
            return ParameterRange.empty_range("tau", "unique solution leaves [0, Λ]", condition=RATIO_BOUND)
        return ParameterRange(kind="tau", lo=0.0, hi=0.0, boundary_notes="unique (singular Γ_m)", unique=True)

    try:
        ratio = hausdorff_ratio(seq, lam, tol)
    except BoundaryCaseError:
        return ParameterRange.empty_range("tau", "d_m vanishes at Λ", condition=RATIO_BOUND)
    logger.debug("Ratio at Λ=%r is %r", lam, ratio)

    upper = lam * (1.0 - ratio)
    if abs(upper) <= support_tol:
        return ParameterRange(kind="tau", lo=0.0, hi=0.0, boundary_notes="unique (ratio = 1)", unique=True)
    if upper < 0:
        return ParameterRange.empty_range("tau", f"ratio {ratio:g} exceeds 1", condition=RATIO_BOUND)
    return ParameterRange(kind="tau", lo=0.0, hi=upper, boundary_notes="closed")


def solve_hausdorff(
    seq: MomentSequence,
    lam: float,
    tau: float,
    tol: float = DEFAULT_TOL,
    mass_tol: float = DEFAULT_MASS_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> DiscreteMeasure:
    """Canonical solution of the Hausdorff problem on ``[0, Λ]``.

    The extension is built in orthonormal coordinates; atoms within ``support_tol`` of ``0`` or ``Λ`` are moved
    onto the endpoint.

    Raises:
        UnsolvableError: The τ range is empty, or the computed measure leaves ``[0, Λ]`` or misses a moment.
        ParameterRangeError: ``τ`` is outside the τ range.

    Example:
        ```python
        solve_hausdorff(MomentSequence([1, 0.5, 0.5]), lam=1.0, tau=0.0)  # atoms (0, 1), masses (0.5, 0.5)
        ```
    """
    admissible = tau_range_hausdorff(seq, lam, tol, support_tol)
    if admissible.empty:
        raise UnsolvableError(
            f"The Hausdorff problem is unsolvable: {admissible.boundary_notes}",
            condition=admissible.condition or RATIO_BOUND,
        )
    if not admissible.contains(tau, support_tol):
        raise ParameterRangeError(
            f"τ={tau!r} is outside [{admissible.lo}, {admissible.hi}]",
            parameter="tau",
            value=tau,
            lo=admissible.lo,
            hi=admissible.hi,
        )

    measure = _stieltjes_measure(seq, min(max(tau, admissible.lo), admissible.hi), tol, mass_tol, support_tol)
    measure = _clip_support(measure, 0.0, lam, support_tol * max(1.0, lam))
    return _verified(measure, seq, "hausdorff", residual_tol)


def hausdorff_family(
    seq: MomentSequence,
    lam: float,
    taus: Iterable[float],
    tol: float = DEFAULT_TOL,
    mass_tol: float = DEFAULT_MASS_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> List[FamilyMember]:
    """Extension measures for every ``τ`` in order, flagged when ``τ`` is outside the admissible range.

    Members outside the range are still computed from the same extension; their support leaves ``[0, Λ]``.
    """
    _raise_unsolvable(check_stieltjes(seq, tol))
    admissible = tau_range_hausdorff(seq, lam, tol, support_tol)
    return [
        FamilyMember(
            parameter=float(tau),
            measure=_stieltjes_measure(seq, float(tau), tol, mass_tol, support_tol),
            admissible=admissible.contains(float(tau), support_tol),
        )
        for tau in taus
    ]


# Gap problem


def _trinomial_range(coefficients: np.ndarray, tol: float = DEFAULT_TOL) -> ParameterRange:
    # admissible set {W >= 0} of a polynomial of degree <= 2
    degree = len(coefficients) - 1
    if degree == 2:
        c, b, a = map(float, coefficients)
        discriminant = b * b - 4 * a * c
        if discriminant <= 0:
            double = abs(discriminant) <= tol * (b * b + abs(4 * a * c))
            notes = DOUBLE_ROOT if double else "complex roots"
            return ParameterRange.empty_range("alpha", notes, condition=GAP_TRINOMIAL_ROOTS)
        root = math.sqrt(discriminant)
        lo, hi = sorted(((-b - root) / (2 * a), (-b + root) / (2 * a)))
        if a < 0:
            return ParameterRange(kind="alpha", lo=lo, hi=hi, boundary_notes="closed")
        return ParameterRange(kind="alpha", lo=lo, hi=hi, exterior=True, boundary_notes="closed")
    if degree == 1:
        c, b = map(float, coefficients)
        if b > 0:
            return ParameterRange(kind="alpha", lo=-c / b, hi=math.inf, boundary_notes="half-line")
        return ParameterRange(kind="alpha", lo=-math.inf, hi=-c / b, boundary_notes="half-line")
    return ParameterRange.empty_range("alpha", "constant trinomial", condition=GAP_TRINOMIAL_ROOTS)


def _formula_range(seq: MomentSequence, lam: float, tol: float) -> ParameterRange:
    system = build_system(seq, tol)
    return _trinomial_range(gap_trinomial(system, lam).coef, tol)


def gap_solvability(seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL) -> SolvabilityReport:
    """Solvability of the Hamburger problem with no growth points inside ``(0, Λ)``.

    Conditions: the necessary positivity conditions, at most one zero of ``p_{n-1}`` inside ``(0, Λ)``, two real
    distinct roots of the trinomial ``W`` and positivity of ``h_n(Λ, 0) / (M(Λ) M(0))`` on its admissible set.

    Example:
        ```python
        gap_solvability(MomentSequence([1, 0.5, 2.5]), lam=1.0).verdict  # True
        gap_solvability(MomentSequence([1, 0.5, 0.25]), lam=1.0).verdict  # False
        ```
    """
    report = check_gap_necessary(seq, lam, tol)
    if not report.conditions[0].passed:
        return report

    # the guard is reported as soon as Γ_n is positive definite, two zeros inside also break the window condition
    system = build_system(seq, tol)
    n = system.order
    zeros = count_zeros(system.coeffs[n - 1], 0.0, lam) if n >= 1 else 0
    report.conditions.append(Condition(label="guard", name=GAP_ZERO_GUARD, passed=zeros < 2, witness=float(zeros)))
    if not report.verdict:
        return report

    trinomial = gap_trinomial(system, lam)
    admissible = _trinomial_range(trinomial.coef, tol)
    roots = None if admissible.empty else (admissible.lo, admissible.hi)
    report.conditions.append(
        Condition(
            label="iii",
            name=GAP_TRINOMIAL_ROOTS,
            passed=not admissible.empty,
            witness=roots,
            boundary=admissible.boundary_notes == DOUBLE_ROOT,
        )
    )
    if admissible.empty:
        return report

    try:
        firsta = gap_inequalities(system, lam, admissible.interior_point(), tol).firsta
    except BoundaryCaseError:
        firsta = math.nan
    report.conditions.append(Condition(label="ii", name=GAP_FIRST_INEQUALITY, passed=firsta > 0, witness=firsta))
    return report


def _same_range(formula: ParameterRange, scan: ParameterRange, accuracy: float) -> bool:
    if formula.empty or scan.empty:
        return formula.empty == scan.empty
    if math.isinf(scan.lo) and math.isinf(scan.hi) and formula.exterior:
        # the scan reports a gap below its accuracy as no constraint at all
        return formula.hi - formula.lo <= accuracy * max(1.0, abs(formula.lo))
    if formula.exterior != scan.exterior:
        return False
    for a, b in ((formula.lo, scan.lo), (formula.hi, scan.hi)):
        if math.isinf(a) or math.isinf(b):
            if a != b:
                return False
        elif abs(a - b) > accuracy * max(1.0, abs(a)):
            return False
    return True


def alpha_range(
    seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL, accuracy: float = 1e-6, grid: int = 200
) -> ParameterRange:
    """Admissible ``α`` set from the roots of ``W``, cross-checked against `scan_alpha`.

    Raises:
        UnsolvableError: `gap_solvability` fails.
        ConventionsMismatchError: The trinomial and the spectral scan disagree beyond ``accuracy``.

    Example:
        ```python
        alpha_range(MomentSequence([1, 0.5, 2.5]), lam=1.0)  # [-3.5, 4.5]
        ```
    """
    _raise_unsolvable(gap_solvability(seq, lam, tol))
    formula = _formula_range(seq, lam, tol)
    scan = scan_alpha(seq, lam, grid=grid, tol=tol)
    if not _same_range(formula, scan, accuracy):
        raise ConventionsMismatchError(
            f"Trinomial range [{formula.lo}, {formula.hi}] disagrees with the spectral scan [{scan.lo}, {scan.hi}]",
            formula_range=(formula.lo, formula.hi),
            scan_range=(scan.lo, scan.hi),
        )
    return formula


def _gap_measure(seq: MomentSequence, alpha: float, tol: float, mass_tol: float) -> DiscreteMeasure:
    return spectral_measure(gap_jacobi(seq, alpha, tol), seq[0], mass_tol)


def _check_alpha(admissible: ParameterRange, alpha: float, support_tol: float) -> None:
    if not admissible.contains(alpha, support_tol):
        raise ParameterRangeError(
            f"α={alpha!r} is outside the admissible set {admissible.to_dict()}",
            parameter="alpha",
            value=alpha,
            lo=admissible.lo,
            hi=admissible.hi,
        )


def solve_gap(
    seq: MomentSequence,
    lam: float,
    alpha: float,
    tol: float = DEFAULT_TOL,
    mass_tol: float = DEFAULT_MASS_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    admissible: Optional[ParameterRange] = None,
) -> DiscreteMeasure:
    """Canonical solution with no atom inside ``(0, Λ)``, from the Jacobi matrix with corner ``α``.

    Args:
        seq: The moments ``c_0, ..., c_{2n}``.
        lam: The gap length Λ.
        alpha: The corner, inside `alpha_range`.
        tol: Optional. Relative PSD tolerance. Defaults to ``1e-10``.
        mass_tol: Optional. Relative mass threshold. Defaults to ``1e-12``.
        support_tol: Optional. Slack on the gap and on the range membership. Defaults to ``1e-8``.
        residual_tol: Optional. Largest relative moment residual of the result. Defaults to ``1e-8``.
        admissible: Optional. A precomputed `alpha_range`. Defaults to None.

    Raises:
        ParameterRangeError: ``α`` is outside the admissible set.
        UnsolvableError: The computed measure misses a moment.

    Example:
        ```python
        solve_gap(MomentSequence([1, 0.5, 2.5]), lam=1.0, alpha=0.5)  # atoms (-1, 2), masses (0.5, 0.5)
        ```
    """
    admissible = alpha_range(seq, lam, tol) if admissible is None else admissible
    _check_alpha(admissible, alpha, support_tol)
    measure = _gap_measure(seq, alpha, tol, mass_tol)
    inside = [t for t in measure.atoms if support_tol < t < lam - support_tol]
    if inside:
        raise ParameterRangeError(
            f"α={alpha!r} puts atoms {inside} inside the gap", parameter="alpha", value=alpha
        )
    return _verified(measure, seq, "gap", residual_tol)


def gap_family(
    seq: MomentSequence,
    lam: float,
    alphas: Iterable[float],
    tol: float = DEFAULT_TOL,
    mass_tol: float = DEFAULT_MASS_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> List[FamilyMember]:
    """Jacobi-matrix measures for every ``α`` in order, flagged when ``α`` is outside the admissible set."""
    admissible = alpha_range(seq, lam, tol)
    return [
        FamilyMember(
            parameter=float(alpha),
            measure=_gap_measure(seq, float(alpha), tol, mass_tol),
            admissible=admissible.contains(float(alpha), support_tol),
        )
        for alpha in alphas
    ]


# Local problem


def local_residuals(
    problem: LocalProblem, measure: DiscreteMeasure, support_tol: float = DEFAULT_SUPPORT_TOL
) -> float:
    """Largest relative residual over the window moments ``b`` and the global moments ``a``."""
    window = window_moments(measure, len(problem.b) - 1, 0.0, problem.lam, slack=support_tol)
    target = verify_solution(window, problem.b)
    total = verify_solution(measure, problem.a)
    return max(target.max_residual, total.max_residual)


def solve_local(
    problem: LocalProblem,
    tau: float,
    alpha: float,
    tol: float = DEFAULT_TOL,
    mass_tol: float = DEFAULT_MASS_TOL,
    support_tol: float = DEFAULT_SUPPORT_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> DiscreteMeasure:
    """Measure on the real line with window moments ``b`` on ``[0, Λ]`` and global moments ``a``.

    The window part is the Hausdorff solution for ``τ``; the rest solves the gap problem for
    ``c_k = a_k - b_k`` with corner ``α``. Gap atoms touching ``[0, Λ]`` are rejected since they would change the
    window moments.

    Raises:
        UnsolvableError: A sub-problem is unsolvable, ``c_0 < 0``, or the composed measure misses a moment.
        ParameterRangeError: ``τ`` or ``α`` is outside its range.

    Example:
        ```python
        problem = LocalProblem(MomentSequence([2, 1, 3]), MomentSequence([1, 0.5, 0.5]), lam=1.0)
        solve_local(problem, tau=0.0, alpha=0.5).atoms  # (-1, 0, 1, 2)
        ```
    """
    lam = problem.lam
    complement = problem.complement()
    scale = np.maximum(1.0, np.abs(problem.a.as_array()))
    empty = bool(np.all(np.abs(complement.as_array()) <= tol * scale))
    if not empty and complement[0] <= tol * scale[0]:
        raise UnsolvableError(
            f"Complement mass c_0 = a_0 - b_0 = {complement[0]!r} is not positive", condition=LOCAL_COMPLEMENT_MASS
        )

    window = solve_hausdorff(problem.b, lam, tau, tol, mass_tol, support_tol, residual_tol)
    if empty:
        logger.info("Global and window moments coincide, the complement measure is empty")
        outside = DiscreteMeasure([], [])
    else:
        outside = solve_gap(complement, lam, alpha, tol, mass_tol, support_tol, residual_tol)
        touching = [t for t in outside.atoms if -support_tol <= t <= lam + support_tol]
        if touching:
            raise ParameterRangeError(
                f"α={alpha!r} puts complement atoms {touching} on [0, {lam}]", parameter="alpha", value=alpha
            )

    measure = window.merge(outside)
    residual = local_residuals(problem, measure, support_tol)
    if residual > residual_tol:
        logger.warning("Composed measure misses the moments by %g", residual)
        raise UnsolvableError(f"Composed measure misses the moments by {residual:g}", condition=LOCAL_RESIDUALS)
    return measure


class MomentSolver(Base):
    """
    Solver for the truncated Stieltjes, Hausdorff, gap and local moment problems with shared tolerances.

    Every method accepts the tolerance keywords of `ToleranceParams` to override the instance values for one call.

    Args:
        tol: Relative PSD tolerance.
        mass_tol: Relative mass threshold below which atoms are dropped.
        support_tol: Slack on support constraints and parameter ranges.
        residual_tol: Tolerance on moment residuals.

    Example:
        ```python
        from localmoments import MomentSequence, MomentSolver

        solver = MomentSolver(tol=1e-10)
        solver.solve_hausdorff(MomentSequence([1, 0.5, 0.5]), lam=1.0, tau=0.0)
        ```
    """

    # Checks

    def check_stieltjes(self, seq: MomentSequence, **kwargs: Unpack[ToleranceParams]) -> SolvabilityReport:
        params = self._tolerances(**kwargs)
        return check_stieltjes(seq, params["tol"])

    def check_hausdorff(
        self, seq: MomentSequence, lam: float, **kwargs: Unpack[ToleranceParams]
    ) -> SolvabilityReport:
        params = self._tolerances(**kwargs)
        return check_hausdorff_necessary(seq, lam, params["tol"])

    def check_gap(self, seq: MomentSequence, lam: float, **kwargs: Unpack[ToleranceParams]) -> SolvabilityReport:
        """Full gap report, including the trinomial and the zero guard."""
        params = self._tolerances(**kwargs)
        return gap_solvability(seq, lam, params["tol"])

    # Ranges

    def tau_range(self, seq: MomentSequence, lam: float, **kwargs: Unpack[ToleranceParams]) -> ParameterRange:
        params = self._tolerances(**kwargs)
        return tau_range_hausdorff(seq, lam, params["tol"], params["support_tol"])

    def alpha_range(self, seq: MomentSequence, lam: float, **kwargs: Unpack[ToleranceParams]) -> ParameterRange:
        params = self._tolerances(**kwargs)
        return alpha_range(seq, lam, params["tol"])

    # Solutions

    def solve_stieltjes(self, seq: MomentSequence, tau: float, **kwargs: Unpack[ToleranceParams]) -> DiscreteMeasure:
        params = self._tolerances(**kwargs)
        return solve_stieltjes(
            seq, tau, params["tol"], params["mass_tol"], params["support_tol"], params["residual_tol"]
        )

    def solve_hausdorff(
        self, seq: MomentSequence, lam: float, tau: float, **kwargs: Unpack[ToleranceParams]
    ) -> DiscreteMeasure:
        params = self._tolerances(**kwargs)
        return solve_hausdorff(
            seq, lam, tau, params["tol"], params["mass_tol"], params["support_tol"], params["residual_tol"]
        )

    def solve_gap(
        self, seq: MomentSequence, lam: float, alpha: float, **kwargs: Unpack[ToleranceParams]
    ) -> DiscreteMeasure:
        params = self._tolerances(**kwargs)
        return solve_gap(
            seq, lam, alpha, params["tol"], params["mass_tol"], params["support_tol"], params["residual_tol"]
        )

    def solve_local(
        self, problem: LocalProblem, tau: float, alpha: float, **kwargs: Unpack[ToleranceParams]
    ) -> DiscreteMeasure:
        params = self._tolerances(**kwargs)
        return solve_local(
            problem,
            tau,
            alpha,
            params["tol"],
            params["mass_tol"],
            params["support_tol"],
            params["residual_tol"],
        )

    # Families

    def hausdorff_family(
        self, seq: MomentSequence, lam: float, taus: Iterable[float], **kwargs: Unpack[ToleranceParams]
    ) -> List[FamilyMember]:
        params = self._tolerances(**kwargs)
        return hausdorff_family(seq, lam, taus, params["tol"], params["mass_tol"], params["support_tol"])

    def gap_family(
        self, seq: MomentSequence, lam: float, alphas: Iterable[float], **kwargs: Unpack[ToleranceParams]
    ) -> List[FamilyMember]:
        params = self._tolerances(**kwargs)
        return gap_family(seq, lam, alphas, params["tol"], params["mass_tol"], params["support_tol"])

    def verify(
        self, measure: DiscreteMeasure, seq: MomentSequence, **kwargs: Unpack[ToleranceParams]
    ) -> ResidualReport:
        params = self._tolerances(**kwargs)
        return verify_solution(measure, seq, params["residual_tol"])
