import functools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Literal, NamedTuple, Sequence, Tuple

import numpy as np
import numpy.polynomial.polynomial as poly
import scipy.linalg
from numpy.polynomial import Polynomial

from .consts import DEFAULT_MASS_TOL, DEFAULT_TOL
from .exceptions import (
    BoundaryCaseError,
    DegenerateRankError,
    InvalidMomentsError,
    SingularBlockError,
)
from .moments import MomentSequence, hankel, is_pd, is_psd
from .orthopoly import (
    ConjugateSystem,
    Number,
    OrthoPolySystem,
    build_system,
    cd_kernel,
    numerical_rank,
    partial_system,
    recurrence_matrix,
    shifted_system,
)
from .utils import Matrix, Vector, check_symmetric, matrix_scale, symmetrize

logger = logging.getLogger(__name__)

ExtensionKind = Literal["stieltjes-H", "stieltjes-tau", "gap-alpha", "unique"]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite sum of point masses ``sum_j μ_j δ_{t_j}``.

    Atoms are sorted and strictly increasing, masses are positive.

    Example:
        ```python
        measure = DiscreteMeasure([0.0, 1.0], [0.5, 0.5])
        measure.total_mass  # 1.0
        ```
    """

    atoms: Tuple[float, ...]
    masses: Tuple[float, ...]

    def __init__(self, atoms: Sequence[float], masses: Sequence[float]) -> None:
        atoms = tuple(float(t) for t in atoms)
        masses = tuple(float(mu) for mu in masses)
        if len(atoms) != len(masses):
            raise InvalidMomentsError(f"Got {len(atoms)} atoms but {len(masses)} masses")
        if any(not (mu > 0 and math.isfinite(mu)) for mu in masses):
            raise InvalidMomentsError("Masses must be positive and finite")
        if any(not math.isfinite(t) for t in atoms):
            raise InvalidMomentsError("Atoms must be finite")
        if any(b <= a for a, b in zip(atoms, atoms[1:])):
            raise InvalidMomentsError("Atoms must be strictly increasing")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_points(cls, atoms: Sequence[float], masses: Sequence[float]) -> "DiscreteMeasure":
        """Sorts the points and merges coinciding atoms."""
        merged: Dict[float, float] = {}
        for t, mu in zip(atoms, masses):
            merged[float(t)] = merged.get(float(t), 0.0) + float(mu)
        keys = sorted(merged)
        return cls(keys, [merged[t] for t in keys])

    @property
    def total_mass(self) -> float:
        return math.fsum(self.masses)

    def __len__(self) -> int:
        return len(self.atoms)

    def merge(self, other: "DiscreteMeasure") -> "DiscreteMeasure":
        return DiscreteMeasure.from_points(self.atoms + other.atoms, self.masses + other.masses)

    def restricted(self, lo: float, hi: float) -> "DiscreteMeasure":
        """Point masses inside the closed interval ``[lo, hi]``."""
        pairs = [(t, mu) for t, mu in zip(self.atoms, self.masses) if lo <= t <= hi]
        return DiscreteMeasure([t for t, _ in pairs], [mu for _, mu in pairs])

    def to_dict(self) -> Dict[str, List[float]]:
        return dict(atoms=list(self.atoms), masses=list(self.masses))


@dataclass(frozen=True)
class ExtensionSpec:
    """A self-adjoint extension realised as a matrix, together with the Gram matrix of its space.

    Attributes:
        kind: ``"stieltjes-H"`` (monomial basis, parameter ``H``), ``"stieltjes-tau"`` (orthonormal basis,
            parameter ``τ``), ``"gap-alpha"`` (orthonormal basis, parameter ``α``) or ``"unique"`` (degenerate
            case, the symmetric operator is already self-adjoint).
        parameter: ``H``, ``τ``, ``α`` or the last recurrence coefficient for ``"unique"``.
        matrix: The extension in the basis of the Gram matrix.
        gram: Gram (Hankel) matrix of the basis; ``gram @ matrix`` is symmetric.
    """

    kind: ExtensionKind
    parameter: float
    matrix: Matrix
    gram: Matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class GapInequalities(NamedTuple):
    firsta: float
    w_value: float
    m_zero: float
    m_lam: float

    @property
    def positive(self) -> bool:
        return self.firsta > 0 and self.w_value > 0


@dataclass(frozen=True)
class ExtensionBlocks:
    """Blocks of an extension over ``L_{m-1} ⊕ N`` in the orthonormal basis."""

    a00: Matrix
    g: Vector
    minimal_corner: float


@dataclass(frozen=True)
class GapBlocks:
    """Blocks of ``Q = J(J - Λ)`` over ``L_{n-2} ⊕ N_1`` and the resolvent data of the gap extension."""

    q: Matrix
    q00: Matrix
    k: Matrix
    w: Matrix
    z: Matrix
    schur: Matrix


# Stieltjes / Hausdorff extensions


def _require_nondegenerate(seq: MomentSequence, tol: float) -> None:
    rank = numerical_rank(seq, tol)
    if rank < seq.order + 1:
        raise DegenerateRankError(
            f"Γ_{seq.order} is singular (rank {rank}), the problem has a unique solution", rank=rank
        )


def _bordered_shift(seq: MomentSequence, corner: float) -> Matrix:
    # (s_{j+k+1}) with the missing s_{2m+1} replaced by the corner
    m = seq.order
    values = np.append(seq.as_array(), corner)
    return values[np.add.outer(np.arange(m + 1), np.arange(m + 1)) + 1]  # type: ignore[no-any-return]


def stieltjes_extension(seq: MomentSequence, H: float, tol: float = DEFAULT_TOL) -> ExtensionSpec:
    """Self-adjoint extension ``Ã = Γ_m^{-1} S`` of the multiplication operator, for the corner parameter ``H``.

    ``S`` is ``Γ(1)_{m-1}`` bordered by ``s_{m+1}, ..., s_{2m}`` with ``H`` in the corner.

    Args:
        seq: The moment sequence, with ``Γ_m`` positive definite.
        H: The corner parameter.
        tol: Optional. Relative tolerance of the rank test. Defaults to ``1e-10``.

    Returns:
        The extension, with ``gram = Γ_m``.

    Raises:
        DegenerateRankError: ``Γ_m`` is singular; use `unique_extension` instead.

    Example:
        ```python
        stieltjes_extension(MomentSequence([1, 0.5, 0.5]), H=0.5).matrix  # [[0, 0], [1, 1]]
        ```
    """
    _require_nondegenerate(seq, tol)
    gram = hankel(seq, 0, seq.order).entries
    shifted = _bordered_shift(seq, H)
    matrix = scipy.linalg.solve(gram, shifted, assume_a="pos")
    return ExtensionSpec(kind="stieltjes-H", parameter=float(H), matrix=matrix, gram=gram)


def min_H(seq: MomentSequence, tol: float = DEFAULT_TOL) -> float:
    """Smallest corner ``H`` giving a non-negative extension: ``Q = sum b_{m+j+1} s_{jk} b_{m+k+1}``.

    Example:
        ```python
        min_H(MomentSequence([1, 0.5, 0.5]))  # 0.5
        ```
    """
    m = seq.order
    if m == 0:
        return 0.0
    block = hankel(seq, 1, m - 1).entries
    positive, _ = is_pd(block, tol)
    if not positive:
        raise SingularBlockError(f"Γ(1)_{m - 1} is not positive definite")
    border = seq.as_array()[m + 1 : 2 * m + 1]
    return float(border @ scipy.linalg.solve(block, border, assume_a="pos"))


def inverse_corner(seq: MomentSequence) -> float:
    """``(Γ_m^{-1})_{mm} = Δ_{m-1} / Δ_m``."""
    gram = hankel(seq, 0, seq.order).entries
    lower = scipy.linalg.cholesky(gram, lower=True)
    return float(1.0 / lower[-1, -1] ** 2)


def tau_from_H(seq: MomentSequence, H: float, tol: float = DEFAULT_TOL) -> float:
    """``τ = (Γ_m^{-1})_{mm} (H - Q)``, the shift of the Jacobi corner above its minimal value."""
    return inverse_corner(seq) * (H - min_H(seq, tol))


def corner_from_tau(seq: MomentSequence, tau: float, tol: float = DEFAULT_TOL) -> float:
    """Inverse of `tau_from_H`: ``H = Q + τ / (Γ_m^{-1})_{mm}``.

    Example:
        ```python
        corner_from_tau(MomentSequence([1, 0.5, 0.5]), 4 / 3)  # 5/6
        ```
    """
    return min_H(seq, tol) + tau / inverse_corner(seq)


def minimal_extension(seq: MomentSequence, tol: float = DEFAULT_TOL) -> ExtensionSpec:
    """The minimal non-negative extension ``A_μ``, the only non-invertible canonical one."""
    return stieltjes_extension(seq, min_H(seq, tol), tol)


def unique_extension(seq: MomentSequence, tol: float = DEFAULT_TOL) -> ExtensionSpec:
    """Degenerate branch: ``Γ_m`` has rank ``r <= m`` and ``A_0`` is self-adjoint on polynomials of degree ``< r``.

    The spectral function of the ``r x r`` Jacobi matrix is the unique solution.
    """
    rank = numerical_rank(seq, tol)
    if rank == 0:
        raise DegenerateRankError("Γ_0 is not positive definite, the sequence carries no mass", rank=0)
    if rank > seq.order:
        raise InvalidMomentsError(f"Γ_{seq.order} is positive definite, the problem is not degenerate")
    system = partial_system(seq, rank - 1)
    matrix = recurrence_matrix(system, rank)
    logger.info("Γ_%d has rank %d, taking the unique-solution branch", seq.order, rank)
    return ExtensionSpec(kind="unique", parameter=float(system.diag[rank - 1]), matrix=matrix, gram=np.eye(rank))


def spectral_measure(
    spec: ExtensionSpec, mass0: float, mass_tol: float = DEFAULT_MASS_TOL
) -> DiscreteMeasure:
    """Spectral measure ``⟨E_t e_0, e_0⟩`` of an extension.

    With ``gram = L L^T`` the symmetric form ``B = L^{-1} (gram @ matrix) L^{-T}`` is diagonalised; atoms are its
    eigenvalues and masses ``mass0 * V[0, j]^2``. Atoms with mass below ``mass_tol * mass0`` are dropped without
    renormalising.

    Example:
        ```python
        spec = gap_jacobi(MomentSequence([1, 0.5, 2.5]), alpha=0.5)
        spectral_measure(spec, mass0=1.0)  # atoms (-1, 2), masses (0.5, 0.5)
        ```
    """
    try:
        lower = scipy.linalg.cholesky(spec.gram, lower=True)
    except np.linalg.LinAlgError as e:
        raise InvalidMomentsError("Gram matrix is not positive definite") from e

    product = spec.gram @ spec.matrix
    half = scipy.linalg.solve_triangular(lower, product, lower=True)
    form = scipy.linalg.solve_triangular(lower, half.T, lower=True)
    atoms, vectors = scipy.linalg.eigh(symmetrize(form))
    masses = mass0 * vectors[0, :] ** 2

    keep = masses >= mass_tol * mass0
    if not keep.all():
        logger.warning("Dropping %d atom(s) with mass below %g", int((~keep).sum()), mass_tol * mass0)
    return DiscreteMeasure.from_points(atoms[keep], masses[keep])


def block_factors(seq: MomentSequence, tol: float = DEFAULT_TOL) -> ExtensionBlocks:
    """``A_00`` (leading Jacobi block), ``G = β_{m-1} e_{m-1}^T`` and the minimal corner ``G A_00^{-1} G^*``."""
    system = build_system(seq, tol)
    m = system.order
    if m == 0:
        return ExtensionBlocks(a00=np.zeros((0, 0)), g=np.zeros(0), minimal_corner=0.0)
    a00 = recurrence_matrix(system, m)
    g = np.zeros(m)
    g[-1] = system.beta(m - 1)
    positive, _ = is_pd(a00, tol)
    if not positive:
        raise SingularBlockError("A_00 is not positive definite")
    return ExtensionBlocks(a00=a00, g=g, minimal_corner=float(g @ scipy.linalg.solve(a00, g, assume_a="pos")))


def jacobi_corner(seq: MomentSequence, tau: float, tol: float = DEFAULT_TOL) -> float:
    """Corner of the extension in orthonormal coordinates for the parameter ``τ``."""
    return block_factors(seq, tol).minimal_corner + tau


def tau_extension(seq: MomentSequence, tau: float, tol: float = DEFAULT_TOL) -> ExtensionSpec:
    """`stieltjes_extension` in orthonormal coordinates: the Jacobi matrix with corner `jacobi_corner`.

    Same spectral measure as the monomial form for the matching ``H``, without solving with ``Γ_m``. For
    ``τ = 0`` the smallest eigenvalue is ``0`` up to the accuracy of the recurrence.

    Example:
        ```python
        tau_extension(MomentSequence([1, 0.5, 0.5]), tau=0.0).matrix  # [[0.5, 0.5], [0.5, 0.5]]
        ```
    """
    corner = jacobi_corner(seq, tau, tol)
    system = build_system(seq, tol)
    matrix = jacobi_matrix(system, corner).matrix
    return ExtensionSpec(kind="stieltjes-tau", parameter=float(tau), matrix=matrix, gram=np.eye(system.order + 1))


def corner_schur_complement(seq: MomentSequence, tau: float, lam: float, tol: float = DEFAULT_TOL) -> float:
    """``h - λ - G (A_00 - λ)^{-1} G^*``, vanishing exactly when ``λ`` is an eigenvalue of the extension.

    For ``λ`` above the spectrum of ``A_00`` the spectrum of the extension stays ``<= λ`` iff the value is ``<= 0``.
    """
    blocks = block_factors(seq, tol)
    corner = blocks.minimal_corner + tau
    if blocks.a00.size == 0:
        return corner - lam
    shifted = blocks.a00 - lam * np.eye(len(blocks.g))
    return float(corner - lam - blocks.g @ scipy.linalg.solve(shifted, blocks.g))


def minimal_extension_bound_check(seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL) -> bool:
    """Checks ``Λ >= G [Λ I - A_00]^{-1} G^* + G A_00^{-1} G^*``.

    Returns ``False`` when ``Λ I - A_00`` is not positive semi-definite (condition d fails).

    Raises:
        BoundaryCaseError: ``A_00 - Λ I`` is singular.

    Example:
        ```python
        minimal_extension_bound_check(MomentSequence([1, 0.5, 0.5]), lam=2.0)  # True
        minimal_extension_bound_check(MomentSequence([1, 0.5, 0.5]), lam=0.9)  # False
        ```
    """
    blocks = block_factors(seq, tol)
    if blocks.a00.size == 0:
        return True
    shifted = lam * np.eye(len(blocks.g)) - blocks.a00
    lowest = float(scipy.linalg.eigvalsh(shifted)[0])
    threshold = tol * matrix_scale(blocks.a00) * max(1.0, lam)
    if abs(lowest) <= threshold:
        raise BoundaryCaseError(f"A_00 - ΛI is singular at Λ={lam}", quantity="A_00 - ΛI")
    if lowest < 0:
        return False
    bound = float(blocks.g @ scipy.linalg.solve(shifted, blocks.g, assume_a="pos")) + blocks.minimal_corner
    return lam >= bound - tol * max(1.0, lam)


def hausdorff_ratio(seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL) -> float:
    """``sqrt(Δ_m Δ^1_{m-2} / (Δ_{m-1} Δ^1_{m-1})) d^1_{m-1}(λ) / d_m(λ)``.

    Solvability of the Hausdorff problem needs ratio ``<= 1`` at ``λ = Λ``; equality means uniqueness.

    Raises:
        BoundaryCaseError: ``d_m(λ) = 0`` (pole).

    Example:
        ```python
        hausdorff_ratio(MomentSequence([1, 0.5, 0.5]), 2.0)  # 1/3
        ```
    """
    system = build_system(seq, tol)
    m = system.order
    if m == 0:
        return 0.0
    if math.isinf(lam):
        return 0.0
    shifted = shifted_system(seq, tol)
    top = system.evaluate(m, lam)
    if abs(top) <= tol * max(1.0, float(np.max(np.abs(system.coefficients[:, m])))):
        raise BoundaryCaseError(f"d_{m} vanishes at λ={lam}", quantity="d_m(λ)")
    factor = math.sqrt(system.delta(m) * shifted.delta(m - 2) / (system.delta(m - 1) * shifted.delta(m - 1)))
    return float(factor * shifted.evaluate(m - 1, lam) / top)


def hausdorff_ratio_kernel(seq: MomentSequence, lam: float, tol: float = DEFAULT_TOL) -> float:
    """Same ratio from the Christoffel–Darboux kernel: ``-h_{m-1}(λ, 0) / (d_m(λ) d_m(0))``."""
    system = build_system(seq, tol)
    m = system.order
    if m == 0:
        return 0.0
    return float(-cd_kernel(system, m - 1, lam, 0.0) / (system.evaluate(m, lam) * system.evaluate(m, 0.0)))


# Gap extensions


def gap_jacobi(seq: MomentSequence, alpha: float, tol: float = DEFAULT_TOL) -> ExtensionSpec:
    """Jacobi matrix of the gap extension: diagonal ``(a_0, ..., a_{n-1}, α)``, off-diagonal ``(β_0, ..., β_{n-1})``.

    Example:
        ```python
        gap_jacobi(MomentSequence([1, 0.5, 2.5]), alpha=0.5).matrix  # [[0.5, 1.5], [1.5, 0.5]]
        ```
    """
    system = build_system(seq, tol)
    return jacobi_matrix(system, alpha)


def jacobi_matrix(system: OrthoPolySystem, alpha: float) -> ExtensionSpec:
    n = system.order
    matrix = np.diag(np.append(system.diag, alpha).astype(np.float64))
    if n > 0:
        matrix += np.diag(system.offdiag, 1) + np.diag(system.offdiag, -1)
    return ExtensionSpec(kind="gap-alpha", parameter=float(alpha), matrix=matrix, gram=np.eye(n + 1))


@functools.lru_cache(maxsize=None)
def _note_sign_convention() -> None:
    logger.info("M-polynomial uses (t-α)p_n(t) - β_{n-1}p_{n-1}(t), the characteristic form of the Jacobi matrix")


def m_polynomial(system: OrthoPolySystem, alpha: float) -> Vector:
    """Coefficients of ``M(t) = (t - α) p_n(t) - β_{n-1} p_{n-1}(t)``.

    Its zeros are the eigenvalues of `gap_jacobi` for the same ``α``.

    Example:
        ```python
        system = build_system(MomentSequence([1, 0.5, 2.5]))
        np.polynomial.polynomial.polyroots(m_polynomial(system, 0.5))  # [-1, 2]
        ```
    """
    _note_sign_convention()
    n = system.order
    coeffs = poly.polymul([-alpha, 1.0], system.coefficients[:, n])
    if n > 0:
        coeffs = poly.polysub(coeffs, system.beta(n - 1) * system.coefficients[:, n - 1])
    return coeffs[: n + 2]  # type: ignore[no-any-return]


def _m_in_alpha(system: OrthoPolySystem, z: float) -> Polynomial:
    # M_α(z) as a polynomial in α
    n = system.order
    top = float(system.evaluate(n, z))
    previous = system.beta(n - 1) * float(system.evaluate(n - 1, z)) if n > 0 else 0.0
    return Polynomial([z * top - previous, -top])


def gap_trinomial(system: OrthoPolySystem, lam: float) -> Polynomial:
    """``W(α) = det(N(0) M_α(Λ) - N(Λ) M_α(0))``, the determinant of ``Λ M_α(0) M_α(Λ) Z_Ã``.

    ``N(z) = [[(z - α) p_{n-1}(z) / β_{n-1}, p_{n-1}(z)], [p_{n-1}(z), p_n(z)]]``. ``W`` is a quadratic in ``α``
    vanishing exactly where an eigenvalue of the Jacobi matrix sits at ``0`` or ``Λ``. For ``n = 0`` it reduces to
    ``M_α(0) M_α(Λ) / p_0^2``.
    """
    n = system.order
    m_zero, m_lam = _m_in_alpha(system, 0.0), _m_in_alpha(system, lam)
    if n == 0:
        return (m_zero * m_lam) / float(system.evaluate(0, 0.0)) ** 2  # type: ignore[no-any-return]

    beta = system.beta(n - 1)

    def blocks(z: float) -> Tuple[Polynomial, Polynomial, Polynomial]:
        previous = float(system.evaluate(n - 1, z))
        return (
            Polynomial([z * previous / beta, -previous / beta]),
            Polynomial([previous]),
            Polynomial([float(system.evaluate(n, z))]),
        )

    n11_zero, n12_zero, n22_zero = blocks(0.0)
    n11_lam, n12_lam, n22_lam = blocks(lam)
    x11 = n11_zero * m_lam - n11_lam * m_zero
    x12 = n12_zero * m_lam - n12_lam * m_zero
    x22 = n22_zero * m_lam - n22_lam * m_zero
    trinomial = x11 * x22 - x12 * x12
    scale = max(1.0, float(np.max(np.abs(trinomial.coef))))
    return trinomial.trim(tol=1e-14 * scale).cutdeg(2)  # type: ignore[no-any-return]


def gap_inequalities(system: OrthoPolySystem, lam: float, alpha: float, tol: float = DEFAULT_TOL) -> GapInequalities:
    """``h_n(Λ,0) / (M(Λ) M(0))`` and ``W(α)``; the extension has no eigenvalue in ``[0, Λ]`` iff both are positive.

    Raises:
        BoundaryCaseError: ``M`` vanishes at ``0`` or ``Λ`` (an eigenvalue sits on the gap boundary).

    Example:
        ```python
        system = build_system(MomentSequence([1, 0.5, 2.5]))
        gap_inequalities(system, lam=1.0, alpha=0.5).firsta  # 0.5
        ```
    """
    n = system.order
    coeffs = m_polynomial(system, alpha)
    m_zero = float(poly.polyval(0.0, coeffs))
    m_lam = float(poly.polyval(lam, coeffs))
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    if abs(m_zero) <= tol * scale or abs(m_lam) <= tol * scale:
        raise BoundaryCaseError(f"M vanishes on the gap boundary for α={alpha}", quantity="M(0)M(Λ)")
    firsta = float(cd_kernel(system, n, lam, 0.0)) / (m_lam * m_zero)
    w_value = float(gap_trinomial(system, lam)(alpha))
    return GapInequalities(firsta=firsta, w_value=w_value, m_zero=m_zero, m_lam=m_lam)


def gap_operator_blocks(seq: MomentSequence, lam: float, alpha: float, tol: float = DEFAULT_TOL) -> GapBlocks:
    """Blocks of ``Q_Ã = Ã(Ã - Λ)`` over ``L_{n-2} ⊕ N_1``, ``Z_Ã`` and ``W - K^* Q_00^{-1} K``."""
    system = build_system(seq, tol)
    n = system.order
    if n < 1:
        raise InvalidMomentsError("Operator blocks need a sequence of order n >= 1")
    jacobi = jacobi_matrix(system, alpha).matrix
    q = jacobi @ (jacobi - lam * np.eye(n + 1))
    split = n - 1
    q00, k, w = q[:split, :split], q[:split, split:], q[split:, split:]
    z = scipy.linalg.inv(q)[split:, split:]
    schur = w - k.T @ scipy.linalg.solve(q00, k) if split else w
    return GapBlocks(q=q, q00=q00, k=k, w=w, z=z, schur=schur)


def resolvent_block(system: OrthoPolySystem, alpha: float, z: Number) -> np.ndarray:
    """Lower-right ``2 x 2`` block of ``(Ã - z)^{-1}`` in the basis ``(p_{n-1}, p_n)``: ``-N(z) / M(z)``."""
    n = system.order
    if n < 1:
        raise InvalidMomentsError("The resolvent block needs a system of order n >= 1")
    beta = system.beta(n - 1)
    previous, top = system.evaluate(n - 1, z), system.evaluate(n, z)
    m_value = poly.polyval(z, m_polynomial(system, alpha))
    block = np.array([[(z - alpha) * previous / beta, previous], [previous, top]])
    return -block / m_value  # type: ignore[no-any-return]


def schur_positivity(matrix: Matrix, split: int, tol: float = DEFAULT_TOL) -> bool:
    """Positivity through the Schur–Frobenius factorisation: the complement ``W - K^* Q_00^{-1} K`` must be PSD.

    Raises:
        SingularBlockError: The leading ``split x split`` block is not positive definite.

    Example:
        ```python
        schur_positivity(np.array([[2.0, 1.0], [1.0, 2.0]]), split=1)  # True
        ```
    """
    matrix = check_symmetric(matrix)
    lead, coupling, trailing = matrix[:split, :split], matrix[:split, split:], matrix[split:, split:]
    positive, _ = is_pd(lead, tol)
    if not positive:
        raise SingularBlockError("Leading block is not positive definite")
    complement = trailing - coupling.T @ scipy.linalg.solve(lead, coupling, assume_a="pos")
    passed, _ = is_psd(symmetrize(complement), tol)
    return passed


# Rational forms


def nevanlinna_transform(system: OrthoPolySystem, conjugate: ConjugateSystem, corner: float, z: Number) -> complex:
    """``∫ dσ(t) / (t - z) = -E(z) / M(z)`` for the canonical solution with Jacobi corner ``corner``.

    ``M(z) = (z - c) P_top(z) - β P_prev(z)`` and ``E(z) = (z - c) E_top(z) - β E_prev(z) + ∫ P_top dσ``.
    """
    top = system.order
    shift = z - corner
    denominator = shift * system.evaluate(top, z)
    numerator = shift * conjugate.evaluate(top, z) + conjugate.integrals[top]
    if top > 0:
        beta = system.beta(top - 1)
        denominator -= beta * system.evaluate(top - 1, z)
        numerator -= beta * conjugate.evaluate(top - 1, z)
    return complex(-numerator / denominator)


def stieltjes_transform(spec: ExtensionSpec, mass0: float, z: Number) -> complex:
    """``mass0 * [(B - z)^{-1}]_{00}`` of the symmetric form of an extension."""
    lower = scipy.linalg.cholesky(spec.gram, lower=True)
    half = scipy.linalg.solve_triangular(lower, spec.gram @ spec.matrix, lower=True)
    form = symmetrize(scipy.linalg.solve_triangular(lower, half.T, lower=True))
    unit = np.zeros(spec.dim)
    unit[0] = 1.0
    return complex(mass0 * scipy.linalg.solve(form - z * np.eye(spec.dim), unit)[0])
