import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
import numpy.polynomial.polynomial as poly
import scipy.linalg

from .consts import DEFAULT_TOL
from .exceptions import DegenerateRankError, InvalidMomentsError
from .moments import MomentSequence, hankel, is_pd
from .utils import Matrix, Vector, equilibrate

logger = logging.getLogger(__name__)

Number = Union[float, complex]


@dataclass(frozen=True)
class OrthoPolySystem:
    """Orthonormal polynomials ``d_0, ..., d_order`` of a moment sequence and their recurrence data.

    Attributes:
        moments: The sequence the system was built from.
        coefficients: Upper triangular matrix whose column ``k`` holds the monomial coefficients of ``d_k``.
        diag: Recurrence diagonal ``a_0, ..., a_{order-1}``. ``a_order`` would need ``s_{2 order + 1}``.
        offdiag: Recurrence off-diagonal ``β_0, ..., β_{order-1}``, all positive.
        deltas: Hankel determinants ``Δ_0, ..., Δ_order``.
    """

    moments: MomentSequence
    coefficients: Matrix
    diag: Vector
    offdiag: Vector
    deltas: Vector

    @property
    def order(self) -> int:
        return self.coefficients.shape[0] - 1

    @property
    def coeffs(self) -> List[Vector]:
        return [self.coefficients[: k + 1, k] for k in range(self.order + 1)]

    def delta(self, k: int) -> float:
        if k == -1:
            return 1.0
        if not 0 <= k <= self.order:
            raise InvalidMomentsError(f"Δ_{k} is not available for a system of order {self.order}")
        return float(self.deltas[k])

    def beta(self, k: int) -> float:
        return float(self.offdiag[k])

    def evaluate(self, k: int, x: Number) -> Number:
        return eval_poly(self.coefficients[: k + 1, k], x)

    def values(self, x: Number) -> np.ndarray:
        """``[d_0(x), ..., d_order(x)]``."""
        return np.array([self.evaluate(k, x) for k in range(self.order + 1)])


@dataclass(frozen=True)
class ConjugateSystem:
    """Second-kind polynomials ``e_k(z) = ∫ (d_k(t) - d_k(z)) / (t - z) dσ(t)``.

    Attributes:
        coefficients: Column ``k`` holds the monomial coefficients of ``e_k`` (degree ``k - 1``).
        integrals: ``∫ d_k dσ`` for each ``k``; ``√s_0`` for ``k = 0`` and zero otherwise.
    """

    coefficients: Matrix
    integrals: Vector

    @property
    def coeffs(self) -> List[Vector]:
        return [self.coefficients[: max(k, 1), k] for k in range(self.coefficients.shape[1])]

    def evaluate(self, k: int, z: Number) -> Number:
        return eval_poly(self.coefficients[:, k], z)


def eval_poly(coeffs: Union[Sequence[float], Vector], x: Number) -> Number:
    """Horner evaluation of ``sum_j coeffs[j] x^j``.

    Example:
        ```python
        eval_poly([-1, 2], 2.0)  # 3.0
        ```
    """
    return poly.polyval(x, np.asarray(coeffs))  # type: ignore[no-any-return]


def delta(seq: MomentSequence, k: int) -> float:
    """``Δ_k = det Γ_k`` with the convention ``Δ_{-1} = 1``.

    Example:
        ```python
        delta(MomentSequence([1, 0.5, 0.5]), 1)  # 0.25
        ```
    """
    if k == -1:
        return 1.0
    if not 0 <= k <= seq.order:
        raise InvalidMomentsError(f"Δ_{k} is not defined for a sequence of order {seq.order}")
    return float(np.linalg.det(hankel(seq, 0, k).entries))


def numerical_rank(seq: MomentSequence, tol: float = DEFAULT_TOL) -> int:
    """Number of leading Hankel sections ``Γ_0, Γ_1, ...`` that are numerically positive definite.

    Sections are tested after scaling to a unit diagonal, so the threshold follows each moment rather than the
    largest one.
    """
    for k in range(seq.order + 1):
        scaled = equilibrate(hankel(seq, 0, k).entries)
        if scaled is None or not is_pd(scaled, tol)[0]:
            return k
    return seq.order + 1


def _orthonormal_basis(seq: MomentSequence, degree: int) -> OrthoPolySystem:
    gram = hankel(seq, 0, degree).entries
    lower = scipy.linalg.cholesky(gram, lower=True)
    coefficients = scipy.linalg.solve_triangular(lower, np.eye(degree + 1), lower=True).T
    pivots = np.diag(lower)
    deltas = np.cumprod(pivots**2)
    offdiag = pivots[1:] / pivots[:-1]

    # a_k = <t d_k, d_k> needs moments up to s_{2k+1}
    top = min(degree, seq.order - 1)
    if top >= 0:
        basis = coefficients[: top + 1, : top + 1]
        diag = np.diag(basis.T @ hankel(seq, 1, top).entries @ basis).copy()
    else:
        diag = np.zeros(0)
    return OrthoPolySystem(moments=seq, coefficients=coefficients, diag=diag, offdiag=offdiag, deltas=deltas)


def build_system(seq: MomentSequence, tol: float = DEFAULT_TOL) -> OrthoPolySystem:
    """Orthonormal polynomials ``d_0, ..., d_m`` via Cholesky factorisation of ``Γ_m``.

    With ``Γ_m = L L^T`` the coefficient matrix is ``L^{-T}``, so leading coefficients are positive.

    Raises:
        DegenerateRankError: When ``Γ_m`` is numerically singular; carries the detected rank.

    Example:
        ```python
        system = build_system(MomentSequence([1, 0.5, 0.5]))
        system.coeffs  # [array([1.]), array([-1., 2.])]
        ```
    """
    rank = numerical_rank(seq, tol)
    if rank < seq.order + 1:
        raise DegenerateRankError(f"Hankel matrix of order {seq.order} has numerical rank {rank}", rank=rank)
    return _orthonormal_basis(seq, seq.order)


def partial_system(seq: MomentSequence, degree: int) -> OrthoPolySystem:
    """Orthonormal polynomials up to ``degree`` when only ``Γ_degree`` is known to be positive definite."""
    if not 0 <= degree <= seq.order:
        raise InvalidMomentsError(f"Degree {degree} is out of range for a sequence of order {seq.order}")
    return _orthonormal_basis(seq, degree)


def shifted_system(seq: MomentSequence, tol: float = DEFAULT_TOL) -> OrthoPolySystem:
    """Orthonormal system ``d^1_k`` of the shifted moments ``s_1, ..., s_{2m-1}`` (the measure ``t dσ``).

    Example:
        ```python
        shifted_system(MomentSequence([1, 0.5, 0.5])).coeffs  # [array([1.41421356])]
        ```
    """
    return build_system(seq.shifted(1), tol)


def conjugate_system(system: OrthoPolySystem, seq: Optional[MomentSequence] = None) -> ConjugateSystem:
    """Second-kind polynomials computed exactly from the moments.

    ``(t^j - z^j) / (t - z) = sum_{i<j} t^i z^{j-1-i}``, so the coefficient of ``z^p`` in ``e_k`` is
    ``sum_{j>p} c_{jk} s_{j-1-p}``.

    Example:
        ```python
        seq = MomentSequence([1, 0.5, 0.5])
        conjugate_system(build_system(seq), seq).coeffs[1]  # array([2.])
        ```
    """
    seq = system.moments if seq is None else seq
    values = seq.as_array()
    size = system.order + 1
    coefficients = np.zeros((max(size - 1, 1), size))
    for k in range(size):
        column = system.coefficients[:, k]
        for p in range(k):
            coefficients[p, k] = sum(column[j] * values[j - 1 - p] for j in range(p + 1, k + 1))
    integrals = system.coefficients.T @ values[:size]
    return ConjugateSystem(coefficients=coefficients, integrals=integrals)


def cd_kernel(system: OrthoPolySystem, s: int, lam: Number, mu: Number) -> Number:
    """Christoffel–Darboux kernel ``h_s(λ, μ) = sum_{k<=s} d_k(λ) d_k(μ)``.

    Example:
        ```python
        cd_kernel(build_system(MomentSequence([1, 0.5, 2.5])), 1, 1.0, 0.0)  # 8/9
        ```
    """
    if not 0 <= s <= system.order:
        raise InvalidMomentsError(f"Kernel index {s} is out of range for a system of order {system.order}")
    return sum(system.evaluate(k, lam) * system.evaluate(k, mu) for k in range(s + 1))  # type: ignore[no-any-return]


def cd_difference(system: OrthoPolySystem, s: int, lam: Number, mu: Number) -> Number:
    """Difference form ``β_s (d_s(λ) d_{s+1}(μ) - d_s(μ) d_{s+1}(λ)) / (μ - λ)`` of the same kernel."""
    if not 0 <= s < system.order:
        raise InvalidMomentsError(f"The difference form needs d_{s + 1}, system order is {system.order}")
    if lam == mu:
        raise InvalidMomentsError("The difference form needs λ != μ")
    numerator = system.evaluate(s, lam) * system.evaluate(s + 1, mu) - system.evaluate(s, mu) * system.evaluate(
        s + 1, lam
    )
    return system.beta(s) * numerator / (mu - lam)  # type: ignore[no-any-return]


def kernel_polynomial(system: OrthoPolySystem, s: int, mu: float) -> Vector:
    """Monomial coefficients of ``λ -> h_s(λ, μ)``."""
    weights = system.values(mu)[: s + 1]
    return system.coefficients[: s + 1, : s + 1] @ weights  # type: ignore[no-any-return]


def recurrence_matrix(system: OrthoPolySystem, size: Optional[int] = None) -> Matrix:
    """Leading Jacobi block with diagonal ``a_0..a_{size-1}`` and off-diagonal ``β_0..β_{size-2}``."""
    size = len(system.diag) if size is None else size
    if not 0 <= size <= len(system.diag):
        raise InvalidMomentsError(f"Jacobi block of size {size} needs a_{size - 1}, only {len(system.diag)} known")
    matrix = np.diag(system.diag[:size].astype(np.float64))
    if size > 1:
        off = system.offdiag[: size - 1]
        matrix += np.diag(off, 1) + np.diag(off, -1)
    return matrix


# Sturm sequences


def sturm_chain(coeffs: Union[Sequence[float], Vector], rtol: float = 1e-13) -> List[Vector]:
    chain = [poly.polytrim(np.asarray(coeffs, dtype=np.float64), tol=0)]
    if len(chain[0]) > 1:
        chain.append(poly.polyder(chain[0]))
    while len(chain[-1]) > 1:
        _, remainder = poly.polydiv(chain[-2], chain[-1])
        remainder = poly.polytrim(remainder, tol=rtol * float(np.max(np.abs(chain[-2]))))
        if len(remainder) == 1 and remainder[0] == 0:
            break
        chain.append(-remainder)
    return chain


def _sign_changes(chain: List[Vector], x: float) -> int:
    signs = [np.sign(eval_poly(p, x)) for p in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_zeros(coeffs: Union[Sequence[float], Vector], lo: float, hi: float) -> int:
    """Number of distinct real zeros in the open interval ``(lo, hi)``, by Sturm's theorem.

    Example:
        ```python
        count_zeros([-0.5, 1.0], 0.0, 1.0)  # 1
        ```
    """
    chain = sturm_chain(coeffs)
    if len(chain[0]) <= 1:
        return 0
    zeros = _sign_changes(chain, lo) - _sign_changes(chain, hi)
    if eval_poly(chain[0], hi) == 0:
        zeros -= 1
    return max(zeros, 0)
