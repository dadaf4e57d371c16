from typing import Optional, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import InvalidMomentsError

Matrix = NDArray[np.float64]
Vector = NDArray[np.float64]


def as_matrix(entries: Union[ArrayLike, Sequence[Sequence[float]]]) -> Matrix:
    matrix = np.asarray(entries, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidMomentsError(f"Expected a square matrix, got shape {matrix.shape}")
    return matrix


def matrix_scale(matrix: Matrix) -> float:
    """Scale used by relative tolerances: ``max(1, ||M||_inf)``."""
    if matrix.size == 0:
        return 1.0
    return max(1.0, float(np.linalg.norm(matrix, ord=np.inf)))


def check_symmetric(matrix: Matrix, rtol: float = 1e-12) -> Matrix:
    matrix = as_matrix(matrix)
    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=rtol * matrix_scale(matrix)):
        raise InvalidMomentsError("Matrix is not symmetric")
    return matrix


def symmetrize(matrix: Matrix) -> Matrix:
    return 0.5 * (matrix + matrix.T)


def equilibrate(matrix: Matrix) -> Optional[Matrix]:
    """``D^{-1/2} M D^{-1/2}`` with ``D = diag(M)``, or None when a diagonal entry is not positive.

    Rank and definiteness are unchanged; the unit diagonal makes relative tolerances independent of how fast the
    entries of a Hankel matrix grow.
    """
    diag = np.diag(matrix)
    if np.any(diag <= 0):
        return None
    inverse_root = 1.0 / np.sqrt(diag)
    return matrix * np.outer(inverse_root, inverse_root)  # type: ignore[no-any-return]
