from typing import Optional, Tuple


class MomentError(Exception):
    def __init__(self, message: str, code: str = "moment-error") -> None:
        self.message = message
        self.code = code
        super().__init__(f"Error {self.code}: {self.message}")


class InvalidMomentsError(MomentError):
    def __init__(self, message: str) -> None:
        super().__init__(message, code="invalid-moments")


class DegenerateRankError(MomentError):
    def __init__(self, message: str, rank: int) -> None:
        self.rank = rank
        super().__init__(message, code="degenerate-rank")


class SingularBlockError(MomentError):
    def __init__(self, message: str) -> None:
        super().__init__(message, code="singular-block")


class BoundaryCaseError(MomentError):
    def __init__(self, message: str, quantity: str) -> None:
        self.quantity = quantity
        super().__init__(message, code="boundary")


class UnsolvableError(MomentError):
    def __init__(self, message: str, condition: str) -> None:
        self.condition = condition
        super().__init__(message, code="unsolvable")


class ParameterRangeError(MomentError):
    def __init__(
        self,
        message: str,
        parameter: str,
        value: float,
        lo: Optional[float] = None,
        hi: Optional[float] = None,
    ) -> None:
        self.parameter = parameter
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(message, code="out-of-range")


class ConventionsMismatchError(MomentError):
    def __init__(
        self,
        message: str,
        formula_range: Tuple[float, float],
        scan_range: Tuple[float, float],
    ) -> None:
        self.formula_range = formula_range
        self.scan_range = scan_range
        super().__init__(message, code="conventions-mismatch")
