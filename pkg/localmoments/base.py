import os
from typing import Dict, Optional, TypedDict

from typing_extensions import Unpack

from .consts import DEFAULT_MASS_TOL, DEFAULT_RESIDUAL_TOL, DEFAULT_SUPPORT_TOL, DEFAULT_TOL
from .exceptions import InvalidMomentsError


class ToleranceParams(TypedDict, total=False):
    tol: float
    mass_tol: float
    support_tol: float
    residual_tol: float


ENV_VARIABLES: Dict[str, str] = {
    "tol": "LOCALMOMENTS_TOL",
    "mass_tol": "LOCALMOMENTS_MASS_TOL",
    "support_tol": "LOCALMOMENTS_SUPPORT_TOL",
    "residual_tol": "LOCALMOMENTS_RESIDUAL_TOL",
}


class Base:
    def __init__(
        self,
        tol: float = DEFAULT_TOL,
        mass_tol: float = DEFAULT_MASS_TOL,
        support_tol: float = DEFAULT_SUPPORT_TOL,
        residual_tol: float = DEFAULT_RESIDUAL_TOL,
    ):
        for name, value in dict(tol=tol, mass_tol=mass_tol, support_tol=support_tol, residual_tol=residual_tol).items():
            if not value >= 0:
                raise InvalidMomentsError(f"Tolerance {name!r} must be non-negative, got {value!r}")

        self.tol = tol
        self.mass_tol = mass_tol
        self.support_tol = support_tol
        self.residual_tol = residual_tol

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "Base":
        """Builds the configuration from ``LOCALMOMENTS_*`` environment variables, falling back to defaults."""
        environ = dict(os.environ) if environ is None else environ
        params: ToleranceParams = {}
        for name, variable in ENV_VARIABLES.items():
            raw = environ.get(variable)
            if raw:
                try:
                    params[name] = float(raw)  # type: ignore[literal-required]
                except ValueError as e:
                    raise InvalidMomentsError(f"Invalid value {raw!r} for {variable}") from e
        return cls(**params)

    def _tolerances(self, **kwargs: Unpack[ToleranceParams]) -> ToleranceParams:
        # Default parameters
        params: ToleranceParams = dict(
            tol=self.tol,
            mass_tol=self.mass_tol,
            support_tol=self.support_tol,
            residual_tol=self.residual_tol,
        )

        # Override default parameters with user-provided parameters
        params["tol"] = kwargs.pop("tol", self.tol)
        params["mass_tol"] = kwargs.pop("mass_tol", self.mass_tol)
        params["support_tol"] = kwargs.pop("support_tol", self.support_tol)
        params["residual_tol"] = kwargs.pop("residual_tol", self.residual_tol)
        return params
