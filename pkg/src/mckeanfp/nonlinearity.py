"""Scalar nonlinear gains F and their multiplication operators.

The gain enters the dynamics as ``F(v(t,x)) * b(t,x)`` with F bounded and
Lipschitz; the induced flux nonlinearity is ``Ftilde(z) = z F(z)``, which
must be globally Lipschitz. Construction records numerically verified
bounds (dense z-grid sup of |F|, |F'| and |Ftilde'|).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["Nonlinearity", "constant_gain", "arctan_gain", "rational_gain"]


def _grid_sup_derivative(fun: Callable, zmax: float = 50.0, npts: int = 200_001) -> float:
    z = np.linspace(-zmax, zmax, npts)
    vals = fun(z)
    return float(np.max(np.abs(np.diff(vals) / np.diff(z))))


@dataclass(frozen=True)
class Nonlinearity:
    """Bounded Lipschitz gain with recorded constants.

    ``sup_f``, ``lip_f`` and ``lip_ftilde`` are measured on a dense grid at
    construction; they are finite for every admissible gain and feed the
    solver's diagnostic output.
    """

    name: str
    f: Callable = None
    sup_f: float = 0.0
    lip_f: float = 0.0
    lip_ftilde: float = 0.0

    def gain(self, z):
        return self.f(np.asarray(z, dtype=float))

    def ftilde(self, z):
        z = np.asarray(z, dtype=float)
        return z * self.f(z)


def _build(name: str, fun: Callable) -> Nonlinearity:
    sup_f = float(np.max(np.abs(fun(np.linspace(-50.0, 50.0, 200_001)))))
    lip_f = _grid_sup_derivative(fun)
    lip_ftilde = _grid_sup_derivative(lambda z: z * fun(z))
    return Nonlinearity(name, fun, sup_f, lip_f, lip_ftilde)


def constant_gain(kappa: float) -> Nonlinearity:
    """F identically ``kappa``; Ftilde(z) = kappa * z."""
    k = float(kappa)
    return Nonlinearity(f"constant({k})", lambda z: np.full_like(np.asarray(z, dtype=float), k), abs(k), 0.0, abs(k))


def arctan_gain() -> Nonlinearity:
    """F(z) = arctan(z): bounded by pi/2, Lipschitz with constant 1."""
    return _build("arctan", np.arctan)


def rational_gain() -> Nonlinearity:
    """F(z) = 1 / (1 + z^2)."""
    return _build("rational", lambda z: 1.0 / (1.0 + z**2))


def by_name(name: str, kappa: float | None = None) -> Nonlinearity:
    """Look up a built-in gain; ``constant`` requires ``kappa``."""
    if name == "constant":
        if kappa is None:
            raise ValueError("constant gain needs a kappa value")
        return constant_gain(kappa)
    if name == "arctan":
        return arctan_gain()
    if name == "rational":
        return rational_gain()
    raise ValueError(f"unknown nonlinearity {name!r}; choose constant, arctan or rational")
