"""Translational dynamics of a two-valve swimmer in its two fluid regimes.

The valve opening angle theta lives in (0, pi/2). Depending on the active
regime the body translates with x' = V_w(theta) * theta', where V_1 comes
from resistive drag and V_2 from added-mass (ideal fluid) dynamics. The
primitives F_w of V_w give cycle displacements in closed form: a cycle that
opens in regime 2 and closes in regime 1 nets
[F_2(theta1) - F_2(theta0)] - [F_1(theta1) - F_1(theta0)].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np

from .errors import AngleDomainError
from .quadrature import adaptive_simpson

THETA_MIN = 0.0
THETA_MAX = math.pi / 2.0
# Pointwise evaluators accept the closed hull with this much slack.
HULL_TOL = 1e-12
# Trajectories and root finders stay this far inside the open interval.
THETA_GUARD = 1e-9

_PARAM_KEYS = ("a", "b", "xi", "eta", "m", "m11", "m22")


class FluidRegime(IntEnum):
    """Regime label w: 1 while the fluid acts as viscous, 2 while ideal."""

    VISCOUS = 1
    IDEAL = 2


VISCOUS = FluidRegime.VISCOUS
IDEAL = FluidRegime.IDEAL


@dataclass(frozen=True)
class SwimmerParams:
    """Geometry, drag, and added-mass coefficients of the swimmer.

    a, b: major and minor semiaxes of each valve; xi, eta: drag coefficients
    parallel and perpendicular to a valve; m: valve mass; m11, m22: added
    masses along and across the travel axis. Passing m11 or m22 as None
    fills in the elliptic defaults a*pi and b*pi.
    """

    a: float = 10.0
    b: float = 0.1
    xi: float = 1.0
    eta: float = 2.0
    m: float = 1.0
    m11: float | None = None
    m22: float | None = None

    def __post_init__(self) -> None:
        if self.m11 is None:
            object.__setattr__(self, "m11", self.a * math.pi)
        if self.m22 is None:
            object.__setattr__(self, "m22", self.b * math.pi)
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"semiaxes must be positive, got a={self.a!r}, b={self.b!r}")
        if not self.b < self.a:
            raise ValueError(f"minor semiaxis must satisfy b < a, got a={self.a!r}, b={self.b!r}")
        if not (self.xi > 0 and self.eta > 0):
            raise ValueError(f"drag coefficients must be positive, got xi={self.xi!r}, eta={self.eta!r}")
        if not self.m > 0:
            raise ValueError(f"valve mass must be positive, got m={self.m!r}")
        if self.m11 < 0 or self.m22 < 0:
            raise ValueError(f"added masses must be nonnegative, got m11={self.m11!r}, m22={self.m22!r}")

    @classmethod
    def default(cls) -> "SwimmerParams":
        """Reference parameter set: a=10, b=0.1, xi=1, eta=2, m=1, elliptic added masses."""
        return cls()

    @classmethod
    def from_file(cls, path: str | Path) -> "SwimmerParams":
        """Load parameters from a flat key-value text file.

        Each non-empty, non-comment line reads ``key = value`` (the ``=`` is
        optional). Recognized keys: a, b, xi, eta, m, m11, m22. Missing m11
        and m22 fall back to a*pi and b*pi.
        """
        values: dict[str, float] = {}
        text = Path(path).read_text()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace("=", " ").split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, literal = parts
            if key not in _PARAM_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown parameter {key!r}")
            if key in values:
                raise ValueError(f"{path}:{lineno}: duplicate parameter {key!r}")
            try:
                values[key] = float(literal)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad numeric literal {literal!r}") from exc
        missing = [k for k in ("a", "b", "xi", "eta", "m") if k not in values]
        if missing:
            raise ValueError(f"{path}: missing required parameters {missing}")
        return cls(**values)

    def to_dict(self) -> dict[str, float]:
        return {k: float(getattr(self, k)) for k in _PARAM_KEYS}


def _check_theta(theta: np.ndarray | float) -> None:
    arr = np.asarray(theta, dtype=float)
    if arr.size and (float(arr.min()) < THETA_MIN - HULL_TOL or float(arr.max()) > THETA_MAX + HULL_TOL):
        bad = arr[(arr < THETA_MIN - HULL_TOL) | (arr > THETA_MAX + HULL_TOL)]
        raise AngleDomainError(
            f"valve angle {float(bad.flat[0])!r} outside [0, pi/2]"
        )


def v_viscous(theta, p: SwimmerParams):
    """Drag-regime velocity factor a*eta*sin(theta) / (xi*cos^2 + eta*sin^2).

    Accepts scalars or arrays in [0, pi/2] (closed hull, slack 1e-12).
    """
    _check_theta(theta)
    th = np.asarray(theta, dtype=float)
    s, c = np.sin(th), np.cos(th)
    out = p.a * p.eta * s / (p.xi * c * c + p.eta * s * s)
    return float(out) if np.isscalar(theta) or np.ndim(theta) == 0 else out


def v_ideal(theta, p: SwimmerParams):
    """Ideal-regime velocity factor a*sin(theta)*(m+m22) / (m + m11*cos^2 + m22*sin^2).

    Accepts scalars or arrays in [0, pi/2] (closed hull, slack 1e-12).
    """
    _check_theta(theta)
    th = np.asarray(theta, dtype=float)
    s, c = np.sin(th), np.cos(th)
    out = p.a * s * (p.m + p.m22) / (p.m + p.m11 * c * c + p.m22 * s * s)
    return float(out) if np.isscalar(theta) or np.ndim(theta) == 0 else out


def regime_velocity(regime: int, theta, p: SwimmerParams):
    """Dispatch to v_viscous (regime 1) or v_ideal (regime 2)."""
    if int(regime) == 1:
        return v_viscous(theta, p)
    if int(regime) == 2:
        return v_ideal(theta, p)
    raise ValueError(f"regime must be 1 or 2, got {regime!r}")


def _v1_scalar(p: SwimmerParams):
    a, xi, eta = p.a, p.xi, p.eta

    def f(th: float) -> float:
        s, c = math.sin(th), math.cos(th)
        return a * eta * s / (xi * c * c + eta * s * s)

    return f


def _v2_scalar(p: SwimmerParams):
    a, m, m11, m22 = p.a, p.m, p.m11, p.m22
    num = a * (m + m22)

    def f(th: float) -> float:
        s, c = math.sin(th), math.cos(th)
        return num * s / (m + m11 * c * c + m22 * s * s)

    return f


def primitive(regime: int, theta: float, theta_ref: float, p: SwimmerParams, tol: float = 1e-10) -> float:
    """Definite integral of the regime velocity factor from theta_ref to theta.

    This is F_w(theta) - F_w(theta_ref) with F_w the primitive of V_w,
    computed by adaptive Simpson quadrature to absolute tolerance tol.
    Antisymmetric under swapping theta and theta_ref.
    """
    _check_theta(theta)
    _check_theta(theta_ref)
    if int(regime) == 1:
        f = _v1_scalar(p)
    elif int(regime) == 2:
        f = _v2_scalar(p)
    else:
        raise ValueError(f"regime must be 1 or 2, got {regime!r}")
    return adaptive_simpson(f, float(theta_ref), float(theta), tol=tol)


def net_displacement(theta0: float, theta1: float, p: SwimmerParams, tol: float = 1e-10) -> float:
    """Displacement of one cycle opening theta0 -> theta1 in regime 2 and closing in regime 1.

    Equals [F_2(theta1) - F_2(theta0)] - [F_1(theta1) - F_1(theta0)], i.e. the
    integral of V_2 - V_1 over [theta0, theta1]; antisymmetric in its angles.
    """
    _check_theta(theta0)
    _check_theta(theta1)
    f1, f2 = _v1_scalar(p), _v2_scalar(p)
    return adaptive_simpson(lambda th: f2(th) - f1(th), float(theta0), float(theta1), tol=tol)
