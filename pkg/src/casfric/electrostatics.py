"""Electrostatics of a point charge outside two dielectric half-planes.

Half-plane 1 (permittivity eps1) fills z < 0, half-plane 2 (eps2) fills
z > d, vacuum in between; a unit charge sits at z0 < 0.  Working per
transverse mode q, the potential is a piecewise combination of e^{+qz}
and e^{-qz} whose coefficients follow from continuity of the potential
and of eps * d(potential)/dz at z = 0 and z = d.

The closed-form coefficients are the production path; a generic 4x4
linear solve of the same boundary conditions is kept as an oracle.  The
denominator of the transmitted amplitude, 1 - A1*A2*exp(-2qd) with
A = (eps-1)/(eps+1), is exactly the induced-correlation denominator of
the coupled half-plane correlators, which is what this module certifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class LayeredConfig:
    """Fixed-mode configuration: permittivities, gap d (nm), transverse
    wavenumber q (nm^-1), and source height z0 < 0 (nm)."""

    eps1: float
    eps2: float
    d_nm: float
    q_per_nm: float
    z0_nm: float = -1.0

    def __post_init__(self):
        if not self.d_nm > 0.0:
            raise DomainError("d_nm must be > 0")
        if not self.q_per_nm > 0.0:
            raise DomainError("q_per_nm must be > 0")
        if not self.z0_nm < 0.0:
            raise DomainError("the source must sit at z0 < 0")
        if self.eps1 == -1.0 or self.eps2 == -1.0:
            raise DomainError("eps = -1 is the surface-mode pole; the "
                              "boundary system is singular there")


@dataclass(frozen=True)
class BoundarySolution:
    """Coefficients of the piecewise potential (see module docstring)."""

    b: float
    c: float
    c1: float
    d: float


def _amplitudes(cfg: LayeredConfig) -> tuple[float, float]:
    a1 = (cfg.eps1 - 1.0) / (cfg.eps1 + 1.0)
    a2 = (cfg.eps2 - 1.0) / (cfg.eps2 + 1.0)
    return a1, a2


def solve_layers(cfg: LayeredConfig) -> BoundarySolution:
    """Closed-form boundary coefficients.

    D = 4 / ((eps1+1)(eps2+1)(1 - A1 A2 e^{-2qd}))
    C = (1 + eps2) D / 2
    C1 = (1 - eps2) D e^{-2qd} / 2
    B = A1/eps1 - ((eps2-1)/(eps1+1)) D e^{-2qd}
    """
    a1, a2 = _amplitudes(cfg)
    x = math.exp(-2.0 * cfg.q_per_nm * cfg.d_nm)
    denom = (cfg.eps1 + 1.0) * (cfg.eps2 + 1.0) * (1.0 - a1 * a2 * x)
    if denom == 0.0:
        raise DomainError("singular boundary system (coupled surface mode)")
    d_coef = 4.0 / denom
    c = 0.5 * (1.0 + cfg.eps2) * d_coef
    c1 = 0.5 * (1.0 - cfg.eps2) * d_coef * x
    b = a1 / cfg.eps1 - (cfg.eps2 - 1.0) / (cfg.eps1 + 1.0) * d_coef * x
    return BoundarySolution(b=b, c=c, c1=c1, d=d_coef)


def solve_layers_linear(cfg: LayeredConfig) -> BoundarySolution:
    """Oracle route: assemble and solve the raw 4x4 boundary system.

    Unknowns ordered (B, C, C1, D); the e^{+-qd} factors are kept exactly
    as they appear in the matching conditions.
    """
    e1, e2 = cfg.eps1, cfg.eps2
    em = math.exp(-cfg.q_per_nm * cfg.d_nm)
    ep = math.exp(+cfg.q_per_nm * cfg.d_nm)
    mat = np.array([
        [1.0, -1.0, -1.0, 0.0],
        [-e1, -1.0, 1.0, 0.0],
        [0.0, em, ep, -em],
        [0.0, em, -ep, -e2 * em],
    ])
    rhs = np.array([-1.0 / e1, -1.0, 0.0, 0.0])
    b, c, c1, d_coef = np.linalg.solve(mat, rhs)
    return BoundarySolution(b=float(b), c=float(c), c1=float(c1), d=float(d_coef))


def boundary_residuals(cfg: LayeredConfig, sol: BoundarySolution) -> np.ndarray:
    """Relative residuals of the four matching conditions (each scaled by
    the magnitude of its largest term)."""
    e1, e2 = cfg.eps1, cfg.eps2
    em = math.exp(-cfg.q_per_nm * cfg.d_nm)
    ep = math.exp(+cfg.q_per_nm * cfg.d_nm)
    rows = [
        (1.0 / e1 + sol.b, sol.c + sol.c1),
        (e1 * (1.0 / e1 - sol.b), sol.c - sol.c1),
        (sol.c * em + sol.c1 * ep, sol.d * em),
        (sol.c * em - sol.c1 * ep, e2 * sol.d * em),
    ]
    out = np.empty(4)
    for i, (lhs, rhs) in enumerate(rows):
        scale = max(abs(lhs), abs(rhs), 1e-300)
        out[i] = abs(lhs - rhs) / scale
    return out


def potential_profile(cfg: LayeredConfig, sol: BoundarySolution,
                      z_nm: float) -> float:
    """Piecewise potential at height z (per transverse mode), including
    the 2*pi/q * e^{q z0} prefactor of the source kernel."""
    q = cfg.q_per_nm
    z0 = cfg.z0_nm
    pref = 2.0 * math.pi / q * math.exp(q * z0)
    if z_nm < z0:
        core = math.exp(-2.0 * q * z0) * math.exp(q * z_nm) / cfg.eps1 \
            + sol.b * math.exp(q * z_nm)
    elif z_nm < 0.0:
        core = math.exp(-q * z_nm) / cfg.eps1 + sol.b * math.exp(q * z_nm)
    elif z_nm < cfg.d_nm:
        core = sol.c * math.exp(-q * z_nm) + sol.c1 * math.exp(q * z_nm)
    else:
        core = sol.d * math.exp(-q * z_nm)
    return pref * core


def denominator_check(cfg: LayeredConfig) -> tuple[float, float]:
    """(denominator extracted from the solved D, direct formula value).

    Both are 1 - A1*A2*exp(-2qd); their agreement certifies that the
    solved transmission carries exactly the induced-correlation
    denominator of the coupled-plane correlators.
    """
    sol = solve_layers(cfg)
    a1, a2 = _amplitudes(cfg)
    from_d = 4.0 / ((cfg.eps1 + 1.0) * (cfg.eps2 + 1.0) * sol.d)
    direct = 1.0 - a1 * a2 * math.exp(-2.0 * cfg.q_per_nm * cfg.d_nm)
    return from_d, direct
