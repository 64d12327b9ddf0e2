"""Physical constants and the package's unit conventions.

All internal energy arithmetic is done in eV: material inputs (plasma
energy, damping, k_B*T) are naturally quoted in eV and the material
factor of the plate-friction closed form is a pure energy ratio, so no
conversions appear in the hot path.  Lengths are accepted in nm at the
public API and converted to metres exactly once, when a force prefactor
is formed.  Joules enter only through hbar in that prefactor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

# CODATA values; truncation matches the precision used elsewhere in the
# package's reference figures.
HBAR_JS = 1.054571817e-34  # J s
BOLTZMANN_EV_PER_K = 8.617333262e-5  # eV / K
VACUUM_PERMITTIVITY_SI = 8.8541878128e-12  # A s / (V m)
ELEMENTARY_CHARGE_C = 1.602176634e-19  # C

# hbar expressed in eV s; exact quotient of the two defining constants.
HBAR_EV_S = HBAR_JS / ELEMENTARY_CHARGE_C

NM_TO_M = 1e-9


@dataclass(frozen=True)
class Constants:
    """Immutable bundle of the constants above, for record keeping."""

    hbar_J_s: float = HBAR_JS
    boltzmann_eV_per_K: float = BOLTZMANN_EV_PER_K
    vacuum_permittivity_SI: float = VACUUM_PERMITTIVITY_SI


@dataclass(frozen=True)
class UnitConvention:
    """Units assumed by every public operation in this package."""

    energy: str = "eV"
    length: str = "nm"
    velocity: str = "m/s"
    temperature: str = "K"
    force_per_area: str = "Pa"


CONSTANTS = Constants()
UNITS = UnitConvention()


def thermal_energy(temperature_k: float) -> float:
    """k_B*T in eV.

    Parameters
    ----------
    temperature_k : float
        Temperature in kelvin, > 0.
    """
    if not temperature_k > 0.0:
        raise DomainError(f"temperature must be > 0 K, got {temperature_k!r}")
    return BOLTZMANN_EV_PER_K * temperature_k


def beta(temperature_k: float) -> float:
    """Inverse thermal energy 1/(k_B*T) in 1/eV."""
    return 1.0 / thermal_energy(temperature_k)
