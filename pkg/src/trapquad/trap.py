"""Trap and field configuration: quadrupole strengths from secular frequencies.

The rf potential near the ion is written on principal axes as
A*(x'^2 + y'^2 - 2 z'^2) + eps*(x'^2 - y'^2), multiplied by cos(Omega_rf t).
An ideal linear rf trap has A = 0 with eps = m*Omega_rf*omega_s/(e*sqrt(2)),
where omega_s is the pseudo-potential confinement frequency; the ideal
quadrupole trap has eps = 0 with the same expression for A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .angular import EulerAngles
from .errors import InvalidInputError


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants (CODATA 2018), frozen for reproducibility."""

    hbar: float = 1.054571817e-34          # J s
    elementary_charge: float = 1.602176634e-19  # C
    bohr_radius: float = 5.29177210903e-11  # m
    atomic_mass: float = 1.66053906660e-27  # kg
    bohr_magneton: float = 9.2740100783e-24  # J/T

    @property
    def e_a0_squared(self) -> float:
        """One atomic unit of quadrupole moment, e*a0^2, in C m^2."""
        return self.elementary_charge * self.bohr_radius**2


CODATA2018 = PhysicalConstants()


def epsilon_from_secular(mass: float, omega_rf: float, omega_s: float) -> float:
    """Quadrupole strength eps (V/m^2) of an ideal linear rf trap.

    eps = m * Omega_rf * omega_s / (e * sqrt(2)).  The ideal quadrupole trap
    has the same expression for A, with omega_s the smaller radial frequency.
    """
    if mass <= 0 or omega_rf <= 0 or omega_s <= 0:
        raise InvalidInputError("mass, omega_rf and omega_s must be positive")
    return mass * omega_rf * omega_s / (CODATA2018.elementary_charge * math.sqrt(2.0))


def omega_s_from_epsilon(mass: float, omega_rf: float, epsilon: float) -> float:
    """Inverse of epsilon_from_secular."""
    if mass <= 0 or omega_rf <= 0 or epsilon <= 0:
        raise InvalidInputError("mass, omega_rf and epsilon must be positive")
    return epsilon * CODATA2018.elementary_charge * math.sqrt(2.0) / (mass * omega_rf)


@dataclass(frozen=True)
class SecularEstimate:
    """Pseudo-potential frequency with its conservative uncertainty."""

    omega_s: float
    uncertainty: float
    asymmetry: float  # signed diagnostic omega_z - (omega_x - omega_y)


def secular_consistency(omega_x: float, omega_y: float,
                        omega_z: float) -> SecularEstimate:
    """Estimate omega_s = (omega_x + omega_y)/2 from measured trap frequencies.

    With rf confinement only, omega_z = omega_x - omega_y; the deviation from
    that identity is taken as a conservative uncertainty on omega_s.
    """
    if omega_x <= 0 or omega_y <= 0 or omega_z < 0:
        raise InvalidInputError("trap frequencies must be positive")
    asymmetry = omega_z - (omega_x - omega_y)
    return SecularEstimate(
        omega_s=0.5 * (omega_x + omega_y),
        uncertainty=abs(asymmetry),
        asymmetry=asymmetry,
    )


@dataclass(frozen=True)
class TrapConfig:
    """rf drive, quadrupole strengths and orientation of the trap.

    `A` and `epsilon` are the cos(Omega_rf t) amplitudes of the two principal
    quadrupole terms in V/m^2.  `orientation` rotates the principal axes into
    the laboratory frame (magnetic field along z).
    """

    omega_rf: float
    mass: float
    A: float = 0.0
    epsilon: float = 0.0
    omega_s: float | None = None
    omega_s_unc: float = 0.0
    orientation: EulerAngles = field(default_factory=EulerAngles)

    def __post_init__(self):
        if self.omega_rf <= 0:
            raise InvalidInputError("omega_rf must be positive")
        if self.mass <= 0:
            raise InvalidInputError("ion mass must be positive")
        if self.omega_s is not None and self.omega_s <= 0:
            raise InvalidInputError("omega_s must be positive when given")

    @classmethod
    def ideal_linear(cls, mass: float, omega_rf: float, omega_s: float,
                     omega_s_unc: float = 0.0,
                     orientation: EulerAngles = EulerAngles()) -> "TrapConfig":
        """Linear rf trap preset: A = 0, eps derived from omega_s."""
        return cls(
            omega_rf=omega_rf, mass=mass, A=0.0,
            epsilon=epsilon_from_secular(mass, omega_rf, omega_s),
            omega_s=omega_s, omega_s_unc=omega_s_unc, orientation=orientation,
        )

    @classmethod
    def ideal_quadrupole(cls, mass: float, omega_rf: float, omega_s: float,
                         omega_s_unc: float = 0.0,
                         orientation: EulerAngles = EulerAngles()) -> "TrapConfig":
        """Ideal quadrupole (endcap) trap preset: eps = 0, A derived."""
        return cls(
            omega_rf=omega_rf, mass=mass,
            A=epsilon_from_secular(mass, omega_rf, omega_s), epsilon=0.0,
            omega_s=omega_s, omega_s_unc=omega_s_unc, orientation=orientation,
        )

    def with_orientation(self, orientation: EulerAngles) -> "TrapConfig":
        return TrapConfig(
            omega_rf=self.omega_rf, mass=self.mass, A=self.A,
            epsilon=self.epsilon, omega_s=self.omega_s,
            omega_s_unc=self.omega_s_unc, orientation=orientation,
        )
