"""Observable effects of the oscillating quadrupole coupling.

Covers the time-varying level shift (rf sideband modulation index), resonant
Zeeman couplings at Omega_rf (|dm|=1) and Omega_rf/2 (|dm|=2), off-resonant
Zeeman-ladder shifts, static-limit m=0 clock shifts, and the fractional-shift
decomposition  dnu/nu = a*(f2(alpha,beta) + eta*f1(alpha,beta))  after
hyperfine averaging, where f1 and f2 are the squared moduli of the |dm|=1 and
|dm|=2 orientation factors of a linear (A=0) trap.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping

from .angular import EulerAngles, HalfInt, Momentum
from .coupling import HyperfineState, LevelSpec, coupling_amplitude
from .errors import InvalidInputError, ResonanceError
from .trap import CODATA2018, TrapConfig

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ZeemanConfig:
    """Linear Zeeman splitting omega_z = g_F * mu_B * B0 / hbar between m states."""

    g_f: float
    b_field: float  # tesla

    @property
    def omega_z(self) -> float:
        return self.g_f * CODATA2018.bohr_magneton * self.b_field / CODATA2018.hbar

    @classmethod
    def from_splitting(cls, g_f: float, omega_z: float) -> "ZeemanConfig":
        b = omega_z * CODATA2018.hbar / (g_f * CODATA2018.bohr_magneton)
        return cls(g_f=g_f, b_field=b)


def orientation_f1(angles: EulerAngles) -> float:
    """|dm|=1 orientation weight: squared modulus of the linear-trap factor."""
    c, s = math.cos(angles.beta), math.sin(angles.beta)
    c2a, s2a = math.cos(2 * angles.alpha), math.sin(2 * angles.alpha)
    return (c * s * c2a) ** 2 + (s * s2a) ** 2


def orientation_f2(angles: EulerAngles) -> float:
    """|dm|=2 orientation weight; equals 1 at beta = 0."""
    c = math.cos(angles.beta)
    c2a, s2a = math.cos(2 * angles.alpha), math.sin(2 * angles.alpha)
    return (0.5 * (1 + c * c) * c2a) ** 2 + (c * s2a) ** 2


def sideband_index(level: LevelSpec, F: Momentum, m: Momentum,
                   trap: TrapConfig) -> float:
    """Modulation index beta_Q = <F,m|H_Q|F,m> / (hbar * Omega_rf).

    The peak time-varying shift of |F,m> divided by the drive frequency; it
    sets the strength of rf sidebands on transitions involving the state.
    """
    state = HyperfineState(level.validate_f(F), HalfInt(m))
    diag = coupling_amplitude(level, state, state, trap)
    return diag.real / trap.omega_rf


def resonant_coupling(level: LevelSpec, bra: HyperfineState,
                      ket: HyperfineState, trap: TrapConfig) -> complex:
    """Coupling amplitude <bra|H_Q|ket>/hbar (rad/s) for a Zeeman resonance.

    |dm| = 1 transitions resonate when the Zeeman splitting matches Omega_rf;
    |dm| = 2 when it matches Omega_rf/2.  dm = 0 is not a resonance channel.
    """
    dm = bra.m.twice - ket.m.twice
    if abs(dm) not in (2, 4):
        raise InvalidInputError(
            "resonant coupling requires |dm| of 1 or 2, got "
            f"{HalfInt.from_twice(dm)!r}"
        )
    return coupling_amplitude(level, bra, ket, trap)


def offresonant_zeeman_shift(level: LevelSpec, F: Momentum, m: Momentum,
                             trap: TrapConfig, zeeman: ZeemanConfig,
                             guard: float = 1e-3) -> float:
    """Second-order shift (rad/s) of |F,m> from off-resonant H_Q couplings.

    delta E / hbar = -sum_dm |<F,m+dm|H_Q|F,m>/hbar|^2 / 2
                     * omega_z*dm / ((omega_z*dm)^2 - Omega_rf^2)

    Raises ResonanceError when a Zeeman interval is within guard*Omega_rf of
    the drive; the perturbative formula diverges there.
    """
    F = level.validate_f(F)
    m = HalfInt(m)
    state = HyperfineState(F, m)
    omega_z = zeeman.omega_z

    shift = 0.0
    for dm in (-2, -1, 1, 2):
        tm2 = m.twice + 2 * dm
        if abs(tm2) > F.twice:
            continue
        other = HyperfineState(F, HalfInt.from_twice(tm2))
        amp = coupling_amplitude(level, other, state, trap)
        mod2 = abs(amp) ** 2
        if mod2 == 0.0:
            continue
        if abs(abs(omega_z * dm) - trap.omega_rf) < guard * trap.omega_rf:
            raise ResonanceError(
                f"Zeeman interval |dm|={abs(dm)} within {guard:g}*Omega_rf "
                "of the drive; off-resonant formula invalid"
            )
        shift -= 0.5 * mod2 * omega_z * dm / ((omega_z * dm) ** 2 - trap.omega_rf**2)
    return shift


def clock_shift(level: LevelSpec, f_clock: Momentum, trap: TrapConfig) -> float:
    """Static-limit quadrupole shift (Hz) of the |F, m=0> clock state.

    h*dnu_F = -sum_{dm, F' != F} |<F',dm|H_Q|F,0>|^2 / (2*(E_F' - E_F)),
    valid for Omega_rf much smaller than the hyperfine splittings; the factor
    1/2 is the time average of the squared cos drive.  Couplings within F
    cancel for m=0 and are excluded.
    """
    f_clock = level.validate_f(f_clock)
    if level.hyperfine_energies_hz is None:
        raise InvalidInputError(
            f"clock_shift needs hyperfine energies on level {level.label or '?'}"
        )
    e_clock = level.hyperfine_energy(f_clock)
    ket = HyperfineState(f_clock, 0)

    others = [f for f in level.f_values() if f != f_clock]
    if others:
        min_split_hz = min(abs(level.hyperfine_energy(f) - e_clock) for f in others)
        if trap.omega_rf > 0.1 * TWO_PI * min_split_hz:
            warnings.warn(
                "Omega_rf exceeds 10% of the smallest hyperfine splitting; "
                "the static-limit clock-shift formula degrades",
                stacklevel=2,
            )

    shift_hz = 0.0
    for fp in others:
        dnu = level.hyperfine_energy(fp) - e_clock  # Hz
        for tdm in range(-4, 5, 2):
            if abs(tdm) > fp.twice:
                continue
            bra = HyperfineState(fp, HalfInt.from_twice(tdm))
            amp_hz = coupling_amplitude(level, bra, ket, trap) / TWO_PI
            shift_hz -= abs(amp_hz) ** 2 / (2.0 * dnu)
    return shift_hz


def hyperfine_average(per_f_shifts: Mapping[Momentum, float],
                      level: LevelSpec | None = None) -> float:
    """Equal-weight mean of per-F clock shifts over a fine-structure level.

    With equal weights over the 2J+1 hyperfine levels (I >= J), the dm = 0
    contributions cancel pairwise because each (F, F') pair enters twice with
    opposite-sign denominators.
    """
    shifts = {HalfInt(f): float(v) for f, v in per_f_shifts.items()}
    if not shifts:
        raise InvalidInputError("no shifts to average")
    if level is not None:
        expected = level.f_values()
        missing = [f for f in expected if f not in shifts]
        if missing:
            raise InvalidInputError(
                f"shifts missing for F={missing} of level {level.label or '?'}"
            )
        if len(expected) != level.electronic_j.twice + 1:
            raise InvalidInputError(
                "equal-weight averaging assumes I >= J (2J+1 hyperfine levels)"
            )
        return sum(shifts[f] for f in expected) / len(expected)
    return sum(shifts.values()) / len(shifts)


@dataclass(frozen=True)
class ClockTransition:
    """A clock transition from a (quadrupole-free) ground state to `level`."""

    level: LevelSpec
    frequency_hz: float
    hyperfine_averaged: bool = True

    def __post_init__(self):
        if self.frequency_hz <= 0:
            raise InvalidInputError("transition frequency must be positive")


@dataclass(frozen=True)
class ShiftDecomposition:
    """Fractional clock shift dnu/nu = a*(f2 + eta*f1) for a linear trap."""

    a: float
    eta: float
    frequency_hz: float

    def fractional_shift(self, angles: EulerAngles) -> float:
        return self.a * (orientation_f2(angles) + self.eta * orientation_f1(angles))

    def shift_hz(self, angles: EulerAngles) -> float:
        return self.fractional_shift(angles) * self.frequency_hz


def shift_decomposition(transition: ClockTransition,
                        trap: TrapConfig) -> ShiftDecomposition:
    """Split the hyperfine-averaged clock shift into (a, eta) weights.

    Only the |dm| = 1 and |dm| = 2 channels survive hyperfine averaging; their
    orientation dependence factors into f1 and f2, so the average shift is
    a*nu*(f2 + eta*f1) for every trap orientation.  Requires A = 0 (the
    linear-trap case in which f1, f2 are defined).
    """
    if trap.A != 0.0:
        raise InvalidInputError(
            "shift decomposition into (f1, f2) applies to A = 0 traps only"
        )
    level = transition.level
    if level.hyperfine_energies_hz is None:
        raise InvalidInputError(
            f"level {level.label or '?'} has no hyperfine energies"
        )
    fs = level.f_values()
    n_levels = level.electronic_j.twice + 1
    if transition.hyperfine_averaged and len(fs) != n_levels:
        raise InvalidInputError("hyperfine averaging assumes I >= J")

    # strip the orientation factor: evaluate couplings at beta=0, alpha=0,
    # where the |dm|=2 factor is exactly 1, and reuse the prefactors for dm=1
    base = trap.with_orientation(EulerAngles(0.0, 0.0))

    w1 = 0.0
    w2 = 0.0
    for f in fs:
        e_f = level.hyperfine_energy(f)
        ket = HyperfineState(f, 0)
        for fp in fs:
            if fp == f:
                continue
            dnu = level.hyperfine_energy(fp) - e_f
            for tdm in (-4, -2, 2, 4):
                if abs(tdm) > fp.twice:
                    continue
                bra = HyperfineState(fp, HalfInt.from_twice(tdm))
                # orientation-free squared amplitude in Hz^2
                pref = _orientation_free_weight(level, bra, ket, base)
                term = -pref / (2.0 * dnu) / len(fs)
                if abs(tdm) == 2:
                    w1 += term
                else:
                    w2 += term

    a = w2 / transition.frequency_hz
    eta = w1 / w2
    return ShiftDecomposition(a=a, eta=eta, frequency_hz=transition.frequency_hz)


def _orientation_free_weight(level: LevelSpec, bra: HyperfineState,
                             ket: HyperfineState, base: TrapConfig) -> float:
    """|coupling|^2 in Hz^2 with the orientation factor divided out.

    Each channel is probed at an orientation where its factor has modulus
    exactly 1: beta = 0 for |dm| = 2, and (alpha = pi/4, beta = pi/2) for
    |dm| = 1, so the squared amplitude there equals the bare weight.
    """
    dm2 = bra.m.twice - ket.m.twice
    if abs(dm2) == 4:
        amp = coupling_amplitude(level, bra, ket, base) / TWO_PI
        return abs(amp) ** 2
    probe = base.with_orientation(EulerAngles(math.pi / 4.0, math.pi / 2.0))
    amp = coupling_amplitude(level, bra, ket, probe) / TWO_PI
    return abs(amp) ** 2
