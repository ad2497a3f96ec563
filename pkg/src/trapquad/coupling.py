"""Quadrupole interaction matrix elements over hyperfine states.

The interaction with the trap's oscillating field gradient is
H_Q = -2A*T0 + eps*sqrt(2/3)*(T2 + T-2), where Tq are the principal-frame
spherical components of the rank-2 quadrupole operator.  Laboratory-frame
matrix elements follow from the IJ-coupling reduced element, normalised so
the stretched expectation value <JJ|T0|JJ> equals the quadrupole moment
Theta(J):

  <(IJ)F'mu'|Tq|(IJ)F mu> = (-1)^(F'+F+I+J+mu') sqrt((2F'+1)(2F+1))
      * {F F' 2; J J I} * (F 2 F'; mu dmu -mu') / (J 2 J; -J 0 J)
      * Theta(J) * D2_{dmu,q}(alpha, beta)

with dmu = mu' - mu.  All coupling amplitudes are exposed in angular
frequency units (rad/s) as the coefficient of cos(Omega_rf t); no
rotating-wave factor is applied here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .angular import EulerAngles, HalfInt, Momentum, wigner_3j, wigner_6j, wigner_D2
from .errors import InvalidInputError
from .trap import CODATA2018, TrapConfig

_SQRT23 = math.sqrt(2.0 / 3.0)


@dataclass(frozen=True)
class HyperfineState:
    """A |F, m> state."""

    F: HalfInt
    m: HalfInt

    def __init__(self, F: Momentum, m: Momentum):
        F, m = HalfInt(F), HalfInt(m)
        if F.twice < 0 or abs(m.twice) > F.twice or (F.twice - m.twice) % 2:
            raise InvalidInputError(f"invalid hyperfine state F={F!r}, m={m!r}")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "m", m)

    def __repr__(self) -> str:
        return f"|{self.F},{self.m}>"


@dataclass(frozen=True)
class LevelSpec:
    """An atomic fine-structure level with quadrupole moment Theta(J).

    theta_e_a02 is Theta(J) in units of e*a0^2.  hyperfine_energies maps F to
    the level energy in Hz (times h); it is required only for I > 0 levels
    used in clock-shift sums.  g_factors may hold a level g_J under the key
    "J" and per-F values under HalfInt keys.
    """

    nuclear_spin: HalfInt
    electronic_j: HalfInt
    theta_e_a02: float
    hyperfine_energies_hz: Mapping[HalfInt, float] | None = None
    g_factors: Mapping = field(default_factory=dict)
    label: str = ""

    def __init__(self, nuclear_spin: Momentum, electronic_j: Momentum,
                 theta_e_a02: float, hyperfine_energies_hz=None,
                 g_factors=None, label: str = ""):
        nuclear_spin = HalfInt(nuclear_spin)
        electronic_j = HalfInt(electronic_j)
        if nuclear_spin.twice < 0 or electronic_j.twice < 0:
            raise InvalidInputError("I and J must be non-negative")
        if not math.isfinite(theta_e_a02):
            raise InvalidInputError("Theta(J) must be finite")
        object.__setattr__(self, "nuclear_spin", nuclear_spin)
        object.__setattr__(self, "electronic_j", electronic_j)
        object.__setattr__(self, "theta_e_a02", float(theta_e_a02))
        if hyperfine_energies_hz is not None:
            energies = {HalfInt(f): float(e) for f, e in hyperfine_energies_hz.items()}
            fs = self._f_range(nuclear_spin, electronic_j)
            for f in energies:
                if f not in fs:
                    raise InvalidInputError(
                        f"F={f!r} outside |I-J|..I+J for I={nuclear_spin!r}, "
                        f"J={electronic_j!r}"
                    )
            if len(set(energies.values())) != len(energies):
                raise InvalidInputError("hyperfine energies must be distinct")
            object.__setattr__(self, "hyperfine_energies_hz", energies)
        else:
            object.__setattr__(self, "hyperfine_energies_hz", None)
        object.__setattr__(self, "g_factors", dict(g_factors or {}))
        object.__setattr__(self, "label", label)

    @staticmethod
    def _f_range(i: HalfInt, j: HalfInt) -> list[HalfInt]:
        lo, hi = abs(i.twice - j.twice), i.twice + j.twice
        return [HalfInt.from_twice(t) for t in range(lo, hi + 1, 2)]

    def f_values(self) -> list[HalfInt]:
        return self._f_range(self.nuclear_spin, self.electronic_j)

    def validate_f(self, F: Momentum) -> HalfInt:
        F = HalfInt(F)
        if F not in self.f_values():
            raise InvalidInputError(
                f"F={F!r} invalid for I={self.nuclear_spin!r}, "
                f"J={self.electronic_j!r}"
            )
        return F

    def manifold(self, F: Momentum) -> list[HyperfineState]:
        """All |F, m> states of one hyperfine level, m ascending."""
        F = self.validate_f(F)
        return [HyperfineState(F, HalfInt.from_twice(tm))
                for tm in range(-F.twice, F.twice + 1, 2)]

    def hyperfine_energy(self, F: Momentum) -> float:
        if self.hyperfine_energies_hz is None:
            raise InvalidInputError(
                f"level {self.label or '?'} has no hyperfine energies"
            )
        F = self.validate_f(F)
        try:
            return self.hyperfine_energies_hz[F]
        except KeyError:
            raise InvalidInputError(
                f"hyperfine energy for F={F!r} missing from level "
                f"{self.label or '?'}"
            ) from None


def gradient_components(A: float, epsilon: float) -> dict[int, float]:
    """Spherical components of the field-gradient tensor on principal axes.

    Returns {q: grad_q} with grad_0 = -2A, grad_(+-1) = 0,
    grad_(+-2) = eps*sqrt(2/3), all in V/m^2.
    """
    g2 = epsilon * _SQRT23
    return {0: -2.0 * A, 1: 0.0, -1: 0.0, 2: g2, -2: g2}


def _wigner_eckart_prefactor(level: LevelSpec, bra: HyperfineState,
                   ket: HyperfineState) -> float:
    """Orientation-independent part of the matrix element, in units of Theta."""
    i, j = level.nuclear_spin, level.electronic_j
    if j.twice < 2:
        return 0.0  # no rank-2 support below J = 1
    fp, mup = bra.F, bra.m
    f, mu = ket.F, ket.m
    level.validate_f(fp)
    level.validate_f(f)

    dmu2 = mup.twice - mu.twice
    if abs(dmu2) > 4 or abs(fp.twice - f.twice) > 4:
        return 0.0

    three = wigner_3j(f, 2, fp, mu, HalfInt.from_twice(dmu2), -mup)
    if three == 0.0:
        return 0.0
    six = wigner_6j(f, fp, 2, j, j, i)
    if six == 0.0:
        return 0.0
    norm = wigner_3j(j, 2, j, -j, 0, j)

    exponent2 = fp.twice + f.twice + i.twice + j.twice + mup.twice
    if exponent2 % 2:
        raise InvalidInputError("non-integer phase exponent; inconsistent state")
    sign = -1.0 if (exponent2 // 2) % 2 else 1.0

    scale = math.sqrt((fp.twice + 1.0) * (f.twice + 1.0))
    return sign * scale * six * three / norm


def theta_matrix_element(level: LevelSpec, bra: HyperfineState,
                         ket: HyperfineState, q: int,
                         angles: EulerAngles) -> complex:
    """<bra|Tq|ket> of the principal-frame rank-2 component, in units of e*a0^2."""
    if q not in (-2, -1, 0, 1, 2):
        raise InvalidInputError(f"rank-2 component q={q} out of range")
    pref = _wigner_eckart_prefactor(level, bra, ket)
    if pref == 0.0:
        return 0.0j
    dmu = HalfInt.from_twice(bra.m.twice - ket.m.twice)
    return pref * level.theta_e_a02 * wigner_D2(dmu, q, angles)


def coupling_amplitude(level: LevelSpec, bra: HyperfineState,
                       ket: HyperfineState, trap: TrapConfig) -> complex:
    """<bra|H_Q|ket>/hbar in rad/s, the coefficient of cos(Omega_rf t)."""
    grads = gradient_components(trap.A, trap.epsilon)
    el = 0.0j
    for q in (-2, 0, 2):
        if grads[q] == 0.0:
            continue
        el += grads[q] * theta_matrix_element(level, bra, ket, q, trap.orientation)
    return el * CODATA2018.e_a0_squared / CODATA2018.hbar


@dataclass(frozen=True)
class QuadCouplingMatrix:
    """Hermitian cos(Omega_rf t) amplitude matrix of H_Q/hbar over |F,m> states."""

    basis: tuple[HyperfineState, ...]
    amplitude: np.ndarray  # rad/s, complex

    def index(self, state: HyperfineState) -> int:
        try:
            return self.basis.index(state)
        except ValueError:
            raise InvalidInputError(f"{state!r} not in basis") from None

    def element(self, bra: HyperfineState, ket: HyperfineState) -> complex:
        return complex(self.amplitude[self.index(bra), self.index(ket)])


def hq_matrix(level: LevelSpec, trap: TrapConfig,
              manifold: Iterable[Momentum] | Sequence[Momentum]) -> QuadCouplingMatrix:
    """Assemble H_Q/hbar (rad/s) over the given hyperfine levels F.

    Basis states are ordered by (F ascending, m ascending).
    """
    fs = sorted((level.validate_f(F) for F in manifold), key=lambda f: f.twice)
    if not fs:
        raise InvalidInputError("manifold must contain at least one F level")
    states: list[HyperfineState] = []
    for f in fs:
        states.extend(level.manifold(f))

    n = len(states)
    out = np.zeros((n, n), dtype=complex)
    for i, bra in enumerate(states):
        for k, ket in enumerate(states):
            out[i, k] = coupling_amplitude(level, bra, ket, trap)
    return QuadCouplingMatrix(basis=tuple(states), amplitude=out)


def c2_coefficient(level: LevelSpec, F: Momentum, m: Momentum) -> float:
    """Diagonal rank-2 weight C2_{F,m}, normalised to 1 at the I=0 stretched state.

    C2_{F,m} = (-1)^(2F+I+J+m) (2F+1) {F F 2; J J I} (F 2 F; m 0 -m)
               / (J 2 J; -J 0 J).
    """
    F = level.validate_f(F)
    m = HalfInt(m)
    state = HyperfineState(F, m)
    return _wigner_eckart_prefactor(level, state, state)
