"""Angular momentum algebra: Wigner 3j/6j symbols and rank-2 rotations.

Quantum numbers are held as :class:`HalfInt` (twice the value, as an int) so
half-integers compare exactly.  The 3j/6j symbols are evaluated with the Racah
single-sum formulas using exact integer factorials for each term; only the
final combination is done in floating point.  Rotations follow the passive
z-y-z Euler convention with the first rotation (alpha) about z and gamma = 0,
so D2(mp, m; alpha, beta) = d2(mp, m; beta) * exp(i*m*alpha).  The sign
convention of the little-d matrix is locked by the closed-form tests in
tests/test_angular.py.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidInputError

Momentum = Union["HalfInt", int, float]

_SQRT38 = math.sqrt(3.0 / 8.0)
_SQRT32 = math.sqrt(3.0 / 2.0)


class HalfInt:
    """An exact integer or half-integer, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, value: Momentum):
        if isinstance(value, HalfInt):
            self.twice = value.twice
            return
        doubled = 2 * value
        rounded = round(doubled)
        if abs(doubled - rounded) > 1e-9:
            raise InvalidInputError(
                f"{value!r} is not an integer or half-integer"
            )
        self.twice = int(rounded)

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        obj = cls.__new__(cls)
        obj.twice = int(twice)
        return obj

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __int__(self) -> int:
        if self.twice % 2:
            raise InvalidInputError(f"{self!r} is not an integer")
        return self.twice // 2

    def __add__(self, other: Momentum) -> "HalfInt":
        return HalfInt.from_twice(self.twice + HalfInt(other).twice)

    __radd__ = __add__

    def __sub__(self, other: Momentum) -> "HalfInt":
        return HalfInt.from_twice(self.twice - HalfInt(other).twice)

    def __rsub__(self, other: Momentum) -> "HalfInt":
        return HalfInt.from_twice(HalfInt(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt.from_twice(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt.from_twice(abs(self.twice))

    def __eq__(self, other) -> bool:
        try:
            return self.twice == HalfInt(other).twice
        except (InvalidInputError, TypeError):
            return NotImplemented

    def __lt__(self, other) -> bool:
        return self.twice < HalfInt(other).twice

    def __le__(self, other) -> bool:
        return self.twice <= HalfInt(other).twice

    def __gt__(self, other) -> bool:
        return self.twice > HalfInt(other).twice

    def __ge__(self, other) -> bool:
        return self.twice >= HalfInt(other).twice

    def __hash__(self) -> int:
        return hash(self.twice / 2.0)

    def __repr__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


@dataclass(frozen=True)
class EulerAngles:
    """Passive z-y-z Euler rotation (alpha about z first, then beta; gamma = 0)."""

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise InvalidInputError("Euler angles must be finite")


IDENTITY_ORIENTATION = EulerAngles(0.0, 0.0)


def _validate_jm(j: HalfInt, m: HalfInt, name: str) -> None:
    if j.twice < 0:
        raise InvalidInputError(f"negative angular momentum {name}={j!r}")
    if abs(m.twice) > j.twice:
        raise InvalidInputError(f"projection |m|>{name}: m={m!r}, {name}={j!r}")
    if (j.twice - m.twice) % 2:
        raise InvalidInputError(
            f"projection parity mismatch: m={m!r} for {name}={j!r}"
        )


def _triangle_ok(a: int, b: int, c: int) -> bool:
    # arguments are twice-values; also requires an integer perimeter
    return abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0


def wigner_3j(j1: Momentum, j2: Momentum, j3: Momentum,
              m1: Momentum, m2: Momentum, m3: Momentum) -> float:
    """Wigner 3j symbol (j1 j2 j3 / m1 m2 m3).

    Returns exactly 0.0 when the triangle rule or m1+m2+m3=0 fails; raises
    InvalidInputError for malformed quantum numbers.
    """
    j1, j2, j3 = HalfInt(j1), HalfInt(j2), HalfInt(j3)
    m1, m2, m3 = HalfInt(m1), HalfInt(m2), HalfInt(m3)
    for j, m, name in ((j1, m1, "j1"), (j2, m2, "j2"), (j3, m3, "j3")):
        _validate_jm(j, m, name)
    if m1.twice + m2.twice + m3.twice != 0:
        return 0.0
    if not _triangle_ok(j1.twice, j2.twice, j3.twice):
        return 0.0

    fac = math.factorial
    # factorial arguments, all guaranteed non-negative integers here
    a1 = (j1.twice + j2.twice - j3.twice) // 2
    a2 = (j1.twice - j2.twice + j3.twice) // 2
    a3 = (-j1.twice + j2.twice + j3.twice) // 2
    peri = (j1.twice + j2.twice + j3.twice) // 2

    jm = [
        (j1.twice + m1.twice) // 2, (j1.twice - m1.twice) // 2,
        (j2.twice + m2.twice) // 2, (j2.twice - m2.twice) // 2,
        (j3.twice + m3.twice) // 2, (j3.twice - m3.twice) // 2,
    ]

    # squared prefactor as an exact rational, converted once
    pref2 = Fraction(fac(a1) * fac(a2) * fac(a3), fac(peri + 1))
    for f in jm:
        pref2 *= fac(f)

    t1 = (j2.twice - j3.twice - m1.twice) // 2
    t2 = (j1.twice - j3.twice + m2.twice) // 2
    tmin = max(0, t1, t2)
    tmax = min(a1, jm[1], jm[2])

    terms = []
    for t in range(tmin, tmax + 1):
        denom = (fac(t) * fac(t - t1) * fac(t - t2)
                 * fac(a1 - t) * fac(jm[1] - t) * fac(jm[2] - t))
        terms.append((-1.0) ** t * float(Fraction(1, denom)))
    total = math.fsum(terms)
    if total == 0.0:
        return 0.0

    sign = -1.0 if ((j1.twice - j2.twice - m3.twice) // 2) % 2 else 1.0
    return sign * math.sqrt(float(pref2)) * total


def wigner_6j(j1: Momentum, j2: Momentum, j3: Momentum,
              j4: Momentum, j5: Momentum, j6: Momentum) -> float:
    """Wigner 6j symbol {j1 j2 j3 / j4 j5 j6}.

    Returns 0.0 when any of the four triads violates the triangle rules.
    """
    js = [HalfInt(j) for j in (j1, j2, j3, j4, j5, j6)]
    for j in js:
        if j.twice < 0:
            raise InvalidInputError(f"negative angular momentum {j!r}")
    t1, t2, t3, t4, t5, t6 = (j.twice for j in js)

    triads = ((t1, t2, t3), (t1, t5, t6), (t4, t2, t6), (t4, t5, t3))
    if not all(_triangle_ok(*tri) for tri in triads):
        return 0.0

    fac = math.factorial

    def delta2(a: int, b: int, c: int) -> Fraction:
        return Fraction(
            fac((a + b - c) // 2) * fac((a - b + c) // 2) * fac((-a + b + c) // 2),
            fac((a + b + c) // 2 + 1),
        )

    pref2 = Fraction(1)
    for tri in triads:
        pref2 *= delta2(*tri)

    sums = [(t1 + t2 + t3) // 2, (t1 + t5 + t6) // 2,
            (t4 + t2 + t6) // 2, (t4 + t5 + t3) // 2]
    quads = [(t1 + t2 + t4 + t5) // 2, (t2 + t3 + t5 + t6) // 2,
             (t3 + t1 + t6 + t4) // 2]

    kmin = max(sums)
    kmax = min(quads)
    terms = []
    for k in range(kmin, kmax + 1):
        denom = 1
        for s in sums:
            denom *= fac(k - s)
        for q in quads:
            denom *= fac(q - k)
        terms.append((-1.0) ** k * float(Fraction(fac(k + 1), denom)))
    total = math.fsum(terms)
    if total == 0.0:
        return 0.0
    return math.sqrt(float(pref2)) * total


def _little_d2(mp: int, m: int, beta: float) -> float:
    """Rank-2 little-d matrix element in the passive convention."""
    c = math.cos(beta)
    s = math.sin(beta)
    key = (mp, m)
    if key == (2, 2):
        return ((1 + c) / 2) ** 2
    if key == (2, 1):
        return s * (1 + c) / 2
    if key == (2, 0):
        return _SQRT38 * s * s
    if key == (2, -1):
        return s * (1 - c) / 2
    if key == (2, -2):
        return ((1 - c) / 2) ** 2
    if key == (1, 2):
        return -s * (1 + c) / 2
    if key == (1, 1):
        return (1 + c) * (2 * c - 1) / 2
    if key == (1, 0):
        return _SQRT32 * s * c
    if key == (1, -1):
        return (1 - c) * (2 * c + 1) / 2
    if key == (1, -2):
        return s * (1 - c) / 2
    if key == (0, 2):
        return _SQRT38 * s * s
    if key == (0, 1):
        return -_SQRT32 * s * c
    if key == (0, 0):
        return (3 * c * c - 1) / 2
    if key == (0, -1):
        return _SQRT32 * s * c
    if key == (0, -2):
        return _SQRT38 * s * s
    if key == (-1, 2):
        return -s * (1 - c) / 2
    if key == (-1, 1):
        return (1 - c) * (2 * c + 1) / 2
    if key == (-1, 0):
        return -_SQRT32 * s * c
    if key == (-1, -1):
        return (1 + c) * (2 * c - 1) / 2
    if key == (-1, -2):
        return s * (1 + c) / 2
    if key == (-2, 2):
        return ((1 - c) / 2) ** 2
    if key == (-2, 1):
        return -s * (1 - c) / 2
    if key == (-2, 0):
        return _SQRT38 * s * s
    if key == (-2, -1):
        return -s * (1 + c) / 2
    if key == (-2, -2):
        return ((1 + c) / 2) ** 2
    raise InvalidInputError(f"projections out of range for rank 2: {mp}, {m}")


def wigner_d2(mp: Momentum, m: Momentum, beta: float) -> float:
    """Passive rank-2 little-d element d2_{mp,m}(beta)."""
    mp, m = HalfInt(mp), HalfInt(m)
    if not (mp.is_integer and m.is_integer):
        raise InvalidInputError("rank-2 projections must be integers")
    if abs(mp.twice) > 4 or abs(m.twice) > 4:
        raise InvalidInputError("rank-2 projections must satisfy |m| <= 2")
    return _little_d2(int(mp), int(m), beta)


def wigner_D2(mp: Momentum, m: Momentum, angles: EulerAngles) -> complex:
    """Rank-2 rotation matrix element D2_{mp,m}(alpha, beta, gamma=0).

    Passive convention with alpha applied first, so the alpha phase rides on
    the second index: D2_{mp,m} = d2_{mp,m}(beta) * exp(i*m*alpha).
    """
    mp, m = HalfInt(mp), HalfInt(m)
    d = wigner_d2(mp, m, angles.beta)
    return d * complex(math.cos(int(m) * angles.alpha),
                       math.sin(int(m) * angles.alpha))
