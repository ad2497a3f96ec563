"""Angular-momentum toolbox: 3j/6j symbols and rank-2 rotations.

Evaluates a few coupling coefficients exactly where closed forms exist, and
shows the rank-2 rotation factors that control how the trap's quadrupole
field addresses different Zeeman transitions.
"""

import math

import numpy as np

from trapquad import EulerAngles, wigner_3j, wigner_6j, wigner_D2

print("=== Wigner symbols ===")
print(f"  (1 1 0; 1 -1 0)          = {wigner_3j(1, 1, 0, 1, -1, 0):+.9f}"
      f"   [closed form 1/sqrt(3) = {1 / math.sqrt(3):.9f}]")
print(f"  (5/2 2 5/2; -5/2 0 5/2)  = {wigner_3j(2.5, 2, 2.5, -2.5, 0, 2.5):+.9f}"
      "   [stretched rank-2 normalisation]")
print(f"  {{1 1 1; 0 1 1}}           = {wigner_6j(1, 1, 1, 0, 1, 1):+.9f}"
      "   [closed form -1/3]")
print(f"  {{5 5 2; 2 2 7}}           = {wigner_6j(5, 5, 2, 2, 2, 7):+.9f}"
      "   [enters the F=5 couplings of an I=7, J=2 level]")

print("\n=== Orientation factors of a linear rf trap ===")
print("combined q=+-2 rotation element vs Euler angles (alpha, beta):")
print("alpha_deg beta_deg   |dm|=0     |dm|=1     |dm|=2")
for alpha_deg in (0, 22.5, 45):
    for beta_deg in (0, 54.7356, 90):
        ang = EulerAngles(math.radians(alpha_deg), math.radians(beta_deg))
        combos = {
            k: abs(wigner_D2(k, 2, ang) + wigner_D2(k, -2, ang))
            for k in (0, 1, 2)
        }
        print(f"{alpha_deg:9.1f} {beta_deg:8.2f}   "
              f"{combos[0]:.6f}   {combos[1]:.6f}   {combos[2]:.6f}")

print("\nAt beta = 0 only |dm| = 2 couplings survive, with unit weight:")
ang0 = EulerAngles(0.3, 0.0)
row = [abs(wigner_D2(k, 2, ang0) + wigner_D2(k, -2, ang0)) for k in range(-2, 3)]
print("  |D(k,2)+D(k,-2)| for k = -2..2:", np.round(row, 12))
