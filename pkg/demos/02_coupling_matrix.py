"""Quadrupole coupling matrix of the Ba+ D_5/2 level.

Builds <F,m'|H_Q|F,m>/hbar for the trap parameters of the quadrupole-moment
measurement and shows the two resonant |dm| = 2 channels that dress the
m = 1/2 state.
"""

import math

from trapquad import HyperfineState, LevelSpec, TrapConfig, hq_matrix
from trapquad.angular import EulerAngles
from trapquad.trap import CODATA2018

TWO_PI = 2 * math.pi

ba_d52 = LevelSpec(nuclear_spin=0, electronic_j=2.5, theta_e_a02=3.229,
                   label="138Ba+ D5/2")
trap = TrapConfig.ideal_linear(
    mass=137.905 * CODATA2018.atomic_mass,
    omega_rf=TWO_PI * 20.585e6,
    omega_s=TWO_PI * 943e3,
)

omega_q = trap.epsilon * 3.229 * CODATA2018.e_a0_squared / CODATA2018.hbar
print(f"epsilon = {trap.epsilon:.4e} V/m^2")
print(f"omega_q = eps*Theta/hbar = 2*pi x {omega_q / TWO_PI:.1f} Hz")

mat = hq_matrix(ba_d52, trap, [2.5])
print("\ncos(Omega_rf t) amplitudes |<m'|H_Q|m>|/hbar (Hz), beta = 0:")
print("        " + "".join(f"{str(s.m):>10}" for s in mat.basis))
for i, bra in enumerate(mat.basis):
    row = "".join(f"{abs(mat.amplitude[i, k]) / TWO_PI:10.1f}"
                  for k in range(len(mat.basis)))
    print(f"m'={str(bra.m):>4} {row}")

up = mat.element(HyperfineState(2.5, 2.5), HyperfineState(2.5, 0.5))
down = mat.element(HyperfineState(2.5, -1.5), HyperfineState(2.5, 0.5))
print("\nresonant channels from m = 1/2 (cos amplitudes):")
print(f"  to m = +5/2: {abs(up) / TWO_PI:8.1f} Hz = 2*wq/sqrt(10)"
      f"  ({2 / math.sqrt(10):.4f} wq)")
print(f"  to m = -3/2: {abs(down) / TWO_PI:8.1f} Hz = 6*wq/(5*sqrt(2))"
      f" ({6 / (5 * math.sqrt(2)):.4f} wq)")
print("the rotating-frame couplings are half of these amplitudes")

print("\ntilting the field axis (beta = 30 deg) opens |dm| = 0, 1 channels:")
tilted = hq_matrix(ba_d52, trap.with_orientation(EulerAngles(0.0, math.pi / 6)),
                   [2.5])
for dm in (0, 1, 2):
    vals = [abs(tilted.amplitude[i, k]) / TWO_PI
            for i, b in enumerate(tilted.basis)
            for k, c in enumerate(tilted.basis)
            if b.m.twice - c.m.twice == 2 * dm]
    print(f"  max |dm|={dm} amplitude: {max(vals):8.1f} Hz")
