"""Three-dimensional operator algebra and the shell-determinant structure.

The 3D equation carries three Hermitian matrices mu_i with
{mu_i, mu_j} = 2*delta_ij*I.  All commutation relations behind its
continuity equation hold to machine precision, for both generator
representations.

The momentum-space operator deserves a close look.  Because every mu_i
anticommutes with eta and eta_dagger,

    (mu.p - E*eta - m*eta_dagger)^2 = (|p|^2 + 2*E*m) * I,

so that operator is nonsingular for every real momentum: it admits no
plane-wave solutions at all.  Flipping the sign of the mass term gives
(|p|^2 - 2*E*m)*I instead, singular exactly on the Schrodinger shell
|p|^2 = 2*E*m.  The table below shows both signs, on and off shell.
"""

import numpy as np

from spinstep import (
    ELECTRON_MASS_EV,
    EtaRepresentation,
    mu_matrices,
    shell_determinant,
    squared_operator_check,
    verify_continuity_identities,
)

mus = mu_matrices()
print("mu1 =")
print(np.real_if_close(mus.mu1))
print("\nidentity suite (worst deviation per check):")
for rep in (EtaRepresentation.REP1, EtaRepresentation.REP2):
    report = verify_continuity_identities(rep)
    print(f"  {rep.value}: {len(report.checks)} checks, all pass = "
          f"{report.passed}, max deviation = {report.max_deviation:.2e}")

print("\nsquared-operator identities at p = (1, -2, 0.5), E = 2, m = 3:")
for check in squared_operator_check((1.0, -2.0, 0.5), energy=2.0, mass=3.0).checks:
    print(f"  {check.name:<35} deviation {check.max_deviation:.2e}")

print("\nnormalized |det(mu.p - E*eta - s*m*eta_dagger)| for s = +1 and -1 "
      "(shell momentum p0 = sqrt(2*E*m)):")
print(f"{'E (eV)':>10}  {'|p|/p0':>7}  {'mass term -m':>14}  {'mass term +m':>14}")
rng = np.random.default_rng(1)
for energy in (1.0, 1e3, 1e6):
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    p0 = np.sqrt(2 * energy * ELECTRON_MASS_EV)
    for scale in (1.0, 1.1):
        p = scale * p0 * direction
        default_sign = shell_determinant(energy, ELECTRON_MASS_EV, p, mass_sign=+1)
        flipped = shell_determinant(energy, ELECTRON_MASS_EV, p, mass_sign=-1)
        print(f"{energy:>10.3g}  {scale:>7.2f}  {default_sign:>14.3e}  {flipped:>14.3e}")
print("\n(-m column: never singular; +m column: singular exactly on shell)")
