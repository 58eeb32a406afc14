"""Plane-wave sector of the first-order equation.

For a plane wave the equation becomes the 4x4 eigenvalue problem
(E*eta + m*eta_dagger) u = p u.  The operator is not Hermitian, yet its
spectrum is {+p, +p, -p, -p} with p = sqrt(2*E*m): the ordinary
Schrodinger dispersion, spin-doubled.  This script sweeps energies across
ten orders of magnitude and checks the numeric spectrum against the
closed-form eigenstates.
"""

import numpy as np

from spinstep import (
    ELECTRON_MASS_EV,
    analytic_eigenstate,
    eigenspace_projection_residual,
    momentum_operator,
    numeric_eigensystem,
)

print(f"electron mass m = {ELECTRON_MASS_EV} eV, hbar = c = 1\n")
print(f"{'E (eV)':>10}  {'sqrt(2Em) (eV)':>15}  {'worst |lam| dev':>15}  "
      f"{'worst imag':>12}  {'span resid':>12}")
for energy in np.logspace(0, 7, 8):
    p = np.sqrt(2 * energy * ELECTRON_MASS_EV)
    decomp = numeric_eigensystem(momentum_operator(energy, ELECTRON_MASS_EV))
    val_dev = max(min(abs(lam - p), abs(lam + p)) / p for lam in decomp.values)
    imag_dev = max(abs(lam.imag) / p for lam in decomp.values)
    span = max(
        eigenspace_projection_residual(
            decomp,
            p if kind in (1, 2) else -p,
            analytic_eigenstate(kind, energy, ELECTRON_MASS_EV).spinor,
        )
        for kind in (1, 2, 3, 4)
    )
    print(f"{energy:>10.3g}  {p:>15.6f}  {val_dev:>15.2e}  {imag_dev:>12.2e}  "
          f"{span:>12.2e}")

print("\nthe four closed-form states at E = 100 eV:")
for kind in (1, 2, 3, 4):
    state = analytic_eigenstate(kind, 100.0, ELECTRON_MASS_EV)
    print(f"  u({kind}): spin {state.spin.value:<4} direction {state.direction.value} "
          f"momentum {state.momentum:+.4f} eV  u^dag u = {state.norm_squared():.15f}")

up = analytic_eigenstate(1, 100.0, ELECTRON_MASS_EV).spinor
down = analytic_eigenstate(2, 100.0, ELECTRON_MASS_EV).spinor
print(f"\n  orthogonality |u(1)^dag u(2)| = {abs(np.vdot(up, down)):.2e}")
