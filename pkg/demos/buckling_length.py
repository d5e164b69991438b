"""
Self-weight buckling of a free-standing stack
=============================================

A tall enough column buckles under its own weight. The lowest eigenvalue
falls to zero at the critical length; beyond it the solver flags the
configuration as buckled instead of reporting a frequency.
"""

import numpy as np

from standbeam import CharacteristicContext, find_eigenvalues, is_buckled, nondimensionalize, reference_config


def context(length):
    return CharacteristicContext(nondimensionalize(reference_config(length)))


# lambda_1 along the length
for length in np.arange(60.0, 100.0, 5.0):
    result = find_eigenvalues(context(length), 1)
    if result.buckled:
        print(f"L = {length:5.1f} m  buckled, Lambda = {result.buckling_eigenvalue:+.4f}")
    else:
        print(f"L = {length:5.1f} m  lambda_1 = {result.frequency_parameters[0]:.4f}")

# bisection on the buckled flag pins the critical length
lo, hi = 80.0, 100.0
while hi - lo > 1e-6:
    mid = 0.5 * (lo + hi)
    lo, hi = (lo, mid) if is_buckled(context(mid)) else (mid, hi)
gamma = nondimensionalize(reference_config(hi)).gamma
print(f"critical length {hi:.4f} m, dimensionless load gradient |gamma| = {abs(gamma):.4f}")
print("classical heavy-column constant 7.8373")
