"""
Mode shapes
===========

Each eigenvalue comes with a deflected shape built from the two series
solutions that satisfy the clamped base. Shapes are scaled so the largest
deflection is 1 with a positive tip.
"""

from standbeam import CharacteristicContext, find_eigenvalues, mode_shape, nondimensionalize, reference_config

ctx = CharacteristicContext(nondimensionalize(reference_config(45.0, 600.0, 10000.0, 8.0)))
result = find_eigenvalues(ctx, 2)

for i, lam in enumerate(result.eigenvalues, 1):
    shape = mode_shape(lam, ctx, grid_points=11)
    print(f"mode {i} (Lambda = {lam:.6f})")
    for z, eta in shape.samples:
        bar = "#" * int(round(20 * abs(eta)))
        print(f"  z = {z:4.2f}  eta = {eta:+.4f}  {bar}")
    # the second mode changes sign once along the height
