"""
Natural frequencies of a standing stack with a top mass
=======================================================

Build the reference steel stack, put a 600 kg body on top and ask for the
two lowest natural frequencies.
"""

import numpy as np

from standbeam import CharacteristicContext, DimensionlessParams, find_eigenvalues, nondimensionalize, reference_config

# a 45 m stack, 600 kg end body with 10000 kg m^2 rotary inertia,
# centre of mass 8 m above the free end
config = reference_config(45.0, end_mass=600.0, end_inertia=10000.0, eccentricity=8.0)
print("flexural rigidity EI =", config.flexural_rigidity, "N m^2")

# everything the eigenproblem depends on fits in five numbers
params = nondimensionalize(config)
print("M, J, e =", params.end_mass, params.end_inertia, params.eccentricity)
print("axial load p0 -> p1 =", params.p0, "->", params.load(1.0))

result = find_eigenvalues(CharacteristicContext(params), n_roots=2)
for i, (lam, omega) in enumerate(zip(result.frequency_parameters, result.dimensional_frequencies), 1):
    print(f"mode {i}: lambda = {lam:.6f}, omega = {omega:.4f} rad/s, f = {omega / (2 * np.pi):.4f} Hz")

# removing self-weight stiffens the lowest mode
bare = DimensionlessParams(params.end_mass, params.end_inertia, params.eccentricity, 0.0, 0.0,
                           params.time_scale, params.length_scale)
print("without gravity, lambda_1 =", find_eigenvalues(CharacteristicContext(bare), 1).frequency_parameters[0])
