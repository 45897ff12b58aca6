"""walg: exact quantization checks for Slodowy slices.

Builds, for a semisimple Lie algebra over Q and a nilpotent element, the
slice coordinate ring with its Kazhdan grading and reduced Poisson
bracket, and the finite W-algebra H_ell by quantum Hamiltonian reduction;
verifies gr H_ell = C[S] degree by degree, independence of the isotropic
subspace ell, Whittaker-vector and cohomology identifications, all in
exact rational arithmetic.
"""

__version__ = "0.1.0"
