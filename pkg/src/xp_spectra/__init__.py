"""Spectral model of the Riemann zeros built on the interacting xp Hamiltonian.

Subpackages
-----------
special_fn     complex special-function kernel (log-gamma, phases, 1F2,
               erfc, principal-value quadrature)
semiclassical  phase-space counting and boundary reconstruction
spectral       exact solution of the interacting model (S-integrals, Jost
               function, bound states, quantum trap)
riemann        Riemann-Siegel realization (Z, truncated sums, counting,
               factorization, truncated Euler product)
wavefn         bound-state wave functions, norms, orthogonality
cli            command-line front end emitting CSV/JSON data
"""

__version__ = "0.1.0"
