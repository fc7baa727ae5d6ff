"""sbolab: a symbolic-numeric lab for conformally covariant symmetry breaking operators.

The package implements, for the conformal pair of a round sphere and an
equatorial hypersphere realized in flat coordinates:

* scalar special functions (Gamma, reciprocal Gamma, Gauss 2F1, Gegenbauer
  polynomials and their two-variable homogenization),
* an exact symbolic substrate (rational polynomials, the Weyl algebra with
  its dual-variable transform, Gaussian-polynomial test functions),
* the conformal geometry of the sphere in the null-cone model,
* the operator catalog: Gegenbauer-coefficient differential operators,
  regularized integral operators, Riesz convolutions, their Fourier-side
  symbols, the residue constant and the symbol functional equations,
* the exact polynomial solution space of the symbol annihilation system,
* a CLI verification harness emitting JSON reports and CSV grids.
"""

__version__ = "0.1.0"
