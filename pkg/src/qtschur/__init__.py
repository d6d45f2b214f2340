"""qtschur: exact desk-scale verification of a Schur-Weyl duality.

The package implements, over exact Laurent-polynomial coefficients, the
double affine Hecke algebra of type gl_l, tensor powers of the vector
representation of the quantum affine superalgebra of gl(m|n), and the
functor M -> M (x)_{H_l} V^{(x)l} that carries right Hecke modules to
quantum toroidal supermodules.  Every defining relation of the algebras
involved can be instantiated and checked mechanically; the `qtschur`
command line drives the suites.
"""

__version__ = "0.1.0"
