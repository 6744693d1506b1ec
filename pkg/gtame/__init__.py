"""gtame - g-vector calculus for bound quiver algebras.

Realizes finite-dimensional algebras kQ/I over prime fields and estimates
E-invariants, generic decompositions and tameness by sampling general
projective presentations.
"""

__version__ = "0.1.0"
