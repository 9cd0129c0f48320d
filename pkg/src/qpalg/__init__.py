"""qpalg: exact symbolic computation for quantum permutation algebras.

Subpackages cover exact coefficient arithmetic (rationals, cyclotomics),
free-algebra polynomials and rewriting modulo two-sided ideals, the magic
and semi-magic matrix presentations with their Hopf structure checks, the
quotient onto functions on the symmetric group, and group gradings on the
diagonal algebra K^n.
"""

__version__ = "0.1.0"
