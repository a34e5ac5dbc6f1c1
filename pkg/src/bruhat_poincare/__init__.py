"""Poincare polynomials of generic torus orbit closures in Schubert varieties."""

__version__ = "0.1.0"

from .permutations import BruhatInterval, Permutation, bruhat_leq, interval  # noqa: E402
from .poincare import a_polynomial, eulerian_polynomial, poincare_polynomial  # noqa: E402
from .polynomial import IntPolynomial  # noqa: E402

__all__ = [
    "Permutation", "BruhatInterval", "bruhat_leq", "interval", "IntPolynomial",
    "a_polynomial", "poincare_polynomial", "eulerian_polynomial",
]
