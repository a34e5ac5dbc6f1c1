"""Integer polynomials in one variable, stored as trimmed coefficient tuples."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class IntPolynomial:
    """sum_k coeffs[k] t^k with no trailing zeros (the zero polynomial is ())."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_exponents(cls, exponents) -> IntPolynomial:
        """One monomial t^e per exponent in the iterable."""
        counts = Counter(exponents)
        if not counts:
            return cls(())
        c = [0] * (max(counts) + 1)
        for e, k in counts.items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            c[e] = k
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        value = 0
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (m - len(self.coeffs))
        b = other.coeffs + (0,) * (m - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def stretch(self, k: int) -> IntPolynomial:
        """p(t^k)."""
        if not self.coeffs:
            return self
        c = [0] * (k * self.degree + 1)
        for e, x in enumerate(self.coeffs):
            c[k * e] = x
        return IntPolynomial(tuple(c))

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def coeffs_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                mono = str(c)
            else:
                power = "t" if e == 1 else f"t^{e}"
                mono = power if c == 1 else ("-" + power if c == -1 else f"{c}{power}")
            terms.append(mono)
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")
