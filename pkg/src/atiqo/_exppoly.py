"""Exact calculus on trigonometric polynomials.

The sin^2-envelope pulse and everything derived from it (vector potential,
its running integral, the squared potential entering the action, the
Fourier-kernel integrands of the mode displacements) are finite sums of
P(t) * exp(i m nu t) with polynomial P and integer m, where nu = 2 pi / T is
the envelope frequency.  Keeping that representation explicit lets us
integrate everything in closed form, evaluate at complex times (analytic
continuation is free), and avoid any near-resonance floating-point traps:
frequency bookkeeping is integer arithmetic.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ExpPoly"]


def _polyval_ascending(coeffs, x):
    """Evaluate sum_k coeffs[k] x^k with Horner's scheme (array-safe)."""
    result = np.zeros_like(np.asarray(x, dtype=complex))
    for c in reversed(coeffs):
        result = result * x + c
    return result


class ExpPoly:
    """Sum of polynomial-times-complex-exponential terms on a base frequency.

    ``terms`` maps an integer harmonic index m to the ascending coefficient
    list of the polynomial multiplying exp(i m base t).
    """

    __slots__ = ("base", "terms")

    def __init__(self, base: float, terms: dict[int, list[complex]] | None = None):
        self.base = float(base)
        self.terms: dict[int, list[complex]] = {}
        if terms:
            for m, coeffs in terms.items():
                self._accumulate(int(m), coeffs)

    def _accumulate(self, m: int, coeffs):
        coeffs = [complex(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            return
        existing = self.terms.get(m)
        if existing is None:
            self.terms[m] = coeffs
        else:
            n = max(len(existing), len(coeffs))
            merged = [
                (existing[k] if k < len(existing) else 0.0)
                + (coeffs[k] if k < len(coeffs) else 0.0)
                for k in range(n)
            ]
            while merged and merged[-1] == 0:
                merged.pop()
            if merged:
                self.terms[m] = merged
            else:
                del self.terms[m]

    # ------------------------------------------------------------------ algebra
    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        if other.base != self.base:
            raise ValueError("base frequencies differ")
        out = ExpPoly(self.base, self.terms)
        for m, coeffs in other.terms.items():
            out._accumulate(m, coeffs)
        return out

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            if other.base != self.base:
                raise ValueError("base frequencies differ")
            out = ExpPoly(self.base)
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    prod = [0.0] * (len(c1) + len(c2) - 1)
                    for i, a in enumerate(c1):
                        for j, b in enumerate(c2):
                            prod[i + j] += a * b
                    out._accumulate(m1 + m2, prod)
            return out
        out = ExpPoly(self.base)
        for m, coeffs in self.terms.items():
            out._accumulate(m, [complex(other) * c for c in coeffs])
        return out

    __rmul__ = __mul__

    def __neg__(self) -> "ExpPoly":
        return self * (-1.0)

    def shifted(self, dm: int) -> "ExpPoly":
        """Multiply by exp(i dm base t): shift every harmonic index by dm."""
        out = ExpPoly(self.base)
        for m, coeffs in self.terms.items():
            out._accumulate(m + int(dm), coeffs)
        return out

    # -------------------------------------------------------------- integration
    def antiderivative(self) -> "ExpPoly":
        """Closed-form antiderivative (integration constant chosen as zero).

        For m != 0 the integration-by-parts recursion turns P exp(i m nu t)
        into R exp(i m nu t) with deg R = deg P; the m = 0 term integrates as
        an ordinary polynomial.
        """
        out = ExpPoly(self.base)
        for m, coeffs in self.terms.items():
            if m == 0:
                integrated = [0.0] + [c / (k + 1) for k, c in enumerate(coeffs)]
                out._accumulate(0, integrated)
            else:
                c = 1j * m * self.base
                degree = len(coeffs) - 1
                result = [0.0] * (degree + 1)
                result[degree] = coeffs[degree] / c
                for k in range(degree - 1, -1, -1):
                    result[k] = (coeffs[k] - (k + 1) * result[k + 1]) / c
                out._accumulate(m, result)
        return out

    def definite(self, a, b):
        """Integral from a to b (arguments may be complex arrays)."""
        return self(b) - self(a)

    # --------------------------------------------------------------- evaluation
    def __call__(self, t):
        """Evaluate at (possibly complex) scalar or array argument."""
        t_arr = np.asarray(t, dtype=complex)
        result = np.zeros_like(t_arr)
        for m, coeffs in self.terms.items():
            value = _polyval_ascending(coeffs, t_arr)
            if m != 0:
                value = value * np.exp((1j * m * self.base) * t_arr)
            result = result + value
        if np.isscalar(t) or np.ndim(t) == 0:
            return complex(result)
        return result

    def real_at(self, t):
        """Evaluate at real argument and drop the (round-off) imaginary part."""
        value = self(t)
        return value.real if not np.isscalar(value) else value.real
