"""Exact complex-rational arithmetic, polynomials, and linear algebra.

Everything here stays inside the Gaussian rationals: numbers are complex
values with `fractions.Fraction` real and imaginary parts, polynomials carry
such numbers as coefficients, and the row reduction behind the nullspace
routines never rounds.  Floating point enters only when a caller evaluates
at a float/complex argument or converts explicitly.

Mixing with floats follows the `Fraction` convention: a float or complex
operand demotes the result to `complex`.  Floats passed where an exact value
is expected are embedded exactly (every double is a binary rational).
"""

import math
import sys
from fractions import Fraction

_HASH_IMAG = sys.hash_info.imag


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction, float, or numeric string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class ComplexRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        object.__setattr__(self, "real", as_fraction(real))
        object.__setattr__(self, "imag", as_fraction(imag))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    @classmethod
    def from_value(cls, value) -> "ComplexRational":
        """Coerce any supported scalar (including complex) to ComplexRational."""
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(value)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        """Return the exact counterpart of `other`, or None for the float path."""
        if isinstance(other, ComplexRational):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexRational(other)
        return None

    def __add__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            return ComplexRational(self.real + exact.real, self.imag + exact.imag)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            return ComplexRational(self.real - exact.real, self.imag - exact.imag)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            return ComplexRational(exact.real - self.real, exact.imag - self.imag)
        if isinstance(other, (float, complex)):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            return ComplexRational(
                self.real * exact.real - self.imag * exact.imag,
                self.real * exact.imag + self.imag * exact.real,
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            denom = exact.real * exact.real + exact.imag * exact.imag
            if denom == 0:
                raise ZeroDivisionError("division by zero ComplexRational")
            return ComplexRational(
                (self.real * exact.real + self.imag * exact.imag) / denom,
                (self.imag * exact.real - self.real * exact.imag) / denom,
            )
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            return exact / self
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE / (self ** (-exponent))
        result = ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return ComplexRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.real, -self.imag)

    # -- conversions and comparisons --------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __bool__(self) -> bool:
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        exact = self._coerce(other)
        if exact is not None:
            return self.real == exact.real and self.imag == exact.imag
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        # Same combination rule as CPython's complex hash, so values equal to
        # ints, Fractions, or floats hash consistently with them.
        if not self.imag:
            return hash(self.real)
        value = hash(self.real) + _HASH_IMAG * hash(self.imag)
        return -2 if value == -1 else value

    def __repr__(self):
        if not self.imag:
            return str(self.real)
        if not self.real:
            return f"{self.imag}*i"
        sign = "+" if self.imag > 0 else "-"
        return f"({self.real} {sign} {abs(self.imag)}*i)"


ZERO = ComplexRational(0)
ONE = ComplexRational(1)
I = ComplexRational(0, 1)


class Polynomial:
    """Dense univariate polynomial over ComplexRational coefficients.

    Coefficients are stored in ascending degree with trailing zeros trimmed;
    the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = [ComplexRational.from_value(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, power: int, coefficient=1) -> "Polynomial":
        if power < 0:
            raise ValueError("monomial power must be nonnegative")
        return cls((0,) * power + (coefficient,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, power: int) -> ComplexRational:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return ZERO

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] = merged[i] + c
        return Polynomial(merged)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.constant(other) - self

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coefficients))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial.zero()
            out = [ZERO] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out)
        scalar = ComplexRational.from_value(other)
        return Polynomial(tuple(c * scalar for c in self.coefficients))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial power must be a nonnegative integer")
        result = Polynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self, order: int = 1) -> "Polynomial":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        coeffs = self.coefficients
        for _ in range(order):
            coeffs = tuple(coeffs[p] * p for p in range(1, len(coeffs)))
        return Polynomial(coeffs)

    def __call__(self, z):
        """Evaluate by Horner's rule; exact for exact z, complex otherwise."""
        if isinstance(z, (ComplexRational, int, Fraction)):
            z = ComplexRational.from_value(z)
            acc = ZERO
            for c in reversed(self.coefficients):
                acc = acc * z + c
            return acc
        z = complex(z)
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * z + complex(c)
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def format(self, variable: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for power, c in enumerate(self.coefficients):
            if not c:
                continue
            if power == 0:
                parts.append(f"{c!r}")
            elif power == 1:
                parts.append(f"{c!r}*{variable}")
            else:
                parts.append(f"{c!r}*{variable}^{power}")
        return " + ".join(parts)

    def __repr__(self):
        return self.format()


class RationalFunction:
    """Quotient of two exact polynomials; closed under differentiation.

    No gcd reduction is performed: an unreduced quotient evaluates and
    differentiates correctly, and the degrees stay small at the orders this
    library works with.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        if not isinstance(numerator, Polynomial):
            numerator = Polynomial.constant(numerator)
        if denominator is None:
            denominator = Polynomial.constant(1)
        elif not isinstance(denominator, Polynomial):
            denominator = Polynomial.constant(denominator)
        if denominator.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_coefficient_lists(cls, numerator, denominator) -> "RationalFunction":
        return cls(Polynomial(numerator), Polynomial(denominator))

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def __call__(self, z):
        num = self.numerator(z)
        den = self.denominator(z)
        if isinstance(den, ComplexRational):
            return num / den
        if den == 0:
            raise ZeroDivisionError("evaluation at a pole of the denominator")
        return num / den

    def derivative(self, order: int = 1) -> "RationalFunction":
        result = self
        for _ in range(order):
            p, q = result.numerator, result.denominator
            result = RationalFunction(p.derivative() * q - p * q.derivative(), q * q)
        return result

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(
                self.numerator * other.numerator,
                self.denominator * other.denominator,
            )
        return RationalFunction(self.numerator * other, self.denominator)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"({self.numerator.format()}) / ({self.denominator.format()})"


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# -- exact linear algebra --------------------------------------------------


def rref(rows):
    """Reduced row echelon form over ComplexRational.

    Returns (reduced_rows, pivot_columns).  Pivoting is deterministic (first
    nonzero entry scanning top to bottom), which exact arithmetic permits.
    """
    matrix = [[ComplexRational.from_value(c) for c in row] for row in rows]
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    pivots = []
    row = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(row, len(matrix)) if matrix[i][col]), None)
        if pivot_row is None:
            continue
        matrix[row], matrix[pivot_row] = matrix[pivot_row], matrix[row]
        inv = matrix[row][col]
        matrix[row] = [c / inv for c in matrix[row]]
        for i in range(len(matrix)):
            if i != row and matrix[i][col]:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[row])]
        pivots.append(col)
        row += 1
        if row == len(matrix):
            break
    return matrix, pivots


def matrix_rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, num_columns: int):
    """Exact nullspace basis of a homogeneous system.

    `rows` are the constraint coefficients over `num_columns` unknowns.  The
    basis is canonical: one vector per free column, unit entry at the free
    column, in ascending column order.
    """
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_columns = [c for c in range(num_columns) if c not in pivot_set]
    basis = []
    for free in free_columns:
        vector = [ZERO] * num_columns
        vector[free] = ONE
        for pivot_row, pivot_col in zip(reduced, pivots):
            vector[pivot_col] = -pivot_row[free]
        basis.append(tuple(vector))
    return basis


def row_space_rref(vectors):
    """Canonical (RREF) basis of the span of the given vectors.

    Two lists of vectors span the same subspace iff this returns the same
    rows for both, so it serves as an exact subspace-equality certificate.
    """
    reduced, pivots = rref(vectors)
    return [tuple(row) for row in reduced[: len(pivots)]]
