"""Dyadic operators on the pole subspace and their exact time evolution.

An operator here is a linear combination of dyads |ket k><bra m| built from
the chain vectors of one pole.  Evolving both sides by the Jordan-block
semigroup turns each entry into a polynomial in t multiplying one overall
decay factor exp(-width*t): the oscillating phases of ket and bra cancel
identically.  The module computes those polynomials exactly, decides whether
an operator decays purely exponentially (all positive powers of t cancel),
and characterizes the full family of coefficient tables for which that
happens, both by assembling and solving the homogeneous constraint system in
exact arithmetic and by the closed-form binomial recursion.

Two coefficient layouts are used:

* "dyad" entries are keyed (ket_order, bra_order), both below the pole order.
* "total" entries are keyed (total_order n, ket_order k) with k <= n <= bound;
  the dyad is recovered as ket k, bra n - k.

Everything is an immutable value; all functions are pure and thread-safe.
"""

import math
from fractions import Fraction

from .exact import (
    ComplexRational,
    I,
    ONE,
    Polynomial,
    ZERO,
    binomial,
    nullspace,
    matrix_rank,
    row_space_rref,
)
from .jordan import ComplexPole

DYAD_MODE = "dyad"
TOTAL_MODE = "total"


class CoefficientMatrix:
    """Sparse exact coefficient table in one of the two layouts."""

    __slots__ = ("mode", "bound", "entries")

    def __init__(self, mode: str, bound: int, entries):
        if mode not in (DYAD_MODE, TOTAL_MODE):
            raise ValueError(f"unknown coefficient layout {mode!r}")
        if bound < 0:
            raise ValueError("order bound must be nonnegative")
        table = {}
        for key, value in dict(entries).items():
            first, second = key
            value = ComplexRational.from_value(value)
            if mode == DYAD_MODE:
                if not (0 <= first < bound and 0 <= second < bound):
                    raise ValueError(
                        f"dyad entry {key} out of range for order bound {bound}"
                    )
            else:
                if not (0 <= second <= first <= bound):
                    raise ValueError(
                        f"total-order entry {key} outside the triangle 0 <= k <= n <= {bound}"
                    )
            if value:
                table[(first, second)] = value
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "entries", dict(table))

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientMatrix is immutable")

    @classmethod
    def by_dyad_orders(cls, order_bound: int, entries) -> "CoefficientMatrix":
        """Entries keyed (ket_order, bra_order), each in 0..order_bound-1."""
        return cls(DYAD_MODE, order_bound, entries)

    @classmethod
    def by_total_order(cls, total_bound: int, entries) -> "CoefficientMatrix":
        """Entries keyed (total_order, ket_order) with ket <= total <= total_bound."""
        return cls(TOTAL_MODE, total_bound, entries)

    def entry(self, key) -> ComplexRational:
        return self.entries.get(tuple(key), ZERO)

    def items(self):
        return sorted(self.entries.items())

    def to_total(self) -> "CoefficientMatrix":
        """Reindex a dyad table by (total_order, ket_order).

        Entry (ket k, bra m) lands at (n, k) with n = k + m; indices beyond
        the dyad range simply do not occur, which is the zero pattern the
        embedding into total order j = 2*(bound - 1) requires.
        """
        if self.mode == TOTAL_MODE:
            return self
        j = 2 * (self.bound - 1) if self.bound else 0
        return CoefficientMatrix.by_total_order(
            j, {(k + m, k): value for (k, m), value in self.entries.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, CoefficientMatrix):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.bound == other.bound
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.mode, self.bound, tuple(self.items())))

    def __repr__(self):
        return f"CoefficientMatrix({self.mode!r}, bound={self.bound}, entries={dict(self.items())!r})"


class DyadicOperator:
    """Linear combination of chain dyads |ket k><bra m| over one pole.

    The optional dimension table assigns each coefficient an energy-dimension
    exponent, keyed (ket_order, bra_order) like the entries; construction
    then checks homogeneity: exponent - (k + m + 1) must agree across all
    nonzero entries (the dyad itself carries -1/2 - k - 1/2 - m).
    """

    __slots__ = ("pole", "coefficients", "dimension_exponents")

    def __init__(self, pole: ComplexPole, coefficients: CoefficientMatrix,
                 dimension_exponents=None):
        if coefficients.mode != DYAD_MODE:
            coefficients = _total_to_dyad(pole.order, coefficients)
        if coefficients.bound != pole.order:
            raise ValueError(
                f"coefficient order bound {coefficients.bound} does not match pole order {pole.order}"
            )
        if dimension_exponents is not None:
            dimension_exponents = {
                tuple(key): Fraction(value) for key, value in dimension_exponents.items()
            }
            totals = {
                dimension_exponents[key] - (key[0] + key[1] + 1)
                for key in coefficients.entries
                if key in dimension_exponents
            }
            missing = [k for k in coefficients.entries if k not in dimension_exponents]
            if missing:
                raise ValueError(f"dimension exponents missing for entries {missing}")
            if len(totals) > 1:
                raise ValueError(
                    f"dimensionally inhomogeneous coefficient table: term exponents {sorted(totals)}"
                )
        object.__setattr__(self, "pole", pole)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "dimension_exponents", dimension_exponents)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicOperator is immutable")

    @property
    def total_dimension_exponent(self):
        """Common exponent of every term, or None when untagged/zero."""
        if self.dimension_exponents is None:
            return None
        for key in self.coefficients.entries:
            return self.dimension_exponents[key] - (key[0] + key[1] + 1)
        return None

    def coefficient(self, ket_order: int, bra_order: int) -> ComplexRational:
        return self.coefficients.entry((ket_order, bra_order))

    def items(self):
        return self.coefficients.items()

    @property
    def is_zero(self) -> bool:
        return not self.coefficients.entries

    def __add__(self, other):
        if not isinstance(other, DyadicOperator):
            return NotImplemented
        if self.pole != other.pole:
            raise ValueError("cannot add operators over different poles")
        merged = dict(self.coefficients.entries)
        for key, value in other.coefficients.entries.items():
            merged[key] = merged.get(key, ZERO) + value
        return DyadicOperator(
            self.pole, CoefficientMatrix.by_dyad_orders(self.pole.order, merged)
        )

    def __mul__(self, scalar):
        scalar = ComplexRational.from_value(scalar)
        scaled = {k: v * scalar for k, v in self.coefficients.entries.items()}
        return DyadicOperator(
            self.pole, CoefficientMatrix.by_dyad_orders(self.pole.order, scaled)
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DyadicOperator):
            return NotImplemented
        return self.pole == other.pole and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.pole, self.coefficients))

    def __repr__(self):
        return f"DyadicOperator(pole={self.pole!r}, coefficients={self.coefficients!r})"


def _total_to_dyad(order: int, coefficients: CoefficientMatrix) -> CoefficientMatrix:
    entries = {}
    for (n, k), value in coefficients.entries.items():
        m = n - k
        if k > order - 1 or m > order - 1:
            raise ValueError(
                f"total-order entry ({n}, {k}) maps to dyad ({k}, {m}) outside pole order {order}"
            )
        entries[(k, m)] = entries.get((k, m), ZERO) + value
    return CoefficientMatrix.by_dyad_orders(order, entries)


def operator_from_coefficients(pole: ComplexPole, coefficients: CoefficientMatrix,
                               dimension_exponents=None) -> DyadicOperator:
    """Operator with exactly the given coefficient table (either layout)."""
    return DyadicOperator(pole, coefficients, dimension_exponents)


def exponential_state_operator(pole: ComplexPole, n: int,
                               include_prefactor: bool = True) -> DyadicOperator:
    """The order-n binomial dyad combination, which decays purely exponentially.

    Coefficients are C(n,k) on the dyads |k><n-k|, k = 0..n, times the
    conventional prefactor width^n / n! unless `include_prefactor` is False
    (the overall constant is arbitrary; the prefactor makes the n-th operator
    carry dimension exponent n on its coefficients).
    """
    r = pole.order
    if not 0 <= n <= r - 1:
        raise ValueError(f"operator order n={n} requires chain orders up to n; pole order is {r}")
    prefactor = (
        ComplexRational(pole.width**n / math.factorial(n)) if include_prefactor else ONE
    )
    entries = {(k, n - k): prefactor * binomial(n, k) for k in range(n + 1)}
    dims = {key: Fraction(n) for key in entries} if include_prefactor else None
    return DyadicOperator(
        pole, CoefficientMatrix.by_dyad_orders(r, entries), dimension_exponents=dims
    )


class TimePolynomialOperator:
    """Evolved dyadic operator: per-entry polynomials in t times exp(-width*t).

    The oscillatory phases cancel between ket and bra, so the numeric value
    of entry (ket l, bra m) at time t is exactly exp(-width*t) * P_{l,m}(t)
    with P exact.  At t = 0 the table reproduces the originating operator.
    """

    __slots__ = ("pole", "table")

    def __init__(self, pole: ComplexPole, table):
        cleaned = {}
        for key, poly in dict(table).items():
            if not isinstance(poly, Polynomial):
                poly = Polynomial.constant(poly)
            if not poly.is_zero:
                cleaned[tuple(key)] = poly
        object.__setattr__(self, "pole", pole)
        object.__setattr__(self, "table", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("TimePolynomialOperator is immutable")

    def entry_polynomial(self, ket_order: int, bra_order: int) -> Polynomial:
        return self.table.get((ket_order, bra_order), Polynomial.zero())

    def items(self):
        return sorted(self.table.items())

    def decay_factor(self, t) -> float:
        return math.exp(-float(self.pole.width) * float(t))

    def value(self, ket_order: int, bra_order: int, t) -> complex:
        """Numeric entry value exp(-width*t) * P(t)."""
        if float(t) < 0:
            raise ValueError("operator evolution is defined for t >= 0 only")
        poly = self.entry_polynomial(ket_order, bra_order)
        return self.decay_factor(t) * complex(poly(float(t)))

    def at_time_zero(self) -> DyadicOperator:
        entries = {key: poly.coefficient(0) for key, poly in self.table.items()}
        return DyadicOperator(
            self.pole, CoefficientMatrix.by_dyad_orders(self.pole.order, entries)
        )

    def __eq__(self, other):
        if not isinstance(other, TimePolynomialOperator):
            return NotImplemented
        return self.pole == other.pole and self.table == other.table

    def __hash__(self):
        return hash((self.pole, tuple(self.items())))

    def __repr__(self):
        body = {key: poly.format("t") for key, poly in self.items()}
        return f"TimePolynomialOperator(pole={self.pole!r}, table={body!r})"


def evolve_operator(operator: DyadicOperator) -> TimePolynomialOperator:
    """Exact time evolution of a dyadic operator.

    Evolving ket and bra sides (the bra as the conjugate transpose of the ket
    evolution) and collecting dyads gives, for source entry (ket k, bra m),
    a contribution to target dyad (l, mm) of

        coeff * C(k,l) * C(m,mm) * (-i)^(k-l) * (+i)^(m-mm) * t^((k-l)+(m-mm))

    with the overall exp(-width*t) held implicitly.  All arithmetic is exact.
    """
    table = {}
    for (k, m), coeff in operator.items():
        for l in range(k + 1):
            ket_factor = ComplexRational(binomial(k, l)) * (-I) ** (k - l)
            for mm in range(m + 1):
                factor = (
                    coeff
                    * ket_factor
                    * binomial(m, mm)
                    * I ** (m - mm)
                )
                power = (k - l) + (m - mm)
                poly = table.get((l, mm), Polynomial.zero())
                table[(l, mm)] = poly + Polynomial.monomial(power, factor)
    return TimePolynomialOperator(operator.pole, table)


def is_pure_exponential(evolved: TimePolynomialOperator) -> bool:
    """True iff no entry polynomial carries a positive power of t (exact check)."""
    return all(poly.degree <= 0 for _, poly in evolved.items())


# -- the exponential-decay characterization --------------------------------


class ConstraintEquation:
    """One homogeneous cancellation condition, tagged by its (l, m, n) indices.

    The equation says the coefficient of t^(n-l-m) on dyad (l, m) vanishes:
    sum over k of A[(n,k)] * C(k,l) * C(n-k,m) * (-1)^(k-l) = 0, with k
    running from l to n-m.  Terms are ((n, k), integer coefficient) pairs.
    """

    __slots__ = ("l", "m", "n", "terms")

    def __init__(self, l: int, m: int, n: int, terms):
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", tuple((tuple(v), int(c)) for v, c in terms))

    def __setattr__(self, name, value):
        raise AttributeError("ConstraintEquation is immutable")

    def evaluate(self, coefficients: CoefficientMatrix) -> ComplexRational:
        total = ZERO
        for variable, coeff in self.terms:
            total = total + coefficients.entry(variable) * coeff
        return total

    def to_json_dict(self):
        return {
            "l": self.l,
            "m": self.m,
            "n": self.n,
            "terms": [
                {"n": v[0], "k": v[1], "coeff": [float(c), 0.0]} for v, c in self.terms
            ],
        }

    def __repr__(self):
        return f"ConstraintEquation(l={self.l}, m={self.m}, n={self.n}, terms={list(self.terms)!r})"


class ConstraintSystem:
    """The full homogeneous system over the total-order coefficient triangle."""

    __slots__ = ("j", "equations")

    def __init__(self, j: int, equations):
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "equations", tuple(equations))

    def __setattr__(self, name, value):
        raise AttributeError("ConstraintSystem is immutable")

    @property
    def variables(self):
        """All (total_order, ket_order) unknowns in ascending order."""
        return [(n, k) for n in range(self.j + 1) for k in range(n + 1)]

    @property
    def equation_count(self) -> int:
        return len(self.equations)

    @property
    def variable_count(self) -> int:
        return (self.j + 1) * (self.j + 2) // 2

    def coefficient_rows(self):
        index = {v: i for i, v in enumerate(self.variables)}
        rows = []
        for eq in self.equations:
            row = [ZERO] * len(index)
            for variable, coeff in eq.terms:
                row[index[variable]] = row[index[variable]] + ComplexRational(coeff)
            rows.append(row)
        return rows

    def nullspace_basis(self):
        """Exact solution basis, one CoefficientMatrix per free parameter."""
        vectors = nullspace(self.coefficient_rows(), self.variable_count)
        variables = self.variables
        return [
            CoefficientMatrix.by_total_order(
                self.j, {variables[i]: c for i, c in enumerate(vec) if c}
            )
            for vec in vectors
        ]

    @property
    def solution_dimension(self) -> int:
        return self.variable_count - matrix_rank(self.coefficient_rows())

    def to_json_dict(self):
        return {
            "j": self.j,
            "equations": [eq.to_json_dict() for eq in self.equations],
            "solution_dimension": self.solution_dimension,
        }

    def __repr__(self):
        return f"ConstraintSystem(j={self.j}, equations={len(self.equations)})"


def exponentiality_constraints(j: int) -> ConstraintSystem:
    """All cancellation conditions for total order bound j.

    Loop order is l outer, then m, then n (with n from m+l+1 up to j), which
    fixes the reported equation ordering.  j=0 yields the empty system.
    """
    if j < 0:
        raise ValueError("order bound j must be nonnegative")
    equations = []
    for l in range(j):
        for m in range(j - l):
            for n in range(m + l + 1, j + 1):
                terms = []
                for k in range(l, n - m + 1):
                    coeff = binomial(k, l) * binomial(n - k, m) * (-1) ** (k - l)
                    terms.append(((n, k), coeff))
                equations.append(ConstraintEquation(l, m, n, terms))
    return ConstraintSystem(j, equations)


class BinomialRecursionFamily:
    """Closed-form solution family A[(n,k)] = C(n,k) * A[(n,0)].

    Built by chaining the two-term recursion
    A[(n,k)] = ((n-k+1)/k) * A[(n,k-1)]; the multipliers collapse to the
    binomial coefficients, and every basis member satisfies the full
    constraint system (verified at construction).
    """

    __slots__ = ("j", "multipliers")

    def __init__(self, j: int, multipliers):
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "multipliers", dict(multipliers))

    def __setattr__(self, name, value):
        raise AttributeError("BinomialRecursionFamily is immutable")

    def multiplier(self, n: int, k: int) -> Fraction:
        return self.multipliers[(n, k)]

    def basis(self):
        """One member per free parameter: unit A[(n0,0)], everything else forced."""
        members = []
        for n0 in range(self.j + 1):
            entries = {
                (n0, k): ComplexRational(self.multipliers[(n0, k)])
                for k in range(n0 + 1)
            }
            members.append(CoefficientMatrix.by_total_order(self.j, entries))
        return members

    def member(self, free_values) -> CoefficientMatrix:
        """Family member with the given values of the free parameters A[(n,0)]."""
        free = [ComplexRational.from_value(v) for v in free_values]
        if len(free) != self.j + 1:
            raise ValueError(f"expected {self.j + 1} free parameters, got {len(free)}")
        entries = {}
        for (n, k), mult in self.multipliers.items():
            value = free[n] * ComplexRational(mult)
            if value:
                entries[(n, k)] = value
        return CoefficientMatrix.by_total_order(self.j, entries)

    def __repr__(self):
        return f"BinomialRecursionFamily(j={self.j})"


def solve_binomial_recursion(j: int) -> BinomialRecursionFamily:
    """Solve the cancellation conditions by the two-term recursion.

    Chains A[(n,k)] = ((n-k+1)!(k-1)! / (n-k)!k!) * A[(n,k-1)] down to the
    free A[(n,0)], checks the product telescopes to C(n,k), and verifies each
    resulting basis member against every equation of the full system.
    """
    if j < 0:
        raise ValueError("order bound j must be nonnegative")
    multipliers = {}
    for n in range(j + 1):
        multipliers[(n, 0)] = Fraction(1)
        for k in range(1, n + 1):
            step = Fraction(
                math.factorial(n - k + 1) * math.factorial(k - 1),
                math.factorial(n - k) * math.factorial(k),
            )
            multipliers[(n, k)] = step * multipliers[(n, k - 1)]
            if multipliers[(n, k)] != binomial(n, k):
                raise ArithmeticError(
                    f"recursion gave {multipliers[(n, k)]} at (n={n}, k={k}), expected C(n,k)"
                )
    family = BinomialRecursionFamily(j, multipliers)
    system = exponentiality_constraints(j)
    for member in family.basis():
        for eq in system.equations:
            residual = eq.evaluate(member)
            if residual:
                raise ArithmeticError(
                    f"closed-form member violates constraint (l={eq.l}, m={eq.m}, n={eq.n})"
                )
    return family


def binomial_family_matches_nullspace(system: ConstraintSystem,
                                      family: BinomialRecursionFamily) -> bool:
    """True iff the closed-form family spans exactly the system's nullspace.

    Both spans are reduced to canonical row form over the system's variable
    ordering and compared entry for entry, all in exact arithmetic.
    """
    variables = system.variables
    null_vectors = [
        [member.entry(v) for v in variables] for member in system.nullspace_basis()
    ]
    family_vectors = [
        [member.entry(v) for v in variables] for member in family.basis()
    ]
    return row_space_rref(null_vectors) == row_space_rref(family_vectors)


def exponential_subspace_basis(pole: ComplexPole):
    """The pole-order many independent operators spanning the pure-exponential set.

    Member n has coefficients C(n,k) on dyads |k><n-k| (no prefactor).  Each
    is verified pure-exponential under evolution, and the family is verified
    linearly independent, before returning.
    """
    r = pole.order
    members = [
        exponential_state_operator(pole, n, include_prefactor=False) for n in range(r)
    ]
    for member in members:
        if not is_pure_exponential(evolve_operator(member)):
            raise ArithmeticError(
                "basis member failed the pure-exponential check; evolution is inconsistent"
            )
    keys = [(k, m) for k in range(r) for m in range(r)]
    rows = [[member.coefficient(*key) for key in keys] for member in members]
    if matrix_rank(rows) != r:
        raise ArithmeticError("exponential basis members are linearly dependent")
    return members


class RestrictionReport:
    """Result of checking the dyad-layout restriction of the constraint system.

    The system for j = 2*(order-1) is rewritten over the r*r dyad unknowns
    (entries outside the dyad range are structurally zero); the report
    records the exact solution dimension and whether the nullspace equals,
    as a subspace, the span of the binomial-pattern operators.
    """

    __slots__ = (
        "order",
        "j",
        "equation_count",
        "variable_count",
        "solution_dimension",
        "expected_dimension",
        "pattern_matches",
        "basis",
    )

    def __init__(self, order, j, equation_count, variable_count,
                 solution_dimension, expected_dimension, pattern_matches, basis):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "equation_count", equation_count)
        object.__setattr__(self, "variable_count", variable_count)
        object.__setattr__(self, "solution_dimension", solution_dimension)
        object.__setattr__(self, "expected_dimension", expected_dimension)
        object.__setattr__(self, "pattern_matches", pattern_matches)
        object.__setattr__(self, "basis", tuple(basis))

    def __setattr__(self, name, value):
        raise AttributeError("RestrictionReport is immutable")

    @property
    def passed(self) -> bool:
        return (
            self.solution_dimension == self.expected_dimension and self.pattern_matches
        )

    def to_json_dict(self):
        return {
            "r": self.order,
            "j": self.j,
            "equation_count": self.equation_count,
            "variable_count": self.variable_count,
            "solution_dimension": self.solution_dimension,
            "expected_dimension": self.expected_dimension,
            "pattern_matches": self.pattern_matches,
            "passed": self.passed,
            "basis": [
                {
                    "entries": [
                        {"ket": key[0], "bra": key[1], "coeff": [float(v.real), float(v.imag)]}
                        for key, v in member.items()
                    ]
                }
                for member in self.basis
            ],
        }

    def __repr__(self):
        return (
            f"RestrictionReport(order={self.order}, solution_dimension={self.solution_dimension}, "
            f"pattern_matches={self.pattern_matches})"
        )


def binomial_pattern_matrix(order: int, n: int) -> CoefficientMatrix:
    """Dyad-layout coefficients C(n,k) on the anti-diagonal ket+bra = n."""
    if not 0 <= n <= order - 1:
        raise ValueError(f"pattern order n={n} out of range for order {order}")
    return CoefficientMatrix.by_dyad_orders(
        order, {(k, n - k): ComplexRational(binomial(n, k)) for k in range(n + 1)}
    )


def verify_restriction_equivalence(pole: ComplexPole) -> RestrictionReport:
    """Solve the constraint system restricted to the dyad range of the pole.

    Confirms by exact nullspace computation that the solutions over the r*r
    dyad coefficients are exactly the binomial-pattern combinations: solution
    dimension r, and subspace equality with the pattern span (compared via
    canonical reduced row forms, entry for entry).
    """
    r = pole.order
    j = 2 * (r - 1)
    system = exponentiality_constraints(j)
    dyad_keys = [(k, m) for k in range(r) for m in range(r)]
    index = {key: i for i, key in enumerate(dyad_keys)}
    rows = []
    for eq in system.equations:
        row = [ZERO] * len(dyad_keys)
        for (n, k), coeff in eq.terms:
            m = n - k
            if k <= r - 1 and m <= r - 1:
                row[index[(k, m)]] = row[index[(k, m)]] + ComplexRational(coeff)
        rows.append(row)
    solution = nullspace(rows, len(dyad_keys))
    pattern_vectors = []
    for n in range(r):
        pattern = binomial_pattern_matrix(r, n)
        pattern_vectors.append([pattern.entry(key) for key in dyad_keys])
    pattern_matches = row_space_rref(solution) == row_space_rref(pattern_vectors) if solution else not pattern_vectors
    basis = [
        CoefficientMatrix.by_dyad_orders(
            r, {dyad_keys[i]: c for i, c in enumerate(vec) if c}
        )
        for vec in solution
    ]
    return RestrictionReport(
        order=r,
        j=j,
        equation_count=len(system.equations),
        variable_count=len(dyad_keys),
        solution_dimension=len(solution),
        expected_dimension=r,
        pattern_matches=pattern_matches,
        basis=basis,
    )
