"""Rational scattering-amplitude model with a residue/contour cross-check.

The model is a principal part of prescribed order at one lower-half-plane
pole plus an optional rational background, paired with rational stand-ins
for the very well-behaved wavefunctions (poles confined to the upper
half-plane, jointly decaying at infinity).  Because everything is rational,
the pole contribution to the amplitude integral has an exact closed form,
the Leibniz-expanded derivative sum, and the contour decomposition

    integral over [0, inf) = background piece + residue term

is an identity of the residue theorem on the closed contour (real axis plus
a lower semicircle at infinity) rather than an approximation.  The
background piece is the (-inf, 0] leg traversed outward from the origin,
i.e. minus the conventionally oriented integral; that orientation is what
the closed contour produces.  Quadrature is adaptive Gauss-Kronrod
(scipy/QUADPACK) with extra breakpoints planted near the pole.
"""

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .exact import ComplexRational, Polynomial, RationalFunction, ZERO, binomial
from .jordan import ComplexPole

KET_ROLE = "ket"
BRA_ROLE = "bra"

# Numerically computed denominator roots this close to the real axis are
# treated as violating strict upper-half-plane analyticity.
_ROOT_IMAG_MARGIN = 1e-9


def _denominator_roots(function: RationalFunction):
    coeffs = [complex(c) for c in reversed(function.denominator.coefficients)]
    return np.roots(coeffs) if len(coeffs) > 1 else np.array([])


def _require_upper_half_plane_roots(function: RationalFunction, what: str):
    for root in _denominator_roots(function):
        if root.imag <= _ROOT_IMAG_MARGIN * max(1.0, abs(root)):
            raise ValueError(
                f"{what} must be analytic in the closed lower half-plane; "
                f"denominator root at {complex(root):.6g} is not strictly above the real axis"
            )


class TestFunction:
    """Rational stand-in for a half-plane-analytic wavefunction overlap.

    The denominator roots must lie strictly in the upper half-plane and the
    function must be bounded at infinity.  Contour closure needs the ket and
    bra to decay like 1/|z|^2 *together*; that pairwise condition is checked
    by the contour operations, so constants remain admissible in the residue
    expansion.  The role tag records which side of the amplitude the function
    stands for; it carries dimension exponent -1/2.
    """

    __slots__ = ("function", "role")
    __test__ = False  # domain type, not a pytest case

    def __init__(self, function: RationalFunction, role: str):
        if role not in (KET_ROLE, BRA_ROLE):
            raise ValueError(f"role must be {KET_ROLE!r} or {BRA_ROLE!r}, got {role!r}")
        _require_upper_half_plane_roots(function, "test function")
        if function.numerator.degree > function.denominator.degree:
            raise ValueError(
                "test function must be bounded at infinity: "
                f"numerator degree {function.numerator.degree}, "
                f"denominator degree {function.denominator.degree}"
            )
        object.__setattr__(self, "function", function)
        object.__setattr__(self, "role", role)

    def __setattr__(self, name, value):
        raise AttributeError("TestFunction is immutable")

    @property
    def decay_degree(self) -> int:
        """Power of 1/|z| the function decays with at infinity."""
        return self.function.denominator.degree - self.function.numerator.degree

    @property
    def dimension_exponent(self) -> Fraction:
        return Fraction(-1, 2)

    def __call__(self, z):
        return self.function(z)

    def derivative_at(self, order: int, z) -> ComplexRational:
        return self.function.derivative(order)(z)

    def __repr__(self):
        return f"TestFunction({self.function!r}, role={self.role!r})"


class SMatrixModel:
    """Principal part of exact order at one pole, plus analytic background.

    `laurent[n]` is the coefficient of 1/(z - pole)^{n+1}; the list length
    equals the pole order and the top coefficient must be nonzero whenever
    any coefficient is (a vanishing top coefficient would misdeclare the
    order).  The all-zero principal part is admitted as the degenerate
    pole-free model, which the trivial oracle checks need.  Coefficient n
    carries dimension exponent n + 1 in energy units.  A background, when
    present, must itself be analytic in the closed lower half-plane and
    bounded at infinity so the contour decomposition sees only the declared
    pole.
    """

    __slots__ = ("pole", "laurent", "background")

    def __init__(self, pole: ComplexPole, laurent, background: RationalFunction | None = None):
        coeffs = tuple(ComplexRational.from_value(c) for c in laurent)
        if len(coeffs) != pole.order:
            raise ValueError(
                f"need {pole.order} principal-part coefficients for a pole of order "
                f"{pole.order}, got {len(coeffs)}"
            )
        if not coeffs[-1] and any(coeffs):
            raise ValueError(
                f"top principal-part coefficient is zero: the pole would have order "
                f"lower than the declared {pole.order}"
            )
        if background is not None and not background.is_zero:
            _require_upper_half_plane_roots(background, "background")
            if background.numerator.degree > background.denominator.degree:
                raise ValueError("background must be bounded at infinity")
        else:
            background = None
        object.__setattr__(self, "pole", pole)
        object.__setattr__(self, "laurent", coeffs)
        object.__setattr__(self, "background", background)

    def __setattr__(self, name, value):
        raise AttributeError("SMatrixModel is immutable")

    @property
    def laurent_dimension_exponents(self):
        """Energy-dimension exponent n+1 of the coefficient of 1/(z-pole)^{n+1}."""
        return tuple(Fraction(n + 1) for n in range(self.pole.order))

    def __call__(self, z):
        """Evaluate the amplitude; exact for exact z, complex otherwise."""
        position = self.pole.position
        if isinstance(z, (ComplexRational, int, Fraction)):
            z = ComplexRational.from_value(z)
            if z == position:
                raise ZeroDivisionError("evaluation at the pole position")
            shift = z - position
            total = ZERO
            power = shift
            for coeff in self.laurent:
                total = total + coeff / power
                power = power * shift
            if self.background is not None:
                total = total + self.background(z)
            return total
        z = complex(z)
        if z == complex(position):
            raise ZeroDivisionError("evaluation at the pole position")
        shift = z - complex(position)
        total = 0j
        power = shift
        for coeff in self.laurent:
            total += complex(coeff) / power
            power *= shift
        if self.background is not None:
            total += complex(self.background(z))
        return total

    def __repr__(self):
        return (
            f"SMatrixModel(pole={self.pole!r}, laurent={list(self.laurent)!r}, "
            f"background={self.background!r})"
        )


def unitary_first_order_model(pole: ComplexPole) -> SMatrixModel:
    """First-order model with the unitarity-determined coefficient -i*width.

    Only the order-1 coefficient is pinned by unitarity; higher orders take
    the coefficients as free inputs.
    """
    if pole.order != 1:
        raise ValueError("the unitarity default applies to first-order poles only")
    return SMatrixModel(pole, [ComplexRational(0, -pole.width)])


# -- residue expansion -------------------------------------------------------


def residue_core(model: SMatrixModel, ket_fn: TestFunction, bra_fn: TestFunction) -> ComplexRational:
    """Exact rational part of the pole's residue contribution.

    sum over n of laurent[n]/n! times the Leibniz split of the n-th
    derivative of ket*bra at the pole; multiply by -2*pi*i to get the residue
    term itself.  Exact in the Gaussian rationals.
    """
    if ket_fn.role != KET_ROLE:
        raise ValueError(f"first test function must have role {KET_ROLE!r}")
    if bra_fn.role != BRA_ROLE:
        raise ValueError(f"second test function must have role {BRA_ROLE!r}")
    z = model.pole.position
    r = model.pole.order
    ket_derivs = [ket_fn.derivative_at(d, z) for d in range(r)]
    bra_derivs = [bra_fn.derivative_at(d, z) for d in range(r)]
    total = ZERO
    for n in range(r):
        weight = model.laurent[n] / math.factorial(n)
        inner = ZERO
        for k in range(n + 1):
            inner = inner + binomial(n, k) * ket_derivs[n - k] * bra_derivs[k]
        total = total + weight * inner
    return total


def residue_expansion(model: SMatrixModel, ket_fn: TestFunction, bra_fn: TestFunction) -> complex:
    """The pole's contribution to the amplitude integral: -2*pi*i * residue_core."""
    return complex(0.0, -2.0 * math.pi) * complex(residue_core(model, ket_fn, bra_fn))


def residue_dimension_exponent(model: SMatrixModel) -> Fraction:
    """Common energy-dimension exponent of every term of the residue sum.

    Term n combines laurent exponent n+1 with the two test functions at
    -1/2 each, lowered once per derivative: (n+1) - (1/2 + (n-k)) - (1/2 + k).
    Raises if the terms disagree.
    """
    exponents = set()
    for n, laurent_dim in enumerate(model.laurent_dimension_exponents):
        for k in range(n + 1):
            exponents.add(laurent_dim - (Fraction(1, 2) + (n - k)) - (Fraction(1, 2) + k))
    if len(exponents) != 1:
        raise ArithmeticError(f"residue terms are dimensionally inhomogeneous: {sorted(exponents)}")
    return exponents.pop()


# -- numerical contour pieces ------------------------------------------------


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive-quadrature settings for the contour pieces.

    `max_energy` truncates the outgoing integral at a finite endpoint (the
    physical-spectrum mode); None integrates to infinity, the mode in which
    the contour decomposition is exact.  Breakpoints are planted where the
    path passes within `pole_window` half-widths of the pole's real part.
    """

    absolute_tolerance: float = 1e-10
    relative_tolerance: float = 1e-10
    max_energy: float | None = None
    subdivision_limit: int = 200
    pole_window: float = 10.0


@dataclass(frozen=True)
class IntegralResult:
    """Value, quadrature error estimate, and convergence flag."""

    value: complex
    error_estimate: float
    converged: bool


def _pole_breakpoints(model: SMatrixModel, config: QuadratureConfig, lo: float, hi: float):
    center = float(model.pole.resonance_energy)
    half_window = config.pole_window * float(model.pole.width)
    points = sorted(
        {p for p in (center - half_window, center, center + half_window) if lo < p < hi}
    )
    return points or None


def _quad_complex(integrand, lo: float, hi: float, config: QuadratureConfig, points=None) -> IntegralResult:
    kwargs = {
        "epsabs": config.absolute_tolerance,
        "epsrel": config.relative_tolerance,
        "limit": config.subdivision_limit,
    }
    if points:
        kwargs["points"] = points
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        re_val, re_err = quad(lambda e: integrand(e).real, lo, hi, **kwargs)
        im_val, im_err = quad(lambda e: integrand(e).imag, lo, hi, **kwargs)
    converged = not any(issubclass(w.category, IntegrationWarning) for w in caught)
    return IntegralResult(complex(re_val, im_val), re_err + im_err, converged)


def _combine(parts):
    return IntegralResult(
        sum(p.value for p in parts),
        sum(p.error_estimate for p in parts),
        all(p.converged for p in parts),
    )


def _amplitude_integrand(model: SMatrixModel, ket_fn: TestFunction, bra_fn: TestFunction):
    if ket_fn.decay_degree + bra_fn.decay_degree < 2:
        raise ValueError(
            "contour pieces need the test-function pair to decay at least as 1/|z|^2 "
            f"combined, got degrees {ket_fn.decay_degree} + {bra_fn.decay_degree}"
        )

    def integrand(energy: float) -> complex:
        return complex(ket_fn(energy)) * model(complex(energy)) * complex(bra_fn(energy))

    return integrand


def direct_contour_integral(model: SMatrixModel, ket_fn: TestFunction, bra_fn: TestFunction,
                            config: QuadratureConfig | None = None) -> IntegralResult:
    """Amplitude integral along the physical spectrum [0, max_energy or inf)."""
    config = config or QuadratureConfig()
    integrand = _amplitude_integrand(model, ket_fn, bra_fn)
    if config.max_energy is not None:
        points = _pole_breakpoints(model, config, 0.0, config.max_energy)
        return _quad_complex(integrand, 0.0, config.max_energy, config, points)
    split = max(1.0, float(model.pole.resonance_energy) + config.pole_window * float(model.pole.width))
    finite = _quad_complex(
        integrand, 0.0, split, config, _pole_breakpoints(model, config, 0.0, split)
    )
    tail = _quad_complex(integrand, split, math.inf, config)
    return _combine([finite, tail])


def background_integral(model: SMatrixModel, ket_fn: TestFunction, bra_fn: TestFunction,
                        config: QuadratureConfig | None = None) -> IntegralResult:
    """Pole-independent contour piece along (-inf, 0].

    Traversed outward from the origin (the orientation the deformed contour
    inherits), so the returned value is minus the conventionally oriented
    integral over (-inf, 0].
    """
    config = config or QuadratureConfig()
    integrand = _amplitude_integrand(model, ket_fn, bra_fn)
    split = min(-1.0, float(model.pole.resonance_energy) - config.pole_window * float(model.pole.width))
    finite = _quad_complex(
        integrand, split, 0.0, config, _pole_breakpoints(model, config, split, 0.0)
    )
    tail = _quad_complex(integrand, -math.inf, split, config)
    combined = _combine([finite, tail])
    return IntegralResult(-combined.value, combined.error_estimate, combined.converged)


@dataclass(frozen=True)
class DecompositionReport:
    """Contour-decomposition check: direct vs background + residue."""

    direct: complex
    background: complex
    residue: complex
    discrepancy: float
    tolerance: float
    passed: bool
    quadrature_error: float
    converged: bool

    def to_json_dict(self):
        return {
            "direct": [self.direct.real, self.direct.imag],
            "background": [self.background.real, self.background.imag],
            "residue": [self.residue.real, self.residue.imag],
            "discrepancy": self.discrepancy,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "quadrature_error": self.quadrature_error,
            "converged": self.converged,
        }


def decomposition_check(model: SMatrixModel, ket_fn: TestFunction, bra_fn: TestFunction,
                        config: QuadratureConfig | None = None,
                        tolerance: float = 1e-8) -> DecompositionReport:
    """Check direct = background + residue on the closed lower contour.

    The discrepancy is relative to |direct| when that is nonzero, absolute
    otherwise.  A violation (or unconverged quadrature) is reported through
    `passed`, never raised.
    """
    config = config or QuadratureConfig()
    direct = direct_contour_integral(model, ket_fn, bra_fn, config)
    background = background_integral(model, ket_fn, bra_fn, config)
    residue = residue_expansion(model, ket_fn, bra_fn)
    mismatch = abs(direct.value - (background.value + residue))
    scale = abs(direct.value)
    discrepancy = mismatch / scale if scale > 0 else mismatch
    converged = direct.converged and background.converged
    return DecompositionReport(
        direct=direct.value,
        background=background.value,
        residue=residue,
        discrepancy=discrepancy,
        tolerance=tolerance,
        passed=bool(discrepancy <= tolerance and converged),
        quadrature_error=direct.error_estimate + background.error_estimate,
        converged=converged,
    )


# -- JSON ingestion -----------------------------------------------------------


def _coefficient_from_json(value, where: str) -> ComplexRational:
    if isinstance(value, (int, float)):
        return ComplexRational(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return ComplexRational(value[0], value[1])
    raise ValueError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _polynomial_from_json(values, where: str) -> Polynomial:
    if not isinstance(values, (list, tuple)):
        raise ValueError(f"{where}: expected a coefficient list, got {values!r}")
    return Polynomial([_coefficient_from_json(v, f"{where}[{i}]") for i, v in enumerate(values)])


def parse_test_function(data, where: str = "test_function") -> TestFunction:
    """Build a test function from {"role", "num", "den"} (ascending coefficients)."""
    if not isinstance(data, dict):
        raise ValueError(f"{where}: expected an object, got {data!r}")
    for field in ("role", "num", "den"):
        if field not in data:
            raise ValueError(f"{where}.{field}: missing required field")
    function = RationalFunction(
        _polynomial_from_json(data["num"], f"{where}.num"),
        _polynomial_from_json(data["den"], f"{where}.den"),
    )
    return TestFunction(function, data["role"])


def model_from_json(data):
    """Build (model, ket_fn, bra_fn) from the model-document schema.

    Expected fields: E_R, Gamma, r, laurent (list of [re, im] or numbers,
    length r), optional background {"num": [...], "den": [...]}, and
    test_functions holding exactly one "ket" and one "bra" entry.
    """
    if not isinstance(data, dict):
        raise ValueError(f"model document must be a JSON object, got {type(data).__name__}")
    for field in ("E_R", "Gamma", "r", "laurent", "test_functions"):
        if field not in data:
            raise ValueError(f"model.{field}: missing required field")
    if not isinstance(data["r"], int):
        raise ValueError(f"model.r: expected an integer, got {data['r']!r}")
    pole = ComplexPole(data["E_R"], data["Gamma"], data["r"])
    if not isinstance(data["laurent"], list):
        raise ValueError("model.laurent: expected a list")
    laurent = [
        _coefficient_from_json(v, f"model.laurent[{i}]") for i, v in enumerate(data["laurent"])
    ]
    background = None
    if data.get("background") is not None:
        bg = data["background"]
        if not isinstance(bg, dict) or "num" not in bg or "den" not in bg:
            raise ValueError('model.background: expected {"num": [...], "den": [...]}')
        background = RationalFunction(
            _polynomial_from_json(bg["num"], "model.background.num"),
            _polynomial_from_json(bg["den"], "model.background.den"),
        )
    functions = data["test_functions"]
    if not isinstance(functions, list) or len(functions) != 2:
        raise ValueError("model.test_functions: expected a list of exactly two entries")
    parsed = [
        parse_test_function(entry, f"model.test_functions[{i}]")
        for i, entry in enumerate(functions)
    ]
    by_role = {fn.role: fn for fn in parsed}
    if set(by_role) != {KET_ROLE, BRA_ROLE}:
        raise ValueError('model.test_functions: need one "ket" and one "bra" entry')
    model = SMatrixModel(pole, laurent, background)
    return model, by_role[KET_ROLE], by_role[BRA_ROLE]


def load_model_file(path):
    """Read and validate a model document from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    return model_from_json(data)
