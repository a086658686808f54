"""Tests for the rational amplitude model, residue expansion, and contour pieces."""

import math
from fractions import Fraction

import pytest
from scipy.integrate import quad

from gamow.exact import ComplexRational, RationalFunction, ZERO
from gamow.jordan import ComplexPole
from gamow.smatrix import (
    QuadratureConfig,
    SMatrixModel,
    TestFunction,
    background_integral,
    decomposition_check,
    direct_contour_integral,
    load_model_file,
    model_from_json,
    residue_core,
    residue_dimension_exponent,
    residue_expansion,
    parse_test_function,
    unitary_first_order_model,
)


def cr(re, im=0):
    return ComplexRational(re, im)


def rational(num, den):
    return RationalFunction.from_coefficient_lists(num, den)


def ket(num, den):
    return TestFunction(rational(num, den), "ket")


def bra(num, den):
    return TestFunction(rational(num, den), "bra")


# f(z) = 1/(z-2i)^2 and g(z) = 1/(z-3i), the pair used throughout
F_KET = ket([1], [cr(-4), cr(0, -4), 1])
G_BRA = bra([1], [cr(0, -3), 1])


class TestModelValidation:
    def test_laurent_length_must_match_order(self):
        with pytest.raises(ValueError):
            SMatrixModel(ComplexPole(1, 1, 2), [cr(1)])

    def test_misdeclared_order_rejected(self):
        with pytest.raises(ValueError):
            SMatrixModel(ComplexPole(1, 1, 2), [cr(1), ZERO])

    def test_all_zero_principal_part_is_the_degenerate_model(self):
        model = SMatrixModel(ComplexPole(1, 1, 2), [ZERO, ZERO])
        assert model(cr(5)) == ZERO

    def test_interior_zero_coefficient_allowed(self):
        model = SMatrixModel(ComplexPole(1, 1, 3), [cr(1), ZERO, cr(2)])
        assert model.laurent[1] == ZERO

    def test_background_with_lower_pole_rejected(self):
        with pytest.raises(ValueError):
            SMatrixModel(
                ComplexPole(1, 1, 1), [cr(1)], background=rational([1], [cr(0, 1), 1])
            )  # pole at -i... wait: z + i has root -i (lower half-plane)

    def test_unbounded_background_rejected(self):
        with pytest.raises(ValueError):
            SMatrixModel(
                ComplexPole(1, 1, 1), [cr(1)], background=rational([0, 0, 1], [cr(0, -5), 1])
            )

    def test_dimension_exponents(self):
        model = SMatrixModel(ComplexPole(1, 1, 3), [cr(1), cr(1), cr(1)])
        assert model.laurent_dimension_exponents == (
            Fraction(1),
            Fraction(2),
            Fraction(3),
        )


class TestTestFunctionValidation:
    def test_lower_half_plane_pole_rejected(self):
        with pytest.raises(ValueError):
            ket([1], [cr(0, 1), 1])  # root at -i

    def test_real_axis_pole_rejected(self):
        with pytest.raises(ValueError):
            ket([1], [cr(-2), 1])  # root at 2

    def test_unbounded_function_rejected(self):
        with pytest.raises(ValueError):
            ket([0, 0, 1], [cr(0, -1), 1])

    def test_constant_is_admissible(self):
        fn = ket([1], [1])
        assert fn.decay_degree == 0

    def test_bad_role_rejected(self):
        with pytest.raises(ValueError):
            TestFunction(rational([1], [cr(0, -1), 1]), "side")

    def test_dimension_exponent(self):
        assert F_KET.dimension_exponent == Fraction(-1, 2)


class TestEvaluate:
    def test_unitarity_default_at_resonance_energy(self):
        # a/(E - z) with a = -i*width and E - z = i*width/2 gives exactly -2
        for energy, width in [(1, 1), (3, Fraction(1, 2)), (0, 2)]:
            model = unitary_first_order_model(ComplexPole(energy, width, 1))
            assert model(cr(energy)) == cr(-2)

    def test_background_only(self):
        background = rational([1, 1], [cr(0, -5), 1])
        model = SMatrixModel(ComplexPole(1, 1, 1), [ZERO], background=background)
        for z in (cr(0), cr(2, -1), cr(Fraction(1, 3))):
            assert model(z) == background(z)

    def test_unit_displacement_sums_coefficients(self):
        pole = ComplexPole(1, 2, 2)
        a1, a2 = cr(2, 1), cr(0, -3)
        model = SMatrixModel(pole, [a1, a2])
        assert model(pole.position + cr(1)) == a1 + a2

    def test_exact_and_float_paths_agree(self):
        model = SMatrixModel(
            ComplexPole(1, 2, 2), [cr(1, 1), cr(0, -1)],
            background=rational([1], [cr(0, -4), 1]),
        )
        z = cr(Fraction(5, 2), Fraction(-1, 3))
        assert complex(model(z)) == pytest.approx(model(complex(z)))

    def test_pole_evaluation_rejected(self):
        model = unitary_first_order_model(ComplexPole(1, 1, 1))
        with pytest.raises(ZeroDivisionError):
            model(model.pole.position)
        with pytest.raises(ZeroDivisionError):
            model(complex(model.pole.position))

    def test_unitarity_helper_requires_first_order(self):
        with pytest.raises(ValueError):
            unitary_first_order_model(ComplexPole(1, 1, 2))


class TestResidueExpansion:
    def test_first_order_formula(self):
        pole = ComplexPole(2, 1, 1)
        a = cr(0, -1)
        model = SMatrixModel(pole, [a])
        z = pole.position
        expected = a * F_KET.function(z) * G_BRA.function(z)
        assert residue_core(model, F_KET, G_BRA) == expected
        assert residue_expansion(model, F_KET, G_BRA) == pytest.approx(
            complex(0, -2 * math.pi) * complex(expected)
        )

    def test_constant_functions_leave_only_first_coefficient(self):
        pole = ComplexPole(1, 2, 3)
        model = SMatrixModel(pole, [cr(5, -1), cr(2), cr(0, 7)])
        one_ket, one_bra = ket([1], [1]), bra([1], [1])
        assert residue_core(model, one_ket, one_bra) == cr(5, -1)

    def test_second_order_hand_formula(self):
        # f(z) = 1/(z - i), g = 1: residue is a1/(z-i) - a2/(z-i)^2 at the pole
        pole = ComplexPole(Fraction(3, 2), Fraction(1, 2), 2)
        a1, a2 = cr(1, 1), cr(0, 2)
        model = SMatrixModel(pole, [a1, a2])
        f = ket([1], [cr(0, -1), 1])
        g = bra([1], [1])
        shift = pole.position - cr(0, 1)
        expected = a1 / shift - a2 / (shift * shift)
        assert residue_core(model, f, g) == expected

    def test_interior_zero_kills_its_term_exactly(self):
        pole = ComplexPole(1, 1, 3)
        full = SMatrixModel(pole, [cr(2), cr(3), cr(4)])
        gapped = SMatrixModel(pole, [cr(2), ZERO, cr(4)])
        core_full = residue_core(full, F_KET, G_BRA)
        core_gapped = residue_core(gapped, F_KET, G_BRA)
        # removing the middle coefficient removes exactly its Leibniz term
        product = F_KET.function * G_BRA.function
        middle_term = cr(3) * product.derivative(1)(pole.position)
        assert core_full - core_gapped == middle_term

    def test_leibniz_matches_direct_product_derivatives(self):
        """The Leibniz split equals differentiating the product directly (exact)."""
        cases = [
            (ComplexPole(1, 1, 1), [cr(0, -1)]),
            (ComplexPole(2, Fraction(1, 2), 2), [cr(1), cr(0, 1)]),
            (ComplexPole(Fraction(1, 2), 2, 3), [cr(1, 1), cr(-2), cr(3, -1)]),
            (ComplexPole(0, 1, 4), [cr(1), cr(2), cr(3), cr(4, 4)]),
        ]
        pairs = [
            (F_KET, G_BRA),
            (ket([0, 1], [cr(-1), cr(0, -2), 1]), bra([1], [cr(0, -1), 1])),
        ]
        for pole, laurent in cases:
            model = SMatrixModel(pole, laurent)
            z = pole.position
            for f, g in pairs:
                product = f.function * g.function
                direct = ZERO
                for n in range(pole.order):
                    direct = direct + (
                        laurent[n] / math.factorial(n)
                    ) * product.derivative(n)(z)
                assert residue_core(model, f, g) == direct

    def test_role_mismatch_rejected(self):
        model = unitary_first_order_model(ComplexPole(1, 1, 1))
        with pytest.raises(ValueError):
            residue_core(model, G_BRA, G_BRA)
        with pytest.raises(ValueError):
            residue_core(model, F_KET, F_KET)

    def test_dimension_exponent_is_zero(self):
        model = SMatrixModel(ComplexPole(1, 1, 4), [cr(1), cr(1), cr(1), cr(1)])
        assert residue_dimension_exponent(model) == 0


class TestContourPieces:
    def test_zero_model_integrates_to_zero(self):
        model = SMatrixModel(ComplexPole(1, 1, 1), [ZERO])
        result = direct_contour_integral(model, F_KET, G_BRA)
        assert result.value == 0
        assert result.converged

    def test_background_only_matches_plain_quadrature(self):
        background = rational([1], [cr(0, -5), 1])
        model = SMatrixModel(ComplexPole(1, 1, 1), [ZERO], background=background)
        result = direct_contour_integral(model, F_KET, G_BRA)

        def integrand(e):
            return complex(F_KET(e)) * complex(background(complex(e))) * complex(G_BRA(e))

        expected_re, _ = quad(lambda e: integrand(e).real, 0, math.inf)
        expected_im, _ = quad(lambda e: integrand(e).imag, 0, math.inf)
        assert result.value == pytest.approx(complex(expected_re, expected_im), abs=1e-9)

    def test_truncated_mode_approaches_full_integral(self):
        model = unitary_first_order_model(ComplexPole(1, 1, 1))
        full = direct_contour_integral(model, F_KET, G_BRA)
        truncated = direct_contour_integral(
            model, F_KET, G_BRA, QuadratureConfig(max_energy=2000.0)
        )
        assert truncated.value == pytest.approx(full.value, abs=1e-5)

    def test_insufficient_combined_decay_rejected(self):
        model = unitary_first_order_model(ComplexPole(1, 1, 1))
        slow_ket = ket([1], [cr(0, -3), 1])  # decay 1
        constant_bra = bra([1], [1])  # decay 0
        with pytest.raises(ValueError):
            direct_contour_integral(model, slow_ket, constant_bra)
        # the same pair is fine for the residue expansion
        assert residue_core(model, slow_ket, constant_bra) is not None

    def test_nonconvergence_is_reported_not_hidden(self):
        model = unitary_first_order_model(ComplexPole(50, Fraction(1, 1000), 1))
        starved = QuadratureConfig(subdivision_limit=2, pole_window=0.0)
        result = direct_contour_integral(model, F_KET, G_BRA, starved)
        assert not result.converged

    def test_background_self_consistent_across_refinement_levels(self):
        model = SMatrixModel(ComplexPole(1, 1, 2), [cr(0, -1), cr(Fraction(1, 4))])
        loose = background_integral(
            model, F_KET, G_BRA, QuadratureConfig(absolute_tolerance=1e-6, relative_tolerance=1e-6)
        )
        tight = background_integral(model, F_KET, G_BRA)
        assert loose.converged and tight.converged
        assert abs(loose.value - tight.value) <= max(loose.error_estimate, 1e-12)
        assert tight.error_estimate < loose.error_estimate or tight.error_estimate < 1e-12


class TestDecomposition:
    def test_first_order_spec_pair(self):
        model = unitary_first_order_model(ComplexPole(2, 1, 1))
        report = decomposition_check(model, F_KET, G_BRA)
        assert report.converged
        assert report.discrepancy < 1e-8
        assert report.passed

    def test_third_order_spec_pair(self):
        pole = ComplexPole(2, 1, 3)
        model = SMatrixModel(pole, [cr(0, -1), cr(Fraction(1, 4)), cr(Fraction(1, 10), Fraction(1, 5))])
        report = decomposition_check(model, F_KET, G_BRA)
        assert report.discrepancy < 1e-8
        assert report.passed

    def test_zero_principal_part_means_direct_equals_background(self):
        background = rational([1], [cr(0, -5), 1])
        model = SMatrixModel(ComplexPole(1, 1, 1), [ZERO], background=background)
        report = decomposition_check(model, F_KET, G_BRA)
        assert report.residue == 0
        assert report.passed
        assert report.direct == pytest.approx(report.background, abs=1e-9)

    def test_narrow_resonance_with_breakpoint_refinement(self):
        model = unitary_first_order_model(ComplexPole(1, Fraction(1, 1000), 1))
        report = decomposition_check(model, F_KET, G_BRA)
        assert report.passed

    def test_background_suppressed_for_pole_far_from_negative_axis(self):
        # narrow resonance inside the test-function window: the pole term
        # dominates and the background leg is a fraction of it
        model = unitary_first_order_model(ComplexPole(2, Fraction(1, 20), 1))
        g = bra([1], [cr(-3), cr(0, -4), 1])  # 1/((z-i)(z-3i))
        background = background_integral(model, F_KET, g)
        residue = residue_expansion(model, F_KET, g)
        assert abs(background.value) < abs(residue) / 2
        report = decomposition_check(model, F_KET, g)
        assert report.passed

    def test_failed_tolerance_reports_not_raises(self):
        model = unitary_first_order_model(ComplexPole(2, 1, 1))
        report = decomposition_check(model, F_KET, G_BRA, tolerance=1e-30)
        assert not report.passed  # nothing raised

    def test_report_json_fields(self):
        model = unitary_first_order_model(ComplexPole(2, 1, 1))
        payload = decomposition_check(model, F_KET, G_BRA).to_json_dict()
        for field in ("direct", "background", "residue", "discrepancy", "tolerance", "passed"):
            assert field in payload
        assert payload["passed"] is True
        assert isinstance(payload["direct"], list) and len(payload["direct"]) == 2


class TestJsonIngestion:
    def good_document(self):
        return {
            "E_R": 1.0,
            "Gamma": 0.5,
            "r": 2,
            "laurent": [[0.0, -0.5], [0.1, 0.0]],
            "background": {"num": [[0.05, 0.0]], "den": [[0.0, -5.0], [1.0, 0.0]]},
            "test_functions": [
                {"role": "ket", "num": [1.0], "den": [[-4.0, 0.0], [0.0, -4.0], [1.0, 0.0]]},
                {"role": "bra", "num": [1.0], "den": [[0.0, -3.0], [1.0, 0.0]]},
            ],
        }

    def test_round_trip(self):
        model, ket_fn, bra_fn = model_from_json(self.good_document())
        assert model.pole.order == 2
        assert model.laurent[0] == cr(0, Fraction(-1, 2))
        assert ket_fn.role == "ket"
        assert bra_fn.role == "bra"
        report = decomposition_check(model, ket_fn, bra_fn)
        assert report.passed

    @pytest.mark.parametrize("field", ["E_R", "Gamma", "r", "laurent", "test_functions"])
    def test_missing_field_named_in_error(self, field):
        document = self.good_document()
        del document[field]
        with pytest.raises(ValueError, match=field):
            model_from_json(document)

    def test_wrong_laurent_length(self):
        document = self.good_document()
        document["laurent"] = [[0.0, -0.5]]
        with pytest.raises(ValueError):
            model_from_json(document)

    def test_misdeclared_order_rejected_at_ingestion(self):
        document = self.good_document()
        document["laurent"] = [[0.0, -0.5], [0.0, 0.0]]
        with pytest.raises(ValueError):
            model_from_json(document)

    def test_duplicate_roles_rejected(self):
        document = self.good_document()
        document["test_functions"][1]["role"] = "ket"
        with pytest.raises(ValueError, match="test_functions"):
            model_from_json(document)

    def test_bad_coefficient_shape_named(self):
        document = self.good_document()
        document["laurent"][0] = [1.0, 2.0, 3.0]
        with pytest.raises(ValueError, match=r"laurent\[0\]"):
            model_from_json(document)

    def test_wavefunction_parser(self):
        fn = parse_test_function(
            {"role": "bra", "num": [1.0], "den": [[0.0, -2.0], [1.0, 0.0]]}
        )
        assert fn.role == "bra"
        assert fn(cr(0)) == cr(0, Fraction(1, 2))

    def test_bundled_example_passes(self, tmp_path):
        from importlib.resources import files

        source = files("gamow").joinpath("data/residue_example.json").read_text()
        path = tmp_path / "model.json"
        path.write_text(source)
        model, ket_fn, bra_fn = load_model_file(path)
        report = decomposition_check(model, ket_fn, bra_fn)
        assert report.passed
