import unittest
import os
from fractions import Fraction
import sympy
from hypothesis import given, settings, strategies as st
from common_wrangler.common import InvalidDataError
from galois_fiber.gf_common import INFINITY, POLE, ZeroDimensionalFiberError, PolySyntaxError
from galois_fiber.exact import parse_poly, poly_eval, fraction_coeffs, square_decomposition
from galois_fiber.gl2cat import catalog_lookup
from galois_fiber.models import (parse_jmap, jmap_for, jmap_preimages, read_jmap_file, fiber_product,
                                 hyperelliptic_reduce, hyperelliptic_genus, genus_superelliptic, genus_cyclic_cover,
                                 census, EllipticQ, E11, ec_add, ec_neg, ec_mul, ec_on_curve, ec_discriminant,
                                 ec_j_invariant, level11_J, level11_factors, model_registry, registry_names,
                                 computed_genus, verify_known_points, verify_canonical_points, determinantal_check,
                                 canonical_affine_check, level11_local_factors, _leading_term, _parse_form,
                                 LOCAL_PRECISION, RATFUNC, CONSTANT, ELLIPTIC11, MODEL,
                                 ZERO_DIMENSIONAL, NO_JMAP, PRINTED, LEVEL11_CURVE_TEXT)
import logging

# logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)
DISABLE_REMOVE = logger.isEnabledFor(logging.DEBUG)

__author__ = 'hmayes'

TEST_DIR = os.path.dirname(__file__)
MAIN_DIR = os.path.dirname(TEST_DIR)
DATA_DIR = os.path.join(os.path.dirname(__file__), 'test_data')
SUB_DATA_DIR = os.path.join(DATA_DIR, 'models')

EXTRA_JMAPS = os.path.join(SUB_DATA_DIR, 'extra_jmaps.json')
BAD_JMAPS = os.path.join(SUB_DATA_DIR, 'bad_jmaps.json')

SEVEN_W = "(t^3-4*t^2+3*t+1)*(t^4-10*t^3+27*t^2-10*t-27)"
GEN_11 = (4, 5)
CM_67 = -5280 ** 3


class TestJMaps(unittest.TestCase):
    def testKinds(self):
        self.assertEqual(jmap_for("7:G_1").kind, CONSTANT)
        self.assertEqual(jmap_for("7:G_1").value, Fraction(3 ** 3 * 5 * 7 ** 5, 2 ** 7))
        self.assertEqual(jmap_for("7:G_2").kind, RATFUNC)
        self.assertEqual(jmap_for("11:G_3").kind, ELLIPTIC11)

    def testSquareMap(self):
        self.assertTrue(jmap_for("2:G_3").is_square_map())
        self.assertFalse(jmap_for("3:G_4").is_square_map())

    def testNoJMap(self):
        with self.assertRaises(InvalidDataError):
            jmap_for("11:G_1")
        with self.assertRaises(InvalidDataError):
            parse_jmap(None)

    def testPreimages(self):
        self.assertEqual(jmap_preimages(jmap_for("2:G_3"), 1728), {0})
        self.assertEqual(jmap_preimages(jmap_for("3:G_4"), 1728), {12})
        self.assertEqual(jmap_preimages(jmap_for("3:G_4"), 2), set())
        with self.assertRaises(InvalidDataError):
            jmap_preimages(jmap_for("7:G_1"), 0)

    def testNamedPolyExpanded(self):
        jmap = jmap_for("13:G_6")
        self.assertEqual(jmap.kind, RATFUNC)
        self.assertEqual(jmap.ratfunc.denom, parse_poly("t", var='t'))

    def testJMapFile(self):
        extra = read_jmap_file(EXTRA_JMAPS)
        self.assertTrue(extra["4:X_2b"].is_square_map())
        self.assertEqual(jmap_for("3:G_4", extra_jmaps=extra).ratfunc(1), 2)
        self.assertEqual(jmap_for("3:G_4").ratfunc(1), 1)

    def testBadJMapFile(self):
        with self.assertRaises(InvalidDataError):
            read_jmap_file(BAD_JMAPS)


class TestFiberProduct(unittest.TestCase):
    def testConstantFactor(self):
        with self.assertRaises(ZeroDimensionalFiberError):
            fiber_product(jmap_for("2:G_3"), jmap_for("7:G_1"))

    def testRawSystem(self):
        product = fiber_product(jmap_for("2:G_3"), jmap_for("3:G_4"))
        self.assertEqual(product.equations, ["s^2+1728 = t^3"])
        self.assertEqual(product.reduced.w, parse_poly("t^3-1728", var='t'))
        self.assertEqual(product.genus, 1)

    def testSquareMapOnTheRight(self):
        product = fiber_product(jmap_for("3:G_4"), jmap_for("2:G_3"))
        self.assertEqual(product.genus, 1)

    def testLevelSevenSplitNormalizer(self):
        model = hyperelliptic_reduce(jmap_for("7:G_2"))
        self.assertEqual(model.w, parse_poly(SEVEN_W, var='t'))
        self.assertEqual(model.twist, 1)
        self.assertEqual(model.genus, 3)
        self.assertTrue(model.check_identity())
        registry_w = model_registry("X_G3_G2_14").equation_poly()
        self.assertEqual(fraction_coeffs(registry_w), fraction_coeffs(model.curve))

    def testLevelThreeBorel(self):
        model = hyperelliptic_reduce(jmap_for("3:G_3"))
        self.assertEqual(model.w, parse_poly("t", var='t'))
        self.assertEqual(model.twist, 3)
        self.assertEqual(model.genus, 0)
        self.assertTrue(model.check_identity())

    def testLevelSevenBorel(self):
        model = hyperelliptic_reduce(jmap_for("7:G_7"))
        self.assertEqual(model.w, parse_poly("t", var='t'))
        self.assertEqual(model.genus, 0)

    def testLevelSevenG3UnramifiedOver1728(self):
        # every point over 1728 has index 2, so J - 1728 is a constant times a square over the denominator
        entry = catalog_lookup(7, 'G_3')
        for text, is_square in ((entry.jmap, True), (entry.printed['printed_jmap'], False)):
            ratfunc = parse_jmap(text).ratfunc
            _, _, kernel = square_decomposition(ratfunc.numer - ratfunc.denom * 1728)
            self.assertEqual(kernel.degree() == 0, is_square, text)

    def testLevelElevenRawOnly(self):
        product = fiber_product(jmap_for("2:G_3"), jmap_for("11:G_3"))
        self.assertIsNone(product.reduced)
        self.assertIsNone(product.genus)
        self.assertEqual(product.equations, [LEVEL11_CURVE_TEXT, "s^2+1728 = J(x,y)"])

    def testConstantReduction(self):
        with self.assertRaises(InvalidDataError):
            hyperelliptic_reduce(parse_jmap("5"))

    @settings(max_examples=50, derandomize=True)
    @given(st.fractions(min_value=-50, max_value=50, max_denominator=20))
    def testIdentityAtRationalPoints(self, t_val):
        model = hyperelliptic_reduce(jmap_for("7:G_2"))
        f, g, h, c = (model.trace[key] for key in ('f', 'g', 'h', 'c'))
        lhs = poly_eval(f, t_val) * poly_eval(g, t_val) - 1728 * poly_eval(g, t_val) ** 2
        self.assertEqual(lhs, c * poly_eval(h, t_val) ** 2 * poly_eval(model.w, t_val))
        self.assertIn(model.curve.degree(), (2 * model.genus + 1, 2 * model.genus + 2))


class TestGenus(unittest.TestCase):
    def testSuperelliptic(self):
        self.assertEqual(genus_superelliptic(3, parse_poly("x^4-8*x^2+8")), 3)
        self.assertEqual(genus_superelliptic(2, parse_poly("-x^13+64*x")), 6)
        self.assertEqual(genus_superelliptic(3, parse_poly("x^3+1")), 1)

    def testSuperellipticNeedsSquarefree(self):
        with self.assertRaises(InvalidDataError):
            genus_superelliptic(3, parse_poly("(x^2+1)^2"))
        with self.assertRaises(InvalidDataError):
            genus_superelliptic(1, parse_poly("x^3+1"))

    def testCyclicCoverRepeatedFactor(self):
        self.assertEqual(genus_cyclic_cover(3, parse_poly("2*(x^4+4*x^2+2)^2")), 3)
        self.assertEqual(genus_cyclic_cover(3, parse_poly("x^4-8*x^2+8")), 3)
        self.assertEqual(genus_cyclic_cover(2, parse_poly("2*x^6+2")), 2)

    def testCyclicCoverReducible(self):
        with self.assertRaises(InvalidDataError):
            genus_cyclic_cover(3, parse_poly("(x^2+1)^3"))

    def testHyperelliptic(self):
        self.assertEqual(hyperelliptic_genus(parse_poly("x^5-x")), 2)
        self.assertEqual(hyperelliptic_genus(parse_poly("x^6+1")), 2)
        self.assertEqual(hyperelliptic_genus(parse_poly("x")), 0)
        with self.assertRaises(InvalidDataError):
            hyperelliptic_genus(parse_poly("x^2*(x-1)"))


class TestCensus(unittest.TestCase):
    def testLevelThree(self):
        rows = {row['ref']: row for row in census("2:G_3", 3)}
        self.assertEqual(rows["3:G_3"]['status'], MODEL)
        self.assertEqual(rows["3:G_3"]['genus'], 0)
        self.assertEqual(rows["3:G_4"]['genus'], 1)
        self.assertEqual(rows["3:G_2"]['genus'], 1)
        self.assertEqual(rows["3:H_{1,1}"]['status'], NO_JMAP)
        for row in rows.values():
            if row['genus'] is not None:
                self.assertEqual(row['genus'], row['group_genus'])

    def testLevelSeven(self):
        rows = {row['ref']: row for row in census("2:G_3", 7, threads=2)}
        self.assertEqual(rows["7:G_1"]['status'], ZERO_DIMENSIONAL)
        self.assertIsNone(rows["7:G_1"]['genus'])
        self.assertEqual(rows["7:G_2"]['genus'], 3)
        self.assertEqual(rows["7:G_2"]['group_genus'], 3)
        self.assertEqual(rows["7:G_7"]['genus'], 0)

    def testLevelEleven(self):
        rows = {row['ref']: row for row in census("2:G_3", 11)}
        self.assertEqual(rows["11:G_3"]['status'], ELLIPTIC11)
        self.assertEqual(rows["11:G_3"]['model'], "X_G3_G3_22")
        self.assertEqual(rows["11:G_3"]['genus'], 7)
        self.assertEqual(rows["11:G_3"]['group_genus'], 7)
        self.assertEqual(rows["11:G_1"]['status'], NO_JMAP)

    def testConstantLeft(self):
        with self.assertRaises(InvalidDataError):
            census("7:G_1", 3)


class TestEllipticCurves(unittest.TestCase):
    def testInvariants(self):
        self.assertEqual(ec_discriminant(E11), -1331)
        self.assertEqual(ec_j_invariant(E11), -32768)
        self.assertEqual(ec_j_invariant(model_registry("E_H109").elliptic_curve()), 0)

    def testSingular(self):
        with self.assertRaises(InvalidDataError):
            EllipticQ(0, 0, 0, 0, 0)

    def testIdentityAndInverse(self):
        self.assertEqual(ec_add(E11, GEN_11, INFINITY), GEN_11)
        self.assertEqual(ec_add(E11, INFINITY, GEN_11), GEN_11)
        self.assertEqual(ec_add(E11, GEN_11, ec_neg(E11, GEN_11)), INFINITY)
        self.assertEqual(ec_neg(E11, (2, 0)), (2, -1))

    def testMultiplesOnCurve(self):
        for n in range(2, 7):
            point = ec_mul(E11, n, GEN_11)
            self.assertTrue(ec_on_curve(E11, point))
            self.assertNotEqual(point, INFINITY)
        self.assertEqual(ec_mul(E11, 0, GEN_11), INFINITY)
        self.assertEqual(ec_mul(E11, -2, GEN_11), ec_neg(E11, ec_mul(E11, 2, GEN_11)))

    def testOffCurve(self):
        with self.assertRaises(InvalidDataError):
            ec_add(E11, (1, 1), GEN_11)

    def testTorsion(self):
        curve = model_registry("E_H40").elliptic_curve()
        self.assertEqual(ec_mul(curve, 2, (2, 0)), (4, -4))
        self.assertEqual(ec_mul(curve, 4, (2, 0)), INFINITY)
        self.assertEqual(ec_mul(curve, 2, (0, 0)), INFINITY)

    @settings(max_examples=40, derandomize=True)
    @given(st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3),
           st.integers(min_value=-3, max_value=3))
    def testGroupLaw(self, i, j, k):
        p_pt, q_pt, r_pt = (ec_mul(E11, n, GEN_11) for n in (i, j, k))
        self.assertEqual(ec_add(E11, p_pt, q_pt), ec_add(E11, q_pt, p_pt))
        self.assertEqual(ec_add(E11, ec_add(E11, p_pt, q_pt), r_pt), ec_add(E11, p_pt, ec_add(E11, q_pt, r_pt)))
        self.assertEqual(ec_add(E11, p_pt, q_pt), ec_mul(E11, i + j, GEN_11))


class TestLevelElevenMap(unittest.TestCase):
    def testCMPoint(self):
        self.assertEqual(level11_factors((2, 0)), (4, -1, 3, 4, 8, -1))
        self.assertEqual(level11_J((2, 0)), 1728)

    def testPrintedFactorsMissCMPoint(self):
        self.assertNotEqual(level11_J((2, 0), variant=PRINTED), 1728)

    def testGenerator(self):
        self.assertEqual(level11_factors(GEN_11), (22, 1452, 55, 484, 121, -11))
        self.assertEqual(level11_J(GEN_11), CM_67)
        printed = level11_factors(GEN_11, variant=PRINTED)
        self.assertEqual(printed[1], 748)
        self.assertEqual(printed[3], 244)

    def testRejected(self):
        with self.assertRaises(InvalidDataError):
            level11_J(INFINITY)
        with self.assertRaises(InvalidDataError):
            level11_J((0, 0))
        with self.assertRaises(InvalidDataError):
            level11_J((2, 0), variant='other')

    def testNoPoleAtSmallMultiples(self):
        for n in range(1, 5):
            self.assertNotEqual(level11_J(ec_mul(E11, n, GEN_11)), POLE)

    def testCommonZeroIsCMPoint(self):
        point = ec_mul(E11, 3, GEN_11)
        self.assertEqual(point, (Fraction(5, 4), Fraction(7, 8)))
        factors = level11_factors(point)
        self.assertEqual(factors[4] ** 2 * factors[5] ** 11, 0)
        self.assertEqual(level11_J(point), 0)

    def testLocalExpansionAtRegularPoint(self):
        for point in (GEN_11, (2, 0)):
            local = [_leading_term(factor, LOCAL_PRECISION) for factor in level11_local_factors(point)]
            self.assertEqual([order for order, _ in local], [0] * 6)
            self.assertEqual(tuple(coeff for _, coeff in local), level11_factors(point))

    def testJMapCall(self):
        self.assertEqual(jmap_for("11:G_3")((2, 0)), 1728)


class TestRegistry(unittest.TestCase):
    def testNames(self):
        names = registry_names()
        for name in ["X_H156", "X_H171", "X_H172", "BaranC13", "BanwaitCremonaC13", "X_H40", "X_H109", "X_H124",
                     "X_H106", "X_H150", "X_H153", "X_H165", "X_H166", "X_G3_G3_22", "E1", "E2"]:
            self.assertIn(name, names)

    def testUnknown(self):
        with self.assertRaises(InvalidDataError):
            model_registry("X_H999")

    def testHyperellipticEntry(self):
        model = model_registry("X_H156")
        self.assertEqual(str(model), "y^2 = -x^7-8*x")
        self.assertEqual(model.genus, 3)
        model = model_registry("X_H171")
        self.assertEqual(model.genus, 6)
        self.assertEqual(model.points, ["INFINITY", ["0", "0"]])

    def testStatedGenusMatchesComputed(self):
        for name in registry_names():
            self.assertEqual(computed_genus(name), model_registry(name).genus, name)

    def testKnownPointsOnCurves(self):
        for name in registry_names():
            for entry in verify_known_points(name):
                self.assertTrue(entry['on_curve'], "{} {}".format(name, entry['point']))

    def testBaranPointCount(self):
        model = model_registry("BaranC13")
        self.assertEqual(model.raw['stated_point_count'], 7)
        self.assertEqual(sum(entry['on_curve'] for entry in verify_known_points("BaranC13")), 8)

    def testLevel22Point(self):
        self.assertEqual(verify_known_points("X_G3_G3_22")[0]['residuals'], [0, 0])

    def testCanonicalPoints(self):
        self.assertTrue(all(entry['on_curve'] for entry in verify_canonical_points("X_H106")))
        self.assertFalse(any(entry['on_curve'] for entry in verify_canonical_points("X_H106", printed=True)))
        self.assertTrue(all(entry['on_curve'] for entry in verify_canonical_points("X_H124")))

    def testDeterminantal(self):
        self.assertEqual(determinantal_check("X_H124"), -1)
        with self.assertRaises(InvalidDataError):
            determinantal_check("X_H106")

    def testCanonicalAffine(self):
        self.assertEqual(canonical_affine_check("X_H106"), -1)
        self.assertEqual(canonical_affine_check("X_H109"), 1)

    def testPrintedQuartic(self):
        model = model_registry("X_H124")
        self.assertNotEqual(model.equation_poly(printed=True), model.equation_poly())
        self.assertEqual(genus_cyclic_cover(3, model.equation_poly(printed=True)), 3)

    def testForms(self):
        form = model_registry("X_H150").forms()[0]
        a_sym, b_sym, c_sym, d_sym = sympy.symbols("A B C D")
        self.assertEqual(form.as_expr(), a_sym * c_sym + 3 * b_sym * c_sym - d_sym ** 2)
        with self.assertRaises(PolySyntaxError):
            _parse_form("x+q", ['x'])
        with self.assertRaises(InvalidDataError):
            model_registry("X_H150").equation_poly()


if __name__ == '__main__':
    unittest.main()
