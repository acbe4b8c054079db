import unittest
import os
from fractions import Fraction
from sympy import primerange
from common_wrangler.common import InvalidDataError
from galois_fiber.gf_common import ExcludedParameterError
from galois_fiber.exact import fraction_coeffs, poly_eval
from galois_fiber.gl2cat import general_linear, is_normal, is_subgroup, project, quotient, quotient_isomorphisms, \
    Quotient, trivial_group, mat_mul
from galois_fiber.models import ec_discriminant, jmap_for, jmap_preimages, parse_jmap
from galois_fiber.entangle import (goursat_filter, brau_jones_normal_subgroup, theta_map, h_prime, h_double_prime,
                                   level3_index6_subgroups, index_tower_23, GaussParams, gauss_k, gauss_cubic,
                                   gauss_cubic_corrected, gaussian_periods, gauss_cubic_report, gauss_curve,
                                   rubin_silverberg_family, rubin_silverberg_Et, brau_jones_j, xhpp_polynomial,
                                   xhpp_solve, NO_ENTANGLEMENT, POSSIBLE_ENTANGLEMENT, SIGN_DISCREPANCY,
                                   BOREL_3_JMAP)
from galois_fiber.entangle import _discriminant
import logging

# logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)
DISABLE_REMOVE = logger.isEnabledFor(logging.DEBUG)

__author__ = 'hmayes'

TEST_DIR = os.path.dirname(__file__)
MAIN_DIR = os.path.dirname(TEST_DIR)
DATA_DIR = os.path.join(os.path.dirname(__file__), 'test_data')

IDENTITY_2 = (1, 0, 0, 1)


class TestGoursatFilter(unittest.TestCase):
    def testTwoFive(self):
        report = goursat_filter("2:G_3", "5:G_9")
        self.assertEqual(report.verdict, NO_ENTANGLEMENT)
        self.assertEqual(report.degrees, [])

    def testTwoSeven(self):
        report = goursat_filter("2:G_3", "7:G_7")
        self.assertEqual(report.verdict, POSSIBLE_ENTANGLEMENT)
        self.assertEqual(report.degrees, [3])
        self.assertEqual(report.to_dict()['pair'], ["2:G_3", "7:G_7"])

    def testTrivialImage(self):
        self.assertEqual(goursat_filter("2:G_1", "5:G_9").verdict, NO_ENTANGLEMENT)

    def testSameLevel(self):
        with self.assertRaises(InvalidDataError):
            goursat_filter("3:G_3", "3:G_1")


class TestBrauJonesGroups(unittest.TestCase):
    def testNormalSubgroup(self):
        normal = brau_jones_normal_subgroup()
        gl3 = general_linear(3)
        self.assertEqual(normal.order, 8)
        self.assertEqual(gl3.order // normal.order, 6)
        self.assertTrue(is_normal(normal, gl3))
        s3 = Quotient(general_linear(2), trivial_group(2))
        self.assertTrue(quotient_isomorphisms(quotient(gl3, normal), s3, first_only=True))

    def testTheta(self):
        theta = theta_map()
        normal = brau_jones_normal_subgroup()
        self.assertEqual({g for g, img in theta.items() if img == IDENTITY_2}, normal.element_set)
        self.assertEqual(set(theta.values()), general_linear(2).element_set)
        for g in theta:
            for h in theta:
                self.assertEqual(theta[mat_mul(g, h, 3)], mat_mul(theta[g], theta[h], 2))

    def testGraphs(self):
        big = h_prime()
        small = h_double_prime()
        self.assertEqual(big.modulus, 6)
        self.assertEqual(big.order, 48)
        self.assertEqual(small.order, 12)
        self.assertTrue(is_subgroup(small, big))
        self.assertEqual(project(big, 2), general_linear(2))
        self.assertEqual(project(small, 2), general_linear(2))

    def testIndexSix(self):
        self.assertEqual(level3_index6_subgroups(), ['G_3', 'H_{3,1}', 'H_{3,2}'])

    def testIndexTower(self):
        indices = {(row['left'], row['right']): row['index'] for row in index_tower_23()}
        self.assertEqual(indices[("2:GL", "3:G_3")], 4)
        self.assertEqual(indices[("2:G_3", "3:G_3")], 8)
        self.assertEqual(indices[("2:G_1", "3:G_1")], 72)


class TestGaussPeriods(unittest.TestCase):
    def testParams(self):
        self.assertEqual(gauss_k(7), GaussParams(7, 1, 1))
        self.assertEqual(gauss_k(13), GaussParams(13, -1, 1))
        for p in (5, 9, 11):
            with self.assertRaises(InvalidDataError):
                gauss_k(p)

    def testUniqueBelowThousand(self):
        for p in primerange(7, 1000):
            if p % 3 != 1:
                continue
            gp = gauss_k(p)
            self.assertEqual(4 * p, (3 * gp.k - 2) ** 2 + 27 * gp.big_n ** 2)

    def testPrintedCubics(self):
        self.assertEqual(fraction_coeffs(gauss_cubic(gauss_k(7))), [1, 1, 2, -1])
        self.assertEqual(fraction_coeffs(gauss_cubic(gauss_k(13))), [1, 1, 4, 1])
        self.assertEqual(_discriminant(gauss_cubic(gauss_k(7))), -87)

    def testCorrectedCubics(self):
        self.assertEqual(fraction_coeffs(gauss_cubic_corrected(gauss_k(7))), [1, 1, -2, -1])
        self.assertEqual(fraction_coeffs(gauss_cubic_corrected(gauss_k(13))), [1, 1, -4, 1])
        self.assertEqual(_discriminant(gauss_cubic_corrected(gauss_k(7))), 49)
        self.assertEqual(_discriminant(gauss_cubic_corrected(gauss_k(13))), 169)

    def testPeriods(self):
        periods = gaussian_periods(7)
        self.assertEqual(len(periods), 3)
        self.assertTrue(abs(sum(periods) + 1) < 1e-12)

    def testReport(self):
        for p in (7, 13, 31):
            report = gauss_cubic_report(gauss_k(p))
            self.assertEqual(report['status'], SIGN_DISCREPANCY)
            self.assertTrue(report['corrected']['roots_are_periods'])
            self.assertTrue(report['corrected']['square_discriminant'])
            self.assertFalse(report['printed']['roots_are_periods'])

    def testCurve(self):
        curve = gauss_curve(gauss_k(7))
        self.assertEqual(curve.ainvs, (0, 0, 0, Fraction(-7, 3), Fraction(-7, 27)))
        self.assertEqual(ec_discriminant(curve), 784)
        self.assertEqual(gauss_curve(gauss_k(13)).ainvs[3:], (Fraction(-13, 3), Fraction(65, 27)))
        for p in (7, 13, 31):
            gp = gauss_k(p)
            self.assertEqual(ec_discriminant(gauss_curve(gp)), 16 * gp.big_n ** 2 * p ** 2)


class TestRubinSilverberg(unittest.TestCase):
    def testCollapseAtZero(self):
        for p in (7, 13, 19):
            self.assertEqual(rubin_silverberg_Et(gauss_k(p), 0).ainvs, (0, 0, 0, 1, 1))

    def testPinnedInstance(self):
        self.assertEqual(rubin_silverberg_Et(gauss_k(7), 1).ainvs, (0, 0, 0, 1792, -7160))

    def testFamily(self):
        a_poly, b_poly = rubin_silverberg_family(gauss_k(7))
        self.assertEqual(a_poly.degree(), 2)
        self.assertEqual(b_poly.degree(), 3)
        self.assertEqual(poly_eval(a_poly, 0), 1)
        for t in (Fraction(1, 2), 2, -3, Fraction(5, 7)):
            self.assertTrue(ec_discriminant(rubin_silverberg_Et(gauss_k(7), t)) != 0)


class TestTwoThreeMaps(unittest.TestCase):
    def testBrauJones(self):
        self.assertEqual(brau_jones_j(1), -82944)
        for t in (0, Fraction(1, 2), "1/2"):
            with self.assertRaises(ExcludedParameterError):
                brau_jones_j(t)

    def testSurjectiveModTwo(self):
        level2 = jmap_for("2:G_2")
        for t in (1, 2, -1, Fraction(1, 3)):
            self.assertFalse(jmap_preimages(level2, brau_jones_j(t)))

    def testSolveEmpty(self):
        for t in (1, 2, 3):
            self.assertEqual(xhpp_solve(t), [])

    def testSolveAtZeroJ(self):
        self.assertEqual(xhpp_solve(-1), [0])
        self.assertEqual(xhpp_solve(-9), [0])

    def testPole(self):
        with self.assertRaises(ExcludedParameterError):
            xhpp_solve(0)

    def testResiduals(self):
        j_map = parse_jmap(BOREL_3_JMAP)
        for t in range(-12, 13):
            if t == 0:
                continue
            for s in xhpp_solve(t):
                self.assertEqual(2 ** 10 * 3 ** 3 * s ** 3 * (1 - 4 * s ** 3), j_map(Fraction(t)))

    def testCubicInCube(self):
        poly = xhpp_polynomial(5)
        self.assertEqual(poly.degree(), 6)
        for (exponent,), _ in poly.terms():
            self.assertEqual(exponent % 3, 0)
