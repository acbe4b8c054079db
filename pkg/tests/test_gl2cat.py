import unittest
import os
from fractions import Fraction
from common_wrangler.common import InvalidDataError
from galois_fiber.gf_common import GroupTooLargeError
from galois_fiber.gl2cat import (closure, general_linear, gl_order, borel, split_cartan, split_normalizer,
                                 nonsplit_cartan, nonsplit_normalizer, nonsplit_epsilon, scalar_subgroup,
                                 contains_minus_identity, plus_minus, is_subgroup, is_normal, normal_closure,
                                 normal_subgroups, quotient, quotient_isomorphisms, common_quotients, graph_subgroup,
                                 direct_product, project, crt_embed, is_applicable, has_rzb_conditions,
                                 composite_index, catalog_lookup, catalog_entries, catalog_levels, lattice_report,
                                 conjugacy_classes, mat_mul, mat_inv, identity, resolve_group, modular_genus,
                                 special_linear)
import logging

# logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)
DISABLE_REMOVE = logger.isEnabledFor(logging.DEBUG)

__author__ = 'hmayes'

TEST_DIR = os.path.dirname(__file__)
MAIN_DIR = os.path.dirname(TEST_DIR)
DATA_DIR = os.path.join(os.path.dirname(__file__), 'test_data')

CATALOG_ORDERS = {2: {'G_1': 1, 'G_2': 2, 'G_3': 3},
                  3: {'G_1': 4, 'G_2': 8, 'G_3': 12, 'G_4': 16, 'H_{1,1}': 2, 'H_{3,1}': 6, 'H_{3,2}': 6},
                  5: {'G_1': 8, 'G_2': 16, 'G_3': 16, 'G_4': 32, 'G_5': 40, 'G_6': 40, 'G_7': 48, 'G_8': 80,
                      'G_9': 96, 'H_{1,1}': 4, 'H_{1,2}': 4, 'H_{5,1}': 20, 'H_{5,2}': 20, 'H_{6,1}': 20,
                      'H_{6,2}': 20},
                  7: {'G_1': 36, 'G_2': 72, 'G_3': 84, 'G_4': 84, 'G_5': 84, 'G_6': 96, 'G_7': 252,
                      'H_{1,1}': 18, 'H_{3,1}': 42, 'H_{3,2}': 42, 'H_{4,1}': 42, 'H_{4,2}': 42, 'H_{5,1}': 42,
                      'H_{5,2}': 42, 'H_{7,1}': 126, 'H_{7,2}': 126},
                  11: {'G_1': 220, 'G_2': 220, 'G_3': 240, 'H_{1,1}': 110, 'H_{1,2}': 110, 'H_{2,1}': 110,
                       'H_{2,2}': 110},
                  13: {'G_1': 624, 'G_2': 624, 'G_3': 624, 'G_4': 936, 'G_5': 936, 'G_6': 1872, 'G_7': 288,
                       'H_{4,1}': 468, 'H_{4,2}': 468, 'H_{5,1}': 468, 'H_{5,2}': 468},
                  }


def _parent_name(h_name):
    # "H_{3,1}" -> "G_3"
    return "G_" + h_name[3:h_name.index(',')]


class TestClosure(unittest.TestCase):
    def testOrderThree(self):
        group = closure([(1, 1, 1, 0)], 2)
        self.assertEqual(group.order, 3)

    def testTrivial(self):
        group = closure([], 5)
        self.assertEqual(group.order, 1)
        self.assertTrue(identity() in group)

    def testLevelSevenOrder18(self):
        group = closure([(2, 0, 0, 4), (0, 2, 1, 0)], 7)
        self.assertEqual(group.order, 18)

    def testNegativeEntriesReduced(self):
        self.assertEqual(closure([(-1, 0, 0, -1)], 5), closure([(4, 0, 0, 4)], 5))

    def testNotInvertible(self):
        with self.assertRaises(InvalidDataError):
            closure([(1, 0, 0, 0)], 5)
        with self.assertRaises(InvalidDataError):
            closure([(2, 0, 0, 1)], 4)

    def testIdempotent(self):
        group = closure([(2, 0, 0, 4), (0, 2, 1, 0)], 7)
        self.assertEqual(closure(group.elements, 7), group)

    def testClosedUnderProductAndInverse(self):
        group = closure([(1, 1, 0, 1), (1, 0, 0, 3)], 7)
        for x in group.elements[:10]:
            self.assertTrue(mat_inv(x, 7) in group)
            for y in group.elements[:10]:
                self.assertTrue(mat_mul(x, y, 7) in group)

    def testBound(self):
        with self.assertRaises(GroupTooLargeError):
            closure([(1, 1, 0, 1), (3, 0, 0, 1), (0, 1, 1, 0)], 7, bound=100)

    def testGeneralLinearOrders(self):
        for p in [2, 3, 5, 7, 11]:
            self.assertEqual(general_linear(p).order, (p * p - 1) * (p * p - p))
        self.assertEqual(gl_order(13), 26208)

    def testGeneralLinearComposite(self):
        self.assertEqual(gl_order(4), 96)
        self.assertEqual(general_linear(4).order, 96)
        self.assertEqual(gl_order(6), 288)


class TestStandardGroups(unittest.TestCase):
    def testOrders(self):
        self.assertEqual(borel(7).order, 252)
        self.assertEqual(split_cartan(5).order, 16)
        self.assertEqual(split_normalizer(5).order, 32)
        self.assertEqual(nonsplit_cartan(3).order, 8)
        self.assertEqual(nonsplit_normalizer(13).order, 336)
        self.assertEqual(scalar_subgroup(7).order, 6)

    def testEpsilon(self):
        self.assertEqual(nonsplit_epsilon(7), -1)
        self.assertEqual(nonsplit_epsilon(13), 2)
        self.assertEqual(nonsplit_epsilon(17), 3)
        with self.assertRaises(InvalidDataError):
            nonsplit_epsilon(2)
        with self.assertRaises(InvalidDataError):
            nonsplit_epsilon(9)

    def testCartanNormal(self):
        self.assertTrue(is_normal(nonsplit_cartan(5), nonsplit_normalizer(5)))
        self.assertTrue(is_normal(split_cartan(7), split_normalizer(7)))
        self.assertFalse(is_normal(borel(5), general_linear(5)))

    def testPlusMinus(self):
        group = closure([(1, 0, 0, 2)], 3)
        self.assertFalse(contains_minus_identity(group))
        self.assertEqual(plus_minus(group), split_cartan(3))


class TestApplicability(unittest.TestCase):
    def testLevelTwoG3(self):
        applicable, witness = is_applicable(catalog_lookup(2, 'G_3').group)
        self.assertTrue(applicable)
        self.assertEqual(witness, (1, 0, 0, 1))

    def testFullGroup(self):
        self.assertEqual(is_applicable(general_linear(5)), (False, None))

    def testNoMinusIdentity(self):
        self.assertEqual(is_applicable(catalog_lookup(3, 'H_{3,1}').group), (False, None))

    def testRzbConditions(self):
        self.assertTrue(has_rzb_conditions(general_linear(4)))
        self.assertFalse(has_rzb_conditions(scalar_subgroup(4)))
        self.assertTrue(has_rzb_conditions(catalog_lookup(2, 'G_3').group))
        with self.assertRaises(InvalidDataError):
            has_rzb_conditions(general_linear(3))


class TestNormalSubgroups(unittest.TestCase):
    def testCyclicPrimeOrder(self):
        subs = normal_subgroups(catalog_lookup(2, 'G_3').group)
        self.assertEqual([sub.order for sub in subs], [1, 3])

    def testS3(self):
        subs = normal_subgroups(general_linear(2))
        self.assertEqual([sub.order for sub in subs], [1, 3, 6])

    def testGL2F3(self):
        subs = normal_subgroups(general_linear(3))
        self.assertEqual([sub.order for sub in subs], [1, 2, 8, 24, 48])

    def testLevelFiveG9NoIndexThree(self):
        group = catalog_lookup(5, 'G_9').group
        indices = [group.order // sub.order for sub in normal_subgroups(group)]
        self.assertFalse(3 in indices)

    def testBound(self):
        with self.assertRaises(GroupTooLargeError):
            normal_subgroups(general_linear(7), bound=100)

    def testNormalClosure(self):
        gl3 = general_linear(3)
        self.assertEqual(normal_closure([(2, 0, 0, 2)], gl3).order, 2)
        self.assertEqual(normal_closure([(1, 1, 0, 1)], gl3).order, 24)

    def testClassesPartition(self):
        gl3 = general_linear(3)
        classes = conjugacy_classes(gl3)
        self.assertEqual(sum(len(conj_class) for conj_class in classes), 48)
        self.assertEqual(len(classes), 8)


class TestQuotients(unittest.TestCase):
    def testCosetTable(self):
        gl3 = general_linear(3)
        sl3 = [sub for sub in normal_subgroups(gl3) if sub.order == 24][0]
        quot = quotient(gl3, sl3)
        self.assertEqual(quot.order, 2)
        self.assertEqual(sorted(quot.element_orders()), [1, 2])

    def testNotNormal(self):
        with self.assertRaises(InvalidDataError):
            quotient(general_linear(5), borel(5))

    def testCyclicAutomorphisms(self):
        c3_a = catalog_lookup(2, 'G_3').group
        c3_b = closure([(2, 0, 0, 4)], 7)
        triples = common_quotients(c3_a, c3_b)
        self.assertEqual(len(triples), 1)
        self.assertEqual(triples[0].order, 3)
        isos = quotient_isomorphisms(triples[0].quotient0, triples[0].quotient1)
        self.assertEqual(len(isos), 2)

    def testLevelTwoFiveEmpty(self):
        self.assertEqual(common_quotients(catalog_lookup(2, 'G_3').group, catalog_lookup(5, 'G_9').group), [])

    def testSurjectionOntoS3(self):
        triples = common_quotients(general_linear(2), general_linear(3))
        self.assertEqual(sorted(triple.order for triple in triples), [2, 6])


class TestGoursat(unittest.TestCase):
    def setUp(self):
        self.gl2 = general_linear(2)
        self.gl3 = general_linear(3)

    def testCrtEmbed(self):
        mat = crt_embed((1, 1, 0, 1), (2, 0, 0, 1), 2, 3)
        self.assertEqual(tuple(x % 2 for x in mat), (1, 1, 0, 1))
        self.assertEqual(tuple(x % 3 for x in mat), (2, 0, 0, 1))

    def testThetaGraph(self):
        triple = [t for t in common_quotients(self.gl2, self.gl3) if t.order == 6][0]
        graph = graph_subgroup(self.gl2, self.gl3, triple.psi0(), triple.psi1(), quotient=triple.quotient0)
        self.assertEqual(graph.modulus, 6)
        self.assertEqual(graph.order, 48)
        self.assertEqual(project(graph, 2), self.gl2)
        self.assertEqual(project(graph, 3), self.gl3)

    def testBorelGraph(self):
        b3 = catalog_lookup(3, 'G_3').group
        triple = [t for t in common_quotients(self.gl2, b3) if t.order == 6][0]
        graph = graph_subgroup(self.gl2, b3, triple.psi0(), triple.psi1())
        self.assertEqual(graph.order, 12)

    def testEveryTripleProjectsOntoBoth(self):
        b3 = catalog_lookup(3, 'G_3').group
        for triple in common_quotients(self.gl2, b3):
            graph = graph_subgroup(self.gl2, b3, triple.psi0(), triple.psi1())
            self.assertEqual(graph.order, self.gl2.order * b3.order // triple.order)
            self.assertEqual(project(graph, 2), self.gl2)
            self.assertEqual(project(graph, 3), b3)

    def testTrivialQuotient(self):
        self.assertEqual(direct_product(self.gl2, self.gl3).order, 288)

    def testNotCoprime(self):
        psi = {g: 0 for g in self.gl3.elements}
        with self.assertRaises(InvalidDataError):
            graph_subgroup(self.gl3, self.gl3, psi, psi)

    def testNotSurjective(self):
        triple = [t for t in common_quotients(self.gl2, self.gl3) if t.order == 6][0]
        psi0 = {g: 0 for g in self.gl2.elements}
        psi1 = {g: 0 for g in self.gl3.elements}
        # the images agree, but miss five of the six cosets
        self.assertEqual(graph_subgroup(self.gl2, self.gl3, psi0, psi1).order, 288)
        with self.assertRaises(InvalidDataError):
            graph_subgroup(self.gl2, self.gl3, psi0, psi1, quotient=triple.quotient0)
        with self.assertRaises(InvalidDataError):
            graph_subgroup(self.gl2, self.gl3, triple.psi0(), psi1, quotient=triple.quotient0)


class TestCatalog(unittest.TestCase):
    def testLevels(self):
        self.assertEqual(catalog_levels(), [2, 3, 5, 7, 11, 13])

    def testLevelTwoG3(self):
        entry = catalog_lookup(2, 'G_3')
        self.assertEqual(entry.group.order, 3)
        self.assertEqual(entry.jmap, "t^2+1728")

    def testLevelThirteenG7(self):
        self.assertEqual(catalog_lookup(13, 'G_7').group.order, 288)

    def testLevelFiveH12Shape(self):
        group = catalog_lookup(5, 'H_{1,2}').group
        for a, b, c, d in group.elements:
            self.assertEqual((b, c), (0, 0))
            self.assertEqual(a, d * d % 5)

    def testNamedPolysExpanded(self):
        entry = catalog_lookup(13, 'G_1')
        self.assertFalse("P_" in entry.jmap)

    def testUnknown(self):
        with self.assertRaises(InvalidDataError):
            catalog_lookup(7, 'G_99')
        with self.assertRaises(InvalidDataError):
            catalog_lookup(17, 'G_1')

    def testOrders(self):
        for level, orders in CATALOG_ORDERS.items():
            found = {entry.name: entry.group.order for entry in catalog_entries(level)}
            self.assertEqual(found, orders)

    def testPlusMinusPairs(self):
        for level in catalog_levels():
            for entry in catalog_entries(level):
                if not entry.name.startswith('H_'):
                    continue
                self.assertFalse(entry.contains_minus_identity)
                self.assertFalse(is_applicable(entry.group)[0])
                parent = catalog_lookup(level, _parent_name(entry.name)).group
                self.assertEqual(plus_minus(entry.group), parent)

    def testEveryGApplicable(self):
        for level in catalog_levels():
            for entry in catalog_entries(level):
                if entry.name.startswith('G_'):
                    self.assertTrue(is_applicable(entry.group)[0])

    def testStandardNames(self):
        self.assertEqual(resolve_group(13, 'N_nsp').order, 336)
        self.assertTrue(is_subgroup(catalog_lookup(7, 'G_5').group, resolve_group(7, 'B')))

    def testToDict(self):
        entry_dict = catalog_lookup(3, 'G_4').to_dict()
        self.assertEqual(entry_dict['order'], 16)
        self.assertEqual(entry_dict['index'], 3)
        self.assertTrue(entry_dict['contains_minus_I'])


class TestCompositeIndex(unittest.TestCase):
    def testIndices(self):
        self.assertEqual(composite_index('G_3', 'G_9', 2, 5), 10)
        self.assertEqual(composite_index('G_3', 'G_7', 2, 7), 16)
        self.assertEqual(composite_index('G_3', 'G_3', 2, 11), 110)
        self.assertEqual(composite_index('G_3', 'N_nsp', 2, 13), 156)
        self.assertEqual(composite_index('G_3', 'G_7', 2, 13), 182)

    def testNotCoprime(self):
        with self.assertRaises(InvalidDataError):
            composite_index('G_1', 'G_2', 3, 3)

    def testUnknownName(self):
        with self.assertRaises(InvalidDataError):
            composite_index('G_3', 'G_10', 2, 5)


class TestLattice(unittest.TestCase):
    def testLevelTwoAgrees(self):
        self.assertTrue(all(edge['agrees'] for edge in lattice_report(2)))

    def testLevelElevenAgrees(self):
        self.assertTrue(all(edge['agrees'] for edge in lattice_report(11)))

    def testLevelThree(self):
        edges = {(edge['upper'], edge['lower']): edge for edge in lattice_report(3)}
        self.assertTrue(edges[('G_4', 'I')]['agrees'])
        self.assertEqual(edges[('G_4', 'I')]['index'], 16)
        self.assertFalse(edges[('H_{3,2}', 'H_{1,1}')]['contained'])

    def testLevelFiveUnlabelled(self):
        edges = {(edge['upper'], edge['lower']): edge for edge in lattice_report(5)}
        edge = edges[('H_{6,2}', 'I')]
        self.assertIsNone(edge['agrees'])
        self.assertEqual(edge['index'], Fraction(20))

    def testLevelSevenMismatches(self):
        mismatched = {(edge['upper'], edge['lower']) for edge in lattice_report(7) if not edge['agrees']}
        self.assertEqual(mismatched, {('H_{7,2}', 'H_{3,2}'), ('H_{7,1}', 'H_{3,1}'),
                                      ('H_{7,2}', 'H_{4,2}'), ('H_{7,1}', 'H_{4,1}')})
        edges = {(edge['upper'], edge['lower']): edge for edge in lattice_report(7)}
        self.assertTrue(edges[('H_{7,1}', 'H_{4,1}')]['contained'])
        self.assertEqual(edges[('H_{7,1}', 'H_{4,1}')]['index'], 3)


class TestModularGenus(unittest.TestCase):
    def testSpecialLinearOrder(self):
        self.assertEqual(special_linear(7).order, 336)
        self.assertEqual(special_linear(6).order, 144)

    def testJLine(self):
        self.assertEqual(modular_genus(general_linear(7))['genus'], 0)

    def testLevelTwoG3(self):
        report = modular_genus(catalog_lookup(2, 'G_3').group)
        self.assertEqual(report, {'genus': 0, 'index': 2, 'elliptic_2': 0, 'elliptic_3': 2, 'cusps': 1})

    def testBorel(self):
        self.assertEqual(modular_genus(borel(11))['genus'], 1)
        self.assertEqual(modular_genus(borel(13))['genus'], 0)
        self.assertEqual(modular_genus(borel(7))['cusps'], 2)

    def testNonsplitElevenIsElliptic(self):
        self.assertEqual(modular_genus(catalog_lookup(11, 'G_3').group)['genus'], 1)

    def testCompositeTwoThree(self):
        g3_2 = catalog_lookup(2, 'G_3').group
        g2_2 = catalog_lookup(2, 'G_2').group
        g4_3 = catalog_lookup(3, 'G_4').group
        self.assertEqual(modular_genus(direct_product(g3_2, g4_3))['genus'], 1)
        self.assertEqual(modular_genus(direct_product(g2_2, g4_3))['genus'], 0)
