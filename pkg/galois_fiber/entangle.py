# coding=utf-8

"""
Entanglement between division fields, from the group side: Goursat filters on pairs of catalog subgroups, the
Brau-Jones subgroup of GL_2(F_3) and the level-6 groups built from it, the cubic Gauss period construction with
the Rubin-Silverberg family over it, and the (2,3) j-maps.
"""
from fractions import Fraction
from math import gcd, isqrt
import mpmath
import sympy
from sympy import isprime, primitive_root
from common_wrangler.common import InvalidDataError, warning
from galois_fiber.gf_common import ExcludedParameterError, parse_ref, DEF_GROUP_SIZE_BOUND
from galois_fiber.exact import poly_from_coeffs, poly_eval, rational_roots, fraction_coeffs, to_fraction, \
    is_rational_square
from galois_fiber.gl2cat import (general_linear, trivial_group, from_elements, is_normal, quotient,
                                 Quotient, quotient_isomorphisms, normal_subgroups, common_quotients, graph_subgroup,
                                 resolve_group, catalog_lookup, catalog_entries, composite_index, GL_NAME)
from galois_fiber.models import EllipticQ, parse_jmap

__author__ = 'hmayes'


# Constants #

NO_ENTANGLEMENT = 'NO_ENTANGLEMENT'
POSSIBLE_ENTANGLEMENT = 'POSSIBLE_ENTANGLEMENT'
PRINTED_OK = 'PRINTED_OK'
SIGN_DISCREPANCY = 'SIGN_DISCREPANCY'
MISMATCH = 'MISMATCH'

PERIOD_DPS = 50
PERIOD_TOL = mpmath.mpf(10) ** -40
BRAU_JONES_SCALE = 2 ** 10 * 3 ** 3
BRAU_JONES_EXCLUDED = (Fraction(0), Fraction(1, 2))
BOREL_3_JMAP = "27*(t+1)*(t+9)^3/t^3"
S_VAR = 's'
T_VAR = 't'


# Goursat filter #

class EntanglementReport(object):
    def __init__(self, refs, triples):
        self.refs = refs
        self.triples = triples

    @property
    def degrees(self):
        return sorted(set(triple.order for triple in self.triples))

    @property
    def verdict(self):
        return POSSIBLE_ENTANGLEMENT if self.triples else NO_ENTANGLEMENT

    def to_dict(self):
        return {'pair': list(self.refs), 'verdict': self.verdict, 'degrees': self.degrees,
                'goursat_triples': [triple.to_dict() for triple in self.triples]}


def goursat_filter(ref0, ref1, bound=DEF_GROUP_SIZE_BOUND, cfg_dir=None):
    """
    Entanglement of degree d between the division fields is only possible when the two images share a quotient of
    order d > 1.
    """
    level0, name0 = parse_ref(ref0)
    level1, name1 = parse_ref(ref1)
    if gcd(level0, level1) != 1:
        raise InvalidDataError("Levels {} and {} are not coprime".format(level0, level1))
    group0 = resolve_group(level0, name0, cfg_dir)
    group1 = resolve_group(level1, name1, cfg_dir)
    return EntanglementReport((ref0, ref1), common_quotients(group0, group1, bound))


# Brau-Jones groups #

def brau_jones_normal_subgroup():
    """
    The order 8 subgroup of GL_2(F_3) made of (x -y; y x) with x^2 + y^2 = 1 and (x y; y -x) with x^2 + y^2 = -1
    """
    elements = []
    for x in range(3):
        for y in range(3):
            norm = (x * x + y * y) % 3
            if norm == 1:
                elements.append((x, -y % 3, y, x))
            elif norm == 2:
                elements.append((x, y, y, -x % 3))
    group = from_elements(elements, 3, name='N')
    if not is_normal(group, general_linear(3)):
        raise InvalidDataError("The order {} subgroup is not normal in GL_2(F_3)".format(group.order))
    return group


def _theta_labels():
    """GL_2(F_3) -> labels of GL_2(F_2), through an isomorphism of GL_2(F_3)/N onto GL_2(F_2)"""
    gl3 = general_linear(3)
    q3 = quotient(gl3, brau_jones_normal_subgroup())
    q2 = Quotient(general_linear(2), trivial_group(2))
    isos = quotient_isomorphisms(q3, q2, first_only=True)
    if not isos:
        raise InvalidDataError("GL_2(F_3)/N is not isomorphic to GL_2(F_2)")
    iso = isos[0]
    return q2, {g3: iso[q3.label(g3)] for g3 in gl3.elements}


def theta_map():
    """
    The surjection GL_2(F_3) -> GL_2(F_2) with kernel N, as a dict of matrices
    """
    q2, labels = _theta_labels()
    return {g3: q2.reps[label] for g3, label in labels.items()}


def h_prime():
    """
    The graph of theta inside GL_2(Z/6)
    """
    q2, labels = _theta_labels()
    return graph_subgroup(q2.group, general_linear(3), dict(q2.labels), labels, name="H'", quotient=q2)


def h_double_prime(cfg_dir=None):
    """
    The graph of theta restricted to the Borel subgroup G_3 of level 3
    """
    q2, labels = _theta_labels()
    borel = catalog_lookup(3, 'G_3', cfg_dir).group
    return graph_subgroup(q2.group, borel, dict(q2.labels), {g3: labels[g3] for g3 in borel.elements},
                          name="H''", quotient=q2)


def level3_index6_subgroups(cfg_dir=None):
    """
    Level 3 catalog groups with a normal subgroup whose quotient is GL_2(F_2)
    """
    s3 = Quotient(general_linear(2), trivial_group(2))
    found = []
    for entry in catalog_entries(3, cfg_dir):
        for normal in normal_subgroups(entry.group):
            if entry.group.order != 6 * normal.order:
                continue
            if quotient_isomorphisms(Quotient(entry.group, normal), s3, first_only=True):
                found.append(entry.name)
                break
    return found


def index_tower_23(cfg_dir=None):
    """
    [GL_2(Z/6) : G x H] for every level 2 group G (GL included) and level 3 catalog group H
    """
    names2 = [GL_NAME] + [entry.name for entry in catalog_entries(2, cfg_dir)]
    names3 = [entry.name for entry in catalog_entries(3, cfg_dir)]
    return [{'left': "2:{}".format(name2), 'right': "3:{}".format(name3),
             'index': composite_index(name2, name3, 2, 3, cfg_dir)} for name2 in names2 for name3 in names3]


# Gauss periods #

class GaussParams(object):
    """
    4p = (3k - 2)^2 + 27N^2 for a prime p = 1 mod 3
    """
    def __init__(self, p, k, big_n):
        self.p = p
        self.k = k
        self.big_n = big_n

    def __eq__(self, other):
        return isinstance(other, GaussParams) and (self.p, self.k, self.big_n) == (other.p, other.k, other.big_n)

    def __repr__(self):
        return "GaussParams(p={}, k={}, N={})".format(self.p, self.k, self.big_n)

    def to_dict(self):
        return {'p': self.p, 'k': self.k, 'N': self.big_n}


def gauss_k(p):
    if not isprime(p) or p % 3 != 1:
        raise InvalidDataError("Expected a prime p = 1 mod 3; found {}".format(p))
    solutions = []
    big_n = 1
    while 27 * big_n * big_n <= 4 * p:
        rem = 4 * p - 27 * big_n * big_n
        root = isqrt(rem)
        if root * root == rem:
            for lin in {root, -root}:
                if (lin + 2) % 3 == 0:
                    solutions.append(GaussParams(p, (lin + 2) // 3, big_n))
        big_n += 1
    if len(solutions) != 1:
        raise InvalidDataError("Expected one integral solution of 4*{} = (3k-2)^2 + 27N^2; found {}".format(
            p, solutions))
    return solutions[0]


def _gauss_constant(gp):
    return (Fraction(gp.p - 1, 3) + gp.k * gp.p) / 9


def gauss_cubic(gp):
    """
    X^3 + X^2 + (p-1)X/3 - ((p-1)/3 + kp)/9, as printed
    """
    return poly_from_coeffs([1, 1, Fraction(gp.p - 1, 3), -_gauss_constant(gp)], var='X')


def gauss_cubic_corrected(gp):
    """
    The period polynomial X^3 + X^2 - (p-1)X/3 - ((p-1)/3 + kp)/9, whose roots are the cubic Gaussian periods
    """
    return poly_from_coeffs([1, 1, -Fraction(gp.p - 1, 3), -_gauss_constant(gp)], var='X')


def gaussian_periods(p, dps=PERIOD_DPS):
    """
    eta_i = sum_j zeta_p^(g^(3j+i)) for i = 0, 1, 2 with g a primitive root; real since -1 is a cube mod p
    """
    if not isprime(p) or p % 3 != 1:
        raise InvalidDataError("Expected a prime p = 1 mod 3; found {}".format(p))
    g = int(primitive_root(p))
    with mpmath.workdps(dps):
        periods = []
        for i in range(3):
            total = mpmath.mpf(0)
            for j in range((p - 1) // 3):
                total += mpmath.cos(2 * mpmath.pi * pow(g, 3 * j + i, p) / p)
            periods.append(+total)
    return periods


def _max_residual(poly, periods):
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in fraction_coeffs(poly)]
    worst = mpmath.mpf(0)
    for eta in periods:
        val = mpmath.mpf(0)
        for coeff in coeffs:
            val = val * eta + coeff
        worst = max(worst, abs(val))
    return worst


def _discriminant(poly):
    return to_fraction(sympy.discriminant(poly.as_expr(), poly.gens[0]))


def gauss_cubic_report(gp):
    """
    Both cubics checked against the numerical Gaussian periods; a cyclic cubic field needs a square discriminant
    """
    with mpmath.workdps(PERIOD_DPS):
        periods = gaussian_periods(gp.p)
        report = {'params': gp.to_dict(), 'periods': [mpmath.nstr(eta, 30) for eta in periods]}
        printed_ok = corrected_ok = False
        for label, poly in (('printed', gauss_cubic(gp)), ('corrected', gauss_cubic_corrected(gp))):
            disc = _discriminant(poly)
            residual = _max_residual(poly, periods)
            matches = bool(residual < PERIOD_TOL)
            report[label] = {'cubic': poly, 'discriminant': disc, 'square_discriminant': is_rational_square(disc),
                             'max_residual': mpmath.nstr(residual, 5), 'roots_are_periods': matches}
            if label == 'printed':
                printed_ok = matches
            else:
                corrected_ok = matches
    if printed_ok:
        report['status'] = PRINTED_OK
    elif corrected_ok:
        report['status'] = SIGN_DISCREPANCY
        warning("The cubic as printed does not vanish on the Gaussian periods for p = {}; the period polynomial "
                "has the opposite sign on X".format(gp.p))
    else:
        report['status'] = MISMATCH
        warning("Neither cubic vanishes on the Gaussian periods for p = {}".format(gp.p))
    return report


def gauss_curve(gp):
    """
    y^2 = x^3 - (p/3)x + p(2 - 3k)/27
    """
    return EllipticQ(a4=Fraction(-gp.p, 3), a6=Fraction(gp.p * (2 - 3 * gp.k), 27))


def rubin_silverberg_family(gp):
    """
    (A(t), B(t)) with E_t: y^2 = x^3 + A(t)x + B(t) sharing its 2-torsion with gauss_curve(gp); the k^2 terms are
    read as (9/4)k^2 and (27/4)k^2
    """
    p, k = gp.p, gp.k
    k2 = Fraction(k * k)
    denom = p - Fraction(9, 4) * k2 + 3 * k - 1
    if denom == 0:
        raise InvalidDataError("Vanishing denominator in the Rubin-Silverberg family for {}".format(gp))
    a_coeffs = [1727 * p + Fraction(9, 4) * k2 - 3 * k + 1, 0, denom]
    b_coeffs = [-1727 * p - Fraction(9, 4) * k2 + 3 * k - 1,
                -5181 * p - Fraction(27, 4) * k2 + 9 * k - 3,
                3 * p - Fraction(27, 4) * k2 + 9 * k - 3,
                denom]
    return (poly_from_coeffs([c / denom for c in a_coeffs], var=T_VAR),
            poly_from_coeffs([c / denom for c in b_coeffs], var=T_VAR))


def rubin_silverberg_Et(gp, t):
    a_poly, b_poly = rubin_silverberg_family(gp)
    t = to_fraction(t)
    return EllipticQ(a4=poly_eval(a_poly, t), a6=poly_eval(b_poly, t))


# (2,3) j-maps #

def brau_jones_j(t):
    """
    2^10 3^3 t^3 (1 - 4t^3)
    """
    t = to_fraction(t)
    if t in BRAU_JONES_EXCLUDED:
        raise ExcludedParameterError("t = {} is excluded from the Brau-Jones family".format(t))
    return BRAU_JONES_SCALE * t ** 3 * (1 - 4 * t ** 3)


def xhpp_polynomial(j):
    """
    -4*2^10 3^3 s^6 + 2^10 3^3 s^3 - j, whose rational roots are the s over a given j
    """
    return poly_from_coeffs([-4 * BRAU_JONES_SCALE, 0, 0, BRAU_JONES_SCALE, 0, 0, -to_fraction(j)], var=S_VAR)


def xhpp_solve(t):
    """
    All rational s with 2^10 3^3 s^3 (1 - 4s^3) = 27(t+1)(t+9)^3/t^3
    """
    t = to_fraction(t)
    if t == 0:
        raise ExcludedParameterError("t = 0 is a pole of the level 3 Borel j-map")
    j = parse_jmap(BOREL_3_JMAP)(t)
    return sorted(rational_roots(xhpp_polynomial(j)))
