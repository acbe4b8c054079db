# coding=utf-8

"""
Torsion bounds from the orders of Jacobians over finite fields, the rank-0 Mordell-Weil sieve for a curve with
one known rational point, and the classification of rational j-values as cusps, CM points or unknown.
"""
from math import gcd
from concurrent.futures import ThreadPoolExecutor
from sympy import divisors, factor_list
from common_wrangler.common import InvalidDataError, warning
from galois_fiber.gf_common import POLE, INFINITY, BadPrimeError, FieldTooLargeError, DEF_THREADS, \
    DEF_MAX_FIELD_SIZE
from galois_fiber.exact import as_qq, to_fraction, is_rational_square, format_poly
from galois_fiber.ffcurves import jacobian_order, JacobianFp, good_reduction, order_set
from galois_fiber.ratpoints import point_on_curve

__author__ = 'hmayes'


# Constants #

UNIQUE_POINT = 'UNIQUE_POINT'
INCONCLUSIVE = 'INCONCLUSIVE'
CUSP = 'CUSP'
CM = 'CM'
UNKNOWN = 'UNKNOWN'

# the rational j-invariants with complex multiplication, keyed by j, valued by the discriminant of the order
CM_TABLE = {0: -3,
            1728: -4,
            -3375: -7,
            8000: -8,
            -32768: -11,
            54000: -12,
            287496: -16,
            -884736: -19,
            -12288000: -27,
            16581375: -28,
            -884736000: -43,
            -147197952000: -67,
            -262537412640768000: -163,
            }


# Torsion #

def _usable_order(w, p, max_field_size):
    """#J(F_p), or None when p is bad or too large to enumerate"""
    if p == 2:
        warning("Skipping prime 2 for y^2 = {}".format(format_poly(w)))
        return None
    try:
        return jacobian_order(w, p, max_field_size=max_field_size)
    except BadPrimeError as e:
        warning("Skipping bad prime: {}".format(e))
    except FieldTooLargeError as e:
        warning("Skipping prime beyond the enumeration guard: {}".format(e))
    return None


def local_orders(w, primes, threads=DEF_THREADS, max_field_size=DEF_MAX_FIELD_SIZE):
    """
    {p: #J(F_p)} over the usable primes
    """
    w = as_qq(w)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        orders = list(executor.map(lambda p: _usable_order(w, p, max_field_size), primes))
    return {p: order for p, order in zip(primes, orders) if order is not None}


def torsion_bound(w, primes, threads=DEF_THREADS, max_field_size=DEF_MAX_FIELD_SIZE):
    """
    gcd of #J(F_p) over the usable odd primes of good reduction; the rational torsion order divides it.

    @param w: odd or even degree polynomial defining y^2 = w(x)
    @param primes: candidate primes; bad ones are skipped with a warning
    @return: the bound (int)
    """
    orders = local_orders(w, primes, threads, max_field_size)
    if len(orders) < 2:
        raise InvalidDataError("Need at least two usable primes for a torsion bound; found {}".format(sorted(orders)))
    bound = 0
    for order in orders.values():
        bound = gcd(bound, order)
    return bound


def two_torsion_rank(w):
    """
    For odd degree w, the F_2-rank of the rational 2-torsion of the Jacobian: the number of irreducible factors of w
    over Q, less one
    """
    w = as_qq(w)
    if w.degree() % 2 == 0:
        raise InvalidDataError("Two-torsion rank is computed for odd degree models only; found degree {}"
                               "".format(w.degree()))
    _, factors = factor_list(w)
    return len(factors) - 1


# Mordell-Weil sieve #

class SieveVerdict(object):
    def __init__(self, status, bound, evidence, allowed):
        self.status = status
        self.bound = bound
        self.evidence = evidence
        self.allowed = allowed

    def to_dict(self):
        return {'status': self.status, 'bound': self.bound, 'allowed_orders': sorted(self.allowed),
                'order_sets': {p: sorted(orders) for p, orders in self.evidence.items()}}


def _reduce_point(point, p):
    coords = []
    for val in (point.t, point.y):
        val = to_fraction(val)
        if val.denominator % p == 0:
            raise BadPrimeError("Point {} does not reduce mod {}".format(point, p))
        coords.append(val.numerator * pow(val.denominator, -1, p) % p)
    return tuple(coords)


def base_order_set(w, base, p):
    """
    The exact orders of [P - base] over all P in C(F_p)
    """
    if base.t is INFINITY:
        return order_set(w, p)
    group_order = jacobian_order(w, p)
    jac = JacobianFp(w, p)
    base_neg = jac.neg(jac.from_point(*_reduce_point(base, p)))
    orders = {jac.class_order(base_neg, group_order)}
    for x0, y0 in jac.curve_points():
        orders.add(jac.class_order(jac.add(jac.from_point(x0, y0), base_neg), group_order))
    return orders


def order_sets(w, base, primes, threads=DEF_THREADS):
    """
    {p: orders of [P - base]} for the good odd primes in primes
    """
    w = as_qq(w)
    if not point_on_curve(w, base):
        raise InvalidDataError("Base point {} is not on y^2 = {}".format(base, format_poly(w)))
    usable = []
    for p in primes:
        try:
            if p == 2:
                raise BadPrimeError("Characteristic 2 is excluded for models y^2 = w(x)")
            good_reduction(w, p)
            usable.append(p)
        except BadPrimeError as e:
            warning("Skipping bad prime: {}".format(e))
    with ThreadPoolExecutor(max_workers=threads) as executor:
        sets = list(executor.map(lambda p: base_order_set(w, base, p), usable))
    return dict(zip(usable, sets))


def mw_sieve_rank0(w, base, bound, primes, threads=DEF_THREADS):
    """
    A second rational point P would give a class [P - base] whose order divides the torsion bound and lies in
    every local order set. UNIQUE_POINT when only order 1 survives the intersection, INCONCLUSIVE otherwise.
    """
    if bound < 1:
        raise InvalidDataError("Torsion bound must be positive; found {}".format(bound))
    if not point_on_curve(as_qq(w), base):
        raise InvalidDataError("Base point {} is not on y^2 = {}".format(base, format_poly(w)))
    allowed = set(divisors(bound))
    evidence = {}
    if bound > 1:
        evidence = order_sets(w, base, primes, threads)
        for orders in evidence.values():
            allowed &= orders
    status = UNIQUE_POINT if allowed == {1} else INCONCLUSIVE
    return SieveVerdict(status, bound, evidence, allowed)


# j-invariants #

def classify_j(j):
    """
    (CUSP, None) for a pole, (CM, discriminant) for a CM j-invariant, (UNKNOWN, None) otherwise
    """
    if j is POLE:
        return CUSP, None
    j = to_fraction(j)
    if j.denominator == 1 and j.numerator in CM_TABLE:
        return CM, CM_TABLE[j.numerator]
    return UNKNOWN, None


def square_lift_check(j):
    """
    True when j lifts to the composite model through the square map, that is j - 1728 is a rational square
    """
    if j is POLE:
        return False
    return is_rational_square(to_fraction(j) - 1728)


def known_point_orders(w, points, base, p):
    """
    Orders of [P - base] mod p for known rational points P, for checking that a sieve never excludes them
    """
    jac = JacobianFp(w, p)
    group_order = jacobian_order(w, p)
    base_div = jac.identity() if base.t is INFINITY else jac.from_point(*_reduce_point(base, p))
    orders = {}
    for point in points:
        div = jac.identity() if point.t is INFINITY else jac.from_point(*_reduce_point(point, p))
        orders[point] = jac.class_order(jac.add(div, jac.neg(base_div)), group_order)
    return orders

