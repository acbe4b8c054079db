# coding=utf-8

"""
Rational points: height-bounded search on y^2 = w(x) and on plane curves, local solubility of c*y^2 = w(x)
over R and Q_p, and the twisted covers d*y1^2 = f1(x), d*y2^2 = f2(x) used in etale descent.
"""
import itertools
from fractions import Fraction
from math import isqrt
from concurrent.futures import ThreadPoolExecutor
import numpy as np
import sympy
from sympy import Poly, ZZ, isprime, legendre_symbol, multiplicity, primefactors
from common_wrangler.common import InvalidDataError, warning
from galois_fiber.gf_common import INFINITY, REAL, DEF_THREADS
from galois_fiber.exact import (as_qq, gen_of, poly_eval, poly_gcd, primitive_integer, fraction_coeffs,
                                squarefree_integer_core, is_rational_square, format_poly, to_fraction)

__author__ = 'hmayes'


# Constants #

SIEVE_MODULI = (64, 63, 65, 11, 17, 19, 23)
SQUARE_TABLES = {mod: np.isin(np.arange(mod), (np.arange(mod) ** 2) % mod) for mod in SIEVE_MODULI}
INT64_SAFE = 2 ** 62
DEF_PLACES = (REAL, 2, 3, 5, 7)
REAL_NAMES = ('real', 'r', 'inf', 'oo')


class RationalPoint(object):
    """
    (t, y) on y^2 = w(t); t is INFINITY for points at infinity, where y is None for odd degree and +-sqrt(lc(w))
    for even degree
    """
    def __init__(self, t, y=None):
        self.t = t
        self.y = y

    def sort_key(self):
        if self.t is INFINITY:
            return 0, Fraction(0), self.y or Fraction(0)
        return 1, self.t, self.y

    def __eq__(self, other):
        return isinstance(other, RationalPoint) and self.sort_key() == other.sort_key()

    def __hash__(self):
        return hash((str(self.t), str(self.y)))

    def __repr__(self):
        if self.t is INFINITY and self.y is None:
            return INFINITY.name
        return "({}, {})".format(self.t, self.y)

    def to_dict(self):
        return {'x': self.t, 'y': self.y}


def parse_place(text):
    """
    'real' (or 'inf') -> REAL, otherwise a prime
    """
    if text is REAL or (isinstance(text, str) and text.strip().lower() in REAL_NAMES):
        return REAL
    try:
        place = int(text)
    except (TypeError, ValueError):
        raise InvalidDataError("Expected 'real' or a prime as a place; found '{}'".format(text))
    if not isprime(place):
        raise InvalidDataError("Expected 'real' or a prime as a place; found {}".format(place))
    return place


# Point search #

def _integral_form(w):
    """
    w = (n/m) * F with F integral primitive; returns (n*m, F coefficients descending, deg F)
    """
    content, prim = primitive_integer(as_qq(w))
    coeffs = [int(c) for c in fraction_coeffs(prim)]
    return content.numerator * content.denominator, content.denominator, coeffs


def points_at_infinity(w):
    w = as_qq(w)
    if w.degree() % 2:
        return [RationalPoint(INFINITY)]
    lead = to_fraction(w.LC())
    if not is_rational_square(lead):
        return []
    root = Fraction(isqrt(lead.numerator), isqrt(lead.denominator))
    return [RationalPoint(INFINITY, -root), RationalPoint(INFINITY, root)]


def _search_slice(scale, den, coeffs, height_bound, residue, stride):
    deg = len(coeffs) - 1
    even_deg = deg + deg % 2
    numerators = np.arange(-height_bound, height_bound + 1, dtype=np.int64)
    numerators = numerators[(numerators - residue) % stride == 0]
    found = []
    for b in range(1, height_bound + 1):
        # value(a) = scale * F(a, b) * b^(even_deg - deg), a polynomial in a for fixed b
        a_coeffs = [scale * coeff * b ** (even_deg - deg + idx) for idx, coeff in enumerate(coeffs)]
        keep = np.gcd(numerators, b) == 1
        for mod, table in SQUARE_TABLES.items():
            a_mod = numerators % mod
            vals = np.zeros(len(numerators), dtype=np.int64)
            for coeff in a_coeffs:
                vals = (vals * a_mod + coeff % mod) % mod
            keep &= table[vals]
        for a in numerators[keep]:
            a = int(a)
            val = 0
            for coeff in a_coeffs:
                val = val * a + coeff
            if val < 0:
                continue
            root = isqrt(val)
            if root * root != val:
                continue
            t = Fraction(a, b)
            y = Fraction(root, den * b ** (even_deg // 2))
            found.append(RationalPoint(t, y))
            if root:
                found.append(RationalPoint(t, -y))
    return found


def search_points(w, height_bound, threads=DEF_THREADS):
    """
    All points with x = a/b, |a|, b <= height_bound, plus the rational points at infinity. The numerators are
    split into residue classes across worker threads; output is sorted.
    """
    w = as_qq(w)
    if w.degree() < 1:
        raise InvalidDataError("Expected a nonconstant polynomial; found {}".format(format_poly(w)))
    if height_bound < 1:
        raise InvalidDataError("Height bound must be positive; found {}".format(height_bound))
    scale, den, coeffs = _integral_form(w)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        slices = executor.map(lambda residue: _search_slice(scale, den, coeffs, height_bound, residue, threads),
                              range(threads))
        points = [point for found in slices for point in found]
    points.extend(points_at_infinity(w))
    return sorted(points, key=RationalPoint.sort_key)


def point_on_curve(w, point):
    """
    Independent re-check of a search result against y^2 = w(t)
    """
    if point.t is INFINITY:
        return point in points_at_infinity(w)
    return point.y ** 2 == poly_eval(as_qq(w), point.t)


def normalize_projective(point):
    """
    Coprime integer coordinates with the first nonzero one positive
    """
    coords = [to_fraction(val) for val in point]
    if all(val == 0 for val in coords):
        raise InvalidDataError("[0:...:0] is not a projective point")
    den_lcm = 1
    for val in coords:
        den_lcm = den_lcm * val.denominator // sympy.igcd(den_lcm, val.denominator)
    ints = [int(val * den_lcm) for val in coords]
    common = 0
    for val in ints:
        common = sympy.igcd(common, val)
    ints = [val // common for val in ints]
    if next(val for val in ints if val != 0) < 0:
        ints = [-val for val in ints]
    return tuple(ints)


def search_plane_points(form, height_bound):
    """
    Projective points of the homogeneous form with coprime coordinates bounded by height_bound, by vectorised
    evaluation over the integer box
    """
    if len(form.gens) != 3:
        raise InvalidDataError("Expected a form in three variables; found {}".format(form.gens))
    _, form = form.clear_denoms()
    terms = form.terms()
    if sum(abs(int(coeff)) for _, coeff in terms) * height_bound ** form.total_degree() >= INT64_SAFE:
        raise InvalidDataError("Height bound {} is too large for exact vectorised evaluation".format(height_bound))
    axis = np.arange(-height_bound, height_bound + 1, dtype=np.int64)
    x_vals, y_vals, z_vals = (arr.ravel() for arr in np.meshgrid(axis, axis, axis, indexing='ij'))
    total = np.zeros(len(x_vals), dtype=np.int64)
    for (i, j, k), coeff in terms:
        total += int(coeff) * x_vals ** i * y_vals ** j * z_vals ** k
    hits = np.nonzero(total == 0)[0]
    found = set()
    for idx in hits:
        coords = (int(x_vals[idx]), int(y_vals[idx]), int(z_vals[idx]))
        if coords == (0, 0, 0):
            continue
        found.add(normalize_projective(coords))
    return sorted(found)


# Local solubility #

def _is_square_qp(val, p):
    if val == 0:
        return True
    val = to_fraction(val)
    num = val.numerator * val.denominator
    order = multiplicity(p, num)
    if order % 2:
        return False
    unit = num // p ** order
    if p == 2:
        return unit % 8 == 1
    return legendre_symbol(unit % p, p) == 1


def _hensel_root(poly, z, p):
    """True when the root of poly near z guaranteed by Hensel's lemma exists"""
    val = int(poly.eval(z))
    deriv = int(poly.diff().eval(z))
    if val == 0:
        return True
    if deriv == 0:
        return False
    return multiplicity(p, val) > 2 * multiplicity(p, deriv)


def _soluble_zp(poly, c, p, depth):
    """
    A point of y^2 = c * poly(x) with x in Z_p; poly integral with content 1
    """
    tries = 8 if p == 2 else p
    for x in range(tries):
        if _is_square_qp(c * int(poly.eval(x)), p):
            return True
    for z in range(p):
        if int(poly.eval(z)) % p:
            continue
        if _hensel_root(poly, z, p):
            return True
        if depth <= 0:
            continue
        shifted = poly.compose(Poly([p, z], gen_of(poly), domain=ZZ))
        content = int(shifted.content())
        if _soluble_zp(shifted.exquo_ground(content), squarefree_integer_core(c * content), p, depth - 1):
            return True
    return False


def _real_soluble(c, w):
    if w.degree() % 2:
        return True
    if c * to_fraction(w.LC()) > 0:
        return True
    return w.count_roots() > 0


def is_locally_soluble(c, w, place, depth=None):
    """
    Whether y^2 = c * w(x) has a point over R or Q_p (points at infinity of the smooth model included).
    The p-adic search recurses into residue discs around roots mod p, in the chart at x and the chart at 1/x;
    depth defaults to 2 * ord_p(disc) + 1.
    """
    w = as_qq(w)
    c = to_fraction(c)
    if c == 0 or w.is_zero:
        raise InvalidDataError("Expected a nonzero twist and polynomial")
    place = parse_place(place)
    if place is REAL:
        return _real_soluble(c, w)
    p = place
    if w.degree() % 2:
        return True
    content, prim = primitive_integer(w)
    twist = squarefree_integer_core(c * content)
    poly = Poly([int(coeff) for coeff in fraction_coeffs(prim)], gen_of(w), domain=ZZ)
    if depth is None:
        disc = int(sympy.discriminant(poly.as_expr(), gen_of(w))) if poly.degree() > 0 else 1
        depth = 2 * (multiplicity(p, disc) if disc else 0) + 1
    if _soluble_zp(poly, twist, p, depth):
        return True
    # the disc x' = 1/x in pZ_p, on the reversed polynomial
    rev = Poly(list(reversed(poly.all_coeffs())), gen_of(w), domain=ZZ)
    rev = rev.compose(Poly([p, 0], gen_of(w), domain=ZZ))
    content = int(rev.content())
    if _soluble_zp(rev.exquo_ground(content), squarefree_integer_core(twist * content), p, depth):
        return True
    return False


def bad_primes(w):
    """
    2 and the primes dividing the content, leading coefficient or discriminant of w
    """
    w = as_qq(w)
    content, prim = primitive_integer(w)
    primes = {2}
    primes.update(primefactors(content.numerator))
    primes.update(primefactors(content.denominator))
    coeffs = [int(coeff) for coeff in fraction_coeffs(prim)]
    primes.update(primefactors(coeffs[0]))
    if prim.degree() > 0:
        primes.update(primefactors(int(sympy.discriminant(prim.as_expr(), gen_of(prim)))))
    return sorted(primes)


# Etale descent #

def descent_twists(primes):
    """
    The squarefree d = +-(product of a subset of primes)
    """
    primes = sorted(set(primes))
    for p in primes:
        if not isprime(p):
            raise InvalidDataError("Expected primes; found {}".format(p))
    twists = set()
    for size in range(len(primes) + 1):
        for subset in itertools.combinations(primes, size):
            prod = 1
            for p in subset:
                prod *= p
            twists.update((prod, -prod))
    return sorted(twists, key=lambda d: (abs(d), d))


class DescentSystem(object):
    """
    d*y1^2 = f1(x), d*y2^2 = f2(x): a twist of the etale double cover of y^2 = f1(x)*f2(x)
    """
    def __init__(self, d, f1, f2):
        self.d = d
        self.f1 = f1
        self.f2 = f2
        degree = (f1 * f2).degree()
        self.base_genus = max(0, (degree - 1) // 2)
        self.genus = 2 * self.base_genus - 1

    @property
    def equations(self):
        return ["{}*y{}^2 = {}".format(self.d, idx, format_poly(poly)) for idx, poly in ((1, self.f1), (2, self.f2))]

    def to_dict(self):
        return {'d': self.d, 'equations': self.equations, 'base_genus': self.base_genus, 'genus': self.genus}


def build_cover(f1, f2, d):
    f1, f2 = as_qq(f1), as_qq(f2)
    product = f1 * f2
    if product.degree() < 1 or poly_gcd(product, product.diff()).degree() > 0:
        raise InvalidDataError("{} * {} is not squarefree".format(format_poly(f1), format_poly(f2)))
    if d == 0 or squarefree_integer_core(d) != d:
        raise InvalidDataError("Twist {} is not a squarefree integer".format(d))
    return DescentSystem(d, f1, f2)


def _rational(val):
    return sympy.Rational(val.numerator, val.denominator)


def _real_samples(poly):
    """
    Rationals meeting every open interval cut out by the real roots of the squarefree poly; none is a root
    """
    coeffs = fraction_coeffs(poly)
    if len(coeffs) == 1:
        return [Fraction(0)]
    bound = 1 + max(abs(coeff / coeffs[0]) for coeff in coeffs[1:])

    def split(lo, hi):
        if poly.count_roots(_rational(lo), _rational(hi)) <= 1:
            return []
        mid, step = (lo + hi) / 2, (hi - lo) / 4
        while poly_eval(poly, mid) == 0:
            mid, step = mid + step, step / 2
        return split(lo, mid) + [mid] + split(mid, hi)

    return [-bound] + split(-bound, bound) + [bound]


def _jointly_soluble_zp(polys, twists, p, depth, origin=False):
    """
    An x in Z_p with twist * poly(x) a nonzero square in Q_p for every pair, or with one poly vanishing at x and
    the others nonzero squares there. With origin set, x = 0 stands for the point at infinity and does not count.
    """
    tries = 8 if p == 2 else p
    for x in range(tries):
        vals = [twist * int(poly.eval(x)) for poly, twist in zip(polys, twists)]
        if all(val != 0 and _is_square_qp(val, p) for val in vals):
            return True
    for z in range(p):
        vals = [int(poly.eval(z)) for poly in polys]
        if all(val % p for val in vals):
            # square classes are fixed on z + pZ_p (mod 8 for p = 2) and were tried above
            continue
        if p != 2:
            for idx, poly in enumerate(polys):
                if vals[idx] % p or (origin and z == 0 and vals[idx] == 0):
                    continue
                others = [(val, twist) for jdx, (val, twist) in enumerate(zip(vals, twists)) if jdx != idx]
                if _hensel_root(poly, z, p) and all(val % p and _is_square_qp(twist * val, p)
                                                    for val, twist in others):
                    return True
        if depth <= 0:
            continue
        shifted_polys, shifted_twists = [], []
        for poly, twist in zip(polys, twists):
            shifted = poly.compose(Poly([p, z], gen_of(poly), domain=ZZ))
            content = int(shifted.content())
            shifted_polys.append(shifted.exquo_ground(content))
            shifted_twists.append(squarefree_integer_core(twist * content))
        if _jointly_soluble_zp(shifted_polys, shifted_twists, p, depth - 1, origin and z == 0):
            return True
    return False


def is_cover_locally_soluble(d, f1, f2, place, depth=None):
    """
    Whether d*y1^2 = f1(x), d*y2^2 = f2(x) has a point over R or Q_p with one x shared by both equations.
    Points above x = infinity have neighbours at finite x, so the search runs over x in Z_p and over 1/x in pZ_p,
    where each factor of odd degree contributes x' * rev(x'). depth defaults to 2 * ord_p(disc(f1 * f2)) + 1.
    """
    f1, f2 = as_qq(f1), as_qq(f2)
    d = to_fraction(d)
    if d == 0 or f1.is_zero or f2.is_zero:
        raise InvalidDataError("Expected a nonzero twist and polynomials")
    place = parse_place(place)
    factors = (f1, f2)
    if place is REAL:
        return any(all(d * poly_eval(poly, x) > 0 for poly in factors) for x in _real_samples(f1 * f2))
    p = place
    gen = gen_of(f1)
    polys, twists = [], []
    for poly in factors:
        content, prim = primitive_integer(poly)
        polys.append(Poly([int(coeff) for coeff in fraction_coeffs(prim)], gen, domain=ZZ))
        twists.append(squarefree_integer_core(d * content))
    if depth is None:
        product = polys[0] * polys[1]
        disc = int(sympy.discriminant(product.as_expr(), gen)) if product.degree() > 0 else 1
        depth = 2 * (multiplicity(p, disc) if disc else 0) + 1
    if _jointly_soluble_zp(polys, twists, p, depth):
        return True
    rev_polys, rev_twists = [], []
    for poly, twist in zip(polys, twists):
        rev = Poly(list(reversed(poly.all_coeffs())), gen, domain=ZZ)
        if poly.degree() % 2:
            rev = rev * Poly([1, 0], gen, domain=ZZ)
        rev = rev.compose(Poly([p, 0], gen, domain=ZZ))
        content = int(rev.content())
        rev_polys.append(rev.exquo_ground(content))
        rev_twists.append(squarefree_integer_core(twist * content))
    return _jointly_soluble_zp(rev_polys, rev_twists, p, depth, origin=True)


def local_solubility_table(f1, f2, primes, places=DEF_PLACES, depth=None):
    """
    For each twist d, local solubility of d*y^2 = f1 and d*y^2 = f2 at every place, and of the pair at a common x
    (under 'joint') wherever both are soluble alone; the cover survives only where the pair is soluble everywhere
    """
    places = [parse_place(place) for place in places]
    table = []
    for d in descent_twists(primes):
        system = build_cover(f1, f2, d)
        row = {'d': d, 'equations': system.equations, 'places': {}, 'joint': {}}
        for place in places:
            row['places'][place] = [is_locally_soluble(d, poly, place, depth) for poly in (f1, f2)]
            row['joint'][place] = all(row['places'][place]) and is_cover_locally_soluble(d, f1, f2, place, depth)
        row['soluble'] = all(row['joint'].values())
        table.append(row)
    survivors = [row['d'] for row in table if row['soluble']]
    if not survivors:
        warning("No twist is locally soluble at every place in {}".format(places))
    return table
