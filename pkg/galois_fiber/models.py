# coding=utf-8

"""
Curve models for composite-level entanglement: j-maps from the catalog, fibered products with the level-2
G_3 map, their hyperelliptic reduction and genus, rational elliptic curves with the chord-tangent law, the
level-11 j-map on the nonsplit Cartan curve, and the registry of explicit models shipped in models.json.
"""
import json
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from concurrent.futures import ThreadPoolExecutor
import sympy
from sympy import Poly, Symbol, QQ, integer_nthroot
from sympy.parsing.sympy_parser import parse_expr
from tokenize import TokenError
from common_wrangler.common import InvalidDataError, warning
from galois_fiber.gf_common import (POLE, INFINITY, ZeroDimensionalFiberError, PolySyntaxError, MODELS_FILE,
                                    DEF_THREADS, load_json_data, parse_ref)
from galois_fiber.exact import (RatFunc, parse_ratfunc, parse_poly, format_poly, as_qq, poly_gcd, poly_eval,
                                square_decomposition, squarefree_integer_core, rational_roots, to_fraction,
                                fraction_coeffs, poly_from_coeffs)
from galois_fiber.gl2cat import catalog_lookup, catalog_entries, direct_product, modular_genus

__author__ = 'hmayes'


# Constants #

RATFUNC = 'RATFUNC'
CONSTANT = 'CONSTANT'
ELLIPTIC11 = 'ELLIPTIC11'

J_1728 = 1728
JMAP_VAR = 't'
LEFT_VAR = 's'
SQUARE_MAP_COEFFS = [1, 0, J_1728]

# census statuses
MODEL = 'MODEL'
RAW = 'RAW'
ZERO_DIMENSIONAL = 'ZERO_DIMENSIONAL'
NO_JMAP = 'NO_JMAP'

# level-11 j-map variants
CORRECTED = 'corrected'
PRINTED = 'printed'
LEVEL11_VARIANTS = (CORRECTED, PRINTED)
LEVEL11_CURVE_TEXT = "y^2+y = x^3-x^2-7*x+10"
LOCAL_VAR = 's'
LOCAL_PRECISION = 16
LEVEL22_MODEL = 'X_G3_G3_22'

# registry kinds
HYPERELLIPTIC = 'hyperelliptic'
SUPERELLIPTIC = 'superelliptic'
PLANE_QUARTIC = 'plane_quartic'
CANONICAL_GENUS4 = 'canonical_genus4'
LEVEL22 = 'level22'
ELLIPTIC = 'elliptic'
CANONICAL_VARS = ['u', 'v', 'w']
AFFINE_VARS = ['x', 'y']


# J-maps #

class JMap(object):
    """
    A catalog j-map: a rational function of t, a constant, or the level-11 map on an elliptic curve
    """
    def __init__(self, kind, ratfunc=None, value=None, text=None):
        self.kind = kind
        self.ratfunc = ratfunc
        self.value = value
        self.text = text

    def __call__(self, t):
        if self.kind == RATFUNC:
            return self.ratfunc(t)
        if self.kind == CONSTANT:
            return self.value
        return level11_J(t)

    def is_square_map(self):
        """True for t^2 + 1728, the map of the level-2 group G_3"""
        if self.kind != RATFUNC or self.ratfunc.denom.degree() != 0:
            return False
        return fraction_coeffs(self.ratfunc.numer) == SQUARE_MAP_COEFFS

    def in_var(self, var):
        if self.kind != RATFUNC:
            return str(self)
        gen = Symbol(var)
        return str(RatFunc(Poly(self.ratfunc.numer.all_coeffs(), gen, domain=QQ),
                           Poly(self.ratfunc.denom.all_coeffs(), gen, domain=QQ)))

    def __str__(self):
        if self.kind == RATFUNC:
            return str(self.ratfunc)
        if self.kind == CONSTANT:
            return str(self.value)
        return ELLIPTIC11

    def to_dict(self):
        return {'kind': self.kind, 'jmap': str(self)}


def parse_jmap(text):
    if text is None:
        raise InvalidDataError("No j-map is available for this group")
    if text.strip() == ELLIPTIC11:
        return JMap(ELLIPTIC11, text=text)
    ratfunc = parse_ratfunc(text, var=JMAP_VAR)
    if ratfunc.is_constant():
        return JMap(CONSTANT, value=ratfunc.constant_value(), text=text)
    return JMap(RATFUNC, ratfunc=ratfunc, text=text)


def read_jmap_file(f_loc):
    """
    Reads a JSON object mapping catalog references ("16:X_1") to j-map text
    """
    with open(f_loc) as f:
        try:
            raw = json.load(f)
        except ValueError as e:
            raise InvalidDataError("Could not parse j-map file {}: {}".format(f_loc, e))
    if not isinstance(raw, dict):
        raise InvalidDataError("Expected a JSON object of 'level:name' to j-map text in {}".format(f_loc))
    jmaps = {}
    for ref, text in raw.items():
        level, name = parse_ref(ref)
        jmaps["{}:{}".format(level, name)] = parse_jmap(text)
    return jmaps


def jmap_for(ref, cfg_dir=None, extra_jmaps=None):
    """
    The j-map for a reference such as "7:G_2", taking user-supplied maps first
    """
    level, name = parse_ref(ref)
    key = "{}:{}".format(level, name)
    if extra_jmaps and key in extra_jmaps:
        return extra_jmaps[key]
    entry = catalog_lookup(level, name, cfg_dir)
    if entry.jmap is None:
        raise InvalidDataError("No j-map is available for {}".format(key))
    return parse_jmap(entry.jmap)


def jmap_preimages(jmap, j):
    """
    The rational t with J(t) = j
    """
    if jmap.kind != RATFUNC:
        raise InvalidDataError("Preimages are only computed for j-maps that are rational functions of t; "
                               "found a {} map".format(jmap.kind))
    j = to_fraction(j)
    target = jmap.ratfunc.numer - jmap.ratfunc.denom.mul_ground(sympy.Rational(j.numerator, j.denominator))
    return rational_roots(target)


# Genus formulas #

def hyperelliptic_genus(w):
    """floor((deg w - 1)/2) for squarefree w"""
    w = as_qq(w)
    deg = w.degree()
    if deg > 0 and poly_gcd(w, w.diff()).degree() > 0:
        raise InvalidDataError("{} is not squarefree".format(format_poly(w)))
    return max(0, (deg - 1) // 2)


def genus_superelliptic(m, f):
    """
    Genus of y^m = f(x) for squarefree f
    """
    if m < 2:
        raise InvalidDataError("Exponent must be at least 2; found {}".format(m))
    f = as_qq(f)
    deg = f.degree()
    if deg < 1 or poly_gcd(f, f.diff()).degree() > 0:
        raise InvalidDataError("{} is not a squarefree nonconstant polynomial".format(format_poly(f)))
    return ((m - 1) * (deg - 1) + 1 - gcd(m, deg)) // 2


def genus_cyclic_cover(m, f):
    """
    Genus of the smooth model of y^m = f(x), where f may have repeated factors, by Riemann-Hurwitz on x
    """
    if m < 2:
        raise InvalidDataError("Exponent must be at least 2; found {}".format(m))
    f = as_qq(f)
    if f.degree() < 1:
        raise InvalidDataError("Expected a nonconstant polynomial; found {}".format(format_poly(f)))
    _, factors = f.sqf_list()
    common = m
    ramification = 0
    for factor, mult in factors:
        common = gcd(common, mult)
        ramification += factor.degree() * (m - gcd(m, mult))
    if common != 1:
        raise InvalidDataError("y^{} = {} is reducible".format(m, format_poly(f)))
    ramification += m - gcd(m, f.degree())
    return (ramification - 2 * m + 2) // 2


# Fibered products #

class HyperellipticModel(object):
    """
    y^2 = twist * w(t), birational to s^2 + 1728 = f(t)/g(t) through y = g(t) * s / (r * h(t)), where
    f*g - 1728*g^2 = c * h^2 * w and c = twist * r^2
    """
    def __init__(self, w, twist=1, trace=None):
        self.w = w
        self.twist = twist
        self.curve = w.mul_ground(twist)
        self.genus = hyperelliptic_genus(self.curve)
        self.trace = trace or {}

    def check_identity(self):
        f, g, h, c = (self.trace[key] for key in ('f', 'g', 'h', 'c'))
        lhs = f * g - g ** 2 * J_1728
        return lhs == (h ** 2 * self.w).mul_ground(sympy.Rational(c.numerator, c.denominator))

    @property
    def substitution(self):
        return "y = ({})*s/({}*({}))".format(format_poly(self.trace['g']), self.trace['r'],
                                             format_poly(self.trace['h']))

    def __str__(self):
        return "y^2 = {}".format(format_poly(self.curve))

    def to_dict(self):
        return {'curve': str(self), 'w': self.w, 'twist': self.twist, 'genus': self.genus,
                'substitution': self.substitution, 'trace': self.trace}


def hyperelliptic_reduce(jmap):
    """
    Reduces s^2 + 1728 = f(t)/g(t) to y^2 = d * w(t) with w the squarefree kernel of f*g - 1728*g^2 and d the
    squarefree part of the leftover rational constant.
    """
    ratfunc = jmap.ratfunc if isinstance(jmap, JMap) else jmap
    if ratfunc is None or ratfunc.is_constant():
        raise InvalidDataError("Hyperelliptic reduction needs a nonconstant j-map")
    f, g = ratfunc.numer, ratfunc.denom
    target = f * g - g ** 2 * J_1728
    assert not target.is_zero
    c, h, w = square_decomposition(target)
    twist = squarefree_integer_core(c)
    r_sq = c / twist
    r = Fraction(isqrt(r_sq.numerator), isqrt(r_sq.denominator))
    return HyperellipticModel(w, twist, {'f': f, 'g': g, 'h': h, 'c': c, 'r': r})


class CompositeModel(object):
    """
    The fibered product of two j-maps: raw equations with the left map in s and the right map in t (or in a point
    (x,y) of the level-11 curve), plus the hyperelliptic reduction when one side is t^2 + 1728
    """
    def __init__(self, left, right, left_map, right_map, equations, reduced=None):
        self.left = left
        self.right = right
        self.left_map = left_map
        self.right_map = right_map
        self.equations = equations
        self.reduced = reduced

    @property
    def genus(self):
        if self.reduced is None:
            return None
        return self.reduced.genus

    def to_dict(self):
        return {'left': self.left, 'right': self.right, 'equations': self.equations,
                'reduced': self.reduced.to_dict() if self.reduced else None, 'genus': self.genus}


def fiber_product(j1, j2, left=None, right=None):
    for jmap, ref in ((j1, left), (j2, right)):
        if jmap.kind == CONSTANT:
            raise ZeroDimensionalFiberError("The j-map of {} is the constant {}: the fibered product is a finite set "
                                            "of points, not a curve".format(ref or 'this group', jmap.value))
    if j1.kind == ELLIPTIC11 and j2.kind == ELLIPTIC11:
        raise InvalidDataError("Both factors are the level-11 map; expected at most one")
    if j1.kind == ELLIPTIC11:
        j1, j2, left, right = j2, j1, right, left
    if j2.kind == ELLIPTIC11:
        equations = [LEVEL11_CURVE_TEXT, "{} = J(x,y)".format(j1.in_var(LEFT_VAR))]
        return CompositeModel(left, right, j1, j2, equations)
    equations = ["{} = {}".format(j1.in_var(LEFT_VAR), j2.in_var(JMAP_VAR))]
    reduced = None
    if j1.is_square_map():
        reduced = hyperelliptic_reduce(j2)
    elif j2.is_square_map():
        reduced = hyperelliptic_reduce(j1)
    return CompositeModel(left, right, j1, j2, equations, reduced)


def _census_row(left_entry, left_map, entry, cfg_dir, extra_jmaps):
    row = {'ref': entry.ref, 'status': None, 'genus': None, 'model': None, 'group_genus': None}
    if gcd(left_entry.level, entry.level) == 1:
        row['group_genus'] = modular_genus(direct_product(left_entry.group, entry.group))['genus']
    if extra_jmaps and entry.ref in extra_jmaps:
        right_map = extra_jmaps[entry.ref]
    elif entry.jmap is None:
        row['status'] = NO_JMAP
        return row
    else:
        right_map = parse_jmap(entry.jmap)
    if right_map.kind == CONSTANT:
        row['status'] = ZERO_DIMENSIONAL
    elif right_map.kind == ELLIPTIC11:
        row['status'] = ELLIPTIC11
        if left_map.is_square_map():
            row['model'] = LEVEL22_MODEL
            row['genus'] = model_registry(LEVEL22_MODEL, cfg_dir).genus
    else:
        product = fiber_product(left_map, right_map, left_entry.ref, entry.ref)
        row['status'] = MODEL if product.reduced else RAW
        row['genus'] = product.genus
        row['model'] = str(product.reduced) if product.reduced else product.equations[0]
    return row


def census(left_ref, level, cfg_dir=None, threads=DEF_THREADS, extra_jmaps=None):
    """
    The fibered product of the left j-map with every catalog entry at level, with the genus of the reduced
    model and the genus computed from the product group itself. Maps in extra_jmaps replace or supply the
    catalog's, keyed by references such as "7:G_2".
    """
    left_level, left_name = parse_ref(left_ref)
    left_entry = catalog_lookup(left_level, left_name, cfg_dir)
    left_map = jmap_for(left_ref, cfg_dir, extra_jmaps)
    if left_map.kind != RATFUNC:
        raise InvalidDataError("The left factor {} needs a nonconstant j-map of t".format(left_ref))
    entries = catalog_entries(level, cfg_dir)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        rows = list(executor.map(lambda entry: _census_row(left_entry, left_map, entry, cfg_dir, extra_jmaps),
                                 entries))
    for row in rows:
        if row['genus'] is not None and row['group_genus'] is not None and row['genus'] != row['group_genus']:
            warning("Model genus {} and group genus {} differ for {}".format(row['genus'], row['group_genus'],
                                                                            row['ref']))
    return rows


# Elliptic curves over Q #

def _b_invariants(ainvs):
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 ** 2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 ** 2 + 4 * a6
    b8 = a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2
    return b2, b4, b6, b8


class EllipticQ(object):
    """
    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 with rational coefficients and nonzero discriminant
    """
    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.ainvs = tuple(to_fraction(a) for a in (a1, a2, a3, a4, a6))
        if ec_discriminant(self) == 0:
            raise InvalidDataError("Singular Weierstrass model with coefficients {}".format(
                [str(a) for a in self.ainvs]))

    def __eq__(self, other):
        return isinstance(other, EllipticQ) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(self.ainvs)

    def __str__(self):
        a1, a2, a3, a4, a6 = self.ainvs
        x_sym, y_sym = Symbol('x'), Symbol('y')
        lhs = y_sym ** 2 + sympy.Rational(str(a1)) * x_sym * y_sym + sympy.Rational(str(a3)) * y_sym
        rhs = x_sym ** 3 + sympy.Rational(str(a2)) * x_sym ** 2 + sympy.Rational(str(a4)) * x_sym + \
            sympy.Rational(str(a6))
        return "{} = {}".format(lhs, rhs).replace('**', '^')

    def to_dict(self):
        return {'ainvs': list(self.ainvs), 'equation': str(self), 'discriminant': ec_discriminant(self),
                'j_invariant': ec_j_invariant(self)}


def ec_discriminant(curve):
    b2, b4, b6, b8 = _b_invariants(curve.ainvs)
    return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6


def ec_j_invariant(curve):
    b2, b4, _, _ = _b_invariants(curve.ainvs)
    c4 = b2 ** 2 - 24 * b4
    return c4 ** 3 / ec_discriminant(curve)


def _as_point(point):
    if point is INFINITY:
        return point
    x, y = point
    return to_fraction(x), to_fraction(y)


def ec_residual(curve, point):
    a1, a2, a3, a4, a6 = curve.ainvs
    x, y = _as_point(point)
    return y ** 2 + a1 * x * y + a3 * y - (x ** 3 + a2 * x ** 2 + a4 * x + a6)


def ec_on_curve(curve, point):
    if point is INFINITY:
        return True
    return ec_residual(curve, point) == 0


def _check_on_curve(curve, point):
    if not ec_on_curve(curve, point):
        raise InvalidDataError("Point {} is not on {}".format(point, curve))
    return _as_point(point)


def ec_neg(curve, point):
    point = _check_on_curve(curve, point)
    if point is INFINITY:
        return point
    a1, _, a3, _, _ = curve.ainvs
    x, y = point
    return x, -y - a1 * x - a3


def ec_add(curve, p_pt, q_pt):
    """
    Chord-tangent sum on the long Weierstrass model
    """
    p_pt = _check_on_curve(curve, p_pt)
    q_pt = _check_on_curve(curve, q_pt)
    if p_pt is INFINITY:
        return q_pt
    if q_pt is INFINITY:
        return p_pt
    a1, a2, a3, a4, a6 = curve.ainvs
    x1, y1 = p_pt
    x2, y2 = q_pt
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        denom = 2 * y1 + a1 * x1 + a3
        slope = (3 * x1 ** 2 + 2 * a2 * x1 + a4 - a1 * y1) / denom
        intercept = (-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) / denom
    else:
        slope = (y2 - y1) / (x2 - x1)
        intercept = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = slope ** 2 + a1 * slope - a2 - x1 - x2
    y3 = -(slope + a1) * x3 - intercept - a3
    return x3, y3


def ec_mul(curve, n, point):
    point = _check_on_curve(curve, point)
    if n < 0:
        return ec_mul(curve, -n, ec_neg(curve, point))
    result = INFINITY
    addend = point
    while n:
        if n & 1:
            result = ec_add(curve, result, addend)
        addend = ec_add(curve, addend, addend)
        n >>= 1
    return result


E11 = EllipticQ(0, -1, 1, -7, 10)


# The level-11 j-map #

def _level11_forms(x, y, variant):
    f1 = x ** 2 + 3 * x - 6
    f2_tail = 2 * x ** 4 + 23 * x ** 3 - 72 * x ** 2 - 28 * x + 127
    f4_tail = 5 * x ** 3 + 17 * x ** 2 - 112 * x
    if variant == CORRECTED:
        f2 = 11 * (x ** 2 - 5) * y + f2_tail
        f4 = 22 * (x - 2) * y + f4_tail + 120
    else:
        f2 = 11 * (x ** 2 - 5 * y) + f2_tail
        f4 = 22 * (x - 2) * y + f4_tail - 120
    f3 = 6 * y + 11 * x - 19
    f5 = 11 * y + 2 * x ** 2 + 17 * x - 34
    f6 = (x - 4) * y - (5 * x - 9)
    return f1, f2, f3, f4, f5, f6


def _check_variant(variant):
    if variant not in LEVEL11_VARIANTS:
        raise InvalidDataError("Unknown level-11 variant '{}'; expected one of {}".format(variant, LEVEL11_VARIANTS))


def level11_factors(point, variant=CORRECTED):
    """
    f_1 .. f_6 at a point of y^2 + y = x^3 - x^2 - 7x + 10. The printed variant keeps 11(x^2 - 5y) in f_2 and
    -120 in f_4; the corrected variant reads 11(x^2 - 5)y and +120, so that the CM point (2,0) lands on 1728.
    """
    _check_variant(variant)
    if point is INFINITY:
        raise InvalidDataError("The level-11 j-map is evaluated at affine points only")
    x, y = _check_on_curve(E11, point)
    return _level11_forms(x, y, variant)


def level11_local_factors(point, variant=CORRECTED, precision=LOCAL_PRECISION):
    """
    f_1 .. f_6 expanded in the local parameter s = x - x0 at an affine point (x0, y0), with y a power series in s
    solved from the curve equation. Coefficients are exact through s^precision.
    """
    _check_variant(variant)
    if point is INFINITY:
        raise InvalidDataError("The level-11 j-map is evaluated at affine points only")
    x0, y0 = _check_on_curve(E11, point)
    tangent = 2 * y0 + 1
    if tangent == 0:
        raise InvalidDataError("x - x0 is not a local parameter at {}".format(point))
    # (2 y0 + 1) u + u^2 = g(x0 + s) - g(x0) for y = y0 + u and g(x) = x^3 - x^2 - 7x + 10
    rhs = [3 * x0 ** 2 - 2 * x0 - 7, 3 * x0 - 1, 1] + [0] * precision
    series = [y0]
    for k in range(1, precision + 1):
        cross = sum((series[i] * series[k - i] for i in range(1, k)), Fraction(0))
        series.append((rhs[k - 1] - cross) / tangent)
    x_local = poly_from_coeffs([1, x0], var=LOCAL_VAR)
    y_local = poly_from_coeffs(list(reversed(series)), var=LOCAL_VAR)
    return _level11_forms(x_local, y_local, variant)


def _leading_term(series, precision):
    """(order, coefficient) of the lowest nonzero term at or below s^precision"""
    low = [(exps[0], coeff) for exps, coeff in series.terms() if exps[0] <= precision and coeff != 0]
    if not low:
        raise InvalidDataError("A level-11 factor vanishes beyond the expansion precision {}".format(precision))
    order, coeff = min(low, key=lambda term: term[0])
    return order, to_fraction(coeff)


def level11_J(point, variant=CORRECTED):
    """
    (f1 f2 f3 f4)^3 / (f5^2 f6^11), or POLE at the cusps. Where numerator and denominator both vanish the value
    is read off their leading terms in a local parameter.
    """
    f1, f2, f3, f4, f5, f6 = level11_factors(point, variant)
    numer = (f1 * f2 * f3 * f4) ** 3
    denom = f5 ** 2 * f6 ** 11
    if denom != 0:
        return numer / denom
    if numer != 0:
        return POLE
    leads = [_leading_term(factor, LOCAL_PRECISION) for factor in level11_local_factors(point, variant)]
    numer_order = 3 * sum(order for order, _ in leads[:4])
    denom_order = 2 * leads[4][0] + 11 * leads[5][0]
    if numer_order > denom_order:
        return Fraction(0)
    if numer_order < denom_order:
        return POLE
    lead_numer = (leads[0][1] * leads[1][1] * leads[2][1] * leads[3][1]) ** 3
    return lead_numer / (leads[4][1] ** 2 * leads[5][1] ** 11)


# Registry of explicit models #

@lru_cache(maxsize=8)
def _raw_registry(cfg_dir):
    raw = load_json_data(MODELS_FILE, cfg_dir)
    return {model['name']: model for model in raw['models']}


def registry_names(cfg_dir=None):
    return sorted(_raw_registry(cfg_dir))


def _parse_form(text, variables):
    """
    A multivariate polynomial over Q in the given variables
    """
    symbols = [Symbol(var) for var in variables]
    try:
        expr = parse_expr(text.replace('^', '**'), local_dict={str(sym): sym for sym in symbols})
    except (SyntaxError, TokenError, TypeError) as e:
        raise PolySyntaxError("Could not parse form ({})".format(e), text, 0)
    unknown = sorted(str(sym) for sym in expr.free_symbols - set(symbols))
    if unknown:
        raise PolySyntaxError("Unexpected variable '{}'".format(unknown[0]), text, text.find(unknown[0]))
    return Poly(expr, *symbols, domain=QQ)


def _eval_form(form, point):
    values = {gen: sympy.Rational(str(to_fraction(val))) for gen, val in zip(form.gens, point)}
    return to_fraction(form.as_expr().subs(values))


def _proportionality(lhs, rhs):
    """The rational lambda with lhs = lambda * rhs, or None"""
    if rhs == 0:
        return None
    ratio = sympy.cancel(lhs / rhs)
    if ratio.is_Rational:
        return to_fraction(ratio)
    return None


class RegistryModel(object):
    def __init__(self, raw):
        self.raw = raw
        self.name = raw['name']
        self.kind = raw['kind']
        self.genus = raw.get('genus')
        self.points = raw.get('points', [])
        self.description = raw.get('description')

    @property
    def exponent(self):
        if self.kind == HYPERELLIPTIC:
            return 2
        return self.raw.get('exponent')

    def equation_poly(self, printed=False):
        if self.kind not in (HYPERELLIPTIC, SUPERELLIPTIC):
            raise InvalidDataError("{} is not an affine y^m = f(x) model".format(self.name))
        text = self.raw['equation']
        if printed:
            text = self.raw.get('printed_equation', text)
        return parse_poly(text, var='x')

    def forms(self):
        if self.kind == PLANE_QUARTIC:
            return [_parse_form(self.raw['equation'], self.raw['variables'])]
        if self.kind == CANONICAL_GENUS4:
            return [_parse_form(text, self.raw['variables']) for text in self.raw['equations']]
        raise InvalidDataError("{} is not a projective model".format(self.name))

    def elliptic_curve(self):
        if self.kind != ELLIPTIC:
            raise InvalidDataError("{} is not an elliptic curve".format(self.name))
        return EllipticQ(*self.raw['ainvs'])

    def __str__(self):
        if self.kind in (HYPERELLIPTIC, SUPERELLIPTIC):
            return "y^{} = {}".format(self.exponent, self.raw['equation'])
        if self.kind == ELLIPTIC:
            return str(self.elliptic_curve())
        if self.kind == PLANE_QUARTIC:
            return "{} = 0".format(self.raw['equation'])
        return "; ".join(self.raw['equations'])

    def to_dict(self):
        entry = dict(self.raw)
        entry['model'] = str(self)
        return entry


def model_registry(name, cfg_dir=None):
    registry = _raw_registry(cfg_dir)
    if name not in registry:
        raise InvalidDataError("Unknown model '{}'; known models: {}".format(name, ", ".join(sorted(registry))))
    return RegistryModel(registry[name])


def computed_genus(name, cfg_dir=None):
    """
    Genus from the hyperelliptic or cyclic-cover formula; the stated genus for projective and level-22 models
    """
    model = model_registry(name, cfg_dir)
    if model.kind == HYPERELLIPTIC:
        return hyperelliptic_genus(model.equation_poly())
    if model.kind == SUPERELLIPTIC:
        return genus_cyclic_cover(model.exponent, model.equation_poly())
    if model.kind == ELLIPTIC:
        model.elliptic_curve()
        return 1
    return model.genus


def _infinity_rational(model):
    f = model.equation_poly()
    m = model.exponent
    if gcd(m, f.degree()) == 1:
        return True
    lead = to_fraction(f.LC())
    if lead < 0 and m % 2 == 0:
        return False
    return integer_nthroot(abs(lead.numerator), m)[1] and integer_nthroot(lead.denominator, m)[1]


def _point_residuals(model, point):
    if model.kind in (HYPERELLIPTIC, SUPERELLIPTIC):
        x, y = (to_fraction(val) for val in point)
        return [y ** model.exponent - poly_eval(model.equation_poly(), x)]
    if model.kind == ELLIPTIC:
        return [ec_residual(model.elliptic_curve(), point)]
    if model.kind == LEVEL22:
        x, y, s = (to_fraction(val) for val in point)
        residuals = [ec_residual(E11, (x, y))]
        if residuals[0] != 0:
            return residuals
        j_val = level11_J((x, y))
        residuals.append(None if j_val is POLE else s ** 2 + J_1728 - j_val)
        return residuals
    return [_eval_form(form, point) for form in model.forms()]


def verify_known_points(name, cfg_dir=None):
    """
    The residual of each stored point under the model's equations
    """
    model = model_registry(name, cfg_dir)
    report = []
    for point in model.points:
        if point == INFINITY.name:
            if model.kind == ELLIPTIC:
                on_curve = True
            else:
                on_curve = _infinity_rational(model)
            report.append({'point': point, 'residuals': [], 'on_curve': on_curve})
            continue
        residuals = _point_residuals(model, point)
        on_curve = all(res == 0 for res in residuals)
        if not on_curve:
            warning("Stored point {} is not on {}".format(point, name))
        report.append({'point': point, 'residuals': residuals, 'on_curve': on_curve})
    return report


def verify_canonical_points(name, printed=False, cfg_dir=None):
    model = model_registry(name, cfg_dir)
    if 'canonical' not in model.raw:
        raise InvalidDataError("{} has no canonical model".format(name))
    form = _parse_form(model.raw['canonical'], CANONICAL_VARS)
    key = 'printed_canonical_points' if printed else 'canonical_points'
    return [{'point': point, 'residual': _eval_form(form, point), 'on_curve': _eval_form(form, point) == 0}
            for point in model.raw.get(key, [])]


def determinantal_check(name, cfg_dir=None):
    """
    lambda with Q1*Q3 - Q2^2 = lambda * C for the stored quadrics and canonical quartic C, or None
    """
    model = model_registry(name, cfg_dir)
    if 'determinantal' not in model.raw:
        raise InvalidDataError("{} has no determinantal form".format(name))
    q1, q2, q3 = (_parse_form(text, CANONICAL_VARS).as_expr() for text in model.raw['determinantal'])
    quartic = _parse_form(model.raw['canonical'], CANONICAL_VARS).as_expr()
    return _proportionality(sympy.expand(q1 * q3 - q2 ** 2), quartic)


def canonical_affine_check(name, cfg_dir=None):
    """
    lambda with C(substitution) = lambda * (y^m - f(x)), comparing the canonical quartic with the affine model
    """
    model = model_registry(name, cfg_dir)
    if 'canonical_substitution' not in model.raw:
        raise InvalidDataError("{} has no canonical substitution".format(name))
    quartic = _parse_form(model.raw['canonical'], CANONICAL_VARS)
    mapping = {Symbol(var): _parse_form(text, AFFINE_VARS).as_expr()
               for var, text in model.raw['canonical_substitution'].items()}
    substituted = sympy.expand(quartic.as_expr().subs(mapping, simultaneous=True))
    relation = Symbol('y') ** model.exponent - model.equation_poly().as_expr()
    return _proportionality(substituted, sympy.expand(relation))
