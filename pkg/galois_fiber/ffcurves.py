# coding=utf-8

"""
Hyperelliptic curves y^2 = w(x) over finite fields: point counts over F_{p^r} by vectorised enumeration, the
numerator of the zeta function, Jacobian orders, and Cantor arithmetic on Mumford representatives.
"""
import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from sympy import Poly, Symbol, isprime, factorint, n_order
from common_wrangler.common import InvalidDataError
from galois_fiber.gf_common import BadPrimeError, FieldTooLargeError, DEF_MAX_FIELD_SIZE, DEF_THREADS
from galois_fiber.exact import as_qq, reduce_mod, coeffs_mod, poly_gcd, format_poly, fraction_coeffs

__author__ = 'hmayes'


# Constants #

X_VAR = Symbol('x')
T_VAR = Symbol('T')


# Finite fields #

def _check_odd_prime(p):
    if p == 2:
        raise BadPrimeError("Characteristic 2 is excluded for models y^2 = w(x)")
    if p < 2 or not isprime(p):
        raise InvalidDataError("Expected an odd prime; found {}".format(p))


@lru_cache(maxsize=64)
def field_modulus(p, r):
    """
    The lexicographically least monic irreducible polynomial of degree r over F_p, as ascending coefficients
    """
    if r < 1:
        raise InvalidDataError("Extension degree must be positive; found {}".format(r))
    if r == 1:
        return 0, 1
    for tail in itertools.product(range(p), repeat=r):
        coeffs = [1] + list(tail)
        if Poly(coeffs, X_VAR, modulus=p).is_irreducible:
            return tuple(reversed(coeffs))
    raise InvalidDataError("No irreducible polynomial of degree {} over F_{}".format(r, p))


class FiniteField(object):
    """
    F_{p^r} = F_p[x]/(m(x)). Elements are rows of r ascending coefficients; element i of `elements` has base-p
    digits equal to its coefficients, so encode(elements) is arange(q).
    """
    def __init__(self, p, r=1, max_size=DEF_MAX_FIELD_SIZE):
        _check_odd_prime(p)
        self.p = p
        self.r = r
        self.q = p ** r
        if self.q > max_size:
            raise FieldTooLargeError("F_{}^{} has {} elements, beyond the enumeration limit {}".format(
                p, r, self.q, max_size))
        self.modulus = np.array(field_modulus(p, r)[:r], dtype=np.int64)
        self.powers = p ** np.arange(r, dtype=np.int64)
        idx = np.arange(self.q, dtype=np.int64)
        self.elements = (idx[:, None] // self.powers[None, :]) % p
        self._squares = None

    def encode(self, vals):
        return vals.dot(self.powers)

    def mul(self, a_vals, b_vals):
        r, p = self.r, self.p
        prod = np.zeros((a_vals.shape[0], 2 * r - 1), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                prod[:, i + j] += a_vals[:, i] * b_vals[:, j]
        prod %= p
        for k in range(2 * r - 2, r - 1, -1):
            lead = prod[:, k].copy()
            prod[:, k - r:k] -= lead[:, None] * self.modulus[None, :]
            prod[:, k] = 0
            prod %= p
        return prod[:, :r]

    def square_table(self):
        """Boolean table over encodings: True where the element is a square (zero included)"""
        if self._squares is None:
            table = np.zeros(self.q, dtype=bool)
            table[self.encode(self.mul(self.elements, self.elements))] = True
            self._squares = table
        return self._squares

    def poly_values(self, coeffs):
        """
        Encodings of w(x) for every x in the field, with w given by descending residues over F_p
        """
        vals = np.zeros((self.q, self.r), dtype=np.int64)
        for coeff in coeffs:
            vals = self.mul(vals, self.elements)
            vals[:, 0] = (vals[:, 0] + coeff) % self.p
        return self.encode(vals)

    def is_square_residue(self, residue):
        return bool(self.square_table()[residue % self.p])


def good_reduction(w, p):
    """
    w reduced mod p, after checking that p divides neither a denominator, lc(w) nor disc(w)
    """
    _check_odd_prime(p)
    w = as_qq(w)
    wp = reduce_mod(w, p)
    if wp.degree() != w.degree():
        raise BadPrimeError("Prime {} divides the leading coefficient of {}".format(p, format_poly(w)))
    if wp.degree() > 0 and poly_gcd(wp, wp.diff()).degree() > 0:
        raise BadPrimeError("Prime {} divides the discriminant of {}".format(p, format_poly(w)))
    return wp


def count_points(w, p, r=1, max_field_size=DEF_MAX_FIELD_SIZE):
    """
    #C(F_{p^r}) for the smooth projective model of y^2 = w(x): affine solutions plus 1 point at infinity for odd
    degree, or 2 for even degree when lc(w) is a square in F_{p^r}
    """
    wp = good_reduction(w, p)
    field = FiniteField(p, r, max_field_size)
    coeffs = coeffs_mod(wp)
    vals = field.poly_values(coeffs)
    squares = field.square_table()
    zeros = int(np.count_nonzero(vals == 0))
    nonzero_squares = int(np.count_nonzero(squares[vals] & (vals != 0)))
    count = zeros + 2 * nonzero_squares
    if wp.degree() % 2:
        return count + 1
    if field.is_square_residue(coeffs[0]):
        return count + 2
    return count


def count_points_many(w, p, degrees, threads=DEF_THREADS, max_field_size=DEF_MAX_FIELD_SIZE):
    """
    Counts over F_{p^r} for each r in degrees, in a pool of worker threads
    """
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(lambda r: count_points(w, p, r, max_field_size), degrees))


# Zeta functions #

def hyperelliptic_genus_of(w):
    return max(0, (as_qq(w).degree() - 1) // 2)


class ZetaData(object):
    """
    P1(T) = sum a_i T^i, the numerator of the zeta function of y^2 = w(x) over F_p
    """
    def __init__(self, p, genus, counts, coeffs):
        self.p = p
        self.genus = genus
        self.counts = counts
        self.coeffs = coeffs

    @property
    def poly(self):
        return Poly(list(reversed(self.coeffs)), T_VAR)

    @property
    def jacobian_order(self):
        return sum(self.coeffs)

    def functional_equation_holds(self):
        g, p = self.genus, self.p
        return all(self.coeffs[2 * g - i] == p ** (g - i) * self.coeffs[i] for i in range(g + 1))

    def hasse_weil_holds(self):
        bound = 2 * self.genus
        for r, count in enumerate(self.counts, start=1):
            # |N_r - (q + 1)| <= 2g sqrt(q), squared to stay in integers
            if (count - self.p ** r - 1) ** 2 > bound ** 2 * self.p ** r:
                return False
        return True

    def to_dict(self):
        return {'p': self.p, 'genus': self.genus, 'counts': self.counts, 'P1': self.coeffs,
                'P1_text': format_poly(self.poly), 'jacobian_order': self.jacobian_order}


def zeta_from_counts(p, genus, counts):
    """
    Newton's identities on S_r = p^r + 1 - N_r for the first genus coefficients, then the functional equation
    """
    coeffs = [Fraction(1)]
    power_sums = [p ** r + 1 - count for r, count in enumerate(counts[:genus], start=1)]
    for k in range(1, genus + 1):
        total = sum(power_sums[i - 1] * coeffs[k - i] for i in range(1, k + 1))
        coeffs.append(Fraction(-total, k))
    for k in range(genus + 1, 2 * genus + 1):
        coeffs.append(p ** (k - genus) * coeffs[2 * genus - k])
    if any(coeff.denominator != 1 for coeff in coeffs):
        raise InvalidDataError("Non-integral zeta coefficients {} from counts {}".format(coeffs, counts))
    return ZetaData(p, genus, list(counts[:genus]), [int(coeff) for coeff in coeffs])


# Jacobi sums for y^2 = a*x*(x^m + b) #

def binomial_form(w):
    """
    (a, m, b) with w = a*x*(x^m + b), m even and b nonzero; None for any other shape
    """
    coeffs = fraction_coeffs(as_qq(w))
    m = len(coeffs) - 2
    if m < 2 or m % 2 or coeffs[-1] != 0 or coeffs[-2] == 0 or any(coeffs[1:-2]):
        return None
    return coeffs[0], m, coeffs[-2] / coeffs[0]


def _residue(val, p):
    return val.numerator * pow(val.denominator, -1, p) % p


@lru_cache(maxsize=64)
def discrete_log_table(p, r):
    """
    log[e] for every nonzero encoding e of F_{p^r}, to the first generator of the multiplicative group; log[0] = -1
    """
    field = FiniteField(p, r, max_size=p ** r)
    one = field.elements[1:2]
    for cand in range(2, field.q):
        log = np.full(field.q, -1, dtype=np.int64)
        cur = one
        for i in range(field.q - 1):
            enc = int(field.encode(cur)[0])
            if log[enc] >= 0:
                break
            log[enc] = i
            cur = field.mul(cur, field.elements[cand:cand + 1])
        else:
            return log
    raise InvalidDataError("No generator found for F_{}^{}".format(p, r))


def jacobi_sums(field, log, m):
    """
    {u: J(lambda_u, chi)} for the characters lambda_u(g^i) = exp(2 pi i u i / (q - 1)) with lambda_u^m = chi, the
    quadratic character; J(lambda, chi) sums lambda(t) chi(1 - t) over t != 0, 1
    """
    order = field.q - 1
    half = order // 2
    exps = [u for u in range(order) if m * u % order == half]
    one_minus = (-field.elements) % field.p
    one_minus[:, 0] = (one_minus[:, 0] + 1) % field.p
    log_rest = log[field.encode(one_minus)]
    mask = (log >= 0) & (log_rest >= 0)
    roots = np.exp(2j * np.pi * np.arange(order) / order)
    return {u: roots[(u * log[mask] + half * log_rest[mask]) % order].sum() for u in exps}


def binomial_counts(form, p, genus, max_field_size=DEF_MAX_FIELD_SIZE):
    """
    N_r for r = 1..genus without enumerating F_{p^r}. Every character of order dividing 2m on F_{p^r} lifts from
    F_{p^d}, d = gcd(r, ord_{2m}(p)), so by Hasse-Davenport p^r + 1 - N_r is the sum of beta^(r/d) over
    beta = -chi(ab) lambda(-b) J(lambda, chi) on F_{p^d}; with no such lambda the sum is 0.
    """
    a, m, b = form
    a_res, b_res = _residue(a, p), _residue(b, p)
    ext_order = n_order(p, 2 * m)
    counts = []
    for r in range(1, genus + 1):
        d = gcd(r, ext_order)
        field = FiniteField(p, d, max_field_size)
        log = discrete_log_table(p, d)
        order = field.q - 1
        chi_ab = -1 if log[a_res * b_res % p] % 2 else 1
        minus_b = log[-b_res % p]
        trace = 0j
        for u, jac_sum in jacobi_sums(field, log, m).items():
            beta = -chi_ab * np.exp(2j * np.pi * (u * minus_b % order) / order) * jac_sum
            trace += beta ** (r // d)
        rounded = int(round(trace.real))
        if abs(trace.imag) > 1e-4 or abs(trace.real - rounded) > 1e-4:
            raise InvalidDataError("Jacobi sum trace {} over F_{}^{} is not an integer".format(trace, p, r))
        counts.append(p ** r + 1 - rounded)
    return counts


def binomial_zeta(w, p, max_field_size=DEF_MAX_FIELD_SIZE):
    good_reduction(w, p)
    form = binomial_form(w)
    if form is None:
        raise InvalidDataError("y^2 = {} is not of the form a*x*(x^m + b)".format(format_poly(w)))
    genus = hyperelliptic_genus_of(w)
    return zeta_from_counts(p, genus, binomial_counts(form, p, genus, max_field_size))


def zeta_numerator(w, p, threads=DEF_THREADS, max_field_size=DEF_MAX_FIELD_SIZE):
    good_reduction(w, p)
    genus = hyperelliptic_genus_of(w)
    if p ** genus > max_field_size and binomial_form(w) is not None:
        return binomial_zeta(w, p, max_field_size)
    counts = count_points_many(w, p, range(1, genus + 1), threads, max_field_size)
    return zeta_from_counts(p, genus, counts)


def jacobian_order(w, p, threads=DEF_THREADS, max_field_size=DEF_MAX_FIELD_SIZE):
    return zeta_numerator(w, p, threads, max_field_size).jacobian_order


def frobenius_charpoly_check(w, p, max_field_size=DEF_MAX_FIELD_SIZE):
    """
    The characteristic polynomial of Frobenius (P1 reversed) and its factorization over Q
    """
    zeta = zeta_numerator(w, p, max_field_size=max_field_size)
    charpoly = Poly(zeta.coeffs, T_VAR)
    _, factors = charpoly.factor_list()
    return {'p': p, 'P1': zeta.coeffs, 'charpoly': format_poly(charpoly),
            'factors': [[format_poly(factor), mult] for factor, mult in factors],
            'irreducible': len(factors) == 1 and factors[0][1] == 1}


# Mumford representatives and Cantor's algorithm #

class MumfordDivisor(object):
    """
    (u, v) over F_p with u monic, deg v < deg u <= g and u | v^2 - f, on y^2 = f(x) with f of odd degree
    """
    def __init__(self, curve, u, v):
        self.curve = curve
        self.u = u
        self.v = v

    def is_identity(self):
        return self.u.degree() == 0

    def key(self):
        return tuple(coeffs_mod(self.u)), tuple(coeffs_mod(self.v))

    def __eq__(self, other):
        return isinstance(other, MumfordDivisor) and self.curve is other.curve and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "<({}, {}) mod {}>".format(format_poly(self.u), format_poly(self.v), self.curve.p)

    def to_dict(self):
        return {'u': format_poly(self.u), 'v': format_poly(self.v)}


class JacobianFp(object):
    """
    The Jacobian of y^2 = f(x) over F_p for squarefree f of odd degree 2g + 1
    """
    def __init__(self, w, p):
        self.f = good_reduction(w, p)
        if self.f.degree() % 2 == 0:
            raise InvalidDataError("Cantor arithmetic needs an odd-degree model; {} has degree {}".format(
                format_poly(w), self.f.degree()))
        self.p = p
        self.genus = (self.f.degree() - 1) // 2
        self.gen = self.f.gens[0]

    def _poly(self, coeffs):
        return Poly(coeffs, self.gen, modulus=self.p)

    def identity(self):
        return MumfordDivisor(self, self._poly([1]), self._poly([0]))

    def _check(self, div):
        if div.curve is not self:
            raise InvalidDataError("Divisors lie on different Jacobians")

    def from_point(self, x0, y0):
        """[P - infinity] for the affine point P = (x0, y0)"""
        x0, y0 = x0 % self.p, y0 % self.p
        if (y0 * y0 - int(self.f.eval(x0))) % self.p:
            raise InvalidDataError("({}, {}) is not on y^2 = {} over F_{}".format(x0, y0, format_poly(self.f), self.p))
        return MumfordDivisor(self, self._poly([1, -x0]), self._poly([y0]))

    def neg(self, div):
        self._check(div)
        return MumfordDivisor(self, div.u, (-div.v).rem(div.u))

    def _reduce(self, u, v):
        while u.degree() > self.genus:
            u = (self.f - v ** 2).exquo(u)
            v = (-v).rem(u)
        u_monic = u.monic()
        return MumfordDivisor(self, u_monic, v.rem(u_monic))

    def add(self, div1, div2):
        """
        Composition then reduction
        """
        self._check(div1)
        self._check(div2)
        u1, v1, u2, v2 = div1.u, div1.v, div2.u, div2.v
        e1, e2, d0 = u1.gcdex(u2)
        v_sum = v1 + v2
        if v_sum.is_zero:
            # D + (-D), or doubling a point with y = 0: gcd(d0, 0) = d0
            s1, s2, s3, d = e1, e2, self._poly([0]), d0
        else:
            c1, c2, d = d0.gcdex(v_sum)
            s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2).exquo(d ** 2)
        v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + self.f)).exquo(d)
        return self._reduce(u, v.rem(u))

    def mul(self, n, div):
        if n < 0:
            return self.mul(-n, self.neg(div))
        result = self.identity()
        addend = div
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    def class_order(self, div, group_order):
        """
        Exact order of the class of div, descending from the group order through its prime factors
        """
        if not self.mul(group_order, div).is_identity():
            raise InvalidDataError("{} does not annihilate {}".format(group_order, div))
        order = group_order
        for prime in factorint(group_order):
            while order % prime == 0 and self.mul(order // prime, div).is_identity():
                order //= prime
        return order

    def curve_points(self):
        return curve_points(self.f, self.p)

    def reduced_divisors(self):
        """
        Every reduced representative (u, v) by exhaustive search; only for tiny p^g
        """
        divisors = []
        for deg in range(self.genus + 1):
            for u_tail in itertools.product(range(self.p), repeat=deg):
                u = self._poly([1] + list(u_tail))
                for v_coeffs in itertools.product(range(self.p), repeat=deg):
                    v = self._poly(list(v_coeffs) or [0])
                    if (v ** 2 - self.f).rem(u).is_zero:
                        divisors.append(MumfordDivisor(self, u, v))
        return divisors


def curve_points(w, p):
    """
    Affine F_p-points of y^2 = w(x), ordered by x then y
    """
    coeffs = [c % p for c in coeffs_mod(reduce_mod(as_qq(w), p))]
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    points = []
    for x in range(p):
        val = 0
        for coeff in coeffs:
            val = (val * x + coeff) % p
        points.extend((x, y) for y in roots.get(val, []))
    return points


def order_set(w, p, group_order=None):
    """
    The orders of [P - infinity] over all F_p-points P, the point at infinity contributing order 1
    """
    jac = JacobianFp(w, p)
    if group_order is None:
        group_order = jacobian_order(w, p)
    orders = {1}
    for x0, y0 in jac.curve_points():
        orders.add(jac.class_order(jac.from_point(x0, y0), group_order))
    return orders
