# coding=utf-8

"""
Exact arithmetic substrate: rationals (fractions.Fraction), univariate polynomials over Q or F_p (sympy Poly),
rational functions in a normal form, and the text grammar used by every command and data file.
"""
import re
from fractions import Fraction
from math import gcd, isqrt
from functools import reduce
import sympy
from sympy import Poly, Symbol, QQ, ZZ, divisors
from sympy.ntheory.factor_ import core
from common_wrangler.common import InvalidDataError
from galois_fiber.gf_common import PolySyntaxError, BadPrimeError, POLE

__author__ = 'hmayes'


# Constants #

DEF_VAR = 'x'
TOKEN_PAT = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


# Conversions #

def to_fraction(val):
    """
    Converts ints, strings ("-3/7"), Fractions and sympy/gmpy rationals to a Fraction
    """
    if isinstance(val, Fraction):
        return val
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, str):
        try:
            return Fraction(val.strip())
        except ValueError:
            raise InvalidDataError("Could not convert '{}' to a rational number".format(val))
    if hasattr(val, 'numerator') and hasattr(val, 'denominator') and not callable(val.numerator):
        return Fraction(int(val.numerator), int(val.denominator))
    rat = sympy.Rational(val)
    return Fraction(int(rat.p), int(rat.q))


def is_poly(obj):
    return isinstance(obj, Poly)


def poly_modulus(f):
    """
    0 for polynomials over Q (or Z), p for polynomials over F_p
    """
    if f.domain.is_FiniteField:
        return int(f.domain.characteristic())
    return 0


def gen_of(f):
    return f.gens[0]


def as_qq(f):
    if f.domain == QQ:
        return f
    if poly_modulus(f):
        return Poly(coeffs_mod(f), gen_of(f), domain=QQ)
    return f.set_domain(QQ)


def coeffs_mod(f):
    """
    Descending coefficients of an F_p polynomial, each reduced to [0, p)
    """
    p = poly_modulus(f)
    return [int(c) % p for c in f.all_coeffs()]


def fraction_coeffs(f):
    """
    Descending coefficients as Fractions (residues in [0, p) over F_p)
    """
    if poly_modulus(f):
        return [Fraction(c) for c in coeffs_mod(f)]
    return [to_fraction(c) for c in f.all_coeffs()]


def poly_from_coeffs(coeffs, var=DEF_VAR, modulus=None):
    """
    Builds a Poly from descending coefficients over Q, or over F_p when modulus is given
    """
    gen = var if isinstance(var, Symbol) else Symbol(var)
    if modulus:
        return Poly([int(c) % modulus for c in coeffs], gen, modulus=modulus)
    return Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c for c in coeffs],
                gen, domain=QQ)


def reduce_mod(f, p):
    """
    Reduces a polynomial over Q to F_p. A prime dividing a coefficient denominator is a bad prime.
    """
    if poly_modulus(f) == p:
        return f
    residues = []
    for coeff in fraction_coeffs(f):
        if coeff.denominator % p == 0:
            raise BadPrimeError("Prime {} divides a coefficient denominator of {}".format(p, format_poly(f)))
        residues.append(coeff.numerator * pow(coeff.denominator, -1, p) % p)
    return Poly(residues, gen_of(f), modulus=p)


def poly_residues(f, p):
    """
    Ascending list of the coefficients of f reduced mod p
    """
    return list(reversed(coeffs_mod(reduce_mod(f, p))))


def poly_eval(f, t):
    """
    Exact Horner evaluation at a rational (over Q) or integer residue (over F_p)
    """
    p = poly_modulus(f)
    if p:
        val = 0
        for coeff in coeffs_mod(f):
            val = (val * t + coeff) % p
        return val
    val = Fraction(0)
    t = to_fraction(t)
    for coeff in fraction_coeffs(f):
        val = val * t + coeff
    return val


def _check_same_ring(a, b):
    if poly_modulus(a) != poly_modulus(b):
        raise InvalidDataError("Polynomials over different coefficient rings: {} and {}".format(a.domain, b.domain))
    if a.domain == ZZ or b.domain == ZZ:
        a, b = as_qq(a), as_qq(b)
    if a.gens != b.gens:
        b = Poly(b.all_coeffs(), gen_of(a), domain=b.domain)
    return a, b


def _check_nonzero(f):
    if f.is_zero:
        raise InvalidDataError("The zero polynomial is not a valid input here")


# Core operations #

def poly_gcd(a, b):
    """
    Monic greatest common divisor of two polynomials over the same ring; gcd(0, 0) is 0.
    """
    a, b = _check_same_ring(a, b)
    common = a.gcd(b)
    if common.is_zero:
        return common
    return common.monic()


def primitive_integer(f):
    """
    Splits f over Q as content * prim, with prim integral, content 1 and positive leading coefficient.

    :return: (Fraction content, Poly prim over QQ)
    """
    _check_nonzero(f)
    f = as_qq(f)
    coeffs = fraction_coeffs(f)
    den_lcm = reduce(lambda a, b: a * b // gcd(a, b), [c.denominator for c in coeffs], 1)
    int_coeffs = [int(c * den_lcm) for c in coeffs]
    num_gcd = reduce(gcd, [abs(c) for c in int_coeffs])
    if int_coeffs[0] < 0:
        num_gcd = -num_gcd
    prim = Poly([c // num_gcd for c in int_coeffs], gen_of(f), domain=QQ)
    return Fraction(num_gcd, den_lcm), prim


def square_decomposition(f):
    """
    Writes f over Q as c * h^2 * w with c a positive rational, h an integral polynomial and w the squarefree
    kernel of f: the product of the irreducible factors of odd multiplicity, primitive, with the sign of f.

    :return: (Fraction c, Poly h, Poly w)
    """
    _check_nonzero(f)
    f = as_qq(f)
    gen = gen_of(f)
    content, prim = primitive_integer(f)
    sqf_coeff, factors = Poly(prim.all_coeffs(), gen, domain=ZZ).sqf_list()
    h = Poly(1, gen, domain=QQ)
    w = Poly(1, gen, domain=QQ)
    for factor, mult in factors:
        factor = factor.set_domain(QQ)
        if mult // 2:
            h = h * factor ** (mult // 2)
        if mult % 2:
            w = w * factor
    c = content * to_fraction(sqf_coeff)
    if c < 0:
        c = -c
        w = -w
    return c, h, w


def squarefree_part(f):
    """
    The squarefree kernel w of f, so that f = c * h^2 * w with c > 0 (see square_decomposition)
    """
    return square_decomposition(f)[2]


def radical(f):
    """
    Product of the distinct irreducible factors of f, primitive integral with the sign of f
    """
    _check_nonzero(f)
    f = as_qq(f)
    rad = f.sqf_part()
    content, prim = primitive_integer(rad)
    if f.LC() < 0:
        prim = -prim
    return prim


def rational_roots(f):
    """
    The set of rational roots of f, found by testing every candidate p/q from the rational root theorem
    """
    _check_nonzero(f)
    f = as_qq(f)
    return {cand for cand in rational_root_candidates(f) if poly_eval(f, cand) == 0}


def rational_root_candidates(f):
    """
    All p/q with p dividing the lowest nonzero coefficient and q the leading coefficient of the primitive
    integer form, plus 0 when f(0) = 0
    """
    _check_nonzero(f)
    _, prim = primitive_integer(f)
    coeffs = [int(c) for c in fraction_coeffs(prim)]
    candidates = set()
    while coeffs[-1] == 0:
        candidates.add(Fraction(0))
        coeffs.pop()
    if len(coeffs) == 1:
        return candidates
    for num in divisors(abs(coeffs[-1])):
        for den in divisors(abs(coeffs[0])):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    return candidates


def squarefree_integer_core(val):
    """
    The squarefree integer d with val = d * (rational square); 0 for 0
    """
    val = to_fraction(val)
    if val == 0:
        return 0
    sign = -1 if val < 0 else 1
    return sign * int(core(abs(val.numerator) * val.denominator))


def is_rational_square(val):
    val = to_fraction(val)
    if val < 0:
        return False
    return isqrt(val.numerator) ** 2 == val.numerator and isqrt(val.denominator) ** 2 == val.denominator


# Rational functions #

class RatFunc(object):
    """
    numer/denom over Q in lowest terms with denom monic; immutable.
    """
    __slots__ = ('_numer', '_denom')

    def __init__(self, numer, denom=None):
        numer = as_qq(numer)
        if denom is None:
            denom = Poly(1, gen_of(numer), domain=QQ)
        numer, denom = _check_same_ring(numer, as_qq(denom))
        if denom.is_zero:
            raise InvalidDataError("Rational function with zero denominator")
        if numer.is_zero:
            denom = Poly(1, gen_of(numer), domain=QQ)
        else:
            common = numer.gcd(denom)
            numer = numer.exquo(common)
            denom = denom.exquo(common)
        lead = denom.LC()
        object.__setattr__(self, '_numer', numer.quo_ground(lead))
        object.__setattr__(self, '_denom', denom.monic())

    def __setattr__(self, key, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def numer(self):
        return self._numer

    @property
    def denom(self):
        return self._denom

    @property
    def var(self):
        return gen_of(self._numer)

    def is_constant(self):
        return self._numer.degree() <= 0 and self._denom.degree() == 0

    def degree(self):
        return max(self._numer.degree(), self._denom.degree())

    def constant_value(self):
        if not self.is_constant():
            raise InvalidDataError("{} is not constant".format(self))
        return to_fraction(self._numer.LC()) if not self._numer.is_zero else Fraction(0)

    def integer_pair(self):
        """
        Integral (f, g) with f/g equal to this function and no common integer content
        """
        coeffs = fraction_coeffs(self._numer) + fraction_coeffs(self._denom)
        den_lcm = reduce(lambda a, b: a * b // gcd(a, b), [c.denominator for c in coeffs], 1)
        num_gcd = reduce(gcd, [abs(int(c * den_lcm)) for c in coeffs])
        scale = sympy.Rational(den_lcm, num_gcd)
        return self._numer.mul_ground(scale), self._denom.mul_ground(scale)

    def __call__(self, t):
        return ratfunc_eval(self, t)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self._numer == other.numer and self._denom == other.denom

    def __hash__(self):
        return hash((str(self._numer.as_expr()), str(self._denom.as_expr())))

    def __str__(self):
        if self._denom.degree() == 0:
            return format_poly(self._numer)
        return "({})/({})".format(format_poly(self._numer), format_poly(self._denom))

    def __repr__(self):
        return "RatFunc({})".format(self)


def ratfunc_eval(ratfunc, t):
    """
    Exact value at the rational t, or POLE where the denominator vanishes
    """
    den_val = poly_eval(ratfunc.denom, t)
    if den_val == 0:
        return POLE
    return poly_eval(ratfunc.numer, t) / den_val


# Text grammar #

def format_poly(f):
    """
    Canonical text: descending terms, caret powers, explicit '*', integer or a/b coefficients
    """
    var = str(gen_of(f))
    coeffs = fraction_coeffs(f)
    if f.is_zero:
        return "0"
    deg = len(coeffs) - 1
    terms = []
    for idx, coeff in enumerate(coeffs):
        if coeff == 0:
            continue
        power = deg - idx
        sign = '-' if coeff < 0 else '+'
        mag = abs(coeff)
        if power == 0:
            body = str(mag)
        else:
            mono = var if power == 1 else "{}^{}".format(var, power)
            body = mono if mag == 1 else "{}*{}".format(mag, mono)
        terms.append((sign, body))
    text = ('-' if terms[0][0] == '-' else '') + terms[0][1]
    for sign, body in terms[1:]:
        text += sign + body
    return text


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = TOKEN_PAT.match(text, pos)
        if not match:
            bad_pos = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError("Unexpected character", text, bad_pos)
        start = match.start(match.lastindex)
        if match.group(1) is not None:
            tokens.append(('num', int(match.group(1)), start))
        elif match.group(2) is not None:
            tokens.append(('name', match.group(2), start))
        else:
            op = '^' if match.group(3) == '**' else match.group(3)
            tokens.append(('op', op, start))
        pos = match.end()
    return tokens


class _Parser(object):
    """
    Recursive descent over: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := ('+'|'-') unary | power; power := atom ('^' integer)?; atom := integer | name | '(' expr ')'.
    Values are (numerator, denominator) pairs of polynomials over Q.
    """
    def __init__(self, text, gen):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0
        self.gen = gen

    def _peek(self):
        if self.idx < len(self.tokens):
            return self.tokens[self.idx]
        return None

    def _error(self, message, token=None):
        pos = token[2] if token is not None else len(self.text)
        raise PolySyntaxError(message, self.text, pos)

    def _const(self, val):
        return Poly(val, self.gen, domain=QQ)

    def parse(self):
        if not self.tokens:
            raise PolySyntaxError("Empty polynomial expression", self.text, 0)
        value = self._expr()
        token = self._peek()
        if token is not None:
            self._error("Unexpected token '{}'".format(token[1]), token)
        return value

    def _expr(self):
        num, den = self._term()
        while True:
            token = self._peek()
            if token is None or token[0] != 'op' or token[1] not in '+-':
                return num, den
            self.idx += 1
            o_num, o_den = self._term()
            if token[1] == '+':
                num, den = num * o_den + o_num * den, den * o_den
            else:
                num, den = num * o_den - o_num * den, den * o_den

    def _term(self):
        num, den = self._unary()
        while True:
            token = self._peek()
            if token is None or token[0] != 'op' or token[1] not in '*/':
                if token is not None and token[0] in ('num', 'name') or (token is not None and token[1] == '('):
                    self._error("Missing explicit '*'", token)
                return num, den
            self.idx += 1
            o_num, o_den = self._unary()
            if token[1] == '*':
                num, den = num * o_num, den * o_den
            else:
                if o_num.is_zero:
                    self._error("Division by zero", token)
                num, den = num * o_den, den * o_num

    def _unary(self):
        token = self._peek()
        if token is not None and token[0] == 'op' and token[1] in '+-':
            self.idx += 1
            num, den = self._unary()
            return (-num, den) if token[1] == '-' else (num, den)
        return self._power()

    def _power(self):
        num, den = self._atom()
        token = self._peek()
        if token is not None and token[0] == 'op' and token[1] == '^':
            self.idx += 1
            exp_token = self._peek()
            if exp_token is None or exp_token[0] != 'num':
                self._error("Expected a non-negative integer exponent", exp_token)
            self.idx += 1
            return num ** exp_token[1], den ** exp_token[1]
        return num, den

    def _atom(self):
        token = self._peek()
        if token is None:
            self._error("Unexpected end of expression")
        self.idx += 1
        kind, val, _ = token
        if kind == 'num':
            return self._const(val), self._const(1)
        if kind == 'name':
            return Poly(self.gen, self.gen, domain=QQ), self._const(1)
        if val == '(':
            value = self._expr()
            close = self._peek()
            if close is None or close[1] != ')':
                self._error("Expected ')'", close)
            self.idx += 1
            return value
        self._error("Unexpected token '{}'".format(val), token)


def _pick_var(text, var):
    names = [(tok[1], tok[2]) for tok in _tokenize(text) if tok[0] == 'name']
    found = var
    for name, pos in names:
        if found is None:
            found = name
        elif name != found:
            raise PolySyntaxError("Unexpected variable '{}' (expected '{}')".format(name, found), text, pos)
    return Symbol(found or DEF_VAR)


def parse_ratfunc(text, var=None):
    """
    Parses a quotient expression such as "27*(t+1)*(t+9)^3/t^3" into a normal-form RatFunc
    """
    gen = _pick_var(text, var)
    num, den = _Parser(text, gen).parse()
    return RatFunc(num, den)


def parse_poly(text, var=None, modulus=None):
    """
    Parses the canonical polynomial grammar; division is allowed when the result is still a polynomial.
    With a modulus the result is reduced to F_p.
    """
    gen = _pick_var(text, var)
    num, den = _Parser(text, gen).parse()
    quo, rem = num.div(den)
    if not rem.is_zero:
        raise PolySyntaxError("Expression is not a polynomial", text, 0)
    if modulus:
        return reduce_mod(quo, modulus)
    return quo
