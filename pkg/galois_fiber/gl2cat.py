# coding=utf-8

"""
Finite subgroups of GL_2(Z/n): closure from generators, applicability tests, normal subgroups and quotients,
the Goursat fiber-product machinery, and the catalog of applicable prime-level subgroups with their j-maps.
"""
import re
import itertools
from math import gcd
from functools import lru_cache
from fractions import Fraction
from sympy import primitive_root, factorint, legendre_symbol, isprime
from common_wrangler.common import InvalidDataError
from galois_fiber.gf_common import (GroupTooLargeError, DEF_GROUP_SIZE_BOUND, CATALOG_FILE, load_json_data)

__author__ = 'hmayes'


# Constants #

GL_NAME = 'GL'
TRIVIAL_NAME = 'I'
ELLIPTIC11 = 'ELLIPTIC11'
NAMED_POLY_PAT = re.compile(r"\bP_(\d+)\b")

# catalog entry keys
NAME = 'name'
GENS = 'generators'
CONSTRUCT = 'construct'
JMAP = 'jmap'
LATTICE = 'lattice'
POLYS = 'polynomials'


# Matrix arithmetic on (a, b, c, d) tuples #

def identity():
    return 1, 0, 0, 1


def mat_reduce(mat, n):
    return tuple(entry % n for entry in mat)


def mat_mul(x, y, n):
    return ((x[0] * y[0] + x[1] * y[2]) % n, (x[0] * y[1] + x[1] * y[3]) % n,
            (x[2] * y[0] + x[3] * y[2]) % n, (x[2] * y[1] + x[3] * y[3]) % n)


def mat_det(mat, n):
    return (mat[0] * mat[3] - mat[1] * mat[2]) % n


def mat_trace(mat, n):
    return (mat[0] + mat[3]) % n


def mat_inv(mat, n):
    det_inv = pow(mat_det(mat, n), -1, n)
    return ((mat[3] * det_inv) % n, (-mat[1] * det_inv) % n, (-mat[2] * det_inv) % n, (mat[0] * det_inv) % n)


def mat_conj(g, x, n):
    """g x g^-1"""
    return mat_mul(mat_mul(g, x, n), mat_inv(g, n), n)


def minus_identity(n):
    return mat_reduce((-1, 0, 0, -1), n)


def units(n):
    return {u for u in range(n) if gcd(u, n) == 1}


def gl_order(n):
    """
    |GL_2(Z/n)|, multiplicative over prime powers
    """
    order = 1
    for p, k in factorint(n).items():
        order *= p ** (4 * (k - 1)) * (p * p - 1) * (p * p - p)
    return order


# Groups #

class FiniteMatrixGroup(object):
    """
    A subgroup of GL_2(Z/n) with its generators and its canonical (sorted) element tuple.
    Build with closure() or from_elements().
    """
    def __init__(self, modulus, generators, elements, name=None):
        self.modulus = modulus
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.element_set = frozenset(self.elements)
        self.name = name

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, mat):
        return mat_reduce(mat, self.modulus) in self.element_set

    def __eq__(self, other):
        if not isinstance(other, FiniteMatrixGroup):
            return NotImplemented
        return self.modulus == other.modulus and self.element_set == other.element_set

    def __hash__(self):
        return hash((self.modulus, self.element_set))

    def __repr__(self):
        label = self.name or 'group'
        return "<{} of order {} mod {}>".format(label, self.order, self.modulus)

    def to_dict(self):
        return {'name': self.name, 'modulus': self.modulus, 'order': self.order,
                'generators': [list(gen) for gen in self.generators]}


def _close(elements, kept, n, bound):
    queue = list(elements)
    idx = 0
    while idx < len(queue):
        x = queue[idx]
        idx += 1
        for gen in kept:
            y = mat_mul(x, gen, n)
            if y not in elements:
                elements.add(y)
                queue.append(y)
                if bound and len(elements) > bound:
                    raise GroupTooLargeError("Group generated mod {} exceeds the size bound {}".format(n, bound))


def closure(gens, n, name=None, bound=None):
    """
    The subgroup of GL_2(Z/n) generated by gens, by breadth-first closure under right multiplication.
    Redundant generators are skipped while closing; the reduced input generators are kept on the group.
    """
    reduced = []
    for gen in gens:
        gen = mat_reduce(gen, n)
        if gcd(mat_det(gen, n), n) != 1:
            raise InvalidDataError("Generator {} is not invertible mod {}".format(gen, n))
        reduced.append(gen)
    elements = {mat_reduce(identity(), n)}
    kept = []
    for gen in reduced:
        if gen in elements:
            continue
        kept.append(gen)
        _close(elements, kept, n, bound)
    return FiniteMatrixGroup(n, reduced, elements, name=name)


def small_generating_set(elements, n):
    """
    Greedy generating set: walk the sorted elements, keeping each one not yet generated
    """
    current = {mat_reduce(identity(), n)}
    kept = []
    target = len(set(elements))
    for mat in sorted(elements):
        if len(current) == target:
            break
        if mat in current:
            continue
        kept.append(mat)
        _close(current, kept, n, None)
    return kept


def from_elements(elements, n, name=None):
    """
    Wraps an element set already known to be a subgroup, attaching a small generating set
    """
    elements = set(mat_reduce(mat, n) for mat in elements)
    return FiniteMatrixGroup(n, small_generating_set(elements, n), elements, name=name)


def trivial_group(n):
    return closure([], n, name=TRIVIAL_NAME)


def _unit_generator(n):
    if n == 2:
        return 1
    return int(primitive_root(n))


def _check_odd_prime(p):
    if p < 3 or not isprime(p):
        raise InvalidDataError("Expected an odd prime modulus; found {}".format(p))


def general_linear(n):
    if isprime(n):
        g = _unit_generator(n)
        return closure([(g, 0, 0, 1), (1, 1, 0, 1), (0, 1, 1, 0)], n, name=GL_NAME)
    elements = [mat for mat in itertools.product(range(n), repeat=4) if gcd(mat_det(mat, n), n) == 1]
    return from_elements(elements, n, name=GL_NAME)


def borel(p):
    g = _unit_generator(p)
    return closure([(1, 1, 0, 1), (g, 0, 0, 1), (1, 0, 0, g)], p, name='B')


def split_cartan(p):
    g = _unit_generator(p)
    return closure([(g, 0, 0, 1), (1, 0, 0, g)], p, name='C_spl')


def split_normalizer(p):
    g = _unit_generator(p)
    return closure([(g, 0, 0, 1), (1, 0, 0, g), (0, 1, 1, 0)], p, name='N_spl')


def nonsplit_epsilon(p):
    """
    -1 when p = 3 mod 4, otherwise the least integer >= 2 that is not a square mod p
    """
    _check_odd_prime(p)
    if p % 4 == 3:
        return -1
    eps = 2
    while legendre_symbol(eps, p) == 1:
        eps += 1
    return eps


def nonsplit_cartan(p):
    eps = nonsplit_epsilon(p)
    elements = [(a, (b * eps) % p, b, a) for a in range(p) for b in range(p) if a or b]
    return from_elements(elements, p, name='C_nsp')


def nonsplit_normalizer(p):
    cartan = nonsplit_cartan(p)
    return closure(list(cartan.generators) + [(1, 0, 0, -1)], p, name='N_nsp')


def scalar_subgroup(n):
    return from_elements([(u, 0, 0, u) for u in units(n)], n, name='scalars')


STANDARD_GROUPS = {GL_NAME: general_linear, TRIVIAL_NAME: trivial_group, 'B': borel,
                   'C_spl': split_cartan, 'N_spl': split_normalizer, 'C_nsp': nonsplit_cartan,
                   'N_nsp': nonsplit_normalizer, 'scalars': scalar_subgroup}
# catalog "construct" values
CONSTRUCTIONS = {'borel': borel, 'split_cartan': split_cartan, 'split_normalizer': split_normalizer,
                 'nonsplit_cartan': nonsplit_cartan, 'nonsplit_normalizer': nonsplit_normalizer}


# Group queries #

def contains_minus_identity(group):
    return minus_identity(group.modulus) in group.element_set


def plus_minus(group):
    """±G: the group generated by G and -I"""
    return closure(list(group.generators) + [minus_identity(group.modulus)], group.modulus)


def determinants(group):
    return {mat_det(mat, group.modulus) for mat in group.elements}


def is_subgroup(sub, group):
    return sub.modulus == group.modulus and sub.element_set <= group.element_set


def is_normal(sub, group):
    if not is_subgroup(sub, group):
        return False
    n = group.modulus
    for g in group.generators:
        for x in small_generating_set(sub.elements, n):
            if mat_conj(g, x, n) not in sub.element_set:
                return False
    return True


def normal_closure(mats, group):
    """
    The smallest normal subgroup of group containing mats
    """
    n = group.modulus
    elements = {mat_reduce(identity(), n)}
    kept = []
    pending = [mat_reduce(mat, n) for mat in mats]
    while pending:
        mat = pending.pop()
        if mat in elements:
            continue
        kept.append(mat)
        _close(elements, kept, n, None)
        pending.extend(mat_conj(g, mat, n) for g in group.generators)
        pending.extend(mat_conj(g, k, n) for g in group.generators for k in kept)
    return FiniteMatrixGroup(n, kept, elements)


def conjugacy_classes(group):
    n = group.modulus
    seen = set()
    classes = []
    for mat in group.elements:
        if mat in seen:
            continue
        orbit = {mat}
        queue = [mat]
        while queue:
            x = queue.pop()
            for g in group.generators:
                y = mat_conj(g, x, n)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
        classes.append(sorted(orbit))
    return classes


def _check_bound(group, bound):
    if bound is None:
        bound = DEF_GROUP_SIZE_BOUND
    if group.order > bound:
        raise GroupTooLargeError("Group {} of order {} exceeds the size bound {}".format(group, group.order, bound))


def normal_subgroups(group, bound=None):
    """
    All normal subgroups, sorted by order: normal closures of the conjugacy classes, then all their joins.
    """
    _check_bound(group, bound)
    n = group.modulus
    found = {}
    for conj_class in conjugacy_classes(group):
        sub = closure(conj_class, n)
        found.setdefault(sub.element_set, sub)
    subs = list(found.values())
    idx = 0
    while idx < len(subs):
        for other in subs[:idx]:
            joined = closure(small_generating_set(subs[idx].elements, n) +
                             small_generating_set(other.elements, n), n)
            if joined.element_set not in found:
                found[joined.element_set] = joined
                subs.append(joined)
        idx += 1
    return sorted(found.values(), key=lambda sub: (sub.order, sub.elements))


class Quotient(object):
    """
    G/N as coset labels 0..k-1 (label 0 is N); products are computed from coset representatives on demand.
    """
    def __init__(self, group, normal):
        self.group = group
        self.normal = normal
        n = group.modulus
        self.labels = {}
        self.reps = []
        for mat in [mat_reduce(identity(), n)] + list(group.elements):
            if mat in self.labels:
                continue
            label = len(self.reps)
            self.reps.append(mat)
            for x in normal.elements:
                self.labels[mat_mul(mat, x, n)] = label
        self._products = {}
        self._orders = None
        self._gens = None

    @property
    def order(self):
        return len(self.reps)

    def label(self, mat):
        return self.labels[mat_reduce(mat, self.group.modulus)]

    def mul(self, i, j):
        key = (i, j)
        if key not in self._products:
            self._products[key] = self.labels[mat_mul(self.reps[i], self.reps[j], self.group.modulus)]
        return self._products[key]

    def element_order(self, i):
        power = i
        order = 1
        while power != 0:
            power = self.mul(power, i)
            order += 1
        return order

    def element_orders(self):
        if self._orders is None:
            self._orders = [self.element_order(i) for i in range(self.order)]
        return self._orders

    def generators(self):
        if self._gens is None:
            reached = {0}
            gens = []
            for i in range(self.order):
                if i in reached:
                    continue
                gens.append(i)
                queue = list(reached)
                while queue:
                    x = queue.pop()
                    for g in gens:
                        y = self.mul(x, g)
                        if y not in reached:
                            reached.add(y)
                            queue.append(y)
            self._gens = gens
        return self._gens


def quotient(group, normal):
    if not is_normal(normal, group):
        raise InvalidDataError("Subgroup of order {} is not normal in {}".format(normal.order, group))
    return Quotient(group, normal)


def _extend_hom(q0, q1, gens, images):
    mapping = {0: 0}
    queue = [0]
    while queue:
        x = queue.pop()
        for gen, img in zip(gens, images):
            y = q0.mul(x, gen)
            y_img = q1.mul(mapping[x], img)
            if y in mapping:
                if mapping[y] != y_img:
                    return None
            else:
                mapping[y] = y_img
                queue.append(y)
    if len(set(mapping.values())) != q1.order:
        return None
    return mapping


def quotient_isomorphisms(q0, q1, first_only=False):
    """
    Isomorphisms q0 -> q1 as label dicts, by backtracking over images of the generators of q0 with matching
    element orders.
    """
    if q0.order != q1.order or sorted(q0.element_orders()) != sorted(q1.element_orders()):
        return []
    gens = q0.generators()
    orders1 = q1.element_orders()
    candidates = [[j for j in range(q1.order) if orders1[j] == q0.element_orders()[gen]] for gen in gens]
    isos = []
    for images in itertools.product(*candidates):
        mapping = _extend_hom(q0, q1, gens, images)
        if mapping is not None:
            isos.append(mapping)
            if first_only:
                break
    return isos


class GoursatTriple(object):
    """
    Normal subgroups N0, N1 with an isomorphism G0/N0 -> G1/N1; psi0 and psi1 send group elements to the common
    quotient labels of G0/N0.
    """
    def __init__(self, quotient0, quotient1, iso):
        self.quotient0 = quotient0
        self.quotient1 = quotient1
        self.iso = iso
        self.kernel0 = quotient0.normal
        self.kernel1 = quotient1.normal

    @property
    def order(self):
        return self.quotient0.order

    def psi0(self):
        return dict(self.quotient0.labels)

    def psi1(self):
        inverse = {img: src for src, img in self.iso.items()}
        return {mat: inverse[label] for mat, label in self.quotient1.labels.items()}

    def to_dict(self):
        return {'quotient_order': self.order, 'kernel_orders': [self.kernel0.order, self.kernel1.order]}


def common_quotients(group0, group1, bound=None):
    """
    All (N0, N1, iso) with G0/N0 isomorphic to G1/N1 of order > 1, one explicit isomorphism each
    """
    normals0 = normal_subgroups(group0, bound)
    normals1 = normal_subgroups(group1, bound)
    triples = []
    for normal0 in normals0:
        index = group0.order // normal0.order
        if index == 1:
            continue
        for normal1 in normals1:
            if group1.order // normal1.order != index:
                continue
            q0 = Quotient(group0, normal0)
            q1 = Quotient(group1, normal1)
            isos = quotient_isomorphisms(q0, q1, first_only=True)
            if isos:
                triples.append(GoursatTriple(q0, q1, isos[0]))
    return triples


def crt_embed(mat0, mat1, n0, n1):
    """
    The matrix mod n0*n1 reducing to mat0 mod n0 and to mat1 mod n1, entrywise
    """
    e0 = n1 * pow(n1, -1, n0)
    e1 = n0 * pow(n0, -1, n1)
    modulus = n0 * n1
    return tuple((a * e0 + b * e1) % modulus for a, b in zip(mat0, mat1))


def graph_subgroup(group0, group1, psi0, psi1, name=None, quotient=None):
    """
    {(g0, g1): psi0(g0) = psi1(g1)} inside G0 x G1, realized mod n0*n1 through crt_embed. With a quotient given,
    both maps must hit every one of its coset labels.
    """
    n0, n1 = group0.modulus, group1.modulus
    if gcd(n0, n1) != 1:
        raise InvalidDataError("Moduli {} and {} are not coprime".format(n0, n1))
    images = [set(psi0[g] for g in group0.elements), set(psi1[g] for g in group1.elements)]
    if quotient is not None:
        for idx, image in enumerate(images):
            if image != set(range(quotient.order)):
                raise InvalidDataError("psi{} reaches {} of the {} cosets; expected a surjection"
                                       "".format(idx, len(image), quotient.order))
    if images[0] != images[1]:
        raise InvalidDataError("The maps do not have a common image")
    fibers = {}
    for g1 in group1.elements:
        fibers.setdefault(psi1[g1], []).append(g1)
    elements = [crt_embed(g0, g1, n0, n1) for g0 in group0.elements for g1 in fibers[psi0[g0]]]
    return from_elements(elements, n0 * n1, name=name)


def direct_product(group0, group1):
    return graph_subgroup(group0, group1, {g: 0 for g in group0.elements}, {g: 0 for g in group1.elements})


def project(group, m):
    if group.modulus % m:
        raise InvalidDataError("{} does not divide the modulus {}".format(m, group.modulus))
    return closure(list(group.generators), m)


# Applicability #

def _fixes_order_n_point(mat, n):
    a, b, c, d = mat
    for x, y in itertools.product(range(n), repeat=2):
        if gcd(gcd(x, y), n) != 1:
            continue
        if ((a - 1) * x + b * y) % n == 0 and (c * x + (d - 1) * y) % n == 0:
            return True
    return False


def _complex_conjugation_candidates(group, need_fixed_point):
    n = group.modulus
    for mat in group.elements:
        if mat_trace(mat, n) == 0 and mat_det(mat, n) == (-1) % n:
            if not need_fixed_point or _fixes_order_n_point(mat, n):
                return mat
    return None


def applicability_report(group):
    n = group.modulus
    witness = _complex_conjugation_candidates(group, True)
    return {'proper': group.order < gl_order(n),
            'contains_minus_identity': contains_minus_identity(group),
            'surjective_det': determinants(group) == units(n),
            'witness': witness}


def is_applicable(group):
    """
    (True, witness) when G is proper, contains -I, has surjective determinant and contains a trace-0,
    determinant -1 element fixing a point of order n; (False, None) otherwise
    """
    report = applicability_report(group)
    if report['proper'] and report['contains_minus_identity'] and report['surjective_det'] and \
            report['witness'] is not None:
        return True, report['witness']
    return False, None


def has_rzb_conditions(group):
    """
    Determinant surjective and a trace-0, determinant -1 element present; the genus condition is not checked
    """
    n = group.modulus
    factors = factorint(n)
    if list(factors.keys()) != [2]:
        raise InvalidDataError("Expected a power of 2 modulus; found {}".format(n))
    return determinants(group) == units(n) and _complex_conjugation_candidates(group, False) is not None


# Genus of the associated modular curve #

@lru_cache(maxsize=16)
def special_linear(n):
    """SL_2(Z/n), generated by the images of S and T"""
    return closure([(0, -1, 1, 0), (1, 1, 0, 1)], n, name='SL')


def _right_coset_labels(sub_elements, group_elements, n):
    labels = {}
    reps = []
    for g in group_elements:
        if g in labels:
            continue
        for h in sub_elements:
            labels[mat_mul(h, g, n)] = len(reps)
        reps.append(g)
    return labels, reps


def _count_cycles(perm):
    seen = set()
    cycles = 0
    for start in range(len(perm)):
        if start in seen:
            continue
        cycles += 1
        idx = start
        while idx not in seen:
            seen.add(idx)
            idx = perm[idx]
    return cycles


def modular_genus(group):
    """
    Genus of a geometric component of the modular curve attached to group, from the action of S, ST and T on the
    right cosets of (±G ∩ SL_2) in SL_2(Z/n): g = 1 + mu/12 - nu2/4 - nu3/3 - nu_inf/2

    :return: a dict with the genus and the counts it is built from
    """
    n = group.modulus
    kernel = [mat for mat in plus_minus(group).elements if mat_det(mat, n) == 1 % n]
    labels, reps = _right_coset_labels(kernel, special_linear(n).elements, n)
    s_mat = mat_reduce((0, -1, 1, 0), n)
    t_mat = mat_reduce((1, 1, 0, 1), n)
    st_mat = mat_mul(s_mat, t_mat, n)
    mu = len(reps)
    nu2 = sum(1 for idx, rep in enumerate(reps) if labels[mat_mul(rep, s_mat, n)] == idx)
    nu3 = sum(1 for idx, rep in enumerate(reps) if labels[mat_mul(rep, st_mat, n)] == idx)
    nu_inf = _count_cycles([labels[mat_mul(rep, t_mat, n)] for rep in reps])
    genus = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    if genus.denominator != 1:
        raise InvalidDataError("Non-integral genus {} computed for {}".format(genus, group))
    return {'genus': int(genus), 'index': mu, 'elliptic_2': nu2, 'elliptic_3': nu3, 'cusps': nu_inf}


# Catalog #

class CatalogEntry(object):
    def __init__(self, level, name, group, jmap=None, description=None, note=None, printed=None):
        self.level = level
        self.name = name
        self.group = group
        self.jmap = jmap
        self.description = description
        self.note = note
        self.printed = printed or {}

    @property
    def contains_minus_identity(self):
        return contains_minus_identity(self.group)

    @property
    def ref(self):
        return "{}:{}".format(self.level, self.name)

    def to_dict(self):
        entry = {'level': self.level, 'name': self.name, 'order': self.group.order,
                 'index': gl_order(self.level) // self.group.order,
                 'contains_minus_I': self.contains_minus_identity, 'jmap': self.jmap,
                 'generators': [list(gen) for gen in self.group.generators]}
        if self.description:
            entry['description'] = self.description
        if self.note:
            entry['note'] = self.note
        return entry


def expand_named_polys(text, polys):
    """Replaces references such as P_3 by the parenthesized polynomial text"""
    def _sub(match):
        key = 'P_' + match.group(1)
        if key not in polys:
            raise InvalidDataError("Unknown named polynomial '{}' in '{}'".format(key, text))
        return "(" + polys[key] + ")"
    return NAMED_POLY_PAT.sub(_sub, text)


@lru_cache(maxsize=8)
def _raw_catalog(cfg_dir):
    return load_json_data(CATALOG_FILE, cfg_dir)


def catalog_levels(cfg_dir=None):
    return sorted(int(level) for level in _raw_catalog(cfg_dir)['levels'])


def _level_data(level, cfg_dir):
    levels = _raw_catalog(cfg_dir)['levels']
    if str(level) not in levels:
        raise InvalidDataError("No catalog data for level {}; available levels: {}".format(
            level, ", ".join(str(lvl) for lvl in catalog_levels(cfg_dir))))
    return levels[str(level)]


@lru_cache(maxsize=256)
def _build_entry(level, name, cfg_dir):
    level_data = _level_data(level, cfg_dir)
    for raw in level_data['entries']:
        if raw[NAME] != name:
            continue
        if CONSTRUCT in raw:
            group = CONSTRUCTIONS[raw[CONSTRUCT]](level)
        else:
            group = closure([tuple(gen) for gen in raw[GENS]], level)
        group.name = name
        jmap = raw.get(JMAP)
        if jmap:
            jmap = expand_named_polys(jmap, level_data.get(POLYS, {}))
        printed = {key: raw[key] for key in ('printed_generators', 'printed_jmap') if key in raw}
        return CatalogEntry(level, name, group, jmap=jmap, description=raw.get('description'),
                            note=raw.get('note'), printed=printed)
    known = [raw[NAME] for raw in level_data['entries']]
    raise InvalidDataError("Unknown catalog name '{}' at level {}; known names: {}".format(
        name, level, ", ".join(known)))


def catalog_lookup(level, name, cfg_dir=None):
    """
    The catalog entry with its group materialized
    """
    return _build_entry(level, name, cfg_dir)


def catalog_entries(level, cfg_dir=None):
    return [catalog_lookup(level, raw[NAME], cfg_dir) for raw in _level_data(level, cfg_dir)['entries']]


@lru_cache(maxsize=64)
def _standard_group(level, name):
    group = STANDARD_GROUPS[name](level)
    group.name = name
    return group


def resolve_group(level, name, cfg_dir=None):
    """
    A catalog group, or one of the standard groups (GL, I, B, C_spl, N_spl, C_nsp, N_nsp, scalars)
    """
    if name in STANDARD_GROUPS:
        return _standard_group(level, name)
    return catalog_lookup(level, name, cfg_dir).group


def composite_index(name0, name1, n0, n1, cfg_dir=None):
    """
    [GL_2(Z/n0) x GL_2(Z/n1) : H0 x H1]
    """
    if gcd(n0, n1) != 1:
        raise InvalidDataError("Moduli {} and {} are not coprime".format(n0, n1))
    order0 = resolve_group(n0, name0, cfg_dir).order
    order1 = resolve_group(n1, name1, cfg_dir).order
    return gl_order(n0) * gl_order(n1) // (order0 * order1)


def lattice_report(level, cfg_dir=None):
    """
    For each printed lattice edge (upper, lower, label): containment, computed index, and agreement with the label
    """
    report = []
    for upper_name, lower_name, label in _level_data(level, cfg_dir).get(LATTICE, []):
        upper = resolve_group(level, upper_name, cfg_dir)
        lower = resolve_group(level, lower_name, cfg_dir)
        contained = is_subgroup(lower, upper)
        index = Fraction(upper.order, lower.order)
        if label is None:
            agrees = None
        else:
            agrees = contained and index == label
        report.append({'upper': upper_name, 'lower': lower_name, 'label': label, 'contained': contained,
                       'index': index, 'agrees': agrees})
    return report
