#!/usr/bin/env python
# coding=utf-8

"""
Command-line front end: each subcommand runs one workflow (catalog lookups, composite models, zeta functions,
point searches, descent, the rank-0 sieve and the entanglement checks) and prints a JSON report.
"""
import argparse
import json
import re
import sys
import time
from configparser import MissingSectionHeaderError
from sympy import primerange
from common_wrangler.common import InvalidDataError, warning, str_to_file, GOOD_RET, INPUT_ERROR
from galois_fiber import __version__
from galois_fiber.gf_common import (read_cfg, default_cfg, parse_int_list, to_json_ready, INFINITY, SCHEMA_VERSION,
                                    INCONCLUSIVE_RET, FILE_ERROR_RET, THREADS, MAX_FIELD_SIZE, GROUP_SIZE_BOUND,
                                    HENSEL_DEPTH, DATA_DIR_KEY)
from galois_fiber.exact import parse_poly, as_qq, to_fraction, format_poly
from galois_fiber.gl2cat import catalog_entries, catalog_levels, lattice_report
from galois_fiber.models import (read_jmap_file, jmap_for, jmap_preimages, fiber_product, census, model_registry,
                                 registry_names, computed_genus, verify_known_points, ec_discriminant, PLANE_QUARTIC)
from galois_fiber.ffcurves import zeta_numerator
from galois_fiber.ratpoints import (RationalPoint, search_points, search_plane_points, bad_primes,
                                    local_solubility_table, DEF_PLACES)
from galois_fiber.sieve import torsion_bound, mw_sieve_rank0, classify_j, INCONCLUSIVE
from galois_fiber.entangle import (goursat_filter, index_tower_23, gauss_k, gauss_cubic_report, gauss_curve,
                                   rubin_silverberg_family, rubin_silverberg_Et, brau_jones_j, xhpp_solve)

__author__ = 'hmayes'


# Constants #

PROG = 'galois-fiber'
DEF_TORSION_PRIME_LIMIT = 60
DEF_HEIGHT = 1000
DEF_PLANE_HEIGHT = 25
INFINITY_NAMES = ('oo', 'inf', 'infinity')
# names such as 'H_{3,1}' contain commas, so split only before the next 'level:'
PAIR_SPLIT_PAT = re.compile(r",\s*(?=\d+\s*:)")

# Report tags
TAGS = {'catalog': 'subgroup catalog',
        'lattice': 'subgroup lattice',
        'model': 'fibered product model',
        'census': 'composite genus census',
        'registry': 'explicit model registry',
        'zeta': 'zeta numerator',
        'search': 'rational point search',
        'descent': 'etale descent',
        'sieve': 'rank-0 Mordell-Weil sieve',
        'entangle': 'Goursat entanglement filter',
        'gauss': 'Gaussian period family',
        'braujones': '(2,3) entanglement maps',
        }


# Subcommands #

def _cfg_dir(cfg):
    return cfg.get(DATA_DIR_KEY) or None


def _threads(args, cfg):
    return args.threads if args.threads else cfg[THREADS]


def _hensel_depth(cfg):
    return cfg[HENSEL_DEPTH] or None


def parse_base(text):
    """
    'oo' for the point at infinity, otherwise 'x,y' with integer or a/b coordinates
    """
    if text.strip().lower() in INFINITY_NAMES:
        return RationalPoint(INFINITY)
    coords = text.split(',')
    if len(coords) != 2:
        raise InvalidDataError("Expected a base point 'x,y' or 'oo'; found '{}'".format(text))
    return RationalPoint(to_fraction(coords[0]), to_fraction(coords[1]))


def parse_pair(text):
    refs = [ref.strip() for ref in PAIR_SPLIT_PAT.split(text)]
    if len(refs) != 2:
        raise InvalidDataError("Expected two catalog references such as '2:G_3,5:G_9'; found '{}'".format(text))
    return refs


def run_catalog(args, cfg):
    cfg_dir = _cfg_dir(cfg)
    if args.level is None:
        return {'levels': catalog_levels(cfg_dir)}, GOOD_RET
    entries = catalog_entries(args.level, cfg_dir)
    return {'level': args.level, 'count': len(entries), 'entries': [entry.to_dict() for entry in entries]}, GOOD_RET


def run_lattice(args, cfg):
    edges = lattice_report(args.level, _cfg_dir(cfg))
    for edge in edges:
        if edge['agrees'] is False:
            warning("Lattice edge {} > {} labelled {} has computed index {} (contained: {})"
                    "".format(edge['upper'], edge['lower'], edge['label'], edge['index'], edge['contained']))
    return {'level': args.level, 'edges': edges}, GOOD_RET


def run_model(args, cfg):
    cfg_dir = _cfg_dir(cfg)
    extra = read_jmap_file(args.jmap_file) if args.jmap_file else None
    left_map = jmap_for(args.left, cfg_dir, extra)
    right_map = jmap_for(args.right, cfg_dir, extra)
    product = fiber_product(left_map, right_map, args.left, args.right)
    result = product.to_dict()
    if product.reduced is not None:
        result['identity_holds'] = product.reduced.check_identity()
    return result, GOOD_RET


def run_census(args, cfg):
    extra = read_jmap_file(args.jmap_file) if args.jmap_file else None
    rows = census(args.pair_left, args.level, _cfg_dir(cfg), _threads(args, cfg), extra)
    genera = sorted(row['genus'] for row in rows if row['genus'] is not None)
    return {'left': args.pair_left, 'level': args.level, 'rows': rows, 'genus_multiset': genera}, GOOD_RET


def run_registry(args, cfg):
    cfg_dir = _cfg_dir(cfg)
    if args.name is None:
        return {'models': registry_names(cfg_dir)}, GOOD_RET
    model = model_registry(args.name, cfg_dir)
    result = model.to_dict()
    result['computed_genus'] = computed_genus(args.name, cfg_dir)
    result['known_points'] = verify_known_points(args.name, cfg_dir)
    return result, GOOD_RET


def run_zeta(args, cfg):
    w = parse_poly(args.curve)
    zeta = zeta_numerator(w, args.prime, _threads(args, cfg), cfg[MAX_FIELD_SIZE])
    result = zeta.to_dict()
    result['curve'] = w
    result['functional_equation'] = zeta.functional_equation_holds()
    result['hasse_weil'] = zeta.hasse_weil_holds()
    return result, GOOD_RET


def run_search(args, cfg):
    if (args.curve is None) == (args.model is None):
        raise InvalidDataError("Specify exactly one of '--curve' or '--model'")
    if args.model is not None:
        model = model_registry(args.model, _cfg_dir(cfg))
        if model.kind == PLANE_QUARTIC:
            height = args.height if args.height else DEF_PLANE_HEIGHT
            points = search_plane_points(model.forms()[0], height)
            return {'model': args.model, 'height': height, 'count': len(points), 'points': points}, GOOD_RET
        w = model.equation_poly()
        if model.exponent != 2:
            raise InvalidDataError("Point search handles y^2 = w(x) and plane quartic models; {} has "
                                   "exponent {}".format(args.model, model.exponent))
    else:
        w = parse_poly(args.curve)
    height = args.height if args.height else DEF_HEIGHT
    points = search_points(w, height, _threads(args, cfg))
    return {'curve': w, 'height': height, 'count': len(points), 'points': points}, GOOD_RET


def run_descent(args, cfg):
    w = parse_poly(args.curve)
    factor_texts = [text for text in args.factors.split(';') if text.strip()]
    if len(factor_texts) != 2:
        raise InvalidDataError("Expected two factors separated by ';'; found '{}'".format(args.factors))
    f1, f2 = (parse_poly(text, var=str(w.gens[0])) for text in factor_texts)
    if as_qq(f1 * f2) != as_qq(w):
        raise InvalidDataError("The factors multiply to {}, not {}".format(format_poly(f1 * f2), format_poly(w)))
    primes = parse_int_list(args.bad_primes) if args.bad_primes else bad_primes(w)
    places = args.places.split(',') if args.places else DEF_PLACES
    table = local_solubility_table(f1, f2, primes, places, _hensel_depth(cfg))
    survivors = [row['d'] for row in table if row['soluble']]
    return {'curve': w, 'factors': [f1, f2], 'bad_primes': primes, 'twists': table, 'survivors': survivors}, \
        GOOD_RET


def run_sieve(args, cfg):
    w = parse_poly(args.curve)
    threads = _threads(args, cfg)
    base = parse_base(args.base)
    primes = parse_int_list(args.primes)
    result = {'curve': w, 'base': base}
    bound = args.bound
    if bound is None:
        torsion_primes = list(primerange(3, args.torsion_limit))
        bound = torsion_bound(w, torsion_primes, threads, cfg[MAX_FIELD_SIZE])
        result['torsion_primes'] = torsion_primes
    verdict = mw_sieve_rank0(w, base, bound, primes, threads)
    result.update(verdict.to_dict())
    if verdict.status == INCONCLUSIVE:
        return result, INCONCLUSIVE_RET
    return result, GOOD_RET


def run_entangle(args, cfg):
    cfg_dir = _cfg_dir(cfg)
    if args.pair is None and not args.tower:
        raise InvalidDataError("Specify '--pair' and/or '--tower'")
    result = {}
    if args.pair is not None:
        ref0, ref1 = parse_pair(args.pair)
        result['pair'] = goursat_filter(ref0, ref1, cfg[GROUP_SIZE_BOUND], cfg_dir).to_dict()
    if args.tower:
        result['tower'] = index_tower_23(cfg_dir)
    return result, GOOD_RET


def run_gauss(args, cfg):
    params = gauss_k(args.prime)
    curve = gauss_curve(params)
    a_poly, b_poly = rubin_silverberg_family(params)
    result = {'params': params, 'cubics': gauss_cubic_report(params),
              'curve': curve.to_dict(), 'curve_discriminant': ec_discriminant(curve),
              'family': {'A': a_poly, 'B': b_poly}}
    if args.t is not None:
        curve_t = rubin_silverberg_Et(params, args.t)
        result['E_t'] = {'t': to_fraction(args.t), 'curve': curve_t.to_dict(),
                         'discriminant': ec_discriminant(curve_t)}
    return result, GOOD_RET


def run_braujones(args, cfg):
    if args.t is None and args.xhpp is None:
        raise InvalidDataError("Specify '--t' and/or '--xhpp'")
    result = {}
    if args.t is not None:
        j_val = brau_jones_j(args.t)
        label, disc = classify_j(j_val)
        level2_map = jmap_for("2:G_2", _cfg_dir(cfg))
        result['brau_jones'] = {'t': to_fraction(args.t), 'j': j_val, 'classification': label,
                                'cm_discriminant': disc, 'level2_preimages': jmap_preimages(level2_map, j_val)}
    if args.xhpp is not None:
        result['xhpp'] = {'t': to_fraction(args.xhpp), 'solutions': xhpp_solve(args.xhpp)}
    return result, GOOD_RET


COMMANDS = {'catalog': run_catalog,
            'lattice': run_lattice,
            'model': run_model,
            'census': run_census,
            'registry': run_registry,
            'zeta': run_zeta,
            'search': run_search,
            'descent': run_descent,
            'sieve': run_sieve,
            'entangle': run_entangle,
            'gauss': run_gauss,
            'braujones': run_braujones,
            }


# Command line #

def parse_cmdline(argv):
    """
    Returns the parsed argument list and return code.
    `argv` is a list of arguments, or `None` for ``sys.argv[1:]``.
    """
    if argv is None:
        argv = sys.argv[1:]

    # options shared by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="The location of an optional configuration file in ini format, "
                                               "with a [main] section. Recognized keys are '{}', '{}', '{}', '{}' "
                                               "and '{}'.".format(THREADS, MAX_FIELD_SIZE, GROUP_SIZE_BOUND,
                                                                  HENSEL_DEPTH, DATA_DIR_KEY),
                        default=None, type=read_cfg)
    common.add_argument("-o", "--out_fname", help="If given, the JSON report is also written to this file.",
                        default=None)
    common.add_argument("--threads", help="The number of worker threads for per-prime and per-subgroup work. "
                                          "Overrides the configuration value (default 1).",
                        type=int, default=None)

    parser = argparse.ArgumentParser(prog=PROG, description='Composite-level modular curves: catalog lookups, '
                                                            'fibered product models, rational points and '
                                                            'entanglement checks. Each subcommand prints a JSON '
                                                            'report.')
    subparsers = parser.add_subparsers(dest='command', metavar='command', required=True)

    sub = subparsers.add_parser('catalog', parents=[common], help="List the catalog subgroups at a level.")
    sub.add_argument("-l", "--level", help="The level to list. Without it, the available levels are listed.",
                     type=int, default=None)

    sub = subparsers.add_parser('lattice', parents=[common],
                                help="Check the containment and index labels of a level's subgroup lattice.")
    sub.add_argument("-l", "--level", help="The level to check.", type=int, required=True)

    sub = subparsers.add_parser('model', parents=[common],
                                help="Build the fibered product of two j-maps, with its hyperelliptic reduction "
                                     "when one side is the square map.")
    sub.add_argument("--left", help="The left catalog reference, such as '2:G_3'.", required=True)
    sub.add_argument("--right", help="The right catalog reference, such as '7:G_2'.", required=True)
    sub.add_argument("--jmap-file", help="A JSON file mapping catalog references to j-map text; these maps take "
                                         "precedence over the catalog.", default=None)

    sub = subparsers.add_parser('census', parents=[common],
                                help="Genus table of the composites of one j-map with every map at a level.")
    sub.add_argument("--pair-left", help="The left catalog reference (default '2:G_3').", default="2:G_3")
    sub.add_argument("-l", "--level", help="The level of the right-hand factors.", type=int, required=True)
    sub.add_argument("--jmap-file", help="A JSON file mapping catalog references to j-map text; these maps replace "
                                         "or supply the catalog's, on either side.", default=None)

    sub = subparsers.add_parser('registry', parents=[common], help="List or show the stored explicit models.")
    sub.add_argument("-n", "--name", help="The model to show, with its computed genus and a check of its stored "
                                          "points. Without it, the model names are listed.", default=None)

    sub = subparsers.add_parser('zeta', parents=[common],
                                help="The zeta numerator of y^2 = w(x) over a prime of good reduction.")
    sub.add_argument("--curve", help="The polynomial w, such as 'x^5+1'.", required=True)
    sub.add_argument("-p", "--prime", help="An odd prime of good reduction.", type=int, required=True)

    sub = subparsers.add_parser('search', parents=[common],
                                help="Search for rational points of bounded height.")
    sub.add_argument("--curve", help="The polynomial w of y^2 = w(x).", default=None)
    sub.add_argument("--model", help="A registry model name; plane quartics are searched projectively.",
                     default=None)
    sub.add_argument("--height", help="The naive height bound (default {} for y^2 = w(x), {} for plane "
                                      "quartics).".format(DEF_HEIGHT, DEF_PLANE_HEIGHT), type=int, default=None)

    sub = subparsers.add_parser('descent', parents=[common],
                                help="Local solubility of every twist of an etale double cover.")
    sub.add_argument("--curve", help="The polynomial w of y^2 = w(x).", required=True)
    sub.add_argument("--factors", help="The factorization w = f1*f2, written 'f1;f2'.", required=True)
    sub.add_argument("--bad-primes", help="Comma-separated primes supporting the twists (default: 2 and the "
                                          "primes of bad reduction of w).", default=None)
    sub.add_argument("--places", help="Comma-separated places to test, 'real' or primes "
                                      "(default 'real,2,3,5,7').", default=None)

    sub = subparsers.add_parser('sieve', parents=[common],
                                help="The rank-0 Mordell-Weil sieve. Exits with {} when the verdict is "
                                     "inconclusive.".format(INCONCLUSIVE_RET))
    sub.add_argument("--curve", help="The polynomial w of y^2 = w(x).", required=True)
    sub.add_argument("--primes", help="Comma-separated sieving primes, such as '5,11'.", required=True)
    sub.add_argument("--bound", help="A multiple of the rational torsion order. Without it, the bound is "
                                     "computed from the Jacobian orders at the odd primes below the torsion "
                                     "limit.", type=int, default=None)
    sub.add_argument("--torsion-limit", help="The prime limit for computing the torsion bound (default {})."
                                             "".format(DEF_TORSION_PRIME_LIMIT),
                     type=int, default=DEF_TORSION_PRIME_LIMIT)
    sub.add_argument("--base", help="The known rational point, 'oo' (default) or 'x,y'.", default='oo')

    sub = subparsers.add_parser('entangle', parents=[common],
                                help="Goursat filter for a pair of coprime-level catalog subgroups.")
    sub.add_argument("--pair", help="Two catalog references, such as '2:G_3,5:G_9'.", default=None)
    sub.add_argument("--tower", help="Also report the composite indices of the (2,3) pairs.",
                     action='store_true')

    sub = subparsers.add_parser('gauss', parents=[common],
                                help="The Gaussian period cubic and the curves built on it for p = 1 mod 3.")
    sub.add_argument("-p", "--prime", help="A prime congruent to 1 mod 3.", type=int, required=True)
    sub.add_argument("--t", help="A rational parameter for the member E_t of the family.", default=None)

    sub = subparsers.add_parser('braujones', parents=[common],
                                help="The (2,3) entanglement j-maps.")
    sub.add_argument("--t", help="A rational parameter of the Brau-Jones family.", default=None)
    sub.add_argument("--xhpp", help="A rational parameter of the level-3 Borel map; reports the rational s "
                                    "over its j-invariant.", default=None)

    args = None
    try:
        args = parser.parse_args(argv)
        if args.config is None:
            args.config = default_cfg()
        if args.threads is not None and args.threads < 1:
            raise InvalidDataError("'--threads' must be a positive integer; found {}".format(args.threads))
    except IOError as e:
        warning("Problems reading file:", e)
        parser.print_help()
        return args, FILE_ERROR_RET
    except (KeyError, InvalidDataError, MissingSectionHeaderError, SystemExit) as e:
        if hasattr(e, 'code') and e.code == 0:
            return args, GOOD_RET
        warning(e)
        parser.print_help()
        return args, INPUT_ERROR

    return args, GOOD_RET


def build_report(args, result, elapsed):
    inputs = {key: val for key, val in vars(args).items() if key not in ('config', 'command', 'out_fname')}
    return {'schema': SCHEMA_VERSION, 'command': args.command, 'version': __version__, 'inputs': inputs,
            'result': result, 'tag': TAGS[args.command], 'elapsed_s': round(elapsed, 3)}


def main(argv=None):
    # Read input
    args, ret = parse_cmdline(argv)
    if ret != GOOD_RET or args is None:
        return ret

    try:
        start = time.perf_counter()
        result, ret = COMMANDS[args.command](args, args.config)
        report = build_report(args, result, time.perf_counter() - start)
        report_str = json.dumps(to_json_ready(report), indent=2, sort_keys=True)
        print(report_str)
        if args.out_fname:
            str_to_file(report_str + "\n", args.out_fname)
    except IOError as e:
        warning("Problems reading file:", e)
        return FILE_ERROR_RET
    except (InvalidDataError, UnicodeDecodeError) as e:
        warning("Problems reading data:", e)
        return INPUT_ERROR

    return ret


if __name__ == '__main__':
    status = main()
    sys.exit(status)
