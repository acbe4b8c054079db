# coding=utf-8

"""
Common constants, errors, configuration reading and report helpers for this project.
"""
import os
import re
import json
from fractions import Fraction
from configparser import ConfigParser
from common_wrangler.common import InvalidDataError, MAIN_SEC, process_cfg

__author__ = 'hmayes'


# Constants #

# Config keys
CONFIG_FILE = 'cfg_file_name'
THREADS = 'threads'
MAX_FIELD_SIZE = 'max_field_size'
GROUP_SIZE_BOUND = 'group_size_bound'
HENSEL_DEPTH = 'hensel_depth'
DATA_DIR_KEY = 'data_dir'

# Defaults
DEF_THREADS = 1
DEF_MAX_FIELD_SIZE = 10 ** 6
DEF_GROUP_SIZE_BOUND = 10 ** 4
DEF_HENSEL_DEPTH = 0  # 0 means 2 * ord_p(disc) + 1
DEF_DATA_DIR = None

DEF_CFG_VALS = {THREADS: DEF_THREADS,
                MAX_FIELD_SIZE: DEF_MAX_FIELD_SIZE,
                GROUP_SIZE_BOUND: DEF_GROUP_SIZE_BOUND,
                HENSEL_DEPTH: DEF_HENSEL_DEPTH,
                DATA_DIR_KEY: DEF_DATA_DIR,
                }
REQ_KEYS = {}

# Reports
SCHEMA_VERSION = 1
INCONCLUSIVE_RET = 2
# exit code for file problems; common_wrangler's IO_ERROR (2) is taken by INCONCLUSIVE_RET
FILE_ERROR_RET = 3
JSON_SAFE_INT = 2 ** 53

# Data files
DATA_ENV_VAR = 'GALOIS_FIBER_DATA'
PKG_DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')
CATALOG_FILE = 'catalog.json'
MODELS_FILE = 'models.json'

REF_PAT = re.compile(r"^\s*(\d+)\s*:\s*(\S+)\s*$")


class _Marker(object):
    """Named singleton used where a value can be replaced by a symbolic outcome (a pole, the point at infinity)."""
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name

    def __reduce__(self):
        return self.name


POLE = _Marker('POLE')
INFINITY = _Marker('INFINITY')
REAL = _Marker('REAL')


# Errors #

class ZeroDimensionalFiberError(InvalidDataError):
    pass


class BadPrimeError(InvalidDataError):
    pass


class FieldTooLargeError(InvalidDataError):
    pass


class GroupTooLargeError(InvalidDataError):
    pass


class ExcludedParameterError(InvalidDataError):
    pass


class PolySyntaxError(InvalidDataError):
    """
    Raised for unparseable polynomial text; `position` is the 0-based index of the offending character.
    """
    def __init__(self, message, text=None, position=None):
        self.position = position
        self.text = text
        if position is not None and text is not None:
            message = "{} at position {} in '{}'".format(message, position, text)
        super(PolySyntaxError, self).__init__(message)


# Configuration #

def read_cfg(f_loc, cfg_proc=process_cfg):
    """
    Reads the given configuration file, returning a dict with the converted values supplemented by default values.

    :param f_loc: The location of the file to read.
    :param cfg_proc: The processor to use for the raw configuration values.  Uses default values when the raw
        value is missing.
    :return: A dict of the processed configuration file's data.
    """
    config = ConfigParser()
    good_files = config.read(f_loc)

    if not good_files:
        raise IOError('Could not read file {}'.format(f_loc))
    main_proc = cfg_proc(dict(config.items(MAIN_SEC)), DEF_CFG_VALS, REQ_KEYS, int_list=False, store_extra_keys=True)
    main_proc[CONFIG_FILE] = f_loc

    for key in [THREADS, MAX_FIELD_SIZE, GROUP_SIZE_BOUND]:
        if main_proc[key] < 1:
            raise InvalidDataError("Config key '{}' must be a positive integer; found {}".format(key, main_proc[key]))
    if main_proc[HENSEL_DEPTH] < 0:
        raise InvalidDataError("Config key '{}' cannot be negative".format(HENSEL_DEPTH))
    return main_proc


def default_cfg():
    return dict(DEF_CFG_VALS)


# Input helpers #

def parse_ref(ref_str):
    """
    Splits a catalog reference such as "7:G_2" into (7, "G_2")
    """
    match = REF_PAT.match(ref_str)
    if not match:
        raise InvalidDataError("Expected a catalog reference of the form 'level:name' (e.g. '7:G_2'); "
                               "found '{}'".format(ref_str))
    return int(match.group(1)), match.group(2)


def parse_int_list(list_str, sep=','):
    """
    "5,11" -> [5, 11]; empty entries are ignored
    """
    int_list = []
    for entry in list_str.split(sep):
        entry = entry.strip()
        if len(entry) == 0:
            continue
        try:
            int_list.append(int(entry))
        except ValueError:
            raise InvalidDataError("Expected a comma-separated list of integers; could not convert '{}' in "
                                   "'{}'".format(entry, list_str))
    return int_list


def data_dir(cfg_dir=None):
    """
    The configured directory wins, then the environment variable, then the packaged data directory
    """
    if cfg_dir:
        return cfg_dir
    return os.environ.get(DATA_ENV_VAR) or PKG_DATA_DIR


def load_json_data(fname, cfg_dir=None):
    f_loc = os.path.join(data_dir(cfg_dir), fname)
    if not os.path.isfile(f_loc):
        raise IOError("Could not find data file: {}".format(f_loc))
    with open(f_loc) as f:
        try:
            return json.load(f)
        except ValueError as e:
            raise InvalidDataError("Could not parse JSON data file {}: {}".format(f_loc, e))


# Report helpers #

def to_json_ready(obj):
    """
    Converts results into JSON-safe values: rationals and wide integers become decimal strings, polynomials
    become their canonical text, sets become sorted lists.
    """
    # local import: exact imports this module
    from galois_fiber.exact import is_poly, format_poly, RatFunc
    if obj is None or isinstance(obj, (bool, str, float)):
        return obj
    if isinstance(obj, _Marker):
        return obj.name
    if isinstance(obj, int):
        if abs(obj) >= JSON_SAFE_INT:
            return str(obj)
        return obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return to_json_ready(obj.numerator)
        return str(obj)
    if is_poly(obj):
        return format_poly(obj)
    if isinstance(obj, RatFunc):
        return str(obj)
    if isinstance(obj, dict):
        return {str(to_json_ready(key)): to_json_ready(val) for key, val in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [to_json_ready(val) for val in sorted(obj, key=_sort_key)]
    if isinstance(obj, (list, tuple)):
        return [to_json_ready(val) for val in obj]
    if hasattr(obj, 'to_dict'):
        return to_json_ready(obj.to_dict())
    if hasattr(obj, 'item'):
        # numpy scalars
        return to_json_ready(obj.item())
    if hasattr(obj, 'is_Rational') and obj.is_Rational:
        return to_json_ready(Fraction(int(obj.p), int(obj.q)))
    return str(obj)


def _sort_key(val):
    if isinstance(val, (int, Fraction)):
        return 0, val, ''
    return 1, 0, str(val)
