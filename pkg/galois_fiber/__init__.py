"""
galois_fiber: composite-level modular curves, their rational points, and entanglement obstructions
"""
from importlib.metadata import version, PackageNotFoundError

# versioneer writes the release number into the installed package metadata at build time
try:
    __version__ = version('galois_fiber')
except PackageNotFoundError:
    __version__ = 'unknown'

__author__ = 'Heather B Mayes'
__email__ = 'hmayes@hmayes.com'
