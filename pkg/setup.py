# -*- coding: utf-8 -*-
"""
Composite-level modular curves
Builds composite-level modular curve models from a catalog of j-maps, analyzes their rational points with exact
finite-field and local methods, and computes entanglement obstructions between mod-m Galois images.
"""
from setuptools import setup
import versioneer

DOCLINES = __doc__.split("\n")

setup(
    # Self-descriptive entries which should always be present
    name='galois_fiber',
    author='Heather B Mayes',
    author_email='hmayes@hmayes.com',
    description=DOCLINES[0],
    long_description="\n".join(DOCLINES[2:]),
    version=versioneer.get_version(),
    cmdclass=versioneer.get_cmdclass(),
    license='MIT',

    # Which Python importable modules should be included when your package is installed
    packages=['galois_fiber'],

    # Catalog of subgroups/j-maps and the registry of explicit curve models
    package_data={'galois_fiber': ["data/*.json"]
                  },

    entry_points={'console_scripts': ['galois-fiber = galois_fiber.gf_cli:main',
                                      ],
                  },     package_dir={'galois_fiber': 'galois_fiber'},

    test_suite='tests',
    install_requires=['numpy', 'sympy', 'mpmath', 'common-wrangler>=0.3.6'],
    tests_require=['pytest', 'hypothesis'],
    platforms=['Linux',
               'Mac OS-X',
               'Unix',
               'Windows'],            # Valid platforms your code works on, adjust to your flavor
    python_requires=">=3.8",  # Python version restrictions
    # Manual control if final package is compressible or not, set False to prevent the .egg from being made
    # zip_safe=False,

)
