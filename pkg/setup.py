#!/usr/bin/env python

from setuptools import setup

setup(
    name="coverlattice",
    version="1.0.0",
    description=(
        "Hilbert series, Groebner bases and cover lattices of vertex cover "
        "algebras of unmixed bipartite graphs"
    ),
    packages=["coverlattice"],
    entry_points={
        "console_scripts": ["cover-lattice = coverlattice.main:main"],
    },
    install_requires=[line.strip() for line in open("requirements.txt")],
)
