#!/usr/bin/env python3

"""Setup for the covred package"""
import setuptools


SSCRIPTS = [
    "covred = covred.bench.bench:main",
]

REQUIREMENTS = [
    "configsuite",
    "numpy",
    "pandas",
    "pyyaml",
    "scipy",
]

SETUP_REQUIREMENTS = [
    "setuptools >=28",
    "setuptools_scm",
    "pytest-runner",
    "check-manifest",
]

with open("test_requirements.txt") as f:
    test_requirements = f.read().splitlines()
with open("docs_requirements.txt") as f:
    docs_requirements = f.read().splitlines()

EXTRAS_REQUIRE = {"tests": test_requirements, "docs": docs_requirements}

setuptools.setup(
    name="covred",
    description="Attribute reduction in covering decision systems, "
    "with incremental updates when a covering is refined or coarsened",
    keywords=["rough sets", "covering", "attribute reduction"],
    license="GPLv3",
    platforms="any",
    include_package_data=True,
    packages=setuptools.find_packages("src"),
    package_dir={"": "src"},
    install_requires=REQUIREMENTS,
    setup_requires=SETUP_REQUIREMENTS,
    entry_points={"console_scripts": SSCRIPTS},
    use_scm_version={"write_to": "src/covred/version.py"},
    test_suite="tests",
    extras_require=EXTRAS_REQUIRE,
)
