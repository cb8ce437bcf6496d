from setuptools import setup, find_packages
from os import path

version = "0.1.0"

this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="subspace",
    packages=find_packages(exclude=["tests", "tests.*"]),
    version=version,
    description="Bounds on the rotation of spectral subspaces under Hermitian perturbations",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="subspace developers",
    keywords=["spectral_subspaces", "perturbation_theory", "linear_algebra"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.8",
    ],
    python_requires=">=3.8",
    install_requires=["numpy>=1.20", "pandas>=1.5", "python-dateutil"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["subspace=subspace.cli.main:run"]},
    zip_safe=False,
)
