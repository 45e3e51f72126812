"""Setup script for scatterbayes"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README
readme_path = Path(__file__).parent / "README.md"
long_description = readme_path.read_text(encoding="utf-8") if readme_path.exists() else ""

# Read requirements
requirements_path = Path(__file__).parent / "requirements.txt"
requirements = []
if requirements_path.exists():
    with open(requirements_path) as f:
        requirements = [
            line.split("#")[0].strip()
            for line in f
            if line.strip() and not line.startswith("#")
        ]

setup(
    name="scatterbayes",
    version="1.0.0",
    description="Bayesian shape reconstruction of penetrable scatterers with alpha-shapes and a fast Lippmann-Schwinger solver",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "docs"]),
    package_data={"scatterbayes": ["data/*.calibration"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.10",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "scatterbayes=scatterbayes.cli.main:cli",
        ],
    },
    include_package_data=True,
    keywords="inverse scattering bayesian mcmc alpha-shape lippmann-schwinger helmholtz",
)
