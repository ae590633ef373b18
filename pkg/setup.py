#!/usr/bin/env python3
"""
linkforge - Linkages that draw rational curves

Single install: pip install -e .
Then use: linkforge synthesize curve.json

Pipeline:
- Factor a bounded motion polynomial into linear factors
- Build an open chain (weak) or a ladder of antiparallelograms (strong)
- Assign layers, detect self-collisions, render SVG frames

Configuration via environment or .env:
  LINKFORGE_EPS=1e-9 (approximate backend tolerance)
  LINKFORGE_BACKEND=exact (exact or approx)
  LINKFORGE_SEARCH_BUDGET=2000 (orderings scored by the collision search)
  LINKFORGE_LOG_LEVEL=WARNING
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README
readme_file = Path(__file__).parent / "README.md"
long_description = ""
if readme_file.exists():
    long_description = readme_file.read_text(encoding="utf-8")

# Read requirements from requirements file
requirements_file = Path(__file__).parent / "requirements.txt"
requirements = []

if requirements_file.exists():
    with open(requirements_file, "r", encoding="utf-8") as f:
        requirements = [
            line.split("#")[0].strip()
            for line in f.readlines()
            if line.strip() and not line.startswith("#")
        ]
else:
    requirements = [
        "pydantic>=2.0.0",
        "pydantic-settings>=2.0.0",
        "python-dotenv>=1.0.0",
        "numpy>=1.24.0",
        "sympy>=1.12",
        "networkx>=3.0",
        "svgwrite>=1.4.3",
        "typer>=0.9.0",
        "rich>=13.7.0",
    ]

setup(
    name="linkforge",
    version="0.1.0",
    description="Factorization of planar motion polynomials and synthesis of curve drawing linkages",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    include_package_data=True,
    python_requires=">=3.10",
    install_requires=[r for r in requirements if not r.startswith("pytest")],
    extras_require={
        "test": ["pytest>=7.4.0"],
    },
    entry_points={
        "console_scripts": [
            "linkforge=cli.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
    ],
    keywords=["kinematics", "linkage", "motion polynomial", "mechanism synthesis"],
    zip_safe=False,
)
