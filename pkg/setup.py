"""Setup configuration for attribute-autonomy-sim."""

from setuptools import find_packages, setup
from pathlib import Path

# Read requirements
requirements_file = Path(__file__).parent / "requirements.txt"
requirements = []
if requirements_file.exists():
    requirements = requirements_file.read_text(encoding="utf-8").strip().split("\n")

setup(
    name="attribute-autonomy-sim",
    version="0.1.0",
    description="Seeded simulator of a mobile agent autonomous with regard to its attributes",
    include_package_data=True,
    packages=find_packages(exclude=["tests"]),
    package_data={
        "src": ["templates/*.jinja2"],
    },
    install_requires=requirements,
    extras_require={
        "test": ["pytest>=7.0"],
    },
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "autonomy-sim=src.cli:main",
        ],
    },
    keywords="mobile agent autonomy simulation",
)
