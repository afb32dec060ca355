# Licensed under the MIT License.
# divgame by divgame contributors.
# setup

# site
from setuptools import setup


setup(
    name="divgame",
    version="0.1.0",
    description = "Equilibria of a two-firm dividend game with default, closed forms and Monte Carlo checks.",
    long_description = open("README.md", "r", encoding="utf-8").read(),
    long_description_content_type = "text/markdown",
    author="divgame contributors",
    package_dir={"": "src"},
    packages = ["divgame"],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.22",
        "scipy>=1.8",
        "logop>=1.3.5",
        "typex>=0.3.0"
    ],
    extras_require={
        "test": ["pytest>=7"]
    },
    entry_points={
        "console_scripts": ["divgame=divgame.cli:main"]
    },
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
    ],
    license = "MIT",
    keywords = ["dividends", "stochastic game", "free boundary", "monte carlo"]
)
